#pragma once

// Three-copies-to-one W-state distillation by local stabilizer measurements.
//
// Three parties A, B, C each hold one qubit of every copy. The joint input
// rho^(x)3 is laid out copy-major: global qubit g = 3 * copy + party, so
// party A holds {0, 3, 6}, B holds {1, 4, 7} and C holds {2, 5, 8}. Local
// operators act on a party's triple in copy order (copy 0, 1, 2).
//
// Subprotocol P measures K1K2 and K1K3 on each party's triple, keeps the
// coincident outcomes [0,1], [1,0], [1,1] and contracts each triple to one
// qubit by the majority rule. Subprotocol Pbar first applies V, measures the
// Lambda-rotated (complementary) stabilizers, and keeps outcome [0,0].

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wdistill/qmath.hpp"
#include "wdistill/wstructure.hpp"

namespace wdistill {

enum class Party { A = 0, B = 1, C = 2 };

struct OutcomePair {
  int m1 = 0;
  int m2 = 0;
  friend bool operator==(const OutcomePair&, const OutcomePair&) = default;
};

inline constexpr OutcomePair kOutcome0{0, 0};
inline constexpr OutcomePair kOutcome1{0, 1};
inline constexpr OutcomePair kOutcome2{1, 0};
inline constexpr OutcomePair kOutcome3{1, 1};
inline constexpr std::array<OutcomePair, 4> kAllOutcomes{kOutcome0, kOutcome1, kOutcome2,
                                                         kOutcome3};

struct QubitLayout {
  static constexpr int kCopies = 3;
  static constexpr int kParties = 3;
  static constexpr int kQubits = 9;

  static int global_index(Party party, int copy);
  static Party party_of(int global);
  static int copy_of(int global);
  static std::array<int, 3> party_qubits(Party party);
  static std::array<int, 3> copy_qubits(int copy);
};

// Where the basis change V of Pbar acts.
//   PerParty: V on each party's local triple (copies 0..2 of that party).
//   PerCopy:  V on the (A, B, C) qubits of each copy.
enum class VPlacement { PerParty, PerCopy };

std::string to_string(VPlacement placement);
VPlacement parse_v_placement(const std::string& name);

enum class Subprotocol { P, Pbar };
std::string to_string(Subprotocol s);

struct ProtocolOptions {
  VPlacement v_placement = VPlacement::PerParty;
  // Relabel to the canonical frame before every step; when false only the
  // initial input is relabeled.
  bool relabel_every_step = true;
};

// Rank-2 projector 1/4 (1 + (-1)^m1 K1K2)(1 + (-1)^m2 K1K3); the dual variant
// is Lambda^dagger M Lambda.
Operator measurement_operator(OutcomePair m, bool dual = false);

// 2x8 majority-rule map. Non-dual accepts outcomes 1, 2, 3; dual accepts 0.
// Throws InputError for any other combination.
Operator contraction(OutcomePair m, bool dual = false);

// 8x512 map from the copy-major three-copy space to the output qubit of each
// party, for one coincident outcome.
Operator branch_map(OutcomePair m, bool dual, VPlacement placement = VPlacement::PerParty);

// Unnormalised weight of the joint outcome (a, b, c) of the local measurements
// on rho^(x)3 (after V, for the dual measurement).
double joint_outcome_weight(const DensityMatrix& rho, OutcomePair a, OutcomePair b, OutcomePair c,
                            bool dual, VPlacement placement = VPlacement::PerParty);

struct StepResult {
  DensityMatrix rho_out;
  double p_success = 0.0;
  Subprotocol subprotocol = Subprotocol::P;
  double fidelity = 0.0;  // <W|rho_out|W>
  std::optional<WLabel> relabel_applied;
};

// Subprotocol outputs in the raw (un-relabeled) frame. Throw
// DegenerateOutcomeError when the kept branches carry weight below 1e-14.
StepResult run_P(const DensityMatrix& rho_in);
StepResult run_Pbar(const DensityMatrix& rho_in, VPlacement placement = VPlacement::PerParty);

struct Relabeled {
  DensityMatrix rho;
  WLabel label;
};

// Moves the largest W-basis diagonal element onto |W^000> with the matching
// local unitary; ties (within 1e-12) go to the smallest label.
Relabeled relabel_to_canonical(const DensityMatrix& rho);

// Runs P and Pbar on the (optionally relabeled) input, brings each output to
// the canonical frame, and keeps the one with higher fidelity (ties within
// 1e-12 go to P).
StepResult distill_step(const DensityMatrix& rho, const ProtocolOptions& options = {});

enum class Termination { TargetReached, FixedPoint, MaxSteps };
std::string to_string(Termination t);

enum class Classification { W, Bell, Undistillable, Transient };
std::string to_string(Classification c);

struct RunOptions {
  int max_steps = 200;
  double target_fidelity = 0.99;
  ProtocolOptions protocol;
};

struct Trajectory {
  DensityMatrix initial;  // input after the initial relabeling
  double initial_fidelity = 0.0;
  std::vector<StepResult> steps;
  Termination termination = Termination::MaxSteps;
  std::optional<Classification> classification;  // filled in by classify_state
  double yield_estimate = 1.0;                   // prod p_i / 3^steps

  const DensityMatrix& final_state() const;
  double final_fidelity() const;
  // Fidelity before the first step followed by the fidelity after each step.
  std::vector<double> fidelities() const;
};

// Iterates distill_step until the target fidelity is reached, the state stops
// changing (entrywise <= 1e-9 for two consecutive steps), or max_steps.
Trajectory distill_run(const DensityMatrix& rho, const RunOptions& options = {});

}  // namespace wdistill
