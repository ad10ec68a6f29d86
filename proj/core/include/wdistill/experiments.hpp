#pragma once

// Experiment drivers: the dephased distillation curve and yield, retrieval
// thresholds for the noisy-W families, the partial-transpose test, fixed-point
// classification, and branch statistics over random mixed inputs.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "wdistill/channels.hpp"
#include "wdistill/protocol.hpp"

namespace wdistill {

// Evenly spaced grid including both endpoints.
std::vector<double> linear_grid(double start, double stop, int points);

struct CurvePoint {
  double fidelity;
  double simulated;  // from the full nine-qubit simulation of P
  double formula;    // closed form
  double p_success;
};

std::vector<CurvePoint> dephasing_curve(const std::vector<double>& grid);

struct YieldPoint {
  double fidelity;
  int steps;
  double yield;
};

// Iterates the closed-form recurrence until F >= target. Grid points must lie
// in (1/3, 1].
std::vector<YieldPoint> yield_curve(const std::vector<double>& grid, double target_fidelity = 0.99);

struct ThresholdResult {
  ChannelKind kind;
  double threshold;      // midpoint of the final bracket
  double bracket_width;  // hi - lo
  double lo;             // largest fidelity found not retrieved
  double hi;             // smallest fidelity found retrieved
};

// Retrieved: distill_run reaches target within max_steps.
bool is_retrieved(ChannelKind kind, double fidelity, const RunOptions& options = {});

// Bisection over the initial fidelity of the noisy-W family. resolution >= 1e-4.
ThresholdResult retrieval_threshold(ChannelKind kind, double resolution,
                                    const RunOptions& options = {});

// Minimum eigenvalue of rho partially transposed on one party's qubit.
double ppt_minimum_eigenvalue(const DensityMatrix& rho, Party party);

// Smallest initial fidelity of the noisy-W family whose partial transpose (on
// party A) has an eigenvalue below -1e-12, by bisection to `resolution`.
double ppt_threshold(ChannelKind kind, double resolution = 1e-9);

// Candidate fixed points recognised by classify_state.
StateVector bell_pair_state(Party first, Party second);  // (|01>+|10>)/sqrt2 (x) |0>
DensityMatrix chi_state();                               // F = 3/8 mixture

// W if the final fidelity reaches the run's target; Bell if the run stopped at
// a fixed point within fidelity 0.99 of a Bell pair between two parties (any
// Table relabeling); Undistillable if within fidelity 0.99 of chi (any
// relabeling); Transient otherwise.
Classification classify_state(const Trajectory& traj, double target_fidelity = 0.99);

inline constexpr std::array<Classification, 4> kAllClassifications{
    Classification::W, Classification::Bell, Classification::Undistillable,
    Classification::Transient};

struct StepStat {
  int step;
  double mean;
  double stddev;
};

struct BranchStats {
  int n_samples = 0;
  std::map<Classification, int> counts;
  // Per branch, per step: mean and (population) standard deviation of the
  // fidelity over every sample in the branch; finished samples contribute
  // their final fidelity.
  std::map<Classification, std::vector<StepStat>> mean_fidelity_by_step;
  long long attempts = 0;  // candidate states drawn by the sampler

  int count(Classification c) const;
  double fraction(Classification c) const;
};

// How inputs with a prescribed fidelity are drawn from the Hilbert-Schmidt
// ensemble.
//   Mixture:   draw sigma ~ HS, relabel it, draw F uniformly in the window and
//              return p |W><W| + (1-p) sigma with p fixing <W|rho|W> = F.
//   Rejection: draw sigma ~ HS, relabel, accept if its fidelity is in the
//              window. Only practical for windows near 1/8.
enum class Conditioning { Mixture, Rejection };
std::string to_string(Conditioning c);
Conditioning parse_conditioning(const std::string& name);

struct RandomStatsConfig {
  double target_fidelity_center = 0.70;
  double window = 0.01;
  int n_samples = 1000;
  std::uint64_t seed = 0;
  Conditioning conditioning = Conditioning::Mixture;
  long long rejection_budget = 2'000'000;  // attempts per sample before giving up
  RunOptions run;
};

// Sample i draws all of its randomness from Rng::substream(seed, i).
DensityMatrix sample_conditioned_state(const RandomStatsConfig& config, int index,
                                       long long* attempts = nullptr);

BranchStats random_branch_stats(const RandomStatsConfig& config);

}  // namespace wdistill
