#pragma once

// Local single-qubit noise, the noisy-W input families they generate, and the
// closed-form fidelity recurrence for the dephased family.

#include <string>
#include <vector>

#include "wdistill/qmath.hpp"

namespace wdistill {

enum class ChannelKind { Dephasing, Depolarizing };

std::string to_string(ChannelKind kind);
ChannelKind parse_channel_kind(const std::string& name);

class ChannelSpec {
 public:
  // Throws InputError unless mu is in [0, 1].
  ChannelSpec(ChannelKind kind, double mu);

  ChannelKind kind() const { return kind_; }
  double mu() const { return mu_; }

  // Single-qubit Kraus operators:
  //   dephasing:    sqrt((1+mu)/2) 1,  sqrt((1-mu)/2) Z
  //   depolarizing: sqrt((1+3mu)/4) 1, sqrt((1-mu)/4) {X, Y, Z}
  std::vector<Operator> kraus() const;

 private:
  ChannelKind kind_;
  double mu_;
};

DensityMatrix apply_channel(const DensityMatrix& rho, const ChannelSpec& spec, int qubit);

// The channel applied with the same mu to all three qubits of |W><W|.
DensityMatrix noisy_w(const ChannelSpec& spec);

// Fidelity of noisy_w as a function of mu:
//   dephasing    (1 + 2 mu^2) / 3
//   depolarizing (3 + mu + 9 mu^2 + 11 mu^3) / 24
double noisy_w_fidelity(ChannelKind kind, double mu);
double min_noisy_w_fidelity(ChannelKind kind);  // 1/3 or 1/8

// Inverse of noisy_w_fidelity; bisection for the depolarizing cubic.
double mu_for_fidelity(ChannelKind kind, double fidelity);

struct FidelityMapResult {
  double fidelity;
  double success_probability;
};

// One round of the three-to-one recurrence on the dephased family, in
// closed form. F must lie in [1/3, 1].
FidelityMapResult dephasing_fidelity_map(double fidelity);

}  // namespace wdistill
