#include "wdistill/channels.hpp"

#include <algorithm>
#include <cmath>

#include "wdistill/errors.hpp"
#include "wdistill/wstructure.hpp"

namespace wdistill {

namespace {

void require_fidelity_range(ChannelKind kind, double fidelity) {
  const double lo = min_noisy_w_fidelity(kind);
  // Allow roundoff at the endpoints so that 1/3 computed as (1+2*0)/3 passes.
  if (!(fidelity >= lo - 1e-15 && fidelity <= 1.0 + 1e-15)) {
    throw InputError("fidelity " + std::to_string(fidelity) + " outside the " + to_string(kind) +
                     " family range [" + std::to_string(lo) + ", 1]");
  }
}

}  // namespace

std::string to_string(ChannelKind kind) {
  return kind == ChannelKind::Dephasing ? "dephasing" : "depolarizing";
}

ChannelKind parse_channel_kind(const std::string& name) {
  if (name == "dephasing") return ChannelKind::Dephasing;
  if (name == "depolarizing") return ChannelKind::Depolarizing;
  throw InputError("unknown channel '" + name + "' (expected dephasing or depolarizing)");
}

ChannelSpec::ChannelSpec(ChannelKind kind, double mu) : kind_(kind), mu_(mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw InputError("channel reliability mu must lie in [0, 1]");
}

std::vector<Operator> ChannelSpec::kraus() const {
  if (kind_ == ChannelKind::Dephasing) {
    return {gates::I() * Complex{std::sqrt((1.0 + mu_) / 2.0)},
            gates::Z() * Complex{std::sqrt((1.0 - mu_) / 2.0)}};
  }
  const Complex w{std::sqrt((1.0 - mu_) / 4.0)};
  return {gates::I() * Complex{std::sqrt((1.0 + 3.0 * mu_) / 4.0)}, gates::X() * w,
          gates::Y() * w, gates::Z() * w};
}

DensityMatrix apply_channel(const DensityMatrix& rho, const ChannelSpec& spec, int qubit) {
  const int n = rho.num_qubits();
  Operator out(rho.dim(), rho.dim());
  for (const Operator& k : spec.kraus()) {
    const Operator lifted = embed(k, n, {qubit});
    out += lifted * rho.op() * lifted.adjoint();
  }
  return DensityMatrix::normalize(std::move(out));
}

DensityMatrix noisy_w(const ChannelSpec& spec) {
  DensityMatrix rho = DensityMatrix::from_pure(w_state());
  for (int q = 0; q < 3; ++q) rho = apply_channel(rho, spec, q);
  return rho;
}

double noisy_w_fidelity(ChannelKind kind, double mu) {
  if (kind == ChannelKind::Dephasing) return (1.0 + 2.0 * mu * mu) / 3.0;
  return (3.0 + mu + 9.0 * mu * mu + 11.0 * mu * mu * mu) / 24.0;
}

double min_noisy_w_fidelity(ChannelKind kind) {
  return kind == ChannelKind::Dephasing ? 1.0 / 3.0 : 1.0 / 8.0;
}

double mu_for_fidelity(ChannelKind kind, double fidelity) {
  require_fidelity_range(kind, fidelity);
  if (kind == ChannelKind::Dephasing) {
    return std::clamp(std::sqrt(std::max(0.0, (3.0 * fidelity - 1.0) / 2.0)), 0.0, 1.0);
  }
  // 11 mu^3 + 9 mu^2 + mu + 3 - 24 F is increasing on [0, 1].
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (noisy_w_fidelity(kind, mid) < fidelity) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

FidelityMapResult dephasing_fidelity_map(double fidelity) {
  require_fidelity_range(ChannelKind::Dephasing, fidelity);
  const double f = fidelity;
  const double g = 1.0 - f;
  const double numerator = 25.0 / 81.0 * f * f * f + 1.0 / 18.0 * f * g * g + 1.0 / 324.0 * g * g * g;
  const double denominator = 25.0 / 81.0 * f * f * f + 1.0 / 9.0 * f * f * g +
                             2.0 / 27.0 * f * g * g + 17.0 / 162.0 * g * g * g;
  return {numerator / denominator, denominator};
}

}  // namespace wdistill
