#include "wdistill/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "wdistill/errors.hpp"
#include "wdistill/rng.hpp"

namespace wdistill {

namespace {

constexpr double kBranchFidelity = 0.99;
constexpr double kNegativeEigenvalue = -1e-12;
constexpr int kMaxClosedFormSteps = 100000;

DensityMatrix family_state(ChannelKind kind, double fidelity) {
  return noisy_w(ChannelSpec(kind, mu_for_fidelity(kind, fidelity)));
}

const std::vector<DensityMatrix>& chi_orbit() {
  static const std::vector<DensityMatrix> orbit = [] {
    std::vector<DensityMatrix> out;
    const DensityMatrix chi = chi_state();
    for (const WLabel& k : all_w_labels()) {
      const Operator u = relabel_unitary(k);
      out.push_back(DensityMatrix::normalize(u * chi.op() * u.adjoint()));
    }
    return out;
  }();
  return orbit;
}

const std::vector<StateVector>& bell_orbit() {
  static const std::vector<StateVector> orbit = [] {
    std::vector<StateVector> out;
    const std::array<std::pair<Party, Party>, 3> pairs{
        {{Party::A, Party::B}, {Party::A, Party::C}, {Party::B, Party::C}}};
    for (const WLabel& k : all_w_labels()) {
      const Operator u = relabel_unitary(k);
      for (const auto& [a, b] : pairs) out.push_back(apply(u, bell_pair_state(a, b)));
    }
    return out;
  }();
  return orbit;
}

}  // namespace

std::vector<double> linear_grid(double start, double stop, int points) {
  if (points < 1) throw InputError("grid needs at least one point");
  if (points == 1) return {start};
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  out.back() = stop;
  return out;
}

// ------------------------------------------------------------- dephasing

std::vector<CurvePoint> dephasing_curve(const std::vector<double>& grid) {
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (double f : grid) {
    const FidelityMapResult formula = dephasing_fidelity_map(f);
    const StepResult sim = run_P(family_state(ChannelKind::Dephasing, f));
    out.push_back({f, sim.fidelity, formula.fidelity, sim.p_success});
  }
  return out;
}

std::vector<YieldPoint> yield_curve(const std::vector<double>& grid, double target_fidelity) {
  if (!(target_fidelity > 1.0 / 3.0 && target_fidelity < 1.0)) {
    throw InputError("yield target must lie in (1/3, 1)");
  }
  std::vector<YieldPoint> out;
  out.reserve(grid.size());
  for (double f0 : grid) {
    if (!(f0 > 1.0 / 3.0 && f0 <= 1.0)) {
      throw InputError("yield grid points must lie in (1/3, 1]");
    }
    double f = f0;
    double yield = 1.0;
    int steps = 0;
    while (f < target_fidelity) {
      if (++steps > kMaxClosedFormSteps) throw InputError("yield recurrence did not converge");
      const FidelityMapResult r = dephasing_fidelity_map(f);
      yield *= r.success_probability / 3.0;
      f = r.fidelity;
    }
    out.push_back({f0, steps, yield});
  }
  return out;
}

// ------------------------------------------------------------- thresholds

bool is_retrieved(ChannelKind kind, double fidelity, const RunOptions& options) {
  const Trajectory t = distill_run(family_state(kind, fidelity), options);
  return t.termination == Termination::TargetReached;
}

ThresholdResult retrieval_threshold(ChannelKind kind, double resolution, const RunOptions& options) {
  if (!(resolution >= 1e-4)) throw InputError("threshold resolution must be >= 1e-4");
  double lo = min_noisy_w_fidelity(kind);
  double hi = 1.0;
  if (is_retrieved(kind, lo, options)) return {kind, lo, 0.0, lo, lo};
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (is_retrieved(kind, mid, options)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {kind, 0.5 * (lo + hi), hi - lo, lo, hi};
}

double ppt_minimum_eigenvalue(const DensityMatrix& rho, Party party) {
  if (rho.dim() != 8) throw InputError("ppt_minimum_eigenvalue expects a 3-qubit state");
  return hermitian_eigenvalues(partial_transpose(rho.op(), {static_cast<int>(party)})).front();
}

double ppt_threshold(ChannelKind kind, double resolution) {
  double lo = min_noisy_w_fidelity(kind);
  double hi = 1.0;
  auto npt = [&](double f) {
    return ppt_minimum_eigenvalue(family_state(kind, f), Party::A) < kNegativeEigenvalue;
  };
  if (npt(lo)) return lo;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (npt(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// --------------------------------------------------------- classification

StateVector bell_pair_state(Party first, Party second) {
  if (first == second) throw InputError("Bell pair needs two distinct parties");
  std::vector<Complex> amps(8);
  const std::size_t bit_first = std::size_t{4} >> static_cast<int>(first);
  const std::size_t bit_second = std::size_t{4} >> static_cast<int>(second);
  amps[bit_first] = 1.0;
  amps[bit_second] = 1.0;
  return StateVector::normalized(std::move(amps));
}

DensityMatrix chi_state() {
  auto ket = [](std::initializer_list<std::pair<int, int>> terms) {
    std::vector<Complex> amps(8);
    for (const auto& [sign, index] : terms) amps[index] = sign;
    return StateVector::normalized(std::move(amps));
  };
  const StateVector phi = ket({{1, 0b001}, {1, 0b010}, {1, 0b100}, {-1, 0b111}});
  const StateVector phi_prime = ket({{-1, 0b000}, {1, 0b011}, {1, 0b101}, {1, 0b110}});
  return DensityMatrix((phi.projector() + phi_prime.projector()) * Complex{0.5});
}

Classification classify_state(const Trajectory& traj, double target_fidelity) {
  if (traj.final_fidelity() >= target_fidelity) return Classification::W;
  const DensityMatrix& rho = traj.final_state();
  if (traj.termination == Termination::FixedPoint) {
    for (const StateVector& bell : bell_orbit()) {
      if (fidelity_with_pure(rho, bell) >= kBranchFidelity) return Classification::Bell;
    }
  }
  for (const DensityMatrix& chi : chi_orbit()) {
    if (uhlmann_fidelity(rho, chi) >= kBranchFidelity) return Classification::Undistillable;
  }
  return Classification::Transient;
}

// ---------------------------------------------------------- random inputs

int BranchStats::count(Classification c) const {
  auto it = counts.find(c);
  return it == counts.end() ? 0 : it->second;
}

double BranchStats::fraction(Classification c) const {
  return n_samples == 0 ? 0.0 : static_cast<double>(count(c)) / n_samples;
}

std::string to_string(Conditioning c) {
  return c == Conditioning::Mixture ? "mixture" : "rejection";
}

Conditioning parse_conditioning(const std::string& name) {
  if (name == "mixture") return Conditioning::Mixture;
  if (name == "rejection") return Conditioning::Rejection;
  throw InputError("unknown conditioning '" + name + "' (expected mixture or rejection)");
}

DensityMatrix sample_conditioned_state(const RandomStatsConfig& config, int index,
                                       long long* attempts) {
  const double lo = config.target_fidelity_center - config.window;
  const double hi = config.target_fidelity_center + config.window;
  Rng rng = Rng::substream(config.seed, static_cast<std::uint64_t>(index));
  const double wanted = rng.uniform(lo, hi);
  for (long long tries = 1;; ++tries) {
    if (attempts) ++*attempts;
    DensityMatrix sigma = relabel_to_canonical(random_density_hs(8, rng)).rho;
    const double f = fidelity_with_pure(sigma, w_state());
    if (config.conditioning == Conditioning::Rejection) {
      if (f >= lo && f <= hi) return sigma;
    } else if (f <= wanted) {
      const double p = (wanted - f) / (1.0 - f);
      Operator mixed = w_state().projector() * Complex{p} + sigma.op() * Complex{1.0 - p};
      return DensityMatrix::normalize(std::move(mixed));
    }
    if (tries >= config.rejection_budget) {
      throw SamplingError("no state with fidelity in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] after " + std::to_string(tries) +
                          " draws (acceptance rate below 1e-6)");
    }
  }
}

BranchStats random_branch_stats(const RandomStatsConfig& config) {
  if (!(config.target_fidelity_center > 1.0 / 8.0 && config.target_fidelity_center < 1.0)) {
    throw InputError("target fidelity must lie in (1/8, 1)");
  }
  if (!(config.window >= 0.0)) throw InputError("fidelity window must be non-negative");
  if (config.n_samples < 1) throw InputError("need at least one sample");
  if (config.rejection_budget < 1) throw InputError("rejection budget must be positive");

  BranchStats stats;
  stats.n_samples = config.n_samples;
  std::map<Classification, std::vector<std::vector<double>>> series;
  for (int i = 0; i < config.n_samples; ++i) {
    const DensityMatrix rho = sample_conditioned_state(config, i, &stats.attempts);
    const Trajectory traj = distill_run(rho, config.run);
    const Classification c = classify_state(traj, config.run.target_fidelity);
    ++stats.counts[c];
    series[c].push_back(traj.fidelities());
  }
  for (const auto& [c, runs] : series) {
    std::size_t length = 0;
    for (const auto& r : runs) length = std::max(length, r.size());
    std::vector<StepStat> per_step;
    for (std::size_t s = 0; s < length; ++s) {
      double sum = 0.0;
      double sum_sq = 0.0;
      for (const auto& r : runs) {
        const double f = s < r.size() ? r[s] : r.back();
        sum += f;
        sum_sq += f * f;
      }
      const double n = static_cast<double>(runs.size());
      const double mean = sum / n;
      const double var = std::max(0.0, sum_sq / n - mean * mean);
      per_step.push_back({static_cast<int>(s), mean, std::sqrt(var)});
    }
    stats.mean_fidelity_by_step[c] = std::move(per_step);
  }
  return stats;
}

}  // namespace wdistill
