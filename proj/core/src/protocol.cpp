#include "wdistill/protocol.hpp"

#include <cmath>
#include <mutex>
#include <map>
#include <tuple>

#include "wdistill/errors.hpp"

namespace wdistill {

namespace {

constexpr double kDegenerateWeight = 1e-14;
constexpr double kTieTol = 1e-12;
constexpr double kFixedPointTol = 1e-9;
constexpr int kFixedPointRepeats = 2;

int outcome_index(OutcomePair m) { return 2 * m.m1 + m.m2; }

void validate_outcome(OutcomePair m) {
  if ((m.m1 != 0 && m.m1 != 1) || (m.m2 != 0 && m.m2 != 1)) {
    throw InputError("measurement outcome bits must be 0 or 1");
  }
}

// Copy-major index (qubit 3*copy + party) -> party-major index (qubit
// 3*party + copy), for all 512 basis states.
const std::array<std::size_t, 512>& copy_to_party_major() {
  static const std::array<std::size_t, 512> table = [] {
    std::array<std::size_t, 512> t{};
    for (std::size_t i = 0; i < 512; ++i) {
      std::size_t j = 0;
      for (int g = 0; g < 9; ++g) {
        if (i & (std::size_t{1} << (8 - g))) {
          const int dest = 3 * (g % 3) + g / 3;
          j |= std::size_t{1} << (8 - dest);
        }
      }
      t[i] = j;
    }
    return t;
  }();
  return table;
}

Operator party_to_copy_major_reorder() {
  std::array<int, 9> perm{};
  for (int g = 0; g < 9; ++g) perm[g] = 3 * (g % 3) + g / 3;
  return qubit_permutation(perm);
}

Operator kron3(const Operator& a) { return kron(kron(a, a), a); }

Operator three_copies(const DensityMatrix& rho) { return kron3(rho.op()); }

// Per-party local map applied before the contraction: V for the dual
// measurement in the per-party placement, nothing otherwise.
Operator local_branch_operator(OutcomePair m, bool dual, VPlacement placement) {
  Operator local = contraction(m, dual);
  if (dual && placement == VPlacement::PerParty) local = local * v_exchange();
  return local;
}

std::optional<StepResult> finish(Operator unnormalized, Subprotocol which) {
  const double p = unnormalized.trace().real();
  if (!(p >= kDegenerateWeight)) return std::nullopt;
  DensityMatrix out = DensityMatrix::normalize(std::move(unnormalized));
  const double f = fidelity_with_pure(out, w_state());
  return StepResult{std::move(out), p, which, f, std::nullopt};
}

std::optional<StepResult> try_P(const Operator& gamma) {
  Operator acc(8, 8);
  for (OutcomePair m : {kOutcome1, kOutcome2, kOutcome3}) {
    acc += conjugate_by(branch_map(m, false), gamma);
  }
  return finish(std::move(acc), Subprotocol::P);
}

std::optional<StepResult> try_Pbar(const Operator& gamma, VPlacement placement) {
  return finish(conjugate_by(branch_map(kOutcome0, true, placement), gamma), Subprotocol::Pbar);
}

StepResult canonicalize(StepResult r) {
  Relabeled c = relabel_to_canonical(r.rho_out);
  if (c.label != WLabel()) {
    r.relabel_applied = c.label;
    r.rho_out = std::move(c.rho);
    r.fidelity = fidelity_with_pure(r.rho_out, w_state());
  }
  return r;
}

}  // namespace

// ----------------------------------------------------------------- layout

int QubitLayout::global_index(Party party, int copy) {
  if (copy < 0 || copy >= kCopies) throw InputError("copy index out of range");
  return 3 * copy + static_cast<int>(party);
}

Party QubitLayout::party_of(int global) {
  if (global < 0 || global >= kQubits) throw InputError("global qubit index out of range");
  return static_cast<Party>(global % 3);
}

int QubitLayout::copy_of(int global) {
  if (global < 0 || global >= kQubits) throw InputError("global qubit index out of range");
  return global / 3;
}

std::array<int, 3> QubitLayout::party_qubits(Party party) {
  const int p = static_cast<int>(party);
  return {p, p + 3, p + 6};
}

std::array<int, 3> QubitLayout::copy_qubits(int copy) {
  if (copy < 0 || copy >= kCopies) throw InputError("copy index out of range");
  return {3 * copy, 3 * copy + 1, 3 * copy + 2};
}

std::string to_string(VPlacement placement) {
  return placement == VPlacement::PerParty ? "per-party" : "per-copy";
}

VPlacement parse_v_placement(const std::string& name) {
  if (name == "per-party") return VPlacement::PerParty;
  if (name == "per-copy") return VPlacement::PerCopy;
  throw InputError("unknown V placement '" + name + "' (expected per-party or per-copy)");
}

std::string to_string(Subprotocol s) { return s == Subprotocol::P ? "P" : "Pbar"; }

std::string to_string(Termination t) {
  switch (t) {
    case Termination::TargetReached: return "target";
    case Termination::FixedPoint: return "fixed-point";
    default: return "max-steps";
  }
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::W: return "W";
    case Classification::Bell: return "Bell";
    case Classification::Undistillable: return "Undistillable";
    default: return "Transient";
  }
}

// ------------------------------------------------------------ measurement

Operator measurement_operator(OutcomePair m, bool dual) {
  validate_outcome(m);
  const Operator id = Operator::identity(8);
  const Operator& k12 = stabilizer(StabilizerLabel::of({1, 2})).matrix;
  const Operator& k13 = stabilizer(StabilizerLabel::of({1, 3})).matrix;
  const double s1 = m.m1 ? -1.0 : 1.0;
  const double s2 = m.m2 ? -1.0 : 1.0;
  Operator out = (id + k12 * Complex{s1}) * (id + k13 * Complex{s2}) * Complex{0.25};
  if (dual) {
    const Operator lambda = lambda_op();
    out = lambda.adjoint() * out * lambda;
  }
  return out;
}

Operator contraction(OutcomePair m, bool dual) {
  validate_outcome(m);
  Operator out(2, 8);
  if (dual) {
    if (m != kOutcome0) throw InputError("dual contraction is defined only for outcome [0,0]");
    // |Wbar_000> -> H|1>, |Wbar_111> -> H|0>
    const StateVector w000 = dual_w_basis_vector(WLabel(0, 0, 0));
    const StateVector w111 = dual_w_basis_vector(WLabel(1, 1, 1));
    const double r = 1.0 / std::sqrt(2.0);
    const std::array<double, 2> h1{r, -r};
    const std::array<double, 2> h0{r, r};
    for (std::size_t row = 0; row < 2; ++row)
      for (std::size_t c = 0; c < 8; ++c)
        out(row, c) = h1[row] * std::conj(w000[c]) + h0[row] * std::conj(w111[c]);
    return out;
  }
  WLabel to_zero, to_one;
  if (m == kOutcome1) {
    to_zero = WLabel(0, 0, 1);
    to_one = WLabel(1, 1, 0);
  } else if (m == kOutcome2) {
    to_zero = WLabel(0, 1, 0);
    to_one = WLabel(1, 0, 1);
  } else if (m == kOutcome3) {
    to_zero = WLabel(1, 0, 0);
    to_one = WLabel(0, 1, 1);
  } else {
    throw InputError("majority-rule contraction is defined only for outcomes 1, 2, 3");
  }
  const StateVector a = w_basis_vector(to_zero);
  const StateVector b = w_basis_vector(to_one);
  for (std::size_t c = 0; c < 8; ++c) {
    out(0, c) = std::conj(a[c]);
    out(1, c) = std::conj(b[c]);
  }
  return out;
}

Operator branch_map(OutcomePair m, bool dual, VPlacement placement) {
  using Key = std::tuple<int, bool, int>;
  static std::mutex mutex;
  static std::map<Key, Operator> cache;
  const Key key{outcome_index(m), dual, static_cast<int>(placement)};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  static const Operator reorder = party_to_copy_major_reorder();
  Operator t = kron3(local_branch_operator(m, dual, placement)) * reorder;
  if (dual && placement == VPlacement::PerCopy) t = t * kron3(v_exchange());
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(t)).first->second;
}

double joint_outcome_weight(const DensityMatrix& rho, OutcomePair a, OutcomePair b, OutcomePair c,
                            bool dual, VPlacement placement) {
  if (rho.dim() != 8) throw InputError("joint_outcome_weight expects a 3-qubit state");
  auto local = [&](OutcomePair m) {
    Operator proj = measurement_operator(m, dual);
    if (dual && placement == VPlacement::PerParty) {
      const Operator v = v_exchange();
      proj = v.adjoint() * proj * v;
    }
    return proj;
  };
  const Operator pi_party_major = kron(kron(local(a), local(b)), local(c));
  const auto& to_pm = copy_to_party_major();
  // For the per-copy placement, the copy-major state is rotated by V (x) V (x) V,
  // a permutation: (V3 gamma V3^dag)[i,j] = gamma[v(i), v(j)].
  std::array<std::size_t, 512> v_index{};
  for (std::size_t i = 0; i < 512; ++i) {
    if (dual && placement == VPlacement::PerCopy) {
      auto v1 = [](std::size_t x) { return (x == 0 || x == 7) ? x : 7 - x; };
      v_index[i] = (v1(i >> 6) << 6) | (v1((i >> 3) & 7) << 3) | v1(i & 7);
    } else {
      v_index[i] = i;
    }
  }
  const Operator gamma = three_copies(rho);
  Complex acc{};
  for (std::size_t i = 0; i < 512; ++i)
    for (std::size_t j = 0; j < 512; ++j) {
      const Complex p = pi_party_major(to_pm[i], to_pm[j]);
      if (p == Complex{}) continue;
      acc += p * gamma(v_index[j], v_index[i]);
    }
  return acc.real();
}

// ------------------------------------------------------------ subprotocols

StepResult run_P(const DensityMatrix& rho_in) {
  if (rho_in.dim() != 8) throw InputError("run_P expects a 3-qubit state");
  auto r = try_P(three_copies(rho_in));
  if (!r) throw DegenerateOutcomeError("P: coincident outcomes have zero probability");
  return std::move(*r);
}

StepResult run_Pbar(const DensityMatrix& rho_in, VPlacement placement) {
  if (rho_in.dim() != 8) throw InputError("run_Pbar expects a 3-qubit state");
  auto r = try_Pbar(three_copies(rho_in), placement);
  if (!r) throw DegenerateOutcomeError("Pbar: coincident outcomes have zero probability");
  return std::move(*r);
}

Relabeled relabel_to_canonical(const DensityMatrix& rho) {
  if (rho.dim() != 8) throw InputError("relabel_to_canonical expects a 3-qubit state");
  int best = 0;
  double best_value = -1.0;
  for (const WLabel& k : all_w_labels()) {
    const double d = fidelity_with_pure(rho, w_basis_vector(k));
    if (d > best_value + kTieTol) {
      best = k.index();
      best_value = d;
    }
  }
  const WLabel label = WLabel::from_index(best);
  if (best == 0) return {rho, label};
  const Operator u = relabel_unitary(label);
  return {DensityMatrix::normalize(u.adjoint() * rho.op() * u), label};
}

StepResult distill_step(const DensityMatrix& rho, const ProtocolOptions& options) {
  const DensityMatrix input = options.relabel_every_step ? relabel_to_canonical(rho).rho : rho;
  const Operator gamma = three_copies(input);
  std::optional<StepResult> p = try_P(gamma);
  std::optional<StepResult> pbar = try_Pbar(gamma, options.v_placement);
  if (!p && !pbar) {
    throw DegenerateOutcomeError("both subprotocols have zero success probability");
  }
  if (options.relabel_every_step) {
    if (p) p = canonicalize(std::move(*p));
    if (pbar) pbar = canonicalize(std::move(*pbar));
  }
  if (!pbar) return std::move(*p);
  if (!p) return std::move(*pbar);
  return pbar->fidelity > p->fidelity + kTieTol ? std::move(*pbar) : std::move(*p);
}

// --------------------------------------------------------------- driver

const DensityMatrix& Trajectory::final_state() const {
  return steps.empty() ? initial : steps.back().rho_out;
}

double Trajectory::final_fidelity() const {
  return steps.empty() ? initial_fidelity : steps.back().fidelity;
}

std::vector<double> Trajectory::fidelities() const {
  std::vector<double> out{initial_fidelity};
  for (const auto& s : steps) out.push_back(s.fidelity);
  return out;
}

Trajectory distill_run(const DensityMatrix& rho, const RunOptions& options) {
  if (options.max_steps < 1) throw InputError("max_steps must be >= 1");
  if (!(options.target_fidelity > 0.0 && options.target_fidelity < 1.0)) {
    throw InputError("target fidelity must lie in (0, 1)");
  }
  Relabeled start = relabel_to_canonical(rho);
  const double f0 = fidelity_with_pure(start.rho, w_state());
  Trajectory traj{std::move(start.rho), f0, {}, Termination::MaxSteps, std::nullopt, 1.0};
  if (f0 >= options.target_fidelity) {
    traj.termination = Termination::TargetReached;
    return traj;
  }
  int unchanged = 0;
  for (int step = 0; step < options.max_steps; ++step) {
    StepResult next = distill_step(traj.final_state(), options.protocol);
    const double change = max_abs_diff(next.rho_out.op(), traj.final_state().op());
    traj.yield_estimate *= next.p_success / 3.0;
    traj.steps.push_back(std::move(next));
    if (traj.steps.back().fidelity >= options.target_fidelity) {
      traj.termination = Termination::TargetReached;
      break;
    }
    unchanged = change <= kFixedPointTol ? unchanged + 1 : 0;
    if (unchanged >= kFixedPointRepeats) {
      traj.termination = Termination::FixedPoint;
      break;
    }
  }
  return traj;
}

}  // namespace wdistill
