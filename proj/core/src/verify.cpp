#include "wdistill/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "wdistill/channels.hpp"
#include "wdistill/experiments.hpp"
#include "wdistill/protocol.hpp"
#include "wdistill/wstructure.hpp"

namespace wdistill {

namespace {

std::string format_deviation(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "max deviation %.3e", d);
  return buf;
}

CheckResult tolerance_check(std::string name, double deviation, double tol) {
  return {std::move(name), deviation <= tol, format_deviation(deviation)};
}

std::vector<StabilizerLabel> all_stabilizer_labels() {
  std::vector<StabilizerLabel> out;
  for (unsigned m = 0; m < 8; ++m) out.emplace_back(m);
  return out;
}

}  // namespace

std::vector<CheckResult> run_structural_checks() {
  std::vector<CheckResult> out;
  const auto labels = all_w_labels();
  const auto stabs = all_stabilizer_labels();

  {
    double dev = 0.0;
    for (const WLabel& a : labels)
      for (const WLabel& b : labels) {
        const double expect = a == b ? 1.0 : 0.0;
        dev = std::max(dev, std::abs(inner(w_basis_vector(a), w_basis_vector(b)) - expect));
      }
    out.push_back(tolerance_check("W basis orthonormal (64 pairs)", dev, 1e-12));
  }
  {
    const Operator u = u_wbasis();
    double dev = max_abs_diff(u.adjoint() * u, Operator::identity(8));
    for (const WLabel& k : labels) {
      const auto col = multiply(u, StateVector::basis(8, k.index()).amplitudes());
      dev = std::max(dev, max_abs_diff(col, w_basis_vector(k).amplitudes()));
    }
    out.push_back(tolerance_check("U_Wbasis unitary and maps |k> to |W^k>", dev, 1e-12));
  }
  {
    double dev = 0.0;
    for (StabilizerLabel s : stabs)
      for (const WLabel& k : labels) {
        const StateVector w = w_basis_vector(k);
        auto image = multiply(stabilizer(s).matrix, w.amplitudes());
        for (std::size_t i = 0; i < image.size(); ++i)
          dev = std::max(dev, std::abs(image[i] - static_cast<double>(s.sign_on(k)) * w[i]));
      }
    out.push_back(tolerance_check("stabilizer eigenvalue table (64 element/vector pairs)", dev, 1e-10));
  }
  {
    double dev = 0.0;
    for (StabilizerLabel s : stabs) {
      dev = std::max(dev, max_abs_diff(stabilizer(s).matrix, stabilizer_spectral(s)));
    }
    out.push_back(tolerance_check("stabilizer Pauli expansion equals spectral form", dev, 1e-10));
  }
  {
    double closure = 0.0;
    double commute = 0.0;
    double involution = 0.0;
    for (StabilizerLabel s : stabs) {
      const Operator& a = stabilizer(s).matrix;
      involution = std::max(involution, max_abs_diff(a * a, Operator::identity(8)));
      involution = std::max(involution, is_hermitian(a) ? 0.0 : 1.0);
      for (StabilizerLabel t : stabs) {
        const Operator& b = stabilizer(t).matrix;
        closure = std::max(closure, max_abs_diff(a * b, stabilizer(s ^ t).matrix));
        commute = std::max(commute, max_abs_diff(a * b, b * a));
      }
    }
    out.push_back(tolerance_check("stabilizer group closure", closure, 1e-10));
    out.push_back(tolerance_check("stabilizer elements commute", commute, 1e-10));
    out.push_back(tolerance_check("stabilizer elements Hermitian involutions", involution, 1e-10));
  }
  for (bool dual : {false, true}) {
    Operator sum(8, 8);
    double ortho = 0.0;
    for (OutcomePair m : kAllOutcomes) {
      const Operator mm = measurement_operator(m, dual);
      sum += mm;
      for (OutcomePair n : kAllOutcomes) {
        const Operator expect = m == n ? mm : Operator(8, 8);
        ortho = std::max(ortho, max_abs_diff(mm * measurement_operator(n, dual), expect));
      }
    }
    const std::string tag = dual ? " (dual)" : "";
    out.push_back(tolerance_check("measurement completeness" + tag,
                                  max_abs_diff(sum, Operator::identity(8)), 1e-12));
    out.push_back(tolerance_check("measurement projectors orthogonal" + tag, ortho, 1e-12));
  }
  {
    double dev = 0.0;
    for (const WLabel& a : labels)
      for (const WLabel& b : labels)
        dev = std::max(dev, std::abs(std::norm(inner(w_basis_vector(a), dual_w_basis_vector(b))) -
                                     0.125));
    out.push_back(tolerance_check("mutual unbiasedness |<W|Wbar>|^2 = 1/8 (64 pairs)", dev, 1e-12));
  }
  {
    double dev = 0.0;
    const StateVector& w = w_state();
    for (const WLabel& k : labels) {
      const auto image = multiply(relabel_unitary(k), w.amplitudes());
      dev = std::max(dev, max_abs_diff(image, w_basis_vector(k).amplitudes()));
    }
    out.push_back(tolerance_check("relabel unitaries regenerate all 8 basis vectors", dev, 1e-12));
  }
  {
    double dev = 0.0;
    for (double f : linear_grid(1.0 / 3.0, 1.0, 20)) {
      const FidelityMapResult formula = dephasing_fidelity_map(f);
      const StepResult sim =
          run_P(noisy_w(ChannelSpec(ChannelKind::Dephasing, mu_for_fidelity(ChannelKind::Dephasing, f))));
      dev = std::max({dev, std::abs(sim.fidelity - formula.fidelity),
                      std::abs(sim.p_success - formula.success_probability)});
    }
    out.push_back(tolerance_check("simulated P matches closed-form recurrence (20 points)", dev, 1e-9));
  }
  return out;
}

}  // namespace wdistill
