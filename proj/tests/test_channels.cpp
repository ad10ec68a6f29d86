#include <doctest.h>

#include <boost/rational.hpp>

#include <cmath>

#include "wdistill/channels.hpp"
#include "wdistill/errors.hpp"
#include "wdistill/rng.hpp"
#include "wdistill/wstructure.hpp"

using namespace wdistill;

namespace {

using Q = boost::rational<long long>;

struct ExactMap {
  Q numerator;
  Q denominator;
};

ExactMap exact_map(Q f) {
  const Q g = Q(1) - f;
  const Q num = Q(25, 81) * f * f * f + Q(1, 18) * f * g * g + Q(1, 324) * g * g * g;
  const Q den = Q(25, 81) * f * f * f + Q(1, 9) * f * f * g + Q(2, 27) * f * g * g +
                Q(17, 162) * g * g * g;
  return {num, den};
}

double to_double(Q q) { return boost::rational_cast<double>(q); }

Operator sandwich(const Operator& p, const Operator& rho, int qubit) {
  const Operator e = embed(p, 3, {qubit});
  return e * rho * e.adjoint();
}

}  // namespace

TEST_CASE("channel parameter validation") {
  CHECK_THROWS_AS(ChannelSpec(ChannelKind::Dephasing, -0.1), InputError);
  CHECK_THROWS_AS(ChannelSpec(ChannelKind::Depolarizing, 1.5), InputError);
  CHECK(parse_channel_kind("dephasing") == ChannelKind::Dephasing);
  CHECK(parse_channel_kind("depolarizing") == ChannelKind::Depolarizing);
  CHECK_THROWS_AS(parse_channel_kind("amplitude"), InputError);
}

TEST_CASE("channel examples") {
  Rng rng(17);
  const DensityMatrix r = random_density_hs(8, rng);
  const DensityMatrix same = apply_channel(r, ChannelSpec(ChannelKind::Dephasing, 1.0), 1);
  CHECK(max_abs_diff(same.op(), r.op()) < 1e-15);

  const DensityMatrix zero = DensityMatrix::from_pure(StateVector::basis(2, 0));
  const DensityMatrix out = apply_channel(zero, ChannelSpec(ChannelKind::Depolarizing, 0.0), 0);
  CHECK(max_abs_diff(out.op(), Operator::identity(2) * Complex{0.5}) < 1e-15);

  // Full dephasing of A kills the coherences between A=0 and A=1 blocks.
  const DensityMatrix w = DensityMatrix::from_pure(w_state());
  const DensityMatrix dw = apply_channel(w, ChannelSpec(ChannelKind::Dephasing, 0.0), 0);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const bool same_a = ((i >> 2) & 1U) == ((j >> 2) & 1U);
      CHECK(std::abs(dw(i, j) - (same_a ? w(i, j) : Complex{0.0})) < 1e-15);
    }
  }
}

TEST_CASE("channels match their operator-sum formulas") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix r = random_density_hs(8, rng);
    const double mu = rng.uniform();
    const int q = t % 3;
    const Operator deph = r.op() * Complex{0.5 * (1.0 + mu)} +
                          sandwich(gates::Z(), r.op(), q) * Complex{0.5 * (1.0 - mu)};
    CHECK(max_abs_diff(apply_channel(r, ChannelSpec(ChannelKind::Dephasing, mu), q).op(), deph) <
          1e-14);
    const Operator pauli_sum = r.op() + sandwich(gates::X(), r.op(), q) +
                               sandwich(gates::Y(), r.op(), q) + sandwich(gates::Z(), r.op(), q);
    const Operator depol = r.op() * Complex{mu} + pauli_sum * Complex{0.25 * (1.0 - mu)};
    CHECK(max_abs_diff(apply_channel(r, ChannelSpec(ChannelKind::Depolarizing, mu), q).op(),
                       depol) < 1e-14);
  }
}

TEST_CASE("channel outputs stay valid states") {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix r = random_density_hs(8, rng);
    const ChannelKind kind = t % 2 == 0 ? ChannelKind::Dephasing : ChannelKind::Depolarizing;
    const DensityMatrix out = apply_channel(r, ChannelSpec(kind, rng.uniform()), t % 3);
    CHECK(std::abs(out.op().trace() - 1.0) < 1e-12);
    CHECK(is_valid_state(out.op()));
  }
}

TEST_CASE("noisy W fidelities") {
  for (double mu : {0.0, 0.1, 0.37, 0.5, 0.81, 1.0}) {
    for (ChannelKind kind : {ChannelKind::Dephasing, ChannelKind::Depolarizing}) {
      const DensityMatrix rho = noisy_w(ChannelSpec(kind, mu));
      CHECK(fidelity_with_pure(rho, w_state()) ==
            doctest::Approx(noisy_w_fidelity(kind, mu)).epsilon(1e-12));
    }
  }
  CHECK(noisy_w_fidelity(ChannelKind::Dephasing, 1.0) == doctest::Approx(1.0));
  CHECK(noisy_w_fidelity(ChannelKind::Dephasing, 0.0) == doctest::Approx(1.0 / 3.0));
  CHECK(noisy_w_fidelity(ChannelKind::Depolarizing, 0.0) == doctest::Approx(1.0 / 8.0));
  CHECK(noisy_w_fidelity(ChannelKind::Depolarizing, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("mu_for_fidelity inverts the family") {
  CHECK(mu_for_fidelity(ChannelKind::Dephasing, 1.0) == doctest::Approx(1.0));
  CHECK(mu_for_fidelity(ChannelKind::Dephasing, 1.0 / 3.0) == doctest::Approx(0.0));
  CHECK(mu_for_fidelity(ChannelKind::Depolarizing, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (ChannelKind kind : {ChannelKind::Dephasing, ChannelKind::Depolarizing}) {
    const double lo = min_noisy_w_fidelity(kind);
    for (int i = 0; i <= 20; ++i) {
      const double f = lo + (1.0 - lo) * i / 20.0;
      const double mu = mu_for_fidelity(kind, f);
      const DensityMatrix rho = noisy_w(ChannelSpec(kind, mu));
      CHECK(std::abs(fidelity_with_pure(rho, w_state()) - f) < 1e-10);
    }
    CHECK_THROWS_AS(mu_for_fidelity(kind, lo - 0.01), InputError);
    CHECK_THROWS_AS(mu_for_fidelity(kind, 1.01), InputError);
  }
}

TEST_CASE("closed-form recurrence against exact rationals") {
  const ExactMap third = exact_map(Q(1, 3));
  CHECK(third.numerator == Q(180, 8748));
  CHECK(third.denominator == Q(540, 8748));
  CHECK(third.numerator / third.denominator == Q(1, 3));

  const ExactMap one = exact_map(Q(1));
  CHECK(one.numerator == Q(25, 81));
  CHECK(one.denominator == Q(25, 81));

  for (Q f : {Q(1, 3), Q(3, 5), Q(7, 10), Q(9, 10), Q(1)}) {
    const ExactMap e = exact_map(f);
    const FidelityMapResult r = dephasing_fidelity_map(to_double(f));
    CHECK(r.fidelity == doctest::Approx(to_double(e.numerator / e.denominator)).epsilon(1e-14));
    CHECK(r.success_probability == doctest::Approx(to_double(e.denominator)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(dephasing_fidelity_map(0.3), InputError);
  CHECK_THROWS_AS(dephasing_fidelity_map(1.1), InputError);
}

TEST_CASE("recurrence improves every fidelity above one third") {
  for (int i = 34; i <= 99; ++i) {
    const double f = i / 100.0;
    CHECK(dephasing_fidelity_map(f).fidelity > f);
  }
}
