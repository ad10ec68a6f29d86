#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "wdistill/errors.hpp"
#include "wdistill/rng.hpp"
#include "wdistill/wstructure.hpp"

using namespace wdistill;

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

// Builds sum_i coeff_i |bits_i> from "+001"-style terms.
std::vector<Complex> terms(std::initializer_list<std::string> items) {
  std::vector<Complex> v(8);
  for (const std::string& t : items) {
    const double sign = t[0] == '-' ? -1.0 : 1.0;
    const int idx = std::stoi(t.substr(1), nullptr, 2);
    v[static_cast<std::size_t>(idx)] += sign * kInvSqrt3;
  }
  return v;
}

// Rows of the W-basis table.
std::map<std::string, std::vector<Complex>> table_rows() {
  return {
      {"000", terms({"+001", "+010", "+100"})}, {"001", terms({"+000", "+011", "-101"})},
      {"010", terms({"-011", "+000", "+110"})}, {"011", terms({"-010", "+001", "-111"})},
      {"100", terms({"+101", "-110", "+000"})}, {"101", terms({"+100", "-111", "-001"})},
      {"110", terms({"-111", "-100", "+010"})}, {"111", terms({"-110", "-101", "-011"})},
  };
}

Operator minus_iy() { return gates::Y() * Complex{0.0, -1.0}; }

}  // namespace

TEST_CASE("labels") {
  const WLabel k = WLabel::parse("011");
  CHECK(k.k1() == 0);
  CHECK(k.k2() == 1);
  CHECK(k.k3() == 1);
  CHECK(k.index() == 3);
  CHECK(k.to_string() == "011");
  CHECK(WLabel::from_index(5) == WLabel(1, 0, 1));
  CHECK_THROWS_AS(WLabel(2, 0, 0), InputError);
  CHECK_THROWS_AS(WLabel::parse("01"), InputError);
  CHECK_THROWS_AS(WLabel::parse("0a1"), InputError);
  CHECK_THROWS_AS(WLabel::from_index(8), InputError);
}

TEST_CASE("W basis vectors match the table") {
  for (const auto& [bits, row] : table_rows()) {
    CAPTURE(bits);
    CHECK(max_abs_diff(w_basis_vector(WLabel::parse(bits)).amplitudes(), row) < 1e-15);
  }
  CHECK(max_abs_diff(w_state().amplitudes(), terms({"+001", "+010", "+100"})) < 1e-15);
}

TEST_CASE("W basis is orthonormal") {
  for (WLabel a : all_w_labels()) {
    for (WLabel b : all_w_labels()) {
      const Complex ip = inner(w_basis_vector(a), w_basis_vector(b));
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("u_wbasis maps the computational basis onto the W basis") {
  const Operator u = u_wbasis();
  CHECK(max_abs_diff(u.adjoint() * u, Operator::identity(8)) < 1e-12);
  for (WLabel k : all_w_labels()) {
    const StateVector col = apply(u, StateVector::basis(8, static_cast<std::size_t>(k.index())));
    CHECK(max_abs_diff(col.amplitudes(), w_basis_vector(k).amplitudes()) < 1e-12);
  }
  // 1ZX|111> = -|110>, ZX1|111> = -|101>, X1Z|111> = -|011>.
  const StateVector v111 = apply(u, StateVector::basis(8, 7));
  CHECK(max_abs_diff(v111.amplitudes(), terms({"-110", "-101", "-011"})) < 1e-12);
}

TEST_CASE("stabilizer group") {
  const StabilizerElement k1 = stabilizer(StabilizerLabel::of({1}));
  CHECK(max_abs_diff(apply(k1.matrix, w_state()).amplitudes(), w_state().amplitudes()) < 1e-12);

  const Operator zzz = kron({gates::Z(), gates::Z(), gates::Z()});
  CHECK(max_abs_diff(stabilizer(StabilizerLabel::of({1, 2, 3})).matrix, zzz * Complex{-1.0}) <
        1e-12);
  CHECK(max_abs_diff(stabilizer(StabilizerLabel::of({1})).matrix *
                         stabilizer(StabilizerLabel::of({2})).matrix,
                     stabilizer(StabilizerLabel::of({1, 2})).matrix) < 1e-12);
  CHECK(max_abs_diff(stabilizer(StabilizerLabel(0)).matrix, Operator::identity(8)) == 0.0);

  for (unsigned s = 0; s < 8; ++s) {
    const StabilizerLabel sl(s);
    const Operator m = stabilizer(sl).matrix;
    CHECK(is_hermitian(m, 1e-12));
    CHECK(max_abs_diff(m * m, Operator::identity(8)) < 1e-10);
    CHECK(max_abs_diff(m, stabilizer_spectral(sl)) < 1e-10);
    for (WLabel k : all_w_labels()) {
      const int sign = ((s & 1U) ? k.k1() : 0) + ((s & 2U) ? k.k2() : 0) + ((s & 4U) ? k.k3() : 0);
      const double expected = (sign % 2 == 0) ? 1.0 : -1.0;
      CHECK(sl.sign_on(k) == static_cast<int>(expected));
      const StateVector wk = w_basis_vector(k);
      const auto mk = multiply(m, wk.amplitudes());
      std::vector<Complex> ref(wk.amplitudes().begin(), wk.amplitudes().end());
      for (auto& x : ref) x *= expected;
      CHECK(max_abs_diff(mk, ref) < 1e-10);
    }
    for (unsigned t = 0; t < 8; ++t) {
      const StabilizerLabel tl(t);
      const Operator n = stabilizer(tl).matrix;
      CHECK(max_abs_diff(m * n, stabilizer(sl ^ tl).matrix) < 1e-10);
      CHECK(max_abs_diff(m * n, n * m) < 1e-10);
    }
  }
  CHECK_THROWS_AS(StabilizerLabel(8), InputError);
  CHECK_THROWS_AS(StabilizerLabel::of({4}), InputError);
}

TEST_CASE("relabel unitaries follow the table") {
  CHECK(max_abs_diff(relabel_unitary(WLabel(0, 0, 0)), Operator::identity(8)) == 0.0);
  CHECK(max_abs_diff(relabel_unitary(WLabel(0, 1, 0)),
                     kron({gates::I(), gates::X(), gates::Z()})) == 0.0);
  CHECK(max_abs_diff(relabel_unitary(WLabel(1, 0, 1)),
                     kron({minus_iy(), gates::Z(), gates::X()})) == 0.0);
  CHECK(max_abs_diff(relabel_unitary(WLabel(1, 1, 1)), kron({minus_iy(), minus_iy(), minus_iy()})) ==
        0.0);

  const auto rows = table_rows();
  for (WLabel k : all_w_labels()) {
    const Operator u = relabel_unitary(k);
    CHECK(max_abs_diff(u.adjoint() * u, Operator::identity(8)) < 1e-12);
    const StateVector img = apply(u, w_state());
    CHECK(max_abs_diff(img.amplitudes(), rows.at(k.to_string())) < 1e-12);
  }
}

TEST_CASE("lambda and the dual basis") {
  const Operator lam = lambda_op();
  const StateVector plus = apply(lam, StateVector::basis(8, 0));
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(plus[i] - 1.0 / std::sqrt(8.0)) < 1e-15);

  Rng rng(1);
  std::vector<Complex> amps(8);
  for (auto& a : amps) a = {rng.gaussian(), rng.gaussian()};
  const StateVector v = StateVector::normalized(amps);
  CHECK(max_abs_diff(apply(lam, apply(lam, v)).amplitudes(), v.amplitudes()) < 1e-12);
  CHECK(max_abs_diff(lam * lam.adjoint(), Operator::identity(8)) < 1e-12);

  const Operator ref = kron({gates::H(), gates::H(), gates::H()}) * embed(gates::swap(), 3, {0, 2});
  CHECK(max_abs_diff(lam, ref) < 1e-15);

  for (WLabel a : all_w_labels()) {
    for (WLabel b : all_w_labels()) {
      CHECK(std::norm(inner(w_basis_vector(a), dual_w_basis_vector(b))) ==
            doctest::Approx(0.125).epsilon(1e-12));
      CHECK(std::abs(inner(dual_w_basis_vector(a), dual_w_basis_vector(b)) -
                     (a == b ? 1.0 : 0.0)) < 1e-12);
    }
  }
  const StateVector d111 = apply(lam.adjoint(), w_basis_vector(WLabel(1, 1, 1)));
  CHECK(max_abs_diff(dual_w_basis_vector(WLabel(1, 1, 1)).amplitudes(), d111.amplitudes()) <
        1e-15);
}

TEST_CASE("V exchange") {
  const Operator v = v_exchange();
  CHECK(std::abs(v(0, 0) - 1.0) == 0.0);
  CHECK(std::abs(v(7, 7) - 1.0) == 0.0);
  CHECK(std::abs(v(6, 1) - 1.0) == 0.0);  // |001> -> |110>
  CHECK(std::abs(v(5, 2) - 1.0) == 0.0);  // |010> -> |101>
  CHECK(std::abs(v(3, 4) - 1.0) == 0.0);  // |100> -> |011>
  CHECK(max_abs_diff(v * v, Operator::identity(8)) == 0.0);
}
