#include "wdistill/wstructure.hpp"

#include <cmath>
#include <string_view>
#include <utility>
#include <vector>

#include "wdistill/errors.hpp"

namespace wdistill {

namespace {

const Operator& pauli(char c) {
  switch (c) {
    case '1': return gates::I();
    case 'X': return gates::X();
    case 'Y': return gates::Y();
    case 'Z': return gates::Z();
    default: throw InputError(std::string("unknown Pauli symbol ") + c);
  }
}

Operator pauli_string(std::string_view s) {
  Operator out = pauli(s[0]);
  for (std::size_t i = 1; i < s.size(); ++i) out = kron(out, pauli(s[i]));
  return out;
}

// sum_i coeff_i * P_i, each P_i a 3-letter Pauli string.
Operator pauli_sum(std::initializer_list<std::pair<double, std::string_view>> terms) {
  Operator out(8, 8);
  for (const auto& [coeff, s] : terms) out += pauli_string(s) * Complex{coeff};
  return out;
}

Operator minus_i_y() { return gates::Y() * Complex{0.0, -1.0}; }

StateVector from_terms(std::initializer_list<std::pair<int, std::string_view>> terms) {
  std::vector<Complex> amps(8);
  for (const auto& [sign, bits] : terms) amps[std::stoi(std::string(bits), nullptr, 2)] += sign;
  return StateVector::normalized(std::move(amps));
}

}  // namespace

// ------------------------------------------------------------------ labels

WLabel::WLabel(int k1, int k2, int k3) {
  for (int k : {k1, k2, k3})
    if (k != 0 && k != 1) throw InputError("W label bits must be 0 or 1");
  bits_ = static_cast<std::uint8_t>(4 * k1 + 2 * k2 + k3);
}

WLabel WLabel::from_index(int index) {
  if (index < 0 || index >= kNumWLabels) throw InputError("W label index out of range");
  return WLabel((index >> 2) & 1, (index >> 1) & 1, index & 1);
}

WLabel WLabel::parse(const std::string& bits) {
  if (bits.size() != 3) throw InputError("W label must have three bits: '" + bits + "'");
  std::array<int, 3> k{};
  for (int i = 0; i < 3; ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw InputError("bad W label '" + bits + "'");
    k[i] = bits[i] - '0';
  }
  return WLabel(k[0], k[1], k[2]);
}

int WLabel::bit(int j) const {
  switch (j) {
    case 1: return k1();
    case 2: return k2();
    case 3: return k3();
    default: throw InputError("W label bit index must be 1, 2 or 3");
  }
}

std::string WLabel::to_string() const {
  return {static_cast<char>('0' + k1()), static_cast<char>('0' + k2()),
          static_cast<char>('0' + k3())};
}

std::array<WLabel, kNumWLabels> all_w_labels() {
  std::array<WLabel, kNumWLabels> out;
  for (int i = 0; i < kNumWLabels; ++i) out[i] = WLabel::from_index(i);
  return out;
}

StabilizerLabel::StabilizerLabel(unsigned mask) : mask_(mask) {
  if (mask > 7U) throw InputError("stabilizer label mask out of range");
}

StabilizerLabel StabilizerLabel::of(std::initializer_list<int> generators) {
  unsigned mask = 0;
  for (int j : generators) {
    if (j < 1 || j > 3) throw InputError("stabilizer generator index must be 1, 2 or 3");
    mask |= 1U << (j - 1);
  }
  return StabilizerLabel(mask);
}

int StabilizerLabel::sign_on(const WLabel& k) const {
  int parity = 0;
  for (int j = 1; j <= 3; ++j)
    if (contains(j)) parity ^= k.bit(j);
  return parity ? -1 : 1;
}

std::string StabilizerLabel::to_string() const {
  if (mask_ == 0) return "1";
  std::string s;
  for (int j = 1; j <= 3; ++j)
    if (contains(j)) s += "K" + std::to_string(j);
  return s;
}

// --------------------------------------------------------------- W basis

StateVector w_basis_vector(const WLabel& label) {
  switch (label.index()) {
    case 0b000: return from_terms({{+1, "001"}, {+1, "010"}, {+1, "100"}});
    case 0b001: return from_terms({{+1, "000"}, {+1, "011"}, {-1, "101"}});
    case 0b010: return from_terms({{-1, "011"}, {+1, "000"}, {+1, "110"}});
    case 0b011: return from_terms({{-1, "010"}, {+1, "001"}, {-1, "111"}});
    case 0b100: return from_terms({{+1, "101"}, {-1, "110"}, {+1, "000"}});
    case 0b101: return from_terms({{+1, "100"}, {-1, "111"}, {-1, "001"}});
    case 0b110: return from_terms({{-1, "111"}, {-1, "100"}, {+1, "010"}});
    default: return from_terms({{-1, "110"}, {-1, "101"}, {-1, "011"}});
  }
}

const StateVector& w_state() {
  static const StateVector w = w_basis_vector(WLabel());
  return w;
}

Operator u_wbasis() {
  return pauli_sum({{1.0, "1ZX"}, {1.0, "ZX1"}, {1.0, "X1Z"}}) * Complex{1.0 / std::sqrt(3.0)};
}

// ------------------------------------------------------------ stabilizers

StabilizerElement stabilizer(StabilizerLabel label) {
  constexpr double t = 1.0 / 3.0;
  Operator m;
  switch (label.mask()) {
    case 0b000: m = Operator::identity(8); break;
    case 0b001: m = pauli_sum({{2 * t, "XXZ"}, {2 * t, "YZY"}, {t, "Z11"}}); break;
    case 0b010: m = pauli_sum({{2 * t, "ZXX"}, {2 * t, "YYZ"}, {t, "1Z1"}}); break;
    case 0b100: m = pauli_sum({{2 * t, "XZX"}, {2 * t, "ZYY"}, {t, "11Z"}}); break;
    case 0b011: m = pauli_sum({{2 * t, "1XX"}, {2 * t, "Y1Y"}, {-t, "ZZ1"}}); break;
    case 0b101: m = pauli_sum({{2 * t, "XX1"}, {2 * t, "1YY"}, {-t, "Z1Z"}}); break;
    case 0b110: m = pauli_sum({{2 * t, "X1X"}, {2 * t, "YY1"}, {-t, "1ZZ"}}); break;
    default: m = pauli_sum({{-1.0, "ZZZ"}}); break;
  }
  return {label, std::move(m)};
}

Operator stabilizer_spectral(StabilizerLabel label) {
  Operator out(8, 8);
  for (const WLabel& k : all_w_labels()) {
    out += w_basis_vector(k).projector() * Complex{static_cast<double>(label.sign_on(k))};
  }
  return out;
}

// ------------------------------------------------------------- relabeling

Operator relabel_unitary(const WLabel& label) {
  const Operator& I = gates::I();
  const Operator& X = gates::X();
  const Operator& Z = gates::Z();
  const Operator mY = minus_i_y();
  switch (label.index()) {
    case 0b000: return kron({I, I, I});
    case 0b001: return kron({Z, I, X});
    case 0b010: return kron({I, X, Z});
    case 0b011: return kron({Z, X, mY});
    case 0b100: return kron({X, Z, I});
    case 0b101: return kron({mY, Z, X});
    case 0b110: return kron({X, mY, Z});
    default: return kron({mY, mY, mY});
  }
}

// ---------------------------------------------------------------- duality

Operator lambda_op() {
  const Operator& H = gates::H();
  return kron({H, H, H}) * embed(gates::swap(), 3, {0, 2});
}

StateVector dual_w_basis_vector(const WLabel& label) {
  return StateVector::normalized(multiply(lambda_op().adjoint(), w_basis_vector(label).amplitudes()));
}

Operator v_exchange() {
  Operator v(8, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    const std::size_t image = (i == 0 || i == 7) ? i : 7 - i;
    v(image, i) = 1.0;
  }
  return v;
}

}  // namespace wdistill
