#pragma once

// The 3-qubit W basis, its stabilizer group, the local relabeling unitaries,
// and the complementary (dual) basis.

#include <array>
#include <cstdint>
#include <string>

#include "wdistill/qmath.hpp"

namespace wdistill {

// Basis label k1 k2 k3.
class WLabel {
 public:
  constexpr WLabel() = default;
  // Throws InputError unless every argument is 0 or 1.
  WLabel(int k1, int k2, int k3);
  // Index 4*k1 + 2*k2 + k3.
  static WLabel from_index(int index);
  // Parses "011"-style strings.
  static WLabel parse(const std::string& bits);

  int k1() const { return (bits_ >> 2) & 1; }
  int k2() const { return (bits_ >> 1) & 1; }
  int k3() const { return bits_ & 1; }
  int bit(int j) const;  // j in {1,2,3}
  int index() const { return bits_; }
  std::string to_string() const;

  friend auto operator<=>(const WLabel&, const WLabel&) = default;

 private:
  std::uint8_t bits_ = 0;
};

inline constexpr int kNumWLabels = 8;
std::array<WLabel, kNumWLabels> all_w_labels();

// Which generators K_j enter a stabilizer product; bit (j-1) set means K_j.
class StabilizerLabel {
 public:
  constexpr StabilizerLabel() = default;
  explicit StabilizerLabel(unsigned mask);
  static StabilizerLabel of(std::initializer_list<int> generators);

  unsigned mask() const { return mask_; }
  bool contains(int j) const { return (mask_ >> (j - 1)) & 1U; }
  // Symmetric difference.
  StabilizerLabel operator^(StabilizerLabel other) const {
    return StabilizerLabel(mask_ ^ other.mask_);
  }
  // Eigenvalue sign (-1)^{sum_{j in S} k_j} on |W^k>.
  int sign_on(const WLabel& k) const;
  std::string to_string() const;

  friend bool operator==(const StabilizerLabel&, const StabilizerLabel&) = default;

 private:
  unsigned mask_ = 0;
};

struct StabilizerElement {
  StabilizerLabel label;
  Operator matrix;  // 8x8, Hermitian, squares to identity
};

// Table of the 8 W-basis vectors, transcribed literally.
StateVector w_basis_vector(const WLabel& label);
const StateVector& w_state();  // |W^000>

// U = (1 Z X + Z X 1 + X 1 Z) / sqrt(3); column k is |W^k>.
Operator u_wbasis();

// Built from the explicit Pauli expansions of K_1, K_2, K_3 and of their
// products; the empty label is the identity.
StabilizerElement stabilizer(StabilizerLabel label);
// Same group element built spectrally as sum_k sign_on(k) |W^k><W^k|.
Operator stabilizer_spectral(StabilizerLabel label);

// Local unitary taking |W^000> to |W^label>, as a product of single-qubit
// factors (the -iY factors included).
Operator relabel_unitary(const WLabel& label);

// H (x) H (x) H composed with the swap of qubits 1 and 3.
Operator lambda_op();
// Lambda^dagger |W^label>.
StateVector dual_w_basis_vector(const WLabel& label);

// Permutation fixing |000>, |111> and exchanging every other |x> with its
// complement.
Operator v_exchange();

}  // namespace wdistill
