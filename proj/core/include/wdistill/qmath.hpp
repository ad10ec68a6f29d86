#pragma once

// Dense complex linear algebra for few-qubit simulation.
//
// Conventions used throughout the library:
//  * matrices are stored row-major;
//  * qubit 0 is the most significant bit of a computational-basis index,
//    so |k1 k2 k3> has index 4*k1 + 2*k2 + k3.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace wdistill {

using Complex = std::complex<double>;

class Rng;

// Dense complex matrix. Square power-of-two instances are operators on qubits;
// rectangular instances appear as contraction maps (e.g. 2x8, 8x512).
class Operator {
 public:
  Operator() = default;
  Operator(std::size_t rows, std::size_t cols);
  Operator(std::initializer_list<std::initializer_list<Complex>> rows);

  static Operator identity(std::size_t dim);
  static Operator zeros(std::size_t rows, std::size_t cols) { return Operator(rows, cols); }
  static Operator diagonal(std::span<const Complex> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  // Number of qubits for a square operator whose dimension is a power of two.
  // Throws InputError otherwise.
  int num_qubits() const;

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }
  std::span<const Complex> row(std::size_t r) const {
    return std::span<const Complex>(data_).subspan(r * cols_, cols_);
  }

  Operator adjoint() const;
  Operator transpose() const;
  Operator conj() const;
  Complex trace() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex scale);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Unit-norm column vector.
class StateVector {
 public:
  // Normalises `amplitudes`; throws InputError on a zero vector.
  static StateVector normalized(std::vector<Complex> amplitudes);
  // Validates norm 1 within 1e-12.
  explicit StateVector(std::vector<Complex> amplitudes);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const Complex> amplitudes() const { return amps_; }

  // |psi><psi|
  Operator projector() const;

 private:
  struct Unchecked {};
  StateVector(std::vector<Complex> amplitudes, Unchecked) : amps_(std::move(amplitudes)) {}
  std::vector<Complex> amps_;
};

Complex inner(const StateVector& a, const StateVector& b);  // <a|b>
StateVector apply(const Operator& op, const StateVector& v);
// Raw matrix-vector product, no normalisation.
std::vector<Complex> multiply(const Operator& op, std::span<const Complex> v);

// Hermitian, unit-trace operator on qubits. Positivity is not checked at
// construction (an eigen-decomposition per construction would dominate the
// protocol loop); use is_valid_state() where it matters.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator op);
  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int num_qubits);
  // Divides by the trace and symmetrises away roundoff. Throws InputError on
  // a non-positive trace.
  static DensityMatrix normalize(Operator op);

  const Operator& op() const { return op_; }
  std::size_t dim() const { return op_.rows(); }
  int num_qubits() const { return op_.num_qubits(); }
  const Complex& operator()(std::size_t r, std::size_t c) const { return op_(r, c); }

 private:
  Operator op_;
};

inline constexpr double kAlgebraTol = 1e-10;
inline constexpr double kPositivityTol = 1e-9;

double max_abs_diff(const Operator& a, const Operator& b);
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);
bool is_hermitian(const Operator& op, double tol = kAlgebraTol);
// Hermitian, trace 1, min eigenvalue >= -tol_eig.
bool is_valid_state(const Operator& op, double tol = kAlgebraTol,
                    double tol_eig = kPositivityTol);

Operator kron(const Operator& a, const Operator& b);
Operator kron(std::initializer_list<Operator> factors);

// Lifts a k-qubit operator to n_total qubits acting on `targets` (listed in
// the operator's own qubit order) and as identity elsewhere.
Operator embed(const Operator& op, int n_total, std::span<const int> targets);
Operator embed(const Operator& op, int n_total, std::initializer_list<int> targets);

// Permutation operator sending the qubit at position q to position perm[q].
Operator qubit_permutation(std::span<const int> perm);

// Reduced state on `keep`, ordered as listed.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

Operator partial_transpose(const Operator& rho, std::span<const int> subsystem);
Operator partial_transpose(const Operator& rho, std::initializer_list<int> subsystem);

struct EigenSystem {
  std::vector<double> values;  // ascending
  Operator vectors;            // column i pairs with values[i]
};

// Cyclic complex Jacobi rotations; stops once the off-diagonal Frobenius norm
// falls below 1e-12 (relative to max(1, |h|_F)). Throws InputError when `h` is
// not Hermitian within 1e-10.
EigenSystem hermitian_eigensystem(const Operator& h);
std::vector<double> hermitian_eigenvalues(const Operator& h);

// Principal square root of a positive-semidefinite operator; negative
// eigenvalues within roundoff are clamped to zero.
Operator psd_sqrt(const Operator& h);

// <psi|rho|psi>, clipped into [0, 1].
double fidelity_with_pure(const DensityMatrix& rho, const StateVector& psi);
// (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// t * m * t^dagger, skipping the structural zeros of t.
Operator conjugate_by(const Operator& t, const Operator& m);

// G G^dagger / tr(G G^dagger) with G a dim x dim complex Ginibre matrix.
DensityMatrix random_density_hs(std::size_t dim, Rng& rng);

namespace gates {
const Operator& I();
const Operator& X();
const Operator& Y();
const Operator& Z();
const Operator& H();
const Operator& swap();
}  // namespace gates

}  // namespace wdistill
