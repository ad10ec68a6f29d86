#include "wdistill/qmath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "wdistill/errors.hpp"
#include "wdistill/rng.hpp"

namespace wdistill {

namespace {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

int qubits_for_dim(std::size_t dim) {
  if (!is_power_of_two(dim) || dim < 2) {
    throw InputError("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return std::countr_zero(dim);
}

void validate_targets(std::span<const int> targets, int n_total, bool allow_empty) {
  if (!allow_empty && targets.empty()) throw InputError("empty qubit list");
  std::vector<bool> seen(static_cast<std::size_t>(std::max(n_total, 0)), false);
  for (int t : targets) {
    if (t < 0 || t >= n_total) {
      throw InputError("qubit index " + std::to_string(t) + " out of range for " +
                       std::to_string(n_total) + " qubits");
    }
    if (seen[t]) throw InputError("duplicate qubit index " + std::to_string(t));
    seen[t] = true;
  }
}

// Bit mask of qubit q in an n-qubit index (qubit 0 is the MSB).
std::size_t qubit_bit(int n, int q) { return std::size_t{1} << (n - 1 - q); }

// Gathers the bits of `index` at `qubits` into a compact label, first listed
// qubit most significant.
std::size_t gather(std::size_t index, int n, std::span<const int> qubits) {
  std::size_t out = 0;
  for (int q : qubits) out = (out << 1) | ((index & qubit_bit(n, q)) ? 1 : 0);
  return out;
}

std::size_t scatter(std::size_t label, int n, std::span<const int> qubits) {
  std::size_t out = 0;
  const auto k = qubits.size();
  for (std::size_t a = 0; a < k; ++a) {
    if (label & (std::size_t{1} << (k - 1 - a))) out |= qubit_bit(n, qubits[a]);
  }
  return out;
}

std::size_t mask_of(int n, std::span<const int> qubits) {
  std::size_t m = 0;
  for (int q : qubits) m |= qubit_bit(n, q);
  return m;
}

}  // namespace

// ---------------------------------------------------------------- Operator

Operator::Operator(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

Operator::Operator(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Operator Operator::identity(std::size_t dim) {
  Operator out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

Operator Operator::diagonal(std::span<const Complex> diag) {
  Operator out(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
  return out;
}

int Operator::num_qubits() const {
  if (!is_square()) throw InputError("operator is not square");
  return qubits_for_dim(rows_);
}

Operator Operator::adjoint() const {
  Operator out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Operator Operator::transpose() const {
  Operator out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Operator Operator::conj() const {
  Operator out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Complex Operator::trace() const {
  if (!is_square()) throw InputError("trace of a non-square operator");
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Operator& Operator::operator+=(const Operator& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.cols() != b.rows()) throw InputError("shape mismatch in *");
  Operator out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex v = a(r, k);
      if (v == Complex{}) continue;
      const Complex* brow = &b(k, 0);
      Complex* orow = &out(r, 0);
      for (std::size_t c = 0; c < b.cols(); ++c) orow[c] += v * brow[c];
    }
  }
  return out;
}

// ------------------------------------------------------------- StateVector

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (norm2 == 0.0) throw InputError("cannot normalise the zero vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amplitudes) a *= inv;
  return StateVector(std::move(amplitudes), Unchecked{});
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  double norm2 = 0.0;
  for (const auto& a : amps_) norm2 += std::norm(a);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) throw InputError("state vector is not unit norm");
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InputError("basis index out of range");
  std::vector<Complex> v(dim);
  v[index] = 1.0;
  return StateVector(std::move(v), Unchecked{});
}

Operator StateVector::projector() const {
  Operator out(dim(), dim());
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c) out(r, c) = amps_[r] * std::conj(amps_[c]);
  return out;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw InputError("dimension mismatch in inner product");
  Complex s{};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

std::vector<Complex> multiply(const Operator& op, std::span<const Complex> v) {
  if (op.cols() != v.size()) throw InputError("dimension mismatch in matrix-vector product");
  std::vector<Complex> out(op.rows());
  for (std::size_t r = 0; r < op.rows(); ++r) {
    Complex s{};
    for (std::size_t c = 0; c < op.cols(); ++c) s += op(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

StateVector apply(const Operator& op, const StateVector& v) {
  return StateVector::normalized(multiply(op, v.amplitudes()));
}

// ----------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  op_.num_qubits();
  if (!is_hermitian(op_)) throw InputError("density matrix is not Hermitian");
  if (std::abs(op_.trace() - Complex{1.0, 0.0}) > kAlgebraTol) {
    throw InputError("density matrix does not have unit trace");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  return DensityMatrix(Operator::identity(dim) * Complex{1.0 / static_cast<double>(dim)});
}

DensityMatrix DensityMatrix::normalize(Operator op) {
  const double tr = op.trace().real();
  if (!(tr > 0.0)) throw InputError("cannot normalise an operator with non-positive trace");
  Operator sym = (op + op.adjoint()) * Complex{0.5 / tr};
  return DensityMatrix(std::move(sym));
}

// ---------------------------------------------------------------- checks

double max_abs_diff(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("shape mismatch in diff");
  return max_abs_diff(a.data(), b.data());
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InputError("length mismatch in diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool is_hermitian(const Operator& op, double tol) {
  if (!op.is_square()) return false;
  for (std::size_t r = 0; r < op.rows(); ++r)
    for (std::size_t c = r; c < op.cols(); ++c)
      if (std::abs(op(r, c) - std::conj(op(c, r))) > tol) return false;
  return true;
}

bool is_valid_state(const Operator& op, double tol, double tol_eig) {
  if (!is_hermitian(op, tol)) return false;
  if (std::abs(op.trace() - Complex{1.0, 0.0}) > tol) return false;
  return hermitian_eigenvalues(op).front() >= -tol_eig;
}

// ---------------------------------------------------------- tensor algebra

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex v = a(i, j);
      if (v == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = v * b(k, l);
    }
  return out;
}

Operator kron(std::initializer_list<Operator> factors) {
  if (factors.size() == 0) throw InputError("kron of nothing");
  auto it = factors.begin();
  Operator out = *it++;
  for (; it != factors.end(); ++it) out = kron(out, *it);
  return out;
}

Operator embed(const Operator& op, int n_total, std::span<const int> targets) {
  const int k = op.num_qubits();
  if (static_cast<int>(targets.size()) != k) {
    throw InputError("embed: operator acts on " + std::to_string(k) + " qubits but " +
                     std::to_string(targets.size()) + " targets were given");
  }
  validate_targets(targets, n_total, false);
  const std::size_t dim = std::size_t{1} << n_total;
  const std::size_t sub_dim = op.rows();
  const std::size_t mask = mask_of(n_total, targets);
  Operator out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t rest = i & ~mask;
    const std::size_t si = gather(i, n_total, targets);
    for (std::size_t sj = 0; sj < sub_dim; ++sj) {
      out(i, rest | scatter(sj, n_total, targets)) = op(si, sj);
    }
  }
  return out;
}

Operator embed(const Operator& op, int n_total, std::initializer_list<int> targets) {
  return embed(op, n_total, std::span<const int>(targets.begin(), targets.size()));
}

Operator qubit_permutation(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  validate_targets(perm, n, false);
  const std::size_t dim = std::size_t{1} << n;
  Operator out(dim, dim);
  for (std::size_t in = 0; in < dim; ++in) {
    std::size_t dst = 0;
    for (int q = 0; q < n; ++q)
      if (in & qubit_bit(n, q)) dst |= qubit_bit(n, perm[q]);
    out(dst, in) = 1.0;
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.num_qubits();
  validate_targets(keep, n, false);
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);

  const std::size_t kdim = std::size_t{1} << keep.size();
  const std::size_t tdim = std::size_t{1} << traced.size();
  Operator out(kdim, kdim);
  for (std::size_t r = 0; r < kdim; ++r) {
    const std::size_t rbits = scatter(r, n, keep);
    for (std::size_t c = 0; c < kdim; ++c) {
      const std::size_t cbits = scatter(c, n, keep);
      Complex s{};
      for (std::size_t t = 0; t < tdim; ++t) {
        const std::size_t tbits = scatter(t, n, traced);
        s += rho(rbits | tbits, cbits | tbits);
      }
      out(r, c) = s;
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

Operator partial_transpose(const Operator& rho, std::span<const int> subsystem) {
  const int n = rho.num_qubits();
  validate_targets(subsystem, n, true);
  const std::size_t mask = mask_of(n, subsystem);
  const std::size_t dim = rho.rows();
  Operator out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t ip = (i & ~mask) | (j & mask);
      const std::size_t jp = (j & ~mask) | (i & mask);
      out(ip, jp) = rho(i, j);
    }
  return out;
}

Operator partial_transpose(const Operator& rho, std::initializer_list<int> subsystem) {
  return partial_transpose(rho, std::span<const int>(subsystem.begin(), subsystem.size()));
}

// ------------------------------------------------------------- eigensolver

EigenSystem hermitian_eigensystem(const Operator& h) {
  if (!h.is_square()) throw InputError("eigenvalues of a non-square operator");
  if (!is_hermitian(h, kAlgebraTol)) throw InputError("eigenvalues: operator is not Hermitian");
  const std::size_t n = h.rows();
  Operator a = (h + h.adjoint()) * Complex{0.5};
  Operator v = Operator::identity(n);

  double scale = 0.0;
  for (const auto& z : a.data()) scale += std::norm(z);
  const double stop = 1e-12 * std::max(1.0, std::sqrt(scale));

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g < 1e-300) continue;
        // Phase rotation makes a(p,q) real, then a real Jacobi rotation kills it.
        const Complex xi = std::conj(apq) / g;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = [[c, s], [-s*xi, c*xi]] on (p, q); A <- J^dagger A J, V <- V J.
        const Complex jpp = c, jpq = s, jqp = -s * xi, jqq = c * xi;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  EigenSystem out{std::vector<double>(n), Operator(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const Operator& h) {
  return hermitian_eigensystem(h).values;
}

Operator psd_sqrt(const Operator& h) {
  const EigenSystem es = hermitian_eigensystem(h);
  const std::size_t n = h.rows();
  Operator out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double root = std::sqrt(std::max(es.values[i], 0.0));
    if (root == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        out(r, c) += root * es.vectors(r, i) * std::conj(es.vectors(c, i));
  }
  return out;
}

// ---------------------------------------------------------------- fidelity

double fidelity_with_pure(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim()) throw InputError("fidelity: dimension mismatch");
  Complex s{};
  for (std::size_t r = 0; r < psi.dim(); ++r) {
    Complex row{};
    for (std::size_t c = 0; c < psi.dim(); ++c) row += rho(r, c) * psi[c];
    s += std::conj(psi[r]) * row;
  }
  return std::clamp(s.real(), 0.0, 1.0);
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw InputError("fidelity: dimension mismatch");
  const Operator root = psd_sqrt(rho.op());
  Operator inner_op = root * sigma.op() * root;
  inner_op = (inner_op + inner_op.adjoint()) * Complex{0.5};
  const double tr = psd_sqrt(inner_op).trace().real();
  return std::clamp(tr * tr, 0.0, 1.0);
}

// -------------------------------------------------------------- kernels

Operator conjugate_by(const Operator& t, const Operator& m) {
  if (t.cols() != m.rows() || !m.is_square()) throw InputError("conjugate_by: shape mismatch");
  const std::size_t r = t.rows();
  const std::size_t n = t.cols();

  struct Entry {
    std::size_t col;
    Complex value;
  };
  std::vector<std::vector<Entry>> nz(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t(i, j) != Complex{}) nz[i].push_back({j, t(i, j)});

  Operator tm(r, n);
  for (std::size_t i = 0; i < r; ++i) {
    Complex* out_row = &tm(i, 0);
    for (const auto& [col, value] : nz[i]) {
      const Complex* m_row = &m(col, 0);
      for (std::size_t c = 0; c < n; ++c) out_row[c] += value * m_row[c];
    }
  }
  Operator out(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t s = 0; s < r; ++s) {
      Complex acc{};
      for (const auto& [col, value] : nz[s]) acc += tm(i, col) * std::conj(value);
      out(i, s) = acc;
    }
  return out;
}

DensityMatrix random_density_hs(std::size_t dim, Rng& rng) {
  if (dim < 2) throw InputError("random_density_hs: dim must be >= 2");
  Operator g(dim, dim);
  for (auto& z : g.data()) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    z = Complex{re, im};
  }
  return DensityMatrix::normalize(g * g.adjoint());
}

// ------------------------------------------------------------------ gates

namespace gates {

const Operator& I() {
  static const Operator op = Operator::identity(2);
  return op;
}
const Operator& X() {
  static const Operator op{{0.0, 1.0}, {1.0, 0.0}};
  return op;
}
const Operator& Y() {
  static const Operator op{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}};
  return op;
}
const Operator& Z() {
  static const Operator op{{1.0, 0.0}, {0.0, -1.0}};
  return op;
}
const Operator& H() {
  static const Operator op = (X() + Z()) * Complex{1.0 / std::sqrt(2.0)};
  return op;
}
const Operator& swap() {
  static const Operator op{{1.0, 0.0, 0.0, 0.0},
                           {0.0, 0.0, 1.0, 0.0},
                           {0.0, 1.0, 0.0, 0.0},
                           {0.0, 0.0, 0.0, 1.0}};
  return op;
}

}  // namespace gates

}  // namespace wdistill
