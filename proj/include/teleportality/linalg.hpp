#pragma once

// Small dense complex linear algebra for 1-4 qubit problems.
//
// Matrices are square with power-of-two dimension (2..16) and stored
// row-major. Qubit 0 is always the most significant bit of a basis index,
// so |q0 q1 ... q(n-1)> maps to index q0*2^(n-1) + ... + q(n-1).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace teleportality {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 16;
inline constexpr int kMaxQubits = 4;

/// Dimension requested beyond what the library supports.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed argument (bad subset, out-of-range parameter, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input failed a numerical validity check (hermiticity, trace, completeness).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix has an eigenvalue below the PSD tolerance.
class NotPsdError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A closed-form regime precondition does not hold (e.g. varphi != 0).
class UnsupportedRegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class CMatrix {
 public:
  CMatrix() = default;
  /// Zero matrix of the given dimension. Throws SizeError unless dim is a
  /// power of two in [1, 16].
  explicit CMatrix(std::size_t dim);
  /// Row-major construction; the entry count must be a perfect square.
  CMatrix(std::initializer_list<Complex> row_major);

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::span<const double> diag);
  static CMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  std::span<const Complex> data() const { return data_; }

  CMatrix adjoint() const;
  CMatrix conj() const;
  CMatrix transpose() const;
  Complex trace() const;

  /// max |a_ij|
  double max_abs() const;
  /// Largest |a_ij - conj(a_ji)|.
  double hermiticity_error() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend std::vector<Complex> operator*(const CMatrix& a, std::span<const Complex> v);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b; dimensions must match.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

namespace pauli {
CMatrix I();
CMatrix X();
CMatrix Y();
CMatrix Z();
}  // namespace pauli

/// Normalized pure state over 1-4 qubits.
class StateVector {
 public:
  static constexpr double kNormTol = 1e-12;

  /// Throws ArgumentError unless the length is 2^n with n in [1,4] and the
  /// squared norm is 1 within kNormTol.
  explicit StateVector(std::vector<Complex> amps);

  /// Scales a nonzero vector to unit norm before validating.
  static StateVector normalized(std::vector<Complex> amps);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amps() const { return amps_; }
  const Complex& operator[](std::size_t k) const { return amps_[k]; }

 private:
  int n_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// Hermitian, unit-trace, PSD matrix. Construction validates all three.
class DensityMatrix {
 public:
  static constexpr double kHermTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigTol = 1e-9;

  explicit DensityMatrix(CMatrix m);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  const CMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  int n_qubits() const;
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  struct Trusted {};
  DensityMatrix(CMatrix m, Trusted) : m_(std::move(m)) {}
  friend DensityMatrix partial_trace(const DensityMatrix&, std::span<const int>);
  friend DensityMatrix partial_trace(const StateVector&, std::span<const int>);
  friend DensityMatrix trusted_density(CMatrix m);

  CMatrix m_;
};

/// Kronecker product; a supplies the most significant index.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Reduced state on `keep` (qubit 0 = most significant). The kept qubits
/// appear in ascending index order. Throws ArgumentError on an empty, full,
/// duplicated or out-of-range keep set.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep);

/// Wraps a matrix known to be a valid density matrix (e.g. the output of a
/// trace-preserving map) after symmetrizing away rounding in the hermitian
/// part. Checks only trace and hermiticity, not the spectrum.
DensityMatrix trusted_density(CMatrix m);

struct EigenSystem {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column k pairs with values[k]
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
EigenSystem hermitian_eig(const CMatrix& m);

/// Hermitian PSD square root. Eigenvalues in [-1e-9, 0) are clamped to zero;
/// anything lower raises NotPsdError.
CMatrix psd_sqrt(const CMatrix& m);

}  // namespace teleportality
