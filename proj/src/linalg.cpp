#include "teleportality/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace teleportality {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim || !std::has_single_bit(dim)) {
    throw SizeError("matrix dimension " + std::to_string(dim) +
                    " is not a power of two in [1, 16]");
  }
}

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw ArgumentError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                        " vs " + std::to_string(b.dim()) + ")");
  }
}

int qubits_for_dim(std::size_t dim) { return std::countr_zero(dim); }

// Sorted, validated copy of a keep set.
std::vector<int> normalize_keep(std::span<const int> keep, int n_qubits) {
  std::vector<int> k(keep.begin(), keep.end());
  std::sort(k.begin(), k.end());
  if (k.empty() || static_cast<int>(k.size()) >= n_qubits) {
    throw ArgumentError("partial_trace: keep set must be a nonempty strict subset of the qubits");
  }
  if (std::adjacent_find(k.begin(), k.end()) != k.end()) {
    throw ArgumentError("partial_trace: duplicated qubit index in keep set");
  }
  if (k.front() < 0 || k.back() >= n_qubits) {
    throw ArgumentError("partial_trace: qubit index out of range");
  }
  return k;
}

// Splits a full basis index into (kept index, traced index), both in
// most-significant-first order of their own qubits.
struct IndexSplit {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
};

IndexSplit split_indices(const std::vector<int>& keep, int n) {
  std::vector<bool> is_kept(n, false);
  for (int q : keep) is_kept[q] = true;
  const std::size_t full = std::size_t{1} << n;
  IndexSplit s{std::vector<std::size_t>(full), std::vector<std::size_t>(full)};
  for (std::size_t idx = 0; idx < full; ++idx) {
    std::size_t kk = 0, tt = 0;
    for (int q = 0; q < n; ++q) {
      const std::size_t bit = (idx >> (n - 1 - q)) & 1u;
      if (is_kept[q]) {
        kk = (kk << 1) | bit;
      } else {
        tt = (tt << 1) | bit;
      }
    }
    s.kept[idx] = kk;
    s.traced[idx] = tt;
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// CMatrix

CMatrix::CMatrix(std::size_t dim) : dim_(dim) {
  check_dim(dim);
  data_.assign(dim * dim, Complex{});
}

CMatrix::CMatrix(std::initializer_list<Complex> row_major) {
  const auto n = static_cast<std::size_t>(std::lround(std::sqrt(double(row_major.size()))));
  if (n * n != row_major.size()) {
    throw SizeError("CMatrix: entry count " + std::to_string(row_major.size()) +
                    " is not a perfect square");
  }
  check_dim(n);
  dim_ = n;
  data_.assign(row_major.begin(), row_major.end());
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
  if (ket.size() != bra.size()) throw ArgumentError("outer: length mismatch");
  CMatrix m(ket.size());
  for (std::size_t r = 0; r < ket.size(); ++r) {
    for (std::size_t c = 0; c < bra.size(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

CMatrix CMatrix::conj() const {
  CMatrix m = *this;
  for (auto& z : m.data_) z = std::conj(z);
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

Complex CMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double CMatrix::hermiticity_error() const {
  double e = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      e = std::max(e, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return e;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_dim(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_dim(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "operator*");
  const std::size_t n = a.dim();
  CMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  }
  return m;
}

std::vector<Complex> operator*(const CMatrix& a, std::span<const Complex> v) {
  if (v.size() != a.dim()) throw ArgumentError("matrix-vector product: length mismatch");
  std::vector<Complex> out(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    Complex s{};
    for (std::size_t c = 0; c < a.dim(); ++c) s += a(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

namespace pauli {
CMatrix I() { return CMatrix::identity(2); }
CMatrix X() { return {0.0, 1.0, 1.0, 0.0}; }
CMatrix Y() { return {0.0, Complex(0, -1), Complex(0, 1), 0.0}; }
CMatrix Z() { return {1.0, 0.0, 0.0, -1.0}; }
}  // namespace pauli

// ---------------------------------------------------------------------------
// StateVector / DensityMatrix

StateVector::StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
  const std::size_t n = amps_.size();
  if (n < 2 || n > kMaxDim || !std::has_single_bit(n)) {
    throw ArgumentError("StateVector: length " + std::to_string(n) + " is not 2^n for n in [1,4]");
  }
  n_qubits_ = qubits_for_dim(n);
  double norm2 = 0.0;
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw ArgumentError("StateVector: non-finite amplitude");
    norm2 += std::norm(a);
  }
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw ArgumentError("StateVector: squared norm " + std::to_string(norm2) + " differs from 1");
  }
}

StateVector StateVector::normalized(std::vector<Complex> amps) {
  double norm2 = 0.0;
  for (const auto& a : amps) norm2 += std::norm(a);
  if (!(norm2 > 0.0)) throw ArgumentError("StateVector: cannot normalize a zero vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= inv;
  return StateVector(std::move(amps));
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.dim() < 2) throw ArgumentError("DensityMatrix: needs at least one qubit");
  if (m_.hermiticity_error() > kHermTol) throw ValidationError("DensityMatrix: not Hermitian");
  if (std::abs(m_.trace() - 1.0) > kTraceTol) throw ValidationError("DensityMatrix: trace is not 1");
  const auto eig = hermitian_eig(m_);
  if (eig.values.back() < -kEigTol) {
    throw NotPsdError("DensityMatrix: negative eigenvalue " + std::to_string(eig.values.back()));
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(CMatrix::outer(psi.amps(), psi.amps()), Trusted{});
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw SizeError("maximally_mixed: bad qubit count");
  const std::size_t d = std::size_t{1} << n_qubits;
  return DensityMatrix(CMatrix::identity(d) * Complex(1.0 / double(d)), Trusted{});
}

int DensityMatrix::n_qubits() const { return qubits_for_dim(m_.dim()); }

DensityMatrix trusted_density(CMatrix m) {
  if (m.hermiticity_error() > DensityMatrix::kHermTol)
    throw ValidationError("density matrix: not Hermitian");
  if (std::abs(m.trace() - 1.0) > DensityMatrix::kTraceTol)
    throw ValidationError("density matrix: trace is not 1");
  CMatrix h = (m + m.adjoint()) * Complex(0.5);
  return DensityMatrix(std::move(h), DensityMatrix::Trusted{});
}

// ---------------------------------------------------------------------------
// kron / partial trace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t n = a.dim() * b.dim();
  if (n > kMaxDim) {
    throw SizeError("kron: product dimension " + std::to_string(n) + " exceeds 16");
  }
  CMatrix m(n);
  for (std::size_t ar = 0; ar < a.dim(); ++ar)
    for (std::size_t ac = 0; ac < a.dim(); ++ac)
      for (std::size_t br = 0; br < b.dim(); ++br)
        for (std::size_t bc = 0; bc < b.dim(); ++bc)
          m(ar * b.dim() + br, ac * b.dim() + bc) = a(ar, ac) * b(br, bc);
  return m;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.n_qubits();
  const auto k = normalize_keep(keep, n);
  const auto split = split_indices(k, n);
  const std::size_t full = rho.dim();
  CMatrix out(std::size_t{1} << k.size());
  for (std::size_t r = 0; r < full; ++r) {
    for (std::size_t c = 0; c < full; ++c) {
      if (split.traced[r] != split.traced[c]) continue;
      out(split.kept[r], split.kept[c]) += rho(r, c);
    }
  }
  return DensityMatrix(std::move(out), DensityMatrix::Trusted{});
}

DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep) {
  const int n = psi.n_qubits();
  const auto k = normalize_keep(keep, n);
  const auto split = split_indices(k, n);
  // Reshape psi into (kept x traced) and form M M^dagger.
  const std::size_t dk = std::size_t{1} << k.size();
  const std::size_t dt = psi.dim() / dk;
  std::vector<Complex> mat(dk * dt);
  for (std::size_t idx = 0; idx < psi.dim(); ++idx) mat[split.kept[idx] * dt + split.traced[idx]] = psi[idx];
  CMatrix out(dk);
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      Complex s{};
      for (std::size_t t = 0; t < dt; ++t) s += mat[r * dt + t] * std::conj(mat[c * dt + t]);
      out(r, c) = s;
    }
  return DensityMatrix(std::move(out), DensityMatrix::Trusted{});
}

// ---------------------------------------------------------------------------
// Eigensolver

EigenSystem hermitian_eig(const CMatrix& m) {
  constexpr double kOffTol = 1e-13;
  constexpr int kMaxSweeps = 100;

  if (m.hermiticity_error() > 1e-10) throw ValidationError("hermitian_eig: matrix is not Hermitian");
  const std::size_t n = m.dim();
  CMatrix a = (m + m.adjoint()) * Complex(0.5);
  CMatrix v = CMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < kMaxSweeps && off_norm() >= kOffTol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;  // e^{i theta}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Plane rotation J = [[c, s e^{i theta}], [-s e^{-i theta}, c]]; A <- J^dagger A J.
        const Complex sp = s * phase;
        const Complex sm = s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sm * akq;
          a(k, q) = sp * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = sm * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sm * vkq;
          v(k, q) = sp * vkp + c * vkq;
        }
      }
    }
  }
  if (off_norm() >= kOffTol) throw ValidationError("hermitian_eig: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  EigenSystem out{std::vector<double>(n), CMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

CMatrix psd_sqrt(const CMatrix& m) {
  constexpr double kNegTol = 1e-9;
  const auto eig = hermitian_eig(m);
  const std::size_t n = m.dim();
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (lam < -kNegTol) throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(lam) + " < -1e-9");
    roots[k] = lam > 0.0 ? std::sqrt(lam) : 0.0;
  }
  CMatrix s(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k)
        acc += eig.vectors(r, k) * roots[k] * std::conj(eig.vectors(c, k));
      s(r, c) = acc;
    }
  return s;
}

}  // namespace teleportality
