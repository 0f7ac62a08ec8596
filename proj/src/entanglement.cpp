#include "teleportality/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace teleportality {

namespace {

double clamp_nonnegative(double x, const char* what) {
  if (x < -kNegativeSlack) {
    throw ValidationError(std::string(what) + " evaluated to " + std::to_string(x) + " < 0");
  }
  return std::max(x, 0.0);
}

Complex det2(const CMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

void require_2x2(const CMatrix& k0, const CMatrix& k1, const char* what) {
  if (k0.dim() != 2 || k1.dim() != 2) throw ArgumentError(std::string(what) + ": Kraus pair must be 2x2");
}

double purity(const DensityMatrix& rho) {
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const auto& z : rho.matrix().data()) s += std::norm(z);
  return s;
}

// 2 (1 - Tr rho_cut^2), the squared one-vs-rest concurrence.
double squared_pure_concurrence(const StateVector& psi, std::span<const int> cut) {
  const auto rho = partial_trace(psi, cut);
  return clamp_nonnegative(2.0 * (1.0 - purity(rho)), "squared pure-state concurrence");
}

double squared_concurrence(const DensityMatrix& rho) {
  const double c = concurrence_mixed(rho);
  return c * c;
}

}  // namespace

std::string_view to_string(TwinBranch b) {
  switch (b) {
    case TwinBranch::DcDc: return "DC/DC";
    case TwinBranch::AcAc: return "AC/AC";
    case TwinBranch::Tie: return "tie";
  }
  return "?";
}

std::vector<double> concurrence_spectrum(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw ArgumentError("concurrence: expected a two-qubit density matrix");
  // rho (Y(x)Y) rho* (Y(x)Y) is similar to R = M M^dagger with
  // M = sqrt(rho) (Y(x)Y) sqrt(rho)*, so the square roots of its eigenvalues
  // are the singular values of M. Those are read off the Hermitian dilation
  // [[0, M], [M^dagger, 0]], whose spectrum is {+s_k, -s_k}. Taking roots of
  // the eigenvalues of R directly would amplify rounding near zero.
  const CMatrix yy = kron(pauli::Y(), pauli::Y());
  const CMatrix root = psd_sqrt(rho.matrix());
  const CMatrix m = root * yy * root.conj();
  CMatrix dilation(8);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      dilation(r, c + 4) = m(r, c);
      dilation(c + 4, r) = std::conj(m(r, c));
    }
  const auto eig = hermitian_eig(dilation);
  std::vector<double> s(eig.values.begin(), eig.values.begin() + 4);
  for (auto& x : s) x = std::max(x, 0.0);
  return s;
}

double concurrence_mixed(const DensityMatrix& rho) {
  const auto s = concurrence_spectrum(rho);
  return std::clamp(s[0] - s[1] - s[2] - s[3], 0.0, 1.0);
}

double concurrence_pure(const StateVector& psi, std::span<const int> cut) {
  return std::sqrt(squared_pure_concurrence(psi, cut));
}

double three_tangle_def(const StateVector& psi, int pivot) {
  if (psi.n_qubits() != 3) throw ArgumentError("three_tangle_def: expected a 3-qubit state");
  if (pivot < 0 || pivot > 2) throw ArgumentError("three_tangle_def: pivot must be 0, 1 or 2");
  const int j = (pivot + 1) % 3;
  const int k = (pivot + 2) % 3;
  const std::array<int, 1> one{pivot};
  const std::array<int, 2> ij{std::min(pivot, j), std::max(pivot, j)};
  const std::array<int, 2> ik{std::min(pivot, k), std::max(pivot, k)};
  const double tau = squared_pure_concurrence(psi, one) - squared_concurrence(partial_trace(psi, ij)) -
                     squared_concurrence(partial_trace(psi, ik));
  return clamp_nonnegative(tau, "three_tangle_def");
}

double three_tangle_kraus(double e0, const CMatrix& k0, const CMatrix& k1) {
  require_2x2(k0, k1, "three_tangle_kraus");
  const Complex u = 4.0 * det2(k0 * k1);
  const Complex g = k0.trace() * k1.trace() - (k0 * k1).trace();
  const Complex v = g * g;
  return e0 * e0 * std::abs(u - v);
}

double concurrence_resource_kraus(double e0, const CMatrix& k0, const CMatrix& k1) {
  require_2x2(k0, k1, "concurrence_resource_kraus");
  const Complex u = 4.0 * det2(k0 * k1);
  const Complex g = k0.trace() * k1.trace() - (k0 * k1).trace();
  const Complex v = g * g;
  const double dets = std::abs(det2(k0)) + std::abs(det2(k1));
  const double e2 = e0 * e0;
  const double c2 = e2 * dets * dets - 0.5 * e2 * (std::abs(u) - std::abs(v) + std::abs(v - u));
  return std::sqrt(clamp_nonnegative(c2, "squared resource concurrence"));
}

double four_tangle_def(const StateVector& psi) {
  if (psi.n_qubits() != 4) throw ArgumentError("four_tangle_def: expected a 4-qubit state");
  const CMatrix yy = kron(pauli::Y(), pauli::Y());
  const CMatrix y4 = kron(yy, yy);
  std::vector<Complex> conj_amps(psi.dim());
  for (std::size_t k = 0; k < psi.dim(); ++k) conj_amps[k] = std::conj(psi[k]);
  const auto flipped = y4 * std::span<const Complex>(conj_amps);
  Complex overlap{};
  for (std::size_t k = 0; k < psi.dim(); ++k) overlap += std::conj(psi[k]) * flipped[k];
  return std::norm(overlap);
}

double four_tangle_closed(const ResourceParams& rp, const ChannelParams& ch_a, const ChannelParams& ch_b) {
  rp.validate();
  ch_a.validate();
  ch_b.validate();
  const double qa = 1.0 - ch_a.p, qb = 1.0 - ch_b.p;
  const Complex amplitude =
      rp.e0() * std::sin(ch_a.zeta) * std::sin(ch_b.zeta) +
      4.0 * std::polar(1.0, rp.varphi) * rp.p1() * std::sqrt(qa * qb) * std::cos(ch_a.zeta) * std::cos(ch_b.zeta);
  return ch_a.p * ch_b.p * std::norm(amplitude);
}

FourTangleMax four_tangle_max(const ResourceParams& rp, double p) {
  rp.validate();
  ChannelParams{0.0, p}.validate();
  if (rp.varphi != 0.0) {
    throw UnsupportedRegimeError("four_tangle_max: closed-form maximum requires varphi = 0");
  }
  const double e0 = rp.e0();
  const double p1 = rp.p1();
  const double dc = e0 * e0 * p * p;
  const double ac = 16.0 * p1 * p1 * p * p * (1.0 - p) * (1.0 - p);
  const double gap = e0 - 4.0 * p1 * (1.0 - p);
  if (std::abs(gap) <= kBranchTieTol) return {std::max(dc, ac), TwinBranch::Tie};
  return gap > 0.0 ? FourTangleMax{dc, TwinBranch::DcDc} : FourTangleMax{ac, TwinBranch::AcAc};
}

}  // namespace teleportality
