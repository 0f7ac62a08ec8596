#include "teleportality/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace teleportality {

namespace {

constexpr double kArgmaxTieTol = 1e-14;
constexpr std::array<BellIndex, 4> kBellOrder{BellIndex::PhiPlus, BellIndex::PsiPlus, BellIndex::PsiMinus,
                                              BellIndex::PhiMinus};

// First index (in BellIndex order) whose value is within the tie tolerance
// of the maximum.
std::size_t tie_broken_argmax(const std::array<double, 4>& v) {
  const double best = *std::max_element(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] >= best - kArgmaxTieTol) return i;
  return 0;
}

FidelityResult from_singlet_fraction(const std::array<double, 4>& overlaps) {
  const std::size_t i = tie_broken_argmax(overlaps);
  const double f = (2.0 * overlaps[i] + 1.0) / 3.0;
  return {f, std::max(kClassicalFidelity, f), kBellOrder[i]};
}

double thresholded(double bracket) { return kClassicalFidelity + std::max(0.0, bracket) / 3.0; }

}  // namespace

std::string_view to_string(BellIndex b) {
  switch (b) {
    case BellIndex::PhiPlus: return "PhiPlus";
    case BellIndex::PsiPlus: return "PsiPlus";
    case BellIndex::PsiMinus: return "PsiMinus";
    case BellIndex::PhiMinus: return "PhiMinus";
  }
  return "?";
}

std::array<Complex, 4> bell_state(BellIndex b) {
  const double h = std::numbers::sqrt2 / 2.0;
  switch (b) {
    case BellIndex::PhiPlus: return {h, 0.0, 0.0, h};
    case BellIndex::PsiPlus: return {0.0, h, h, 0.0};
    case BellIndex::PsiMinus: return {0.0, h, -h, 0.0};
    case BellIndex::PhiMinus: return {h, 0.0, 0.0, -h};
  }
  throw ArgumentError("bell_state: invalid index");
}

CMatrix bell_pauli(BellIndex b) {
  switch (b) {
    case BellIndex::PhiPlus: return pauli::I();
    case BellIndex::PsiPlus: return pauli::X();
    case BellIndex::PsiMinus: return pauli::Y();
    case BellIndex::PhiMinus: return pauli::Z();
  }
  throw ArgumentError("bell_pauli: invalid index");
}

std::array<double, 4> bell_overlaps(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw ArgumentError("bell_overlaps: expected a two-qubit density matrix");
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto b = bell_state(kBellOrder[i]);
    Complex s{};
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) s += std::conj(b[r]) * rho(r, c) * b[c];
    out[i] = s.real();
  }
  return out;
}

SingletFraction singlet_fraction(const DensityMatrix& rho) {
  const auto ov = bell_overlaps(rho);
  const std::size_t i = tie_broken_argmax(ov);
  return {ov[i], kBellOrder[i]};
}

FidelityResult f_max_from_rho(const DensityMatrix& rho) { return from_singlet_fraction(bell_overlaps(rho)); }

FidelityResult f_max_kraus(const ResourceParams& rp, const KrausSet& ks) {
  if (ks.dim() != 4) throw ArgumentError("f_max_kraus: Kraus set must act on two qubits");
  const double dev = validate_completeness(ks);
  if (dev > kCompletenessTol) {
    throw ValidationError("f_max_kraus: Kraus set '" + ks.label() + "' is incomplete");
  }
  const auto phi0 = resource_state(rp);
  std::array<double, 4> weights{};
  for (const auto& op : ks.ops()) {
    const auto image = op * phi0.amps();
    for (std::size_t i = 0; i < 4; ++i) {
      const auto b = bell_state(kBellOrder[i]);
      Complex amp{};
      for (std::size_t k = 0; k < 4; ++k) amp += std::conj(b[k]) * image[k];
      weights[i] += std::norm(amp);
    }
  }
  return from_singlet_fraction(weights);
}

double f_nonint(const ResourceParams& rp) {
  rp.validate();
  return kClassicalFidelity + rp.e0() * std::abs(rp.cos_varphi()) / 3.0;
}

std::array<double, 4> gc_branch_fidelities(const ResourceParams& rp, const ChannelParams& ch) {
  rp.validate();
  ch.validate();
  const double coherent = rp.e0() * std::sqrt(1.0 - ch.p) * rp.cos_varphi();
  const double c = std::cos(ch.zeta);
  const double loss = rp.p1() * ch.p * c * c;
  const double psi = kClassicalFidelity - (1.0 - loss) / 3.0;
  return {kClassicalFidelity + (coherent - loss) / 3.0, psi, psi, kClassicalFidelity + (-coherent - loss) / 3.0};
}

double f_gc_closed(const ResourceParams& rp, const ChannelParams& ch) {
  rp.validate();
  ch.validate();
  const double c_ab = rp.e0() * std::sqrt(1.0 - ch.p);
  const double c = std::cos(ch.zeta);
  return thresholded(c_ab * std::abs(rp.cos_varphi()) - rp.p1() * ch.p * c * c);
}

bool threshold_condition_3q(const ResourceParams& rp, const ChannelParams& ch) {
  rp.validate();
  ch.validate();
  const double p1 = rp.p1();
  const double abs_cos = std::abs(rp.cos_varphi());
  // Each degenerate case makes the fidelity bracket <= 0.
  if (ch.p >= 1.0 || p1 <= 0.0 || abs_cos == 0.0) return false;
  const double c = std::cos(ch.zeta);
  const double lhs = 0.5 * (c * c / abs_cos) * (ch.p / std::sqrt(1.0 - ch.p));
  const double rhs = std::sqrt((1.0 - p1) / p1);
  return lhs < rhs;
}

DeltaPair gcgc_deltas(const ChannelParams& ch_a, const ChannelParams& ch_b) {
  ch_a.validate();
  ch_b.validate();
  const double qa = 1.0 - ch_a.p, qb = 1.0 - ch_b.p;
  const double ca = std::cos(ch_a.zeta), cb = std::cos(ch_b.zeta);
  const double local = qb * ch_a.p * ca * ca + qa * ch_b.p * cb * cb;
  const double sm = std::sin(ch_a.zeta - ch_b.zeta);
  const double both = ch_a.p * ch_b.p;
  const double minus = local + both * sm * sm;
  // sin^2(a+b) - sin^2(a-b) = sin 2a sin 2b >= 0, kept explicit so plus >= minus survives rounding.
  return {minus + both * std::sin(2 * ch_a.zeta) * std::sin(2 * ch_b.zeta), minus};
}

std::array<double, 4> gcgc_branch_fidelities(const ResourceParams& rp, const ChannelParams& ch_a,
                                             const ChannelParams& ch_b) {
  rp.validate();
  const auto d = gcgc_deltas(ch_a, ch_b);
  const double p1 = rp.p1();
  const double coherent = rp.e0() * std::sqrt((1.0 - ch_a.p) * (1.0 - ch_b.p)) * rp.cos_varphi();
  return {kClassicalFidelity + (coherent - p1 * d.minus) / 3.0,
          kClassicalFidelity - (1.0 - p1 * d.plus) / 3.0,
          kClassicalFidelity - (1.0 - p1 * d.minus) / 3.0,
          kClassicalFidelity + (-coherent - p1 * d.plus) / 3.0};
}

double f_gcgc_closed(const ResourceParams& rp, const ChannelParams& ch_a, const ChannelParams& ch_b) {
  rp.validate();
  const auto d = gcgc_deltas(ch_a, ch_b);
  const double p1 = rp.p1();
  const double coherent = rp.e0() * std::sqrt((1.0 - ch_a.p) * (1.0 - ch_b.p)) * rp.cos_varphi();
  // Sign rule: the upper branch (Phi+) wins iff
  //   cos(varphi) >= -(1/4) sqrt(P1/(1-P1)) (D+ - D-) / sqrt(qa qb),
  // written here multiplied through so P1 = 1 or qa qb = 0 need no special case.
  const bool upper = 2.0 * coherent >= -p1 * (d.plus - d.minus);
  // The coherent term keeps its sign: with cos(varphi) < 0 on the upper
  // branch it lowers the fidelity rather than contributing |cos(varphi)|.
  return thresholded(upper ? coherent - p1 * d.minus : -coherent - p1 * d.plus);
}

double f_acac_closed(const ResourceParams& rp, double p) {
  rp.validate();
  ChannelParams{0.0, p}.validate();
  if (rp.varphi != 0.0) throw UnsupportedRegimeError("f_acac_closed: requires varphi = 0");
  const double c_ab = std::max(0.0, (1.0 - p) * (rp.e0() - 2.0 * rp.p1() * p));
  return kClassicalFidelity + c_ab / 3.0;
}

bool cond_ft(const ResourceParams& rp, double p) {
  rp.validate();
  ChannelParams{0.0, p}.validate();
  const double p1 = rp.p1();
  if (!(p1 > 0.0)) throw ArgumentError("cond_ft: requires a nonzero |11> population");
  return 1.0 - 0.5 * std::sqrt((1.0 - p1) / p1) <= p + kCondFtTol;
}

MonteCarloEstimate simulate_protocol_mc(const DensityMatrix& resource, BellIndex best, std::size_t samples,
                                        std::uint64_t seed) {
  if (resource.dim() != 4) throw ArgumentError("simulate_protocol_mc: resource must be a two-qubit state");
  if (samples < kMinMonteCarloSamples) {
    throw ArgumentError("simulate_protocol_mc: need at least " + std::to_string(kMinMonteCarloSamples) +
                        " samples, got " + std::to_string(samples));
  }

  // Outcome j leaves Bob with sigma_best sigma_j^* |chi> (up to 1/2), so the
  // correction undoing it is (sigma_best sigma_j^*)^dagger.
  std::array<std::array<Complex, 4>, 4> bells{};
  std::array<CMatrix, 4> corrections{};
  for (std::size_t j = 0; j < 4; ++j) {
    bells[j] = bell_state(kBellOrder[j]);
    corrections[j] = (bell_pauli(best) * bell_pauli(kBellOrder[j]).conj()).adjoint();
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const CMatrix& rho = resource.matrix();

  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    // Uniform on the Bloch sphere: z uniform in [-1, 1], azimuth uniform.
    const double z = 2.0 * unit(rng) - 1.0;
    const double azimuth = 2.0 * std::numbers::pi * unit(rng);
    const std::array<Complex, 2> chi{std::sqrt(0.5 * (1.0 + z)), std::polar(std::sqrt(0.5 * (1.0 - z)), azimuth)};

    double fidelity = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      // w[A] = sum_a conj(Bell_j[a, A]) chi[a]; Bob's unnormalized state is
      // sigma[B, B'] = sum_{A, A'} w[A] conj(w[A']) rho[(A, B), (A', B')].
      std::array<Complex, 2> w{};
      for (std::size_t qa = 0; qa < 2; ++qa)
        for (std::size_t a = 0; a < 2; ++a) w[qa] += std::conj(bells[j][2 * a + qa]) * chi[a];
      Complex bob[2][2]{};
      for (std::size_t qa = 0; qa < 2; ++qa)
        for (std::size_t qa2 = 0; qa2 < 2; ++qa2) {
          const Complex weight = w[qa] * std::conj(w[qa2]);
          for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t b2 = 0; b2 < 2; ++b2) bob[b][b2] += weight * rho(2 * qa + b, 2 * qa2 + b2);
        }
      // <chi| U sigma U^dagger |chi> = <v|sigma|v> with v = U^dagger chi.
      const CMatrix& u = corrections[j];
      std::array<Complex, 2> v{};
      for (std::size_t b = 0; b < 2; ++b) v[b] = std::conj(u(0, b)) * chi[0] + std::conj(u(1, b)) * chi[1];
      Complex f{};
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t b2 = 0; b2 < 2; ++b2) f += std::conj(v[b]) * bob[b][b2] * v[b2];
      fidelity += f.real();
    }
    sum += fidelity;
    sum_sq += fidelity * fidelity;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), samples, seed};
}

MonteCarloEstimate simulate_protocol_mc(const ResourceParams& rp, const KrausSet& ks, BellIndex best,
                                        std::size_t samples, std::uint64_t seed) {
  const auto rho = apply_channel(DensityMatrix::from_pure(resource_state(rp)), ks);
  return simulate_protocol_mc(rho, best, samples, seed);
}

}  // namespace teleportality
