#include <doctest.h>

#include "support.hpp"
#include "teleportality/entanglement.hpp"
#include "teleportality/fidelity.hpp"

using namespace testing;

namespace {

// Exact protocol average over the six Pauli eigenstates (a spherical
// 3-design, so the quadratic fidelity integrand is averaged exactly).
// For each Bell outcome the Pauli correction is chosen to maximize the
// average; corrections never depend on the input.
double protocol_oracle(const DensityMatrix& resource) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  const std::array<std::array<Complex, 2>, 6> inputs{
      {{1, 0}, {0, 1}, {r, r}, {r, -r}, {r, r * i}, {r, -r * i}}};
  const std::array<std::array<Complex, 4>, 4> bells{
      {{r, 0, 0, r}, {r, 0, 0, -r}, {0, r, r, 0}, {0, r, -r, 0}}};
  const std::array<CMatrix, 4> paulis{pauli::I(), pauli::X(), pauli::Y(), pauli::Z()};

  double total = 0.0;
  for (const auto& bell : bells) {
    // Bob's unnormalized state after projecting (input, A) onto `bell`:
    // out = sum_{a,a2} w_a rho_{(a b),(a2 b2)} conj(w_a2), w_a = sum_x conj(bell[2x+a]) chi[x].
    std::array<CMatrix, 6> bob;
    for (std::size_t n = 0; n < inputs.size(); ++n) {
      const auto& chi = inputs[n];
      CMatrix out(2);
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t b2 = 0; b2 < 2; ++b2) {
          Complex s = 0.0;
          for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t a2 = 0; a2 < 2; ++a2) {
              Complex wa = 0.0, wa2 = 0.0;
              for (std::size_t x = 0; x < 2; ++x) {
                wa += std::conj(bell[2 * x + a]) * chi[x];
                wa2 += std::conj(bell[2 * x + a2]) * chi[x];
              }
              s += wa * resource(2 * a + b, 2 * a2 + b2) * std::conj(wa2);
            }
          out(b, b2) = s;
        }
      bob[n] = out;
    }
    double best = 0.0;
    for (const auto& u : paulis) {
      double avg = 0.0;
      for (std::size_t n = 0; n < inputs.size(); ++n) {
        const CMatrix rho_b = u * bob[n] * u.adjoint();
        const auto& chi = inputs[n];
        Complex f = 0.0;
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b) f += std::conj(chi[a]) * rho_b(a, b) * chi[b];
        avg += f.real() / inputs.size();
      }
      best = std::max(best, avg);
    }
    total += best;
  }
  return total;
}

KrausSet local_b(const ChannelParams& ch) { return tensor_channels(identity_channel(), gc_kraus(ch)); }

DensityMatrix evolved(const ResourceParams& rp, const KrausSet& ks) {
  return apply_channel(DensityMatrix::from_pure(resource_state(rp)), ks);
}

}  // namespace

TEST_CASE("Bell states are orthonormal and built from the Pauli set") {
  const std::array all{BellIndex::PhiPlus, BellIndex::PsiPlus, BellIndex::PsiMinus, BellIndex::PhiMinus};
  const auto phi_plus = bell_state(BellIndex::PhiPlus);
  for (auto a : all) {
    const auto built = kron(pauli::I(), bell_pauli(a)) * std::span<const Complex>(phi_plus);
    const auto sa = bell_state(a);
    Complex overlap_built = 0.0;
    for (std::size_t k = 0; k < 4; ++k) overlap_built += std::conj(sa[k]) * built[k];
    CHECK(std::abs(std::abs(overlap_built) - 1.0) <= 1e-15);
    for (auto b : all) {
      const auto sb = bell_state(b);
      Complex ip = 0.0;
      for (std::size_t k = 0; k < 4; ++k) ip += std::conj(sa[k]) * sb[k];
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) <= 1e-15);
    }
  }
  CHECK(to_string(BellIndex::PsiMinus) == "PsiMinus");
}

TEST_CASE("singlet fraction examples") {
  const auto bell = DensityMatrix::from_pure(resource_state({kPi / 4, 0.0}));
  const auto sf = singlet_fraction(bell);
  CHECK(sf.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sf.best == BellIndex::PhiPlus);

  const auto mixed = singlet_fraction(DensityMatrix::maximally_mixed(2));
  CHECK(mixed.value == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(mixed.best == BellIndex::PhiPlus);

  const auto t1 = reduced_resource(evolve_3q({kPi / 4, 0.0}, {kPi / 2, 0.8}));
  CHECK(std::abs((2 * singlet_fraction(t1).value + 1) / 3 - 0.815738) <= 1e-6);
}

TEST_CASE("f_max_from_rho examples") {
  CHECK(f_max_from_rho(DensityMatrix::from_pure(resource_state({kPi / 4, 0.0}))).f_max == doctest::Approx(1.0));
  const auto mixed = f_max_from_rho(DensityMatrix::maximally_mixed(2));
  CHECK(mixed.f_max == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mixed.f_thresholded == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const auto t1 = reduced_resource(evolve_3q({kPi / 4, 0.0}, {kPi / 6, 0.8}));
  CHECK(std::abs(f_max_from_rho(t1).f_thresholded - 0.715738) <= 1e-6);
}

TEST_CASE("f_max_kraus examples") {
  const auto id = tensor_channels(identity_channel(), identity_channel());
  CHECK(f_max_kraus({kPi / 4, 0.0}, id).f_max == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f_max_kraus({kPi / 4, kPi / 2}, id).f_thresholded == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(f_max_kraus({kPi / 4, 0.0}, local_b({0.0, 0.8})).f_thresholded - 0.682405) <= 1e-6);
  const auto ks = local_b({0.3, 0.4});
  const KrausSet bad({ks.ops()[0] * 1.1, ks.ops()[1]}, "scaled");
  CHECK_THROWS_AS(f_max_kraus({0.3, 0.0}, bad), ValidationError);
  CHECK_THROWS_AS(f_max_kraus({0.3, 0.0}, gc_kraus({0.3, 0.4})), ArgumentError);
}

TEST_CASE("fidelity without a channel") {
  CHECK(f_nonint({kPi / 4, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
  for (double phi : {0.1, 0.7, 1.3}) {
    CHECK(f_nonint({phi, kPi / 2}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(f_nonint({phi, -kPi / 2}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  }
  const double expected = 2.0 / 3.0 + std::sin(kPi / 3) / 3.0;
  CHECK(f_nonint({kPi / 6, 0.0}) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(std::abs(expected - 0.955342) <= 1e-6);
  const auto id = tensor_channels(identity_channel(), identity_channel());
  CHECK(f_max_kraus({kPi / 6, 0.0}, id).f_thresholded == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("single-channel closed form on its edges") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto rp = random_resource(rng);
    const double p = uniform(rng, 0, 1);
    const double f_dc = 2.0 / 3.0 + rp.e0() * std::sqrt(1 - p) * std::abs(std::cos(rp.varphi)) / 3.0;
    CHECK(std::abs(f_gc_closed(rp, {kPi / 2, p}) - f_dc) <= 1e-14);
    CHECK(std::abs(f_gc_closed(rp, {0.0, p}) - std::max(2.0 / 3.0, f_dc - rp.p1() * p / 3.0)) <= 1e-14);
  }
  CHECK(std::abs(f_gc_closed({kPi / 4, 0.0}, {kPi / 3, 0.8}) - 0.782405) <= 1e-6);
}

TEST_CASE("four routes agree on random single-channel draws") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto rp = random_resource(rng);
    const auto ch = random_channel(rng);
    const auto ks = local_b(ch);
    const auto rho = evolved(rp, ks);
    const auto from_rho = f_max_from_rho(rho);
    const auto kraus = f_max_kraus(rp, ks);
    CHECK(std::abs(f_gc_closed(rp, ch) - kraus.f_thresholded) <= 1e-10);
    CHECK(std::abs(from_rho.f_thresholded - kraus.f_thresholded) <= 1e-10);
    CHECK(std::abs(from_rho.f_max - protocol_oracle(rho)) <= 1e-12);
    const auto mc = simulate_protocol_mc(rp, ks, kraus.best_bell, 20000, 1000 + i);
    CHECK(std::abs(mc.mean - kraus.f_max) <= 3 * mc.std_err);
  }
}

TEST_CASE("four routes agree on random two-channel draws") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto rp = random_resource(rng);
    const auto a = random_channel(rng), b = random_channel(rng);
    const auto ks = tensor_channels(gc_kraus(a), gc_kraus(b));
    const auto rho = evolved(rp, ks);
    const auto kraus = f_max_kraus(rp, ks);
    CHECK(std::abs(f_gcgc_closed(rp, a, b) - kraus.f_thresholded) <= 1e-10);
    CHECK(std::abs(f_max_from_rho(rho).f_thresholded - kraus.f_thresholded) <= 1e-10);
    CHECK(std::abs(kraus.f_max - protocol_oracle(rho)) <= 1e-12);
    const auto mc = simulate_protocol_mc(rho, kraus.best_bell, 20000, 5000 + i);
    CHECK(std::abs(mc.mean - kraus.f_max) <= 3 * mc.std_err);
  }
}

TEST_CASE("branch fidelities match the Bell overlaps") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto rp = random_resource(rng);
    const auto a = random_channel(rng), b = random_channel(rng);
    const auto ov1 = bell_overlaps(evolved(rp, local_b(b)));
    const auto br1 = gc_branch_fidelities(rp, b);
    const auto ov2 = bell_overlaps(evolved(rp, tensor_channels(gc_kraus(a), gc_kraus(b))));
    const auto br2 = gcgc_branch_fidelities(rp, a, b);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(std::abs(br1[k] - (2 * ov1[k] + 1) / 3) <= 1e-12);
      CHECK(std::abs(br2[k] - (2 * ov2[k] + 1) / 3) <= 1e-12);
    }
  }
}

TEST_CASE("odd-parity Bell branches never beat the classical limit") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto rp = random_resource(rng);
    const auto ch = random_channel(rng);
    const auto br = gc_branch_fidelities(rp, ch);
    CHECK(br[static_cast<int>(BellIndex::PsiPlus)] <= 2.0 / 3.0 + 1e-15);
    CHECK(br[static_cast<int>(BellIndex::PsiMinus)] <= 2.0 / 3.0 + 1e-15);
    const auto res = f_max_from_rho(evolved(rp, local_b(ch)));
    if (res.f_max > 2.0 / 3.0 + 1e-12) {
      CHECK(res.best_bell != BellIndex::PsiPlus);
      CHECK(res.best_bell != BellIndex::PsiMinus);
    }
  }
}

TEST_CASE("damping <= generalized <= dephasing on a 50x20 grid") {
  for (double phi : {0.2, kPi / 6, kPi / 4, kPi / 3, 1.4}) {
    for (double varphi : {0.0, 0.6}) {
      const ResourceParams rp{phi, varphi};
      for (int j = 0; j < 20; ++j) {
        const double p = j / 19.0;
        const double lo = f_gc_closed(rp, {0.0, p}), hi = f_gc_closed(rp, {kPi / 2, p});
        for (int i = 0; i < 50; ++i) {
          const double f = f_gc_closed(rp, {kPi / 2 * i / 49, p});
          CHECK(lo <= f + 1e-15);
          CHECK(f <= hi + 1e-15);
        }
      }
    }
  }
}

TEST_CASE("fidelity does not increase with p") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const auto rp = random_resource(rng);
    const ResourceParams rp0{rp.phi, 0.0};
    const double za = uniform(rng, 0, kPi / 2), zb = uniform(rng, 0, kPi / 2);
    double prev1 = 2.0, prev2 = 2.0;
    for (int j = 0; j <= 100; ++j) {
      const double p = j / 100.0;
      const double f1 = f_gc_closed(rp, {zb, p});
      const double f2 = f_gcgc_closed(rp0, {za, p}, {zb, p});
      CHECK(f1 <= prev1 + 1e-15);
      CHECK(f2 <= prev2 + 1e-15);
      prev1 = f1;
      prev2 = f2;
    }
  }
}

TEST_CASE("zero phase is optimal for equal p") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto rp = random_resource(rng);
    const double p = uniform(rng, 0, 1);
    const ChannelParams a{uniform(rng, 0, kPi / 2), p}, b{uniform(rng, 0, kPi / 2), p};
    CHECK(f_gcgc_closed(rp, a, b) <= f_gcgc_closed({rp.phi, 0.0}, a, b) + 1e-15);
  }
}

TEST_CASE("delta ordering") {
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j)
      for (double p : {0.1, 0.5, 0.9}) {
        const auto d = gcgc_deltas({kPi / 2 * i / 49, p}, {kPi / 2 * j / 49, p});
        CHECK(d.plus >= d.minus);
      }
}

TEST_CASE("two-channel closed form examples") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const ResourceParams rp{uniform(rng, 0, kPi / 2), 0.0};
    const double p = uniform(rng, 0, 1);
    const double f_dcdc = 2.0 / 3.0 + rp.e0() * (1 - p) / 3.0;
    CHECK(std::abs(f_gcgc_closed(rp, {kPi / 2, p}, {kPi / 2, p}) - f_dcdc) <= 1e-14);
    CHECK(std::abs(f_gcgc_closed(rp, {0.0, p}, {kPi / 2, p}) - std::max(2.0 / 3.0, f_dcdc - rp.p1() * p / 3.0)) <= 1e-14);
  }
  CHECK(std::abs(f_gcgc_closed({kPi / 4, 0.0}, {kPi * 42 / 125, 0.5}, {kPi * 281 / 1000, 0.5}) - 0.805185) <= 5e-7);
}

TEST_CASE("parallel damping channels") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const ResourceParams rp{uniform(rng, 0, kPi / 2), 0.0};
    CHECK(std::abs(f_acac_closed(rp, 0.0) - f_nonint(rp)) <= 1e-15);
    CHECK(f_acac_closed(rp, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    const double p = uniform(rng, 0, 1);
    const auto ks = tensor_channels(gc_kraus({0.0, p}), gc_kraus({0.0, p}));
    CHECK(std::abs(f_acac_closed(rp, p) - f_max_kraus(rp, ks).f_thresholded) <= 1e-12);
  }
  CHECK(f_acac_closed({kPi / 4, 0.0}, 0.5) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK_THROWS_AS(f_acac_closed({kPi / 4, 0.2}, 0.5), UnsupportedRegimeError);
}

TEST_CASE("threshold condition") {
  SUBCASE("dephasing always beats the classical limit for p in (0,1)") {
    for (double phi : {0.1, kPi / 4, 1.5})
      for (double p : {0.01, 0.5, 0.99}) CHECK(threshold_condition_3q({phi, 0.0}, {kPi / 2, p}));
  }
  SUBCASE("larger population crosses earlier at equal initial entanglement") {
    auto crossing = [](double phi) {
      for (int j = 0; j <= 10000; ++j)
        if (!threshold_condition_3q({phi, 0.0}, {0.0, j / 10000.0})) return j / 10000.0;
      return 2.0;
    };
    CHECK(std::abs(std::sin(2 * kPi / 3) - std::sin(2 * kPi / 6)) <= 1e-15);
    CHECK(crossing(kPi / 3) < crossing(kPi / 6));
  }
  SUBCASE("degenerate inputs") {
    CHECK_FALSE(threshold_condition_3q({0.6, 0.0}, {0.3, 1.0}));
    CHECK_FALSE(threshold_condition_3q({0.0, 0.0}, {0.3, 0.5}));
    CHECK_FALSE(threshold_condition_3q({0.6, kPi / 2}, {kPi / 2, 0.5}));
  }
  SUBCASE("agrees with the closed form on a 50x50x20 grid, including phases") {
    int disagreements = 0;
    for (double varphi : {0.0, 0.9, 2.5, kPi, kPi / 2, -kPi / 2, 3 * kPi / 2}) {
      for (int k = 0; k < 20; ++k) {
        const ResourceParams rp{kPi / 2 * k / 19, varphi};
        for (int i = 0; i < 50; ++i)
          for (int j = 0; j < 50; ++j) {
            const ChannelParams ch{kPi / 2 * i / 49, j / 49.0};
            if (threshold_condition_3q(rp, ch) != (f_gc_closed(rp, ch) > 2.0 / 3.0)) ++disagreements;
          }
      }
    }
    CHECK(disagreements == 0);
  }
}

TEST_CASE("dephasing-pair condition for the four-tangle maximum") {
  const double phi_02 = std::asin(std::sqrt(0.2));
  for (int j = 0; j <= 20; ++j) CHECK(cond_ft({phi_02, 0.0}, j / 20.0));
  CHECK_FALSE(cond_ft({kPi / 3, 0.0}, 0.25));
  CHECK_THROWS_AS(cond_ft({0.0, 0.0}, 0.5), ArgumentError);
  for (int k = 1; k <= 20; ++k) {
    const ResourceParams rp{kPi / 2 * k / 20, 0.0};
    for (int j = 0; j <= 40; ++j) {
      const double p = j / 40.0;
      const auto m = four_tangle_max(rp, p);
      CHECK(cond_ft(rp, p) == (m.branch != TwinBranch::AcAc));
    }
  }
}

TEST_CASE("Monte-Carlo protocol examples") {
  const auto id = tensor_channels(identity_channel(), identity_channel());
  const auto bell = simulate_protocol_mc({kPi / 4, 0.0}, id, BellIndex::PhiPlus, 1000, 1);
  CHECK(bell.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bell.std_err <= 1e-12);

  for (auto best : {BellIndex::PhiPlus, BellIndex::PsiMinus}) {
    const auto mixed = simulate_protocol_mc(DensityMatrix::maximally_mixed(2), best, 100000, 2);
    CHECK(std::abs(mixed.mean - 0.5) <= 3 * mixed.std_err);
  }

  const ResourceParams rp{kPi / 4, 0.0};
  const auto ks = local_b({kPi / 2, 0.8});
  const auto t1 = simulate_protocol_mc(rp, ks, BellIndex::PhiPlus, 100000, 3);
  CHECK(std::abs(t1.mean - 0.815738) <= 3 * t1.std_err);
  CHECK(t1.samples == 100000);
  CHECK(t1.seed == 3);

  const auto again = simulate_protocol_mc(rp, ks, BellIndex::PhiPlus, 100000, 3);
  CHECK(again.mean == t1.mean);
  CHECK(again.std_err == t1.std_err);

  CHECK_THROWS_AS(simulate_protocol_mc(rp, ks, BellIndex::PhiPlus, 999, 3), ArgumentError);
}
