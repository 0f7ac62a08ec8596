#pragma once

// Maximal average teleportation fidelity. Every quantity is reachable by
// more than one route so the routes can check each other:
//   - from the resource density matrix (singlet fraction),
//   - from the Kraus operators acting on the pure initial resource,
//   - from closed forms for one or two generalized channels,
//   - from a Monte-Carlo run of the protocol itself.

#include <array>
#include <cstdint>
#include <string_view>

#include "teleportality/channels.hpp"
#include "teleportality/linalg.hpp"
#include "teleportality/states.hpp"

namespace teleportality {

/// Bell state (I (x) sigma_i)|Phi+>; the enumerator order is also the
/// tie-break order of the singlet-fraction argmax.
enum class BellIndex : int { PhiPlus = 0, PsiPlus = 1, PsiMinus = 2, PhiMinus = 3 };

std::string_view to_string(BellIndex b);

/// Amplitudes of the Bell state, normalized.
std::array<Complex, 4> bell_state(BellIndex b);

/// Bob's Pauli sigma^(i) for the Bell index (I, X, Y, Z).
CMatrix bell_pauli(BellIndex b);

inline constexpr double kClassicalFidelity = 2.0 / 3.0;

struct SingletFraction {
  double value = 0.0;
  BellIndex best = BellIndex::PhiPlus;
};

struct FidelityResult {
  double f_max = 0.0;          // (2 F + 1) / 3
  double f_thresholded = 0.0;  // max{2/3, f_max}
  BellIndex best_bell = BellIndex::PhiPlus;
};

/// Overlaps <Phi_i|rho|Phi_i> in BellIndex order.
std::array<double, 4> bell_overlaps(const DensityMatrix& rho);

SingletFraction singlet_fraction(const DensityMatrix& rho);

FidelityResult f_max_from_rho(const DensityMatrix& rho);

/// F = 1/3 + 2/3 max_i sum_mu |<Phi_i|Pi_mu|phi0>|^2 for a two-qubit Kraus set.
FidelityResult f_max_kraus(const ResourceParams& rp, const KrausSet& ks);

/// No channel: 2/3 + e0 |cos varphi| / 3.
double f_nonint(const ResourceParams& rp);

/// Branch fidelities F_{Phi+}, F_{Psi+}, F_{Psi-}, F_{Phi-} (BellIndex order)
/// for I (x) GC(ch).
std::array<double, 4> gc_branch_fidelities(const ResourceParams& rp, const ChannelParams& ch);

/// Thresholded fidelity for I (x) GC(ch).
double f_gc_closed(const ResourceParams& rp, const ChannelParams& ch);

/// True iff the thresholded GC fidelity strictly exceeds 2/3, evaluated
/// through the population form of the condition. Degenerate inputs
/// (p = 1, P1 = 0, cos varphi = 0) are false.
bool threshold_condition_3q(const ResourceParams& rp, const ChannelParams& ch);

struct DeltaPair {
  double plus = 0.0;
  double minus = 0.0;
};

/// Fidelity-loss weights for GC(a) (x) GC(b); plus >= minus on the domain.
DeltaPair gcgc_deltas(const ChannelParams& ch_a, const ChannelParams& ch_b);

/// Branch fidelities for GC(a) (x) GC(b), BellIndex order.
std::array<double, 4> gcgc_branch_fidelities(const ResourceParams& rp, const ChannelParams& ch_a,
                                             const ChannelParams& ch_b);

/// Thresholded fidelity for GC(a) (x) GC(b), general p_a, p_b, varphi.
double f_gcgc_closed(const ResourceParams& rp, const ChannelParams& ch_a, const ChannelParams& ch_b);

/// Two parallel amplitude-damping channels with equal p (varphi = 0 only).
double f_acac_closed(const ResourceParams& rp, double p);

/// Whether the dephasing pair is the 4-tangle maximizer for equal p. Ties
/// within kCondFtTol count as satisfied. Requires P1 > 0.
inline constexpr double kCondFtTol = 1e-12;
bool cond_ft(const ResourceParams& rp, double p);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kMinMonteCarloSamples = 1000;

/// Runs the teleportation protocol on Bloch-uniform random input states:
/// Bell measurement on (input, A), Pauli correction on B chosen from the
/// outcome and the strategy `best`, fidelity with the input weighted by the
/// outcome probabilities. `ks` acts on the two resource qubits.
MonteCarloEstimate simulate_protocol_mc(const ResourceParams& rp, const KrausSet& ks, BellIndex best,
                                        std::size_t samples, std::uint64_t seed);

/// Same protocol on an explicit resource state.
MonteCarloEstimate simulate_protocol_mc(const DensityMatrix& resource, BellIndex best,
                                        std::size_t samples, std::uint64_t seed);

}  // namespace teleportality
