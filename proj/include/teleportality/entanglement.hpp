#pragma once

// Bipartite and multipartite entanglement measures, each available both
// from its definition and from the closed forms for the generalized channel.

#include <optional>
#include <span>
#include <string_view>

#include "teleportality/channels.hpp"
#include "teleportality/linalg.hpp"
#include "teleportality/states.hpp"

namespace teleportality {

/// Values that are provably nonnegative may come out as -1e-16 from
/// rounding; anything below -kNegativeSlack is reported as an error.
inline constexpr double kNegativeSlack = 1e-12;

struct TangleReport {
  double c_ab = 0.0;
  std::optional<double> tau3;
  std::optional<double> tau4;
};

/// Wootters concurrence of a two-qubit state.
double concurrence_mixed(const DensityMatrix& rho);

/// Square roots of the eigenvalues of rho (Y(x)Y) rho* (Y(x)Y), descending.
std::vector<double> concurrence_spectrum(const DensityMatrix& rho);

/// sqrt(2 (1 - Tr rho_cut^2)) for the reduced state on `cut`.
double concurrence_pure(const StateVector& psi, std::span<const int> cut);

/// C^2_{i|jk} - C^2_{ij} - C^2_{ik} with pivot qubit i (default A = 0).
double three_tangle_def(const StateVector& psi, int pivot = 0);

/// e0^2 |u - v| with u = 4 det(K0 K1), v = g(K0, K1)^2 and
/// g(M, N) = Tr M Tr N - Tr(MN).
double three_tangle_kraus(double e0, const CMatrix& k0, const CMatrix& k1);

/// Resource concurrence after I (x) Lambda_B, from the Kraus pair alone.
double concurrence_resource_kraus(double e0, const CMatrix& k0, const CMatrix& k1);

/// |<psi| Y(x)Y(x)Y(x)Y |psi*>|^2
double four_tangle_def(const StateVector& psi);

/// Closed-form 4-tangle of the state produced by two generalized channels.
double four_tangle_closed(const ResourceParams& rp, const ChannelParams& ch_a, const ChannelParams& ch_b);

enum class TwinBranch { DcDc, AcAc, Tie };

std::string_view to_string(TwinBranch b);

struct FourTangleMax {
  double value = 0.0;
  TwinBranch branch = TwinBranch::Tie;
};

/// Tolerance for declaring e0 == 4 P1 (1 - p) a tie between both maxima.
inline constexpr double kBranchTieTol = 1e-12;

/// Maximum of the 4-tangle over all channel pairs with equal p. Only
/// defined for varphi = 0; other phases raise UnsupportedRegimeError.
FourTangleMax four_tangle_max(const ResourceParams& rp, double p);

}  // namespace teleportality
