#pragma once

#include "teleportality/channels.hpp"
#include "teleportality/linalg.hpp"

namespace teleportality {

inline constexpr double kPhaseZeroTol = 1e-15;

/// Initial resource cos(phi)|00> + e^{i varphi} sin(phi)|11>.
struct ResourceParams {
  double phi = 0.0;     // [0, pi/2]
  double varphi = 0.0;  // [-pi/2, 3pi/2]

  void validate() const;

  /// Initial entanglement, sin(2 phi).
  double e0() const;
  /// Initial population of |11>, sin^2(phi).
  double p1() const;
  /// cos(varphi), exactly zero at +-pi/2 and 3pi/2 where the rounded
  /// literals would otherwise leave a residue of order 1e-16.
  double cos_varphi() const;
};

StateVector resource_state(const ResourceParams& rp);

/// Qubit B coupled to its environment E_B through the generalized channel.
/// Qubit order: A, B, E_B.
StateVector evolve_3q(const ResourceParams& rp, const ChannelParams& ch);

/// Both resource qubits coupled to their own environments.
/// Qubit order: A, B, E_A, E_B.
StateVector evolve_4q(const ResourceParams& rp, const ChannelParams& ch_a, const ChannelParams& ch_b);

/// Traces the environment qubits out of a 3- or 4-qubit global state whose
/// leading two qubits are A and B.
DensityMatrix reduced_resource(const StateVector& global);

}  // namespace teleportality
