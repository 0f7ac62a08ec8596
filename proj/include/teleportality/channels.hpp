#pragma once

#include <string>
#include <vector>

#include "teleportality/linalg.hpp"

namespace teleportality {

/// Selects one generalized channel (zeta) and its evolution stage (p).
/// zeta = 0 is amplitude damping, zeta = pi/2 is dephasing.
struct ChannelParams {
  double zeta = 0.0;  // radians, [0, pi/2]
  double p = 0.0;     // [0, 1]

  /// Throws ArgumentError when either field is out of range.
  void validate() const;
};

class KrausSet {
 public:
  KrausSet(std::vector<CMatrix> ops, std::string label);

  const std::vector<CMatrix>& ops() const { return ops_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return ops_.size(); }
  std::size_t dim() const { return ops_.front().dim(); }

 private:
  std::vector<CMatrix> ops_;
  std::string label_;
};

inline constexpr double kCompletenessTol = 1e-10;

/// K0 = diag(1, sqrt(1-p)), K1 = sqrt(p) [[0, cos zeta], [0, sin zeta]].
KrausSet gc_kraus(const ChannelParams& params);

KrausSet identity_channel();

/// All products Q_a (x) K_b, with qa on the more significant qubit.
KrausSet tensor_channels(const KrausSet& qa, const KrausSet& kb);

/// max |sum_k K_k^dagger K_k - I|
double validate_completeness(const KrausSet& ks);

/// sum_mu Pi_mu rho Pi_mu^dagger. Throws ValidationError when the set is not
/// complete within kCompletenessTol, ArgumentError on a dimension mismatch.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& ks);

}  // namespace teleportality
