#include "teleportality/channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace teleportality {

void ChannelParams::validate() const {
  constexpr double kSlack = 1e-12;
  if (!(zeta >= -kSlack && zeta <= std::numbers::pi / 2 + kSlack)) {
    throw ArgumentError("channel zeta " + std::to_string(zeta) + " outside [0, pi/2]");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("channel p " + std::to_string(p) + " outside [0, 1]");
  }
}

KrausSet::KrausSet(std::vector<CMatrix> ops, std::string label)
    : ops_(std::move(ops)), label_(std::move(label)) {
  if (ops_.empty()) throw ArgumentError("KrausSet: no operators");
  for (const auto& k : ops_) {
    if (k.dim() != ops_.front().dim()) throw ArgumentError("KrausSet: operators differ in shape");
  }
}

KrausSet gc_kraus(const ChannelParams& params) {
  params.validate();
  const double sp = std::sqrt(params.p);
  CMatrix k0{1.0, 0.0, 0.0, std::sqrt(1.0 - params.p)};
  CMatrix k1{0.0, sp * std::cos(params.zeta), 0.0, sp * std::sin(params.zeta)};
  std::ostringstream label;
  label.precision(12);
  label << "gc(zeta=" << params.zeta << ",p=" << params.p << ")";
  return KrausSet({std::move(k0), std::move(k1)}, label.str());
}

KrausSet identity_channel() { return KrausSet({CMatrix::identity(2)}, "identity"); }

KrausSet tensor_channels(const KrausSet& qa, const KrausSet& kb) {
  if (qa.dim() != 2 || kb.dim() != 2) {
    throw ArgumentError("tensor_channels: both Kraus sets must act on a single qubit");
  }
  std::vector<CMatrix> ops;
  ops.reserve(qa.size() * kb.size());
  for (const auto& q : qa.ops())
    for (const auto& k : kb.ops()) ops.push_back(kron(q, k));
  return KrausSet(std::move(ops), qa.label() + " x " + kb.label());
}

double validate_completeness(const KrausSet& ks) {
  CMatrix sum(ks.dim());
  for (const auto& k : ks.ops()) sum += k.adjoint() * k;
  return max_abs_diff(sum, CMatrix::identity(ks.dim()));
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& ks) {
  if (ks.dim() != rho.dim()) {
    throw ArgumentError("apply_channel: Kraus dimension " + std::to_string(ks.dim()) +
                        " does not match state dimension " + std::to_string(rho.dim()));
  }
  const double dev = validate_completeness(ks);
  if (dev > kCompletenessTol) {
    throw ValidationError("apply_channel: Kraus set '" + ks.label() +
                          "' is incomplete (deviation " + std::to_string(dev) + ")");
  }
  CMatrix out(rho.dim());
  for (const auto& k : ks.ops()) out += k * rho.matrix() * k.adjoint();
  return trusted_density(std::move(out));
}

}  // namespace teleportality
