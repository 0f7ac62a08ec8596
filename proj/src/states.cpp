#include "teleportality/states.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace teleportality {

namespace {
constexpr double kAngleSlack = 1e-12;
constexpr double kPi = std::numbers::pi;
}  // namespace

void ResourceParams::validate() const {
  if (!(phi >= -kAngleSlack && phi <= kPi / 2 + kAngleSlack)) {
    throw ArgumentError("resource phi " + std::to_string(phi) + " outside [0, pi/2]");
  }
  if (!(varphi >= -kPi / 2 - kAngleSlack && varphi <= 3 * kPi / 2 + kAngleSlack)) {
    throw ArgumentError("resource varphi " + std::to_string(varphi) + " outside [-pi/2, 3pi/2]");
  }
}

double ResourceParams::e0() const { return std::sin(2.0 * phi); }

double ResourceParams::cos_varphi() const {
  const double c = std::cos(varphi);
  return std::abs(c) < kPhaseZeroTol ? 0.0 : c;
}

double ResourceParams::p1() const {
  const double s = std::sin(phi);
  return s * s;
}

StateVector resource_state(const ResourceParams& rp) {
  rp.validate();
  const Complex excited = std::polar(std::sin(rp.phi), rp.varphi);
  return StateVector({std::cos(rp.phi), 0.0, 0.0, excited});
}

StateVector evolve_3q(const ResourceParams& rp, const ChannelParams& ch) {
  rp.validate();
  ch.validate();
  const Complex s = std::polar(std::sin(rp.phi), rp.varphi);
  const double sp = std::sqrt(ch.p);
  std::vector<Complex> amps(8);
  amps[0b000] = std::cos(rp.phi);
  amps[0b110] = s * std::sqrt(1.0 - ch.p);
  amps[0b101] = s * sp * std::cos(ch.zeta);
  amps[0b111] = s * sp * std::sin(ch.zeta);
  return StateVector::normalized(std::move(amps));
}

StateVector evolve_4q(const ResourceParams& rp, const ChannelParams& ch_a, const ChannelParams& ch_b) {
  rp.validate();
  ch_a.validate();
  ch_b.validate();
  const Complex s = std::polar(std::sin(rp.phi), rp.varphi);
  const double qa = 1.0 - ch_a.p, qb = 1.0 - ch_b.p;
  const double ca = std::cos(ch_a.zeta), sa = std::sin(ch_a.zeta);
  const double cb = std::cos(ch_b.zeta), sb = std::sin(ch_b.zeta);

  // Bits, most significant first: A B E_A E_B.
  std::vector<Complex> amps(16);
  amps[0b0000] = std::cos(rp.phi);
  amps[0b1100] = s * std::sqrt(qa * qb);
  // Only B flipped its environment.
  const Complex only_b = s * std::sqrt(qa * ch_b.p);
  amps[0b1001] = only_b * cb;
  amps[0b1101] = only_b * sb;
  // Only A flipped its environment.
  const Complex only_a = s * std::sqrt(ch_a.p * qb);
  amps[0b0110] = only_a * ca;
  amps[0b1110] = only_a * sa;
  // Both environments flipped.
  const Complex both = s * std::sqrt(ch_a.p * ch_b.p);
  amps[0b0011] = both * ca * cb;
  amps[0b0111] = both * ca * sb;
  amps[0b1011] = both * sa * cb;
  amps[0b1111] = both * sa * sb;
  return StateVector::normalized(std::move(amps));
}

DensityMatrix reduced_resource(const StateVector& global) {
  if (global.n_qubits() != 3 && global.n_qubits() != 4) {
    throw ArgumentError("reduced_resource: expected a 3- or 4-qubit state, got " +
                        std::to_string(global.n_qubits()));
  }
  constexpr std::array<int, 2> kAB{0, 1};
  return partial_trace(global, kAB);
}

}  // namespace teleportality
