#include "hopfduet/states.hpp"

#include <cmath>
#include <numbers>

#include "hopfduet/errors.hpp"

namespace hopfduet {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSingularGuard = 1e-9;
}  // namespace

double wrap_angle(double phi) {
  if (phi >= 0.0 && phi < kTwoPi) return phi;  // keep exact representatives
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

bool near_singular(double s, double d) {
  return s - std::abs(d) < kSingularGuard * std::max(1.0, s);
}

PolarState to_polar(const CartesianState& z) {
  const double r1 = std::abs(z.z1);
  const double r2 = std::abs(z.z2);
  if (near_singular(r1 + r2, r1 - r2)) {
    throw SingularChartError("to_polar: amplitude too small for the polar chart");
  }
  return {r1, r2, wrap_angle(std::arg(z.z1)), wrap_angle(std::arg(z.z2))};
}

CartesianState to_cartesian(const PolarState& p) {
  if (p.r1 < 0.0 || p.r2 < 0.0) throw DomainError("to_cartesian: negative radius");
  return {std::polar(p.r1, p.phi1), std::polar(p.r2, p.phi2)};
}

ReducedState polar_to_reduced(const PolarState& p) {
  if (p.r1 < 0.0 || p.r2 < 0.0) throw DomainError("polar_to_reduced: negative radius");
  return {p.r1 + p.r2, p.r1 - p.r2, wrap_angle(p.phi2 - p.phi1)};
}

PolarPair reduced_to_polar(const ReducedState& r) {
  if (std::abs(r.d) > r.s) {
    throw DomainError("reduced_to_polar: |d| > s has no polar preimage");
  }
  return {0.5 * (r.s + r.d), 0.5 * (r.s - r.d), wrap_angle(r.dphi)};
}

}  // namespace hopfduet
