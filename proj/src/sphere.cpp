#include "leggett/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leggett {

UnitVector3 UnitVector3::normalized(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(norm) || norm == 0.0) {
    throw std::invalid_argument("UnitVector3: cannot normalize a zero or non-finite vector");
  }
  return UnitVector3(x / norm, y / norm, z / norm);
}

UnitVector3 UnitVector3::from_components(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (std::isfinite(norm) && std::abs(norm - 1.0) <= 1e-12) return UnitVector3(x, y, z);
  return normalized(x, y, z);
}

UnitVector3 UnitVector3::from_spherical(double theta, double phi) {
  const double s = std::sin(theta);
  return normalized(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
}

UnitVector3 UnitVector3::planar(double phi) { return normalized(std::cos(phi), std::sin(phi), 0.0); }

double dot(const UnitVector3& a, const UnitVector3& b) {
  const double d = a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
  return std::clamp(d, -1.0, 1.0);
}

UnitVector3 random_unit_vector(RngStream& rng) {
  for (;;) {
    const double x = rng.standard_normal();
    const double y = rng.standard_normal();
    const double z = rng.standard_normal();
    if (std::sqrt(x * x + y * y + z * z) >= 1e-8) return UnitVector3::normalized(x, y, z);
  }
}

std::vector<UnitVector3> sphere_grid(std::size_t n) {
  if (n == 0) throw std::invalid_argument("sphere_grid: n must be positive");
  const double golden_conjugate = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<UnitVector3> points;
  points.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    // Only the fractional part of k*g matters; reducing it first keeps the
    // angle accurate for large k.
    double turns = static_cast<double>(k) * golden_conjugate;
    turns -= std::floor(turns);
    const double azimuth = 2.0 * std::numbers::pi * turns;
    points.push_back(UnitVector3::normalized(r * std::cos(azimuth), r * std::sin(azimuth), z));
  }
  return points;
}

Rotation3 Rotation3::about_axis(const UnitVector3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  const double x = axis.x(), y = axis.y(), z = axis.z();
  Rotation3 r;
  r.m_ = {t * x * x + c,     t * x * y - s * z, t * x * z + s * y,
          t * x * y + s * z, t * y * y + c,     t * y * z - s * x,
          t * x * z - s * y, t * y * z + s * x, t * z * z + c};
  return r;
}

Rotation3 Rotation3::random(RngStream& rng) {
  const UnitVector3 axis = random_unit_vector(rng);
  return about_axis(axis, 2.0 * std::numbers::pi * rng.uniform01());
}

UnitVector3 Rotation3::apply(const UnitVector3& v) const {
  return UnitVector3::normalized(m_[0] * v.x() + m_[1] * v.y() + m_[2] * v.z(),
                                 m_[3] * v.x() + m_[4] * v.y() + m_[5] * v.z(),
                                 m_[6] * v.x() + m_[7] * v.y() + m_[8] * v.z());
}

}  // namespace leggett
