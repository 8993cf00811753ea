#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "leggett/rng.hpp"

namespace leggett {

/// A point on the unit sphere S². Settings a, b and hidden vectors u, v
/// are all of this type; the unit-norm invariant holds for every instance.
class UnitVector3 {
 public:
  /// The north pole (0, 0, 1).
  UnitVector3() = default;

  /// Normalizes (x, y, z). Throws std::invalid_argument for a zero or
  /// non-finite input.
  static UnitVector3 normalized(double x, double y, double z);

  /// Keeps (x, y, z) bit-for-bit when its norm is within 1e-12 of one, so
  /// serialized vectors load back unchanged; otherwise behaves like normalized().
  static UnitVector3 from_components(double x, double y, double z);

  /// Polar angle `theta` from +z and azimuth `phi`; any real angles.
  static UnitVector3 from_spherical(double theta, double phi);

  /// Unit vector in the xy-plane at azimuth `phi`.
  static UnitVector3 planar(double phi);

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  std::array<double, 3> components() const { return {x_, y_, z_}; }

  UnitVector3 operator-() const { return UnitVector3(-x_, -y_, -z_); }

  friend bool operator==(const UnitVector3&, const UnitVector3&) = default;

 private:
  UnitVector3(double x, double y, double z) : x_(x), y_(y), z_(z) {}

  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 1.0;
};

/// Inner product clamped to [-1, 1].
double dot(const UnitVector3& a, const UnitVector3& b);

/// Uniform on S² (normalized Gaussian triple, norms below 1e-8 rejected).
UnitVector3 random_unit_vector(RngStream& rng);

/// Fibonacci lattice with n points: z_k = 1 - 2(k + 1/2)/n and azimuth
/// 2πk times the golden-ratio conjugate. Throws std::invalid_argument for n = 0.
std::vector<UnitVector3> sphere_grid(std::size_t n);

/// Proper rotation of R³, stored as a row-major 3x3 matrix.
class Rotation3 {
 public:
  Rotation3() = default;

  /// Right-handed rotation by `angle` radians about `axis`.
  static Rotation3 about_axis(const UnitVector3& axis, double angle);

  /// Rotation about a uniformly drawn axis by a uniform angle in [0, 2π).
  static Rotation3 random(RngStream& rng);

  UnitVector3 apply(const UnitVector3& v) const;

 private:
  std::array<double, 9> m_{1, 0, 0, 0, 1, 0, 0, 0, 1};
};

}  // namespace leggett
