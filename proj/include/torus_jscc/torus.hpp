#pragma once

#include "torus_jscc/lattice.hpp"

namespace torus_jscc {

/// Flat torus T_c inside the unit sphere S^{2N-1}, given by a unit vector c
/// with strictly positive entries. Box coordinates u live in the hyperbox
/// 0 <= u_i < 2 pi c_i.
class TorusSpec {
 public:
  /// Requires |c| = 1 within 1e-12 and every c_i > 0.
  explicit TorusSpec(Vec c);

  /// Scales c to unit norm before validating.
  static TorusSpec normalized(Vec c);
  /// The central torus c = (1, ..., 1) / sqrt(N).
  static TorusSpec central(int n);

  const Vec& c() const noexcept { return c_; }
  int dim() const noexcept { return static_cast<int>(c_.size()); }
  double c_min() const noexcept { return c_min_; }
  Vec box_periods() const;

 private:
  Vec c_;
  double c_min_;
};

/// Component pairs (c_i cos(u_i / c_i), c_i sin(u_i / c_i)).
Vec phi(const TorusSpec& t, const Vec& u);

/// Componentwise reduction of u into [0, 2 pi c_i).
Vec reduce_to_box(const TorusSpec& t, const Vec& u);

/// Minimum distance between points of two tori: |a.c - b.c|.
double inter_torus_distance(const TorusSpec& a, const TorusSpec& b);

/// Chord distance 2 sqrt(sum c_i^2 sin^2((u_i - v_i) / (2 c_i))).
double intra_torus_distance(const TorusSpec& t, const Vec& u, const Vec& v);

struct DistanceBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Chord-distance bounds for two box points at flat distance delta:
/// lower = sinc(delta / (2 c_min)) delta, upper = sinc(delta / 2) delta.
DistanceBounds distance_bounds(const TorusSpec& t, double delta);

/// sin(x) / x, with a series branch near zero.
double sinc(double x);

}  // namespace torus_jscc
