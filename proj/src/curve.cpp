#include "torus_jscc/curve.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <utility>

namespace torus_jscc {

namespace {
constexpr double kPi = std::numbers::pi;
}

CurveSpec::CurveSpec(TorusSpec torus, IntVec u)
    : torus_(std::move(torus)), u_(std::move(u)), u_hat_(), length_(0.0), spacing_(0.0),
      ball_lower_(0.0), ball_upper_(0.0) {
  if (static_cast<int>(u_.size()) != torus_.dim())
    throw Error(ErrorKind::DimensionMismatch, "winding vector dimension does not match torus");
  const std::int64_t g = gcd_of(u_);
  if (g == 0) throw Error(ErrorKind::InvalidDirection, "zero winding vector");
  if (g != 1) throw Error(ErrorKind::NotPrimitive, "winding vector is not primitive");
  u_hat_.resize(torus_.dim());
  for (int i = 0; i < torus_.dim(); ++i) u_hat_(i) = torus_.c()(i) * static_cast<double>(u_[i]);
  length_ = 2.0 * kPi * u_hat_.norm();
  spacing_ = line_spacing(torus_, u_);
  const DistanceBounds b = small_ball_bounds(torus_, spacing_);
  ball_lower_ = b.lower;
  ball_upper_ = b.upper;
}

std::int64_t CurveSpec::l1_norm() const {
  std::int64_t s = 0;
  for (auto e : u_) s += std::abs(e);
  return s;
}

Vec curve_point(const CurveSpec& cs, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::OutOfRange, "curve parameter must lie in [0, 1]");
  return phi(cs.torus(), (2.0 * kPi * x) * cs.u_hat());
}

double line_spacing(const TorusSpec& torus, const IntVec& u) {
  return shortest_vector(projection_lattice_basis(torus.c(), u)).norm;
}

DistanceBounds small_ball_bounds(const TorusSpec& torus, double r) {
  const double cm = torus.c_min();
  if (!(r >= 0.0) || r > cm * (1.0 + 1e-12))
    throw Error(ErrorKind::OutOfRange, "line spacing outside the small-ball bound window [0, c_min]");
  return {2.0 * cm * std::sin(kPi * r / (2.0 * cm)), 2.0 * std::sin(kPi * r / 2.0)};
}

std::optional<double> spacing_for_ball_radius(const TorusSpec& torus, double delta) {
  const double cm = torus.c_min();
  if (!(delta >= 0.0) || delta > 2.0 * cm) return std::nullopt;
  return 2.0 * cm / kPi * std::asin(delta / (2.0 * cm));
}

double exact_small_ball_2d(const TorusSpec& torus, const IntVec& u) {
  if (torus.dim() != 2 || u.size() != 2)
    throw Error(ErrorKind::UnsupportedDimension, "exact small-ball radius is defined for N = 2");
  if (gcd_of(u) == 0) throw Error(ErrorKind::InvalidDirection, "zero winding vector");
  if (!is_primitive(u)) throw Error(ErrorKind::NotPrimitive, "winding vector is not primitive");
  const double c1 = torus.c()(0);
  const double c2 = torus.c()(1);
  const double u1 = static_cast<double>(u[0]);
  const double u2 = static_cast<double>(u[1]);
  Vec v(2);
  v << 2.0 * kPi * u1 * c1, 2.0 * kPi * u2 * c2;
  Vec v_perp(2);
  v_perp << -2.0 * kPi * c2 * u2, 2.0 * kPi * c1 * u1;
  // Offset of flat length pi * r_c(u) = half the spacing of the folds, whose
  // box period is 2 pi c_i.
  const double alpha = 2.0 * kPi * kPi * c1 * c2 / v.squaredNorm();
  return intra_torus_distance(torus, alpha * v_perp, Vec::Zero(2));
}

}  // namespace torus_jscc
