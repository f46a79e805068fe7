#include "torus_jscc/torus.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace torus_jscc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_dim(const TorusSpec& t, const Vec& u) {
  if (u.size() != t.dim())
    throw Error(ErrorKind::DimensionMismatch, "box vector dimension does not match torus");
}
}  // namespace

TorusSpec::TorusSpec(Vec c) : c_(std::move(c)), c_min_(0.0) {
  if (c_.size() == 0) throw Error(ErrorKind::InvalidArgument, "torus vector is empty");
  if (!c_.allFinite()) throw Error(ErrorKind::InvalidArgument, "torus vector has non-finite entries");
  if ((c_.array() <= 0.0).any())
    throw Error(ErrorKind::InvalidArgument, "torus vector entries must be strictly positive");
  if (std::abs(c_.norm() - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "torus vector must have unit norm");
  c_min_ = c_.minCoeff();
}

TorusSpec TorusSpec::normalized(Vec c) {
  const double n = c.norm();
  if (!(n > 0.0)) throw Error(ErrorKind::InvalidArgument, "torus vector is zero");
  return TorusSpec(c / n);
}

TorusSpec TorusSpec::central(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "torus dimension must be positive");
  return TorusSpec(Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

Vec TorusSpec::box_periods() const { return kTwoPi * c_; }

Vec phi(const TorusSpec& t, const Vec& u) {
  require_same_dim(t, u);
  const Vec& c = t.c();
  Vec out(2 * c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double angle = u(i) / c(i);
    out(2 * i) = c(i) * std::cos(angle);
    out(2 * i + 1) = c(i) * std::sin(angle);
  }
  return out;
}

Vec reduce_to_box(const TorusSpec& t, const Vec& u) {
  require_same_dim(t, u);
  Vec out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double period = kTwoPi * t.c()(i);
    double r = std::fmod(u(i), period);
    if (r < 0.0) r += period;
    if (r >= period) r = 0.0;
    out(i) = r;
  }
  return out;
}

double inter_torus_distance(const TorusSpec& a, const TorusSpec& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "tori differ in dimension");
  return (a.c() - b.c()).norm();
}

double intra_torus_distance(const TorusSpec& t, const Vec& u, const Vec& v) {
  require_same_dim(t, u);
  require_same_dim(t, v);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double ci = t.c()(i);
    const double s = ci * std::sin((u(i) - v(i)) / (2.0 * ci));
    acc += s * s;
  }
  return 2.0 * std::sqrt(acc);
}

double sinc(double x) {
  if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

DistanceBounds distance_bounds(const TorusSpec& t, double delta) {
  if (!(delta >= 0.0)) throw Error(ErrorKind::InvalidArgument, "flat distance must be nonnegative");
  return {sinc(delta / (2.0 * t.c_min())) * delta, sinc(delta / 2.0) * delta};
}

}  // namespace torus_jscc
