#include "torus_jscc/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace torus_jscc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void count(OpCounter* ops, std::uint64_t n) {
  if (ops != nullptr) ops->mults += n;
}

double below_one(double x) { return x < 1.0 ? x : std::nextafter(1.0, 0.0); }
}  // namespace

SchemeCode::SchemeCode(std::vector<CurveSpec> curves, double alpha, double delta)
    : curves_(std::move(curves)), total_length_(0.0), alpha_(alpha), delta_(delta), ball_radius_(0.0) {
  if (curves_.empty()) throw Error(ErrorKind::InvalidArgument, "scheme needs at least one curve");
  if (!(alpha_ > 0.0)) throw Error(ErrorKind::InvalidArgument, "power scale alpha must be positive");
  if (!(delta_ > 0.0)) throw Error(ErrorKind::InvalidArgument, "design delta must be positive");
  for (const auto& cs : curves_)
    if (cs.dim() != curves_.front().dim())
      throw Error(ErrorKind::DimensionMismatch, "scheme curves differ in dimension");

  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < curves_.size(); ++i)
    for (std::size_t j = i + 1; j < curves_.size(); ++j)
      sep = std::min(sep, inter_torus_distance(curves_[i].torus(), curves_[j].torus()));
  if (!(sep > 1e-12)) throw Error(ErrorKind::InvalidArgument, "two scheme curves share a torus layer");

  double ball = std::numeric_limits<double>::infinity();
  for (const auto& cs : curves_) {
    lengths_.push_back(cs.length());
    total_length_ += cs.length();
    ball = std::min(ball, cs.ball_lower());
  }
  ball_radius_ = std::min(ball, sep / 2.0);

  double acc = 0.0;
  for (double l : lengths_) {
    acc += l;
    breakpoints_.push_back(acc / total_length_);
  }
  breakpoints_.back() = 1.0;
}

SchemeCode::Local SchemeCode::locate(double x) const {
  if (!(x >= 0.0 && x < 1.0)) throw Error(ErrorKind::OutOfRange, "source value must lie in [0, 1)");
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(it - breakpoints_.begin()),
                                       curves_.size() - 1);
  const double start = interval_start(k);
  const double t = (x - start) / (breakpoints_[k] - start);
  return {k, below_one(std::max(t, 0.0))};
}

double SchemeCode::global(std::size_t k, double t) const {
  const double start = interval_start(k);
  return below_one(start + t * (breakpoints_[k] - start));
}

Vec encode(const SchemeCode& scheme, double x) {
  const auto loc = scheme.locate(x);
  return scheme.alpha() * curve_point(scheme.curves()[loc.curve], loc.t);
}

Polar extract_polar(const Vec& y, OpCounter* ops) {
  if (y.size() == 0 || y.size() % 2 != 0)
    throw Error(ErrorKind::DimensionMismatch, "received vector must have even length");
  const Eigen::Index n = y.size() / 2;
  Polar p{Vec(n), Vec(n), false};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double g = std::hypot(y(2 * i), y(2 * i + 1));
    p.gamma(i) = g;
    if (g == 0.0) {
      p.theta(i) = 0.0;
      p.ambiguous = true;
      continue;
    }
    double angle = std::atan2(y(2 * i + 1), y(2 * i));
    if (angle < 0.0) angle += kTwoPi;
    if (angle >= kTwoPi) angle = 0.0;
    p.theta(i) = angle * g;
  }
  count(ops, 4 * static_cast<std::uint64_t>(n));
  return p;
}

std::size_t nearest_layer(const SchemeCode& scheme, const Vec& gamma, OpCounter* ops) {
  if (gamma.size() != scheme.dim())
    throw Error(ErrorKind::DimensionMismatch, "radius vector dimension does not match scheme");
  const double norm = gamma.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::Undecodable, "zero radius vector has no nearest layer");
  const Vec g = gamma / norm;
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < scheme.size(); ++k) {
    const double d2 = (g - scheme.curves()[k].torus().c()).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = k;
    }
  }
  const auto n = static_cast<std::uint64_t>(gamma.size());
  count(ops, 2 * n + 1 + n * scheme.size());
  return best;
}

Vec project_to_torus(const TorusSpec& layer, const Vec& gamma, const Vec& theta) {
  if (gamma.size() != layer.dim() || theta.size() != layer.dim())
    throw Error(ErrorKind::DimensionMismatch, "polar data dimension does not match torus");
  Vec out(2 * layer.dim());
  for (int i = 0; i < layer.dim(); ++i) {
    const double angle = gamma(i) > 0.0 ? theta(i) / gamma(i) : 0.0;
    out(2 * i) = layer.c()(i) * std::cos(angle);
    out(2 * i + 1) = layer.c()(i) * std::sin(angle);
  }
  return out;
}

double decode_on_torus(const CurveSpec& cs, const Vec& theta_in, OpCounter* ops) {
  const int n = cs.dim();
  if (theta_in.size() != n) throw Error(ErrorKind::DimensionMismatch, "box point dimension does not match curve");
  const Vec theta = reduce_to_box(cs.torus(), theta_in);
  const Vec& c = cs.torus().c();
  const IntVec& u = cs.u();
  const Vec a = kTwoPi * cs.u_hat();
  const double aa = a.squaredNorm();

  // Coordinate i of the curve, taken in the window theta_i +- pi c_i, is
  // 2 pi c_i (u_i t - m_i) with m_i = floor(u_i t - beta_i).
  std::vector<double> period(n), beta(n), next(n);
  std::vector<std::int64_t> m(n);
  Vec b(n);
  const double inf = std::numeric_limits<double>::infinity();
  auto schedule = [&](int i) {
    if (u[i] > 0) {
      next[i] = (static_cast<double>(m[i]) + 1.0 + beta[i]) / static_cast<double>(u[i]);
    } else if (u[i] < 0) {
      next[i] = (static_cast<double>(m[i]) + beta[i]) / static_cast<double>(u[i]);
    } else {
      next[i] = inf;
    }
  };
  for (int i = 0; i < n; ++i) {
    period[i] = kTwoPi * c(i);
    beta[i] = theta(i) / period[i] - 0.5;
    m[i] = static_cast<std::int64_t>(std::floor(-beta[i]));
    b(i) = period[i] * static_cast<double>(m[i]) + theta(i);
    schedule(i);
  }
  count(ops, 4 * static_cast<std::uint64_t>(n) + 1);

  const std::int64_t max_segments = cs.l1_norm() + n + 2;
  double t0 = 0.0;
  double best_d2 = inf;
  double best_t = 0.0;
  std::uint64_t segments = 0;
  std::uint64_t events = 0;
  for (std::int64_t s = 0;; ++s) {
    if (s > max_segments) throw Error(ErrorKind::ConstructionViolated, "face-crossing walk did not terminate");
    int ev = 0;
    for (int i = 1; i < n; ++i)
      if (next[i] < next[ev]) ev = i;
    const double t1 = std::min(next[ev], 1.0);

    const double tp = std::clamp(a.dot(b) / aa, t0, std::max(t0, t1));
    const double d2 = (a * tp - b).squaredNorm();
    ++segments;
    if (d2 < best_d2) {
      best_d2 = d2;
      best_t = tp;
    }
    if (!(next[ev] < 1.0)) break;

    m[ev] += u[ev] > 0 ? 1 : -1;
    b(ev) = period[ev] * static_cast<double>(m[ev]) + theta(ev);
    schedule(ev);
    ++events;
    t0 = t1;
  }
  count(ops, segments * (3 * static_cast<std::uint64_t>(n) + 1) + events * 2);
  if (best_t >= 1.0) best_t -= 1.0;
  return best_t;
}

DecodeResult decode(const SchemeCode& scheme, const Vec& y, OpCounter* ops) {
  if (y.size() != 2 * scheme.dim())
    throw Error(ErrorKind::DimensionMismatch, "received vector dimension does not match scheme");
  if (!y.allFinite()) throw Error(ErrorKind::InvalidArgument, "received vector has non-finite entries");
  const Polar p = extract_polar(y, ops);
  DecodeResult r;
  r.flagged = p.ambiguous;
  if (!(p.gamma.maxCoeff() > 0.0)) {
    r.undecodable = true;
    r.flagged = true;
    return r;
  }
  r.layer = nearest_layer(scheme, p.gamma, ops);
  const CurveSpec& cs = scheme.curves()[r.layer];
  Vec box(scheme.dim());
  for (int i = 0; i < scheme.dim(); ++i)
    box(i) = p.gamma(i) > 0.0 ? p.theta(i) / p.gamma(i) * cs.torus().c()(i) : 0.0;
  count(ops, 2 * static_cast<std::uint64_t>(scheme.dim()));
  r.x = scheme.global(r.layer, decode_on_torus(cs, box, ops));
  count(ops, 1);
  return r;
}

ExhaustiveDecoder::ExhaustiveDecoder(const SchemeCode& scheme, std::size_t grid)
    : scheme_(&scheme), grid_(grid), table_(2 * scheme.dim(), static_cast<Eigen::Index>(grid)) {
  if (grid < 1000) throw Error(ErrorKind::InvalidArgument, "exhaustive decoding needs a grid of at least 1000");
  for (std::size_t j = 0; j < grid; ++j)
    table_.col(static_cast<Eigen::Index>(j)) = encode(scheme, static_cast<double>(j) / static_cast<double>(grid));
}

double ExhaustiveDecoder::operator()(const Vec& y) const {
  if (y.size() != table_.rows())
    throw Error(ErrorKind::DimensionMismatch, "received vector dimension does not match scheme");
  const Eigen::Index rows = table_.rows();
  Eigen::Index best_j = 0;
  double best = std::numeric_limits<double>::infinity();
  const double* col = table_.data();
  for (Eigen::Index j = 0; j < table_.cols(); ++j, col += rows) {
    double d2 = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double d = col[i] - y(i);
      d2 += d * d;
    }
    if (d2 < best) {
      best = d2;
      best_j = j;
    }
  }

  const double h = 1.0 / static_cast<double>(grid_);
  const double x0 = static_cast<double>(best_j) * h;
  auto f = [&](double x) { return (encode(*scheme_, x) - y).squaredNorm(); };
  double lo = std::max(0.0, x0 - h);
  double hi = below_one(std::min(x0 + h, 1.0));
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  const double xr = (f1 < f2) ? x1 : x2;
  return std::min(f1, f2) < best ? xr : x0;
}

double decode_exhaustive(const SchemeCode& scheme, const Vec& y, std::size_t grid) {
  return ExhaustiveDecoder(scheme, grid)(y);
}

}  // namespace torus_jscc
