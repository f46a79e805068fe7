#include "torus_jscc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

namespace torus_jscc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::DegenerateBasis: return "degenerate-basis";
    case ErrorKind::InvalidDirection: return "invalid-direction";
    case ErrorKind::NotPrimitive: return "not-primitive";
    case ErrorKind::UnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::InfeasibleSeparation: return "infeasible-separation";
    case ErrorKind::GridResolution: return "grid-resolution";
    case ErrorKind::ConstructionViolated: return "construction-violated";
    case ErrorKind::AmbiguousPhase: return "ambiguous-phase";
    case ErrorKind::Undecodable: return "undecodable";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::ConstructionViolated, "integer overflow in lattice arithmetic");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Error(ErrorKind::ConstructionViolated, "integer overflow in lattice arithmetic");
  return r;
}

struct GramSchmidt {
  Mat mu;   // mu(i, j) = <b_i, b*_j> / |b*_j|^2 for j < i
  Vec bsq;  // |b*_i|^2
};

GramSchmidt gram_schmidt(const Mat& b) {
  const int k = static_cast<int>(b.rows());
  GramSchmidt gs{Mat::Zero(k, k), Vec::Zero(k)};
  Mat bstar = b;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < i; ++j) {
      gs.mu(i, j) = b.row(i).dot(bstar.row(j)) / gs.bsq(j);
      bstar.row(i) -= gs.mu(i, j) * bstar.row(j);
    }
    gs.mu(i, i) = 1.0;
    gs.bsq(i) = bstar.row(i).squaredNorm();
  }
  return gs;
}

// Depth-first enumeration of all lattice points with squared norm below a
// shrinking bound; keeps every point tied with the current best.
class Enumerator {
 public:
  Enumerator(const GramSchmidt& gs, double radius2)
      : gs_(gs), k_(static_cast<int>(gs.bsq.size())), bound2_(radius2), x_(k_, 0) {}

  void run() { recurse(k_ - 1, 0.0); }

  double best2() const { return best2_; }
  const std::vector<std::pair<double, IntVec>>& candidates() const { return found_; }

 private:
  void recurse(int level, double partial) {
    double center = 0.0;
    for (int j = level + 1; j < k_; ++j) center -= static_cast<double>(x_[j]) * gs_.mu(j, level);
    const double rem = bound2_ - partial;
    if (rem < 0.0) return;
    const double width = std::sqrt(rem / gs_.bsq(level));
    const auto lo = static_cast<std::int64_t>(std::ceil(center - width));
    const auto hi = static_cast<std::int64_t>(std::floor(center + width));
    for (std::int64_t xi = lo; xi <= hi; ++xi) {
      x_[level] = xi;
      const double diff = static_cast<double>(xi) - center;
      const double p = partial + diff * diff * gs_.bsq(level);
      if (p > bound2_) continue;
      if (level == 0) {
        record(p);
      } else {
        recurse(level - 1, p);
      }
    }
    x_[level] = 0;
  }

  void record(double p) {
    if (std::all_of(x_.begin(), x_.end(), [](std::int64_t v) { return v == 0; })) return;
    if (p < best2_) {
      best2_ = p;
      bound2_ = std::min(bound2_, best2_ * (1.0 + 2e-9));
      std::erase_if(found_, [&](const auto& f) { return f.first > bound2_; });
    }
    found_.emplace_back(p, x_);
  }

  const GramSchmidt& gs_;
  int k_;
  double bound2_;
  double best2_ = std::numeric_limits<double>::infinity();
  IntVec x_;
  std::vector<std::pair<double, IntVec>> found_;
};

IntVec normalize_sign(IntVec v) {
  for (auto e : v) {
    if (e == 0) continue;
    if (e < 0)
      for (auto& f : v) f = -f;
    break;
  }
  return v;
}

}  // namespace

LatticeBasis::LatticeBasis(Mat rows) : rows_(std::move(rows)) {
  if (rows_.rows() == 0 || rows_.cols() == 0)
    throw Error(ErrorKind::DegenerateBasis, "empty lattice basis");
  if (rows_.rows() > rows_.cols())
    throw Error(ErrorKind::DegenerateBasis, "more basis rows than ambient dimension");
  if (!rows_.allFinite()) throw Error(ErrorKind::DegenerateBasis, "non-finite basis entries");
  const Mat g = gram();
  double scale = 1.0;
  for (int i = 0; i < g.rows(); ++i) scale *= g(i, i);
  if (!(scale > 0.0) || !(g.determinant() / scale > 1e-12))
    throw Error(ErrorKind::DegenerateBasis, "basis rows are (numerically) linearly dependent");
}

double LatticeBasis::covolume() const { return std::sqrt(gram().determinant()); }

Mat gram(const LatticeBasis& basis) { return basis.gram(); }

LatticeBasis dual_basis(const LatticeBasis& basis) {
  const Mat g = basis.gram();
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::DegenerateBasis, "Gram matrix is not positive definite");
  return LatticeBasis(llt.solve(basis.rows()));
}

Vec project_orthogonal(const Vec& n, const Vec& u) {
  if (n.size() != u.size()) throw Error(ErrorKind::DimensionMismatch, "projection operands differ in size");
  const double uu = u.squaredNorm();
  if (!(uu > 0.0)) throw Error(ErrorKind::InvalidDirection, "cannot project along the zero vector");
  return n - (n.dot(u) / uu) * u;
}

std::int64_t gcd_of(const IntVec& v) {
  std::int64_t g = 0;
  for (auto e : v) g = std::gcd(g, e < 0 ? -e : e);
  return g;
}

bool is_primitive(const IntVec& v) { return gcd_of(v) == 1; }

IntMat integer_kernel_basis(const IntVec& u) {
  const int n = static_cast<int>(u.size());
  if (n < 2) throw Error(ErrorKind::UnsupportedDimension, "kernel basis needs dimension >= 2");
  if (gcd_of(u) == 0) throw Error(ErrorKind::InvalidDirection, "zero winding vector");
  IntVec v = u;
  IntMat w = IntMat::Identity(n, n);
  // Column operations keep u * w == v, with w unimodular.
  for (int j = 1; j < n; ++j) {
    while (v[j] != 0) {
      const std::int64_t q = v[0] / v[j];
      v[0] = checked_sub(v[0], checked_mul(q, v[j]));
      for (int r = 0; r < n; ++r) w(r, 0) = checked_sub(w(r, 0), checked_mul(q, w(r, j)));
      std::swap(v[0], v[j]);
      w.col(0).swap(w.col(j));
    }
  }
  IntMat k(n - 1, n);
  for (int j = 1; j < n; ++j) k.row(j - 1) = w.col(j).transpose();
  return k;
}

IntMat lll_reduce(IntMat coeffs, const Mat& embedding) {
  const int k = static_cast<int>(coeffs.rows());
  Mat b = coeffs.cast<double>() * embedding;
  constexpr double kDelta = 0.99;
  int i = 1;
  int guard = 0;
  while (i < k) {
    if (++guard > 100000)
      throw Error(ErrorKind::ConstructionViolated, "LLL reduction failed to converge");
    // Size reduction; large multipliers may need several passes in floating point.
    for (int pass = 0; pass < 8; ++pass) {
      bool changed = false;
      for (int j = i - 1; j >= 0; --j) {
        const double m = gram_schmidt(b.topRows(i + 1)).mu(i, j);
        if (std::abs(m) > 0.51) {
          const auto q = static_cast<std::int64_t>(std::llround(m));
          for (int c = 0; c < coeffs.cols(); ++c)
            coeffs(i, c) = checked_sub(coeffs(i, c), checked_mul(q, coeffs(j, c)));
          b.row(i) = coeffs.row(i).cast<double>() * embedding;
          changed = true;
        }
      }
      if (!changed) break;
    }
    const GramSchmidt gs = gram_schmidt(b.topRows(i + 1));
    const double m = gs.mu(i, i - 1);
    if (gs.bsq(i) < (kDelta - m * m) * gs.bsq(i - 1)) {
      coeffs.row(i).swap(coeffs.row(i - 1));
      b.row(i).swap(b.row(i - 1));
      i = std::max(i - 1, 1);
    } else {
      ++i;
    }
  }
  return coeffs;
}

LatticeBasis projection_lattice_basis(const Vec& c, const IntVec& u) {
  const int n = static_cast<int>(c.size());
  if (static_cast<int>(u.size()) != n)
    throw Error(ErrorKind::DimensionMismatch, "torus and winding vector differ in dimension");
  if (n < 2) throw Error(ErrorKind::UnsupportedDimension, "projection needs N >= 2");
  if ((c.array() <= 0.0).any()) throw Error(ErrorKind::InvalidArgument, "torus radii must be positive");
  const std::int64_t g = gcd_of(u);
  if (g == 0) throw Error(ErrorKind::InvalidDirection, "zero winding vector");
  if (g != 1) throw Error(ErrorKind::NotPrimitive, "winding vector is not primitive (gcd " + std::to_string(g) + ")");

  const Mat embedding = c.cwiseInverse().asDiagonal();
  const IntMat kernel = lll_reduce(integer_kernel_basis(u), embedding);
  const Mat dual = kernel.cast<double>() * embedding;
  const Mat g_dual = dual * dual.transpose();
  return LatticeBasis(g_dual.llt().solve(dual));
}

ShortestVectorResult shortest_vector(const LatticeBasis& basis) {
  const int k = basis.rank();
  if (k > kMaxEnumerationRank)
    throw Error(ErrorKind::UnsupportedDimension,
                "shortest_vector supports rank <= " + std::to_string(kMaxEnumerationRank));
  const IntMat transform = lll_reduce(IntMat::Identity(k, k), basis.rows());
  const Mat reduced = transform.cast<double>() * basis.rows();
  const GramSchmidt gs = gram_schmidt(reduced);
  const double radius2 = reduced.rowwise().squaredNorm().minCoeff() * (1.0 + 1e-9);

  Enumerator en(gs, radius2);
  en.run();

  // Map back to input coefficients, recompute exact norms and pick the tie winner.
  std::vector<std::pair<double, IntVec>> mapped;
  for (const auto& [p, x] : en.candidates()) {
    IntVec xin(k, 0);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i) xin[j] += x[i] * transform(i, j);
    xin = normalize_sign(std::move(xin));
    Vec v = Vec::Zero(basis.dim());
    for (int j = 0; j < k; ++j) v += static_cast<double>(xin[j]) * basis.rows().row(j).transpose();
    mapped.emplace_back(v.norm(), std::move(xin));
  }
  if (mapped.empty()) throw Error(ErrorKind::ConstructionViolated, "enumeration found no vector");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& m : mapped) best = std::min(best, m.first);
  const IntVec* winner = nullptr;
  for (const auto& m : mapped) {
    if (m.first > best * (1.0 + 1e-9)) continue;
    if (winner == nullptr || m.second < *winner) winner = &m.second;
  }

  ShortestVectorResult out;
  out.coefficients = *winner;
  out.vector = Vec::Zero(basis.dim());
  for (int j = 0; j < k; ++j)
    out.vector += static_cast<double>(out.coefficients[j]) * basis.rows().row(j).transpose();
  out.norm = out.vector.norm();
  return out;
}

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double packing_density(const LatticeBasis& basis) {
  const int n = basis.rank();
  const double lambda = shortest_vector(basis).norm;
  return unit_ball_volume(n) * std::pow(lambda / 2.0, n) / basis.covolume();
}

}  // namespace torus_jscc
