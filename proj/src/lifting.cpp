#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "torus_jscc/curve.hpp"

namespace torus_jscc {

namespace {

std::int64_t floor_to_int(double v) {
  const double f = std::floor(v);
  if (!(std::abs(f) < 4.0e18))
    throw Error(ErrorKind::ConstructionViolated, "floored lifting entry exceeds integer range");
  return static_cast<std::int64_t>(f);
}

void check_lifting_inputs(const TargetLattice& target, const Vec& c, std::int64_t w) {
  if (c.size() != target.dim() + 1)
    throw Error(ErrorKind::DimensionMismatch, "torus dimension must be target dimension + 1");
  if (w < 1) throw Error(ErrorKind::InvalidArgument, "lifting scale w must be positive");
  if (std::abs(c(0) - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "lifting expects the torus rescaled so that c_1 = 1");
  if ((c.array() <= 0.0).any()) throw Error(ErrorKind::InvalidArgument, "torus radii must be positive");
}

// Generator of D_n: (-1, -1, 0, ...), then e_{i-1} - e_i.
Mat d_n_generator(int n) {
  Mat b = Mat::Zero(n, n);
  b(0, 0) = -1.0;
  b(0, 1) = -1.0;
  for (int i = 1; i < n; ++i) {
    b(i, i - 1) = 1.0;
    b(i, i) = -1.0;
  }
  return b;
}

}  // namespace

TargetLattice::TargetLattice(Mat dual_generator) : dual_generator_(std::move(dual_generator)) {
  const auto n = dual_generator_.rows();
  if (n == 0 || dual_generator_.cols() != n)
    throw Error(ErrorKind::InvalidArgument, "target dual generator must be square and nonempty");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(dual_generator_(i, i) > 0.0))
      throw Error(ErrorKind::InvalidArgument, "target dual generator needs a positive diagonal");
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(dual_generator_(i, j)) > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "target dual generator must be lower triangular");
  }
}

TargetLattice TargetLattice::hexagonal() {
  Mat l(2, 2);
  l << 1.0, 0.0, 0.5, std::numbers::sqrt3 / 2.0;
  return TargetLattice(l);
}

TargetLattice TargetLattice::best_known(int dim) {
  switch (dim) {
    case 1: return TargetLattice(Mat::Ones(1, 1));
    case 2: return hexagonal();
    case 3:
    case 4:
    case 5: {
      const Mat b = d_n_generator(dim);
      const Mat dual_gram = (b * b.transpose()).inverse();
      return TargetLattice(Mat(dual_gram.llt().matrixL()));
    }
    default:
      throw Error(ErrorKind::UnsupportedDimension,
                  "no built-in target lattice in dimension " + std::to_string(dim));
  }
}

IntMat lifting_integer_rows(const TargetLattice& target, const Vec& c, std::int64_t w) {
  check_lifting_inputs(target, c, w);
  const int rows = target.dim();
  const Mat& l = target.dual_generator();
  IntMat a = IntMat::Zero(rows, rows + 1);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j <= i; ++j) a(i, j) = floor_to_int(static_cast<double>(w) * l(i, j) * c(j));
    a(i, i + 1) = 1;
  }
  return a;
}

LatticeBasis lifting_dual_basis(const TargetLattice& target, const Vec& c, std::int64_t w) {
  const IntMat a = lifting_integer_rows(target, c, w);
  Mat rows = a.cast<double>();
  for (Eigen::Index j = 0; j < rows.cols(); ++j) rows.col(j) /= c(j);
  return LatticeBasis(std::move(rows));
}

IntVec lifting_winding(const TargetLattice& target, const Vec& c, std::int64_t w) {
  const IntMat a = lifting_integer_rows(target, c, w);
  const int rows = static_cast<int>(a.rows());
  // Each row i has a unit entry in column i + 1, so row i determines u_{i+1}.
  IntVec u(rows + 1, 0);
  u[0] = 1;
  for (int i = 0; i < rows; ++i) {
    __int128 acc = 0;
    for (int j = 0; j <= i; ++j) acc += static_cast<__int128>(a(i, j)) * u[j];
    if (acc > INT64_MAX || acc < -INT64_MAX)
      throw Error(ErrorKind::ConstructionViolated, "winding entry exceeds integer range");
    u[i + 1] = -static_cast<std::int64_t>(acc);
  }
  for (int i = 0; i < rows; ++i) {
    __int128 dot = 0;
    for (int j = 0; j <= rows; ++j) dot += static_cast<__int128>(a(i, j)) * u[j];
    if (dot != 0)
      throw Error(ErrorKind::ConstructionViolated, "lifted dual row is not orthogonal to the winding vector");
  }
  return u;
}

std::optional<LiftingChoice> search_best_w(const TargetLattice& target, const TorusSpec& torus,
                                           double r_min, std::int64_t w_max) {
  if (target.dim() + 1 != torus.dim())
    throw Error(ErrorKind::DimensionMismatch, "target dimension must be torus dimension - 1");
  if (!(r_min > 0.0)) throw Error(ErrorKind::InvalidArgument, "r_min must be positive");
  if (w_max < 1) throw Error(ErrorKind::InvalidArgument, "w_max must be positive");
  const Vec scaled = torus.c() / torus.c()(0);

  auto evaluate = [&](std::int64_t w) -> std::optional<CurveSpec> {
    try {
      CurveSpec cs(torus, lifting_winding(target, scaled, w));
      if (cs.spacing() >= r_min) return cs;
    } catch (const Error& e) {
      // Spacing outside the certified window, or integers out of range.
      if (e.kind() != ErrorKind::OutOfRange && e.kind() != ErrorKind::ConstructionViolated) throw;
    }
    return std::nullopt;
  };

  std::vector<std::int64_t> grid;
  for (std::int64_t w = 1; w <= w_max; w *= 2) grid.push_back(w);
  if (grid.back() != w_max) grid.push_back(w_max);

  std::optional<std::size_t> best_idx;
  std::optional<CurveSpec> best;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (auto cs = evaluate(grid[i])) {
      best_idx = i;
      best = std::move(cs);
    }
  }
  if (!best_idx) return std::nullopt;

  const std::int64_t lo = grid[*best_idx];
  if (*best_idx + 1 < grid.size()) {
    for (std::int64_t w = grid[*best_idx + 1] - 1; w > lo; --w) {
      if (auto cs = evaluate(w)) return LiftingChoice{w, std::move(*cs)};
    }
  }
  return LiftingChoice{lo, std::move(*best)};
}

}  // namespace torus_jscc
