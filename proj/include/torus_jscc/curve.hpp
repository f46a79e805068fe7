#pragma once

#include <cstdint>
#include <optional>

#include "torus_jscc/lattice.hpp"
#include "torus_jscc/torus.hpp"

namespace torus_jscc {

/// Closed curve x -> Phi_c(2 pi u_hat x), x in [0, 1], on a flat torus,
/// where u is a primitive integer winding vector and u_hat = (c_i u_i).
///
/// Construction computes the line spacing r_c(u) (shortest vector of the
/// projection lattice) and the small-ball bounds of that spacing. Both
/// bounds must be certifiable, so a spacing above c_min is rejected with
/// ErrorKind::OutOfRange.
class CurveSpec {
 public:
  CurveSpec(TorusSpec torus, IntVec u);

  const TorusSpec& torus() const noexcept { return torus_; }
  const IntVec& u() const noexcept { return u_; }
  const Vec& u_hat() const noexcept { return u_hat_; }
  int dim() const noexcept { return torus_.dim(); }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return spacing_; }
  double ball_lower() const noexcept { return ball_lower_; }
  double ball_upper() const noexcept { return ball_upper_; }
  std::int64_t l1_norm() const;

 private:
  TorusSpec torus_;
  IntVec u_;
  Vec u_hat_;
  double length_;
  double spacing_;
  double ball_lower_;
  double ball_upper_;
};

Vec curve_point(const CurveSpec& cs, double x);

/// r_c(u): minimum distance between distinct lines u_hat x + n C.
double line_spacing(const TorusSpec& torus, const IntVec& u);

/// Small-ball radius bounds 2 c_min sin(pi r / (2 c_min)) and 2 sin(pi r / 2).
/// Valid only for 0 <= r <= c_min; anything else is ErrorKind::OutOfRange.
DistanceBounds small_ball_bounds(const TorusSpec& torus, double r);

/// Smallest line spacing whose certified lower bound reaches delta, i.e. the
/// inverse of the lower small-ball bound. Empty when delta > 2 c_min.
std::optional<double> spacing_for_ball_radius(const TorusSpec& torus, double delta);

/// Exact small-ball radius of a curve on a 2-torus: the chord from the curve
/// to the flat midpoint between adjacent folds.
double exact_small_ball_2d(const TorusSpec& torus, const IntVec& u);

/// Target lattice for the lifting construction, given by a lower-triangular
/// generator of its dual with positive diagonal.
class TargetLattice {
 public:
  explicit TargetLattice(Mat dual_generator);

  /// A2 with dual generator [[1, 0], [1/2, sqrt(3)/2]].
  static TargetLattice hexagonal();
  /// Densest known lattice in dimensions 1..5 (Z, A2, D3, D4, D5).
  static TargetLattice best_known(int dim);

  const Mat& dual_generator() const noexcept { return dual_generator_; }
  int dim() const noexcept { return static_cast<int>(dual_generator_.rows()); }

 private:
  Mat dual_generator_;
};

/// The (N-1) x N matrix of floored dual generators for scale w. Requires
/// c_1 = 1 and w >= 1.
LatticeBasis lifting_dual_basis(const TargetLattice& target, const Vec& c, std::int64_t w);

/// Integer entries of lifting_dual_basis written as rows n with dual rows
/// (n_j / c_j). Exposed for tests and diagnostics.
IntMat lifting_integer_rows(const TargetLattice& target, const Vec& c, std::int64_t w);

/// The winding vector whose projection lattice has lifting_dual_basis as
/// dual basis. First coordinate is 1.
IntVec lifting_winding(const TargetLattice& target, const Vec& c, std::int64_t w);

struct LiftingChoice {
  std::int64_t w;
  CurveSpec curve;
};

/// Largest w <= w_max (geometric scan, then linear refinement above the best
/// grid point) whose lifted curve on `torus` has line spacing >= r_min and
/// certifiable small-ball bounds. The torus is rescaled so c_1 = 1.
std::optional<LiftingChoice> search_best_w(const TargetLattice& target, const TorusSpec& torus,
                                           double r_min, std::int64_t w_max = 10000);

}  // namespace torus_jscc
