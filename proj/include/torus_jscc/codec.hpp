#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "torus_jscc/curve.hpp"

namespace torus_jscc {

/// Counts scalar multiplications and divisions on the decode path.
struct OpCounter {
  std::uint64_t mults = 0;
};

/// The encoder over a set of closed curves, one per torus layer.
///
/// [0, 1) is split into half-open intervals I_k with lengths proportional
/// to the curve lengths; x in I_k maps to curve k at local parameter f_k(x).
/// The transmitted point is scaled by alpha.
class SchemeCode {
 public:
  SchemeCode(std::vector<CurveSpec> curves, double alpha, double delta);

  const std::vector<CurveSpec>& curves() const noexcept { return curves_; }
  const std::vector<double>& lengths() const noexcept { return lengths_; }
  /// Cumulative sums sum_{j<=k} l_j / L; the last entry is 1.
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  double total_length() const noexcept { return total_length_; }
  double alpha() const noexcept { return alpha_; }
  /// Design target delta supplied at construction.
  double delta() const noexcept { return delta_; }
  /// Certified small-ball radius: min of the curves' lower bounds and half
  /// the smallest layer separation.
  double ball_radius() const noexcept { return ball_radius_; }
  int dim() const noexcept { return curves_.front().dim(); }
  std::size_t size() const noexcept { return curves_.size(); }

  /// Left endpoint of I_k.
  double interval_start(std::size_t k) const { return k == 0 ? 0.0 : breakpoints_[k - 1]; }

  struct Local {
    std::size_t curve;
    double t;
  };
  /// (k, f_k(x)) for x in [0, 1).
  Local locate(double x) const;
  /// Inverse of locate.
  double global(std::size_t k, double t) const;

 private:
  std::vector<CurveSpec> curves_;
  std::vector<double> lengths_;
  std::vector<double> breakpoints_;
  double total_length_;
  double alpha_;
  double delta_;
  double ball_radius_;
};

Vec encode(const SchemeCode& scheme, double x);

struct Polar {
  Vec gamma;
  Vec theta;  // angle in [0, 2 pi) times gamma_i
  bool ambiguous = false;  // some gamma_i == 0; its theta_i was set to 0
};

/// Per-pair radius and full-angle phase of a point in R^{2N}.
Polar extract_polar(const Vec& y, OpCounter* ops = nullptr);

/// Index of the layer whose c is closest to gamma / |gamma|; ties go to the
/// smallest index. Throws Undecodable for a zero gamma.
std::size_t nearest_layer(const SchemeCode& scheme, const Vec& gamma, OpCounter* ops = nullptr);

/// The closest point of the unit-sphere torus T_c to a point with the given
/// polar data.
Vec project_to_torus(const TorusSpec& layer, const Vec& gamma, const Vec& theta);

/// Local parameter of the curve point nearest to theta in the flat torus
/// metric. theta holds box coordinates of the curve's torus.
///
/// Walks the face crossings of the box centred on theta, so that every
/// segment is compared to theta in its minimal-image position; each segment
/// is scored by a closed-form projection. Cost is O(N (|u|_1 + 1)).
double decode_on_torus(const CurveSpec& cs, const Vec& theta, OpCounter* ops = nullptr);

struct DecodeResult {
  double x = 0.0;
  std::size_t layer = 0;
  bool flagged = false;       // some phase was ambiguous
  bool undecodable = false;   // y had no usable radius at all
};

DecodeResult decode(const SchemeCode& scheme, const Vec& y, OpCounter* ops = nullptr);

/// Maximum-likelihood decoding by exhaustive search on a uniform x-grid
/// followed by a golden-section refinement around the best grid point.
class ExhaustiveDecoder {
 public:
  ExhaustiveDecoder(const SchemeCode& scheme, std::size_t grid);
  double operator()(const Vec& y) const;

 private:
  const SchemeCode* scheme_;
  std::size_t grid_;
  Mat table_;  // (2N) x grid, column j = encode(j / grid)
};

double decode_exhaustive(const SchemeCode& scheme, const Vec& y, std::size_t grid);

}  // namespace torus_jscc
