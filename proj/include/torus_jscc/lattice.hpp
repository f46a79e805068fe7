#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "torus_jscc/errors.hpp"

namespace torus_jscc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IntVec = std::vector<std::int64_t>;
using IntMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Exhaustive enumeration is only attempted up to this rank.
inline constexpr int kMaxEnumerationRank = 8;

/// A lattice given by linearly independent generator rows in R^d.
///
/// Rows are fixed at construction; construction fails with
/// ErrorKind::DegenerateBasis when the Gram determinant, relative to the
/// product of squared row norms, falls below 1e-12.
class LatticeBasis {
 public:
  explicit LatticeBasis(Mat rows);

  const Mat& rows() const noexcept { return rows_; }
  int rank() const noexcept { return static_cast<int>(rows_.rows()); }
  int dim() const noexcept { return static_cast<int>(rows_.cols()); }

  Mat gram() const { return rows_ * rows_.transpose(); }
  /// Covolume sqrt(det Gram) of the lattice inside its span.
  double covolume() const;

 private:
  Mat rows_;
};

struct ShortestVectorResult {
  Vec vector;
  double norm = 0.0;
  IntVec coefficients;  // with respect to the rows of the input basis
};

Mat gram(const LatticeBasis& basis);

/// Basis of the dual lattice inside span(basis): rows G^{-1} B, so the
/// pairing with the input rows is the identity.
LatticeBasis dual_basis(const LatticeBasis& basis);

/// n - (n.u / u.u) u
Vec project_orthogonal(const Vec& n, const Vec& u);

/// Primal basis of the projection of c_1 Z + ... + c_N Z onto the hyperplane
/// orthogonal to u_hat = (c_1 u_1, ..., c_N u_N). Rows live in R^N.
///
/// The basis is obtained by dualising the section of the dual lattice
/// {(n_i / c_i) : n in Z^N, n.u = 0} inside u_hat^perp, which avoids the
/// cancellation of projecting long integer vectors directly.
LatticeBasis projection_lattice_basis(const Vec& c, const IntVec& u);

/// Globally shortest nonzero vector by exhaustive enumeration over the
/// ball whose radius is the shortest (reduced) basis row. Ties within 1e-9
/// relative are broken by the lexicographically smallest coefficient vector
/// whose first nonzero entry is positive.
ShortestVectorResult shortest_vector(const LatticeBasis& basis);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// V_n (lambda / 2)^n / covolume for a full-rank-in-span basis.
double packing_density(const LatticeBasis& basis);

std::int64_t gcd_of(const IntVec& v);
bool is_primitive(const IntVec& v);

/// Basis (as rows) of the integer vectors orthogonal to u.
IntMat integer_kernel_basis(const IntVec& u);

/// LLL reduction (delta = 0.99) of the lattice with rows coeffs * embedding.
/// Operates on the integer coefficient rows so the embedded vectors are
/// always recomputed from exact integers. Returns the reduced coefficients.
IntMat lll_reduce(IntMat coeffs, const Mat& embedding);

}  // namespace torus_jscc
