#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "torus_jscc/torus.hpp"

namespace torus_jscc {

/// Torus layers forming a positive-orthant spherical code: every pair of
/// c-vectors is at least min_sep = 2 delta apart.
struct LayerCodebook {
  std::vector<TorusSpec> layers;
  double min_sep = 0.0;
  /// Minimum pairwise |c_a - c_b|; +infinity for a single layer.
  double achieved_sep = 0.0;
};

struct LayerViolation {
  std::size_t a;
  std::size_t b;
  double distance;
};

struct ValidationReport {
  double achieved_sep = 0.0;
  bool unconstrained = false;  // fewer than two layers
  std::vector<LayerViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

struct GridOptions {
  /// Angular grid step; defaults to delta / 2.
  std::optional<double> step;
  /// Upper bound on the number of grid candidates before giving up.
  std::size_t max_candidates = 4'000'000;
};

/// Greedy spherical code on the positive orthant of S^{N-1}.
///
/// Candidates are hyperspherical-angle grid points with every angle strictly
/// inside (0, pi/2), visited in lexicographic grid order; a candidate is kept
/// when it is at least 2 delta from everything kept so far. Layers come back
/// sorted lexicographically by c.
LayerCodebook design_layers(int n, double delta, const GridOptions& options = {});

/// Wraps user-supplied layers; throws InfeasibleSeparation if any pair is
/// closer than 2 delta.
LayerCodebook make_codebook(std::vector<TorusSpec> layers, double delta);

/// The single central torus, the M = 1 scheme.
LayerCodebook single_layer_codebook(int n, double delta);

ValidationReport validate(const LayerCodebook& codebook);

}  // namespace torus_jscc
