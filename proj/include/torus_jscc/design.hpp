#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "torus_jscc/codec.hpp"
#include "torus_jscc/layers.hpp"

namespace torus_jscc {

struct DesignOptions {
  double alpha = 1.0;
  std::int64_t w_max = 10000;
  /// Defaults to TargetLattice::best_known(N - 1).
  std::optional<TargetLattice> target;
  GridOptions grid;
};

struct LayerCurves {
  std::vector<CurveSpec> curves;
  std::vector<std::int64_t> w;
  /// Layers with no lifted curve reaching small-ball radius delta.
  std::size_t dropped = 0;
};

/// For every layer: the line spacing whose certified small-ball lower bound
/// is delta, then the longest lifted curve meeting it.
LayerCurves design_curves(const LayerCodebook& codebook, double delta, const TargetLattice& target,
                          std::int64_t w_max);

struct SchemeDesign {
  LayerCodebook codebook;
  SchemeCode scheme;
  std::vector<std::int64_t> w;
  std::size_t dropped = 0;
};

/// Layers (grid-greedy unless `codebook` is supplied) plus lifted curves.
/// Without a supplied codebook the single central torus is used instead when
/// its curve is longer than the whole grid design.
/// Throws InfeasibleSeparation when no layer admits a curve.
SchemeDesign design_scheme(int n, double delta, const DesignOptions& options = {},
                           std::optional<LayerCodebook> codebook = std::nullopt);

}  // namespace torus_jscc
