#include "torus_jscc/design.hpp"

#include <utility>

namespace torus_jscc {

LayerCurves design_curves(const LayerCodebook& codebook, double delta, const TargetLattice& target,
                          std::int64_t w_max) {
  LayerCurves out;
  for (const auto& torus : codebook.layers) {
    const auto r_min = spacing_for_ball_radius(torus, delta);
    if (!r_min || !(*r_min > 0.0)) {
      ++out.dropped;
      continue;
    }
    auto choice = search_best_w(target, torus, *r_min, w_max);
    if (!choice) {
      ++out.dropped;
      continue;
    }
    out.w.push_back(choice->w);
    out.curves.push_back(std::move(choice->curve));
  }
  return out;
}

SchemeDesign design_scheme(int n, double delta, const DesignOptions& options,
                           std::optional<LayerCodebook> codebook) {
  const bool supplied = codebook.has_value();
  LayerCodebook cb = supplied ? std::move(*codebook) : design_layers(n, delta, options.grid);
  if (!cb.layers.empty() && cb.layers.front().dim() != n)
    throw Error(ErrorKind::DimensionMismatch, "codebook dimension does not match N");
  const TargetLattice target = options.target ? *options.target : TargetLattice::best_known(n - 1);
  LayerCurves lc = design_curves(cb, delta, target, options.w_max);

  // The central torus alone is also a layer code; keep it when the grid
  // layers sit too close to the orthant boundary to carry longer curves.
  if (!supplied) {
    LayerCodebook single = single_layer_codebook(n, delta);
    LayerCurves sc = design_curves(single, delta, target, options.w_max);
    auto total = [](const LayerCurves& l) {
      double s = 0.0;
      for (const auto& c : l.curves) s += c.length();
      return s;
    };
    if (!sc.curves.empty() && total(sc) > total(lc)) {
      cb = std::move(single);
      lc = std::move(sc);
    }
  }

  if (lc.curves.empty())
    throw Error(ErrorKind::InfeasibleSeparation,
                "infeasible separation: no layer admits a curve with the requested small-ball radius");
  SchemeCode scheme(std::move(lc.curves), options.alpha, delta);
  return SchemeDesign{std::move(cb), std::move(scheme), std::move(lc.w), lc.dropped};
}

}  // namespace torus_jscc
