#include "torus_jscc/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace torus_jscc {

namespace {

void sort_layers(std::vector<TorusSpec>& layers) {
  std::sort(layers.begin(), layers.end(), [](const TorusSpec& a, const TorusSpec& b) {
    return std::lexicographical_compare(a.c().begin(), a.c().end(), b.c().begin(), b.c().end());
  });
}

double min_pairwise(const std::vector<TorusSpec>& layers) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < layers.size(); ++i)
    for (std::size_t j = i + 1; j < layers.size(); ++j)
      m = std::min(m, inter_torus_distance(layers[i], layers[j]));
  return m;
}

void check_delta(double delta) {
  if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "delta must be positive");
  if (delta >= 0.5)
    throw Error(ErrorKind::InfeasibleSeparation,
                "infeasible separation: delta must be below 1/2 for strictly positive layers");
}

}  // namespace

LayerCodebook design_layers(int n, double delta, const GridOptions& options) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "layer design needs N >= 2");
  check_delta(delta);
  const double half_pi = std::numbers::pi / 2.0;
  const double requested = options.step.value_or(delta / 2.0);
  if (!(requested > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid step must be positive");
  const auto k = static_cast<std::size_t>(std::ceil(half_pi / requested));
  if (k < 2) throw Error(ErrorKind::GridResolution, "grid step leaves no interior angles");
  const double step = half_pi / static_cast<double>(k);
  const std::size_t per_angle = k - 1;  // interior angles only; boundary points pushed in

  double count = std::pow(static_cast<double>(per_angle), n - 1);
  if (count > static_cast<double>(options.max_candidates))
    throw Error(ErrorKind::GridResolution,
                "angular grid would have " + std::to_string(static_cast<long long>(count)) +
                    " candidates; increase delta or pass a coarser grid step");

  const double min_sep = 2.0 * delta;
  std::vector<TorusSpec> kept;
  std::vector<std::size_t> idx(n - 1, 1);
  Vec c(n);
  while (true) {
    double s = 1.0;
    for (int i = 0; i < n - 1; ++i) {
      const double a = static_cast<double>(idx[i]) * step;
      c(i) = s * std::cos(a);
      s *= std::sin(a);
    }
    c(n - 1) = s;
    bool ok = true;
    for (const auto& t : kept) {
      if ((t.c() - c).squaredNorm() < min_sep * min_sep) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(TorusSpec::normalized(c));

    int pos = n - 2;
    while (pos >= 0 && idx[pos] == per_angle) idx[pos--] = 1;
    if (pos < 0) break;
    ++idx[pos];
  }

  sort_layers(kept);
  LayerCodebook cb{std::move(kept), min_sep, 0.0};
  cb.achieved_sep = min_pairwise(cb.layers);
  return cb;
}

LayerCodebook make_codebook(std::vector<TorusSpec> layers, double delta) {
  if (layers.empty()) throw Error(ErrorKind::InvalidArgument, "codebook needs at least one layer");
  if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "delta must be positive");
  for (const auto& t : layers)
    if (t.dim() != layers.front().dim())
      throw Error(ErrorKind::DimensionMismatch, "codebook layers differ in dimension");
  sort_layers(layers);
  LayerCodebook cb{std::move(layers), 2.0 * delta, 0.0};
  const ValidationReport report = validate(cb);
  if (!report.ok())
    throw Error(ErrorKind::InfeasibleSeparation, "codebook layers closer than 2 delta");
  cb.achieved_sep = report.achieved_sep;
  return cb;
}

LayerCodebook single_layer_codebook(int n, double delta) {
  return make_codebook({TorusSpec::central(n)}, delta);
}

ValidationReport validate(const LayerCodebook& codebook) {
  ValidationReport report;
  report.achieved_sep = std::numeric_limits<double>::infinity();
  report.unconstrained = codebook.layers.size() < 2;
  for (std::size_t i = 0; i < codebook.layers.size(); ++i) {
    for (std::size_t j = i + 1; j < codebook.layers.size(); ++j) {
      const double d = inter_torus_distance(codebook.layers[i], codebook.layers[j]);
      report.achieved_sep = std::min(report.achieved_sep, d);
      if (d < codebook.min_sep - 1e-12) report.violations.push_back({i, j, d});
    }
  }
  return report;
}

}  // namespace torus_jscc
