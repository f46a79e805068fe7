#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torus_jscc/codec.hpp"
#include "torus_jscc/layers.hpp"
#include "torus_jscc/philox.hpp"

namespace torus_jscc {

/// Uniform and Gaussian draws from a Philox stream keyed by (seed, stream).
/// Gaussians use Box-Muller on 53-bit uniforms.
class GaussianSource {
 public:
  GaussianSource(std::uint64_t seed, std::uint64_t stream) : gen_(seed, stream) {}

  /// Uniform on [0, 1).
  double uniform();
  double normal();

 private:
  PhiloxStream gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// point + N(0, sigma^2) independently per real coordinate.
Vec awgn(const Vec& point, double sigma, GaussianSource& rng);

struct SimConfig {
  double sigma = 0.0;  // per real coordinate; SNR = alpha^2 / (2 N sigma^2)
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct SimResult {
  double mse = 0.0;
  double mse_ci95 = 0.0;
  /// Fraction of trials whose error exceeds the wrong-fold heuristic
  /// |x_hat - x| L alpha > 3 sigma sqrt(2N) + spacing alpha / 2.
  double anomaly_rate = 0.0;
  std::uint64_t trials_flagged = 0;
  std::uint64_t trials = 0;
};

/// Decoder under test: returns x_hat and sets `flagged` for unusable inputs.
using DecoderFn = std::function<double(const Vec& y, bool& flagged)>;

/// Trials are split into fixed shards of kShardTrials, shard s drawing from
/// the Philox stream (seed, s); shards are merged in index order, so the
/// result does not depend on the number of workers.
inline constexpr std::uint64_t kShardTrials = 1024;

SimResult run_mse(const SchemeCode& scheme, const SimConfig& config);
SimResult run_mse(const SchemeCode& scheme, const SimConfig& config, const DecoderFn& decoder);

std::string sim_csv_header();
std::string sim_csv_row(const SimConfig& config, const SimResult& result);

/// Sampled small-ball radius: the smallest chord between a curve point and
/// the flat midpoint towards a point of another fold, minimised over `samples`
/// curve points plus a local golden-section refinement. The curve is
/// homogeneous (translations along it are torus isometries), so one reference
/// point suffices. Converges from above as samples grow.
double estimate_small_ball(const CurveSpec& cs, std::size_t samples);

struct TradeoffRow {
  double delta = 0.0;
  std::optional<double> length_single;
  std::optional<double> length_multi;
  std::size_t curves_multi = 0;
  std::size_t layers = 0;
};

struct TradeoffOptions {
  std::int64_t w_max = 10000;
  bool force_single = false;  // multi-layer column built from the central torus only
  GridOptions grid;
};

/// Length of the single-torus lifted curve and of the multi-layer scheme
/// for each delta. Rows whose design fails carry empty lengths.
std::vector<TradeoffRow> tradeoff_table(int n, const std::vector<double>& deltas,
                                        const TradeoffOptions& options = {});

std::string tradeoff_csv(const std::vector<TradeoffRow>& rows);

/// %.17g
std::string format_double(double v);

}  // namespace torus_jscc
