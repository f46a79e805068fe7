#include "torus_jscc/channel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "torus_jscc/design.hpp"

namespace torus_jscc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTwoPow53 = 9007199254740992.0;

struct ShardSums {
  double e2 = 0.0;
  double e4 = 0.0;
  std::uint64_t anomalies = 0;
  std::uint64_t flagged = 0;
  std::uint64_t trials = 0;
};

}  // namespace

double GaussianSource::uniform() { return static_cast<double>(gen_() >> 11) / kTwoPow53; }

double GaussianSource::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) / kTwoPow53;  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

Vec awgn(const Vec& point, double sigma, GaussianSource& rng) {
  if (!(sigma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "noise sigma must be nonnegative");
  Vec out = point;
  if (sigma == 0.0) return out;
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) += sigma * rng.normal();
  return out;
}

SimResult run_mse(const SchemeCode& scheme, const SimConfig& config) {
  return run_mse(scheme, config, [&scheme](const Vec& y, bool& flagged) {
    const DecodeResult r = decode(scheme, y);
    flagged = r.flagged;
    return r.x;
  });
}

SimResult run_mse(const SchemeCode& scheme, const SimConfig& config, const DecoderFn& decoder) {
  if (config.trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  if (!(config.sigma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "noise sigma must be nonnegative");
  const std::uint64_t shards = (config.trials + kShardTrials - 1) / kShardTrials;
  std::vector<ShardSums> sums(shards);
  const double fold_noise = 3.0 * config.sigma * std::sqrt(2.0 * scheme.dim());
  const double scale = scheme.total_length() * scheme.alpha();

  auto run_shard = [&](std::uint64_t s) {
    GaussianSource rng(config.seed, s);
    ShardSums acc;
    const std::uint64_t begin = s * kShardTrials;
    const std::uint64_t end = std::min(config.trials, begin + kShardTrials);
    for (std::uint64_t i = begin; i < end; ++i) {
      const double x = rng.uniform();
      const auto loc = scheme.locate(x);
      const Vec y = awgn(encode(scheme, x), config.sigma, rng);
      bool flagged = false;
      const double xh = decoder(y, flagged);
      const double e = xh - x;
      acc.e2 += e * e;
      acc.e4 += e * e * e * e;
      const double threshold = fold_noise + scheme.curves()[loc.curve].spacing() * scheme.alpha() / 2.0;
      if (std::abs(e) * scale > threshold) ++acc.anomalies;
      if (flagged) ++acc.flagged;
      ++acc.trials;
    }
    sums[s] = acc;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(shards)));
  if (workers == 1) {
    for (std::uint64_t s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::uint64_t s = next++; s < shards; s = next++) run_shard(s);
      });
    for (auto& t : pool) t.join();
  }

  ShardSums total;
  for (const auto& s : sums) {
    total.e2 += s.e2;
    total.e4 += s.e4;
    total.anomalies += s.anomalies;
    total.flagged += s.flagged;
    total.trials += s.trials;
  }
  const double n = static_cast<double>(total.trials);
  SimResult r;
  r.trials = total.trials;
  r.mse = total.e2 / n;
  const double var = total.trials > 1 ? std::max(0.0, (total.e4 - n * r.mse * r.mse) / (n - 1.0)) : 0.0;
  r.mse_ci95 = 1.96 * std::sqrt(var / n);
  r.anomaly_rate = static_cast<double>(total.anomalies) / n;
  r.trials_flagged = total.flagged;
  return r;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sim_csv_header() { return "sigma,mse,ci,anomaly_rate,trials,trials_flagged"; }

std::string sim_csv_row(const SimConfig& config, const SimResult& r) {
  std::ostringstream os;
  os << format_double(config.sigma) << ',' << format_double(r.mse) << ',' << format_double(r.mse_ci95) << ','
     << format_double(r.anomaly_rate) << ',' << r.trials << ',' << r.trials_flagged;
  return os.str();
}

double estimate_small_ball(const CurveSpec& cs, std::size_t samples) {
  if (samples < 10000) throw Error(ErrorKind::InvalidArgument, "small-ball estimation needs >= 1e4 samples");
  const TorusSpec& t = cs.torus();
  const int n = cs.dim();
  const Vec dir = cs.u_hat().normalized();
  const Vec periods = t.box_periods();
  const double same_fold_tol = 1e-9 * periods.maxCoeff();
  const Vec origin = phi(t, Vec::Zero(n));

  // Chord to the flat midpoint between the reference point and the curve
  // point at parameter x, or +inf when both lie on the same fold.
  auto midpoint_chord = [&](double x) {
    Vec d(n);
    for (int i = 0; i < n; ++i) {
      const double turns = static_cast<double>(cs.u()[i]) * x;
      d(i) = periods(i) * (turns - std::nearbyint(turns));
    }
    const Vec across = d - d.dot(dir) * dir;
    if (across.norm() <= same_fold_tol) return std::numeric_limits<double>::infinity();
    return (phi(t, 0.5 * d) - origin).norm();
  };

  const double h = 1.0 / static_cast<double>(samples);
  double best = std::numeric_limits<double>::infinity();
  double best_x = 0.0;
  for (std::size_t j = 1; j < samples; ++j) {
    const double x = static_cast<double>(j) * h;
    const double v = midpoint_chord(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }

  double lo = best_x - h;
  double hi = best_x + h;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = midpoint_chord(x1);
  double f2 = midpoint_chord(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = midpoint_chord(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = midpoint_chord(x2);
    }
  }
  return std::min({best, f1, f2});
}

std::vector<TradeoffRow> tradeoff_table(int n, const std::vector<double>& deltas, const TradeoffOptions& options) {
  if (deltas.empty()) throw Error(ErrorKind::InvalidArgument, "tradeoff needs at least one delta");
  const TargetLattice target = TargetLattice::best_known(n - 1);
  auto total = [](const LayerCurves& lc) -> std::optional<double> {
    if (lc.curves.empty()) return std::nullopt;
    double s = 0.0;
    for (const auto& cs : lc.curves) s += cs.length();
    return s;
  };

  std::vector<TradeoffRow> rows;
  for (double delta : deltas) {
    TradeoffRow row;
    row.delta = delta;
    try {
      const LayerCodebook single = single_layer_codebook(n, delta);
      row.length_single = total(design_curves(single, delta, target, options.w_max));
      const LayerCodebook multi = options.force_single ? single : design_layers(n, delta, options.grid);
      const LayerCurves lc = design_curves(multi, delta, target, options.w_max);
      row.layers = multi.layers.size();
      row.curves_multi = lc.curves.size();
      row.length_multi = total(lc);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InfeasibleSeparation && e.kind() != ErrorKind::GridResolution &&
          e.kind() != ErrorKind::InvalidArgument)
        throw;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string tradeoff_csv(const std::vector<TradeoffRow>& rows) {
  std::ostringstream os;
  os << "delta,L_single,L_multi\n";
  for (const auto& r : rows) {
    os << format_double(r.delta) << ',' << (r.length_single ? format_double(*r.length_single) : "NA") << ','
       << (r.length_multi ? format_double(*r.length_multi) : "NA") << '\n';
  }
  return os.str();
}

}  // namespace torus_jscc
