// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every expected value is computed here from an independent route
// (direct chord distances, dense searches, closed forms) or pinned constants.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "torus_jscc/channel.hpp"
#include "torus_jscc/design.hpp"

#ifndef TORUS_JSCC_DATA_DIR
#define TORUS_JSCC_DATA_DIR "."
#endif

using namespace torus_jscc;
using std::numbers::pi;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s  %-4s %s  [%s]\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Seeded draws for corpus generation.
struct Draw {
  GaussianSource g;
  explicit Draw(std::uint64_t stream) : g(20261016, stream) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * g.uniform(); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(g.uniform() * static_cast<double>(hi - lo + 1));
  }
  Vec unit_positive(int n) {
    Vec c(n);
    for (int i = 0; i < n; ++i) c(i) = uniform(0.2, 1.0);
    return c / c.norm();
  }
  IntVec primitive(int n, std::int64_t bound) {
    for (;;) {
      IntVec u(n);
      for (auto& e : u) e = integer(-bound, bound);
      if (is_primitive(u)) return u;
    }
  }
};

double direct_chord(const TorusSpec& t, const Vec& u, const Vec& v) { return (phi(t, u) - phi(t, v)).norm(); }

// ---- 1. identities ---------------------------------------------------------

void identities() {
  Timer timer;
  Draw d(1);
  double max_err = 0.0;
  double worst_low = std::numeric_limits<double>::infinity();
  double worst_high = std::numeric_limits<double>::infinity();
  std::size_t pairs = 0;
  for (int n : {2, 3, 4}) {
    for (int i = 0; i < 33334; ++i) {
      const TorusSpec t(d.unit_positive(n));
      const Vec p = t.box_periods();
      // u uniform in the box; v = u + a displacement inside the window
      // |u - v| <= pi c_min, redrawn until it also lies in the box.
      Vec u(n), v(n);
      for (int k = 0; k < n; ++k) u(k) = d.uniform(0.0, p(k));
      for (;;) {
        Vec dir(n);
        for (int k = 0; k < n; ++k) dir(k) = d.g.normal();
        v = u + dir.normalized() * d.uniform(0.0, pi * t.c_min());
        bool inside = true;
        for (int k = 0; k < n; ++k) inside = inside && v(k) >= 0.0 && v(k) < p(k);
        if (inside) break;
      }
      const double chord = direct_chord(t, u, v);
      const double formula = intra_torus_distance(t, u, v);
      max_err = std::max(max_err, std::abs(chord - formula));
      const DistanceBounds b = distance_bounds(t, (u - v).norm());
      worst_low = std::min(worst_low, chord - b.lower);
      worst_high = std::min(worst_high, b.upper - chord);
      ++pairs;
    }
  }
  report("1.1", max_err < 1e-12, "same-torus distance formula vs direct chord",
          fmt("%.0f pairs, max |diff| %.3g", static_cast<double>(pairs), max_err));
  report("1.2", worst_low >= -1e-12 && worst_high >= -1e-12, "flat/chord distance sandwich in validity window",
          fmt("min(chord-lower) %.3g, min(upper-chord) %.3g", worst_low, worst_high));

  Draw e(2);
  double max_rel = 0.0;
  double max_density3 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + i % 2;
    const Vec c = e.unit_positive(n);
    const IntVec u = e.primitive(n, 10);
    Vec uh(n);
    for (int k = 0; k < n; ++k) uh(k) = static_cast<double>(u[k]) * c(k);
    const LatticeBasis b = projection_lattice_basis(c, u);
    const double r = shortest_vector(b).norm;
    const double density = packing_density(b);
    // Center density r^{N-1} |u_hat| / (2^{N-1} prod c) times the ball volume.
    const double identity = unit_ball_volume(n - 1) * std::pow(r, n - 1) * uh.norm() /
                            (std::pow(2.0, n - 1) * c.prod());
    max_rel = std::max(max_rel, std::abs(density - identity) / identity);
    if (n == 3) max_density3 = std::max(max_density3, density);
  }
  const double hex = pi / std::sqrt(12.0);
  report("1.3", max_rel < 1e-9 && max_density3 <= hex + 1e-9, "projection density identity and planar bound",
          fmt("max rel err %.3g, max N=3 density %.7f (bound %.7f)", max_rel, max_density3, hex));

  Draw f(3);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 4;
    Vec a(n), b(n), uh(n);
    for (int k = 0; k < n; ++k) {
      a(k) = f.uniform(-3, 3);
      b(k) = f.uniform(-3, 3);
      uh(k) = f.uniform(-3, 3);
    }
    const Vec pa = project_orthogonal(a, uh);
    worst = std::max(worst, (project_orthogonal(pa, uh) - pa).norm());
    worst = std::max(worst, std::abs(pa.dot(b) - a.dot(project_orthogonal(b, uh))));
    worst = std::max(worst, project_orthogonal(uh, uh).norm());
  }
  report("1.4", worst < 1e-12, "orthogonal projector idempotent, symmetric, kills direction",
          fmt("max residual %.3g", worst));
  std::printf("      suite 1 runtime %.2f s (limit 10 s)\n", timer.seconds());
}

// ---- 2. lifting ---------------------------------------------------------

void lifting() {
  Timer timer;
  const TargetLattice hex = TargetLattice::hexagonal();
  const Mat g = hex.dual_generator() * hex.dual_generator().transpose();
  Draw d(4);
  std::vector<Vec> cs{Vec::Ones(3)};
  for (int i = 0; i < 2; ++i) cs.push_back((Vec(3) << 1.0, d.uniform(0.5, 2.0), d.uniform(0.5, 2.0)).finished());

  bool ok = true;
  std::string detail;
  for (const Vec& c : cs) {
    double prev = std::numeric_limits<double>::infinity();
    char head[96];
    std::snprintf(head, sizeof head, "c=(1,%.3f,%.3f) d_w:", c(1), c(2));
    detail += head;
    for (std::int64_t w : {5, 10, 20, 40, 80}) {
      const LatticeBasis b = lifting_dual_basis(hex, c, w);
      const double dev = (b.gram() / static_cast<double>(w * w) - g).cwiseAbs().maxCoeff();
      detail += fmt(" %.4g", dev);
      ok = ok && dev < prev;
      prev = dev;
    }
    ok = ok && prev < 0.02;
    detail += "; ";
  }
  report("2.1", ok, "lifted Gram converges to target along w = 5..80, d_80 < 0.02", detail);

  bool match = true;
  int checked = 0;
  for (const Vec& c : cs) {
    const Mat two_hex = 2.0 * hex.dual_generator();
    for (std::int64_t w = 1; w <= 20; ++w) {
      const std::int64_t m = static_cast<std::int64_t>(std::floor(static_cast<double>(w) * std::sqrt(3.0) * c(1) / c(0)));
      const IntVec closed{1, -2 * w, 2 * w * m - w};
      match = match && lifting_winding(hex, c, 2 * w) == closed;
      match = match && lifting_winding(TargetLattice(two_hex), c, w) == closed;
      ++checked;
    }
  }
  report("2.2", match, "hexagonal closed-form winding matches lifting output",
          fmt("%.0f (c, w) pairs, w = 1..20", checked));

  const Vec c3 = Vec::Ones(3) / std::sqrt(3.0);
  const IntVec u50 = lifting_winding(hex, Vec::Ones(3), 50);
  const double dens = packing_density(projection_lattice_basis(c3, u50));
  report("2.3", std::abs(dens - pi / std::sqrt(12.0)) <= 0.05, "projection density at w = 50 near hexagonal",
          fmt("density %.6f vs %.6f", dens, pi / std::sqrt(12.0)));
  std::printf("      suite 2 runtime %.2f s (limit 30 s)\n", timer.seconds());
}

// ---- 3. small balls ---------------------------------------------------------

void small_balls() {
  Timer timer;
  std::vector<CurveSpec> curves;
  for (double delta : {0.05, 0.1, 0.15, 0.2, 0.3}) {
    for (const LayerCodebook& cb : {single_layer_codebook(2, delta), design_layers(2, delta)}) {
      for (auto& c : design_curves(cb, delta, TargetLattice::best_known(1), 10000).curves)
        if (curves.size() < 10) curves.push_back(c);
    }
  }
  const std::size_t n2 = curves.size();
  const SchemeDesign three = design_scheme(3, 0.15);
  for (const auto& c : three.scheme.curves())
    if (curves.size() < 20) curves.push_back(c);

  const std::size_t samples = 1000000;
  bool sandwich = true;
  bool exact_ok = true;
  double worst_exact = 0.0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& cs : curves) {
    const double est = estimate_small_ball(cs, samples);
    const double tol = 2.0 * cs.length() / static_cast<double>(samples);
    sandwich = sandwich && est >= cs.ball_lower() - tol && est <= cs.ball_upper() + tol;
    worst_margin = std::min({worst_margin, est - cs.ball_lower() + tol, cs.ball_upper() + tol - est});
    if (cs.dim() == 2) {
      const double ex = exact_small_ball_2d(cs.torus(), cs.u());
      worst_exact = std::max(worst_exact, std::abs(est - ex));
      exact_ok = exact_ok && std::abs(est - ex) <= 1e-3;
    }
  }
  report("3.1", sandwich && curves.size() == 20, "sampled fold distance inside certified interval",
          fmt("%.0f curves (%.0f with N=2), min margin %.3g", static_cast<double>(curves.size()),
              static_cast<double>(n2), worst_margin));
  report("3.2", exact_ok && n2 > 0, "N=2 sampled fold distance matches exact radius",
          fmt("max |est - exact| %.3g at 1e6 samples", worst_exact));
  std::printf("      suite 3 runtime %.2f s (limit 60 s)\n", timer.seconds());
}

// ---- 4. codec ---------------------------------------------------------

// Same fold and layer, up to half a line spacing along the curve.
bool same_fold(const SchemeCode& s, double a, double b) {
  const auto la = s.locate(a);
  const auto lb = s.locate(b);
  if (la.curve != lb.curve) return false;
  double dt = std::abs(la.t - lb.t);
  dt = std::min(dt, 1.0 - dt);
  const CurveSpec& cs = s.curves()[la.curve];
  return dt * cs.length() <= cs.spacing() / 2.0;
}

void codec() {
  Timer timer;
  const double delta = 0.1;
  LayerCurves single = design_curves(single_layer_codebook(3, delta), delta, TargetLattice::best_known(2), 10000);
  const SchemeCode one(std::move(single.curves), 1.0, delta);
  const SchemeCode many = design_scheme(3, delta).scheme;

  double worst = 0.0;
  for (const SchemeCode* s : {&one, &many}) {
    Draw d(5);
    for (int i = 0; i < 1000; ++i) {
      const double x = d.g.uniform();
      worst = std::max(worst, std::abs(decode(*s, encode(*s, x)).x - x));
    }
  }
  report("4.1", worst < 1e-9 && one.size() == 1 && many.size() >= 3, "noiseless roundtrip, M = 1 and M >= 3",
          fmt("M = %.0f and %.0f, max |x_hat - x| %.3g", static_cast<double>(one.size()),
              static_cast<double>(many.size()), worst));

  // Oracle comparison on a scheme whose length keeps the 1e5-point grid
  // finer than the curve spacing.
  const SchemeCode s = design_scheme(3, 0.2).scheme;
  const ExhaustiveDecoder ml(s, 100000);
  const double sigma = s.alpha() * s.delta() / 3.0;
  const int trials = 10000;
  GaussianSource rng(1, 0);
  int disagree = 0;
  double e2_sub = 0.0, e4_sub = 0.0, e2_ml = 0.0;
  double max_ratio = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double x = rng.uniform();
    const Vec y = awgn(encode(s, x), sigma, rng);
    OpCounter ops;
    const DecodeResult sub = decode(s, y, &ops);
    const double xm = ml(y);
    if (!same_fold(s, sub.x, xm)) ++disagree;
    const double es = sub.x - x;
    const double em = xm - x;
    e2_sub += es * es;
    e4_sub += es * es * es * es;
    e2_ml += em * em;
    const CurveSpec& cs = s.curves()[sub.layer];
    const double unit = static_cast<double>(s.size() * s.dim() + s.dim() * cs.l1_norm());
    max_ratio = std::max(max_ratio, static_cast<double>(ops.mults) / unit);
  }
  const double n = trials;
  const double mse_sub = e2_sub / n;
  const double mse_ml = e2_ml / n;
  const double ci = 1.96 * std::sqrt(std::max(0.0, (e4_sub / n - mse_sub * mse_sub) / (n - 1)));
  const double rate = disagree / n;
  report("4.2", rate < 0.01 && mse_ml <= mse_sub + ci, "two-stage decoder vs exhaustive search at sigma = alpha delta/3",
          fmt("M = %.0f, disagreement %.4f, ", static_cast<double>(s.size()), rate) +
              fmt("mse oracle %.4g vs two-stage %.4g +- %.3g", mse_ml, mse_sub, ci));
  report("4.3", max_ratio <= 32.0, "decoder multiplications within 32 (MN + N|u|_1)",
          fmt("max ratio %.2f", max_ratio));
  std::printf("      suite 4 runtime %.2f s (limit 30 s)\n", timer.seconds());
}

// ---- 5. simulation ---------------------------------------------------------

void simulation() {
  Timer timer;
  const SchemeCode s = design_scheme(3, 0.1).scheme;
  const double ad = s.alpha() * s.delta();
  const std::uint64_t trials = 100000;
  const std::uint64_t seed = 1;

  const SimResult zero = run_mse(s, {0.0, trials, seed, 1});
  report("5.1", zero.mse <= 1e-18, "noiseless mse", fmt("mse %.3g", zero.mse));

  const double sigma = ad / 10.0;
  const SimResult low = run_mse(s, {sigma, trials, seed, 1});
  const double al = s.alpha() * s.total_length();
  const double model = sigma * sigma / (al * al);
  const double ratio = low.mse / model;
  report("5.2", ratio >= 0.5 && ratio <= 2.0, "low-noise mse vs tangential model",
          fmt("mse %.4g, model %.4g, ratio %.3g", low.mse, model, ratio) +
              fmt(", anomalies %.0f of %.0f", low.anomaly_rate * static_cast<double>(trials),
                  static_cast<double>(trials)));

  std::vector<double> fractions{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 1.0};
  std::string rates;
  bool crossed = false;
  double prev_rate = -1.0;
  for (double f : fractions) {
    const SimResult r = run_mse(s, {f * ad, trials, seed, 1});
    rates += fmt(" %.2g:%.3g", f, r.anomaly_rate);
    if (prev_rate >= 0.0 && prev_rate < 1e-2 && r.anomaly_rate >= 1e-2) crossed = true;
    prev_rate = r.anomaly_rate;
  }
  report("5.3", crossed, "anomaly rate crosses 1e-2 over a sweep through alpha delta/2",
          "sigma/(alpha delta):rate" + rates);

  const SimConfig c1{ad / 3.0, trials, seed, 1};
  SimConfig c4 = c1;
  c4.workers = 4;
  const std::string a = sim_csv_row(c1, run_mse(s, c1));
  const std::string b = sim_csv_row(c4, run_mse(s, c4));
  const std::string a2 = sim_csv_row(c1, run_mse(s, c1));
  report("5.4", a == b && a == a2, "bit-exact results with 1 and 4 workers", a);
  std::printf("      suite 5 runtime %.2f s (limit 300 s)\n", timer.seconds());
}

// ---- 6. tradeoff ---------------------------------------------------------

void tradeoff() {
  Timer timer;
  std::vector<double> deltas;
  for (int i = 0; i < 8; ++i) deltas.push_back(0.02 + i * (0.18 / 7.0));
  const auto rows = tradeoff_table(3, deltas);
  const std::string csv = tradeoff_csv(rows);

  bool dominance = true;
  bool monotone = true;
  int feasible = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].length_single && rows[i].length_multi) {
      ++feasible;
      dominance = dominance && *rows[i].length_multi >= *rows[i].length_single;
    }
    if (i > 0) {
      if (rows[i].length_single && rows[i - 1].length_single)
        monotone = monotone && *rows[i].length_single <= *rows[i - 1].length_single;
      if (rows[i].length_multi && rows[i - 1].length_multi)
        monotone = monotone && *rows[i].length_multi <= *rows[i - 1].length_multi;
    }
  }
  report("6.1", dominance && feasible > 0, "multi-layer length >= single-torus length",
          fmt("%.0f feasible rows of %.0f", feasible, static_cast<double>(rows.size())));
  report("6.2", monotone, "both lengths non-increasing in delta", "N = 3, delta in [0.02, 0.2]");

  const std::string path = std::string(TORUS_JSCC_DATA_DIR) + "/tradeoff_n3.csv";
  std::ifstream in(path);
  std::ostringstream locked;
  locked << in.rdbuf();
  report("6.3", in && locked.str() == csv, "tradeoff table matches locked CSV", path);
  if (!in || locked.str() != csv) std::printf("%s", csv.c_str());
  std::printf("      suite 6 runtime %.2f s (limit 300 s)\n", timer.seconds());
}

}  // namespace

int main() {
  try {
    identities();
    lifting();
    small_balls();
    codec();
    simulation();
    tradeoff();
  } catch (const std::exception& e) {
    std::printf("FAIL  acceptance run aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
