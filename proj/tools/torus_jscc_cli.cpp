// torus-jscc: design, encode/decode, simulate and tradeoff front-end.

#include <openssl/evp.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "torus_jscc/channel.hpp"
#include "torus_jscc/design.hpp"
#include "torus_jscc/json_io.hpp"

#ifndef TORUS_JSCC_VERSION
#define TORUS_JSCC_VERSION "unknown"
#endif

namespace tj = torus_jscc;
using tj::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void setup_logging() {
  auto logger = spdlog::stderr_logger_mt("torus-jscc");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("TORUS_JSCC_LOG")) {
    const std::string v = env;
    if (!v.empty() && v != "0") spdlog::set_level(spdlog::level::from_str(v));
    if (v == "1") spdlog::set_level(spdlog::level::info);
    if (v == "2") spdlog::set_level(spdlog::level::debug);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
  if (!out) throw UsageError("failed writing " + path);
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

void write_manifest(const std::string& out_path, const std::string& command, const json& params,
                    const std::optional<std::uint64_t>& seed, const std::vector<std::string>& inputs) {
  json m;
  m["command"] = command;
  m["params"] = params;
  m["seed"] = seed ? json(*seed) : json(nullptr);
  m["version"] = TORUS_JSCC_VERSION;
  json in = json::object();
  for (const auto& p : inputs) in[p] = sha256_hex(read_file(p));
  m["inputs"] = in;
  m["outputs"] = json{{out_path, sha256_hex(read_file(out_path))}};
  write_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

tj::SchemeCode load_scheme(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  return tj::scheme_from_json(j);
}

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return false;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool parse_vector(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    double v;
    if (!parse_double(tok, v)) return false;
    out.push_back(v);
  }
  return true;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

// ---- commands --------------------------------------------------------------

struct DesignArgs {
  int n = 0;
  double delta = 0.0;
  std::string out;
  double alpha = 1.0;
  std::int64_t w_max = 10000;
  std::string codebook;
};

int cmd_design(const DesignArgs& a) {
  tj::DesignOptions opts;
  opts.alpha = a.alpha;
  opts.w_max = a.w_max;
  std::optional<tj::LayerCodebook> cb;
  std::vector<std::string> inputs;
  if (!a.codebook.empty()) {
    cb = tj::codebook_from_json(json::parse(read_file(a.codebook)));
    inputs.push_back(a.codebook);
  }
  spdlog::info("designing N={} delta={}", a.n, a.delta);
  const tj::SchemeDesign d = tj::design_scheme(a.n, a.delta, opts, cb);

  json j = tj::to_json(d.scheme);
  j["N"] = a.n;
  j["w"] = d.w;
  j["codebook"] = tj::to_json(d.codebook);
  write_file(a.out, j.dump(2) + "\n");

  json params{{"N", a.n}, {"delta", a.delta}, {"alpha", a.alpha}, {"w_max", a.w_max}, {"out", a.out}};
  if (!a.codebook.empty()) params["codebook"] = a.codebook;
  write_manifest(a.out, "design", params, std::nullopt, inputs);

  std::printf("M %zu\n", d.scheme.size());
  std::printf("layers %zu dropped %zu\n", d.codebook.layers.size(), d.dropped);
  std::printf("total_length %s\n", tj::format_double(d.scheme.total_length()).c_str());
  std::printf("delta_achieved %s\n", tj::format_double(d.scheme.ball_radius()).c_str());
  return 0;
}

int cmd_encode(const std::string& scheme_path) {
  const tj::SchemeCode scheme = load_scheme(scheme_path);
  std::string line;
  std::size_t lineno = 0;
  int status = 0;
  while (std::getline(std::cin, line)) {
    ++lineno;
    if (blank(line)) continue;
    double x;
    if (!parse_double(line, x)) {
      std::fprintf(stderr, "line %zu: cannot parse \"%s\"\n", lineno, line.c_str());
      std::puts("NA");
      status = kExitUsage;
      continue;
    }
    try {
      const tj::Vec y = tj::encode(scheme, x);
      std::string out;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (i) out.push_back(' ');
        out += tj::format_double(y(i));
      }
      std::puts(out.c_str());
    } catch (const tj::Error& e) {
      std::fprintf(stderr, "line %zu: %s\n", lineno, e.what());
      std::puts("NA");
      status = kExitUsage;
    }
  }
  return status;
}

int cmd_decode(const std::string& scheme_path) {
  const tj::SchemeCode scheme = load_scheme(scheme_path);
  const std::size_t want = 2 * static_cast<std::size_t>(scheme.dim());
  std::string line;
  std::size_t lineno = 0;
  int status = 0;
  std::vector<double> v;
  while (std::getline(std::cin, line)) {
    ++lineno;
    if (blank(line)) continue;
    if (!parse_vector(line, v) || v.size() != want) {
      std::fprintf(stderr, "line %zu: expected %zu numbers\n", lineno, want);
      std::puts("NA");
      status = kExitUsage;
      continue;
    }
    const tj::Vec y = Eigen::Map<const tj::Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
    const tj::DecodeResult r = tj::decode(scheme, y);
    if (r.undecodable) {
      spdlog::warn("line {}: undecodable (zero radius)", lineno);
      std::puts("NA");
      continue;
    }
    if (r.flagged) spdlog::warn("line {}: ambiguous phase", lineno);
    std::puts(tj::format_double(r.x).c_str());
  }
  return status;
}

int cmd_simulate(const std::string& scheme_path, double sigma, std::uint64_t trials, std::uint64_t seed,
                 unsigned workers) {
  const tj::SchemeCode scheme = load_scheme(scheme_path);
  tj::SimConfig cfg{sigma, trials, seed, workers};
  spdlog::info("simulating sigma={} trials={} seed={} workers={}", sigma, trials, seed, workers);
  const tj::SimResult r = tj::run_mse(scheme, cfg);
  std::printf("%s\n%s\n", tj::sim_csv_header().c_str(), tj::sim_csv_row(cfg, r).c_str());
  return 0;
}

int cmd_tradeoff(int n, const std::vector<double>& deltas, const std::string& out, std::int64_t w_max) {
  if (deltas.empty()) throw UsageError("empty delta grid");
  for (double d : deltas)
    if (!(d > 0.0 && d < 0.5)) throw UsageError("delta values must lie in (0, 0.5)");
  tj::TradeoffOptions opts;
  opts.w_max = w_max;
  const auto rows = tj::tradeoff_table(n, deltas, opts);
  for (const auto& r : rows)
    if (!r.length_multi) spdlog::warn("delta={}: infeasible row", r.delta);
  write_file(out, tj::tradeoff_csv(rows));
  write_manifest(out, "tradeoff", json{{"N", n}, {"deltas", deltas}, {"w_max", w_max}, {"out", out}},
                 std::nullopt, {});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Analog source-channel codes from curves on flat tori"};
  app.set_version_flag("--version", TORUS_JSCC_VERSION);
  app.require_subcommand(1);

  DesignArgs da;
  auto* design = app.add_subcommand("design", "Design layers and curves for a separation delta");
  design->add_option("-N", da.n, "Number of complex dimensions")->required()->check(CLI::Range(2, 64));
  design->add_option("--delta", da.delta, "Target small-ball radius")->required();
  design->add_option("-o,--out", da.out, "Scheme JSON output")->required();
  design->add_option("--alpha", da.alpha, "Power scale")->check(CLI::PositiveNumber);
  design->add_option("--w-max", da.w_max, "Largest lifting index searched")->check(CLI::Range(1, 1000000));
  design->add_option("--codebook", da.codebook, "Layer codebook JSON instead of the grid design")
      ->check(CLI::ExistingFile);

  std::string scheme_path;
  auto* encode = app.add_subcommand("encode", "Encode x values read from stdin");
  encode->add_option("-s,--scheme", scheme_path, "Scheme JSON")->required()->check(CLI::ExistingFile);
  auto* decode = app.add_subcommand("decode", "Decode 2N-vectors read from stdin");
  decode->add_option("-s,--scheme", scheme_path, "Scheme JSON")->required()->check(CLI::ExistingFile);

  double sigma = 0.0;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo mse over a Gaussian channel");
  simulate->add_option("-s,--scheme", scheme_path, "Scheme JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--sigma", sigma, "Noise std per real coordinate")->required()->check(
      CLI::NonNegativeNumber);
  simulate->add_option("--trials", trials, "Number of trials")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Random seed")->required();
  simulate->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 1024u));

  int tn = 0;
  std::vector<double> deltas;
  std::string tout;
  std::int64_t tw_max = 10000;
  auto* tradeoff = app.add_subcommand("tradeoff", "Single- vs multi-layer length over a delta grid");
  tradeoff->add_option("-N", tn, "Number of complex dimensions")->required()->check(CLI::Range(2, 64));
  tradeoff->add_option("--deltas", deltas, "Comma-separated delta grid")->required()->delimiter(',');
  tradeoff->add_option("-o,--out", tout, "CSV output")->required();
  tradeoff->add_option("--w-max", tw_max, "Largest lifting index searched")->check(CLI::Range(1, 1000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*design) return cmd_design(da);
    if (*encode) return cmd_encode(scheme_path);
    if (*decode) return cmd_decode(scheme_path);
    if (*simulate) return cmd_simulate(scheme_path, sigma, trials, *seed, workers);
    if (*tradeoff) return cmd_tradeoff(tn, deltas, tout, tw_max);
  } catch (const tj::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (e.kind() == tj::ErrorKind::InfeasibleSeparation || e.kind() == tj::ErrorKind::GridResolution)
      return kExitInfeasible;
    return kExitUsage;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
