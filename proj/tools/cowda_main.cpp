#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cowda/bound.hpp"
#include "cowda/construct.hpp"
#include "cowda/decode.hpp"
#include "cowda/matrix.hpp"
#include "cowda/parallel.hpp"
#include "cowda/sim.hpp"
#include "cowda/verify.hpp"
#include "cowda/version.hpp"

namespace {

uint64_t fnv1a(const std::string& bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "unreadable";
  std::ostringstream ss;
  ss << in.rdbuf();
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(ss.str())));
  return buf;
}

// Matrix arguments accept either a file path or the literal "hadamard:N".
cowda::CodeMatrix load_matrix_arg(const std::string& spec) {
  if (spec.rfind("hadamard:", 0) == 0) return cowda::hadamard(std::stoi(spec.substr(9)));
  return cowda::parse_matrix_file(spec);
}

cowda::CodeMatrix parse_factor(std::string s) {
  if (s.rfind("P=", 0) == 0) s = s.substr(2);
  if (s.rfind("hadamard:", 0) != 0)
    throw std::invalid_argument("factor must look like P=hadamard:R");
  return cowda::hadamard(std::stoi(s.substr(9)));
}

std::vector<double> parse_ebn0(const std::string& s) {
  size_t c1 = s.find(':');
  if (c1 == std::string::npos) return {std::stod(s)};
  size_t c2 = s.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw std::invalid_argument("--ebn0 expects a single value or a:b:step");
  double a = std::stod(s.substr(0, c1));
  double b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
  double step = std::stod(s.substr(c2 + 1));
  if (!(step > 0)) throw std::invalid_argument("--ebn0 step must be positive");
  if (b < a) throw std::invalid_argument("--ebn0 range runs backwards");
  long count = std::lround(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> pts;
  pts.reserve(static_cast<size_t>(count));
  for (long i = 0; i < count; ++i) pts.push_back(a + step * static_cast<double>(i));
  return pts;
}

std::vector<int> parse_chips(const std::string& s) {
  size_t dd = s.find("..");
  if (dd == std::string::npos) return {std::stoi(s)};
  int a = std::stoi(s.substr(0, dd));
  int b = std::stoi(s.substr(dd + 2));
  if (a < 1 || b < a) throw std::invalid_argument("--chips range must satisfy 1 <= a <= b");
  std::vector<int> v;
  v.reserve(static_cast<size_t>(b - a + 1));
  for (int m = a; m <= b; ++m) v.push_back(m);
  return v;
}

const char* signed_token(int v) {
  switch (v) {
    case -2: return "-2";
    case -1: return "-1";
    case 0: return "0";
    case 1: return "+1";
    case 2: return "+2";
  }
  return "?";
}

std::string witness_string(const cowda::QuinaryVector& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += signed_token(w[i]);
  }
  s += ')';
  return s;
}

std::vector<double> read_reals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::vector<double> v;
  double x;
  while (in >> x) v.push_back(x);
  if (!in.eof()) throw std::invalid_argument("malformed number in " + path);
  return v;
}

// The outer factor has +1 in its corner, so the core is the top-left block
// of the Kronecker product; build_context re-checks the full factorization.
cowda::DecoderContext context_from_args(const std::string& code_path, const std::string& factor) {
  cowda::CodeMatrix code = cowda::parse_matrix_file(code_path);
  cowda::CodeMatrix P = parse_factor(factor);
  int r = P.rows();
  if (r <= 0 || code.rows() % r != 0 || code.cols() % r != 0)
    throw std::invalid_argument("factor order does not divide the code shape");
  int l = code.rows() / r;
  int k = code.cols() / r;
  std::vector<int> entries(static_cast<size_t>(l) * static_cast<size_t>(k));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < k; ++j)
      entries[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(j)] =
          code.at(i, j) * P.at(0, 0);
  cowda::CodeMatrix D = cowda::CodeMatrix::from_entries(l, k, entries);
  return cowda::build_context(code, P, D, {});
}

struct RunOutputs {
  std::vector<std::string> files;
};

int cmd_verify(const std::string& file) {
  cowda::CodeMatrix C = load_matrix_arg(file);
  cowda::CowdaCertificate cert = cowda::is_cowda_auto(C);
  if (cert.verdict) {
    std::printf("COWDA\n");
  } else {
    std::printf("NOT-COWDA witness=%s\n", witness_string(*cert.witness).c_str());
  }
  std::printf("method: %s\n", cowda::verify_method_name(cert.method));
  std::printf("work: %llu\n", static_cast<unsigned long long>(cert.work));
  return cert.verdict ? 0 : 1;
}

int cmd_construct(const std::string& base, bool theorem2, bool extra_given, int extra,
                  const std::string& lift_spec, int search_cols, uint64_t budget,
                  uint64_t seed, const std::string& out, RunOutputs& outputs) {
  cowda::CodeMatrix base_matrix = load_matrix_arg(base);
  cowda::CertifiedMatrix cur = cowda::certify(base_matrix);
  uint64_t attempts = 0;
  bool exhausted = false;

  if (theorem2) {
    int target = extra_given ? extra : cowda::guaranteed_additions(base_matrix.rows());
    cowda::AugmentResult res = cowda::augment(cur, target, seed, budget);
    attempts = res.state.attempts;
    cur = std::move(res.result);
    exhausted = res.status == cowda::AugmentStatus::budget_exhausted;
  } else if (search_cols > 0) {
    cowda::SearchResult res = cowda::search_core(cur, search_cols, seed, 8, budget);
    attempts = res.attempts;
    cur = std::move(res.best);
    exhausted = cur.matrix.cols() < search_cols;
  }

  if (!lift_spec.empty()) {
    cowda::CodeMatrix P = parse_factor(lift_spec);
    cur = cowda::lift(P, cur).lifted;
  }

  if (!out.empty()) {
    cowda::write_matrix_file(out, cur.matrix);
    outputs.files.push_back(out);
  }

  std::printf("shape: %dx%d\n", cur.matrix.rows(), cur.matrix.cols());
  std::printf("certificate: %s\n", cowda::verify_method_name(cur.cert.method));
  std::printf("attempts: %llu\n", static_cast<unsigned long long>(attempts));
  if (exhausted) {
    std::printf("status: budget-exhausted\n");
    return 2;
  }
  return 0;
}

int cmd_bound(const std::string& chips_spec, const std::string& csv, RunOutputs& outputs) {
  std::vector<int> chips = parse_chips(chips_spec);
  std::vector<cowda::BoundPoint> curve = cowda::bound_curve(chips);
  std::string body = "m,n_max\n";
  for (const cowda::BoundPoint& p : curve)
    body += std::to_string(p.chips) + "," + std::to_string(p.users) + "\n";
  std::fputs(body.c_str(), stdout);
  if (!csv.empty()) {
    std::ofstream f(csv, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open " + csv);
    f << body;
    outputs.files.push_back(csv);
  }
  return 0;
}

int cmd_decode(const std::string& code, const std::string& factor, const std::string& received,
               bool all, bool user_given, int user) {
  if (all == user_given)
    throw std::invalid_argument("pass exactly one of --user or --all");
  cowda::DecoderContext ctx = context_from_args(code, factor);
  std::vector<double> y = read_reals(received);
  if (y.size() != static_cast<size_t>(ctx.code.rows()))
    throw std::invalid_argument("received vector has " + std::to_string(y.size()) +
                                " values, code needs " + std::to_string(ctx.code.rows()));
  if (all) {
    cowda::TernaryVector xh = cowda::detect_all(ctx, y);
    std::string line = "symbols:";
    for (int8_t s : xh) {
      line += ' ';
      line += signed_token(s);
    }
    std::printf("%s\n", line.c_str());
    double residual = 0.0;
    for (int i = 0; i < ctx.code.rows(); ++i) {
      long acc = 0;
      for (int j = 0; j < ctx.code.cols(); ++j)
        acc += static_cast<long>(ctx.code.at(i, j)) * xh[static_cast<size_t>(j)];
      double d = y[static_cast<size_t>(i)] - static_cast<double>(acc);
      residual += d * d;
    }
    std::printf("residual: %s\n", cowda::csv_number(residual).c_str());
  } else {
    cowda::BlockDecision d = cowda::decode_user(ctx, y, user);
    std::printf("user %d: %s\n", user, signed_token(d.symbol));
    std::printf("residual: %s\n", cowda::csv_number(d.score).c_str());
    std::printf("candidates: %llu\n", static_cast<unsigned long long>(d.candidates));
  }
  return 0;
}

int cmd_simulate(const std::string& code, const std::string& factor, const std::string& ebn0,
                 uint64_t trials, const std::string& metric, uint64_t seed,
                 const std::string& csv, RunOutputs& outputs) {
  cowda::DecoderContext ctx = context_from_args(code, factor);
  cowda::SimConfig cfg;
  cfg.ebn0_db = parse_ebn0(ebn0);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.metric = metric == "joint-detect" ? cowda::SimMetric::joint_detect
                                        : cowda::SimMetric::per_user_ml;
  cowda::BerCurve curve = cowda::run_ber(ctx, cfg);
  if (!csv.empty()) {
    cowda::write_ber_csv_file(csv, curve, ctx.code.rows());
    outputs.files.push_back(csv);
  } else {
    std::ostringstream ss;
    cowda::write_ber_csv(ss, curve, ctx.code.rows());
    std::fputs(ss.str().c_str(), stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  auto start = std::chrono::steady_clock::now();

  CLI::App app{"COWDA signature toolkit: construct, verify, bound, decode, simulate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cowda::kVersion));

  uint64_t seed = 0;
  unsigned threads = 0;
  std::string manifest_path;
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "RNG seed; omitted means a random seed, echoed to stderr");
  app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
  app.add_option("--manifest-json", manifest_path, "also write the run manifest to this file");

  auto* sub_verify = app.add_subcommand("verify", "certify a matrix or report a kernel witness");
  std::string verify_file;
  sub_verify->add_option("file", verify_file, "matrix file or hadamard:N")->required();
  sub_verify->fallthrough();

  auto* sub_construct = app.add_subcommand("construct", "build and certify signature matrices");
  std::string base, lift_spec, construct_out;
  bool theorem2 = false;
  int extra = 0;
  int search_cols = 0;
  uint64_t budget = 1000000;
  sub_construct->add_option("--base", base, "starting matrix: file or hadamard:N")->required();
  CLI::Option* theorem2_opt =
      sub_construct->add_flag("--theorem2", theorem2, "fourfold expansion plus column augmentation");
  CLI::Option* extra_opt = sub_construct->add_option(
      "--extra", extra, "columns to add (default: the guaranteed count for the base rows)");
  sub_construct->add_option("--lift", lift_spec, "Kronecker-lift the result by hadamard:N");
  CLI::Option* search_opt = sub_construct->add_option(
      "--search-cols", search_cols, "randomized widening of the base to this many columns");
  sub_construct->add_option("--budget", budget, "candidate-attempt budget");
  sub_construct->add_option("--out", construct_out, "write the resulting matrix here");
  theorem2_opt->excludes(search_opt);
  search_opt->excludes(theorem2_opt);
  sub_construct->fallthrough();

  auto* sub_bound = app.add_subcommand("bound", "entropy ceiling on users per chip count");
  std::string chips_spec, bound_csv;
  sub_bound->add_option("--chips", chips_spec, "single count like 64 or a range like 1..128")
      ->required();
  sub_bound->add_option("--csv", bound_csv, "write m,n_max rows to this file");
  sub_bound->fallthrough();

  auto* sub_decode = app.add_subcommand("decode", "two-stage detection on a received vector");
  std::string decode_code, decode_factor, received;
  bool decode_all = false;
  int user = 0;
  sub_decode->add_option("--code", decode_code, "code matrix file")->required();
  sub_decode->add_option("--factor", decode_factor, "outer factor, P=hadamard:R")->required();
  sub_decode->add_option("--received", received, "file of whitespace-separated reals")->required();
  CLI::Option* user_opt = sub_decode->add_option("--user", user, "decode this user (0-based)");
  sub_decode->add_flag("--all", decode_all, "detect the whole input vector");
  sub_decode->fallthrough();

  auto* sub_simulate = app.add_subcommand("simulate", "Monte-Carlo error rates over AWGN");
  std::string sim_code, sim_factor, ebn0, metric = "per-user-ml", sim_csv;
  uint64_t trials = 1000;
  sub_simulate->add_option("--code", sim_code, "code matrix file")->required();
  sub_simulate->add_option("--factor", sim_factor, "outer factor, P=hadamard:R")->required();
  sub_simulate->add_option("--ebn0", ebn0, "Eb/N0 sweep in dB: a:b:step or a single value")
      ->required();
  sub_simulate->add_option("--trials", trials, "Monte-Carlo trials per point");
  sub_simulate->add_option("--metric", metric, "per-user-ml or joint-detect")
      ->check(CLI::IsMember({"per-user-ml", "joint-detect"}));
  sub_simulate->add_option("--csv", sim_csv, "write the curve here instead of stdout");
  sub_simulate->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 3;
  }

  if (!seed_opt->count()) {
    std::random_device rd;
    seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
    std::fprintf(stderr, "seed %llu (auto)\n", static_cast<unsigned long long>(seed));
  }
  cowda::set_thread_count(threads);

  CLI::App* sub = app.get_subcommands().front();
  RunOutputs outputs;
  int code = 0;
  try {
    if (sub == sub_verify) {
      code = cmd_verify(verify_file);
    } else if (sub == sub_construct) {
      code = cmd_construct(base, theorem2, extra_opt->count() > 0, extra, lift_spec, search_cols,
                           budget, seed, construct_out, outputs);
    } else if (sub == sub_bound) {
      code = cmd_bound(chips_spec, bound_csv, outputs);
    } else if (sub == sub_decode) {
      code = cmd_decode(decode_code, decode_factor, received, decode_all, user_opt->count() > 0,
                        user);
    } else {
      code = cmd_simulate(sim_code, sim_factor, ebn0, trials, metric, seed, sim_csv, outputs);
    }
  } catch (const cowda::capacity_error& e) {
    std::fprintf(stderr, "capacity: %s\n", e.what());
    code = 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    code = 3;
  }

  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  nlohmann::json manifest;
  manifest["subcommand"] = sub->get_name();
  manifest["args"] = std::vector<std::string>(argv, argv + argc);
  manifest["seed"] = seed;
  manifest["version"] = cowda::kVersion;
  manifest["duration_s"] = secs;
  nlohmann::json digests = nlohmann::json::object();
  for (const std::string& f : outputs.files) digests[f] = file_digest(f);
  manifest["outputs"] = digests;
  std::fprintf(stderr, "%s\n", manifest.dump().c_str());
  if (!manifest_path.empty()) {
    std::ofstream mf(manifest_path, std::ios::binary);
    mf << manifest.dump(2) << "\n";
  }
  return code;
}
