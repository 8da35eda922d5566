#include "cowda/sim.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "cowda/parallel.hpp"
#include "cowda/rng.hpp"

namespace cowda {

double sigma_from_ebn0(double ebn0_db, int m) {
  if (m <= 0) throw std::invalid_argument("sigma_from_ebn0: chip count must be positive");
  if (!std::isfinite(ebn0_db)) throw std::invalid_argument("sigma_from_ebn0: Eb/N0 must be finite");
  double linear = std::pow(10.0, ebn0_db / 10.0);
  return std::sqrt(static_cast<double>(m) / (2.0 * linear));
}

namespace {

struct TrialTally {
  uint64_t active_bits = 0;
  uint64_t bit_errors = 0;
  uint64_t inactive_bits = 0;
  uint64_t false_alarms = 0;
};

void draw_input(const SimConfig& cfg, GaussianStream& gs, std::vector<int8_t>& x) {
  if (cfg.activity == ActivityModel::iid_ternary_uniform) {
    for (auto& xi : x) xi = static_cast<int8_t>(static_cast<int>(gs.next_below(3)) - 1);
  } else {
    std::fill(x.begin(), x.end(), int8_t{0});
    for (int u : cfg.active_set) x[static_cast<size_t>(u)] = gs.next_below(2) ? int8_t{1} : int8_t{-1};
  }
}

void run_trial(const DecoderContext& ctx, const SimConfig& cfg, double sigma,
               uint64_t point, uint64_t trial, std::vector<int8_t>& x,
               std::vector<double>& y, TrialTally& tally) {
  GaussianStream gs(cfg.seed, hash_combine(point, trial));
  draw_input(cfg, gs, x);
  int m = ctx.code.rows();
  int n = ctx.code.cols();
  for (int i = 0; i < m; ++i) {
    long acc = 0;
    for (int j = 0; j < n; ++j) acc += static_cast<long>(ctx.code.at(i, j)) * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = static_cast<double>(acc) + sigma * gs.next();
  }
  if (cfg.metric == SimMetric::per_user_ml) {
    for (int u = 0; u < n; ++u) {
      if (x[static_cast<size_t>(u)] == 0) {
        ++tally.inactive_bits;
        continue;
      }
      ++tally.active_bits;
      BlockDecision d = decode_user(ctx, y, u);
      if (d.symbol != x[static_cast<size_t>(u)]) ++tally.bit_errors;
    }
  } else {
    TernaryVector hat = detect_all(ctx, y);
    for (int u = 0; u < n; ++u) {
      int8_t truth = x[static_cast<size_t>(u)];
      if (truth != 0) {
        ++tally.active_bits;
        if (hat[static_cast<size_t>(u)] != truth) ++tally.bit_errors;
      } else {
        ++tally.inactive_bits;
        if (hat[static_cast<size_t>(u)] != 0) ++tally.false_alarms;
      }
    }
  }
}

}  // namespace

BerCurve run_ber(const DecoderContext& ctx, const SimConfig& cfg) {
  if (cfg.ebn0_db.empty()) throw std::invalid_argument("run_ber: empty Eb/N0 list");
  if (cfg.trials == 0) throw std::invalid_argument("run_ber: need at least one trial");
  for (double db : cfg.ebn0_db)
    if (!std::isfinite(db)) throw std::invalid_argument("run_ber: Eb/N0 must be finite");
  int n = ctx.code.cols();
  if (cfg.activity == ActivityModel::fixed_active_set) {
    if (cfg.active_set.empty())
      throw std::invalid_argument("run_ber: fixed_active_set needs a nonempty active set");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int u : cfg.active_set) {
      if (u < 0 || u >= n) throw std::invalid_argument("run_ber: active user out of range");
      if (seen[static_cast<size_t>(u)]) throw std::invalid_argument("run_ber: duplicate active user");
      seen[static_cast<size_t>(u)] = 1;
    }
  }

  BerCurve curve;
  curve.points.reserve(cfg.ebn0_db.size());
  for (size_t e = 0; e < cfg.ebn0_db.size(); ++e) {
    double sigma = sigma_from_ebn0(cfg.ebn0_db[e], ctx.code.rows());
    std::vector<TrialTally> partial(effective_threads() < cfg.trials ? effective_threads()
                                                                     : static_cast<unsigned>(cfg.trials));
    parallel_chunks(cfg.trials, [&](unsigned chunk, uint64_t begin, uint64_t end) {
      std::vector<int8_t> x(static_cast<size_t>(n));
      std::vector<double> y(static_cast<size_t>(ctx.code.rows()));
      TrialTally local;
      for (uint64_t t = begin; t < end; ++t)
        run_trial(ctx, cfg, sigma, static_cast<uint64_t>(e), t, x, y, local);
      partial[chunk] = local;
    });
    TrialTally total;
    for (const TrialTally& p : partial) {
      total.active_bits += p.active_bits;
      total.bit_errors += p.bit_errors;
      total.inactive_bits += p.inactive_bits;
      total.false_alarms += p.false_alarms;
    }

    BerPoint pt;
    pt.ebn0_db = cfg.ebn0_db[e];
    pt.trials = cfg.trials;
    pt.active_bits = total.active_bits;
    pt.bit_errors = total.bit_errors;
    pt.inactive_bits = total.inactive_bits;
    pt.false_alarms = total.false_alarms;
    pt.ber = total.active_bits ? static_cast<double>(total.bit_errors) / static_cast<double>(total.active_bits)
                               : 0.0;
    pt.false_alarm = total.inactive_bits
                         ? static_cast<double>(total.false_alarms) / static_cast<double>(total.inactive_bits)
                         : 0.0;
    curve.points.push_back(pt);
  }
  return curve;
}

std::string csv_number(double v) {
  // The plain overload emits the shortest round-tripping form and prefers
  // fixed notation when it is no longer ("10", not "1e+01").
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_ber_csv(std::ostream& out, const BerCurve& curve, int chips) {
  out << "# noise convention: sigma = sqrt(m / (2 * 10^(ebn0_db/10))) with m = " << chips
      << " chips and unit-amplitude antipodal signatures\n";
  out << "ebn0_db,ber,false_alarm,trials,active_bits\n";
  for (const BerPoint& pt : curve.points) {
    out << csv_number(pt.ebn0_db) << ',' << csv_number(pt.ber) << ','
        << csv_number(pt.false_alarm) << ',' << pt.trials << ',' << pt.active_bits << '\n';
  }
}

void write_ber_csv_file(const std::string& path, const BerCurve& curve, int chips) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("write_ber_csv_file: cannot open " + path);
  write_ber_csv(out, curve, chips);
  out.flush();
  if (!out) throw std::runtime_error("write_ber_csv_file: write failed for " + path);
}

}  // namespace cowda
