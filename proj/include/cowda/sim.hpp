#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cowda/decode.hpp"

namespace cowda {

// Noise scale for a target Eb/N0: one active user's bit rides a full +-1
// signature column, so Eb = m (chip count) at unit amplitude, and N0 = 2
// sigma^2. Hence sigma = sqrt(m / (2 * 10^(dB/10))).
double sigma_from_ebn0(double ebn0_db, int m);

enum class ActivityModel { iid_ternary_uniform, fixed_active_set };
enum class SimMetric { per_user_ml, joint_detect };

struct SimConfig {
  std::vector<double> ebn0_db;
  uint64_t trials = 1000;
  uint64_t seed = 0;
  ActivityModel activity = ActivityModel::iid_ternary_uniform;
  std::vector<int> active_set;  // used by fixed_active_set
  SimMetric metric = SimMetric::per_user_ml;
};

struct BerPoint {
  double ebn0_db = 0.0;
  double ber = 0.0;          // active-bit error rate
  double false_alarm = 0.0;  // inactive users declared active (joint mode)
  uint64_t trials = 0;
  uint64_t active_bits = 0;
  uint64_t bit_errors = 0;
  uint64_t inactive_bits = 0;
  uint64_t false_alarms = 0;
};

struct BerCurve {
  std::vector<BerPoint> points;
};

// Seeded Monte-Carlo sweep. Trial t at Eb/N0 index e reads substream
// hash(e, t): the input vector first, then the chip noise, so results are
// identical for any thread count and any trial execution order.
BerCurve run_ber(const DecoderContext& ctx, const SimConfig& cfg);

// Locale-independent shortest round-trip rendering; keeps emitted numbers
// byte-identical across runs, platforms, and thread counts.
std::string csv_number(double v);

// CSV with a leading comment line recording the noise convention.
// Columns: ebn0_db,ber,false_alarm,trials,active_bits
void write_ber_csv(std::ostream& out, const BerCurve& curve, int chips);
void write_ber_csv_file(const std::string& path, const BerCurve& curve, int chips);

}  // namespace cowda
