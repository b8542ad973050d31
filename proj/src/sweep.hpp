// Parameter sweeps over (mu, p) grids rendered as deterministic CSV.
#pragma once

#include <string>
#include <vector>

#include "channels.hpp"
#include "measures.hpp"
#include "states.hpp"

namespace qcoh {

enum class SweepMeasure { L1Only, RelativeEntropyOnly, Both };

struct SweepSpec {
  ChannelKind channel = ChannelKind::AmplitudeDamping;
  SweepMeasure measure = SweepMeasure::Both;
  BellDiagonalParams c{0.1, 0.4, 0.5};
  std::vector<double> mu_list{0.0, 0.3, 0.6, 1.0};
  double p_start = 0.0;
  double p_stop = 1.0;
  int p_count = 101;
  // Non-empty overrides the uniform grid above: explicit nondecreasing p
  // values inside [0,1] (e.g. mapped from a time grid through p_of_t).
  std::vector<double> p_list;
  bool literal_text_probs = false;
};

inline constexpr int kSweepMinPCount = 2;
inline constexpr int kSweepMaxPCount = 10001;

extern const char kSweepCsvHeader[];  // "channel,measure,c1,c2,c3,mu,p,value"

// Throws std::invalid_argument (or InvalidStateError for bad c) naming the
// violated constraint.
void validate(const SweepSpec& spec);

// Shortest decimal form with at most 12 significant digits, '.' separator.
std::string format_double(double v);

const char* measure_name(MeasureKind m);  // "l1", "re"

// Header plus one row per (mu, p, measure), LF line endings, ordered by
// (mu ascending, p ascending, measure name ascending); byte-identical for
// any worker count.
std::string run_sweep_csv(const SweepSpec& spec, unsigned workers = 0);

}  // namespace qcoh
