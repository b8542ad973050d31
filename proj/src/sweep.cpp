#include "sweep.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <system_error>

#include "parallel.hpp"

namespace qcoh {

const char kSweepCsvHeader[] = "channel,measure,c1,c2,c3,mu,p,value";

void validate(const SweepSpec& spec) {
  if (spec.mu_list.empty())
    throw std::invalid_argument("sweep: mu_list must be non-empty");
  for (double mu : spec.mu_list)
    if (!(mu >= 0.0 && mu <= 1.0))
      throw std::invalid_argument("sweep: mu values must be in [0,1]");
  if (!spec.p_list.empty()) {
    const std::size_t n = spec.p_list.size();
    if (n < kSweepMinPCount || n > kSweepMaxPCount)
      throw std::invalid_argument("sweep: p_list size must be in [2, 10001]");
    for (std::size_t i = 0; i < n; ++i) {
      if (!(spec.p_list[i] >= 0.0 && spec.p_list[i] <= 1.0))
        throw std::invalid_argument("sweep: p values must be in [0,1]");
      if (i > 0 && spec.p_list[i] < spec.p_list[i - 1])
        throw std::invalid_argument("sweep: p_list must be nondecreasing");
    }
  } else {
    if (!(spec.p_start >= 0.0 && spec.p_start <= 1.0) ||
        !(spec.p_stop >= 0.0 && spec.p_stop <= 1.0))
      throw std::invalid_argument("sweep: p grid bounds must be inside [0,1]");
    if (spec.p_start > spec.p_stop)
      throw std::invalid_argument("sweep: p_start must not exceed p_stop");
    if (spec.p_count < kSweepMinPCount || spec.p_count > kSweepMaxPCount)
      throw std::invalid_argument("sweep: p_count must be in [2, 10001]");
  }
  bell_diagonal(spec.c);  // validates the input state
}

std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  if (res.ec != std::errc{})
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

const char* measure_name(MeasureKind m) {
  return m == MeasureKind::L1Norm ? "l1" : "re";
}

std::string run_sweep_csv(const SweepSpec& spec, unsigned workers) {
  validate(spec);

  std::vector<double> mus = spec.mu_list;
  std::sort(mus.begin(), mus.end());

  std::vector<double> ps = spec.p_list;
  if (ps.empty()) {
    ps.resize(static_cast<std::size_t>(spec.p_count));
    for (int i = 0; i < spec.p_count; ++i)
      ps[static_cast<std::size_t>(i)] =
          spec.p_start + (spec.p_stop - spec.p_start) *
                             (static_cast<double>(i) / (spec.p_count - 1));
  }

  const bool want_l1 = spec.measure != SweepMeasure::RelativeEntropyOnly;
  const bool want_re = spec.measure != SweepMeasure::L1Only;
  const DensityMatrix rho = bell_diagonal(spec.c);

  struct Cell {
    double l1 = 0.0, re = 0.0;
  };
  std::vector<Cell> cells(mus.size() * ps.size());
  parallel_for(cells.size(), workers, [&](std::size_t idx) {
    const double mu = mus[idx / ps.size()];
    const double p = ps[idx % ps.size()];
    const DensityMatrix out =
        apply(build_channel(spec.channel, p, mu, spec.literal_text_probs), rho);
    if (want_l1) cells[idx].l1 = l1_coherence(out);
    if (want_re) cells[idx].re = relative_entropy_coherence(out);
  });

  const std::string prefix_c = std::string(channel_name(spec.channel)) + ",";
  const std::string suffix_c = "," + format_double(spec.c.c1) + "," +
                               format_double(spec.c.c2) + "," +
                               format_double(spec.c.c3) + ",";
  std::string csv = kSweepCsvHeader;
  csv += '\n';
  for (std::size_t im = 0; im < mus.size(); ++im) {
    const std::string mu_s = format_double(mus[im]);
    for (std::size_t ip = 0; ip < ps.size(); ++ip) {
      const Cell& cell = cells[im * ps.size() + ip];
      const std::string p_s = format_double(ps[ip]);
      // "l1" sorts before "re".
      if (want_l1)
        csv += prefix_c + "l1" + suffix_c + mu_s + "," + p_s + "," +
               format_double(cell.l1) + "\n";
      if (want_re)
        csv += prefix_c + "re" + suffix_c + mu_s + "," + p_s + "," +
               format_double(cell.re) + "\n";
    }
  }
  return csv;
}

}  // namespace qcoh
