#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tap/workload.hpp"

namespace tap {

// Per-(scenario, policy, lambda) aggregates over post-warmup completed jobs:
// execution time at the host, response time at the host, response time at the
// controller, and the per-host allocation split.
struct MetricsReport {
  std::string scenario;
  std::string policy;
  std::string goal;
  std::string arrival_kind;
  double lambda = 0.0;

  std::uint64_t jobs = 0;  // post-warmup completions

  double mean_et = 0.0, p50_et = 0.0, p95_et = 0.0, p99_et = 0.0;
  double mean_rt_host = 0.0, p50_rt_host = 0.0, p95_rt_host = 0.0,
         p99_rt_host = 0.0;
  double mean_rt_ctrl = 0.0, p50_rt_ctrl = 0.0, p95_rt_ctrl = 0.0,
         p99_rt_ctrl = 0.0;

  std::vector<double> host_fractions;  // sums to 1 when jobs > 0
  bool overflow = false;               // occupancy cap hit during the run

  // Raw counters (carried into the JSON mirror, not the CSV).
  std::uint64_t arrivals = 0;
  std::uint64_t completions = 0;
  std::uint64_t dropped = 0;
};

// Nearest-rank percentile of a sorted sample.
double percentile_sorted(std::span<const double> sorted, double pct);

// Builds the aggregate over completed jobs, excluding the first
// warmup_fraction of completions (in acknowledgement order). An empty record
// set yields a zero-jobs report.
MetricsReport aggregate(std::span<const Job> completed, double warmup_fraction,
                        int n_hosts);

// One row per report, sorted by (scenario, policy, lambda), numbers in fixed
// decimal with 6 significant digits. Byte-deterministic for identical inputs.
std::string to_csv(std::span<const MetricsReport> reports);

// Parses text produced by to_csv (metric columns only; raw counters are not
// part of the CSV schema).
std::vector<MetricsReport> parse_csv(const std::string& text);

}  // namespace tap
