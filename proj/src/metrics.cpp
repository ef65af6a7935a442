#include "tap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tap/format.hpp"

namespace tap {

double percentile_sorted(std::span<const double> sorted, double pct) {
  if (sorted.empty()) return 0.0;
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

namespace {

double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

struct Quantiles {
  double mean, p50, p95, p99;
};

Quantiles summarize(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  return Quantiles{mean_of(values), percentile_sorted(values, 50.0),
                   percentile_sorted(values, 95.0),
                   percentile_sorted(values, 99.0)};
}

}  // namespace

MetricsReport aggregate(std::span<const Job> completed, double warmup_fraction,
                        int n_hosts) {
  if (warmup_fraction < 0.0 || warmup_fraction >= 1.0) {
    throw std::invalid_argument("aggregate: warmup_fraction must be in [0,1)");
  }
  if (n_hosts < 1) {
    throw std::invalid_argument("aggregate: n_hosts must be >= 1");
  }

  MetricsReport r;
  r.host_fractions.assign(static_cast<std::size_t>(n_hosts), 0.0);

  const auto skip = static_cast<std::size_t>(
      std::floor(warmup_fraction * static_cast<double>(completed.size())));
  const std::span<const Job> kept = completed.subspan(skip);
  r.jobs = kept.size();
  if (kept.empty()) return r;

  std::vector<double> et, rt_host, rt_ctrl;
  et.reserve(kept.size());
  rt_host.reserve(kept.size());
  rt_ctrl.reserve(kept.size());
  for (const Job& j : kept) {
    et.push_back(j.execution_time());
    rt_host.push_back(j.response_time_host());
    rt_ctrl.push_back(j.response_time_controller());
    if (j.host_assigned < 0 || j.host_assigned >= n_hosts) {
      throw std::invalid_argument("aggregate: job assigned to unknown host");
    }
    r.host_fractions[static_cast<std::size_t>(j.host_assigned)] += 1.0;
  }
  for (double& f : r.host_fractions) f /= static_cast<double>(kept.size());

  const Quantiles qet = summarize(et);
  r.mean_et = qet.mean;
  r.p50_et = qet.p50;
  r.p95_et = qet.p95;
  r.p99_et = qet.p99;
  const Quantiles qrh = summarize(rt_host);
  r.mean_rt_host = qrh.mean;
  r.p50_rt_host = qrh.p50;
  r.p95_rt_host = qrh.p95;
  r.p99_rt_host = qrh.p99;
  const Quantiles qrc = summarize(rt_ctrl);
  r.mean_rt_ctrl = qrc.mean;
  r.p50_rt_ctrl = qrc.p50;
  r.p95_rt_ctrl = qrc.p95;
  r.p99_rt_ctrl = qrc.p99;
  return r;
}

namespace {

bool report_order(const MetricsReport& a, const MetricsReport& b) {
  if (a.scenario != b.scenario) return a.scenario < b.scenario;
  if (a.policy != b.policy) return a.policy < b.policy;
  return a.lambda < b.lambda;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string to_csv(std::span<const MetricsReport> reports) {
  std::size_t n_hosts = 0;
  for (const MetricsReport& r : reports) {
    if (n_hosts == 0) {
      n_hosts = r.host_fractions.size();
    } else if (r.host_fractions.size() != n_hosts) {
      throw std::invalid_argument("to_csv: mixed host counts across reports");
    }
  }

  std::vector<const MetricsReport*> sorted;
  sorted.reserve(reports.size());
  for (const MetricsReport& r : reports) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const MetricsReport* a, const MetricsReport* b) {
                     return report_order(*a, *b);
                   });

  std::ostringstream out;
  out << "scenario,policy,goal,arrival_kind,lambda,jobs,mean_et,mean_rt_host,"
         "mean_rt_ctrl,p95_rt_ctrl";
  for (std::size_t h = 1; h <= n_hosts; ++h) out << ",frac_host_" << h;
  out << ",overflow\n";

  for (const MetricsReport* r : sorted) {
    for (const std::string* s : {&r->scenario, &r->policy, &r->goal,
                                 &r->arrival_kind}) {
      if (s->find(',') != std::string::npos ||
          s->find('\n') != std::string::npos) {
        throw std::invalid_argument("to_csv: field contains a delimiter: " + *s);
      }
    }
    out << r->scenario << ',' << r->policy << ',' << r->goal << ','
        << r->arrival_kind << ',' << format_sig6(r->lambda) << ',' << r->jobs
        << ',' << format_sig6(r->mean_et) << ',' << format_sig6(r->mean_rt_host)
        << ',' << format_sig6(r->mean_rt_ctrl) << ','
        << format_sig6(r->p95_rt_ctrl);
    for (double f : r->host_fractions) out << ',' << format_sig6(f);
    out << ',' << (r->overflow ? '1' : '0') << '\n';
  }
  return out.str();
}

std::vector<MetricsReport> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("parse_csv: missing header");
  }
  const std::vector<std::string> header = split_csv_line(line);
  std::size_t n_hosts = 0;
  for (const std::string& col : header) {
    if (col.rfind("frac_host_", 0) == 0) ++n_hosts;
  }
  const std::size_t expected = 11 + n_hosts;
  if (header.size() != expected) {
    throw std::invalid_argument("parse_csv: unexpected header layout");
  }

  std::vector<MetricsReport> reports;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != expected) {
      throw std::invalid_argument("parse_csv: bad field count in row");
    }
    MetricsReport r;
    r.scenario = f[0];
    r.policy = f[1];
    r.goal = f[2];
    r.arrival_kind = f[3];
    r.lambda = std::stod(f[4]);
    r.jobs = std::stoull(f[5]);
    r.mean_et = std::stod(f[6]);
    r.mean_rt_host = std::stod(f[7]);
    r.mean_rt_ctrl = std::stod(f[8]);
    r.p95_rt_ctrl = std::stod(f[9]);
    for (std::size_t h = 0; h < n_hosts; ++h) {
      r.host_fractions.push_back(std::stod(f[10 + h]));
    }
    r.overflow = f[10 + n_hosts] == "1";
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace tap
