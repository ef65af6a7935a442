#include "tap/allocation_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "tap/format.hpp"

namespace tap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(std::span<const BirthDeathParams> hosts, double lambda) {
  if (hosts.empty()) {
    throw std::invalid_argument("allocation: need at least one host");
  }
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("allocation: lambda must be > 0");
  }
  for (const BirthDeathParams& h : hosts) {
    if (!(h.mu1 > 0.0) || !(h.mu0 > 0.0)) {
      throw std::invalid_argument("allocation: service rates must be > 0");
    }
  }
}

// Enumerates compositions of `total` into n parts, invoking fn on each.
void for_each_composition(int n, int total,
                          std::vector<int>& parts,
                          const std::function<void()>& fn, int index = 0) {
  if (index == n - 1) {
    parts[static_cast<std::size_t>(index)] = total;
    fn();
    return;
  }
  for (int c = 0; c <= total; ++c) {
    parts[static_cast<std::size_t>(index)] = c;
    for_each_composition(n, total - c, parts, fn, index + 1);
  }
}

}  // namespace

double allocation_objective(std::span<const BirthDeathParams> hosts,
                            double lambda, std::span<const double> probs) {
  double total = 0.0;
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    const double p = probs[i];
    if (p < 0.0) return kInf;
    if (p == 0.0) continue;
    BirthDeathParams h = hosts[i];
    h.lambda = p * lambda;
    if (h.lambda >= h.mu0 * (1.0 - 1e-12)) return kInf;
    total += p * mean_response_time(h);
  }
  return total;
}

AllocationResult optimize_allocation(std::span<const BirthDeathParams> hosts,
                                     double lambda, double grid_resolution,
                                     double refine_resolution) {
  check_inputs(hosts, lambda);
  const int n = static_cast<int>(hosts.size());

  double mu0_sum = 0.0;
  for (const BirthDeathParams& h : hosts) mu0_sum += h.mu0;
  if (lambda >= mu0_sum) {
    throw InfeasibleAllocation(
        "allocation: lambda >= total aggregate service rate; no stable split");
  }

  if (n == 1) {
    std::vector<double> p{1.0};
    return AllocationResult{p, allocation_objective(hosts, lambda, p)};
  }

  std::vector<double> best;
  double best_obj = kInf;
  const auto consider = [&](const std::vector<double>& cand) {
    const double obj = allocation_objective(hosts, lambda, cand);
    if (obj < best_obj) {
      best_obj = obj;
      best = cand;
    }
  };

  // Splitting proportionally to the aggregate rates is always stable when the
  // problem is feasible, so the search never starts from an empty candidate
  // set even if every grid point lands in an unstable corner.
  {
    std::vector<double> prop(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      prop[static_cast<std::size_t>(i)] = hosts[static_cast<std::size_t>(i)].mu0 / mu0_sum;
    }
    consider(prop);
  }

  const int steps = std::max(1, static_cast<int>(std::lround(1.0 / grid_resolution)));
  {
    std::vector<int> parts(static_cast<std::size_t>(n), 0);
    std::vector<double> cand(static_cast<std::size_t>(n), 0.0);
    for_each_composition(n, steps, parts, [&] {
      for (int i = 0; i < n; ++i) {
        cand[static_cast<std::size_t>(i)] =
            static_cast<double>(parts[static_cast<std::size_t>(i)]) / steps;
      }
      consider(cand);
    });
  }

  // Local refinement: move mass delta between host pairs while it strictly
  // improves the objective, halving delta down to the target resolution.
  std::vector<double> cand(static_cast<std::size_t>(n));
  for (double delta = grid_resolution; delta >= refine_resolution; delta /= 2.0) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j || best[static_cast<std::size_t>(j)] < delta) continue;
          cand = best;
          cand[static_cast<std::size_t>(i)] += delta;
          cand[static_cast<std::size_t>(j)] -= delta;
          const double obj = allocation_objective(hosts, lambda, cand);
          if (obj < best_obj) {
            best_obj = obj;
            best = cand;
            improved = true;
          }
        }
      }
    }
  }

  double sum = 0.0;
  for (double v : best) sum += v;
  for (double& v : best) v /= sum;
  best_obj = allocation_objective(hosts, lambda, best);
  return AllocationResult{std::move(best), best_obj};
}

void write_allocation_surface(std::span<const BirthDeathParams> hosts,
                              double lambda, double resolution,
                              std::ostream& out) {
  check_inputs(hosts, lambda);
  if (hosts.size() != 3) {
    throw std::invalid_argument("allocation surface: exactly 3 hosts required");
  }
  const int steps = std::max(1, static_cast<int>(std::lround(1.0 / resolution)));
  out << "lambda_1,lambda_2,mean_rt\n";
  std::vector<double> p(3, 0.0);
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps - i; ++j) {
      p[0] = static_cast<double>(i) / steps;
      p[1] = static_cast<double>(j) / steps;
      p[2] = static_cast<double>(steps - i - j) / steps;
      const double obj = allocation_objective(hosts, lambda, p);
      out << format_sig6(p[0] * lambda) << ',' << format_sig6(p[1] * lambda)
          << ',' << (std::isfinite(obj) ? format_sig6(obj) : "inf") << '\n';
    }
  }
}

}  // namespace tap
