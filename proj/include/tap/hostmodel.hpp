#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tap/rng.hpp"

namespace tap {

// Thrown by the birth-death formulas when the arrival rate reaches or exceeds
// the aggregate completion rate (lambda >= mu0).
struct UnstableParams : std::domain_error {
  explicit UnstableParams(const std::string& what) : std::domain_error(what) {}
};

// Measured per-job completion-rate degradation gamma(l)/gamma(1) versus the
// number of concurrently running jobs l. The table covers l = 1..table_max();
// beyond it the total completion rate is held constant, i.e.
// ratio(l) = aggregate_factor / l.
struct InterferenceCurve {
  std::vector<double> ratios;     // 1-indexed; ratios[0] is a placeholder
  double aggregate_factor = 1.0;  // c: total completion rate at l >= 2 is c*mu1
  double fit_tolerance = 0.35;    // allowed |l*ratio(l) - c| over the table

  int table_max() const { return static_cast<int>(ratios.size()) - 1; }
  double ratio_at(int l) const;
  void validate() const;
};

// The degradation curve measured on the reference host: per-job ratios for
// l = 2..10 with aggregate factor 1.386.
InterferenceCurve default_interference();

struct HostProfile {
  int id = 0;
  double mu1 = 15.6;         // completion rate of a lone reference job, 1/T_solo
  int cores = 1;             // descriptive only; not used by the service model
  double speed_factor = 1.0; // relative processing speed (heterogeneous clusters)
  InterferenceCurve interference = default_interference();

  double effective_mu1() const { return mu1 * speed_factor; }
  double effective_mu0() const {
    return interference.aggregate_factor * effective_mu1();
  }
};

// Birth-death chain on host occupancy: up-rate lambda, down-rate mu1 out of
// state 1 and the quasi-constant aggregate mu0 out of states l >= 2.
struct BirthDeathParams {
  double lambda = 0.0;
  double mu1 = 1.0;
  double mu0 = 1.0;
};

// Probability of an empty host in steady state.
double steady_state_p0(const BirthDeathParams& p);

// Steady-state probability of occupancy l:
//   p(1) = p(0) * lambda/mu1,  p(l) = (lambda/mu0)^(l-1) * p(1) for l > 1.
double steady_state_prob(const BirthDeathParams& p, int l);

// Mean time a job spends at the host: mean occupancy over the arrival rate
// (Little's law), which reduces to p(0) / (mu1 * (1 - lambda/mu0)^2).
double mean_response_time(const BirthDeathParams& p);

enum class HostMode { Shared, Markov };

// Admissions beyond this occupancy are rejected and surfaced in metrics;
// a host this far behind signals an unstable scenario.
inline constexpr int kOccupancyCap = 10000;

// Live occupancy of one host.
//
// Shared mode: all l in-service jobs progress simultaneously, each at
// speed_factor * mu1 * ratio(l) * demand_unit work-seconds per second;
// remaining times are recomputed on every occupancy change. demand_unit is
// the scenario-level solo time of the reference job, anchoring job demands
// (given in seconds of reference work) to the profile rates.
//
// Markov mode: memoryless; the time to the next departure is exponential at
// rate mu1*speed_factor (l == 1) or mu0*speed_factor (l >= 2) and the
// departing job is chosen uniformly. Used to validate the analytic model.
class Host {
 public:
  Host(HostProfile profile, HostMode mode, double demand_unit);

  // Admits a job at t_now; returns false when the occupancy cap is reached.
  bool admit(std::uint64_t job_id, double demand, double t_now);

  // Brings work accounting up to t_now. Rejects going backwards in time.
  void advance(double t_now);

  // Time of the next departure assuming no further occupancy change, or +inf
  // when idle. In Markov mode this consumes one exponential draw, so callers
  // must query exactly once per occupancy change and reschedule afterwards.
  double next_departure(double t_now, Rng& service_rng);

  // Removes and returns the departing job at time t_now.
  std::uint64_t complete_next(double t_now, Rng& service_rng);

  int occupancy() const { return static_cast<int>(jobs_.size()); }
  std::uint64_t epoch() const { return epoch_; }
  const HostProfile& profile() const { return profile_; }
  HostMode mode() const { return mode_; }

  // Shared-mode per-job speed at the current occupancy, in work-seconds/s.
  double per_job_speed() const;
  // Markov-mode total departure rate at the current occupancy.
  double departure_rate() const;

 private:
  struct InService {
    std::uint64_t job_id;
    double demand;
    double done = 0.0;  // work-seconds processed; done <= demand
  };

  HostProfile profile_;
  HostMode mode_;
  double demand_unit_;
  double t_last_ = 0.0;
  std::uint64_t epoch_ = 0;
  std::vector<InService> jobs_;
};

}  // namespace tap
