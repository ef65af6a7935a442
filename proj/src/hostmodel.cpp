#include "tap/hostmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tap {

double InterferenceCurve::ratio_at(int l) const {
  if (l < 1) throw std::invalid_argument("interference ratio: l must be >= 1");
  if (l <= table_max()) return ratios[static_cast<std::size_t>(l)];
  return aggregate_factor / static_cast<double>(l);
}

void InterferenceCurve::validate() const {
  if (table_max() < 1) {
    throw std::invalid_argument("interference curve: empty ratio table");
  }
  if (std::abs(ratios[1] - 1.0) > 1e-12) {
    throw std::invalid_argument("interference curve: ratios[1] must be 1");
  }
  if (!(aggregate_factor > 0.0)) {
    throw std::invalid_argument(
        "interference curve: aggregate_factor must be > 0");
  }
  for (int l = 2; l <= table_max(); ++l) {
    const double r = ratios[static_cast<std::size_t>(l)];
    if (r > ratios[static_cast<std::size_t>(l - 1)] + 1e-12) {
      throw std::invalid_argument(
          "interference curve: ratios must be non-increasing in l");
    }
    if (!(r > 0.0)) {
      throw std::invalid_argument("interference curve: ratios must be > 0");
    }
    if (std::abs(l * r - aggregate_factor) > fit_tolerance) {
      throw std::invalid_argument(
          "interference curve: l*ratio(l) deviates from aggregate_factor "
          "beyond fit_tolerance at l=" +
          std::to_string(l));
    }
  }
}

InterferenceCurve default_interference() {
  InterferenceCurve c;
  c.ratios = {0.0, 1.0, 0.67, 0.48, 0.34, 0.29,
              0.23, 0.20, 0.17, 0.15, 0.13};
  c.aggregate_factor = 1.386;
  c.fit_tolerance = 0.35;
  return c;
}

namespace {

void check_birth_death(const BirthDeathParams& p) {
  if (!(p.mu1 > 0.0) || !(p.mu0 > 0.0)) {
    throw std::invalid_argument("birth-death: service rates must be > 0");
  }
  if (p.lambda < 0.0) {
    throw std::invalid_argument("birth-death: lambda must be >= 0");
  }
  if (p.lambda >= p.mu0) {
    throw UnstableParams("birth-death: lambda >= mu0, no steady state");
  }
}

}  // namespace

double steady_state_p0(const BirthDeathParams& p) {
  check_birth_death(p);
  const double rho0 = p.lambda / p.mu0;
  return (1.0 - rho0) /
         (1.0 + p.lambda * (p.mu0 - p.mu1) / (p.mu0 * p.mu1));
}

double steady_state_prob(const BirthDeathParams& p, int l) {
  if (l < 0) throw std::invalid_argument("steady_state_prob: l must be >= 0");
  const double p0 = steady_state_p0(p);
  if (l == 0) return p0;
  const double p1 = p0 * p.lambda / p.mu1;
  if (l == 1) return p1;
  return p1 * std::pow(p.lambda / p.mu0, l - 1);
}

double mean_response_time(const BirthDeathParams& p) {
  const double p0 = steady_state_p0(p);
  const double slack = 1.0 - p.lambda / p.mu0;
  return p0 / (p.mu1 * slack * slack);
}

Host::Host(HostProfile profile, HostMode mode, double demand_unit)
    : profile_(std::move(profile)), mode_(mode), demand_unit_(demand_unit) {
  if (!(demand_unit_ > 0.0)) {
    throw std::invalid_argument("host: demand_unit must be > 0");
  }
  if (!(profile_.mu1 > 0.0) || !(profile_.speed_factor > 0.0)) {
    throw std::invalid_argument("host: mu1 and speed_factor must be > 0");
  }
  if (profile_.cores < 1) {
    throw std::invalid_argument("host: cores must be >= 1");
  }
  profile_.interference.validate();
}

double Host::per_job_speed() const {
  const int l = occupancy();
  if (l == 0) return 0.0;
  return profile_.speed_factor * profile_.mu1 *
         profile_.interference.ratio_at(l) * demand_unit_;
}

double Host::departure_rate() const {
  const int l = occupancy();
  if (l == 0) return 0.0;
  if (l == 1) return profile_.effective_mu1();
  return profile_.effective_mu0();
}

void Host::advance(double t_now) {
  if (t_now < t_last_ - 1e-12) {
    throw std::invalid_argument("host: cannot advance by a negative dt");
  }
  const double dt = std::max(0.0, t_now - t_last_);
  if (mode_ == HostMode::Shared && dt > 0.0 && !jobs_.empty()) {
    const double progressed = per_job_speed() * dt;
    for (InService& j : jobs_) {
      j.done = std::min(j.demand, j.done + progressed);
    }
  }
  t_last_ = std::max(t_last_, t_now);
}

bool Host::admit(std::uint64_t job_id, double demand, double t_now) {
  if (!(demand > 0.0)) {
    throw std::invalid_argument("host: job demand must be > 0");
  }
  advance(t_now);
  if (occupancy() >= kOccupancyCap) return false;
  jobs_.push_back(InService{job_id, demand, 0.0});
  ++epoch_;
  return true;
}

double Host::next_departure(double t_now, Rng& service_rng) {
  advance(t_now);
  if (jobs_.empty()) return std::numeric_limits<double>::infinity();
  if (mode_ == HostMode::Markov) {
    return t_now + service_rng.exponential(departure_rate());
  }
  const double speed = per_job_speed();
  double remaining = std::numeric_limits<double>::infinity();
  for (const InService& j : jobs_) {
    remaining = std::min(remaining, j.demand - j.done);
  }
  return t_now + remaining / speed;
}

std::uint64_t Host::complete_next(double t_now, Rng& service_rng) {
  advance(t_now);
  if (jobs_.empty()) {
    throw std::logic_error("host: complete_next on an empty host");
  }
  std::size_t victim = 0;
  if (mode_ == HostMode::Markov) {
    victim = service_rng.uniform_index(jobs_.size());
  } else {
    // The scheduled departure is the job with the least remaining work;
    // ties resolve to the earliest admission.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < jobs_.size(); ++i) {
      const double rem = jobs_[i].demand - jobs_[i].done;
      if (rem < best) {
        best = rem;
        victim = i;
      }
    }
  }
  const std::uint64_t id = jobs_[victim].job_id;
  jobs_.erase(jobs_.begin() + static_cast<std::ptrdiff_t>(victim));
  ++epoch_;
  return id;
}

}  // namespace tap
