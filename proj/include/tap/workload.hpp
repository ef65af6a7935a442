#pragma once

#include <cstdint>

#include "tap/rng.hpp"

namespace tap {

// One unit of work and its lifecycle timestamps (seconds of simulated time).
// Timestamps are filled in as the job moves controller -> host -> controller
// and stay monotone: arrive <= dispatched <= start <= finish <= ack.
struct Job {
  static constexpr double kUnset = -1.0;

  std::uint64_t id = 0;
  double t_arrive_controller = kUnset;
  double t_dispatched = kUnset;
  double t_start_host = kUnset;
  double t_finish_host = kUnset;
  double t_ack_controller = kUnset;
  double demand = 0.0;      // seconds of solo work on the reference host
  int host_assigned = -1;   // 0-based host index

  bool completed() const { return t_ack_controller >= 0.0; }
  double execution_time() const { return t_finish_host - t_start_host; }
  double response_time_host() const { return t_finish_host - t_start_host; }
  double response_time_controller() const {
    return t_ack_controller - t_arrive_controller;
  }
};

enum class ArrivalKind { CR, EXP };

// Sequential arrival-time generator. CR places arrival k exactly at k/rate
// (computed as k/rate, not by accumulation, so there is no float drift); EXP
// adds i.i.d. exponential gaps with mean 1/rate. Identical seeds reproduce
// identical sequences.
class ArrivalProcess {
 public:
  ArrivalProcess(ArrivalKind kind, double rate, std::uint64_t seed);

  // Time of the next arrival after t_now. Calls are expected in sequence,
  // each passing the previously returned arrival time (or 0 initially).
  double next_arrival(double t_now);

  ArrivalKind kind() const { return kind_; }
  double rate() const { return rate_; }

 private:
  ArrivalKind kind_;
  double rate_;
  std::uint64_t count_ = 0;
  Rng rng_;
};

enum class DemandKind { Deterministic, Exponential };

// Job service demand in seconds of solo work on the reference host. The
// default matches the measured solo time of the reference job (64.1 ms).
struct DemandSpec {
  DemandKind kind = DemandKind::Deterministic;
  double mean = 0.0641;
};

void validate_demand(const DemandSpec& spec);
double make_demand(const DemandSpec& spec, Rng& rng);

}  // namespace tap
