#include "tap/workload.hpp"

#include <cmath>
#include <stdexcept>

namespace tap {

ArrivalProcess::ArrivalProcess(ArrivalKind kind, double rate,
                               std::uint64_t seed)
    : kind_(kind), rate_(rate), rng_(seed) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("arrival rate must be a positive finite value");
  }
}

double ArrivalProcess::next_arrival(double t_now) {
  if (t_now < 0.0) {
    throw std::invalid_argument("next_arrival: t_now must be >= 0");
  }
  ++count_;
  if (kind_ == ArrivalKind::CR) {
    return static_cast<double>(count_) / rate_;
  }
  return t_now + rng_.exponential(rate_);
}

void validate_demand(const DemandSpec& spec) {
  if (!(spec.mean > 0.0) || !std::isfinite(spec.mean)) {
    throw std::invalid_argument("demand mean must be a positive finite value");
  }
}

double make_demand(const DemandSpec& spec, Rng& rng) {
  validate_demand(spec);
  if (spec.kind == DemandKind::Deterministic) return spec.mean;
  return rng.exponential(1.0 / spec.mean);
}

}  // namespace tap
