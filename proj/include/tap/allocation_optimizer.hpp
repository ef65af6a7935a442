#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tap/hostmodel.hpp"

namespace tap {

struct InfeasibleAllocation : std::domain_error {
  explicit InfeasibleAllocation(const std::string& what)
      : std::domain_error(what) {}
};

struct AllocationResult {
  std::vector<double> probs;
  double mean_rt = 0.0;
};

// Overall mean response time sum_i p_i * W_i(p_i * lambda) for a candidate
// split. Returns +inf when any loaded host would be unstable. The lambda
// field of each entry is ignored; mu1/mu0 describe the host.
double allocation_objective(std::span<const BirthDeathParams> hosts,
                            double lambda, std::span<const double> probs);

// Minimizes the overall mean response time over the probability simplex,
// restricted to splits that keep every loaded host stable. An exhaustive
// simplex grid at grid_resolution seeds a deterministic local refinement
// (pairwise mass transfers with halving steps) down to refine_resolution.
// Throws InfeasibleAllocation when lambda >= sum_i mu0_i.
AllocationResult optimize_allocation(std::span<const BirthDeathParams> hosts,
                                     double lambda,
                                     double grid_resolution = 0.01,
                                     double refine_resolution = 1e-5);

// Emits the three-host response-time surface as CSV rows
// (lambda_1, lambda_2, mean_rt); the third rate is implied by the total.
// Unstable cells carry "inf".
void write_allocation_surface(std::span<const BirthDeathParams> hosts,
                              double lambda, double resolution,
                              std::ostream& out);

}  // namespace tap
