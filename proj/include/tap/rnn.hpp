#pragma once

#include <vector>

namespace tap {

// Random Neural Network with one neuron per host. The equilibrium excitation
// probabilities q rank the hosts; reinforcement from goal measurements shifts
// excitatory weight toward hosts that beat the smoothed decision threshold
// and inhibitory weight toward the rest.
struct RnnState {
  int n = 0;
  std::vector<double> w_plus;          // n*n row-major, w[i*n+j]: i -> j
  std::vector<double> w_minus;         // zero diagonals
  std::vector<double> external_excite; // Lambda(i)
  std::vector<double> external_inhibit;
  std::vector<double> firing;          // stored r(i); renormalization keeps it fixed
  std::vector<double> q;               // equilibrium excitation probabilities

  double threshold = 0.0;
  bool threshold_set = false;
  double alpha = 0.9;        // history weight in the threshold update
  bool renormalize = true;   // rescale each row after an update so r(i) is invariant

  double wp(int i, int j) const { return w_plus[static_cast<std::size_t>(i) * n + j]; }
  double wm(int i, int j) const { return w_minus[static_cast<std::size_t>(i) * n + j]; }
  double& wp(int i, int j) { return w_plus[static_cast<std::size_t>(i) * n + j]; }
  double& wm(int i, int j) { return w_minus[static_cast<std::size_t>(i) * n + j]; }
};

struct SolveResult {
  int sweeps = 0;
  double residual = 0.0;
  bool converged = true;
};

// Symmetric starting state: off-diagonal weights 1/(2(n-1)) in both matrices,
// zero self-weights, external excitation 0.25, firing rate 1, q = 0.5. All
// hosts start equally ranked.
RnnState rnn_init(int n, double alpha = 0.9, bool renormalize = true);

// Total activity rate of neuron i: the row sum of both weight matrices.
double firing_rate(const RnnState& state, int i);

// Right-hand side of the equilibrium equation for neuron i, clamped to [0,1]:
//   (Lambda(i) + sum_j q_j w+(j,i)) / (r(i) + lambda(i) + sum_j q_j w-(j,i)).
double equilibrium_rhs(const RnnState& state, int i);

// Fixed-point iteration (Jacobi sweeps) from the current q until the max-abs
// change drops below 1e-10, up to 10000 sweeps. Non-convergence is reported
// in the result; the last iterate is kept.
SolveResult solve_equilibrium(RnnState& state);

// Applies one goal measurement G for the given decided host. The first sample
// only seeds the threshold; every later sample updates the threshold
// T <- alpha*T + (1-alpha)*G first, then reinforces the decided host when
// G < T (strictly) and penalizes it otherwise. Rows are renormalized to keep
// r(i) fixed, then the equilibrium is re-solved.
SolveResult reinforce(RnnState& state, int host, double goal_value);

// Argmax of q; ties resolve to the lowest host index.
int best_host(const RnnState& state);

}  // namespace tap
