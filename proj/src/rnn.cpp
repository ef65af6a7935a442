#include "tap/rnn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tap {

namespace {
constexpr double kSolveTol = 1e-10;
constexpr int kMaxSweeps = 10000;
}  // namespace

RnnState rnn_init(int n, double alpha, bool renormalize) {
  if (n < 2) throw std::invalid_argument("rnn: need at least 2 neurons");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("rnn: alpha must be in (0,1)");
  }
  RnnState s;
  s.n = n;
  s.alpha = alpha;
  s.renormalize = renormalize;
  const double w = 1.0 / (2.0 * (n - 1));
  s.w_plus.assign(static_cast<std::size_t>(n) * n, w);
  s.w_minus.assign(static_cast<std::size_t>(n) * n, w);
  for (int i = 0; i < n; ++i) {
    s.wp(i, i) = 0.0;
    s.wm(i, i) = 0.0;
  }
  s.external_excite.assign(n, 0.25);
  s.external_inhibit.assign(n, 0.0);
  s.firing.assign(n, 1.0);
  s.q.assign(n, 0.5);
  return s;
}

double firing_rate(const RnnState& state, int i) {
  double r = 0.0;
  for (int j = 0; j < state.n; ++j) r += state.wp(i, j) + state.wm(i, j);
  return r;
}

double equilibrium_rhs(const RnnState& state, int i) {
  double excite = state.external_excite[static_cast<std::size_t>(i)];
  double inhibit = state.firing[static_cast<std::size_t>(i)] +
                   state.external_inhibit[static_cast<std::size_t>(i)];
  for (int j = 0; j < state.n; ++j) {
    excite += state.q[static_cast<std::size_t>(j)] * state.wp(j, i);
    inhibit += state.q[static_cast<std::size_t>(j)] * state.wm(j, i);
  }
  if (inhibit <= 0.0) return excite > 0.0 ? 1.0 : 0.0;
  return std::min(1.0, excite / inhibit);
}

SolveResult solve_equilibrium(RnnState& state) {
  SolveResult res;
  std::vector<double> next(static_cast<std::size_t>(state.n));
  for (res.sweeps = 1; res.sweeps <= kMaxSweeps; ++res.sweeps) {
    double max_delta = 0.0;
    for (int i = 0; i < state.n; ++i) {
      next[static_cast<std::size_t>(i)] = equilibrium_rhs(state, i);
      max_delta = std::max(max_delta,
                           std::abs(next[static_cast<std::size_t>(i)] -
                                    state.q[static_cast<std::size_t>(i)]));
    }
    state.q = next;
    res.residual = max_delta;
    if (max_delta < kSolveTol) return res;
  }
  res.sweeps = kMaxSweeps;
  res.converged = false;
  return res;
}

SolveResult reinforce(RnnState& state, int host, double goal_value) {
  if (host < 0 || host >= state.n) {
    throw std::invalid_argument("rnn: reinforce host out of range");
  }
  if (goal_value < 0.0) {
    throw std::invalid_argument("rnn: goal value must be >= 0");
  }

  if (!state.threshold_set) {
    // First measurement: there is no prior advice to judge, so it only seeds
    // the decision threshold.
    state.threshold = goal_value;
    state.threshold_set = true;
    return SolveResult{};
  }

  state.threshold =
      state.alpha * state.threshold + (1.0 - state.alpha) * goal_value;

  const double divisor = state.n == 2 ? 1.0 : static_cast<double>(state.n - 2);
  const double spread = goal_value / divisor;

  if (goal_value < state.threshold) {
    // Past advice succeeded: excite the decided host, inhibit the others.
    for (int j = 0; j < state.n; ++j) {
      if (j != host) state.wp(j, host) += goal_value;
      for (int k = 0; k < state.n; ++k) {
        if (k == j || k == host) continue;
        state.wm(j, k) += spread;
      }
    }
  } else {
    // Past advice failed: inhibit the decided host, excite the others.
    for (int j = 0; j < state.n; ++j) {
      if (j != host) state.wm(j, host) += goal_value;
      for (int k = 0; k < state.n; ++k) {
        if (k == j || k == host) continue;
        state.wp(j, k) += spread;
      }
    }
  }

  for (int i = 0; i < state.n; ++i) {
    const double row_sum = firing_rate(state, i);
    if (state.renormalize) {
      if (row_sum > 0.0) {
        const double scale = state.firing[static_cast<std::size_t>(i)] / row_sum;
        for (int j = 0; j < state.n; ++j) {
          state.wp(i, j) *= scale;
          state.wm(i, j) *= scale;
        }
      }
    } else {
      state.firing[static_cast<std::size_t>(i)] = row_sum;
    }
  }

  return solve_equilibrium(state);
}

int best_host(const RnnState& state) {
  int best = 0;
  for (int i = 1; i < state.n; ++i) {
    if (state.q[static_cast<std::size_t>(i)] >
        state.q[static_cast<std::size_t>(best)]) {
      best = i;
    }
  }
  return best;
}

}  // namespace tap
