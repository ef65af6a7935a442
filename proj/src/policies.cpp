#include "tap/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tap {

namespace {
constexpr double kEstimateFloor = 1e-6;  // seconds
}

std::string to_string(GoalKind k) {
  return k == GoalKind::ET ? "ET" : "RT";
}

GoalKind goal_kind_from_string(const std::string& s) {
  if (s == "ET") return GoalKind::ET;
  if (s == "RT") return GoalKind::RT;
  throw std::invalid_argument("unknown goal kind: " + s);
}

std::string to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::RnnRl: return "RNN_RL";
    case PolicyKind::RnnSensible: return "RNN_SENSIBLE";
    case PolicyKind::Sensible: return "SENSIBLE";
    case PolicyKind::ModelBased: return "MODEL_BASED";
    case PolicyKind::RoundRobin: return "ROUND_ROBIN";
    case PolicyKind::EqualProb: return "EQUAL_PROB";
  }
  throw std::logic_error("unreachable policy kind");
}

PolicyKind policy_kind_from_string(const std::string& s) {
  for (PolicyKind k : all_policy_kinds()) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown policy kind: " + s);
}

const std::vector<PolicyKind>& all_policy_kinds() {
  static const std::vector<PolicyKind> kinds = {
      PolicyKind::RnnRl,      PolicyKind::RnnSensible, PolicyKind::Sensible,
      PolicyKind::ModelBased, PolicyKind::RoundRobin,  PolicyKind::EqualProb,
  };
  return kinds;
}

int draw_discrete(std::span<const double> probs, Rng& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

void Policy::observe(const GoalSample& sample) {
  if (sample.host < 0 || sample.host >= n_) {
    throw std::invalid_argument("observe: sample for unknown host " +
                                std::to_string(sample.host));
  }
  if (sample.value < 0.0) {
    throw std::invalid_argument("observe: goal value must be >= 0");
  }
  if (sample.kind != goal_) return;
  consume(sample);
}

int RoundRobinPolicy::decide(double, Rng&) {
  const int host = cursor_;
  cursor_ = (cursor_ + 1) % n_;
  return host;
}

std::vector<double> RoundRobinPolicy::allocation_probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(n_), 0.0);
  p[static_cast<std::size_t>(cursor_)] = 1.0;
  return p;
}

int EqualProbPolicy::decide(double, Rng& rng) {
  return static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n_)));
}

std::vector<double> EqualProbPolicy::allocation_probabilities() const {
  return std::vector<double>(static_cast<std::size_t>(n_), 1.0 / n_);
}

SensiblePolicy::SensiblePolicy(int n_hosts, GoalKind goal, double alpha)
    : Policy(n_hosts),
      alpha_(alpha),
      g_(static_cast<std::size_t>(n_hosts), 0.0),
      seen_(static_cast<std::size_t>(n_hosts), false) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw std::invalid_argument("sensible: alpha must be in (0,1]");
  }
  goal_ = goal;
}

void SensiblePolicy::consume(const GoalSample& sample) {
  const auto h = static_cast<std::size_t>(sample.host);
  if (!any_) {
    any_ = true;
    first_value_ = sample.value;
  }
  if (!seen_[h]) {
    seen_[h] = true;
    g_[h] = sample.value;
  } else {
    g_[h] = (1.0 - alpha_) * g_[h] + alpha_ * sample.value;
  }
}

double SensiblePolicy::estimate(int host) const {
  const auto h = static_cast<std::size_t>(host);
  if (seen_[h]) return g_[h];
  return first_value_;
}

std::vector<double> SensiblePolicy::allocation_probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(n_), 1.0 / n_);
  if (!any_) return p;
  double norm = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double g = std::max(estimate(i), kEstimateFloor);
    p[static_cast<std::size_t>(i)] = 1.0 / g;
    norm += p[static_cast<std::size_t>(i)];
  }
  for (double& v : p) v /= norm;
  return p;
}

int SensiblePolicy::decide(double, Rng& rng) {
  const std::vector<double> p = allocation_probabilities();
  return draw_discrete(p, rng);
}

ModelBasedPolicy::ModelBasedPolicy(int n_hosts, std::vector<double> probs)
    : Policy(n_hosts), probs_(std::move(probs)) {
  if (probs_.size() != static_cast<std::size_t>(n_hosts)) {
    throw std::invalid_argument("model-based: probability vector size mismatch");
  }
  double sum = 0.0;
  for (double v : probs_) {
    if (v < 0.0) {
      throw std::invalid_argument("model-based: negative probability");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("model-based: probabilities must sum to 1");
  }
}

int ModelBasedPolicy::decide(double, Rng& rng) {
  return draw_discrete(probs_, rng);
}

std::vector<double> ModelBasedPolicy::allocation_probabilities() const {
  return probs_;
}

RnnPolicyBase::RnnPolicyBase(int n_hosts, GoalKind goal, double alpha,
                             bool renormalize)
    : Policy(n_hosts), rnn_(rnn_init(n_hosts, alpha, renormalize)) {
  goal_ = goal;
}

void RnnPolicyBase::consume(const GoalSample& sample) {
  reinforce(rnn_, sample.host, sample.value);
}

RnnRlPolicy::RnnRlPolicy(int n_hosts, GoalKind goal, double alpha,
                         double exploration, bool renormalize)
    : RnnPolicyBase(n_hosts, goal, alpha, renormalize),
      exploration_(exploration) {
  if (exploration < 0.0 || exploration > 1.0) {
    throw std::invalid_argument("rnn-rl: exploration must be in [0,1]");
  }
}

int RnnRlPolicy::decide(double, Rng& rng) {
  if (rng.uniform01() < exploration_) {
    return static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n_)));
  }
  return best_host(rnn_);
}

std::vector<double> RnnRlPolicy::allocation_probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(n_), exploration_ / n_);
  p[static_cast<std::size_t>(best_host(rnn_))] += 1.0 - exploration_;
  return p;
}

RnnSensiblePolicy::RnnSensiblePolicy(int n_hosts, GoalKind goal, double alpha,
                                     bool renormalize)
    : RnnPolicyBase(n_hosts, goal, alpha, renormalize) {}

std::vector<double> RnnSensiblePolicy::allocation_probabilities() const {
  double sum = 0.0;
  for (double v : rnn_.q) sum += v;
  if (sum <= 0.0) {
    return std::vector<double>(static_cast<std::size_t>(n_), 1.0 / n_);
  }
  std::vector<double> p(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    p[static_cast<std::size_t>(i)] = rnn_.q[static_cast<std::size_t>(i)] / sum;
  }
  return p;
}

int RnnSensiblePolicy::decide(double, Rng& rng) {
  const std::vector<double> p = allocation_probabilities();
  return draw_discrete(p, rng);
}

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, int n_hosts) {
  if (n_hosts < 1) {
    throw std::invalid_argument("policy: need at least one host");
  }
  switch (config.kind) {
    case PolicyKind::RoundRobin:
      return std::make_unique<RoundRobinPolicy>(n_hosts);
    case PolicyKind::EqualProb:
      return std::make_unique<EqualProbPolicy>(n_hosts);
    case PolicyKind::Sensible:
      return std::make_unique<SensiblePolicy>(n_hosts, config.goal,
                                              config.sensible_alpha);
    case PolicyKind::ModelBased:
      return std::make_unique<ModelBasedPolicy>(n_hosts, config.fixed_probs);
    case PolicyKind::RnnRl:
      return std::make_unique<RnnRlPolicy>(n_hosts, config.goal,
                                           config.rnn_alpha, config.exploration,
                                           config.rnn_renormalize);
    case PolicyKind::RnnSensible:
      return std::make_unique<RnnSensiblePolicy>(
          n_hosts, config.goal, config.rnn_alpha, config.rnn_renormalize);
  }
  throw std::logic_error("unreachable policy kind");
}

}  // namespace tap
