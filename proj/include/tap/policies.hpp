#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tap/rng.hpp"
#include "tap/rnn.hpp"

namespace tap {

enum class GoalKind { ET, RT };

std::string to_string(GoalKind k);
GoalKind goal_kind_from_string(const std::string& s);

// One delayed goal measurement carried back to the controller by an
// acknowledgement: execution time collected from the host mailbox by a probe,
// or response time measured at the controller when a job acknowledgement
// lands.
struct GoalSample {
  int host = 0;  // 0-based
  GoalKind kind = GoalKind::RT;
  double value = 0.0;       // seconds
  double t_measured = 0.0;
  double t_delivered = 0.0;
};

enum class PolicyKind {
  RnnRl,
  RnnSensible,
  Sensible,
  ModelBased,
  RoundRobin,
  EqualProb,
};

std::string to_string(PolicyKind k);
PolicyKind policy_kind_from_string(const std::string& s);
const std::vector<PolicyKind>& all_policy_kinds();

struct PolicyConfig {
  PolicyKind kind = PolicyKind::RoundRobin;
  GoalKind goal = GoalKind::RT;
  double sensible_alpha = 0.9;   // weight of the newest sample in the smoothed estimate
  double rnn_alpha = 0.9;        // history weight in the decision threshold
  double exploration = 0.1;      // fraction of random decisions (RNN_RL)
  bool rnn_renormalize = true;
  std::vector<double> fixed_probs;  // MODEL_BASED dispatch vector
};

// Dispatch policy: one instance per scenario run, mutated only by the owning
// engine between events. decide() picks a host for the next job; observe()
// feeds a delayed goal measurement back. Policies consume only samples of
// their configured goal kind.
class Policy {
 public:
  explicit Policy(int n_hosts) : n_(n_hosts) {}
  virtual ~Policy() = default;

  virtual PolicyKind kind() const = 0;
  virtual int decide(double t_now, Rng& rng) = 0;
  virtual void observe(const GoalSample& sample);

  // Current dispatch distribution over hosts (sums to 1). Round Robin reports
  // a point mass on the host it will pick next.
  virtual std::vector<double> allocation_probabilities() const = 0;

  int host_count() const { return n_; }

 protected:
  // Per-policy handling of an accepted sample (host and value validated,
  // goal kind already matched).
  virtual void consume(const GoalSample& sample) {}

  GoalKind goal_ = GoalKind::RT;
  int n_;
};

// Cycles through the hosts in turn.
class RoundRobinPolicy : public Policy {
 public:
  explicit RoundRobinPolicy(int n_hosts) : Policy(n_hosts) {}
  PolicyKind kind() const override { return PolicyKind::RoundRobin; }
  int decide(double, Rng&) override;
  std::vector<double> allocation_probabilities() const override;

 private:
  int cursor_ = 0;
};

// Uniform random host per job.
class EqualProbPolicy : public Policy {
 public:
  explicit EqualProbPolicy(int n_hosts) : Policy(n_hosts) {}
  PolicyKind kind() const override { return PolicyKind::EqualProb; }
  int decide(double, Rng&) override;
  std::vector<double> allocation_probabilities() const override;
};

// Keeps a smoothed goal estimate per host and dispatches with probability
// inversely proportional to it. Hosts never sampled borrow the first observed
// value so the probabilities stay well defined; zero estimates are floored at
// one microsecond.
class SensiblePolicy : public Policy {
 public:
  SensiblePolicy(int n_hosts, GoalKind goal, double alpha);
  PolicyKind kind() const override { return PolicyKind::Sensible; }
  int decide(double, Rng&) override;
  std::vector<double> allocation_probabilities() const override;

  // Smoothed estimate for one host, or the bootstrap value when unsampled.
  double estimate(int host) const;
  bool has_samples() const { return any_; }

 protected:
  void consume(const GoalSample& sample) override;

 private:
  double alpha_;
  std::vector<double> g_;
  std::vector<bool> seen_;
  bool any_ = false;
  double first_value_ = 0.0;
};

// Dispatches from a fixed probability vector computed offline; measurements
// never mutate it.
class ModelBasedPolicy : public Policy {
 public:
  ModelBasedPolicy(int n_hosts, std::vector<double> probs);
  PolicyKind kind() const override { return PolicyKind::ModelBased; }
  int decide(double, Rng&) override;
  std::vector<double> allocation_probabilities() const override;
  const std::vector<double>& probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

// Shared base for the two RNN-driven schemes: forwards measurements to the
// reinforcement update.
class RnnPolicyBase : public Policy {
 public:
  RnnPolicyBase(int n_hosts, GoalKind goal, double alpha, bool renormalize);
  RnnState& rnn() { return rnn_; }
  const RnnState& rnn() const { return rnn_; }

 protected:
  void consume(const GoalSample& sample) override;

  RnnState rnn_;
};

// Exploit the highest-q host, with a fixed fraction of uniformly random
// decisions so alternatives keep being tried.
class RnnRlPolicy : public RnnPolicyBase {
 public:
  RnnRlPolicy(int n_hosts, GoalKind goal, double alpha, double exploration,
              bool renormalize);
  PolicyKind kind() const override { return PolicyKind::RnnRl; }
  int decide(double, Rng&) override;
  std::vector<double> allocation_probabilities() const override;

 private:
  double exploration_;
};

// Dispatch probabilistically with p_i = q_i / sum_j q_j.
class RnnSensiblePolicy : public RnnPolicyBase {
 public:
  RnnSensiblePolicy(int n_hosts, GoalKind goal, double alpha, bool renormalize);
  PolicyKind kind() const override { return PolicyKind::RnnSensible; }
  int decide(double, Rng&) override;
  std::vector<double> allocation_probabilities() const override;
};

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, int n_hosts);

// Inverse-CDF draw from a normalized probability vector.
int draw_discrete(std::span<const double> probs, Rng& rng);

}  // namespace tap
