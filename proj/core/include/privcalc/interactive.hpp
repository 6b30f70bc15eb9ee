// Copyright 2026 The privcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVCALC_INTERACTIVE_HPP
#define PRIVCALC_INTERACTIVE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privcalc/measurement.hpp"
#include "privcalc/rational.hpp"
#include "privcalc/transforms.hpp"

namespace privcalc {

// Loss carried in exact rational arithmetic; the measure kind lives on the
// owning Session.
struct RationalLoss {
  Rational epsilon;
  Rational delta;

  RationalLoss operator+(const RationalLoss& o) const {
    return {epsilon + o.epsilon, delta + o.delta};
  }
  bool leq(const RationalLoss& o) const {
    return epsilon <= o.epsilon && delta <= o.delta;
  }
  bool is_zero() const { return epsilon == 0 && delta == 0; }
  static RationalLoss max(const RationalLoss& a, const RationalLoss& b) {
    return {a.epsilon > b.epsilon ? a.epsilon : b.epsilon,
            a.delta > b.delta ? a.delta : b.delta};
  }
  static RationalLoss from_loss(const PrivacyLoss& loss) {
    return {rational_from_double(loss.epsilon), rational_from_double(loss.delta)};
  }
};

using NodeId = size_t;

// One answered query, in adversary-view order.
struct TranscriptEntry {
  size_t index;
  NodeId node;
  std::string query;
  PrivacyLoss granted;        // the cost charged at the queried node
  std::string epsilon_exact;  // exact rational form of granted.epsilon
  std::string answer_digest;
};

// Full audit log including structural events, for the independent
// accounting-replay oracle.
struct SessionEvent {
  enum class Kind { kQuery, kPartition, kSpawn };
  Kind kind;
  NodeId node;
  RationalLoss cost;             // query cost or spawn sub-budget
  std::vector<NodeId> children;  // partition pieces / spawned child
  std::string query;
};

// A tree of queryables over one private dataset. The root encapsulates the
// data behind a privacy filter (hard budget) or odometer (meter only);
// partition children account by the max-increment rule; sequential children
// are sub-filters whose budget the parent pays upfront. All requests are
// approved or rejected atomically along the agent chain before any data or
// randomness is touched.
class Session {
 public:
  enum class Mode { kFilter, kOdometer };

  Session(Dataset data, Metric metric, PrivacyLoss budget, Mode mode,
          uint64_t seed);

  NodeId root() const { return 0; }
  Mode mode() const { return mode_; }
  MeasureKind measure_kind() const { return kind_; }
  const Metric& metric() const { return metric_; }

  // Carrier of the node's encapsulated data; what callers build
  // measurements against. The data itself is not exposed.
  const Domain& domain_at(NodeId node) const;
  size_t node_count() const { return nodes_.size(); }
  NodeId parent_of(NodeId node) const;
  const std::vector<NodeId>& children_of(NodeId node) const;
  std::string describe(NodeId node) const;

  // Runs m on the node's data if the agent chain approves m.loss_at(1).
  // Rejection throws BudgetExceeded and leaves every ledger, the transcript,
  // and the RNG sequence untouched.
  Value query(NodeId node, const Measurement& m);

  // Splits the node's data; children are new queryables whose spending is
  // charged to this node only via increases of the childwise maximum.
  std::vector<NodeId> partition(NodeId node, const PartitionSpec& spec);

  // Child filter over the same data; sub_budget is charged upfront here.
  NodeId spawn_sequential(NodeId node, PrivacyLoss sub_budget);

  // Accounting views (exact internally; doubles are rounded renderings).
  PrivacyLoss spent(NodeId node) const;
  std::optional<PrivacyLoss> budget_of(NodeId node) const;
  std::optional<PrivacyLoss> remaining(NodeId node) const;
  const RationalLoss& spent_exact(NodeId node) const;
  std::optional<RationalLoss> budget_exact(NodeId node) const;
  std::string spent_string(NodeId node, int decimals = 6) const;
  std::string remaining_string(NodeId node, int decimals = 6) const;

  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  const std::vector<SessionEvent>& events() const { return events_; }
  std::string transcript_jsonl() const;

 private:
  struct Group {
    std::vector<NodeId> members;
    RationalLoss current_max;
  };
  struct Node {
    enum class Kind { kRoot, kPartitionChild, kSequentialChild };
    Kind kind;
    NodeId parent;
    size_t group = SIZE_MAX;  // partition children only
    Dataset data;
    Domain domain;
    std::optional<RationalLoss> budget;  // root filter and sequential children
    RationalLoss spent;
    std::vector<NodeId> children;
  };

  struct Charge {
    NodeId node;
    RationalLoss new_spent;
    size_t group = SIZE_MAX;  // group whose max this charge raises
    RationalLoss new_max;
  };

  // Walks the agent chain for a request of `cost` at `node`; returns the
  // commit list, or nothing if some filter on the chain would overflow.
  std::optional<std::vector<Charge>> plan_charges(NodeId node,
                                                  const RationalLoss& cost) const;
  void commit(const std::vector<Charge>& charges);
  const Node& at(NodeId node) const;
  Node& at(NodeId node);

  Metric metric_;
  MeasureKind kind_;
  Mode mode_;
  uint64_t seed_;
  size_t answered_ = 0;
  std::vector<Node> nodes_;
  std::vector<Group> groups_;
  std::vector<TranscriptEntry> transcript_;
  std::vector<SessionEvent> events_;
};

}  // namespace privcalc

#endif  // PRIVCALC_INTERACTIVE_HPP
