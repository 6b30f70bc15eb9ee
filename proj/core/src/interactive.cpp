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

#include "privcalc/interactive.hpp"

#include <utility>

#include "json.hpp"
#include "privcalc/rng.hpp"

namespace privcalc {
namespace {

RationalLoss rational_budget(const PrivacyLoss& budget) {
  if (!budget.nonnegative()) {
    throw Error(ErrorKind::kNegativeBudget, "budget must be nonnegative");
  }
  return RationalLoss::from_loss(budget);
}

}  // namespace

Session::Session(Dataset data, Metric metric, PrivacyLoss budget, Mode mode,
                 uint64_t seed)
    : metric_(metric), kind_(budget.kind), mode_(mode), seed_(seed) {
  if (!metric.is_dataset_metric()) {
    throw Error(ErrorKind::kIncompatibleMetric,
                "sessions measure adjacency on datasets");
  }
  Node node;
  node.kind = Node::Kind::kRoot;
  node.parent = 0;
  node.domain = Domain::data(data.schema());
  node.data = std::move(data);
  if (mode == Mode::kFilter) node.budget = rational_budget(budget);
  nodes_.push_back(std::move(node));
}

const Session::Node& Session::at(NodeId node) const {
  if (node >= nodes_.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "no queryable " + std::to_string(node));
  }
  return nodes_[node];
}

Session::Node& Session::at(NodeId node) {
  return const_cast<Node&>(std::as_const(*this).at(node));
}

const Domain& Session::domain_at(NodeId node) const { return at(node).domain; }

NodeId Session::parent_of(NodeId node) const { return at(node).parent; }

const std::vector<NodeId>& Session::children_of(NodeId node) const {
  return at(node).children;
}

std::string Session::describe(NodeId node) const {
  const Node& n = at(node);
  switch (n.kind) {
    case Node::Kind::kRoot:
      return mode_ == Mode::kFilter ? "root filter" : "root odometer";
    case Node::Kind::kPartitionChild:
      return "partition child of " + std::to_string(n.parent);
    case Node::Kind::kSequentialChild:
      return "sequential child of " + std::to_string(n.parent);
  }
  return "?";
}

std::optional<std::vector<Session::Charge>> Session::plan_charges(
    NodeId node, const RationalLoss& cost) const {
  std::vector<Charge> charges;
  NodeId cur = node;
  RationalLoss increment = cost;
  while (true) {
    const Node& n = at(cur);
    RationalLoss prospective = n.spent + increment;
    Charge charge;
    charge.node = cur;
    charge.new_spent = prospective;

    if (n.kind == Node::Kind::kPartitionChild) {
      // Figure-1 rule: the parent pays only the rise of the childwise
      // maximum, which might be zero.
      const Group& group = groups_[n.group];
      RationalLoss new_max = RationalLoss::max(group.current_max, prospective);
      RationalLoss parent_cost{new_max.epsilon - group.current_max.epsilon,
                               new_max.delta - group.current_max.delta};
      charge.group = n.group;
      charge.new_max = new_max;
      charges.push_back(std::move(charge));
      if (parent_cost.is_zero()) return charges;
      increment = parent_cost;
      cur = n.parent;
      continue;
    }

    // Root or sequential child: a filter boundary. Sequential children end
    // the walk either way because their budget was prepaid.
    if (n.budget && !prospective.leq(*n.budget)) return std::nullopt;
    charges.push_back(std::move(charge));
    return charges;
  }
}

void Session::commit(const std::vector<Charge>& charges) {
  for (const Charge& charge : charges) {
    nodes_[charge.node].spent = charge.new_spent;
    if (charge.group != SIZE_MAX) {
      groups_[charge.group].current_max = charge.new_max;
    }
  }
}

Value Session::query(NodeId node, const Measurement& m) {
  const Node& n = at(node);
  if (m.measure_kind() != kind_) {
    throw Error(ErrorKind::kHeterogeneousMeasures,
                "query measure does not match the session budget measure");
  }
  if (!(m.input_metric() == metric_) || !(m.input_domain() == n.domain)) {
    throw Error(ErrorKind::kDomainMismatch,
                "measurement was not built for this queryable's domain");
  }
  PrivacyLoss cost = m.loss_at(1.0);
  RationalLoss exact = RationalLoss::from_loss(cost);
  auto charges = plan_charges(node, exact);
  if (!charges) {
    throw Error(ErrorKind::kBudgetExceeded,
                "request " + cost.to_string() + " would overflow a filter");
  }
  // Approved: only now touch randomness and data. The stream index counts
  // answered queries, so a rejected request never shifts later draws.
  Rng rng = Rng(seed_).derive(answered_);
  Value answer = m(Value(n.data), rng);
  commit(*charges);
  transcript_.push_back(TranscriptEntry{answered_, node, m.name(), cost,
                                        rational_exact_string(exact.epsilon),
                                        answer.digest()});
  events_.push_back(SessionEvent{SessionEvent::Kind::kQuery, node, exact, {},
                                 m.name()});
  ++answered_;
  return answer;
}

std::vector<NodeId> Session::partition(NodeId node, const PartitionSpec& spec) {
  // Copy what we need up front: pushing children may reallocate nodes_.
  std::vector<Dataset> pieces = spec.split(at(node).data);
  const Domain parent_domain = at(node).domain;
  std::vector<NodeId> ids;
  ids.reserve(pieces.size());
  size_t group_id = groups_.size();
  Group group;
  for (Dataset& piece : pieces) {
    Node child;
    child.kind = Node::Kind::kPartitionChild;
    child.parent = node;
    child.group = group_id;
    child.domain = parent_domain;
    child.data = std::move(piece);
    NodeId id = nodes_.size();
    nodes_.push_back(std::move(child));
    nodes_[node].children.push_back(id);
    group.members.push_back(id);
    ids.push_back(id);
  }
  groups_.push_back(std::move(group));
  events_.push_back(
      SessionEvent{SessionEvent::Kind::kPartition, node, {}, ids, ""});
  return ids;
}

NodeId Session::spawn_sequential(NodeId node, PrivacyLoss sub_budget) {
  if (sub_budget.kind != kind_) {
    throw Error(ErrorKind::kHeterogeneousMeasures,
                "sub-budget measure does not match the session");
  }
  RationalLoss exact = rational_budget(sub_budget);
  auto charges = plan_charges(node, exact);
  if (!charges) {
    throw Error(ErrorKind::kBudgetExceeded,
                "spawn of " + sub_budget.to_string() + " would overflow a filter");
  }
  commit(*charges);
  Node child;
  child.kind = Node::Kind::kSequentialChild;
  child.parent = node;
  child.domain = at(node).domain;
  child.data = at(node).data;
  child.budget = exact;
  NodeId id = nodes_.size();
  nodes_.push_back(std::move(child));
  nodes_[node].children.push_back(id);
  events_.push_back(
      SessionEvent{SessionEvent::Kind::kSpawn, node, exact, {id}, ""});
  return id;
}

PrivacyLoss Session::spent(NodeId node) const {
  const RationalLoss& s = at(node).spent;
  return PrivacyLoss{kind_, rational_to_double(s.epsilon),
                     rational_to_double(s.delta)};
}

std::optional<PrivacyLoss> Session::budget_of(NodeId node) const {
  const auto& b = at(node).budget;
  if (!b) return std::nullopt;
  return PrivacyLoss{kind_, rational_to_double(b->epsilon),
                     rational_to_double(b->delta)};
}

std::optional<PrivacyLoss> Session::remaining(NodeId node) const {
  const Node& n = at(node);
  if (!n.budget) return std::nullopt;
  return PrivacyLoss{kind_, rational_to_double(n.budget->epsilon - n.spent.epsilon),
                     rational_to_double(n.budget->delta - n.spent.delta)};
}

const RationalLoss& Session::spent_exact(NodeId node) const {
  return at(node).spent;
}

std::optional<RationalLoss> Session::budget_exact(NodeId node) const {
  return at(node).budget;
}

std::string Session::spent_string(NodeId node, int decimals) const {
  const Node& n = at(node);
  std::string out = format_rational_fixed(n.spent.epsilon, decimals);
  if (kind_ == MeasureKind::kApproxDP) {
    out += " (delta " + format_rational_fixed(n.spent.delta, decimals) + ")";
  }
  return out;
}

std::string Session::remaining_string(NodeId node, int decimals) const {
  const Node& n = at(node);
  if (!n.budget) return "unbounded";
  std::string out =
      format_rational_fixed(n.budget->epsilon - n.spent.epsilon, decimals);
  if (kind_ == MeasureKind::kApproxDP) {
    out += " (delta " +
           format_rational_fixed(n.budget->delta - n.spent.delta, decimals) + ")";
  }
  return out;
}

std::string Session::transcript_jsonl() const {
  std::string out;
  for (const TranscriptEntry& entry : transcript_) {
    nlohmann::ordered_json line;
    line["index"] = entry.index;
    line["node"] = entry.node;
    line["query"] = entry.query;
    line["epsilon"] = entry.granted.epsilon;
    if (kind_ == MeasureKind::kApproxDP) line["delta"] = entry.granted.delta;
    line["epsilon_exact"] = entry.epsilon_exact;
    line["answer_digest"] = entry.answer_digest;
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace privcalc
