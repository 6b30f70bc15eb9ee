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

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "privcalc/combinators.hpp"
#include "privcalc/interactive.hpp"
#include "privcalc/mechanisms.hpp"
#include "test_util.hpp"

namespace privcalc {
namespace {

using testutil::int_dataset;
using testutil::int_schema;

Session filter_session(double budget, uint64_t seed = 0) {
  return Session(int_dataset({1, 2, 3, 4, 5, 6, 7, 8}), Metric::symmetric(),
                 PrivacyLoss::pure(budget), Session::Mode::kFilter, seed);
}

Measurement count_query(const Session& s, NodeId node, double epsilon) {
  return noisy_count(s.domain_at(node), s.metric(), epsilon);
}

PartitionSpec parity_spec() {
  auto odd = [](const Record& r) { return std::get<int64_t>(r[0]) % 2 != 0; };
  auto even = [](const Record& r) { return std::get<int64_t>(r[0]) % 2 == 0; };
  return PartitionSpec::by_predicates({odd, even});
}

// ---------------------------------------------------------------------------
// Filter and odometer basics

TEST(FilterTest, GrantsUntilTheBudgetWouldOverflow) {
  Session s = filter_session(1.0);
  s.query(s.root(), count_query(s, s.root(), 0.4));
  s.query(s.root(), count_query(s, s.root(), 0.5));
  // ~0.9 spent; 0.3 would overflow, but the filter is not poisoned by the
  // rejection: a later small request still fits. (0.0625 is binary-exact;
  // the double literal 0.1 actually sits just above 1/10 and would tip the
  // exact ledger over 1.)
  EXPECT_PRIVCALC_ERROR(s.query(s.root(), count_query(s, s.root(), 0.3)),
                        ErrorKind::kBudgetExceeded);
  s.query(s.root(), count_query(s, s.root(), 0.0625));
  Rational spent = s.spent_exact(s.root()).epsilon;
  EXPECT_EQ(spent, rational_from_double(0.4) + rational_from_double(0.5) +
                       Rational(1, 16));
  EXPECT_LT(spent, Rational(1));
  EXPECT_GT(s.remaining(s.root())->epsilon, 0.0);
  EXPECT_EQ(s.transcript().size(), 3u);
}

TEST(OdometerTest, MetersWithoutABound) {
  Session s(int_dataset({1, 2, 3}), Metric::symmetric(), PrivacyLoss::pure(0.0),
            Session::Mode::kOdometer, 1);
  s.query(s.root(), count_query(s, s.root(), 0.4));
  s.query(s.root(), count_query(s, s.root(), 0.5));
  s.query(s.root(), count_query(s, s.root(), 0.3));
  EXPECT_DOUBLE_EQ(s.spent(s.root()).epsilon, 1.2);
  EXPECT_EQ(s.budget_of(s.root()), std::nullopt);
  EXPECT_EQ(s.remaining(s.root()), std::nullopt);
  EXPECT_EQ(s.remaining_string(s.root()), "unbounded");
}

TEST(SessionTest, ConstructionValidates) {
  EXPECT_PRIVCALC_ERROR(filter_session(-0.5), ErrorKind::kNegativeBudget);
}

TEST(SessionTest, QueryValidatesMeasurementShape) {
  Session s = filter_session(1.0);
  // Wrong measure kind.
  EXPECT_PRIVCALC_ERROR(
      s.query(s.root(), embed_approx(count_query(s, s.root(), 0.1))),
      ErrorKind::kHeterogeneousMeasures);
  // Wrong metric.
  EXPECT_PRIVCALC_ERROR(
      s.query(s.root(),
              noisy_count(s.domain_at(s.root()), Metric::change_one(), 0.1)),
      ErrorKind::kDomainMismatch);
  // Wrong domain (different schema).
  EXPECT_PRIVCALC_ERROR(
      s.query(s.root(),
              noisy_count(Domain::data(int_schema("other")),
                          Metric::symmetric(), 0.1)),
      ErrorKind::kDomainMismatch);
  // Nothing was charged by any of the rejected calls.
  EXPECT_TRUE(s.spent(s.root()).is_zero());
}

// ---------------------------------------------------------------------------
// Partition accounting (Figure-1 max-increment rule)

TEST(PartitionAccountingTest, ParentPaysOnlyMaxIncrements) {
  Session s = filter_session(1.0);
  std::vector<NodeId> kids = s.partition(s.root(), parity_spec());
  ASSERT_EQ(kids.size(), 2u);

  // First charge on any child raises the max from zero: parent pays it all.
  s.query(kids[0], count_query(s, kids[0], 0.2));
  EXPECT_DOUBLE_EQ(s.spent(s.root()).epsilon, 0.2);

  // Sibling overtakes the max: parent pays only the rise.
  s.query(kids[1], count_query(s, kids[1], 0.5));
  EXPECT_DOUBLE_EQ(s.spent(s.root()).epsilon, 0.5);

  // [PAPER] Fig. 1 worked step: children at {0.2, 0.5}; +0.4 on the first
  // lifts it to 0.6, so the parent is charged 0.1.
  s.query(kids[0], count_query(s, kids[0], 0.4));
  EXPECT_DOUBLE_EQ(s.spent(kids[0]).epsilon, 0.6);
  EXPECT_DOUBLE_EQ(s.spent(s.root()).epsilon, 0.6);

  // A charge that leaves the child below the group max is free upstream.
  s.query(kids[1], count_query(s, kids[1], 0.05));
  EXPECT_DOUBLE_EQ(s.spent(kids[1]).epsilon, 0.55);
  EXPECT_DOUBLE_EQ(s.spent(s.root()).epsilon, 0.6);
}

TEST(PartitionAccountingTest, ChildrenSeeTheirPieces) {
  Session s = filter_session(10.0, 7);
  std::vector<NodeId> kids = s.partition(s.root(), parity_spec());
  // Deterministic check via an exact (zero-noise-free) route: compare two
  // fixed-seed sessions querying the pieces directly.
  EXPECT_EQ(s.children_of(s.root()), kids);
  EXPECT_EQ(s.parent_of(kids[0]), s.root());
  EXPECT_EQ(s.node_count(), 3u);
  EXPECT_EQ(s.domain_at(kids[0]), s.domain_at(s.root()));
}

TEST(PartitionAccountingTest, RejectionCrossesTheWholeChain) {
  // Child request approved locally must still clear the root filter.
  Session s = filter_session(0.3);
  std::vector<NodeId> kids = s.partition(s.root(), parity_spec());
  s.query(kids[0], count_query(s, kids[0], 0.25));
  EXPECT_PRIVCALC_ERROR(s.query(kids[1], count_query(s, kids[1], 0.35)),
                        ErrorKind::kBudgetExceeded);
  // The failed request left both the child and the group max untouched.
  EXPECT_TRUE(s.spent(kids[1]).is_zero());
  EXPECT_DOUBLE_EQ(s.spent(s.root()).epsilon, 0.25);
  s.query(kids[1], count_query(s, kids[1], 0.25));  // still below the max
  EXPECT_DOUBLE_EQ(s.spent(s.root()).epsilon, 0.25);
}

// ---------------------------------------------------------------------------
// Sequential spawn

TEST(SpawnTest, SubBudgetIsPrepaid) {
  Session s = filter_session(1.0);
  s.query(s.root(), count_query(s, s.root(), 0.6));
  NodeId child = s.spawn_sequential(s.root(), PrivacyLoss::pure(0.4));
  EXPECT_EQ(s.remaining(s.root())->epsilon, 0.0);  // charged upfront

  // The child spends inside its own filter without touching the parent.
  s.query(child, count_query(s, child, 0.3));
  EXPECT_DOUBLE_EQ(s.spent(child).epsilon, 0.3);
  EXPECT_EQ(s.spent(s.root()).epsilon, 1.0);
  EXPECT_PRIVCALC_ERROR(s.query(child, count_query(s, child, 0.2)),
                        ErrorKind::kBudgetExceeded);
  EXPECT_DOUBLE_EQ(s.budget_of(child)->epsilon, 0.4);
}

TEST(SpawnTest, OverdrawnSpawnIsRejected) {
  Session s = filter_session(1.0);
  s.query(s.root(), count_query(s, s.root(), 0.6));
  // remaining 0.4 < 1.2 requested
  EXPECT_PRIVCALC_ERROR(s.spawn_sequential(s.root(), PrivacyLoss::pure(1.2)),
                        ErrorKind::kBudgetExceeded);
  EXPECT_EQ(s.node_count(), 1u);
  EXPECT_DOUBLE_EQ(s.spent(s.root()).epsilon, 0.6);
}

// ---------------------------------------------------------------------------
// Atomicity and replay

TEST(AtomicityTest, RejectedRequestsDoNotShiftLaterAnswers) {
  Session with_reject = filter_session(1.0, 42);
  Session without = filter_session(1.0, 42);

  Value a1 = with_reject.query(with_reject.root(),
                               count_query(with_reject, 0, 0.4));
  EXPECT_PRIVCALC_ERROR(
      with_reject.query(with_reject.root(), count_query(with_reject, 0, 5.0)),
      ErrorKind::kBudgetExceeded);
  Value a2 = with_reject.query(with_reject.root(),
                               count_query(with_reject, 0, 0.4));

  Value b1 = without.query(without.root(), count_query(without, 0, 0.4));
  Value b2 = without.query(without.root(), count_query(without, 0, 0.4));

  // Bit-identical: the rejected attempt consumed no randomness.
  EXPECT_EQ(a1, b1);
  EXPECT_EQ(a2, b2);
  EXPECT_EQ(with_reject.transcript().size(), 2u);
}

TEST(AtomicityTest, FixedSeedReplaysWholeSessions) {
  auto run = [] {
    Session s = filter_session(2.0, 9001);
    std::vector<NodeId> kids = s.partition(s.root(), parity_spec());
    std::ostringstream out;
    out << s.query(kids[0], count_query(s, kids[0], 0.3)).as_real() << "|"
        << s.query(s.root(), count_query(s, s.root(), 0.5)).as_real() << "|"
        << s.transcript_jsonl();
    return out.str();
  };
  EXPECT_EQ(run(), run());
}

// ---------------------------------------------------------------------------
// Transcript

TEST(TranscriptTest, OneJsonLinePerAnsweredQuery) {
  Session s = filter_session(1.0, 3);
  s.query(s.root(), count_query(s, s.root(), 0.25));
  EXPECT_PRIVCALC_ERROR(s.query(s.root(), count_query(s, s.root(), 2.0)),
                        ErrorKind::kBudgetExceeded);
  s.query(s.root(), count_query(s, s.root(), 0.25));

  std::istringstream lines(s.transcript_jsonl());
  std::string line;
  size_t parsed = 0;
  while (std::getline(lines, line)) {
    nlohmann::json entry = nlohmann::json::parse(line);
    EXPECT_EQ(entry["index"], parsed);
    EXPECT_EQ(entry["node"], 0u);
    EXPECT_DOUBLE_EQ(entry["epsilon"].get<double>(), 0.25);
    EXPECT_TRUE(entry.contains("epsilon_exact"));
    EXPECT_TRUE(entry.contains("answer_digest"));
    ++parsed;
  }
  EXPECT_EQ(parsed, 2u);  // the rejected attempt leaves no line
}

TEST(TranscriptTest, ExactEpsilonStringsAreRationals) {
  Session s = filter_session(1.0, 3);
  s.query(s.root(), count_query(s, s.root(), 0.25));
  // 0.25 is exactly representable: the audit string is unambiguous.
  EXPECT_EQ(s.transcript()[0].epsilon_exact, "1/4");
}

// ---------------------------------------------------------------------------
// Approximate-DP sessions

TEST(ApproxSessionTest, DeltaIsBudgetedComponentwise) {
  Session s(int_dataset({1, 2, 3}), Metric::symmetric(),
            PrivacyLoss::approx(1.0, 1e-6), Session::Mode::kFilter, 5);
  Measurement m = embed_approx(count_query(s, s.root(), 0.4));
  s.query(s.root(), m);
  s.query(s.root(), m);
  EXPECT_DOUBLE_EQ(s.spent(s.root()).epsilon, 0.8);
  EXPECT_EQ(s.spent(s.root()).delta, 0.0);

  // Pure queries cannot run in an approx session without embedding.
  EXPECT_PRIVCALC_ERROR(s.query(s.root(), count_query(s, s.root(), 0.1)),
                        ErrorKind::kHeterogeneousMeasures);
}

// ---------------------------------------------------------------------------
// Fuzz battery with an independent accounting oracle.
//
// The oracle below re-implements the Figure-1 charging discipline on plain
// RationalLoss values, fed only by the operations the test itself issues.
// Sessions must agree with it node-for-node after every accepted or
// rejected operation.

struct OracleNode {
  bool partition_child = false;
  size_t parent = SIZE_MAX;
  size_t group = SIZE_MAX;
  std::optional<RationalLoss> budget;
  RationalLoss spent;
};

struct Oracle {
  std::vector<OracleNode> nodes;
  std::vector<RationalLoss> group_max;

  explicit Oracle(std::optional<RationalLoss> root_budget) {
    nodes.push_back(OracleNode{false, SIZE_MAX, SIZE_MAX, root_budget, {}});
  }

  // Mirrors the published rule, not the library: child pays its cost, a
  // partition parent pays only the rise of the childwise max, filters bound
  // their own prospective total, and nothing commits unless all approve.
  bool charge(size_t node, const RationalLoss& cost) {
    std::vector<std::pair<size_t, RationalLoss>> spends;
    std::vector<std::pair<size_t, RationalLoss>> maxes;
    size_t cur = node;
    RationalLoss inc = cost;
    while (true) {
      OracleNode& n = nodes[cur];
      RationalLoss prospective = n.spent + inc;
      if (n.partition_child) {
        RationalLoss new_max = RationalLoss::max(group_max[n.group], prospective);
        RationalLoss rise{new_max.epsilon - group_max[n.group].epsilon,
                          new_max.delta - group_max[n.group].delta};
        spends.emplace_back(cur, prospective);
        maxes.emplace_back(n.group, new_max);
        if (rise.is_zero()) break;
        inc = rise;
        cur = n.parent;
        continue;
      }
      if (n.budget && !prospective.leq(*n.budget)) return false;
      spends.emplace_back(cur, prospective);
      break;
    }
    for (auto& [i, s] : spends) nodes[i].spent = s;
    for (auto& [g, m] : maxes) group_max[g] = m;
    return true;
  }

  void add_partition(size_t parent, size_t pieces) {
    size_t group = group_max.size();
    group_max.push_back({});
    for (size_t i = 0; i < pieces; ++i) {
      nodes.push_back(OracleNode{true, parent, group, std::nullopt, {}});
    }
  }

  bool add_spawn(size_t parent, const RationalLoss& sub_budget) {
    if (!charge(parent, sub_budget)) return false;
    nodes.push_back(OracleNode{false, parent, SIZE_MAX, sub_budget, {}});
    return true;
  }
};

void expect_matches_oracle(const Session& s, const Oracle& oracle) {
  ASSERT_EQ(s.node_count(), oracle.nodes.size());
  for (NodeId n = 0; n < s.node_count(); ++n) {
    const RationalLoss& got = s.spent_exact(n);
    const RationalLoss& want = oracle.nodes[n].spent;
    ASSERT_EQ(got.epsilon, want.epsilon) << "node " << n;
    ASSERT_EQ(got.delta, want.delta) << "node " << n;
    if (oracle.nodes[n].budget) {
      ASSERT_TRUE(got.epsilon <= oracle.nodes[n].budget->epsilon)
          << "filter overdrawn at node " << n;
    }
  }
}

// Binary-inexact epsilons on purpose: accounting must stay exact anyway.
const double kFuzzEps[] = {0.1, 0.2, 0.3, 0.05, 0.15, 0.7};

TEST(FuzzTest, FlatFilterNeverOverspends) {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    std::mt19937_64 gen(seed);
    Session s = filter_session(1.0, seed);
    Rational granted(0);
    const Rational budget = rational_from_double(1.0);
    for (int op = 0; op < 12; ++op) {
      const double eps = kFuzzEps[gen() % 6];
      try {
        s.query(s.root(), count_query(s, s.root(), eps));
        granted += rational_from_double(eps);
      } catch (const Error& e) {
        ASSERT_EQ(e.kind(), ErrorKind::kBudgetExceeded);
      }
      ASSERT_EQ(s.spent_exact(s.root()).epsilon, granted);
      ASSERT_TRUE(s.spent_exact(s.root()).epsilon <= budget);
    }
    ASSERT_EQ(s.transcript().size(),
              static_cast<size_t>(
                  std::count_if(s.events().begin(), s.events().end(),
                                [](const SessionEvent& e) {
                                  return e.kind == SessionEvent::Kind::kQuery;
                                })));
  }
}

TEST(FuzzTest, OdometerEqualsGrantedSumAfterEveryStep) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 gen(seed);
    Session s(int_dataset({1, 2, 3, 4}), Metric::symmetric(),
              PrivacyLoss::pure(0.0), Session::Mode::kOdometer, seed);
    Rational granted(0);
    for (int op = 0; op < 10; ++op) {
      const double eps = kFuzzEps[gen() % 6];
      s.query(s.root(), count_query(s, s.root(), eps));  // never rejected
      granted += rational_from_double(eps);
      ASSERT_EQ(s.spent_exact(s.root()).epsilon, granted);
    }
  }
}

TEST(FuzzTest, HierarchicalSessionsMatchTheOracle) {
  for (uint64_t seed = 0; seed < 500; ++seed) {
    std::mt19937_64 gen(seed);
    Session s = filter_session(1.0, seed);
    Oracle oracle(RationalLoss{rational_from_double(1.0), Rational(0)});

    for (int op = 0; op < 14; ++op) {
      const NodeId node = gen() % s.node_count();
      const int kind = gen() % 8;
      if (kind == 6 && s.node_count() < 12) {
        s.partition(node, parity_spec());
        oracle.add_partition(node, 2);
      } else if (kind == 7) {
        const double sub = kFuzzEps[gen() % 3];
        RationalLoss sub_exact{rational_from_double(sub), Rational(0)};
        bool oracle_ok = oracle.add_spawn(node, sub_exact);
        try {
          s.spawn_sequential(node, PrivacyLoss::pure(sub));
          ASSERT_TRUE(oracle_ok);
        } catch (const Error& e) {
          ASSERT_EQ(e.kind(), ErrorKind::kBudgetExceeded);
          ASSERT_FALSE(oracle_ok);
        }
      } else {
        const double eps = kFuzzEps[gen() % 6];
        RationalLoss cost{rational_from_double(eps), Rational(0)};
        bool oracle_ok = oracle.charge(node, cost);
        try {
          s.query(node, count_query(s, node, eps));
          ASSERT_TRUE(oracle_ok);
        } catch (const Error& e) {
          ASSERT_EQ(e.kind(), ErrorKind::kBudgetExceeded);
          ASSERT_FALSE(oracle_ok);
        }
      }
      expect_matches_oracle(s, oracle);
    }
  }
}

}  // namespace
}  // namespace privcalc
