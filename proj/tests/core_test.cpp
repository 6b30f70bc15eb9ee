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

#include <cmath>
#include <limits>
#include <set>

#include <gtest/gtest.h>

#include "privcalc/csv.hpp"
#include "privcalc/data.hpp"
#include "privcalc/domain.hpp"
#include "privcalc/maps.hpp"
#include "privcalc/measurement.hpp"
#include "privcalc/metric.hpp"
#include "privcalc/privacy_loss.hpp"
#include "privcalc/rational.hpp"
#include "privcalc/rng.hpp"
#include "privcalc/value.hpp"
#include "test_util.hpp"

namespace privcalc {
namespace {

using testutil::int_dataset;
using testutil::int_schema;
using testutil::real_dataset;

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Schema / Dataset

TEST(SchemaTest, RejectsDuplicateAndEmptyNames) {
  EXPECT_PRIVCALC_ERROR(
      Schema({{"a", CellKind::kInt64}, {"a", CellKind::kBool}}),
      ErrorKind::kInvalidSchema);
  EXPECT_PRIVCALC_ERROR(Schema({{"", CellKind::kInt64}}),
                        ErrorKind::kInvalidSchema);
}

TEST(SchemaTest, IndexOf) {
  Schema s({{"a", CellKind::kInt64}, {"b", CellKind::kString}});
  EXPECT_EQ(s.index_of("a"), 0);
  EXPECT_EQ(s.index_of("b"), 1);
  EXPECT_EQ(s.index_of("c"), -1);
}

TEST(SchemaTest, JsonRoundTrip) {
  Schema s({{"age", CellKind::kInt64},
            {"weight", CellKind::kFloat64},
            {"member", CellKind::kBool},
            {"name", CellKind::kString}});
  EXPECT_EQ(Schema::from_json(s.to_json()), s);
}

TEST(SchemaTest, Conforms) {
  Schema s({{"a", CellKind::kInt64}, {"b", CellKind::kBool}});
  EXPECT_TRUE(s.conforms({Cell{int64_t{1}}, Cell{true}}));
  EXPECT_FALSE(s.conforms({Cell{int64_t{1}}}));               // arity
  EXPECT_FALSE(s.conforms({Cell{true}, Cell{int64_t{1}}}));   // kinds
}

TEST(DatasetTest, OrderIsNotObservable) {
  Dataset a = int_dataset({3, 1, 2});
  Dataset b = int_dataset({2, 3, 1});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.records(), b.records());  // canonical sorted storage
}

TEST(DatasetTest, RejectsNonFiniteCells) {
  EXPECT_PRIVCALC_ERROR(real_dataset({1.0, std::nan("")}),
                        ErrorKind::kInvalidRecord);
  EXPECT_PRIVCALC_ERROR(real_dataset({kInf}), ErrorKind::kInvalidRecord);
}

TEST(DatasetTest, RejectsNonConformingRecord) {
  EXPECT_PRIVCALC_ERROR(Dataset(int_schema(), {{Cell{true}}}),
                        ErrorKind::kInvalidRecord);
}

TEST(DatasetTest, SymmetricDistance) {
  // [TRIVIAL] hand-counted multiset edits.
  EXPECT_EQ(Dataset::symmetric_distance(int_dataset({1, 2, 2}),
                                        int_dataset({2, 2})),
            1.0);  // one delete
  EXPECT_EQ(Dataset::symmetric_distance(int_dataset({1, 2, 2}),
                                        int_dataset({1, 2, 3})),
            2.0);  // delete a 2, insert a 3
  EXPECT_EQ(Dataset::symmetric_distance(int_dataset({}), int_dataset({5})),
            1.0);
  EXPECT_EQ(Dataset::symmetric_distance(int_dataset({1, 1}), int_dataset({1, 1})),
            0.0);
}

TEST(DatasetTest, ChangeOneDistance) {
  EXPECT_EQ(Dataset::change_one_distance(int_dataset({1, 2, 3}),
                                         int_dataset({1, 2, 9})),
            1.0);
  EXPECT_EQ(Dataset::change_one_distance(int_dataset({1, 1}),
                                         int_dataset({2, 2})),
            2.0);
  // Different sizes are not neighbours at any finite distance.
  EXPECT_EQ(Dataset::change_one_distance(int_dataset({1}), int_dataset({1, 1})),
            kInf);
}

TEST(DatasetTest, CompareIsTotalOrder) {
  Dataset a = int_dataset({1});
  Dataset b = int_dataset({2});
  Dataset c = int_dataset({1, 2});
  EXPECT_LT(compare_datasets(a, b), 0);
  EXPECT_GT(compare_datasets(b, a), 0);
  EXPECT_EQ(compare_datasets(a, a), 0);
  EXPECT_NE(compare_datasets(a, c), 0);
}

// ---------------------------------------------------------------------------
// Value

TEST(ValueTest, KindsAndAccessors) {
  EXPECT_TRUE(Value(true).is_bool());
  EXPECT_TRUE(Value(1.5).is_real());
  EXPECT_TRUE(Value(int_dataset({1})).is_dataset());
  EXPECT_TRUE(Value(Value::List{Value(1.0)}).is_list());
  EXPECT_EQ(Value(2.5).as_real(), 2.5);
  EXPECT_EQ(Value(true).scalar(), 1.0);  // bits read as 0/1 scalars
  EXPECT_EQ(Value(false).scalar(), 0.0);
}

TEST(ValueTest, CompareOrdersWithinAndAcrossKinds) {
  EXPECT_EQ(Value::compare(Value(1.0), Value(1.0)), 0);
  EXPECT_LT(Value::compare(Value(1.0), Value(2.0)), 0);
  EXPECT_NE(Value::compare(Value(true), Value(1.0)), 0);  // kinds differ
  Value l1(Value::List{Value(1.0), Value(2.0)});
  Value l2(Value::List{Value(1.0), Value(3.0)});
  EXPECT_LT(Value::compare(l1, l2), 0);
  EXPECT_EQ(l1, l1);
}

TEST(ValueTest, DigestIsStableAndDiscriminating) {
  Value v(Value::List{Value(1.0), Value(true)});
  EXPECT_EQ(v.digest(), v.digest());
  EXPECT_NE(Value(1.0).digest(), Value(2.0).digest());
  EXPECT_NE(Value(1.0).digest(), Value(true).digest());
}

// ---------------------------------------------------------------------------
// Domain

TEST(DomainTest, ScalarAdmits) {
  Domain any = Domain::scalar();
  EXPECT_TRUE(any.admits(Value(123.0)));
  EXPECT_FALSE(any.admits(Value(true)));
  Domain bounded = Domain::scalar(Bounds{0.0, 1.0});
  EXPECT_TRUE(bounded.admits(Value(0.5)));
  EXPECT_FALSE(bounded.admits(Value(1.5)));
}

TEST(DomainTest, BitAdmits) {
  EXPECT_TRUE(Domain::bit().admits(Value(false)));
  EXPECT_FALSE(Domain::bit().admits(Value(0.0)));
}

TEST(DomainTest, DataAdmitsSchemaAndClampBounds) {
  Domain d = Domain::data(int_schema());
  EXPECT_TRUE(d.admits(Value(int_dataset({1, 2}))));
  EXPECT_FALSE(d.admits(Value(real_dataset({1.0}))));

  Domain clamped =
      Domain::data(testutil::real_schema(), {{"x", Bounds{0.0, 1.0}}});
  EXPECT_TRUE(clamped.admits(Value(real_dataset({0.0, 0.7, 1.0}))));
  EXPECT_FALSE(clamped.admits(Value(real_dataset({0.0, 2.0}))));
  EXPECT_EQ(clamped.column_bounds_for("x"), (Bounds{0.0, 1.0}));
  EXPECT_EQ(clamped.column_bounds_for("y"), std::nullopt);
}

TEST(DomainTest, DataListAndRealVector) {
  Domain element = Domain::data(int_schema());
  Domain list = Domain::data_list(element, 2);
  EXPECT_EQ(list.count(), 2u);
  Value ok(Value::List{Value(int_dataset({1})), Value(int_dataset({}))});
  Value bad(Value::List{Value(int_dataset({1}))});
  EXPECT_TRUE(list.admits(ok));
  EXPECT_FALSE(list.admits(bad));

  Domain vec = Domain::real_vector(2, Bounds{0.0, 1.0});
  EXPECT_TRUE(vec.admits(Value(Value::List{Value(0.2), Value(1.0)})));
  EXPECT_FALSE(vec.admits(Value(Value::List{Value(0.2), Value(2.0)})));
  EXPECT_FALSE(vec.admits(Value(Value::List{Value(0.2)})));
}

// ---------------------------------------------------------------------------
// Metric

TEST(MetricTest, AppliesTo) {
  Domain data = Domain::data(int_schema());
  EXPECT_TRUE(Metric::symmetric().applies_to(data));
  EXPECT_TRUE(Metric::change_one().applies_to(data));
  EXPECT_FALSE(Metric::absolute().applies_to(data));

  EXPECT_TRUE(Metric::absolute().applies_to(Domain::scalar()));
  EXPECT_TRUE(Metric::absolute().applies_to(Domain::bit()));
  EXPECT_FALSE(Metric::symmetric().applies_to(Domain::scalar()));

  EXPECT_TRUE(Metric::l1().applies_to(Domain::real_vector(3)));
  EXPECT_TRUE(Metric::per_piece().applies_to(Domain::data_list(data, 2)));
  EXPECT_FALSE(Metric::per_piece().applies_to(data));
}

TEST(MetricTest, Distances) {
  EXPECT_EQ(Metric::absolute().distance(Value(3.0), Value(1.5)), 1.5);
  EXPECT_EQ(Metric::absolute().distance(Value(true), Value(false)), 1.0);
  EXPECT_EQ(Metric::symmetric().distance(Value(int_dataset({1, 2, 2})),
                                         Value(int_dataset({2, 2}))),
            1.0);
  EXPECT_EQ(Metric::change_one().distance(Value(int_dataset({1, 2})),
                                          Value(int_dataset({1, 9}))),
            1.0);
  Value va(Value::List{Value(1.0), Value(2.0)});
  Value vb(Value::List{Value(0.0), Value(5.0)});
  EXPECT_EQ(Metric::l1().distance(va, vb), 4.0);
}

TEST(MetricTest, PerPieceDistances) {
  Value a(Value::List{Value(int_dataset({1})), Value(int_dataset({2, 3}))});
  Value b(Value::List{Value(int_dataset({1})), Value(int_dataset({2}))});
  std::vector<double> per = Metric::per_piece().per_piece_distances(a, b);
  ASSERT_EQ(per.size(), 2u);
  EXPECT_EQ(per[0], 0.0);
  EXPECT_EQ(per[1], 1.0);
  EXPECT_EQ(Metric::per_piece().distance(a, b), 1.0);
}

// ---------------------------------------------------------------------------
// Rng

TEST(RngTest, Replays) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngTest, UniformIsOpenUnit) {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    double u = rng.next_uniform();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RngTest, DeriveDependsOnlyOnSeedAndSalt) {
  Rng parent(9);
  Rng before = parent.derive(3);
  parent.next_u64();
  parent.next_u64();
  Rng after = parent.derive(3);
  EXPECT_EQ(before.next_u64(), after.next_u64());

  Rng other = parent.derive(4);
  EXPECT_NE(parent.derive(3).next_u64(), other.next_u64());
}

TEST(RngTest, LaplaceIsSymmetricAtMedian) {
  // [DERIVED] median of Laplace(0, b) is 0; count signs over a fixed stream.
  Rng rng(11);
  int positive = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    if (rng.next_laplace(2.0) > 0.0) ++positive;
  }
  EXPECT_NEAR(static_cast<double>(positive) / n, 0.5, 0.01);
}

// ---------------------------------------------------------------------------
// Rational accounting

TEST(RationalTest, FromDoubleIsExact) {
  // [DERIVED] 0.1 is exactly 3602879701896397 / 2^55.
  Rational r = rational_from_double(0.1);
  EXPECT_EQ(rational_exact_string(r), "3602879701896397/36028797018963968");
  EXPECT_EQ(rational_to_double(r), 0.1);
  EXPECT_EQ(rational_from_double(0.0), Rational(0));
  EXPECT_EQ(rational_from_double(-2.5), Rational(-5) / 2);
  EXPECT_PRIVCALC_ERROR(rational_from_double(kInf), ErrorKind::kInvalidArgument);
}

TEST(RationalTest, SumsDoNotDrift) {
  // Ten adds of 0.1 overshoot 1.0 in binary floating point; the exact
  // accounting must agree with the rational sum, not the float one.
  Rational sum(0);
  for (int i = 0; i < 10; ++i) sum += rational_from_double(0.1);
  EXPECT_GT(sum, Rational(1));
  EXPECT_LT(sum, Rational(1) + Rational(1, 1000000000000000));
}

TEST(RationalTest, FixedFormatting) {
  EXPECT_EQ(format_rational_fixed(Rational(1, 3), 6), "0.333333");
  EXPECT_EQ(format_rational_fixed(Rational(2, 3), 6), "0.666667");
  EXPECT_EQ(format_rational_fixed(Rational(-1, 2), 1), "-0.5");
  EXPECT_EQ(format_rational_fixed(Rational(1, 2), 0), "1");   // half away from zero
  EXPECT_EQ(format_rational_fixed(Rational(0), 3), "0.000");
  EXPECT_EQ(format_rational_fixed(Rational(5), 2), "5.00");
}

// ---------------------------------------------------------------------------
// PrivacyLoss

TEST(PrivacyLossTest, Arithmetic) {
  PrivacyLoss a = PrivacyLoss::pure(0.4);
  PrivacyLoss b = PrivacyLoss::pure(0.6);
  EXPECT_EQ((a + b).epsilon, 1.0);
  EXPECT_EQ(a.scaled(3.0).epsilon, 3.0 * 0.4);
  EXPECT_TRUE(a.leq(b));
  EXPECT_FALSE(b.leq(a));
  EXPECT_EQ(PrivacyLoss::max(a, b), b);
}

TEST(PrivacyLossTest, ApproxOrderIsComponentwise) {
  PrivacyLoss a = PrivacyLoss::approx(1.0, 0.1);
  PrivacyLoss b = PrivacyLoss::approx(2.0, 0.05);
  EXPECT_FALSE(a.leq(b));
  EXPECT_FALSE(b.leq(a));
  EXPECT_TRUE(a.leq(PrivacyLoss::approx(1.0, 0.1)));
}

TEST(PrivacyLossTest, MixedMeasuresThrow) {
  PrivacyLoss pure = PrivacyLoss::pure(1.0);
  PrivacyLoss approx = PrivacyLoss::approx(1.0, 0.0);
  EXPECT_PRIVCALC_ERROR(pure + approx, ErrorKind::kHeterogeneousMeasures);
  EXPECT_PRIVCALC_ERROR(pure.leq(approx), ErrorKind::kHeterogeneousMeasures);
}

// ---------------------------------------------------------------------------
// Stability and privacy maps

TEST(MapsTest, LinearStability) {
  StabilityMap m = StabilityMap::linear(3.0);
  EXPECT_EQ(m(2.0), 6.0);
  EXPECT_EQ(m(0.0), 0.0);
  EXPECT_EQ(m.linear_constant(), 3.0);
  EXPECT_PRIVCALC_ERROR(m(-1.0), ErrorKind::kNegativeDistance);
  // 0-stable maps kill even infinite distances (no 0 * inf).
  EXPECT_EQ(StabilityMap::linear(0.0)(kInf), 0.0);
}

TEST(MapsTest, ThenComposesLinearsExactly) {
  StabilityMap c = StabilityMap::linear(2.0).then(StabilityMap::linear(5.0));
  EXPECT_EQ(c.linear_constant(), 10.0);

  StabilityMap f = StabilityMap::from_function([](double d) { return d * d; });
  StabilityMap g = StabilityMap::linear(3.0).then(f);
  EXPECT_EQ(g(2.0), 36.0);  // (3*2)^2
  EXPECT_EQ(g.linear_constant(), std::nullopt);
}

TEST(MapsTest, PrivacyMapLinear) {
  PrivacyMap m = PrivacyMap::linear(PrivacyLoss::pure(0.5));
  EXPECT_EQ(m.at(2.0).epsilon, 1.0);
  EXPECT_TRUE(m.at(0.0).is_zero());
  EXPECT_PRIVCALC_ERROR(m.at(-0.5), ErrorKind::kNegativeDistance);
}

TEST(MapsTest, PrivacyMapAfterStability) {
  PrivacyMap m = PrivacyMap::linear(PrivacyLoss::pure(0.5));
  PrivacyMap chained = m.after(StabilityMap::linear(4.0));
  EXPECT_EQ(chained.at(1.0).epsilon, 2.0);
  ASSERT_TRUE(chained.per_unit().has_value());  // stays linear
  EXPECT_EQ(chained.per_unit()->epsilon, 2.0);
}

TEST(MapsTest, FunctionMapMustKeepItsMeasure) {
  PrivacyMap m = PrivacyMap::from_function(
      MeasureKind::kPureDP,
      [](double) { return PrivacyLoss::approx(1.0, 0.1); });
  EXPECT_PRIVCALC_ERROR(m.at(1.0), ErrorKind::kHeterogeneousMeasures);
}

TEST(MeasurementTest, ConstructorValidates) {
  auto fn = [](const Value& v, Rng&) { return v; };
  EXPECT_PRIVCALC_ERROR(
      make_measurement("m", Domain::scalar(), Metric::symmetric(), fn,
                       PrivacyMap::linear(PrivacyLoss::pure(1.0))),
      ErrorKind::kIncompatibleMetric);
  EXPECT_PRIVCALC_ERROR(
      make_measurement("m", Domain::scalar(), Metric::absolute(), fn,
                       PrivacyMap::from_function(
                           MeasureKind::kPureDP,
                           [](double d) { return PrivacyLoss::pure(1.0 - d); })),
      ErrorKind::kInvalidPrivacyMap);
}

// ---------------------------------------------------------------------------
// CSV

TEST(CsvTest, ParsesQuotedFields) {
  auto rows = parse_csv_fields("a,b\n\"x,\"\"y\"\",\nz\",2\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"x,\"y\",\nz", "2"}));
}

TEST(CsvTest, MalformedQuotingIsHardError) {
  EXPECT_PRIVCALC_ERROR(parse_csv_fields("a\n\"unterminated\n"),
                        ErrorKind::kDataError);
  EXPECT_PRIVCALC_ERROR(parse_csv_fields("a\n\"x\"y\n"),
                        ErrorKind::kDataError);
}

TEST(CsvTest, ParseAgainstSchema) {
  Schema s({{"age", CellKind::kInt64}, {"member", CellKind::kBool}});
  Dataset d = parse_csv("age,member\n31,true\n25,false\n", s);
  EXPECT_EQ(d.size(), 2u);

  EXPECT_PRIVCALC_ERROR(parse_csv("age,wrong\n31,true\n", s),
                        ErrorKind::kDataError);
  EXPECT_PRIVCALC_ERROR(parse_csv("age,member\n31\n", s),
                        ErrorKind::kDataError);
  EXPECT_PRIVCALC_ERROR(parse_csv("age,member\nnotanint,true\n", s),
                        ErrorKind::kDataError);
  EXPECT_PRIVCALC_ERROR(parse_csv("", s), ErrorKind::kDataError);
}

TEST(CsvTest, WriteReadRoundTrip) {
  Schema s({{"name", CellKind::kString}, {"x", CellKind::kFloat64}});
  Dataset d(s, {{Cell{std::string("a,b")}, Cell{0.1}},
                {Cell{std::string("line\nbreak")}, Cell{-2.5}},
                {Cell{std::string("quote\"inside")}, Cell{1e-17}}});
  EXPECT_EQ(parse_csv(write_csv(d), s), d);
}

}  // namespace
}  // namespace privcalc
