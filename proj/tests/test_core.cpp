#include <gtest/gtest.h>

#include <sstream>

#include "prefeval/core.hpp"

using namespace prefeval;

namespace {

UtilityFunction linear_utility(std::size_t n) {
    std::map<OutcomeId, double> v;
    for (std::size_t i = 1; i <= n; ++i) v["s" + std::to_string(i)] = static_cast<double>(i);
    return UtilityFunction(v);
}

Lottery random_simplex(const std::vector<OutcomeId>& ids, Rng& rng) {
    std::vector<Lottery::Entry> w;
    for (const auto& id : ids) w.push_back({id, rng.uniform() + 1e-3});
    return Lottery::renormalized(w);
}

}  // namespace

TEST(Lottery, RejectsBadMass) {
    EXPECT_THROW(Lottery({{"a", 0.5}, {"b", 0.4}}), validation_error);
    EXPECT_THROW(Lottery({{"a", -0.1}, {"b", 1.1}}), validation_error);
    EXPECT_THROW(Lottery({{"a", 0.5}, {"a", 0.5}}), validation_error);
    EXPECT_THROW(Lottery(std::vector<Lottery::Entry>{}), validation_error);
    EXPECT_NO_THROW(Lottery({{"a", 0.5}, {"b", 0.5 + 5e-10}}));
}

TEST(Lottery, RenormalizeIsExplicit) {
    const auto l = Lottery::renormalized({{"a", 2.0}, {"b", 6.0}});
    EXPECT_DOUBLE_EQ(l.probability("a"), 0.25);
    EXPECT_DOUBLE_EQ(l.probability("b"), 0.75);
    EXPECT_THROW(Lottery::renormalized({{"a", 0.0}}), validation_error);
}

TEST(OutcomeUniverse, UniqueIds) {
    EXPECT_THROW(OutcomeUniverse::from_ids({"a", "b", "a"}), validation_error);
    const auto u = OutcomeUniverse::from_ids({"a", "b"});
    EXPECT_TRUE(u.contains("a"));
    EXPECT_FALSE(u.contains("c"));
}

TEST(ReduceCompound, TwoBranches) {
    const CompoundLottery c({{Lottery::point_mass("a"), 0.5}, {Lottery({{"a", 0.6}, {"b", 0.4}}), 0.5}});
    const auto l = reduce_compound(c);
    EXPECT_NEAR(l.probability("a"), 0.8, 1e-12);
    EXPECT_NEAR(l.probability("b"), 0.2, 1e-12);
}

TEST(ReduceCompound, SingleBranchIsIdentity) {
    const Lottery l1({{"a", 0.3}, {"b", 0.7}});
    EXPECT_TRUE(same_distribution(reduce_compound(CompoundLottery({{l1, 1.0}})), l1, 0.0));
}

TEST(ReduceCompound, ThreePromptTree) {
    const std::vector<double> w{0.2, 0.3, 0.5};
    std::vector<CompoundLottery::Branch> outer;
    for (int j = 0; j < 3; ++j) {
        const std::string a = "p" + std::to_string(j) + "a", b = "p" + std::to_string(j) + "b";
        outer.push_back({Lottery::uniform({a, b}), w[j]});
    }
    const auto l = reduce_compound(CompoundLottery(outer));
    ASSERT_EQ(l.support().size(), 6u);
    for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(l.probability("p" + std::to_string(j) + "a"), w[j] / 2, 1e-15);
        EXPECT_NEAR(l.probability("p" + std::to_string(j) + "b"), w[j] / 2, 1e-15);
    }
}

TEST(ReduceCompound, InvalidOuterMass) {
    EXPECT_THROW(CompoundLottery({{Lottery::point_mass("a"), 0.5}}), validation_error);
}

TEST(ReduceCompound, PreservesMassProperty) {
    Rng rng(11);
    for (int t = 0; t < 500; ++t) {
        std::vector<CompoundLottery::Branch> outer;
        const std::size_t n = 1 + rng.below(5);
        std::vector<double> w(n);
        double total = 0;
        for (auto& x : w) total += (x = rng.uniform() + 1e-3);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<OutcomeId> ids;
            for (std::size_t i = 0; i < 1 + rng.below(4); ++i) ids.push_back("o" + std::to_string(rng.below(6)));
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            outer.push_back({random_simplex(ids, rng), w[j] / total});
        }
        EXPECT_NEAR(reduce_compound(CompoundLottery(outer)).total_mass(), 1.0, 1e-9);
    }
}

TEST(ExpectedUtility, Examples) {
    const UtilityFunction u({{"a", 1.2}, {"b", 2.2}});
    EXPECT_NEAR(expected_utility(Lottery({{"a", 0.5}, {"b", 0.5}}), u), 1.7, 1e-12);
    EXPECT_DOUBLE_EQ(expected_utility(Lottery::point_mass("a"), UtilityFunction({{"a", 1.9}})), 1.9);
    std::vector<OutcomeId> ids;
    double brute = 0.0;
    for (int i = 1; i <= 10; ++i) {
        ids.push_back("s" + std::to_string(i));
        brute += i / 10.0;
    }
    EXPECT_NEAR(expected_utility(Lottery::uniform(ids), linear_utility(10)), brute, 1e-12);
    EXPECT_NEAR(brute, 5.5, 1e-12);
}

TEST(ExpectedUtility, MissingOutcomeIsDomainError) {
    EXPECT_THROW(expected_utility(Lottery::point_mass("zzz"), linear_utility(3)), domain_error);
}

TEST(ExpectedUtility, LinearityUnderMixing) {
    Rng rng(3);
    const std::vector<OutcomeId> ids{"a", "b", "c", "d"};
    for (int t = 0; t < 1000; ++t) {
        std::map<OutcomeId, double> v;
        for (const auto& id : ids) v[id] = rng.uniform(-10, 10);
        const UtilityFunction u(v);
        const auto x = random_simplex({"a", "b"}, rng), z = random_simplex({"b", "c", "d"}, rng);
        const double p = rng.uniform();
        EXPECT_NEAR(expected_utility(mix(x, z, p), u),
                    p * expected_utility(x, u) + (1 - p) * expected_utility(z, u), 1e-9);
    }
}

TEST(UtilityFunction, BoundsAndFiniteness) {
    EXPECT_THROW(UtilityFunction({{"a", 2.0}}, 0.0, 1.0), validation_error);
    EXPECT_THROW(UtilityFunction({{"a", std::nan("")}}), validation_error);
    const UtilityFunction u({{"a", 1.0}, {"b", 3.0}});
    EXPECT_EQ(u.lower_bound(), 1.0);
    EXPECT_EQ(u.upper_bound(), 3.0);
    EXPECT_THROW(u.require_covers(OutcomeUniverse::from_ids({"a", "c"})), domain_error);
    const UtilityFunction inf({{"a", 1.0}, {"b", -INFINITY}});
    EXPECT_THROW(Agent("eu", inf), validation_error);
    EXPECT_NO_THROW(Agent("thr", inf, ThresholdBehavior{{"b"}, 0.0}));
}

TEST(AgentPopulation, Invariants) {
    const Agent a("a", linear_utility(2)), b("b", linear_utility(2));
    EXPECT_THROW(AgentPopulation({a, b}, {0.5, 0.6}), validation_error);
    EXPECT_THROW(AgentPopulation({a, a}, {0.5, 0.5}), validation_error);
    EXPECT_THROW(AgentPopulation({a, b}, {-0.5, 1.5}), validation_error);
    EXPECT_NO_THROW(AgentPopulation::uniform({a, b}));
}

TEST(Prefer, ExpectedUtilityAgent) {
    const Agent a("eu", UtilityFunction({{"a", 1.9}, {"b", 1.2}, {"c", 2.2}}));
    const auto x = Lottery::point_mass("a");
    const Lottery y({{"b", 0.5}, {"c", 0.5}});
    EXPECT_EQ(prefer(a, x, y), Preference::x_preferred);
    EXPECT_EQ(prefer(a, y, x), Preference::y_preferred);
    EXPECT_EQ(prefer(a, x, x), Preference::indifferent);
}

TEST(Prefer, ThresholdAgentMixedWithOffensiveOutput) {
    const Agent a("thr", UtilityFunction({{"ok", 2.0}, {"meh", 1.0}, {"slur", 0.0}}), ThresholdBehavior{{"slur"}, 0.0});
    const auto x = Lottery::point_mass("ok"), y = Lottery::point_mass("meh"), z = Lottery::point_mass("slur");
    EXPECT_EQ(prefer(a, x, y), Preference::x_preferred);
    EXPECT_EQ(prefer(a, mix(x, z, 0.5), mix(y, z, 0.5)), Preference::indifferent);
    EXPECT_EQ(prefer(a, x, mix(y, z, 0.5)), Preference::x_preferred);
    EXPECT_EQ(prefer(a, mix(x, z, 0.5), y), Preference::y_preferred);
}

TEST(Prefer, EpsilonIndifference) {
    const Agent a("eu", UtilityFunction({{"a", 1.0}, {"b", 1.3}}), ExpectedUtilityBehavior{}, 0.5);
    EXPECT_EQ(prefer(a, Lottery::point_mass("a"), Lottery::point_mass("b")), Preference::indifferent);
    EXPECT_THROW(a.with_indifference(-1.0), validation_error);
}

TEST(Prefer, AntisymmetryProperty) {
    Rng rng(5);
    const std::vector<OutcomeId> ids{"a", "b", "c"};
    for (int t = 0; t < 1000; ++t) {
        std::map<OutcomeId, double> v;
        for (const auto& id : ids) v[id] = std::round(rng.uniform(0, 4));  // ties happen
        const Agent a("eu", UtilityFunction(v), ExpectedUtilityBehavior{}, 0.0);
        const auto x = random_simplex(ids, rng), y = random_simplex(ids, rng);
        EXPECT_EQ(prefer(a, x, y) == Preference::x_preferred, prefer(a, y, x) == Preference::y_preferred);
        EXPECT_EQ(prefer(a, x, x), Preference::indifferent);
    }
}

TEST(Mix, Boundaries) {
    const Lottery x({{"a", 0.3}, {"b", 0.7}}), z = Lottery::point_mass("c");
    EXPECT_EQ(mix(x, z, 1.0), x);
    EXPECT_EQ(mix(x, z, 0.0), z);
    const auto m = mix(Lottery::point_mass("a"), Lottery::point_mass("b"), 0.25);
    EXPECT_DOUBLE_EQ(m.probability("a"), 0.25);
    EXPECT_DOUBLE_EQ(m.probability("b"), 0.75);
    EXPECT_THROW(mix(x, z, 1.5), range_error);
    EXPECT_THROW(mix(x, z, -0.1), range_error);
}

TEST(Sample, Examples) {
    EXPECT_EQ(sample(Lottery::point_mass("a"), 5, 1), std::vector<OutcomeId>(5, "a"));
    const Lottery l({{"a", 0.8}, {"b", 0.2}});
    EXPECT_EQ(sample(l, 1000, 42), sample(l, 1000, 42));
    EXPECT_NE(sample(l, 1000, 42), sample(l, 1000, 43));
    const auto s = sample(l, 100000, 7);
    const double freq = static_cast<double>(std::count(s.begin(), s.end(), "a")) / 1e5;
    EXPECT_NEAR(freq, 0.8, 0.01);
    EXPECT_TRUE(sample(l, 0, 1).empty());
}

TEST(Sample, ZeroMassOutcomesNeverDrawn) {
    const Lottery l({{"a", 0.0}, {"b", 1.0}, {"c", 0.0}});
    for (const auto& o : sample(l, 2000, 9)) EXPECT_EQ(o, "b");
}

TEST(OrdinalEquivalence, Examples) {
    const auto uni = OutcomeUniverse::from_ids({"s1", "s2", "s3"});
    const auto u = linear_utility(3);
    EXPECT_TRUE(ordinally_equivalent(u, u.transformed([](double x) { return x * x * x; }), uni));
    EXPECT_FALSE(ordinally_equivalent(u, UtilityFunction({{"s1", -1.0}, {"s2", -2.0}, {"s3", -3.0}}), uni));
    EXPECT_TRUE(ordinally_equivalent(u, u.transformed([](double x) { return 2 * x + 7; }), uni));
}

TEST(AffineEquivalence, Examples) {
    const auto uni = OutcomeUniverse::from_ids({"s1", "s2", "s3"});
    const auto u = linear_utility(3);
    const auto m = affine_equivalent(u, u.transformed([](double x) { return 2 * x + 7; }), uni);
    ASSERT_TRUE(m);
    EXPECT_NEAR(m->scale, 2.0, 1e-12);
    EXPECT_NEAR(m->offset, 7.0, 1e-12);
    EXPECT_FALSE(affine_equivalent(u, u.transformed([](double x) { return x * x; }), uni));
    const auto id = affine_equivalent(u, u, uni);
    ASSERT_TRUE(id);
    EXPECT_EQ(id->scale, 1.0);
    EXPECT_EQ(id->offset, 0.0);
}

TEST(AffineEquivalence, ConstantCases) {
    const auto uni = OutcomeUniverse::from_ids({"a", "b"});
    const UtilityFunction c({{"a", 1.0}, {"b", 1.0}});
    EXPECT_FALSE(affine_equivalent(c, UtilityFunction({{"a", 1.0}, {"b", 2.0}}), uni));
    const auto m = affine_equivalent(c, UtilityFunction({{"a", 4.0}, {"b", 4.0}}), uni);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->scale, 1.0);
    EXPECT_EQ(m->offset, 3.0);
}

TEST(AffineEquivalence, RecoversRandomMaps) {
    Rng rng(17);
    const auto uni = OutcomeUniverse::from_ids({"a", "b", "c", "d", "e"});
    for (int t = 0; t < 1000; ++t) {
        std::map<OutcomeId, double> v;
        for (const auto& id : uni.ids()) v[id] = rng.uniform(-5, 5);
        const UtilityFunction u(v);
        const double a = std::max(1e-3, rng.uniform(0, 10)), b = rng.uniform(-10, 10);
        const auto m = affine_equivalent(u, u.transformed([&](double x) { return a * x + b; }), uni);
        ASSERT_TRUE(m);
        EXPECT_NEAR(m->scale, a, 1e-9);
        EXPECT_NEAR(m->offset, b, 1e-9);
        // strictly increasing, nonlinear
        EXPECT_TRUE(ordinally_equivalent(u, u.transformed([](double x) { return std::exp(x) + x * x * x; }), uni));
    }
}

TEST(CsvForms, RoundTrip) {
    const Lottery l({{"a", 0.1}, {"b", 0.2}, {"c", 0.7}});
    std::stringstream ss;
    write_lottery_csv(ss, l);
    EXPECT_EQ(read_lottery_csv(ss, "mem"), l);
    const UtilityFunction u({{"a", 1.9}, {"b", -3.25}});
    std::stringstream su;
    write_utility_csv(su, u);
    EXPECT_EQ(read_utility_csv(su, "mem").values(), u.values());
}

TEST(CsvForms, ErrorsCarryLocation) {
    std::stringstream bad("outcome_id,probability\na,0.5\nb,zz\n");
    try {
        read_lottery_csv(bad, "l.csv");
        FAIL();
    } catch (const data_error& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("l.csv:3"), std::string::npos);
    }
    std::stringstream header("id,p\na,1\n");
    EXPECT_THROW(read_lottery_csv(header, "h.csv"), data_error);
    std::stringstream mass("outcome_id,probability\na,0.5\n");
    EXPECT_THROW(read_lottery_csv(mass, "m.csv"), data_error);
}

TEST(Rng, DeterministicStreams) {
    Rng a(derive_seed(1, {2, 3})), b(derive_seed(1, {2, 3})), c(derive_seed(1, {3, 2}));
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        EXPECT_EQ(x, b.uniform());
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
    EXPECT_NE(Rng(derive_seed(1, {2, 3})).uniform(), c.uniform());
}

TEST(Rng, TruncatedNormalStaysInBounds) {
    Rng r(1);
    double total = 0;
    for (int i = 0; i < 20000; ++i) {
        const double x = r.truncated_normal(0.9, 0.3, 0.0, 1.0);
        ASSERT_GE(x, 0.0);
        ASSERT_LE(x, 1.0);
        total += x;
    }
    EXPECT_LT(total / 20000, 0.9);
}
