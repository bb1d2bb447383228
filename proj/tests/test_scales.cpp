#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prefeval/report_io.hpp"
#include "prefeval/scales.hpp"

using namespace prefeval;
using oracle::Q;

TEST(Tier, Examples) {
    EXPECT_EQ(tier(1.0, 5), 1);
    EXPECT_EQ(tier(0.0, 5), 1);
    EXPECT_EQ(tier(4.2, 5), 5);
    EXPECT_EQ(tier(1.0000001, 5), 2);
    EXPECT_EQ(tier(5.0, 5), 5);
    EXPECT_THROW(tier(-0.1, 5), range_error);
    EXPECT_THROW(tier(5.1, 5), range_error);
    EXPECT_THROW(tier(1.0, 1), range_error);
}

TEST(Tier, HalfUpIsOptIn) {
    EXPECT_EQ(tier(1.2, 5, Rounding::half_up), 1);
    EXPECT_EQ(tier(1.5, 5, Rounding::half_up), 2);
    EXPECT_EQ(tier(0.2, 5, Rounding::half_up), 1);
    EXPECT_EQ(tier(1.2, 5), 2);
}

TEST(Tier, MonotoneProperty) {
    Rng rng(1);
    for (int t = 0; t < 10000; ++t) {
        const int k = 2 + static_cast<int>(rng.below(9));
        double a = rng.uniform(0, k), b = rng.uniform(0, k);
        if (a > b) std::swap(a, b);
        EXPECT_LE(tier(a, k), tier(b, k));
        EXPECT_GE(tier(a, k), 1);
        EXPECT_LE(tier(b, k), k);
    }
}

TEST(Residual, Examples) {
    EXPECT_NEAR(residual(1.9), 0.1, 1e-12);
    EXPECT_EQ(residual(2.0), 0.0);
    EXPECT_NEAR(residual(1.2), 0.8, 1e-12);
    EXPECT_THROW(residual(0.0), range_error);
}

TEST(Rate, Examples) {
    EXPECT_EQ(rate(73.5, RatingScale::continuous(100)), 73.5);
    EXPECT_EQ(rate(3.01, RatingScale::likert(5)), 4);
    EXPECT_EQ(rate(7.0, RatingScale::likert(7)), 7);
    EXPECT_THROW(rate(101, RatingScale::continuous(100)), range_error);
    EXPECT_THROW(RatingScale::likert(1), range_error);
    EXPECT_THROW(RatingScale::likert(101), range_error);
    EXPECT_THROW(RatingScale::continuous(0), range_error);
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const double u = rng.uniform(0, 10);
        EXPECT_EQ(rate(u, RatingScale::continuous(10)), u);
    }
}

TEST(AnalyzePair, BundledReversalMatchesExactEnumeration) {
    const auto inst = fixed_reversal_instance(5);
    const auto s = analyze_pair(inst.x, inst.y, inst.u, 5);
    const auto e = oracle::enumerate({{Q(1), Q(19, 10)}}, {{Q(1, 2), Q(12, 10)}, {Q(1, 2), Q(22, 10)}});
    EXPECT_EQ(e.eu_x, Q(19, 10));
    EXPECT_EQ(e.eu_y, Q(17, 10));
    EXPECT_EQ(e.tier_x, Q(2));
    EXPECT_EQ(e.tier_y, Q(5, 2));
    EXPECT_NEAR(s.eu_x, e.eu_x.value(), 1e-12);
    EXPECT_NEAR(s.eu_y, e.eu_y.value(), 1e-12);
    EXPECT_NEAR(s.expected_residual_x, 0.1, 1e-12);
    EXPECT_NEAR(s.expected_residual_y, 0.8, 1e-12);
    EXPECT_EQ(s.mean_tier_x, 2.0);
    EXPECT_EQ(s.mean_tier_y, 2.5);
    EXPECT_TRUE(s.reversal);
    EXPECT_EQ(s.bias, Bias::underestimates_x);
}

TEST(AnalyzePair, BundledDataFileMatchesBuiltIn) {
    const std::string dir = std::string(PREFEVAL_DATA_DIR) + "/reversal_instance/";
    const auto x = load_lottery(dir + "x.csv"), y = load_lottery(dir + "y.csv");
    const auto u = load_utility(dir + "utility.csv");
    const auto inst = fixed_reversal_instance(5);
    EXPECT_TRUE(same_distribution(x, inst.x, 0.0));
    EXPECT_TRUE(same_distribution(y, inst.y, 0.0));
    EXPECT_EQ(u.values(), inst.u.values());
    EXPECT_TRUE(analyze_pair(x, y, u, 5).reversal);
}

TEST(AnalyzePair, SymmetricAndIntegerCases) {
    const UtilityFunction u({{"a", 1.3}, {"b", 2.0}, {"c", 4.0}});
    const Lottery x({{"a", 0.4}, {"b", 0.6}});
    const auto s = analyze_pair(x, x, u, 5);
    EXPECT_EQ(s.bias, Bias::unbiased);
    EXPECT_FALSE(s.reversal);
    const auto t = analyze_pair(Lottery::point_mass("b"), Lottery({{"b", 0.5}, {"c", 0.5}}), u, 5);
    EXPECT_EQ(t.expected_residual_x, 0.0);
    EXPECT_EQ(t.expected_residual_y, 0.0);
    EXPECT_EQ(t.bias, Bias::unbiased);
    EXPECT_FALSE(t.reversal);
}

TEST(AnalyzePair, RangeErrors) {
    const UtilityFunction zero({{"a", 0.0}, {"b", 1.0}});
    EXPECT_THROW(analyze_pair(Lottery::point_mass("a"), Lottery::point_mass("b"), zero, 5), range_error);
    const UtilityFunction big({{"a", 6.0}, {"b", 1.0}});
    EXPECT_THROW(analyze_pair(Lottery::point_mass("a"), Lottery::point_mass("b"), big, 5), range_error);
}

TEST(AnalyzePair, ResidualIdentityBiasAndReversalProperty) {
    Rng rng(99);
    for (int t = 0; t < 10000; ++t) {
        const int k = 2 + static_cast<int>(rng.below(9));
        std::map<OutcomeId, double> v;
        std::vector<Lottery::Entry> wx, wy;
        for (int i = 0; i < 5; ++i) {
            const std::string id = "o" + std::to_string(i);
            v[id] = rng.uniform(1e-9, k);
            if (rng.bernoulli(0.5)) v[id] = std::ceil(v[id]);  // exercise integer boundaries
            wx.push_back({id, rng.uniform()});
            wy.push_back({id, rng.uniform()});
        }
        const UtilityFunction u(v, 0.0, k);
        const auto x = Lottery::renormalized(wx), y = Lottery::renormalized(wy);
        const auto s = analyze_pair(x, y, u, k);
        EXPECT_NEAR(s.mean_tier_x, s.eu_x + s.expected_residual_x, 1e-9);
        EXPECT_NEAR(s.mean_tier_y, s.eu_y + s.expected_residual_y, 1e-9);
        EXPECT_GE(s.expected_residual_x, 0.0);
        EXPECT_LT(s.expected_residual_x, 1.0);
        EXPECT_LT(std::abs(s.expected_residual_y - s.expected_residual_x), 1.0);
        const int bias = sign_of(s.expected_residual_x - s.expected_residual_y, 1e-9);
        EXPECT_EQ(bias, sign_of((s.mean_tier_x - s.mean_tier_y) - (s.eu_x - s.eu_y), 1e-9));
        if (s.reversal) {
            EXPECT_NE(s.eu_x, s.eu_y);
            EXPECT_LT(std::abs(s.eu_x - s.eu_y), std::abs(s.expected_residual_y - s.expected_residual_x));
        }
    }
}

TEST(ConstructReversal, VerifiedForManyKAndSeeds) {
    for (int k = 2; k <= 10; ++k)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto inst = construct_reversal(k, seed);
            const auto s = analyze_pair(inst.x, inst.y, inst.u, k);
            EXPECT_TRUE(s.reversal) << "k=" << k << " seed=" << seed;
            EXPECT_GT(s.eu_x, s.eu_y);
        }
}

TEST(ConstructReversal, TwoTierFallbackIsExact) {
    const auto inst = fixed_reversal_instance(2);
    const auto e = oracle::enumerate({{Q(1, 2), Q(1)}, {Q(1, 2), Q(2)}}, {{Q(1), Q(11, 10)}});
    EXPECT_TRUE(e.eu_y < e.eu_x);
    EXPECT_TRUE(e.tier_x < e.tier_y);
    EXPECT_TRUE(analyze_pair(inst.x, inst.y, inst.u, 2).reversal);
    // zero draws forces the fallback
    const auto fb = construct_reversal(5, 0, 0);
    EXPECT_FALSE(fb.from_search);
    EXPECT_TRUE(analyze_pair(fb.x, fb.y, fb.u, 5).reversal);
}

TEST(ResidualSummary, JsonFields) {
    const auto inst = fixed_reversal_instance(5);
    const auto j = to_json(analyze_pair(inst.x, inst.y, inst.u, 5));
    EXPECT_EQ(j.at("reversal"), true);
    EXPECT_EQ(j.at("bias"), "underestimates-X");
    EXPECT_DOUBLE_EQ(j.at("mean_tier_y").get<double>(), 2.5);
}
