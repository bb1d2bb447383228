#pragma once

#include <cmath>
#include <string>

#include "core.hpp"

// Rating scales and the bias that Likert tiering introduces into averaged
// ratings.
//
// An annotator with equal-width tiers normalizes utility to [0, k] and reports
// the ceiling, so a rating is u + r with residual r = ceil(u) - u in [0, 1).
// Averaging ratings therefore estimates E[u] + E[r], and whenever two systems
// have different expected residuals the comparison is biased; when the
// residual gap exceeds the utility gap the comparison flips.
namespace prefeval {

// ceiling: [0,1] -> 1, (1,2] -> 2, ... (default).
// half_up: round to nearest with ties up, clamped to [1,k]; this makes the
// bottom bucket wider and exists only for comparison.
enum class Rounding { ceiling, half_up };

inline const char* to_string(Rounding r) { return r == Rounding::ceiling ? "ceiling" : "half-up"; }

struct RatingScale {
    enum class Kind { likert, continuous };

    Kind kind = Kind::likert;
    int k = 5;             // likert points
    double k_max = 100.0;  // continuous upper end

    static RatingScale likert(int points) {
        if (points < 2 || points > 100) throw range_error("likert scale needs 2..100 points");
        return {Kind::likert, points, static_cast<double>(points)};
    }

    static RatingScale continuous(double top) {
        if (!(std::isfinite(top) && top > 0.0)) throw range_error("continuous scale needs a finite positive maximum");
        return {Kind::continuous, 0, top};
    }

    // Upper end of the normalized utility range.
    double top() const { return kind == Kind::likert ? static_cast<double>(k) : k_max; }
};

inline int tier(double u, int k, Rounding mode = Rounding::ceiling) {
    if (k < 2) throw range_error("likert scale needs at least 2 points");
    if (!(u >= 0.0 && u <= static_cast<double>(k)))
        throw range_error("utility " + csv::format_double(u) + " outside [0," + std::to_string(k) + "]");
    if (mode == Rounding::half_up) return std::clamp(static_cast<int>(std::floor(u + 0.5)), 1, k);
    return std::max(1, static_cast<int>(std::ceil(u)));
}

inline double residual(double u) {
    if (!(u > 0.0) || !std::isfinite(u)) throw range_error("residual needs a finite utility > 0");
    return std::ceil(u) - u;
}

inline double rate(double u_value, const RatingScale& scale, Rounding mode = Rounding::ceiling) {
    if (scale.kind == RatingScale::Kind::likert) return tier(u_value, scale.k, mode);
    if (!(u_value >= 0.0 && u_value <= scale.k_max))
        throw range_error("utility " + csv::format_double(u_value) + " outside continuous scale");
    return u_value;
}

enum class Bias { overestimates_x, underestimates_x, unbiased };

inline const char* to_string(Bias b) {
    switch (b) {
        case Bias::overestimates_x: return "overestimates-X";
        case Bias::underestimates_x: return "underestimates-X";
        default: return "unbiased";
    }
}

struct ResidualSummary {
    double expected_residual_x = 0.0;
    double expected_residual_y = 0.0;
    double eu_x = 0.0;
    double eu_y = 0.0;
    double mean_tier_x = 0.0;
    double mean_tier_y = 0.0;
    Bias bias = Bias::unbiased;
    bool reversal = false;
};

// Differences below this are treated as ties when classifying signs; the
// exact enumeration only accumulates rounding noise far below it.
inline constexpr double kSignTolerance = 1e-12;

inline int sign_of(double d, double tol = kSignTolerance) { return (d > tol) - (d < -tol); }

// Exact enumeration of E[u], E[r] and E[tier] for both lotteries. Under
// half-up rounding the residual is tier - u, so the identity E[tier] = E[u] + E[r]
// still holds but r is no longer confined to [0,1).
inline ResidualSummary analyze_pair(const Lottery& x, const Lottery& y, const UtilityFunction& u, int k,
                                    Rounding mode = Rounding::ceiling) {
    auto moments = [&](const Lottery& l, double& eu, double& er, double& et) {
        eu = er = et = 0.0;
        for (const auto& e : l.support()) {
            const double v = u(e.outcome);
            if (!(v > 0.0 && v <= static_cast<double>(k)))
                throw range_error("utility of '" + e.outcome + "' outside (0," + std::to_string(k) + "]");
            const int t = tier(v, k, mode);
            eu += e.probability * v;
            er += e.probability * (static_cast<double>(t) - v);
            et += e.probability * static_cast<double>(t);
        }
    };
    ResidualSummary s;
    moments(x, s.eu_x, s.expected_residual_x, s.mean_tier_x);
    moments(y, s.eu_y, s.expected_residual_y, s.mean_tier_y);
    switch (sign_of(s.expected_residual_x - s.expected_residual_y)) {
        case 1: s.bias = Bias::overestimates_x; break;
        case -1: s.bias = Bias::underestimates_x; break;
        default: s.bias = Bias::unbiased; break;
    }
    const int eu_order = sign_of(s.eu_x - s.eu_y);
    const int tier_order = sign_of(s.mean_tier_x - s.mean_tier_y);
    s.reversal = eu_order != 0 && tier_order == -eu_order;
    return s;
}

struct ReversalInstance {
    Lottery x;
    Lottery y;
    UtilityFunction u;
    bool from_search = false;  // false when the fixed fallback was returned
};

// The bundled instance: EU 1.9 vs 1.7, mean tiers 2.0 vs 2.5. Needs k >= 3;
// for k = 2 the two-tier variant EU 1.5 vs 1.1, mean tiers 1.5 vs 2.0.
inline ReversalInstance fixed_reversal_instance(int k = 5) {
    if (k < 2) throw range_error("likert scale needs at least 2 points");
    const double top = static_cast<double>(k);
    if (k == 2) {
        return {Lottery({{"x_low", 0.5}, {"x_high", 0.5}}), Lottery::point_mass("y_mid"),
                UtilityFunction({{"x_low", 1.0}, {"x_high", 2.0}, {"y_mid", 1.1}}, 0.0, top), false};
    }
    return {Lottery::point_mass("a"), Lottery({{"b", 0.5}, {"c", 0.5}}),
            UtilityFunction({{"a", 1.9}, {"b", 1.2}, {"c", 2.2}}, 0.0, top), false};
}

// Random search over utilities on a 0.1 grid in (0, k] and lotteries with at
// most four outcomes each. Every returned instance is checked by analyze_pair;
// after 10,000 misses the fixed instance is returned. X always has the higher EU.
inline ReversalInstance construct_reversal(int k, std::uint64_t seed, std::size_t max_draws = 10000) {
    if (k < 2) throw range_error("likert scale needs at least 2 points");
    Rng rng(seed);
    const auto grid_points = static_cast<std::uint64_t>(10 * k);
    for (std::size_t draw_no = 0; draw_no < max_draws; ++draw_no) {
        std::map<OutcomeId, double> values;
        auto make = [&](const std::string& prefix) {
            const std::size_t n = 1 + rng.below(4);
            std::vector<Lottery::Entry> w;
            for (std::size_t i = 0; i < n; ++i) {
                const std::string id = prefix + std::to_string(i);
                values[id] = static_cast<double>(1 + rng.below(grid_points)) / 10.0;
                w.push_back({id, 0.05 + rng.uniform()});
            }
            return Lottery::renormalized(std::move(w));
        };
        Lottery a = make("x");
        Lottery b = make("y");
        UtilityFunction u(values, 0.0, static_cast<double>(k));
        const auto s = analyze_pair(a, b, u, k);
        if (!s.reversal) continue;
        if (s.eu_x > s.eu_y) return {std::move(a), std::move(b), std::move(u), true};
        return {std::move(b), std::move(a), std::move(u), true};
    }
    return fixed_reversal_instance(k);
}

}  // namespace prefeval
