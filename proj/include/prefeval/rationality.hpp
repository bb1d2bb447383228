#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

// Checkers for the four von Neumann-Morgenstern axioms on concrete lotteries.
// Each checker works on a preference oracle so that arbitrary user-supplied
// judgment functions can be audited, with Agent overloads for convenience.
namespace prefeval {

enum class Axiom { completeness, transitivity, continuity, independence };

inline const char* to_string(Axiom a) {
    switch (a) {
        case Axiom::completeness: return "completeness";
        case Axiom::transitivity: return "transitivity";
        case Axiom::continuity: return "continuity";
        default: return "independence";
    }
}

// Lotteries in checker argument order, plus the mixing weight when relevant.
struct AxiomWitness {
    std::vector<Lottery> lotteries;
    std::optional<double> p;
    std::string detail;
};

struct AxiomReport {
    Axiom axiom = Axiom::completeness;
    bool holds = true;
    std::optional<AxiomWitness> witness;  // present iff !holds
};

// Relation of the first lottery to the second; nullopt means "no answer".
using PreferenceOracle = std::function<std::optional<Preference>(const Lottery&, const Lottery&)>;

inline PreferenceOracle oracle_for(const Agent& a) {
    return [a](const Lottery& x, const Lottery& y) -> std::optional<Preference> { return prefer(a, x, y); };
}

namespace detail {
inline AxiomReport violated(Axiom axiom, std::vector<Lottery> lotteries, std::optional<double> p, std::string why) {
    return {axiom, false, AxiomWitness{std::move(lotteries), p, std::move(why)}};
}
}  // namespace detail

// Exactly one relation must hold: both orders answer, and they mirror.
inline AxiomReport check_completeness(const PreferenceOracle& oracle, const Lottery& x, const Lottery& y) {
    const auto xy = oracle(x, y);
    const auto yx = oracle(y, x);
    if (!xy || !yx) return detail::violated(Axiom::completeness, {x, y}, std::nullopt, "oracle gave no answer");
    if (*yx != mirrored(*xy))
        return detail::violated(Axiom::completeness, {x, y}, std::nullopt,
                                std::string("inconsistent answers: ") + to_string(*xy) + " vs reversed " +
                                    to_string(*yx));
    return {Axiom::completeness, true, std::nullopt};
}

inline AxiomReport check_completeness(const Agent& a, const Lottery& x, const Lottery& y) {
    return check_completeness(oracle_for(a), x, y);
}

// (X>Y and Y>Z implies X>Z) and (X~Y and Y~Z implies X~Z), for this ordered triple.
inline AxiomReport check_transitivity(const PreferenceOracle& oracle, const Lottery& x, const Lottery& y,
                                      const Lottery& z) {
    const auto xy = oracle(x, y);
    const auto yz = oracle(y, z);
    const auto xz = oracle(x, z);
    auto is = [](const std::optional<Preference>& r, Preference p) { return r && *r == p; };
    if (is(xy, Preference::x_preferred) && is(yz, Preference::x_preferred) && !is(xz, Preference::x_preferred))
        return detail::violated(Axiom::transitivity, {x, y, z}, std::nullopt,
                                "X>Y and Y>Z but not X>Z");
    if (is(xy, Preference::indifferent) && is(yz, Preference::indifferent) && !is(xz, Preference::indifferent))
        return detail::violated(Axiom::transitivity, {x, y, z}, std::nullopt,
                                std::string("X~Y and Y~Z but X vs Z is ") +
                                    (xz ? to_string(*xz) : "unanswered"));
    return {Axiom::transitivity, true, std::nullopt};
}

inline AxiomReport check_transitivity(const Agent& a, const Lottery& x, const Lottery& y, const Lottery& z) {
    return check_transitivity(oracle_for(a), x, y, z);
}

// Rounding slack when confirming the solved mixture, for agents with epsilon 0.
inline constexpr double kContinuityTolerance = 1e-9;

// The p with p*EU(X) + (1-p)*EU(Z) = EU(Y). Requires an expected-utility
// agent with X >= Y >= Z.
inline double solve_continuity(const Agent& a, const Lottery& x, const Lottery& y, const Lottery& z) {
    if (!a.is_expected_utility()) throw precondition_error("continuity solver needs an expected-utility agent");
    if (prefer(a, x, y) == Preference::y_preferred || prefer(a, y, z) == Preference::y_preferred)
        throw precondition_error("continuity solver needs X >= Y >= Z");
    const double ex = expected_utility(x, a.utility());
    const double ey = expected_utility(y, a.utility());
    const double ez = expected_utility(z, a.utility());
    if (ex == ez) {
        if (ey == ex) return 0.5;  // any p works
        throw precondition_error("EU(X) = EU(Z) but EU(Y) differs");
    }
    return std::clamp((ey - ez) / (ex - ez), 0.0, 1.0);
}

// Solves for p and confirms the mixture is indifferent to Y. Holds vacuously
// when X >= Y >= Z is not satisfied.
inline AxiomReport check_continuity(const Agent& a, const Lottery& x, const Lottery& y, const Lottery& z) {
    if (prefer(a, x, y) == Preference::y_preferred || prefer(a, y, z) == Preference::y_preferred)
        return {Axiom::continuity, true, std::nullopt};
    double p = 0.0;
    try {
        p = solve_continuity(a, x, y, z);
    } catch (const precondition_error& e) {
        return detail::violated(Axiom::continuity, {x, y, z}, std::nullopt, e.what());
    }
    const double gap = std::abs(expected_utility(mix(x, z, p), a.utility()) - expected_utility(y, a.utility()));
    if (gap > std::max(a.indifference(), kContinuityTolerance))
        return detail::violated(Axiom::continuity, {x, y, z}, p, "mixture at solved p is not indifferent to Y");
    return {Axiom::continuity, true, std::nullopt};
}

// |EU(pX + (1-p)Z) - EU(Y)| at the solved p.
inline double continuity_residual(const Agent& a, const Lottery& x, const Lottery& y, const Lottery& z) {
    const double p = solve_continuity(a, x, y, z);
    return std::abs(expected_utility(mix(x, z, p), a.utility()) - expected_utility(y, a.utility()));
}

// `density` evenly spaced interior points k/(density+1), plus p = 1.
inline std::vector<double> independence_grid(std::size_t density = 99) {
    std::vector<double> ps;
    for (std::size_t k = 1; k <= density; ++k) ps.push_back(static_cast<double>(k) / static_cast<double>(density + 1));
    ps.push_back(1.0);
    return ps;
}

// A strict unmixed preference must survive mixing both sides with Z at every p.
inline AxiomReport check_independence(const PreferenceOracle& oracle, const Lottery& x, const Lottery& y,
                                      const Lottery& z, const std::vector<double>& ps) {
    for (double p : ps)
        if (!(p > 0.0 && p <= 1.0)) throw range_error("independence mixing weight outside (0,1]");
    const auto base = oracle(x, y);
    if (!base || *base == Preference::indifferent) return {Axiom::independence, true, std::nullopt};
    for (double p : ps) {
        const auto mixed = oracle(mix(x, z, p), mix(y, z, p));
        if (!mixed || *mixed != *base)
            return detail::violated(Axiom::independence, {x, y, z}, p,
                                    std::string("unmixed ") + to_string(*base) + ", mixed " +
                                        (mixed ? to_string(*mixed) : "unanswered"));
    }
    return {Axiom::independence, true, std::nullopt};
}

inline AxiomReport check_independence(const Agent& a, const Lottery& x, const Lottery& y, const Lottery& z,
                                      const std::vector<double>& ps = independence_grid()) {
    return check_independence(oracle_for(a), x, y, z, ps);
}

// Re-runs the checker named by the report on its own witness.
inline AxiomReport recheck(const Agent& a, const AxiomReport& report) {
    if (!report.witness) return report;
    const auto& w = report.witness->lotteries;
    switch (report.axiom) {
        case Axiom::completeness: return check_completeness(a, w.at(0), w.at(1));
        case Axiom::transitivity: return check_transitivity(a, w.at(0), w.at(1), w.at(2));
        case Axiom::continuity: return check_continuity(a, w.at(0), w.at(1), w.at(2));
        default: return check_independence(a, w.at(0), w.at(1), w.at(2), {report.witness->p.value_or(1.0)});
    }
}

// Offensive-output scenario: X and Y are clean, Z is pure offensive text.
struct ThresholdScenario {
    Agent agent;
    Lottery x;
    Lottery y;
    Lottery z;
};

inline ThresholdScenario threshold_scenario(double tolerance = 0.0) {
    UtilityFunction u({{"coherent", 2.0}, {"bland", 1.0}, {"slur", 0.0}});
    Agent agent("threshold-annotator", std::move(u), ThresholdBehavior{{"slur"}, tolerance});
    return {std::move(agent), Lottery::point_mass("coherent"), Lottery::point_mass("bland"),
            Lottery::point_mass("slur")};
}

}  // namespace prefeval
