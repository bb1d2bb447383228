#pragma once

#include <fmt/format.h>

#include <string>
#include <vector>

#include "protocols.hpp"
#include "rationality.hpp"
#include "scales.hpp"

// Built-in demonstrations: Likert reversal, the residual identity, the VNM
// axiom audit, the offensive-output independence violation, and extremum
// normalization for aggregated expected utility.
namespace prefeval {

struct CheckResult {
    std::string name;
    bool passed = true;
    bool informational = false;  // reported, never fails the run
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    Rounding rounding = Rounding::ceiling;
    std::size_t independence_density = 99;
    int k = 5;
    std::size_t residual_samples = 10000;
    std::size_t axiom_triples = 1000;
    std::size_t affine_trials = 100;
};

// Lottery over `ids` with random weights; some outcomes may get zero mass.
inline Lottery random_lottery(const std::vector<OutcomeId>& ids, Rng& rng) {
    std::vector<Lottery::Entry> w;
    for (const auto& id : ids) w.push_back({id, rng.bernoulli(0.8) ? rng.uniform() : 0.0});
    if (std::all_of(w.begin(), w.end(), [](const auto& e) { return e.probability == 0.0; })) w.front().probability = 1.0;
    return Lottery::renormalized(std::move(w));
}

inline std::vector<OutcomeId> numbered_outcomes(std::size_t n, const std::string& prefix = "s") {
    std::vector<OutcomeId> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
    return ids;
}

// Two annotators who disagree on X vs Y. The lenient one scores system
// outputs within 90..100 but puts the worst reference at 0; the strict one
// uses 0..10 throughout. Raw utilities let the lenient annotator's larger
// spread decide the aggregate; extremum normalization removes that.
struct MagnitudeScenario {
    AgentPopulation population;
    Lottery x;
    Lottery y;
    ExtremumSpec spec;
    std::vector<double> strict_weights;  // weight of the strict annotator to sweep
};

inline MagnitudeScenario magnitude_scenario() {
    Agent strict("strict", UtilityFunction({{"best", 10.0}, {"worst", 0.0}, {"x", 7.0}, {"y", 3.0}}, 0.0, 10.0));
    Agent lenient("lenient", UtilityFunction({{"best", 100.0}, {"worst", 0.0}, {"x", 90.0}, {"y", 98.0}}, 0.0, 100.0));
    std::vector<double> sweep;
    for (int i = 0; i <= 12; ++i) sweep.push_back(0.3 + 0.05 * i);
    return {AgentPopulation::uniform({strict, lenient}), Lottery::point_mass("x"), Lottery::point_mass("y"),
            ExtremumSpec{"best", "worst", 1.0, 0.0}, sweep};
}

// Signs of EEU(X) - EEU(Y) across the weight sweep.
inline std::vector<int> eeu_signs(const MagnitudeScenario& s, bool normalize) {
    const AgentPopulation base = normalize ? extremum_normalize(s.population, s.spec) : s.population;
    std::vector<int> out;
    for (double w : s.strict_weights) {
        AgentPopulation pop(base.agents(), {w, 1.0 - w});
        out.push_back(sign_of(eeu(pop, s.x) - eeu(pop, s.y)));
    }
    return out;
}

inline bool has_flip(const std::vector<int>& signs) {
    for (std::size_t i = 1; i < signs.size(); ++i)
        if (signs[i] != signs[0]) return true;
    return false;
}

// Ranks systems by EEU, best first.
inline std::vector<std::size_t> eeu_ranking(const AgentPopulation& pop, const std::vector<Lottery>& systems) {
    std::vector<double> scores;
    for (const auto& s : systems) scores.push_back(eeu(pop, s));
    std::vector<std::size_t> order(systems.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

inline std::vector<CheckResult> run_verification(const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    const std::string mode = to_string(opt.rounding);

    {
        const auto inst = fixed_reversal_instance(opt.k);
        const auto s = analyze_pair(inst.x, inst.y, inst.u, opt.k, opt.rounding);
        CheckResult c{"likert reversal (bundled instance, rounding=" + mode + ")", s.reversal,
                      opt.rounding != Rounding::ceiling,
                      fmt::format("EU {:.3f} vs {:.3f}, mean tier {:.3f} vs {:.3f}, reversal={}", s.eu_x, s.eu_y,
                                  s.mean_tier_x, s.mean_tier_y, s.reversal)};
        if (c.informational) c.passed = true;
        out.push_back(c);
    }

    {
        Rng rng(derive_seed(opt.seed, {1}));
        double worst = 0.0;
        std::size_t sign_failures = 0, bound_failures = 0;
        const auto ids = numbered_outcomes(4);
        for (std::size_t i = 0; i < opt.residual_samples; ++i) {
            std::map<OutcomeId, double> values;
            for (const auto& id : ids) values[id] = std::max(1e-6, rng.uniform() * opt.k);
            const UtilityFunction u(values, 0.0, opt.k);
            const auto x = random_lottery(ids, rng), y = random_lottery(ids, rng);
            const auto s = analyze_pair(x, y, u, opt.k, opt.rounding);
            worst = std::max({worst, std::abs(s.mean_tier_x - s.eu_x - s.expected_residual_x),
                              std::abs(s.mean_tier_y - s.eu_y - s.expected_residual_y)});
            const double tier_gap = s.mean_tier_x - s.mean_tier_y, eu_gap = s.eu_x - s.eu_y;
            if (sign_of(s.expected_residual_x - s.expected_residual_y, 1e-9) != sign_of(tier_gap - eu_gap, 1e-9))
                ++sign_failures;
            if (opt.rounding == Rounding::ceiling && !(std::abs(s.expected_residual_y - s.expected_residual_x) < 1.0))
                ++bound_failures;
        }
        out.push_back({"residual identity E[tier] = E[u] + E[r] (" + std::to_string(opt.residual_samples) + " pairs)",
                       worst <= 1e-9 && sign_failures == 0 && bound_failures == 0, false,
                       fmt::format("max error {:.3g}, bias-sign mismatches {}, residual-gap bound violations {}", worst,
                                   sign_failures, bound_failures)});
    }

    {
        Rng rng(derive_seed(opt.seed, {2}));
        const auto ids = numbered_outcomes(4);
        const auto grid = independence_grid(opt.independence_density);
        std::size_t violations = 0;
        double worst_residual = 0.0;
        for (std::size_t i = 0; i < opt.axiom_triples; ++i) {
            std::map<OutcomeId, double> values;
            for (const auto& id : ids) values[id] = rng.uniform(-5.0, 5.0);
            const Agent a("eu", UtilityFunction(values), ExpectedUtilityBehavior{}, 0.0);
            std::vector<Lottery> l{random_lottery(ids, rng), random_lottery(ids, rng), random_lottery(ids, rng)};
            violations += !check_completeness(a, l[0], l[1]).holds;
            violations += !check_transitivity(a, l[0], l[1], l[2]).holds;
            violations += !check_independence(a, l[0], l[1], l[2], grid).holds;
            std::sort(l.begin(), l.end(), [&](const Lottery& p, const Lottery& q) {
                return expected_utility(p, a.utility()) > expected_utility(q, a.utility());
            });
            if (expected_utility(l[0], a.utility()) > expected_utility(l[2], a.utility()))
                worst_residual = std::max(worst_residual, continuity_residual(a, l[0], l[1], l[2]));
        }
        out.push_back({"VNM axioms for expected-utility agents (" + std::to_string(opt.axiom_triples) + " triples)",
                       violations == 0 && worst_residual <= 1e-9, false,
                       fmt::format("violations {}, max continuity residual {:.3g}", violations, worst_residual)});
    }

    {
        const auto sc = threshold_scenario();
        const auto grid = independence_grid(opt.independence_density);
        const auto r = check_independence(sc.agent, sc.x, sc.y, sc.z, grid);
        const bool sound = r.witness && !recheck(sc.agent, r).holds;
        out.push_back({"independence violation by threshold agent (grid density " +
                           std::to_string(opt.independence_density) + ")",
                       !r.holds && sound && prefer(sc.agent, sc.x, sc.y) == Preference::x_preferred, false,
                       r.witness ? fmt::format("witness p = {:.4f}: {}", r.witness->p.value_or(1.0), r.witness->detail)
                                 : std::string("no violation found")});
    }

    {
        const auto sc = magnitude_scenario();
        const bool raw_flips = has_flip(eeu_signs(sc, false));
        const bool normalized_flips = has_flip(eeu_signs(sc, true));
        out.push_back({"EEU magnitude bias removed by extremum normalization", raw_flips && !normalized_flips, false,
                       fmt::format("raw order flips under weight shift: {}; normalized flips: {}", raw_flips,
                                   normalized_flips)});
    }

    {
        Rng rng(derive_seed(opt.seed, {3}));
        const std::vector<OutcomeId> ids{"best", "worst", "o1", "o2", "o3", "o4"};
        std::vector<Agent> agents;
        for (int i = 0; i < 5; ++i) {
            std::map<OutcomeId, double> v{{"best", 1.0}, {"worst", 0.0}};
            for (const auto& id : {"o1", "o2", "o3", "o4"}) v[id] = rng.uniform(0.05, 0.95);
            agents.emplace_back("agent" + std::to_string(i), UtilityFunction(v));
        }
        const AgentPopulation pop = AgentPopulation::uniform(agents);
        std::vector<Lottery> systems;
        for (int s = 0; s < 4; ++s) systems.push_back(random_lottery(ids, rng));
        const ExtremumSpec spec{"best", "worst", 1.0, 0.0};
        const auto reference = eeu_ranking(extremum_normalize(pop, spec), systems);
        std::size_t changed = 0;
        for (std::size_t t = 0; t < opt.affine_trials; ++t) {
            std::vector<Agent> moved;
            for (const auto& a : pop.agents()) {
                const AffineMap f{rng.uniform(0.01, 100.0), rng.uniform(-100.0, 100.0)};
                moved.push_back(a.with_utility(a.utility().transformed(f)));
            }
            const AgentPopulation shifted(moved, pop.weights());
            if (eeu_ranking(extremum_normalize(shifted, spec), systems) != reference) ++changed;
        }
        out.push_back({"EEU ranking invariant under affine rescaling + extremum normalization (" +
                           std::to_string(opt.affine_trials) + " trials)",
                       changed == 0, false, fmt::format("rankings changed: {}", changed)});
    }
    return out;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace prefeval
