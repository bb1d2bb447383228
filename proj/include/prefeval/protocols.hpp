#pragma once

#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "core.hpp"
#include "scales.hpp"
#include "stats.hpp"

// The three evaluation protocols:
//   OAA  rate individual outputs and average (Likert or continuous scale);
//   ORA  compare outputs pairwise and fit Bradley-Terry strengths;
//   SPA  annotators state P[X > Y] after seeing m outputs of each system.
namespace prefeval {

// ---------------------------------------------------------------------------
// OAA
// ---------------------------------------------------------------------------

// Agent utility mapped linearly from its declared bounds onto [0, top].
inline double normalized_utility(const Agent& a, const OutcomeId& outcome, double top) {
    const auto& u = a.utility();
    const double lo = u.lower_bound(), hi = u.upper_bound();
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw domain_error("agent '" + a.id() + "' has degenerate utility bounds");
    return std::clamp((u(outcome) - lo) / (hi - lo) * top, 0.0, top);
}

struct RatingTable {
    std::vector<std::string> agents;
    // ratings[system][agent] -> one rating per sampled item
    std::vector<std::vector<std::vector<double>>> ratings;

    double system_mean(std::size_t system) const {
        double total = 0.0;
        std::size_t n = 0;
        for (const auto& per_agent : ratings.at(system))
            for (double r : per_agent) {
                total += r;
                ++n;
            }
        if (n == 0) throw degenerate_sample_error("no ratings for system");
        return total / static_cast<double>(n);
    }

    bool operator==(const RatingTable&) const = default;
};

inline RatingTable oaa_run(const AgentPopulation& pop, const std::vector<Lottery>& systems, const RatingScale& scale,
                           std::size_t n_items, std::uint64_t seed, Rounding mode = Rounding::ceiling) {
    if (pop.size() == 0) throw validation_error("empty population");
    if (n_items < 1) throw range_error("n_items must be at least 1");
    RatingTable table;
    for (const auto& a : pop.agents()) table.agents.push_back(a.id());
    table.ratings.resize(systems.size());
    for (std::size_t s = 0; s < systems.size(); ++s) {
        table.ratings[s].resize(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) {
            const Agent& agent = pop.agents()[i];
            Rng rng(derive_seed(seed, {s, hash_id(agent.id())}));
            auto& out = table.ratings[s][i];
            out.reserve(n_items);
            for (std::size_t item = 0; item < n_items; ++item)
                out.push_back(rate(normalized_utility(agent, draw(systems[s], rng), scale.top()), scale, mode));
        }
    }
    return table;
}

struct AgentRatings {
    std::string agent;
    std::vector<double> ratings;

    bool operator==(const AgentRatings&) const = default;
};

// Per-agent (x - mean) / sd with the sample standard deviation.
inline std::vector<AgentRatings> zscore_per_annotator(const std::vector<AgentRatings>& input) {
    std::vector<AgentRatings> out;
    out.reserve(input.size());
    for (const auto& a : input) {
        if (a.ratings.size() < 2)
            throw degenerate_sample_error("annotator '" + a.agent + "' has fewer than 2 ratings");
        const double m = mean_of(a.ratings);
        const double sd = sample_sd(a.ratings);
        if (negligible_spread(a.ratings, sd))
            throw degenerate_sample_error("annotator '" + a.agent + "' has zero rating variance");
        AgentRatings z{a.agent, {}};
        for (double r : a.ratings) z.ratings.push_back((r - m) / sd);
        out.push_back(std::move(z));
    }
    return out;
}

// Shared best and worst reference outcomes with their fixed utilities.
struct ExtremumSpec {
    OutcomeId best;
    OutcomeId worst;
    double c_max = 1.0;
    double c_min = 0.0;

    void validate() const {
        if (!(c_max > c_min && c_min >= 0.0)) throw validation_error("extremum spec needs c_max > c_min >= 0");
    }
};

// Rescales u so that u(worst) = c_min and u(best) = c_max exactly.
inline UtilityFunction extremum_normalize(const UtilityFunction& u, const ExtremumSpec& spec) {
    spec.validate();
    const double ub = u(spec.best), uw = u(spec.worst);
    if (!(ub > uw))
        throw precondition_error("agent disagrees with extremum outcomes: u(best) <= u(worst)");
    const double scale = (spec.c_max - spec.c_min) / (ub - uw);
    std::map<OutcomeId, double> values;
    for (const auto& [id, v] : u.values()) values.emplace(id, spec.c_min + (v - uw) * scale);
    values[spec.best] = spec.c_max;
    values[spec.worst] = spec.c_min;
    const double lo = std::min(spec.c_min + (u.lower_bound() - uw) * scale, spec.c_min);
    const double hi = std::max(spec.c_min + (u.upper_bound() - uw) * scale, spec.c_max);
    double vlo = lo, vhi = hi;
    for (const auto& [id, v] : values) {
        vlo = std::min(vlo, v);
        vhi = std::max(vhi, v);
    }
    return UtilityFunction(std::move(values), vlo, vhi);
}

inline AgentPopulation extremum_normalize(const AgentPopulation& pop, const ExtremumSpec& spec) {
    std::vector<Agent> agents;
    for (const auto& a : pop.agents()) agents.push_back(a.with_utility(extremum_normalize(a.utility(), spec)));
    return AgentPopulation(std::move(agents), pop.weights());
}

// Expected expected utility: population-weighted mean of per-agent EU.
inline double eeu(const AgentPopulation& pop, const Lottery& l) {
    double total = 0.0;
    for (std::size_t i = 0; i < pop.size(); ++i) total += pop.weights()[i] * expected_utility(l, pop.agents()[i].utility());
    return total;
}

// ---------------------------------------------------------------------------
// ORA
// ---------------------------------------------------------------------------

struct ComparisonCounts {
    std::size_t wins_x = 0;
    std::size_t wins_y = 0;
    std::size_t ties = 0;

    std::size_t total() const { return wins_x + wins_y + ties; }
    bool operator==(const ComparisonCounts&) const = default;
};

// Forced choice breaks outcome-level ties with a fair coin; `record` keeps them.
enum class TiePolicy { break_random, record };

inline ComparisonCounts ora_collect(const AgentPopulation& pop, const Lottery& x, const Lottery& y, std::size_t n_pairs,
                                    std::uint64_t seed, TiePolicy ties = TiePolicy::break_random) {
    if (n_pairs < 1) throw range_error("n_pairs must be at least 1");
    Rng rng(seed);
    ComparisonCounts c;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const Agent& judge = pop.agents()[pop.draw(rng)];
        const OutcomeId& ox = draw(x, rng);
        const OutcomeId& oy = draw(y, rng);
        switch (compare_values(judge.utility()(ox), judge.utility()(oy), judge.indifference())) {
            case Preference::x_preferred: ++c.wins_x; break;
            case Preference::y_preferred: ++c.wins_y; break;
            default:
                if (ties == TiePolicy::record)
                    ++c.ties;
                else if (rng.bernoulli(0.5))
                    ++c.wins_x;
                else
                    ++c.wins_y;
        }
    }
    return c;
}

// Outcome of comparisons between systems `x` and `y` (indices).
struct PairwiseCounts {
    std::size_t x = 0;
    std::size_t y = 0;
    ComparisonCounts counts;
};

struct BradleyTerryOptions {
    double tolerance = 1e-10;
    std::size_t max_iterations = 10000;
};

struct BradleyTerryFit {
    std::vector<double> strengths;       // sums to 1
    std::vector<double> log_likelihood;  // initial value, then one per iteration
    std::size_t iterations = 0;
    bool converged = false;
};

// sum over pairs of w_xy log(pi_x / (pi_x + pi_y)) + w_yx log(pi_y / (pi_x + pi_y)).
// Ties are ignored.
inline double bradley_terry_log_likelihood(std::span<const double> strengths, std::span<const PairwiseCounts> data) {
    double ll = 0.0;
    for (const auto& d : data) {
        const double px = strengths[d.x], py = strengths[d.y], s = px + py;
        if (d.counts.wins_x) ll += static_cast<double>(d.counts.wins_x) * std::log(px / s);
        if (d.counts.wins_y) ll += static_cast<double>(d.counts.wins_y) * std::log(py / s);
    }
    return ll;
}

// Maximum-likelihood strengths by minorize-maximize:
//   pi_i <- W_i / sum_j n_ij / (pi_i + pi_j), then rescale to sum 1,
// starting from uniform. Stops when no strength moves by more than the tolerance.
inline BradleyTerryFit bradley_terry_fit(std::size_t n_systems, std::span<const PairwiseCounts> data,
                                         const BradleyTerryOptions& opt = {}) {
    if (n_systems < 2) throw validation_error("Bradley-Terry needs at least two systems");
    std::vector<double> wins(n_systems, 0.0);
    std::vector<std::size_t> games(n_systems, 0);
    std::vector<std::vector<std::size_t>> adj(n_systems);
    for (const auto& d : data) {
        if (d.x >= n_systems || d.y >= n_systems || d.x == d.y)
            throw validation_error("comparison refers to an invalid system pair");
        const std::size_t n = d.counts.wins_x + d.counts.wins_y;
        wins[d.x] += static_cast<double>(d.counts.wins_x);
        wins[d.y] += static_cast<double>(d.counts.wins_y);
        games[d.x] += n;
        games[d.y] += n;
        if (n > 0) {
            adj[d.x].push_back(d.y);
            adj[d.y].push_back(d.x);
        }
    }
    for (std::size_t i = 0; i < n_systems; ++i)
        if (games[i] == 0) throw validation_error("system " + std::to_string(i) + " has zero wins and zero losses");

    std::vector<int> component(n_systems, -1);
    int n_components = 0;
    for (std::size_t start = 0; start < n_systems; ++start) {
        if (component[start] >= 0) continue;
        std::vector<std::size_t> stack{start};
        component[start] = n_components;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : adj[v])
                if (component[w] < 0) {
                    component[w] = n_components;
                    stack.push_back(w);
                }
        }
        ++n_components;
    }
    if (n_components > 1) {
        std::string msg = "comparison graph is disconnected:";
        for (int c = 0; c < n_components; ++c) {
            msg += " {";
            bool first = true;
            for (std::size_t i = 0; i < n_systems; ++i)
                if (component[i] == c) {
                    msg += (first ? "" : ",") + std::to_string(i);
                    first = false;
                }
            msg += "}";
        }
        throw validation_error(msg);
    }

    BradleyTerryFit fit;
    fit.strengths.assign(n_systems, 1.0 / static_cast<double>(n_systems));
    fit.log_likelihood.push_back(bradley_terry_log_likelihood(fit.strengths, data));
    std::vector<double> denom(n_systems);
    std::vector<double> next(n_systems);
    for (std::size_t it = 0; it < opt.max_iterations; ++it) {
        std::fill(denom.begin(), denom.end(), 0.0);
        for (const auto& d : data) {
            const double n = static_cast<double>(d.counts.wins_x + d.counts.wins_y);
            if (n == 0) continue;
            const double s = fit.strengths[d.x] + fit.strengths[d.y];
            denom[d.x] += n / s;
            denom[d.y] += n / s;
        }
        double total = 0.0;
        for (std::size_t i = 0; i < n_systems; ++i) {
            next[i] = wins[i] / denom[i];
            total += next[i];
        }
        double change = 0.0;
        for (std::size_t i = 0; i < n_systems; ++i) {
            next[i] /= total;
            change = std::max(change, std::abs(next[i] - fit.strengths[i]));
        }
        fit.strengths.swap(next);
        fit.log_likelihood.push_back(bradley_terry_log_likelihood(fit.strengths, data));
        fit.iterations = it + 1;
        if (change < opt.tolerance) {
            fit.converged = true;
            break;
        }
    }
    return fit;
}

// ---------------------------------------------------------------------------
// SPA
// ---------------------------------------------------------------------------

// One annotator's stated P[X > Y]. Directed: P[Y > X] is a separate record.
struct SpaEstimate {
    std::string annotator;
    std::string system_x;
    std::string system_y;
    double p_hat = 0.5;
    std::size_t m_seen = 0;

    bool operator==(const SpaEstimate&) const = default;
};

// How a simulated annotator turns m observed outputs per system into a
// stated probability.
//   laplace_winrate:  (wins + 1) / (m + 2) over m paired comparisons, a tie
//                     counting as half a win.
//   normal_posterior: P(mean utility difference > 0) under a
//                     Normal-Inverse-Gamma prior (mean 0, kappa 1, alpha 1,
//                     beta = (utility range / 4)^2) on the m differences.
enum class ElicitationModel { laplace_winrate, normal_posterior };

inline const char* to_string(ElicitationModel m) {
    return m == ElicitationModel::laplace_winrate ? "laplace-winrate" : "normal-posterior";
}

inline SpaEstimate spa_elicit(const Agent& a, const Lottery& x, const Lottery& y, std::size_t m, std::uint64_t seed,
                              ElicitationModel model = ElicitationModel::laplace_winrate,
                              const std::string& x_id = "X", const std::string& y_id = "Y") {
    if (m < 1) throw range_error("SPA elicitation needs m >= 1");
    Rng rng(seed);
    std::vector<double> diffs;
    diffs.reserve(m);
    double wins = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double ux = a.utility()(draw(x, rng));
        const double uy = a.utility()(draw(y, rng));
        switch (compare_values(ux, uy, a.indifference())) {
            case Preference::x_preferred: wins += 1.0; break;
            case Preference::indifferent: wins += 0.5; break;
            default: break;
        }
        diffs.push_back(ux - uy);
    }
    SpaEstimate est{a.id(), x_id, y_id, 0.5, m};
    if (model == ElicitationModel::laplace_winrate) {
        est.p_hat = (wins + 1.0) / (static_cast<double>(m) + 2.0);
        return est;
    }
    for (double d : diffs)
        if (!std::isfinite(d)) throw domain_error("normal-posterior elicitation needs finite utilities");
    const double range = a.utility().upper_bound() - a.utility().lower_bound();
    const double beta0 = std::max(range * range / 16.0, 1e-12);
    const double n = static_cast<double>(m);
    const double dbar = std::accumulate(diffs.begin(), diffs.end(), 0.0) / n;
    double ss = 0.0;
    for (double d : diffs) ss += (d - dbar) * (d - dbar);
    const double kappa = 1.0 + n;
    const double mu = n * dbar / kappa;
    const double alpha = 1.0 + n / 2.0;
    const double beta = beta0 + 0.5 * ss + n * dbar * dbar / (2.0 * kappa);
    const double scale = std::sqrt(beta / (alpha * kappa));
    est.p_hat = t_cdf(mu / scale, m + 2);
    return est;
}

// Uniform-weight mean of directed estimates for one pair.
inline double spa_aggregate(std::span<const SpaEstimate> estimates) {
    if (estimates.empty()) throw validation_error("no SPA estimates to aggregate");
    double total = 0.0;
    for (const auto& e : estimates) {
        if (e.system_x != estimates.front().system_x || e.system_y != estimates.front().system_y)
            throw validation_error("SPA estimates mix different system pairs");
        if (!(e.p_hat >= 0.0 && e.p_hat <= 1.0)) throw range_error("SPA estimate outside [0,1]");
        total += e.p_hat;
    }
    return std::clamp(total / static_cast<double>(estimates.size()), 0.0, 1.0);
}

}  // namespace prefeval
