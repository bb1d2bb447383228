#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "csv.hpp"
#include "errors.hpp"
#include "random.hpp"

// Lotteries over finite outcome sets, utility functions, agents and the
// preference relation between lotteries.
namespace prefeval {

using OutcomeId = std::string;

// Probabilities must sum to one within this tolerance. Nothing is ever
// silently renormalized; use Lottery::renormalized for that.
inline constexpr double kMassTolerance = 1e-9;

// Default |EU(X) - EU(Y)| below which an agent is indifferent.
inline constexpr double kDefaultIndifference = 1e-9;

struct Outcome {
    OutcomeId id;
    std::string label;
};

class OutcomeUniverse {
public:
    OutcomeUniverse() = default;

    explicit OutcomeUniverse(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
        std::unordered_set<OutcomeId> seen;
        for (const auto& o : outcomes_)
            if (!seen.insert(o.id).second) throw validation_error("duplicate outcome id '" + o.id + "'");
    }

    static OutcomeUniverse from_ids(const std::vector<OutcomeId>& ids) {
        std::vector<Outcome> out;
        out.reserve(ids.size());
        for (const auto& id : ids) out.push_back({id, {}});
        return OutcomeUniverse(std::move(out));
    }

    const std::vector<Outcome>& outcomes() const { return outcomes_; }
    std::size_t size() const { return outcomes_.size(); }

    bool contains(const OutcomeId& id) const {
        return std::any_of(outcomes_.begin(), outcomes_.end(), [&](const Outcome& o) { return o.id == id; });
    }

    std::vector<OutcomeId> ids() const {
        std::vector<OutcomeId> out;
        for (const auto& o : outcomes_) out.push_back(o.id);
        return out;
    }

private:
    std::vector<Outcome> outcomes_;
};

class Lottery {
public:
    struct Entry {
        OutcomeId outcome;
        double probability = 0.0;

        bool operator==(const Entry&) const = default;
    };

    explicit Lottery(std::vector<Entry> support) : support_(std::move(support)) { validate(); }

    static Lottery point_mass(OutcomeId id) { return Lottery({{std::move(id), 1.0}}); }

    static Lottery uniform(const std::vector<OutcomeId>& ids) {
        if (ids.empty()) throw validation_error("uniform lottery needs at least one outcome");
        std::vector<Entry> e;
        for (const auto& id : ids) e.push_back({id, 1.0 / static_cast<double>(ids.size())});
        return Lottery(std::move(e));
    }

    // Explicit renormalization of nonnegative weights.
    static Lottery renormalized(std::vector<Entry> weights) {
        double total = 0.0;
        for (const auto& e : weights) {
            if (!(e.probability >= 0.0)) throw validation_error("negative weight for '" + e.outcome + "'");
            total += e.probability;
        }
        if (!(total > 0.0)) throw validation_error("weights sum to zero");
        for (auto& e : weights) e.probability /= total;
        return Lottery(std::move(weights));
    }

    const std::vector<Entry>& support() const { return support_; }

    double probability(const OutcomeId& id) const {
        for (const auto& e : support_)
            if (e.outcome == id) return e.probability;
        return 0.0;
    }

    double total_mass() const {
        double t = 0.0;
        for (const auto& e : support_) t += e.probability;
        return t;
    }

    bool operator==(const Lottery&) const = default;

private:
    void validate() const {
        if (support_.empty()) throw validation_error("lottery has empty support");
        std::unordered_set<OutcomeId> seen;
        double total = 0.0;
        for (const auto& e : support_) {
            if (!seen.insert(e.outcome).second)
                throw validation_error("duplicate outcome '" + e.outcome + "' in lottery support");
            if (!(e.probability >= 0.0 && e.probability <= 1.0 + kMassTolerance))
                throw validation_error("probability of '" + e.outcome + "' outside [0,1]");
            total += e.probability;
        }
        if (std::abs(total - 1.0) > kMassTolerance)
            throw validation_error("lottery probabilities sum to " + csv::format_double(total) + ", not 1");
    }

    std::vector<Entry> support_;
};

// Same distribution up to tol per outcome, ignoring zero-mass entries.
inline bool same_distribution(const Lottery& a, const Lottery& b, double tol = kMassTolerance) {
    for (const auto& e : a.support())
        if (std::abs(e.probability - b.probability(e.outcome)) > tol) return false;
    for (const auto& e : b.support())
        if (std::abs(e.probability - a.probability(e.outcome)) > tol) return false;
    return true;
}

class CompoundLottery {
public:
    struct Branch {
        Lottery lottery;
        double probability = 0.0;
    };

    explicit CompoundLottery(std::vector<Branch> outer) : outer_(std::move(outer)) {
        if (outer_.empty()) throw validation_error("compound lottery has no branches");
        double total = 0.0;
        for (const auto& b : outer_) {
            if (!(b.probability >= 0.0 && b.probability <= 1.0 + kMassTolerance))
                throw validation_error("compound branch probability outside [0,1]");
            total += b.probability;
        }
        if (std::abs(total - 1.0) > kMassTolerance)
            throw validation_error("compound lottery branch probabilities sum to " + csv::format_double(total));
    }

    const std::vector<Branch>& outer() const { return outer_; }

private:
    std::vector<Branch> outer_;
};

class UtilityFunction {
public:
    UtilityFunction() = default;

    // Bounds default to the observed min and max.
    explicit UtilityFunction(std::map<OutcomeId, double> values) : values_(std::move(values)) {
        if (values_.empty()) throw validation_error("utility function has no values");
        lo_ = hi_ = values_.begin()->second;
        for (const auto& [id, v] : values_) {
            lo_ = std::min(lo_, v);
            hi_ = std::max(hi_, v);
        }
        check_values();
    }

    UtilityFunction(std::map<OutcomeId, double> values, double lower, double upper)
        : values_(std::move(values)), lo_(lower), hi_(upper) {
        if (values_.empty()) throw validation_error("utility function has no values");
        if (std::isnan(lo_) || std::isnan(hi_) || lo_ > hi_) throw validation_error("invalid utility bounds");
        check_values();
        for (const auto& [id, v] : values_)
            if (v < lo_ || v > hi_)
                throw validation_error("utility of '" + id + "' outside declared bounds");
    }

    double operator()(const OutcomeId& id) const {
        auto it = values_.find(id);
        if (it == values_.end()) throw domain_error("outcome '" + id + "' has no utility");
        return it->second;
    }

    bool has(const OutcomeId& id) const { return values_.count(id) > 0; }
    const std::map<OutcomeId, double>& values() const { return values_; }
    double lower_bound() const { return lo_; }
    double upper_bound() const { return hi_; }

    bool all_finite() const {
        return std::all_of(values_.begin(), values_.end(), [](const auto& kv) { return std::isfinite(kv.second); });
    }

    // Throws domain_error naming the first outcome of the universe without a value.
    void require_covers(const OutcomeUniverse& universe) const {
        for (const auto& o : universe.outcomes())
            if (!has(o.id)) throw domain_error("outcome '" + o.id + "' has no utility");
    }

    // Applies f to every value and to both bounds. f must be nondecreasing
    // for the bounds to stay ordered.
    template <typename F>
    UtilityFunction transformed(F f) const {
        std::map<OutcomeId, double> out;
        for (const auto& [id, v] : values_) out.emplace(id, f(v));
        return UtilityFunction(std::move(out), f(lo_), f(hi_));
    }

    bool operator==(const UtilityFunction&) const = default;

private:
    void check_values() const {
        for (const auto& [id, v] : values_)
            if (std::isnan(v)) throw validation_error("utility of '" + id + "' is NaN");
    }

    std::map<OutcomeId, double> values_;
    double lo_ = 0.0;
    double hi_ = 0.0;
};

struct ExpectedUtilityBehavior {
    bool operator==(const ExpectedUtilityBehavior&) const = default;
};

// A lottery is unusable when its mass on the unusable set exceeds tolerance.
// Unusable lotteries are all equally bad; usable ones are compared by EU.
struct ThresholdBehavior {
    std::set<OutcomeId> unusable;
    double tolerance = 0.0;

    bool operator==(const ThresholdBehavior&) const = default;
};

using Behavior = std::variant<ExpectedUtilityBehavior, ThresholdBehavior>;

class Agent {
public:
    Agent(std::string id, UtilityFunction utility, Behavior behavior = ExpectedUtilityBehavior{},
          double indifference = kDefaultIndifference)
        : id_(std::move(id)), utility_(std::move(utility)), behavior_(std::move(behavior)),
          indifference_(indifference) {
        if (!(indifference_ >= 0.0)) throw validation_error("agent '" + id_ + "': negative indifference epsilon");
        if (is_expected_utility() && !utility_.all_finite())
            throw validation_error("agent '" + id_ + "': expected-utility agents need finite utilities");
        if (auto* t = std::get_if<ThresholdBehavior>(&behavior_)) {
            if (!(t->tolerance >= 0.0 && t->tolerance <= 1.0))
                throw validation_error("agent '" + id_ + "': tolerance outside [0,1]");
        }
    }

    const std::string& id() const { return id_; }
    const UtilityFunction& utility() const { return utility_; }
    const Behavior& behavior() const { return behavior_; }
    double indifference() const { return indifference_; }
    bool is_expected_utility() const { return std::holds_alternative<ExpectedUtilityBehavior>(behavior_); }

    Agent with_utility(UtilityFunction u) const { return Agent(id_, std::move(u), behavior_, indifference_); }
    Agent with_indifference(double eps) const { return Agent(id_, utility_, behavior_, eps); }

    // Mass the lottery puts on the unusable set; 0 for expected-utility agents.
    double unusable_mass(const Lottery& l) const {
        const auto* t = std::get_if<ThresholdBehavior>(&behavior_);
        if (!t) return 0.0;
        double m = 0.0;
        for (const auto& e : l.support())
            if (t->unusable.count(e.outcome)) m += e.probability;
        return m;
    }

    bool is_unusable(const Lottery& l) const {
        const auto* t = std::get_if<ThresholdBehavior>(&behavior_);
        return t && unusable_mass(l) > t->tolerance;
    }

private:
    std::string id_;
    UtilityFunction utility_;
    Behavior behavior_;
    double indifference_;
};

class AgentPopulation {
public:
    AgentPopulation(std::vector<Agent> agents, std::vector<double> weights)
        : agents_(std::move(agents)), weights_(std::move(weights)) {
        if (agents_.empty()) throw validation_error("empty agent population");
        if (agents_.size() != weights_.size()) throw validation_error("one weight per agent required");
        std::unordered_set<std::string> ids;
        double total = 0.0;
        for (std::size_t i = 0; i < agents_.size(); ++i) {
            if (!ids.insert(agents_[i].id()).second)
                throw validation_error("duplicate agent id '" + agents_[i].id() + "'");
            if (!(weights_[i] >= 0.0)) throw validation_error("negative agent weight");
            total += weights_[i];
        }
        if (std::abs(total - 1.0) > kMassTolerance) throw validation_error("agent weights must sum to 1");
    }

    static AgentPopulation uniform(std::vector<Agent> agents) {
        std::vector<double> w(agents.size(), agents.empty() ? 0.0 : 1.0 / static_cast<double>(agents.size()));
        return AgentPopulation(std::move(agents), std::move(w));
    }

    const std::vector<Agent>& agents() const { return agents_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return agents_.size(); }

    // Index of an agent drawn according to the weights.
    std::size_t draw(Rng& rng) const {
        const double u = rng.uniform();
        double acc = 0.0;
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            acc += weights_[i];
            if (u < acc) return i;
        }
        return weights_.size() - 1;
    }

private:
    std::vector<Agent> agents_;
    std::vector<double> weights_;
};

enum class Preference { x_preferred, y_preferred, indifferent };

inline Preference mirrored(Preference p) {
    switch (p) {
        case Preference::x_preferred: return Preference::y_preferred;
        case Preference::y_preferred: return Preference::x_preferred;
        default: return Preference::indifferent;
    }
}

inline const char* to_string(Preference p) {
    switch (p) {
        case Preference::x_preferred: return "X-strictly-preferred";
        case Preference::y_preferred: return "Y-strictly-preferred";
        default: return "indifferent";
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Marginalizes the outer lottery away. Outcomes keep first-seen order.
inline Lottery reduce_compound(const CompoundLottery& c) {
    std::vector<Lottery::Entry> out;
    for (const auto& branch : c.outer()) {
        for (const auto& e : branch.lottery.support()) {
            auto it = std::find_if(out.begin(), out.end(), [&](const auto& o) { return o.outcome == e.outcome; });
            const double mass = branch.probability * e.probability;
            if (it == out.end())
                out.push_back({e.outcome, mass});
            else
                it->probability += mass;
        }
    }
    return Lottery(std::move(out));
}

inline double expected_utility(const Lottery& l, const UtilityFunction& u) {
    double eu = 0.0;
    for (const auto& e : l.support()) {
        const double v = u(e.outcome);
        if (e.probability > 0.0) eu += e.probability * v;
    }
    return eu;
}

inline Preference compare_values(double x, double y, double eps) {
    if (x == y) return Preference::indifferent;  // also covers matching infinities
    if (std::abs(x - y) <= eps) return Preference::indifferent;
    return x > y ? Preference::x_preferred : Preference::y_preferred;
}

inline Preference prefer(const Agent& a, const Lottery& x, const Lottery& y) {
    const double eu_x = expected_utility(x, a.utility());
    const double eu_y = expected_utility(y, a.utility());
    if (!a.is_expected_utility()) {
        const bool bad_x = a.is_unusable(x);
        const bool bad_y = a.is_unusable(y);
        if (bad_x && bad_y) return Preference::indifferent;
        if (bad_x) return Preference::y_preferred;
        if (bad_y) return Preference::x_preferred;
    }
    return compare_values(eu_x, eu_y, a.indifference());
}

// p*X + (1-p)*Z. Support is the union of both supports, X's outcomes first.
inline Lottery mix(const Lottery& x, const Lottery& z, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw range_error("mixing probability outside [0,1]");
    if (p == 1.0) return x;
    if (p == 0.0) return z;
    std::vector<Lottery::Entry> out;
    for (const auto& e : x.support()) out.push_back({e.outcome, p * e.probability});
    for (const auto& e : z.support()) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& o) { return o.outcome == e.outcome; });
        if (it == out.end())
            out.push_back({e.outcome, (1.0 - p) * e.probability});
        else
            it->probability += (1.0 - p) * e.probability;
    }
    return Lottery(std::move(out));
}

// Draws one outcome index from the lottery using a single uniform.
inline std::size_t draw_index(const Lottery& l, Rng& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    const auto& s = l.support();
    for (std::size_t i = 0; i < s.size(); ++i) {
        acc += s[i].probability;
        if (u < acc) return i;
    }
    // Rounding left u above the cumulative total: take the last outcome with mass.
    for (std::size_t i = s.size(); i-- > 0;)
        if (s[i].probability > 0.0) return i;
    return s.size() - 1;
}

inline const OutcomeId& draw(const Lottery& l, Rng& rng) { return l.support()[draw_index(l, rng)].outcome; }

inline std::vector<OutcomeId> sample(const Lottery& l, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<OutcomeId> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(draw(l, rng));
    return out;
}

inline bool ordinally_equivalent(const UtilityFunction& u, const UtilityFunction& v, const OutcomeUniverse& universe) {
    u.require_covers(universe);
    v.require_covers(universe);
    auto sign = [](double d) { return (d > 0) - (d < 0); };
    const auto& out = universe.outcomes();
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (sign(u(out[i].id) - u(out[j].id)) != sign(v(out[i].id) - v(out[j].id))) return false;
    return true;
}

struct AffineMap {
    double scale = 1.0;   // a > 0
    double offset = 0.0;  // b

    double operator()(double x) const { return scale * x + offset; }
};

// Finds v = a*u + b with a > 0, checked to 1e-9 (relative to |v| when large).
inline std::optional<AffineMap> affine_equivalent(const UtilityFunction& u, const UtilityFunction& v,
                                                  const OutcomeUniverse& universe) {
    u.require_covers(universe);
    v.require_covers(universe);
    if (universe.size() == 0) throw domain_error("empty universe");
    const auto& out = universe.outcomes();
    auto lo = out.begin(), hi = out.begin();
    for (auto it = out.begin(); it != out.end(); ++it) {
        if (u(it->id) < u(lo->id)) lo = it;
        if (u(it->id) > u(hi->id)) hi = it;
    }
    const double du = u(hi->id) - u(lo->id);
    AffineMap map;
    if (du == 0.0) {
        const double v0 = v(out.front().id);
        for (const auto& o : out)
            if (std::abs(v(o.id) - v0) > 1e-9 * std::max(1.0, std::abs(v0))) return std::nullopt;
        map.offset = v0 - u(out.front().id);
        return map;
    }
    map.scale = (v(hi->id) - v(lo->id)) / du;
    if (!(map.scale > 0.0)) return std::nullopt;
    map.offset = v(lo->id) - map.scale * u(lo->id);
    for (const auto& o : out) {
        const double target = v(o.id);
        if (std::abs(map(u(o.id)) - target) > 1e-9 * std::max(1.0, std::abs(target))) return std::nullopt;
    }
    return map;
}

// ---------------------------------------------------------------------------
// CSV forms: "outcome_id,probability" and "outcome_id,utility"
// ---------------------------------------------------------------------------

inline Lottery read_lottery_csv(std::istream& in, const std::string& source = "") {
    const auto table = csv::parse(in, source, {"outcome_id", "probability"});
    std::vector<Lottery::Entry> entries;
    for (const auto& row : table.rows) entries.push_back({row.fields[0], csv::to_double(row, 1, source)});
    try {
        return Lottery(std::move(entries));
    } catch (const validation_error& e) {
        throw data_error(source, 0, e.what());
    }
}

inline Lottery load_lottery(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error(path, 0, "cannot open file");
    return read_lottery_csv(in, path);
}

inline UtilityFunction read_utility_csv(std::istream& in, const std::string& source = "") {
    const auto table = csv::parse(in, source, {"outcome_id", "utility"});
    std::map<OutcomeId, double> values;
    for (const auto& row : table.rows)
        if (!values.emplace(row.fields[0], csv::to_double(row, 1, source)).second)
            throw data_error(source, row.line, "duplicate outcome '" + row.fields[0] + "'");
    try {
        return UtilityFunction(std::move(values));
    } catch (const validation_error& e) {
        throw data_error(source, 0, e.what());
    }
}

inline UtilityFunction load_utility(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error(path, 0, "cannot open file");
    return read_utility_csv(in, path);
}

inline void write_lottery_csv(std::ostream& out, const Lottery& l) {
    csv::write_row(out, {"outcome_id", "probability"});
    for (const auto& e : l.support()) csv::write_row(out, {e.outcome, csv::format_double(e.probability)});
}

inline void write_utility_csv(std::ostream& out, const UtilityFunction& u) {
    csv::write_row(out, {"outcome_id", "utility"});
    for (const auto& [id, v] : u.values()) csv::write_row(out, {id, csv::format_double(v)});
}

}  // namespace prefeval
