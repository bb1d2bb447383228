#pragma once

#include <fmt/format.h>

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "rationality.hpp"
#include "scales.hpp"

// Text and JSON renderings of reports. The JSON field names are a stable
// interface; see README.md for the schema.
namespace prefeval {

inline std::string to_string(FamilyGrouping g) { return g == FamilyGrouping::per_column ? "per-column" : "joint"; }

namespace detail {
inline nlohmann::json column_json(const ColumnResult& c) {
    nlohmann::json j;
    j["estimate"] = c.estimate;
    j["n"] = c.n;
    if (c.test) {
        j["statistic"] = c.test->statistic;
        j["df"] = c.test->degrees_of_freedom;
        j["p_value"] = c.test->p_value;
    } else {
        j["statistic"] = nullptr;
        j["df"] = nullptr;
        j["p_value"] = nullptr;
    }
    j["adjusted_p"] = c.adjusted_p ? nlohmann::json(*c.adjusted_p) : nlohmann::json(nullptr);
    j["stars"] = c.stars;
    j["error"] = c.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(c.error);
    return j;
}

inline std::string cell(const ColumnResult& c) {
    if (!c.testable()) return c.n == 0 ? "n/a" : fmt::format("{:.3f} (untestable)", c.estimate);
    return fmt::format("{:.3f}{}", c.estimate, c.stars);
}
}  // namespace detail

inline nlohmann::json to_json(const ComparisonReport& r) {
    nlohmann::json j;
    j["schema"] = "prefeval.comparison_report/1";
    j["family_grouping"] = to_string(r.grouping);
    j["alphas"] = r.alphas;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows)
        j["rows"].push_back({{"system_x", row.pair.x},
                             {"system_y", row.pair.y},
                             {"spa", detail::column_json(row.spa)},
                             {"likert", detail::column_json(row.likert)}});
    nlohmann::json meta;
    meta["filter"] = r.metadata.filter;
    meta["annotators_before"] = r.metadata.annotators_before;
    meta["annotators_after"] = r.metadata.annotators_after;
    meta["spa_records_before"] = r.metadata.spa_records_before;
    meta["spa_records_after"] = r.metadata.spa_records_after;
    meta["likert_records_before"] = r.metadata.likert_records_before;
    meta["likert_records_after"] = r.metadata.likert_records_after;
    meta["exclusions"] = nlohmann::json::array();
    for (const auto& d : r.metadata.exclusions) meta["exclusions"].push_back({{"annotator", d.annotator}, {"rules", d.rules}});
    j["metadata"] = meta;
    return j;
}

inline std::string to_text(const ComparisonReport& r) {
    std::size_t wx = 8, wy = 8;
    for (const auto& row : r.rows) {
        wx = std::max(wx, row.pair.x.size());
        wy = std::max(wy, row.pair.y.size());
    }
    std::string out = fmt::format("{:<{}}  {:<{}}  {:<20}  {:<20}\n", "System X", wx, "System Y", wy, "P[X>Y]",
                                  "Likert delta");
    for (const auto& row : r.rows)
        out += fmt::format("{:<{}}  {:<{}}  {:<20}  {:<20}\n", row.pair.x, wx, row.pair.y, wy, detail::cell(row.spa),
                           detail::cell(row.likert));
    out += fmt::format("Holm-Bonferroni ({}):", to_string(r.grouping));
    auto levels = r.alphas;
    std::sort(levels.begin(), levels.end(), std::greater<>());
    for (std::size_t i = 0; i < levels.size(); ++i) out += fmt::format(" {} p<{}", std::string(i + 1, '*'), levels[i]);
    out += "\n";
    const auto& m = r.metadata;
    out += fmt::format("filter: {}; annotators {} -> {}; SPA records {} -> {}; Likert records {} -> {}\n", m.filter,
                       m.annotators_before, m.annotators_after, m.spa_records_before, m.spa_records_after,
                       m.likert_records_before, m.likert_records_after);
    for (const auto& row : r.rows) {
        if (!row.spa.error.empty()) out += fmt::format("untestable {}/{} SPA: {}\n", row.pair.x, row.pair.y, row.spa.error);
        if (!row.likert.error.empty())
            out += fmt::format("untestable {}/{} Likert: {}\n", row.pair.x, row.pair.y, row.likert.error);
    }
    return out;
}

inline nlohmann::json to_json(const Lottery& l) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : l.support()) j.push_back({{"outcome", e.outcome}, {"probability", e.probability}});
    return j;
}

inline nlohmann::json to_json(const AxiomReport& r) {
    nlohmann::json j;
    j["axiom"] = to_string(r.axiom);
    j["holds"] = r.holds;
    if (r.witness) {
        nlohmann::json w;
        w["lotteries"] = nlohmann::json::array();
        for (const auto& l : r.witness->lotteries) w["lotteries"].push_back(to_json(l));
        w["p"] = r.witness->p ? nlohmann::json(*r.witness->p) : nlohmann::json(nullptr);
        w["detail"] = r.witness->detail;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

inline nlohmann::json to_json(const ResidualSummary& s) {
    return {{"eu_x", s.eu_x},
            {"eu_y", s.eu_y},
            {"expected_residual_x", s.expected_residual_x},
            {"expected_residual_y", s.expected_residual_y},
            {"mean_tier_x", s.mean_tier_x},
            {"mean_tier_y", s.mean_tier_y},
            {"bias", to_string(s.bias)},
            {"reversal", s.reversal}};
}

inline nlohmann::json to_json(const std::vector<PowerPoint>& points) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : points)
        j.push_back({{"m", p.m},
                     {"n_annotators", p.n_annotators},
                     {"alpha", p.alpha},
                     {"power", p.power},
                     {"standard_error", p.standard_error},
                     {"replications", p.replications}});
    return j;
}

inline std::string to_text(const std::vector<PowerPoint>& points) {
    std::string out = fmt::format("{:>6}  {:>6}  {:>6}  {:>8}  {:>8}\n", "m", "n_A", "alpha", "power", "se");
    for (const auto& p : points)
        out += fmt::format("{:>6}  {:>6}  {:>6.3f}  {:>8.4f}  {:>8.4f}\n", p.m, p.n_annotators, p.alpha, p.power,
                           p.standard_error);
    return out;
}

}  // namespace prefeval
