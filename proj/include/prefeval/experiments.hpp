#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "csv.hpp"
#include "protocols.hpp"
#include "scales.hpp"
#include "stats.hpp"

// Annotation data: ingestion, annotator filters, Table-style comparison
// reports, synthetic populations and datasets, and Monte Carlo power.
namespace prefeval {

struct AnnotatorMeta {
    std::string annotator;
    bool native_speaker = true;
    std::size_t submission_count = 1;
    std::map<std::string, std::string> tags;

    bool operator==(const AnnotatorMeta&) const = default;
};

struct LikertRecord {
    std::string annotator;
    std::string system;
    std::string item;
    int rating = 1;
    int k = 5;

    bool operator==(const LikertRecord&) const = default;
};

struct DirectedPair {
    std::string x;
    std::string y;

    auto operator<=>(const DirectedPair&) const = default;
};

struct ExperimentDesign {
    std::size_t m = 5;
    std::size_t n_annotators = 100;
    int k = 5;
    std::vector<double> alphas{0.10, 0.05, 0.01};
    std::vector<DirectedPair> comparisons;

    void validate() const {
        if (m < 1) throw validation_error("design needs m >= 1");
        if (n_annotators < 2) throw validation_error("design needs at least 2 annotators");
        if (k < 2) throw validation_error("design needs k >= 2");
        for (double a : alphas)
            if (!(a > 0.0 && a < 1.0)) throw validation_error("alpha levels must lie in (0,1)");
    }
};

// ---------------------------------------------------------------------------
// CSV ingestion
// ---------------------------------------------------------------------------

template <typename Record>
struct Loaded {
    std::vector<Record> records;
    std::vector<std::string> warnings;
};

inline const std::vector<std::string>& spa_header() {
    static const std::vector<std::string> h{"annotator_id", "system_x", "system_y", "p_estimate", "m_seen"};
    return h;
}
inline const std::vector<std::string>& likert_header() {
    static const std::vector<std::string> h{"annotator_id", "system_id", "item_id", "rating", "k"};
    return h;
}
inline const std::vector<std::string>& meta_header() {
    static const std::vector<std::string> h{"annotator_id", "native_speaker", "submission_count"};
    return h;
}

// Stated probabilities are on a 0-100 scale in files.
inline double percent_to_probability(double pct) { return pct / 100.0; }

inline Loaded<SpaEstimate> read_spa_records(std::istream& in, const std::string& source) {
    const auto table = csv::parse(in, source, spa_header());
    Loaded<SpaEstimate> out;
    if (table.header.empty()) out.warnings.push_back(source + ": empty file, no SPA records");
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (const auto& row : table.rows) {
        const double pct = csv::to_double(row, 3, source);
        if (!(pct >= 0.0 && pct <= 100.0))
            throw data_error(source, row.line, "p_estimate " + row.fields[3] + " outside [0,100]");
        const auto m = csv::to_int(row, 4, source);
        if (m < 0) throw data_error(source, row.line, "negative m_seen");
        if (row.fields[1] == row.fields[2]) throw data_error(source, row.line, "system compared with itself");
        if (!seen.emplace(row.fields[0], row.fields[1], row.fields[2]).second)
            throw data_error(source, row.line, "duplicate row for annotator '" + row.fields[0] + "' and pair " +
                                                   row.fields[1] + "/" + row.fields[2]);
        out.records.push_back(
            {row.fields[0], row.fields[1], row.fields[2], percent_to_probability(pct), static_cast<std::size_t>(m)});
    }
    return out;
}

inline Loaded<SpaEstimate> load_spa_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error(path, 0, "cannot open file");
    return read_spa_records(in, path);
}

inline Loaded<LikertRecord> read_likert_records(std::istream& in, const std::string& source) {
    const auto table = csv::parse(in, source, likert_header());
    Loaded<LikertRecord> out;
    if (table.header.empty()) out.warnings.push_back(source + ": empty file, no Likert records");
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (const auto& row : table.rows) {
        const auto rating = csv::to_int(row, 3, source);
        const auto k = csv::to_int(row, 4, source);
        if (k < 2 || k > 100) throw data_error(source, row.line, "k outside [2,100]");
        if (rating < 1 || rating > k) throw data_error(source, row.line, "rating outside [1,k]");
        if (!seen.emplace(row.fields[0], row.fields[1], row.fields[2]).second)
            throw data_error(source, row.line, "duplicate rating for annotator '" + row.fields[0] + "'");
        out.records.push_back(
            {row.fields[0], row.fields[1], row.fields[2], static_cast<int>(rating), static_cast<int>(k)});
    }
    return out;
}

inline Loaded<LikertRecord> load_likert_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error(path, 0, "cannot open file");
    return read_likert_records(in, path);
}

inline Loaded<AnnotatorMeta> read_annotator_meta(std::istream& in, const std::string& source) {
    const auto table = csv::parse(in, source, meta_header());
    Loaded<AnnotatorMeta> out;
    if (table.header.empty()) out.warnings.push_back(source + ": empty file, no annotator metadata");
    std::set<std::string> seen;
    for (const auto& row : table.rows) {
        const auto count = csv::to_int(row, 2, source);
        if (count < 1) throw data_error(source, row.line, "submission_count must be at least 1");
        if (!seen.insert(row.fields[0]).second)
            throw data_error(source, row.line, "duplicate metadata for annotator '" + row.fields[0] + "'");
        out.records.push_back({row.fields[0], csv::to_bool(row, 1, source), static_cast<std::size_t>(count), {}});
    }
    return out;
}

inline Loaded<AnnotatorMeta> load_annotator_meta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error(path, 0, "cannot open file");
    return read_annotator_meta(in, path);
}

inline void write_spa_csv(std::ostream& out, const std::vector<SpaEstimate>& records) {
    csv::write_row(out, spa_header());
    for (const auto& r : records)
        csv::write_row(out, {r.annotator, r.system_x, r.system_y, csv::format_double(r.p_hat * 100.0),
                             std::to_string(r.m_seen)});
}

inline void write_likert_csv(std::ostream& out, const std::vector<LikertRecord>& records) {
    csv::write_row(out, likert_header());
    for (const auto& r : records)
        csv::write_row(out, {r.annotator, r.system, r.item, std::to_string(r.rating), std::to_string(r.k)});
}

inline void write_meta_csv(std::ostream& out, const std::vector<AnnotatorMeta>& meta) {
    csv::write_row(out, meta_header());
    for (const auto& m : meta)
        csv::write_row(out, {m.annotator, m.native_speaker ? "true" : "false", std::to_string(m.submission_count)});
}

// ---------------------------------------------------------------------------
// Filters
// ---------------------------------------------------------------------------

struct ExclusionDecision {
    std::string annotator;
    std::vector<std::string> rules;  // "non-native-speaker", "multiple-submissions"

    bool operator==(const ExclusionDecision&) const = default;
};

template <typename Record>
struct ExclusionResult {
    std::vector<Record> kept;
    std::vector<ExclusionDecision> log;
};

// Annotators who are not native speakers or submitted more than once.
// Sorted by annotator id.
inline std::vector<ExclusionDecision> exclusion_decisions(const std::vector<AnnotatorMeta>& meta) {
    std::vector<ExclusionDecision> out;
    for (const auto& m : meta) {
        ExclusionDecision d{m.annotator, {}};
        if (!m.native_speaker) d.rules.push_back("non-native-speaker");
        if (m.submission_count > 1) d.rules.push_back("multiple-submissions");
        if (!d.rules.empty()) out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.annotator < b.annotator; });
    return out;
}

// Drops every record whose annotator fails a rule. The log lists only
// annotators that actually had records here.
template <typename Record>
ExclusionResult<Record> exclude_annotators(const std::vector<Record>& records, const std::vector<AnnotatorMeta>& meta) {
    std::map<std::string, const AnnotatorMeta*> by_id;
    for (const auto& m : meta) by_id[m.annotator] = &m;
    std::set<std::string> present;
    for (const auto& r : records) {
        if (!by_id.count(r.annotator)) throw validation_error("no metadata for annotator '" + r.annotator + "'");
        present.insert(r.annotator);
    }
    ExclusionResult<Record> out;
    std::set<std::string> excluded;
    for (auto& d : exclusion_decisions(meta)) {
        if (!present.count(d.annotator)) continue;
        excluded.insert(d.annotator);
        out.log.push_back(std::move(d));
    }
    for (const auto& r : records)
        if (!excluded.count(r.annotator)) out.kept.push_back(r);
    return out;
}

inline std::string format_exclusion_log(const std::vector<ExclusionDecision>& log) {
    std::string out;
    for (const auto& d : log) {
        out += "excluded " + d.annotator + ":";
        for (const auto& rule : d.rules) out += " " + rule;
        out += "\n";
    }
    return out;
}

namespace detail {
// annotator -> system -> ratings sorted by item id
using LikertIndex = std::map<std::string, std::map<std::string, std::vector<std::pair<std::string, int>>>>;

inline LikertIndex index_likert(const std::vector<LikertRecord>& likert) {
    LikertIndex idx;
    for (const auto& r : likert) idx[r.annotator][r.system].emplace_back(r.item, r.rating);
    for (auto& [a, systems] : idx)
        for (auto& [s, items] : systems) std::sort(items.begin(), items.end());
    return idx;
}

inline double mean_rating(const std::vector<std::pair<std::string, int>>& items) {
    double t = 0.0;
    for (const auto& [item, r] : items) t += r;
    return t / static_cast<double>(items.size());
}
}  // namespace detail

// Keeps an estimate when the direction of p_hat - 0.5 agrees with the
// annotator's own mean Likert(X) - mean Likert(Y). A zero on either side
// agrees with anything.
inline std::vector<SpaEstimate> concurrence_filter(const std::vector<SpaEstimate>& spa,
                                                   const std::vector<LikertRecord>& likert) {
    const auto idx = detail::index_likert(likert);
    std::vector<SpaEstimate> kept;
    for (const auto& e : spa) {
        auto a = idx.find(e.annotator);
        if (a == idx.end() || !a->second.count(e.system_x) || !a->second.count(e.system_y))
            throw validation_error("annotator '" + e.annotator + "' lacks Likert ratings for pair " + e.system_x +
                                   "/" + e.system_y);
        const double delta =
            detail::mean_rating(a->second.at(e.system_x)) - detail::mean_rating(a->second.at(e.system_y));
        const int sp = (e.p_hat > 0.5) - (e.p_hat < 0.5);
        const int sl = (delta > 0) - (delta < 0);
        if (sp == 0 || sl == 0 || sp == sl) kept.push_back(e);
    }
    return kept;
}

// ---------------------------------------------------------------------------
// Comparison report
// ---------------------------------------------------------------------------

// one family per column (default), or a single family over both columns
enum class FamilyGrouping { per_column, joint };

struct ColumnResult {
    double estimate = 0.0;  // mean P[X > Y], or mean Likert delta
    std::size_t n = 0;
    std::optional<TestResult> test;
    std::optional<double> adjusted_p;
    std::string stars;
    std::string error;  // set when the row is untestable

    bool testable() const { return test.has_value(); }
};

struct ReportRow {
    DirectedPair pair;
    ColumnResult spa;
    ColumnResult likert;
};

struct ReportMetadata {
    std::string filter = "none";
    std::size_t annotators_before = 0;
    std::size_t annotators_after = 0;
    std::size_t spa_records_before = 0;
    std::size_t spa_records_after = 0;
    std::size_t likert_records_before = 0;
    std::size_t likert_records_after = 0;
    std::vector<ExclusionDecision> exclusions;
};

struct ComparisonReport {
    std::vector<ReportRow> rows;
    FamilyGrouping grouping = FamilyGrouping::per_column;
    std::vector<double> alphas{0.10, 0.05, 0.01};
    ReportMetadata metadata;
};

struct ReportOptions {
    FamilyGrouping grouping = FamilyGrouping::per_column;
    bool multi_item_likert = false;  // average several items per system instead of rejecting them
};

// Directed pairs present in the SPA data, sorted.
inline std::vector<DirectedPair> pairs_in(const std::vector<SpaEstimate>& spa) {
    std::set<DirectedPair> s;
    for (const auto& e : spa) s.insert({e.system_x, e.system_y});
    return {s.begin(), s.end()};
}

inline std::set<std::string> annotators_in(const std::vector<SpaEstimate>& spa, const std::vector<LikertRecord>& likert) {
    std::set<std::string> s;
    for (const auto& e : spa) s.insert(e.annotator);
    for (const auto& r : likert) s.insert(r.annotator);
    return s;
}

// SPA column: mean p_hat, one-sample t against 0.5.
// Likert column: per-annotator rating(X) - rating(Y), paired t.
// Values are gathered per annotator in id order, so record order never
// changes a single bit of the result.
inline ComparisonReport comparison_report(const std::vector<SpaEstimate>& spa, const std::vector<LikertRecord>& likert,
                                          const ExperimentDesign& design, const ReportOptions& opt = {}) {
    design.validate();
    const auto comparisons = design.comparisons.empty() ? pairs_in(spa) : design.comparisons;
    if (comparisons.empty()) throw validation_error("no comparisons to report");
    const auto idx = detail::index_likert(likert);

    ComparisonReport report;
    report.grouping = opt.grouping;
    report.alphas = design.alphas;
    for (const auto& pair : comparisons) {
        ReportRow row{pair, {}, {}};

        std::map<std::string, double> by_annotator;
        for (const auto& e : spa)
            if (e.system_x == pair.x && e.system_y == pair.y) by_annotator[e.annotator] = e.p_hat;
        std::vector<double> ps;
        for (const auto& [a, p] : by_annotator) ps.push_back(p);
        row.spa.n = ps.size();
        if (ps.empty()) {
            row.spa.error = "no SPA records";
        } else {
            row.spa.estimate = mean_of(ps);
            try {
                row.spa.test = one_sample_t(ps, 0.5);
            } catch (const degenerate_sample_error& e) {
                row.spa.error = e.what();
            }
        }

        std::vector<double> rx, ry;
        std::string likert_problem;
        for (const auto& [a, systems] : idx) {
            auto ix = systems.find(pair.x), iy = systems.find(pair.y);
            if (ix == systems.end() || iy == systems.end()) continue;
            if (!opt.multi_item_likert && (ix->second.size() > 1 || iy->second.size() > 1)) {
                likert_problem = "annotator '" + a + "' has several ratings for one system";
                break;
            }
            rx.push_back(detail::mean_rating(ix->second));
            ry.push_back(detail::mean_rating(iy->second));
        }
        row.likert.n = rx.size();
        if (!likert_problem.empty()) {
            row.likert.error = likert_problem;
        } else if (rx.empty()) {
            row.likert.error = "no Likert ratings covering both systems";
        } else {
            double d = 0.0;
            for (std::size_t i = 0; i < rx.size(); ++i) d += rx[i] - ry[i];
            row.likert.estimate = d / static_cast<double>(rx.size());
            try {
                row.likert.test = paired_t(rx, ry);
            } catch (const degenerate_sample_error& e) {
                row.likert.error = e.what();
            }
        }
        report.rows.push_back(std::move(row));
    }

    // Holm over the testable cells of each family. The alpha passed here only
    // fills reject flags; stars come from adjusted p-values.
    auto correct = [&](std::vector<ColumnResult*> cells) {
        std::vector<double> raw;
        std::vector<ColumnResult*> used;
        for (auto* c : cells)
            if (c->testable()) {
                raw.push_back(c->test->p_value);
                used.push_back(c);
            }
        if (raw.empty()) return;
        const auto fam = holm_bonferroni(raw, 0.10);
        const auto stars = star_annotation(fam, design.alphas);
        for (std::size_t i = 0; i < used.size(); ++i) {
            used[i]->adjusted_p = fam.adjusted[i];
            used[i]->stars = stars[i];
        }
    };
    std::vector<ColumnResult*> spa_cells, likert_cells;
    for (auto& r : report.rows) {
        spa_cells.push_back(&r.spa);
        likert_cells.push_back(&r.likert);
    }
    if (opt.grouping == FamilyGrouping::per_column) {
        correct(spa_cells);
        correct(likert_cells);
    } else {
        spa_cells.insert(spa_cells.end(), likert_cells.begin(), likert_cells.end());
        correct(spa_cells);
    }

    const auto annotators = annotators_in(spa, likert);
    report.metadata.annotators_before = report.metadata.annotators_after = annotators.size();
    report.metadata.spa_records_before = report.metadata.spa_records_after = spa.size();
    report.metadata.likert_records_before = report.metadata.likert_records_after = likert.size();
    return report;
}

// ---------------------------------------------------------------------------
// Synthetic populations and datasets
// ---------------------------------------------------------------------------

struct UtilityRange {
    double lo = 0.0;
    double hi = 1.0;
};

// `count` agents, agent i drawing every outcome's utility uniformly from
// ranges[i % ranges.size()], which also become its declared bounds.
inline AgentPopulation synth_population(const OutcomeUniverse& universe, const std::vector<UtilityRange>& ranges,
                                        std::size_t count, std::uint64_t seed) {
    if (count < 1) throw range_error("population needs at least one agent");
    if (ranges.empty()) throw validation_error("no utility ranges given");
    for (const auto& r : ranges)
        if (!(r.hi > r.lo) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
            throw range_error("utility range is empty");
    if (universe.size() == 0) throw validation_error("empty outcome universe");
    std::vector<Agent> agents;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& r = ranges[i % ranges.size()];
        Rng rng(derive_seed(seed, {i}));
        std::map<OutcomeId, double> values;
        for (const auto& o : universe.outcomes()) values[o.id] = rng.uniform(r.lo, r.hi);
        char id[32];
        std::snprintf(id, sizeof id, "agent%04zu", i);
        agents.emplace_back(id, UtilityFunction(std::move(values), r.lo, r.hi));
    }
    return AgentPopulation::uniform(std::move(agents));
}

// Generating parameters for a synthetic two-protocol annotation study.
// Sincere annotators state p ~ Normal(spa_mean, spa_sd) truncated to [0,1]
// and give each system one Likert rating, the ceiling tier of a latent
// Normal(likert_mean, likert_sd) score. Noise annotators state a uniform p
// and uniform ratings. A fraction of annotators is flagged for exclusion.
struct SyntheticStudy {
    std::vector<std::string> systems;
    std::vector<DirectedPair> comparisons;
    std::vector<double> spa_means;     // one per comparison
    double spa_sd = 0.15;
    std::vector<double> likert_means;  // one per system, on the 0..k utility scale
    double likert_sd = 1.0;
    int k = 5;
    std::size_t n_annotators = 100;
    std::size_t m = 5;
    double excluded_fraction = 0.1;
    double noise_fraction = 0.0;

    void validate() const {
        if (systems.size() < 2) throw validation_error("study needs at least two systems");
        if (spa_means.size() != comparisons.size()) throw validation_error("one SPA mean per comparison required");
        if (likert_means.size() != systems.size()) throw validation_error("one Likert mean per system required");
        for (const auto& c : comparisons) {
            if (std::find(systems.begin(), systems.end(), c.x) == systems.end() ||
                std::find(systems.begin(), systems.end(), c.y) == systems.end())
                throw validation_error("comparison refers to unknown system");
        }
        for (double p : spa_means)
            if (!(p >= 0.0 && p <= 1.0)) throw validation_error("SPA means must lie in [0,1]");
        if (!(spa_sd >= 0.0) || !(likert_sd >= 0.0)) throw validation_error("negative standard deviation");
        if (k < 2 || k > 100) throw validation_error("k outside [2,100]");
        if (n_annotators < 2) throw validation_error("study needs at least 2 annotators");
        if (m < 1) throw validation_error("m must be at least 1");
        if (!(excluded_fraction >= 0.0 && excluded_fraction <= 1.0) || !(noise_fraction >= 0.0 && noise_fraction <= 1.0))
            throw validation_error("fractions must lie in [0,1]");
    }
};

// The five story-generation comparisons with their reported SPA means, and
// latent Likert means whose deltas follow the reported Likert column.
inline SyntheticStudy story_study() {
    SyntheticStudy s;
    s.systems = {"ada", "babbage", "curie", "davinci", "human"};
    s.comparisons = {{"ada", "human"}, {"babbage", "ada"}, {"curie", "babbage"}, {"davinci", "curie"}, {"human", "davinci"}};
    s.spa_means = {0.420, 0.688, 0.630, 0.575, 0.544};
    s.likert_means = {1.90, 2.54, 2.86, 3.10, 2.72};
    return s;
}

struct SyntheticDataset {
    std::vector<SpaEstimate> spa;
    std::vector<LikertRecord> likert;
    std::vector<AnnotatorMeta> meta;
};

// Stated probabilities are quantized to 0.1 percentage points, the
// resolution written to CSV.
inline double quantize_stated(double p) { return percent_to_probability(std::round(p * 1000.0) / 10.0); }

inline std::string annotator_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "A%03zu", i + 1);
    return buf;
}

inline SyntheticDataset generate_study(const SyntheticStudy& study, std::uint64_t seed) {
    study.validate();
    const std::size_t n = study.n_annotators;
    const auto n_excluded = static_cast<std::size_t>(std::llround(study.excluded_fraction * static_cast<double>(n)));
    const auto n_noise = static_cast<std::size_t>(std::llround(study.noise_fraction * static_cast<double>(n)));

    // Pick excluded and noise annotators with a seeded shuffle.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng pick(derive_seed(seed, {0xA11CEULL}));
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[pick.below(i)]);
    std::vector<int> role(n, 0);  // 0 sincere, 1 noise
    std::vector<int> exclusion(n, -1);
    for (std::size_t j = 0; j < std::min(n_excluded, n); ++j) exclusion[order[j]] = static_cast<int>(j % 3);
    for (std::size_t j = 0; j < std::min(n_noise, n); ++j) role[order[n - 1 - j]] = 1;

    SyntheticDataset data;
    const double top = static_cast<double>(study.k);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string id = annotator_name(i);
        Rng rng(derive_seed(seed, {1, i}));
        for (std::size_t c = 0; c < study.comparisons.size(); ++c) {
            const double p = role[i] == 1 ? rng.uniform()
                                          : rng.truncated_normal(study.spa_means[c], study.spa_sd, 0.0, 1.0);
            data.spa.push_back({id, study.comparisons[c].x, study.comparisons[c].y, quantize_stated(p), study.m});
        }
        for (std::size_t s = 0; s < study.systems.size(); ++s) {
            int rating;
            if (role[i] == 1) {
                rating = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(study.k)));
            } else {
                const double latent = std::clamp(rng.normal(study.likert_means[s], study.likert_sd), 0.0, top);
                rating = tier(latent, study.k);
            }
            data.likert.push_back({id, study.systems[s], study.systems[s] + "-1", rating, study.k});
        }
        AnnotatorMeta meta{id, true, 1, {}};
        if (exclusion[i] == 0 || exclusion[i] == 2) meta.native_speaker = false;
        if (exclusion[i] == 1 || exclusion[i] == 2) meta.submission_count = 2;
        data.meta.push_back(meta);
    }
    return data;
}

// ---------------------------------------------------------------------------
// Power analysis
// ---------------------------------------------------------------------------

// direct:          annotator estimates ~ Normal(mean, sd) truncated to [0,1];
//                  m plays no role.
// finite_exposure: each annotator's latent win probability q ~ that same
//                  truncated normal; after m paired comparisons they report
//                  (wins + 1) / (m + 2), wins ~ Binomial(m, q).
enum class NoiseModel { direct, finite_exposure };

inline const char* to_string(NoiseModel m) { return m == NoiseModel::direct ? "direct" : "finite-exposure"; }

struct PowerEffect {
    double mean = 0.575;
    double sd = 0.15;
};

struct PowerGrid {
    std::vector<std::size_t> m_values{5};
    std::vector<std::size_t> n_values{90};
    std::vector<double> alphas{0.10, 0.05, 0.01};
};

struct PowerPoint {
    std::size_t m = 0;
    std::size_t n_annotators = 0;
    double alpha = 0.0;
    double power = 0.0;
    double standard_error = 0.0;
    std::size_t replications = 0;
};

// Fraction of replications in which the two-sided one-sample t-test of the
// stated probabilities against 0.5 is significant. Replication r at exposure m
// uses the same random stream for every n, so the smaller sample is a prefix
// of the larger one.
inline std::vector<PowerPoint> power_analysis(const PowerGrid& grid, const PowerEffect& effect, std::size_t replications,
                                              std::uint64_t seed, NoiseModel model = NoiseModel::direct) {
    if (replications < 100) throw range_error("power analysis needs at least 100 replications");
    if (!(effect.mean >= 0.0 && effect.mean <= 1.0) || !(effect.sd >= 0.0))
        throw range_error("effect mean must lie in [0,1] and sd must be nonnegative");
    for (double a : grid.alphas)
        if (!(a > 0.0 && a < 1.0)) throw range_error("alpha levels must lie in (0,1)");
    for (std::size_t n : grid.n_values)
        if (n < 2) throw range_error("power analysis needs at least 2 annotators");
    for (std::size_t m : grid.m_values)
        if (m < 1) throw range_error("power analysis needs m >= 1");

    std::vector<PowerPoint> out;
    for (std::size_t m : grid.m_values) {
        for (std::size_t n : grid.n_values) {
            std::vector<std::size_t> hits(grid.alphas.size(), 0);
            std::vector<double> sample(n);
            for (std::size_t r = 0; r < replications; ++r) {
                Rng rng(derive_seed(seed, {m, r}));
                for (std::size_t i = 0; i < n; ++i) {
                    const double q = rng.truncated_normal(effect.mean, effect.sd, 0.0, 1.0);
                    if (model == NoiseModel::direct) {
                        sample[i] = q;
                    } else {
                        const auto wins = rng.binomial(m, q);
                        sample[i] = (static_cast<double>(wins) + 1.0) / (static_cast<double>(m) + 2.0);
                    }
                }
                double p = 1.0;
                try {
                    p = one_sample_t(sample, 0.5).p_value;
                } catch (const degenerate_sample_error&) {
                    p = 1.0;
                }
                for (std::size_t a = 0; a < grid.alphas.size(); ++a)
                    if (p < grid.alphas[a]) ++hits[a];
            }
            for (std::size_t a = 0; a < grid.alphas.size(); ++a) {
                const double pw = static_cast<double>(hits[a]) / static_cast<double>(replications);
                out.push_back({m, n, grid.alphas[a], pw, std::sqrt(pw * (1.0 - pw) / static_cast<double>(replications)),
                               replications});
            }
        }
    }
    return out;
}

}  // namespace prefeval
