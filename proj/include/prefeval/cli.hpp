#pragma once

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "report_io.hpp"
#include "verify.hpp"

// Command-line front end: verify, simulate, analyze, power.
namespace prefeval::cli {

enum exit_code : int { ok = 0, failure = 1, usage = 2, data = 3 };

enum class Command { verify, simulate, analyze, power };
enum class OutputFormat { text, structured };
enum class FilterMode { none, exclusion, concurrence, both };
enum class SimulationMode { calibrated, agents };

struct RunConfig {
    Command command = Command::verify;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::text;

    // verify
    Rounding rounding = Rounding::ceiling;
    std::size_t grid_density = 99;

    // shared design
    int likert_k = 5;
    std::size_t m = 5;
    std::size_t n_annotators = 100;
    std::vector<double> alphas{0.10, 0.05, 0.01};
    std::vector<DirectedPair> pairs;  // empty: derived from data or systems
    ElicitationModel model = ElicitationModel::laplace_winrate;

    // analyze
    std::string spa_path;
    std::string likert_path;
    std::string meta_path;
    FilterMode filter = FilterMode::exclusion;
    FamilyGrouping grouping = FamilyGrouping::per_column;
    bool multi_item_likert = false;

    // simulate
    std::string output_dir = ".";
    SimulationMode mode = SimulationMode::calibrated;
    std::vector<std::string> system_names;
    std::vector<double> spa_means;
    std::vector<double> likert_means;
    double spa_sd = 0.15;
    double likert_sd = 1.0;
    double noise_fraction = 0.0;
    double excluded_fraction = 0.1;
    std::vector<std::pair<std::string, std::string>> system_files;  // name, lottery CSV
    std::vector<UtilityRange> ranges{{0.0, 1.0}};

    // power
    PowerGrid grid{{5}, {90}, {0.10, 0.05, 0.01}};
    PowerEffect effect;
    std::size_t replications = 1000;
    NoiseModel noise_model = NoiseModel::direct;
};

// ---------------------------------------------------------------------------
// Value parsing. All failures are validation errors naming the option.
// ---------------------------------------------------------------------------

inline std::vector<std::string> split_list(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.emplace_back(csv::trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.emplace_back(csv::trim(cur));
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

inline double parse_double(const std::string& s, const std::string& option) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw validation_error(option + ": '" + s + "' is not a number");
    return v;
}

inline std::size_t parse_count(const std::string& s, const std::string& option) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw validation_error(option + ": '" + s + "' is not a nonnegative integer");
    return static_cast<std::size_t>(std::stoull(s));
}

inline std::vector<double> parse_doubles(const std::string& s, const std::string& option) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(parse_double(item, option));
    return out;
}

inline std::vector<double> parse_alphas(const std::string& s) {
    auto out = parse_doubles(s, "--alphas");
    if (out.empty()) throw validation_error("--alphas: no levels given");
    for (double a : out)
        if (!(a > 0.0 && a < 1.0)) throw validation_error("--alphas: levels must lie in (0,1)");
    return out;
}

// "5,10x30,90": m values, then annotator counts.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> parse_grid(const std::string& s) {
    const auto halves = split_list(s, 'x');
    if (halves.size() != 2) throw validation_error("--grid: expected M1,M2,...xN1,N2,... (e.g. 5x30,90)");
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
    for (const auto& v : split_list(halves[0])) out.first.push_back(parse_count(v, "--grid"));
    for (const auto& v : split_list(halves[1])) out.second.push_back(parse_count(v, "--grid"));
    if (out.first.empty() || out.second.empty()) throw validation_error("--grid: empty m or n list");
    return out;
}

// "ada/human,babbage/ada"
inline std::vector<DirectedPair> parse_pairs(const std::string& s) {
    std::vector<DirectedPair> out;
    for (const auto& item : split_list(s)) {
        const auto parts = split_list(item, '/');
        if (parts.size() != 2 || parts[0].empty() || parts[1].empty() || parts[0] == parts[1])
            throw validation_error("--pairs: expected X/Y entries, got '" + item + "'");
        out.push_back({parts[0], parts[1]});
    }
    return out;
}

// "0:10,90:100"
inline std::vector<UtilityRange> parse_ranges(const std::string& s) {
    std::vector<UtilityRange> out;
    for (const auto& item : split_list(s)) {
        const auto parts = split_list(item, ':');
        if (parts.size() != 2) throw validation_error("--ranges: expected lo:hi entries, got '" + item + "'");
        out.push_back({parse_double(parts[0], "--ranges"), parse_double(parts[1], "--ranges")});
    }
    if (out.empty()) throw validation_error("--ranges: no ranges given");
    return out;
}

// "name=path"
inline std::pair<std::string, std::string> parse_system_file(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
        throw validation_error("--system: expected name=path, got '" + s + "'");
    return {std::string(csv::trim(s.substr(0, eq))), std::string(csv::trim(s.substr(eq + 1)))};
}

template <typename E>
E parse_choice(const std::string& s, const std::map<std::string, E>& choices, const std::string& option) {
    auto it = choices.find(s);
    if (it != choices.end()) return it->second;
    std::string names;
    for (const auto& [k, v] : choices) names += (names.empty() ? "" : "|") + k;
    throw validation_error(option + ": '" + s + "' is not one of " + names);
}

inline const std::map<std::string, Command>& command_names() {
    static const std::map<std::string, Command> m{
        {"verify", Command::verify}, {"simulate", Command::simulate}, {"analyze", Command::analyze}, {"power", Command::power}};
    return m;
}

inline std::string join_pairs(const std::vector<DirectedPair>& pairs) {
    std::string out;
    for (const auto& p : pairs) out += (out.empty() ? "" : ",") + p.x + "/" + p.y;
    return out;
}

// ---------------------------------------------------------------------------
// Flag and config-file parsing
// ---------------------------------------------------------------------------

// Raw option text, converted into a RunConfig after parsing so that values
// from the config file and flags get the same validation.
struct RawOptions {
    std::string command;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string rounding = "ceiling";
    std::size_t grid_density = 99;
    int likert_k = 5;
    std::size_t m = 5;
    std::size_t n_annotators = 100;
    std::string alphas = "0.10,0.05,0.01";
    std::string pairs;
    std::string model = "laplace-winrate";
    std::string spa, likert, meta;
    std::string filter = "exclusion";
    std::string family = "per-column";
    bool multi_item = false;
    std::string output = ".";
    std::string mode = "calibrated";
    std::string systems;
    std::string spa_means, likert_means;
    double spa_sd = 0.15, likert_sd = 1.0;
    double noise_fraction = 0.0, excluded_fraction = 0.1;
    std::vector<std::string> system_files;
    std::string ranges = "0:1";
    std::string grid = "5x90";
    double effect_mean = 0.575, effect_sd = 0.15;
    std::size_t replications = 1000;
    std::string noise_model = "direct";
};

inline void add_options(CLI::App& app, RawOptions& o) {
    app.add_option("command", o.command, "verify | simulate | analyze | power")->required();
    app.set_config("--config", "", "key=value file, one key per line, # comments; flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);

    app.add_option("--seed", o.seed, "master seed")->capture_default_str();
    app.add_option("--format", o.format, "text | structured")->capture_default_str();
    app.add_option("--rounding", o.rounding, "Likert tiering: ceiling | half-up")->capture_default_str();
    app.add_option("--grid-density", o.grid_density, "independence mixing grid steps (verify)")->capture_default_str();
    app.add_option("--likert-k", o.likert_k, "Likert points")->capture_default_str();
    app.add_option("--m", o.m, "outputs seen per system")->capture_default_str();
    app.add_option("--n-annotators", o.n_annotators, "number of annotators (simulate)")->capture_default_str();
    app.add_option("--alphas", o.alphas, "significance levels, comma separated")->capture_default_str();
    app.add_option("--pairs", o.pairs, "directed comparisons X/Y, comma separated");
    app.add_option("--model", o.model, "SPA elicitation: laplace-winrate | normal-posterior")->capture_default_str();

    app.add_option("--spa", o.spa, "SPA CSV");
    app.add_option("--likert", o.likert, "Likert CSV");
    app.add_option("--meta", o.meta, "annotator metadata CSV");
    app.add_option("--filter", o.filter, "none | exclusion | concurrence | both")->capture_default_str();
    app.add_option("--family", o.family, "Holm family: per-column | joint")->capture_default_str();
    app.add_flag("--multi-item", o.multi_item, "average several Likert items per system");

    app.add_option("--output", o.output, "output directory (simulate)")->capture_default_str();
    app.add_option("--mode", o.mode, "simulate from: calibrated | agents")->capture_default_str();
    app.add_option("--systems", o.systems, "system names, comma separated (calibrated)");
    app.add_option("--spa-means", o.spa_means, "generating P[X>Y] per comparison (calibrated)");
    app.add_option("--likert-means", o.likert_means, "latent Likert mean per system (calibrated)");
    app.add_option("--spa-sd", o.spa_sd, "annotator sd of stated probabilities")->capture_default_str();
    app.add_option("--likert-sd", o.likert_sd, "annotator sd of latent Likert scores")->capture_default_str();
    app.add_option("--noise-fraction", o.noise_fraction, "share of uniform-noise annotators")->capture_default_str();
    app.add_option("--excluded-fraction", o.excluded_fraction, "share of annotators failing exclusion rules")
        ->capture_default_str();
    app.add_option("--system", o.system_files, "name=lottery.csv (agents mode), repeatable");
    app.add_option("--ranges", o.ranges, "agent utility ranges lo:hi, comma separated (agents)")->capture_default_str();

    app.add_option("--grid", o.grid, "power grid M1,M2xN1,N2")->capture_default_str();
    app.add_option("--effect-mean", o.effect_mean, "true mean P[X>Y] (power)")->capture_default_str();
    app.add_option("--effect-sd", o.effect_sd, "annotator sd (power)")->capture_default_str();
    app.add_option("--replications", o.replications, "Monte Carlo replications (power)")->capture_default_str();
    app.add_option("--noise-model", o.noise_model, "direct | finite-exposure")->capture_default_str();
}

inline RunConfig to_config(const RawOptions& o) {
    RunConfig c;
    c.command = parse_choice(o.command, command_names(), "command");
    c.seed = o.seed;
    c.format = parse_choice<OutputFormat>(o.format, {{"text", OutputFormat::text}, {"structured", OutputFormat::structured}},
                                          "--format");
    c.rounding = parse_choice<Rounding>(o.rounding, {{"ceiling", Rounding::ceiling}, {"half-up", Rounding::half_up}},
                                        "--rounding");
    if (o.grid_density < 1) throw validation_error("--grid-density must be at least 1");
    c.grid_density = o.grid_density;
    if (o.likert_k < 2 || o.likert_k > 100) throw validation_error("--likert-k must lie in [2,100]");
    c.likert_k = o.likert_k;
    if (o.m < 1) throw validation_error("--m must be at least 1");
    c.m = o.m;
    if (o.n_annotators < 2) throw validation_error("--n-annotators must be at least 2");
    c.n_annotators = o.n_annotators;
    c.alphas = parse_alphas(o.alphas);
    c.pairs = parse_pairs(o.pairs);
    c.model = parse_choice<ElicitationModel>(
        o.model, {{"laplace-winrate", ElicitationModel::laplace_winrate}, {"normal-posterior", ElicitationModel::normal_posterior}},
        "--model");
    c.spa_path = o.spa;
    c.likert_path = o.likert;
    c.meta_path = o.meta;
    c.filter = parse_choice<FilterMode>(o.filter,
                                        {{"none", FilterMode::none},
                                         {"exclusion", FilterMode::exclusion},
                                         {"concurrence", FilterMode::concurrence},
                                         {"both", FilterMode::both}},
                                        "--filter");
    c.grouping = parse_choice<FamilyGrouping>(
        o.family, {{"per-column", FamilyGrouping::per_column}, {"joint", FamilyGrouping::joint}}, "--family");
    c.multi_item_likert = o.multi_item;
    c.output_dir = o.output;
    c.mode = parse_choice<SimulationMode>(o.mode, {{"calibrated", SimulationMode::calibrated}, {"agents", SimulationMode::agents}},
                                          "--mode");
    c.system_names = split_list(o.systems);
    c.spa_means = parse_doubles(o.spa_means, "--spa-means");
    c.likert_means = parse_doubles(o.likert_means, "--likert-means");
    c.spa_sd = o.spa_sd;
    c.likert_sd = o.likert_sd;
    c.noise_fraction = o.noise_fraction;
    c.excluded_fraction = o.excluded_fraction;
    for (const auto& s : o.system_files) c.system_files.push_back(parse_system_file(s));
    c.ranges = parse_ranges(o.ranges);
    const auto [ms, ns] = parse_grid(o.grid);
    c.grid = PowerGrid{ms, ns, c.alphas};
    c.effect = PowerEffect{o.effect_mean, o.effect_sd};
    c.replications = o.replications;
    c.noise_model = parse_choice<NoiseModel>(
        o.noise_model, {{"direct", NoiseModel::direct}, {"finite-exposure", NoiseModel::finite_exposure}}, "--noise-model");
    return c;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
    VerifyOptions opt;
    opt.seed = c.seed;
    opt.rounding = c.rounding;
    opt.independence_density = c.grid_density;
    opt.k = c.likert_k;
    const auto results = run_verification(opt);
    const bool ok = all_passed(results);
    if (c.format == OutputFormat::structured) {
        nlohmann::json j;
        j["schema"] = "prefeval.verify/1";
        j["seed"] = c.seed;
        j["passed"] = ok;
        j["checks"] = nlohmann::json::array();
        for (const auto& r : results)
            j["checks"].push_back(
                {{"name", r.name}, {"passed", r.passed}, {"informational", r.informational}, {"detail", r.detail}});
        out << j.dump(2) << "\n";
    } else {
        for (const auto& r : results)
            out << fmt::format("{} {}\n     {}\n", r.informational ? "INFO" : (r.passed ? "PASS" : "FAIL"), r.name,
                               r.detail);
        out << (ok ? "all checks passed\n" : "verification FAILED\n");
    }
    return ok ? exit_code::ok : exit_code::failure;
}

// Comparisons s_i vs s_{i-1}, wrapping around.
inline std::vector<DirectedPair> cyclic_pairs(const std::vector<std::string>& systems) {
    std::vector<DirectedPair> out;
    if (systems.size() == 2) return {{systems[1], systems[0]}};
    for (std::size_t i = 0; i < systems.size(); ++i)
        out.push_back({systems[i], systems[(i + systems.size() - 1) % systems.size()]});
    return out;
}

inline SyntheticStudy calibrated_study(const RunConfig& c) {
    SyntheticStudy s = story_study();
    if (!c.system_names.empty()) {
        s.systems = c.system_names;
        s.comparisons = cyclic_pairs(s.systems);
    }
    if (!c.pairs.empty()) s.comparisons = c.pairs;
    if (!c.spa_means.empty()) s.spa_means = c.spa_means;
    if (!c.likert_means.empty()) s.likert_means = c.likert_means;
    s.spa_sd = c.spa_sd;
    s.likert_sd = c.likert_sd;
    s.k = c.likert_k;
    s.n_annotators = c.n_annotators;
    s.m = c.m;
    s.excluded_fraction = c.excluded_fraction;
    s.noise_fraction = c.noise_fraction;
    s.validate();
    return s;
}

// Simulated agents: utilities drawn within the configured ranges, systems
// read as lotteries. Each agent states P[X > Y] after m draws per system and
// rates one output of every system.
inline SyntheticDataset simulate_agents(const RunConfig& c) {
    if (c.system_files.size() < 2) throw validation_error("agents mode needs at least two --system name=path entries");
    std::vector<std::string> names;
    std::vector<Lottery> systems;
    std::vector<OutcomeId> ids;
    for (const auto& [name, path] : c.system_files) {
        if (std::find(names.begin(), names.end(), name) != names.end())
            throw validation_error("--system: duplicate name '" + name + "'");
        names.push_back(name);
        systems.push_back(load_lottery(path));
        for (const auto& e : systems.back().support())
            if (std::find(ids.begin(), ids.end(), e.outcome) == ids.end()) ids.push_back(e.outcome);
    }
    std::sort(ids.begin(), ids.end());
    const auto pairs = c.pairs.empty() ? cyclic_pairs(names) : c.pairs;
    auto index_of = [&](const std::string& n) {
        auto it = std::find(names.begin(), names.end(), n);
        if (it == names.end()) throw validation_error("--pairs: unknown system '" + n + "'");
        return static_cast<std::size_t>(it - names.begin());
    };
    const auto pop = synth_population(OutcomeUniverse::from_ids(ids), c.ranges, c.n_annotators, c.seed);
    const auto scale = RatingScale::likert(c.likert_k);

    SyntheticDataset data;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const Agent& agent = pop.agents()[i];
        const std::string id = annotator_name(i);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto x = index_of(pairs[p].x), y = index_of(pairs[p].y);
            auto e = spa_elicit(agent, systems[x], systems[y], c.m, derive_seed(c.seed, {2, i, p}), c.model, pairs[p].x,
                                pairs[p].y);
            e.annotator = id;
            e.p_hat = quantize_stated(e.p_hat);
            data.spa.push_back(e);
        }
        for (std::size_t s = 0; s < systems.size(); ++s) {
            Rng rng(derive_seed(c.seed, {3, i, s}));
            const double u = normalized_utility(agent, draw(systems[s], rng), scale.top());
            data.likert.push_back(
                {id, names[s], names[s] + "-1", static_cast<int>(rate(u, scale, c.rounding)), c.likert_k});
        }
        data.meta.push_back({id, true, 1, {}});
    }
    return data;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error(path.string(), 0, "cannot write file");
    f << content;
}

inline int cmd_simulate(const RunConfig& c, std::ostream& out) {
    const SyntheticDataset data = c.mode == SimulationMode::calibrated ? generate_study(calibrated_study(c), c.seed)
                                                                       : simulate_agents(c);
    const std::filesystem::path dir(c.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw data_error(dir.string(), 0, "cannot create directory: " + ec.message());
    std::ostringstream spa, likert, meta;
    write_spa_csv(spa, data.spa);
    write_likert_csv(likert, data.likert);
    write_meta_csv(meta, data.meta);
    write_text_file(dir / "spa.csv", spa.str());
    write_text_file(dir / "likert.csv", likert.str());
    write_text_file(dir / "meta.csv", meta.str());
    if (c.format == OutputFormat::structured) {
        nlohmann::json j{{"schema", "prefeval.simulate/1"},
                         {"seed", c.seed},
                         {"spa_rows", data.spa.size()},
                         {"likert_rows", data.likert.size()},
                         {"annotators", data.meta.size()},
                         {"files", {(dir / "spa.csv").string(), (dir / "likert.csv").string(), (dir / "meta.csv").string()}}};
        out << j.dump(2) << "\n";
    } else {
        out << fmt::format("wrote {} SPA rows, {} Likert rows, {} annotators to {}\n", data.spa.size(),
                           data.likert.size(), data.meta.size(), dir.string());
    }
    return exit_code::ok;
}

inline int cmd_analyze(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.spa_path.empty() || c.likert_path.empty()) throw validation_error("analyze needs --spa and --likert");
    const bool exclusion = c.filter == FilterMode::exclusion || c.filter == FilterMode::both;
    const bool concurrence = c.filter == FilterMode::concurrence || c.filter == FilterMode::both;
    if (exclusion && c.meta_path.empty())
        throw validation_error("--filter " + std::string(c.filter == FilterMode::both ? "both" : "exclusion") +
                               " needs --meta (or use --filter none)");

    auto spa = load_spa_records(c.spa_path);
    auto likert = load_likert_records(c.likert_path);
    for (const auto& w : spa.warnings) err << "warning: " << w << "\n";
    for (const auto& w : likert.warnings) err << "warning: " << w << "\n";
    for (const auto& r : likert.records)
        if (r.k != c.likert_k)
            throw data_error(c.likert_path, 0,
                             fmt::format("rating scale k={} differs from --likert-k {}", r.k, c.likert_k));

    ReportMetadata meta;
    meta.annotators_before = annotators_in(spa.records, likert.records).size();
    meta.spa_records_before = spa.records.size();
    meta.likert_records_before = likert.records.size();

    std::vector<SpaEstimate> s = spa.records;
    std::vector<LikertRecord> l = likert.records;
    std::vector<std::string> filters;
    if (exclusion) {
        const auto m = load_annotator_meta(c.meta_path);
        for (const auto& w : m.warnings) err << "warning: " << w << "\n";
        auto es = exclude_annotators(s, m.records);
        auto el = exclude_annotators(l, m.records);
        std::map<std::string, ExclusionDecision> log;
        for (auto& d : es.log) log[d.annotator] = d;
        for (auto& d : el.log) log[d.annotator] = d;
        for (auto& [a, d] : log) meta.exclusions.push_back(d);
        s = std::move(es.kept);
        l = std::move(el.kept);
        filters.push_back("exclusion");
    }
    if (concurrence) {
        s = concurrence_filter(s, l);
        filters.push_back("concurrence");
    }

    ExperimentDesign design;
    design.m = c.m;
    design.k = c.likert_k;
    design.alphas = c.alphas;
    design.comparisons = c.pairs;
    auto report = comparison_report(s, l, design, {c.grouping, c.multi_item_likert});
    meta.filter = filters.empty() ? "none" : (filters.size() == 2 ? "exclusion+concurrence" : filters[0]);
    meta.annotators_after = annotators_in(s, l).size();
    meta.spa_records_after = s.size();
    meta.likert_records_after = l.size();
    report.metadata = meta;

    if (c.format == OutputFormat::structured) {
        out << to_json(report).dump(2) << "\n";
    } else {
        out << to_text(report);
        out << format_exclusion_log(meta.exclusions);
    }
    return exit_code::ok;
}

inline int cmd_power(const RunConfig& c, std::ostream& out) {
    const auto points = power_analysis(c.grid, c.effect, c.replications, c.seed, c.noise_model);
    if (c.format == OutputFormat::structured) {
        nlohmann::json j{{"schema", "prefeval.power/1"},
                         {"seed", c.seed},
                         {"effect_mean", c.effect.mean},
                         {"effect_sd", c.effect.sd},
                         {"noise_model", to_string(c.noise_model)},
                         {"points", to_json(points)}};
        out << j.dump(2) << "\n";
    } else {
        out << fmt::format("effect mean {} sd {}, noise model {}, {} replications\n", c.effect.mean, c.effect.sd,
                           to_string(c.noise_model), c.replications);
        out << to_text(points);
    }
    return exit_code::ok;
}

inline int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
    switch (c.command) {
        case Command::verify: return cmd_verify(c, out);
        case Command::simulate: return cmd_simulate(c, out);
        case Command::analyze: return cmd_analyze(c, out, err);
        case Command::power: return cmd_power(c, out);
    }
    return exit_code::usage;
}

// Runs a command, mapping errors onto exit codes.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(c, out, err);
    } catch (const data_error& e) {
        err << "data error: " << e.what() << "\n";
        return exit_code::data;
    } catch (const degenerate_sample_error& e) {
        err << "data error: " << e.what() << "\n";
        return exit_code::data;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }
}

// Full entry point over argv.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"prefeval: preference-elicitation evaluation toolkit"};
    RawOptions raw;
    add_options(app, raw);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_code::usage;
    }
    RunConfig config;
    try {
        config = to_config(raw);
    } catch (const error& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_code::usage;
    }
    return run(config, out, err);
}

}  // namespace prefeval::cli
