// Command-line front end: simulate, estimate, converge, bound, rademacher, classify.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "stdf/classification.hpp"
#include "stdf/concentration.hpp"
#include "stdf/deviation.hpp"
#include "stdf/empirical.hpp"
#include "stdf/error.hpp"
#include "stdf/oracles.hpp"
#include "stdf/report.hpp"
#include "stdf/rng.hpp"
#include "stdf/sample.hpp"
#include "stdf/samplers.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace stdf;

namespace {

constexpr const char* kOutEnv = "STDF_OUT_DIR";

struct Globals {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    unsigned workers = 0;
    std::string out;
};

// Loads a JSON config. A manifest written by an earlier run is accepted too;
// its resolved configuration is replayed.
json load_config(const std::string& path, const std::string& subcommand) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config file '" + path + "' must hold a JSON object");
    if (cfg.contains("subcommand") && cfg.contains("config")) {
        if (cfg["subcommand"] != subcommand)
            throw ConfigError("manifest '" + path + "' was written by '" + cfg["subcommand"].get<std::string>() +
                              "', not '" + subcommand + "'");
        cfg = cfg["config"];
    }
    return cfg;
}

const json& field(const json& cfg, const std::string& key) {
    if (!cfg.contains(key) || cfg[key].is_null()) throw ConfigError("config field '" + key + "' is required");
    return cfg[key];
}

std::size_t get_size(const json& cfg, const std::string& key) {
    const auto& v = field(cfg, key);
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d >= 0 && d == std::floor(d) && d < 1e18) return static_cast<std::size_t>(d);
    }
    throw ConfigError("config field '" + key + "': expected a non-negative integer, got " + v.dump());
}

std::size_t get_size(const json& cfg, const std::string& key, std::size_t fallback) {
    return cfg.contains(key) && !cfg[key].is_null() ? get_size(cfg, key) : fallback;
}

double get_double(const json& cfg, const std::string& key) {
    const auto& v = field(cfg, key);
    if (!v.is_number()) throw ConfigError("config field '" + key + "': expected a number, got " + v.dump());
    return v.get<double>();
}

double get_double(const json& cfg, const std::string& key, double fallback) {
    return cfg.contains(key) && !cfg[key].is_null() ? get_double(cfg, key) : fallback;
}

std::optional<double> get_optional_double(const json& cfg, const std::string& key) {
    if (!cfg.contains(key) || cfg[key].is_null()) return std::nullopt;
    return get_double(cfg, key);
}

std::string get_string(const json& cfg, const std::string& key, const std::string& fallback) {
    if (!cfg.contains(key) || cfg[key].is_null()) return fallback;
    if (!cfg[key].is_string())
        throw ConfigError("config field '" + key + "': expected a string, got " + cfg[key].dump());
    return cfg[key].get<std::string>();
}

template <class T, class Get>
std::vector<T> get_list(const json& cfg, const std::string& key, Get get) {
    const auto& v = field(cfg, key);
    std::vector<T> out;
    if (!v.is_array()) {
        out.push_back(get(cfg, key));
        return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        json wrap = {{key + "[" + std::to_string(i) + "]", v[i]}};
        out.push_back(get(wrap, key + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<std::size_t> get_size_list(const json& cfg, const std::string& key) {
    return get_list<std::size_t>(cfg, key, [](const json& c, const std::string& k) { return get_size(c, k); });
}

std::vector<double> get_double_list(const json& cfg, const std::string& key) {
    return get_list<double>(cfg, key, [](const json& c, const std::string& k) { return get_double(c, k); });
}

std::vector<Margin> get_margins(const json& cfg, std::size_t d) {
    if (!cfg.contains("margins") || cfg["margins"].is_null()) return {};
    std::vector<Margin> out;
    const auto& v = cfg["margins"];
    if (!v.is_array()) throw ConfigError("config field 'margins': expected a list of names");
    for (const auto& m : v) {
        if (!m.is_string()) throw ConfigError("config field 'margins': expected strings, got " + m.dump());
        out.push_back(parse_margin(m.get<std::string>()));
    }
    if (out.size() == 1 && d > 1) out.resize(d, out.front());
    if (out.size() != d)
        throw ConfigError("config field 'margins': got " + std::to_string(out.size()) + " entries for d=" +
                          std::to_string(d));
    return out;
}

std::uint64_t require_seed(json& cfg, const Globals& g) {
    if (g.seed) cfg["seed"] = *g.seed;
    if (!cfg.contains("seed") || cfg["seed"].is_null())
        throw ConfigError("a seed is required (--seed or config field 'seed'); seeds are never generated");
    if (!cfg["seed"].is_number_unsigned())
        throw ConfigError("config field 'seed': expected an unsigned integer, got " + cfg["seed"].dump());
    return cfg["seed"].get<std::uint64_t>();
}

StdfModel get_model(const json& cfg) {
    return parse_model(get_string(cfg, "model", "independence"), get_size(cfg, "d", 2));
}

fs::path output_dir(const Globals& g) {
    fs::path dir = g.out;
    if (dir.empty()) {
        const char* env = std::getenv(kOutEnv);
        dir = env && *env ? env : ".";
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

class Run {
public:
    Run(std::string subcommand, const Globals& g)
        : subcommand_(std::move(subcommand)), dir_(output_dir(g)), start_(std::chrono::steady_clock::now()) {}

    std::ofstream open(const std::string& name) {
        const fs::path p = dir_ / name;
        std::ofstream out(p, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + p.string() + "'");
        outputs_.push_back(p.string());
        return out;
    }

    void input(const std::string& path) { inputs_.push_back(path); }

    void finish(const json& config) {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json m;
        m["subcommand"] = subcommand_;
        m["version"] = STDF_VERSION;
        m["seed"] = config.contains("seed") ? config["seed"] : json(nullptr);
        m["config"] = config;
        m["inputs"] = inputs_;
        m["outputs"] = outputs_;
        m["duration_seconds"] = seconds;
        const fs::path p = dir_ / (subcommand_ + "_manifest.json");
        std::ofstream out(p, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + p.string() + "'");
        out << m.dump(2) << '\n';
        for (const auto& o : outputs_) std::cout << o << '\n';
        std::cout << p.string() << '\n';
    }

private:
    std::string subcommand_;
    fs::path dir_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
};

void write_json(std::ofstream& out, const json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

void cmd_simulate(json cfg, const Globals& g) {
    const std::uint64_t seed = require_seed(cfg, g);
    GeneratorSpec spec;
    spec.model = get_model(cfg);
    spec.n = get_size(cfg, "n");
    spec.margins = get_margins(cfg, spec.d());
    spec.seed = seed;
    spec.validate();
    cfg["model"] = to_string(spec.model);
    cfg["d"] = spec.d();

    const Sample s = generate(spec);
    Run run("simulate", g);
    std::vector<std::string> header;
    for (std::size_t j = 0; j < spec.d(); ++j) header.push_back("x" + std::to_string(j + 1));
    auto out = run.open(get_string(cfg, "output", "sample.csv"));
    write_csv(out, s.values, header);
    out.close();
    run.finish(cfg);
}

void cmd_estimate(json cfg, const Globals& g) {
    const std::string input = get_string(cfg, "input", "");
    if (input.empty()) throw ConfigError("config field 'input' is required");
    const std::size_t k = get_size(cfg, "k");
    const double T = get_double(cfg, "T");
    const std::size_t max_points = get_size(cfg, "max_points", 2000000);

    const Sample s = read_csv_file(input);
    const RankState ranks = build_ranks(s);
    if (k < 1 || k > ranks.n) throw DomainError("k must satisfy 1 <= k <= n");
    if (!(T > 0.0)) throw ConfigError("T must be positive");
    const std::size_t M = lattice_index(k, T);
    if (M > ranks.n) throw DomainError("floor(k T) exceeds n");
    const std::size_t d = ranks.d;
    double points = 1.0;
    for (std::size_t j = 0; j < d; ++j) points *= static_cast<double>(M + 1);
    if (points > static_cast<double>(max_points))
        throw ConfigError("lattice has " + format_number(points) + " points, more than max_points=" +
                          std::to_string(max_points));

    Run run("estimate", g);
    run.input(input);
    auto out = run.open(get_string(cfg, "output", "surface.csv"));
    for (std::size_t j = 0; j < d; ++j) out << 'x' << (j + 1) << ',';
    out << "l_n\n";
    std::vector<std::size_t> m(d, 0);
    const double kd = static_cast<double>(k);
    for (;;) {
        const std::size_t count = empirical_stdf_count(ranks, m);
        for (std::size_t j = 0; j < d; ++j) out << format_number(static_cast<double>(m[j]) / kd) << ',';
        out << format_number(static_cast<double>(count) / kd) << '\n';
        bool done = true;
        for (std::size_t j = d; j-- > 0;) {
            if (++m[j] <= M) {
                done = false;
                break;
            }
            m[j] = 0;
        }
        if (done) break;
    }
    out.close();
    run.finish(cfg);
}

void cmd_converge(json cfg, const Globals& g) {
    ExperimentConfig ec;
    ec.seed = require_seed(cfg, g);
    ec.model = get_model(cfg);
    ec.n = get_size(cfg, "n");
    ec.k_schedule = get_size_list(cfg, "k");
    ec.T = get_double(cfg, "T");
    ec.delta = get_double(cfg, "delta", 0.05);
    ec.trials = get_size(cfg, "trials");
    ec.grid_step = get_optional_double(cfg, "grid_step");
    ec.margins = get_margins(cfg, ec.d());
    ec.workers = g.workers;
    ec.validate();
    cfg["model"] = to_string(ec.model);
    cfg["d"] = ec.d();

    const DeviationReport report = run_rate_experiment(ec);
    Run run("converge", g);
    auto trials = run.open("converge_trials.csv");
    write_deviation_trials(trials, ec, report);
    trials.close();
    auto summary = run.open("converge_summary.csv");
    write_deviation_summary(summary, report);
    summary.close();
    auto meta = run.open("converge_metadata.json");
    write_json(meta, deviation_metadata(ec, report));
    meta.close();
    run.finish(cfg);
}

BoundParams bound_params(const json& cfg, std::size_t n) {
    BoundParams p;
    p.n = n;
    p.V = get_double(cfg, "V");
    p.p = get_double(cfg, "p");
    p.delta = get_double(cfg, "delta", 0.05);
    p.C = get_double(cfg, "C", 1.0);
    p.validate();
    return p;
}

void cmd_bound(json cfg, const Globals& g) {
    const std::string kind = get_string(cfg, "kind", "");
    std::ostringstream csv;
    if (kind == "theorem2") {
        const std::size_t k = get_size(cfg, "k"), d = get_size(cfg, "d");
        const double T = get_double(cfg, "T"), delta = get_double(cfg, "delta", 0.05);
        const double C = get_double(cfg, "C", 1.0), bias = get_double(cfg, "bias", 0.0);
        check_theorem2_preconditions(k, d, T, delta);
        csv << "kind,k,d,T,delta,C,bias,value\n"
            << kind << ',' << k << ',' << d << ',' << format_number(T) << ',' << format_number(delta) << ','
            << format_number(C) << ',' << format_number(bias) << ','
            << format_number(theorem2_bound(k, d, T, delta, C, bias)) << '\n';
    } else if (kind == "theorem1" || kind == "remark1" || kind == "remark2") {
        const BoundParams p = bound_params(cfg, get_size(cfg, "n"));
        const double value = kind == "theorem1" ? theorem1_bound(p)
                             : kind == "remark1" ? remark1_bound(p)
                                                 : remark2_bound(p);
        csv << "kind,n,V,p,delta,C,value\n"
            << kind << ',' << p.n << ',' << format_number(p.V) << ',' << format_number(p.p) << ','
            << format_number(p.delta) << ',' << format_number(p.C) << ',' << format_number(value) << '\n';
    } else if (kind == "compare") {
        csv << "n,V,p,delta,C,theorem1,remark1,remark2,ratio\n";
        for (std::size_t n : get_size_list(cfg, "n_list")) {
            const BoundParams p = bound_params(cfg, n);
            const double t1 = theorem1_bound(p), r1 = remark1_bound(p);
            double r2 = std::nan("");
            try {
                r2 = remark2_bound(p);
            } catch (const PreconditionError&) {
            }
            csv << n << ',' << format_number(p.V) << ',' << format_number(p.p) << ',' << format_number(p.delta)
                << ',' << format_number(p.C) << ',' << format_number(t1) << ',' << format_number(r1) << ','
                << format_number(r2) << ',' << format_number(r1 / t1) << '\n';
        }
    } else {
        throw ConfigError("config field 'kind' must be theorem1, remark1, remark2, theorem2 or compare");
    }
    if (g.seed) cfg["seed"] = *g.seed;
    Run run("bound", g);
    auto out = run.open(get_string(cfg, "output", "bound.csv"));
    out << csv.str();
    out.close();
    run.finish(cfg);
}

void cmd_rademacher(json cfg, const Globals& g) {
    const std::uint64_t seed = require_seed(cfg, g);
    const StdfModel model = get_model(cfg);
    RectClassSpec cls;
    cls.d = model.d;
    cls.n = get_size(cfg, "n");
    cls.k = get_size(cfg, "k");
    cls.T = get_double(cfg, "T");
    cls.validate();
    const std::size_t trials = get_size(cfg, "trials");
    const std::size_t pairs = get_size(cfg, "pairs", 0);
    const double delta = get_double(cfg, "delta", 0.05);
    const auto grid = get_optional_double(cfg, "grid_step");
    if (cls.d >= 3 && !grid)
        throw ConfigError("d = " + std::to_string(cls.d) + " needs an explicit 'grid_step'; the exact scan covers d <= 2");
    cfg["model"] = to_string(model);
    cfg["d"] = model.d;

    const RademacherEstimate est = relative_rademacher(model, cls, trials, seed, g.workers, grid);
    std::vector<LabRow> rows;
    for (std::size_t t = 0; t < est.values.size(); ++t)
        rows.push_back({t, cls.n, cls.k, cls.d, cls.T, delta, "relative_rademacher", est.values[t]});
    const double np = static_cast<double>(cls.n) * est.p;
    std::vector<LabRow> summary{
        {0, cls.n, cls.k, cls.d, cls.T, delta, "p", est.p},
        {0, cls.n, cls.k, cls.d, cls.T, delta, "relative_rademacher_mean", est.mean},
        {0, cls.n, cls.k, cls.d, cls.T, delta, "relative_rademacher_stderr", est.std_error},
        {0, cls.n, cls.k, cls.d, cls.T, delta, "scaled_rademacher", est.mean * std::sqrt(np)},
    };
    if (pairs > 0) {
        const auto q = class_complexity_q(model, cls, pairs, derive_seed(seed, 0, "q"));
        summary.push_back({0, cls.n, cls.k, cls.d, cls.T, delta, "q", q.mean});
        summary.push_back({0, cls.n, cls.k, cls.d, cls.T, delta, "q_stderr", q.std_error});
        summary.push_back({0, cls.n, cls.k, cls.d, cls.T, delta, "two_p", 2.0 * est.p});
    }
    Run run("rademacher", g);
    auto out = run.open("rademacher_trials.csv");
    write_lab_csv(out, rows);
    out.close();
    auto sum = run.open("rademacher_summary.csv");
    write_lab_csv(sum, summary);
    sum.close();
    run.finish(cfg);
}

void cmd_classify(json cfg, const Globals& g) {
    ClassificationConfig cc;
    cc.seed = require_seed(cfg, g);
    cc.generator.tail_index = get_double(cfg, "tail_index", 2.0);
    cc.generator.flip = get_double(cfg, "flip", 0.1);
    cc.generator.validate();
    cc.trials = get_size(cfg, "trials");
    cc.workers = g.workers;
    const auto ns = get_size_list(cfg, "n");
    auto alphas = get_double_list(cfg, "alpha");
    if (alphas.size() == 1) alphas.resize(ns.size(), alphas.front());
    if (alphas.size() != ns.size())
        throw ConfigError("config field 'alpha': give one value or one per entry of 'n'");
    for (std::size_t i = 0; i < ns.size(); ++i) cc.schedule.push_back({ns[i], alphas[i]});
    const double vc = get_double(cfg, "vc_dimension", 2.0);

    Run run("classify", g);
    const std::string family_path = get_string(cfg, "family", "");
    if (!family_path.empty()) {
        std::ifstream in(family_path);
        if (!in) throw ConfigError("cannot open family file '" + family_path + "'");
        cc.family = read_family(in, vc);
        run.input(family_path);
    } else {
        // Thresholds at 0, +-t/2 and +-t with t the norm quantile of the first level.
        const double t = cc.generator.norm_quantile(alphas.front());
        const std::vector<std::size_t> coords{0, 1};
        const std::vector<double> taus{-t, -t / 2, 0.0, t / 2, t};
        cc.family = axis_threshold_family(coords, taus, vc);
    }
    cc.validate();

    const ClassificationReport report = rate_experiment_classification(cc);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    auto fam = run.open("classify_family.txt");
    write_family(fam, cc.family);
    fam.close();
    auto trials = run.open("classify_trials.csv");
    write_classification_trials(trials, report);
    trials.close();
    auto summary = run.open("classify_summary.csv");
    write_classification_summary(summary, report);
    summary.close();
    json meta;
    meta["warnings"] = report.warnings;
    meta["slope"] = report.slope_valid
                        ? json{{"slope", report.slope.slope}, {"slope_stderr", report.slope.slope_stderr},
                               {"r_squared", report.slope.r_squared}}
                        : json(nullptr);
    auto m = run.open("classify_metadata.json");
    write_json(m, meta);
    m.close();
    run.finish(cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Empirical stable tail dependence function, tail concentration and extreme classification"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "JSON configuration file or an earlier run manifest");
    app.add_option("--seed", g.seed, "Master seed (mandatory for random subcommands)");
    app.add_option("--workers", g.workers, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    app.add_option("--out", g.out, std::string("Output directory (default $") + kOutEnv + " or .)");
    app.set_version_flag("--version", STDF_VERSION);

    // Flag overrides, applied on top of the config file.
    std::optional<std::string> model, input, kind, output, margin_list, family;
    std::optional<std::size_t> n, d, trials, pairs;
    std::optional<double> T, delta, C, V, p, bias, grid_step, flip, tail_index;
    std::vector<std::size_t> k_list, n_list;
    std::vector<double> alpha_list;

    auto* sim = app.add_subcommand("simulate", "Draw a sample from a tail-dependence model");
    sim->add_option("--model", model, "independence | comonotone | logistic(theta)");
    sim->add_option("--n", n);
    sim->add_option("--d", d);
    sim->add_option("--margins", margin_list, "Comma-separated margin names");
    sim->add_option("--output", output);

    auto* est = app.add_subcommand("estimate", "Tabulate l_n on the 1/k lattice of [0,T]^d");
    est->add_option("--input", input, "Sample CSV");
    est->add_option("--k", k_list)->expected(1);
    est->add_option("--T", T);
    est->add_option("--output", output);

    auto* conv = app.add_subcommand("converge", "Deviation rate experiment for l_n");
    conv->add_option("--model", model);
    conv->add_option("--d", d);
    conv->add_option("--n", n);
    conv->add_option("--k", k_list, "k schedule");
    conv->add_option("--T", T);
    conv->add_option("--delta", delta);
    conv->add_option("--trials", trials);
    conv->add_option("--grid-step", grid_step);
    conv->add_option("--margins", margin_list);

    auto* bnd = app.add_subcommand("bound", "Evaluate a concentration bound");
    bnd->add_option("--kind", kind, "theorem1 | remark1 | remark2 | theorem2 | compare");
    bnd->add_option("--n", n);
    bnd->add_option("--n-list", n_list);
    bnd->add_option("--V", V);
    bnd->add_option("--p", p);
    bnd->add_option("--delta", delta);
    bnd->add_option("--C", C);
    bnd->add_option("--k", k_list)->expected(1);
    bnd->add_option("--d", d);
    bnd->add_option("--T", T);
    bnd->add_option("--bias", bias);
    bnd->add_option("--output", output);

    auto* rad = app.add_subcommand("rademacher", "Relative Rademacher average and class complexity q");
    rad->add_option("--model", model);
    rad->add_option("--d", d);
    rad->add_option("--n", n);
    rad->add_option("--k", k_list)->expected(1);
    rad->add_option("--T", T);
    rad->add_option("--trials", trials);
    rad->add_option("--pairs", pairs);
    rad->add_option("--delta", delta);
    rad->add_option("--grid-step", grid_step);

    auto* cls = app.add_subcommand("classify", "Conditional-risk deviation experiment on tail regions");
    cls->add_option("--n", n_list);
    cls->add_option("--alpha", alpha_list);
    cls->add_option("--trials", trials);
    cls->add_option("--flip", flip);
    cls->add_option("--tail-index", tail_index);
    cls->add_option("--family", family, "File of coordinate,threshold,sign lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        json cfg = load_config(g.config_path, name);
        auto set = [&](const char* key, const auto& opt) {
            if (opt) cfg[key] = *opt;
        };
        set("model", model);
        set("input", input);
        set("kind", kind);
        set("output", output);
        set("family", family);
        set("d", d);
        set("trials", trials);
        set("pairs", pairs);
        set("T", T);
        set("delta", delta);
        set("C", C);
        set("V", V);
        set("p", p);
        set("bias", bias);
        set("grid_step", grid_step);
        set("flip", flip);
        set("tail_index", tail_index);
        if (margin_list) {
            json list = json::array();
            std::stringstream ss(*margin_list);
            for (std::string item; std::getline(ss, item, ',');) list.push_back(item);
            cfg["margins"] = list;
        }
        if (name == "classify") {
            if (!n_list.empty()) cfg["n"] = n_list;
            if (!alpha_list.empty()) cfg["alpha"] = alpha_list;
        } else {
            set("n", n);
            if (!n_list.empty()) cfg["n_list"] = n_list;
        }
        if (!k_list.empty()) {
            if (name == "converge")
                cfg["k"] = k_list;
            else
                cfg["k"] = k_list.front();
        }

        if (name == "simulate") cmd_simulate(cfg, g);
        else if (name == "estimate") cmd_estimate(cfg, g);
        else if (name == "converge") cmd_converge(cfg, g);
        else if (name == "bound") cmd_bound(cfg, g);
        else if (name == "rademacher") cmd_rademacher(cfg, g);
        else if (name == "classify") cmd_classify(cfg, g);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const json::exception& e) {
        std::cerr << "error: configuration: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 5;
    }
}
