#pragma once

#include "padicframe/padicframe.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace padicframe::cli {

enum ExitCode : int { ok = 0, check_failed = 1, config_error = 2 };

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"stabilizer",   "genericity",   "orbit",   "frame-bound",
                                                "frame-check", "oracle-check", "mra-demo"};
    return names;
}

/// Everything a run depends on. Flags override the config document.
struct RunConfig {
    std::string source = "<config>";
    LocatedJson doc;
    std::int64_t prime = 2;
    bool exact = true;
    std::string command;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> depth;
    std::int64_t gamma_min = -3;
    std::int64_t gamma_max = 3;
    std::int64_t n_denominator_exponent = 3;
    std::int64_t random_g = 25;
    IndexGrid g_grid{};
    std::int64_t truncation = 1;
    std::optional<std::int64_t> max_gap;
    std::vector<AffineElement> elements;
};

struct Flags {
    std::string config_path;
    std::optional<std::string> command;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> gamma_min;
    std::optional<std::int64_t> gamma_max;
    std::optional<std::int64_t> depth;
    std::optional<std::int64_t> random_g;
    std::optional<std::string> mode;
    std::optional<std::string> output;
};

namespace detail {

inline const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"prime",      "mode",     "function",  "command",
                                            "seed",       "depth",    "gamma_min", "gamma_max",
                                            "n_denominator_exponent", "random_g",  "g_grid",
                                            "truncation", "max_gap",  "elements"};
    return keys;
}

inline std::int64_t int_field(const LocatedJson& doc, const std::string& key, std::int64_t fallback) {
    const Json& root = doc.root();
    if (!root.contains(key)) return fallback;
    return integer_from_json(doc, root[key], "/" + key);
}

}  // namespace detail

/// Reads and validates the config document; throws ConfigError with the offending line.
inline RunConfig load_config(const std::string& text, const std::string& source, const Flags& flags) {
    RunConfig cfg;
    cfg.source = source;
    cfg.doc = LocatedJson::parse(text);
    const LocatedJson& doc = cfg.doc;
    const Json& root = doc.root();
    if (!root.is_object()) doc.fail("", "config must be a JSON object");
    for (const auto& [key, value] : root.items())
        if (!detail::known_keys().contains(key)) doc.fail("/" + key, "unknown field \"" + key + "\"");

    if (!root.contains("prime")) doc.fail("", "missing field \"prime\"");
    cfg.prime = integer_from_json(doc, root["prime"], "/prime");
    try {
        PrimeContext check(cfg.prime);
    } catch (const PadicError& e) {
        doc.fail("/prime", e.what());
    }

    std::string mode = "exact";
    if (root.contains("mode")) {
        if (!root["mode"].is_string()) doc.fail("/mode", "expected \"exact\" or \"float\"");
        mode = root["mode"].get<std::string>();
    }
    if (flags.mode) mode = *flags.mode;
    if (mode != "exact" && mode != "float") doc.fail("/mode", "mode must be \"exact\" or \"float\", got \"" + mode + "\"");
    cfg.exact = mode == "exact";

    if (root.contains("command")) {
        if (!root["command"].is_string()) doc.fail("/command", "expected a command name");
        cfg.command = root["command"].get<std::string>();
    }
    if (flags.command) cfg.command = *flags.command;
    if (cfg.command.empty()) doc.fail("", "no command given (use --command or \"command\")");
    if (std::find(command_names().begin(), command_names().end(), cfg.command) == command_names().end())
        doc.fail("/command", "unknown command \"" + cfg.command + "\"");

    if (!root.contains("function")) doc.fail("", "missing field \"function\"");
    if (!root["function"].is_array() || root["function"].empty())
        doc.fail("/function", "function must be a nonempty array of wavelet terms");

    if (root.contains("seed")) {
        const std::int64_t s = integer_from_json(doc, root["seed"], "/seed");
        if (s < 0) doc.fail("/seed", "seed must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (flags.seed) cfg.seed = *flags.seed;
    if (root.contains("depth")) cfg.depth = integer_from_json(doc, root["depth"], "/depth");
    if (flags.depth) cfg.depth = flags.depth;
    cfg.gamma_min = flags.gamma_min.value_or(detail::int_field(doc, "gamma_min", -3));
    cfg.gamma_max = flags.gamma_max.value_or(detail::int_field(doc, "gamma_max", 3));
    if (cfg.gamma_min > cfg.gamma_max) doc.fail("/gamma_min", "gamma_min exceeds gamma_max");
    cfg.n_denominator_exponent = detail::int_field(doc, "n_denominator_exponent", 3);
    if (cfg.n_denominator_exponent < 0) doc.fail("/n_denominator_exponent", "must be nonnegative");
    cfg.random_g = flags.random_g.value_or(detail::int_field(doc, "random_g", 25));
    if (cfg.random_g < 0) doc.fail("/random_g", "random_g must be nonnegative");
    cfg.truncation = detail::int_field(doc, "truncation", 1);
    if (root.contains("max_gap")) cfg.max_gap = integer_from_json(doc, root["max_gap"], "/max_gap");

    // random g: |gamma| <= 2 and n denominator <= p^2 unless a range flag or g_grid says otherwise
    cfg.g_grid = IndexGrid{-2, 2, 2};
    if (flags.gamma_min) cfg.g_grid.gamma_min = *flags.gamma_min;
    if (flags.gamma_max) cfg.g_grid.gamma_max = *flags.gamma_max;
    if (root.contains("g_grid")) {
        const Json& grid = root["g_grid"];
        if (!grid.is_object()) doc.fail("/g_grid", "expected an object");
        for (const auto& [key, value] : grid.items()) {
            const std::string ptr = "/g_grid/" + key;
            if (key == "gamma_min") cfg.g_grid.gamma_min = integer_from_json(doc, value, ptr);
            else if (key == "gamma_max") cfg.g_grid.gamma_max = integer_from_json(doc, value, ptr);
            else if (key == "denominator_exponent") cfg.g_grid.denominator_exponent = integer_from_json(doc, value, ptr);
            else doc.fail(ptr, "unknown field \"" + key + "\"");
        }
    }
    if (cfg.g_grid.gamma_min > cfg.g_grid.gamma_max) doc.fail("/g_grid", "gamma_min exceeds gamma_max");
    if (cfg.g_grid.denominator_exponent < 0) doc.fail("/g_grid", "denominator_exponent must be nonnegative");

    const PrimeContext ctx(cfg.prime);
    if (root.contains("elements")) {
        const Json& list = root["elements"];
        if (!list.is_array()) doc.fail("/elements", "expected an array of {\"a\", \"b\"} objects");
        for (std::size_t k = 0; k < list.size(); ++k)
            cfg.elements.push_back(affine_from_json(doc, list[k], "/elements/" + std::to_string(k), ctx));
    }
    return cfg;
}

template <class Coeff>
class Runner {
public:
    using Traits = CoefficientTraits<Coeff>;

    explicit Runner(const RunConfig& cfg)
        : cfg_(cfg), ctx_(cfg.prime), rng_(cfg.seed),
          f_(function_from_json<Coeff>(cfg.doc, cfg.doc.root()["function"], "/function", ctx_)) {
        if (f_.empty()) cfg.doc.fail("/function", "function is zero after merging terms");
    }

    int run(Json& report) {
        report["command"] = cfg_.command;
        report["prime"] = cfg_.prime;
        report["mode"] = cfg_.exact ? "exact" : "float";
        report["seed"] = cfg_.seed;
        report["function"] = to_json(f_);
        const std::string& c = cfg_.command;
        if (c == "stabilizer") return stabilizer(report);
        if (c == "genericity") return genericity(report);
        if (c == "orbit") return orbit(report);
        if (c == "frame-bound") return frame_bound_cmd(report);
        if (c == "frame-check") return frame_check(report);
        if (c == "oracle-check") return oracle_check(report);
        return mra_demo(report);
    }

private:
    std::vector<AffineElement> elements() {
        if (!cfg_.elements.empty()) return cfg_.elements;
        std::vector<AffineElement> out;
        for (std::int64_t k = 0; k < cfg_.random_g; ++k) out.push_back(random_affine_element(rng_, ctx_));
        return out;
    }

    int stabilizer(Json& report) {
        const StabilizerSpec spec = stabilizer_spec(f_);
        report["stabilizer"] = to_json(spec);
        Json list = Json::array();
        for (const auto& g : cfg_.elements)
            list.push_back(Json{{"element", to_json(g)},
                                {"in_stabilizer", in_stabilizer(g, spec)},
                                {"fixes_function", act_on_function(g, f_) == f_}});
        report["elements"] = list;
        return ok;
    }

    int genericity(Json& report) {
        const auto verdict = genericity_check(f_, cfg_.depth);
        report["stabilizer"] = to_json(stabilizer_spec(f_));
        report["genericity"] = to_json(verdict);
        return verdict.contradictions.empty() ? ok : check_failed;
    }

    int orbit(Json& report) {
        const StabilizerSpec spec = stabilizer_spec(f_);
        report["stabilizer"] = to_json(spec);
        Json list = Json::array();
        bool all = true;
        for (const auto& g : elements()) {
            const OrbitIndex idx = orbit_index_of(g, spec);
            const OrbitIndex plain = orbit_index_of(g, spec, OrbitConvention::plain);
            const auto image = act_on_function(g, f_);
            const bool round_trip = orbit_element(f_, spec, idx) == image &&
                                    orbit_element(f_, spec, plain, OrbitConvention::plain) == image;
            all = all && round_trip;
            list.push_back(Json{{"element", to_json(g)},
                                {"orbit_index", to_json(idx)},
                                {"orbit_index_plain", to_json(plain)},
                                {"round_trip", round_trip}});
        }
        report["elements"] = list;
        report["all_round_trips"] = all;
        return all ? ok : check_failed;
    }

    int frame_bound_cmd(Json& report) {
        const StabilizerSpec spec = stabilizer_spec(f_);
        report["stabilizer"] = to_json(spec);
        report["frame_bound"] = scalar_to_json(frame_bound(f_, spec));
        return ok;
    }

    int frame_check(Json& report) {
        const StabilizerSpec spec = stabilizer_spec(f_);
        const auto verdict = genericity_check(f_, cfg_.depth);
        FrameReport<Coeff> fr{frame_bound(f_, spec), Traits::exact, 0, true, {}, {}};
        for (std::int64_t k = 0; k < cfg_.random_g; ++k) {
            const auto g = random_test_function<Coeff>(rng_, ctx_, 6, cfg_.g_grid);
            const auto r = verify_tight_frame(f_, spec, g);
            ++fr.g_count;
            fr.residuals.push_back(r.residual);
            fr.all_zero_residuals = fr.all_zero_residuals && r.zero;
        }
        std::set<std::pair<std::int64_t, Rational>> centres;
        for (const auto& [idx, c] : f_.terms()) centres.emplace(idx.gamma, idx.n);
        bool multiplicities = true;
        for (const auto& [gamma1, n1] : centres) {
            typename FrameReport<Coeff>::MultiplicityCheck m{gamma1, phase_fix_multiplicity(gamma1, n1, spec),
                                                             expected_phase_fix_multiplicity(gamma1, spec)};
            multiplicities = multiplicities && m.ok();
            fr.multiplicity_checks.push_back(m);
        }
        report["stabilizer"] = to_json(spec);
        report["generic_up_to_depth"] = verdict.generic_up_to_depth;
        report["genericity_depth"] = verdict.depth;
        report["g_grid"] = Json{{"gamma_min", cfg_.g_grid.gamma_min},
                                {"gamma_max", cfg_.g_grid.gamma_max},
                                {"denominator_exponent", cfg_.g_grid.denominator_exponent},
                                {"max_terms", 6}};
        report["frame"] = to_json(fr);
        // the identity is only claimed for generic f; other residuals are findings
        if (verdict.generic_up_to_depth && !fr.all_zero_residuals) return check_failed;
        return multiplicities ? ok : check_failed;
    }

    int oracle_check(Json& report) {
        constexpr double tolerance = 1e-9;
        double action_error = 0.0;
        std::int64_t points = 0;
        for (const auto& g : elements()) {
            const auto image = act_on_function(g, f_);
            const auto [k, l] = default_lattice(image);
            const SampledFunction sampled = sample(image, k, l);
            const double scale = std::sqrt(to_double(norm(g.a_scalar())));
            for (std::size_t i = 0; i < sampled.size(); ++i) {
                const Rational x = sampled.point(i);
                const auto direct = evaluate(f_, (x - g.b()) / g.a()) / scale;
                action_error = std::max(action_error, std::abs(direct - sampled[i]));
                ++points;
            }
        }
        double inner_error = 0.0;
        const IndexGrid grid{cfg_.gamma_min, cfg_.gamma_max, std::min<std::int64_t>(cfg_.n_denominator_exponent, 2)};
        for (std::int64_t t = 0; t < cfg_.random_g; ++t) {
            const auto h = random_test_function<Coeff>(rng_, ctx_, 6, grid);
            const std::int64_t k = std::max(required_resolution(f_), required_resolution(h));
            const std::int64_t l = std::max(required_support(f_), required_support(h));
            const auto oracle = inner_product_oracle(sample(f_, k, l), sample(h, k, l));
            inner_error = std::max(inner_error, std::abs(oracle - Traits::to_complex(inner_product_symbolic(f_, h))));
        }
        const bool pass = action_error <= tolerance && inner_error <= tolerance;
        report["oracle"] = Json{{"lattice_points", points},
                                {"max_action_error", action_error},
                                {"max_inner_product_error", inner_error},
                                {"tolerance", tolerance},
                                {"pass", pass}};
        return pass ? ok : check_failed;
    }

    int mra_demo(Json& report) {
        if constexpr (!Traits::exact) {
            cfg_.doc.fail("/mode", "mra-demo needs \"mode\": \"exact\"");
        } else {
            const StabilizerSpec spec = stabilizer_spec(f_);
            const auto gram = scaling_shift_gram(ctx_, canonical_shift_grid(ctx_.p(), 3));
            const bool identity = is_identity(gram);
            const std::int64_t spread = f_.max_scale() - f_.min_scale();
            const std::int64_t max_gap = cfg_.max_gap.value_or(spread + 2);
            Json gaps = Json::array();
            bool beyond_spread = true;
            for (std::int64_t gap = 1; gap <= max_gap; ++gap) {
                const auto s = wavelet_space_gram(f_, spec, 0, gap, cfg_.truncation);
                if (gap > spread) beyond_spread = beyond_spread && s.orthogonal;
                gaps.push_back(Json{{"gap", gap}, {"orthogonal", s.orthogonal}, {"max_abs_entry", s.max_abs_entry}});
            }
            const auto generator = orbit_element(f_, spec, OrbitIndex{0, Rational(0), 1});
            const auto relation = scaling_relation_check(f_, spec, generator, 0, cfg_.truncation);
            report["mra"] = Json{
                {"gram_identity", identity},
                {"shift_count", gram.size()},
                {"scale_spread", spread},
                {"orthogonality_threshold_observed",
                 observed_orthogonality_threshold(f_, spec, max_gap, cfg_.truncation)},
                {"truncation", cfg_.truncation},
                {"gaps", gaps},
                {"scaling_relation", Json{{"precondition_ok", relation.precondition_ok}, {"holds", relation.holds}}},
                {"w_label_convention", "W_gamma is spanned by orbit elements of orbit scale gamma"}};
            return identity && beyond_spread && relation.holds ? ok : check_failed;
        }
    }

    const RunConfig& cfg_;
    PrimeContext ctx_;
    Rng rng_;
    BasicTestFunction<Coeff> f_;
};

/// Full command line run. Report goes to out (or --output), diagnostics to err.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact p-adic wavelet frame analyses"};
    app.name("padicframe");
    Flags flags;
    std::string command, mode, output;
    std::uint64_t seed = 0;
    std::int64_t gamma_min = 0, gamma_max = 0, depth = 0, random_g = 0;
    app.add_option("--config", flags.config_path, "JSON config file")->required();
    auto* c_opt = app.add_option("--command", command, "analysis to run")
                      ->check(CLI::IsMember(command_names()));
    auto* s_opt = app.add_option("--seed", seed, "random seed");
    auto* gmin_opt = app.add_option("--gamma-min", gamma_min, "lowest scale for random draws");
    auto* gmax_opt = app.add_option("--gamma-max", gamma_max, "highest scale for random draws");
    auto* d_opt = app.add_option("--depth", depth, "genericity enumeration depth");
    auto* r_opt = app.add_option("--random-g", random_g, "number of random probes");
    auto* m_opt = app.add_option("--mode", mode, "coefficient field")->check(CLI::IsMember({"exact", "float"}));
    auto* o_opt = app.add_option("--output", output, "write the report here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return config_error;
    }
    if (*c_opt) flags.command = command;
    if (*s_opt) flags.seed = seed;
    if (*gmin_opt) flags.gamma_min = gamma_min;
    if (*gmax_opt) flags.gamma_max = gamma_max;
    if (*d_opt) flags.depth = depth;
    if (*r_opt) flags.random_g = random_g;
    if (*m_opt) flags.mode = mode;
    if (*o_opt) flags.output = output;

    std::ifstream in(flags.config_path);
    if (!in) {
        err << flags.config_path << ": cannot open config\n";
        return config_error;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    Json report = Json::object();
    int code = ok;
    try {
        const RunConfig cfg = load_config(buffer.str(), flags.config_path, flags);
        if (cfg.exact) {
            Runner<CycloNumber> runner(cfg);
            code = runner.run(report);
        } else {
            Runner<std::complex<double>> runner(cfg);
            code = runner.run(report);
        }
    } catch (const ConfigError& e) {
        err << flags.config_path << ":" << e.line() << ": "
            << std::string(e.what()).substr(std::string(e.what()).find(": ") + 2) << "\n";
        return config_error;
    } catch (const PadicError& e) {
        err << flags.config_path << ": " << e.what() << "\n";
        return config_error;
    }
    report["exit_code"] = code;

    const std::string text = report.dump(2) + "\n";
    if (flags.output) {
        std::ofstream file(*flags.output);
        if (!file) {
            err << *flags.output << ": cannot write report\n";
            return config_error;
        }
        file << text;
    } else {
        out << text;
    }
    return code;
}

}  // namespace padicframe::cli
