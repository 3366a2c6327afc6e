#include "commands.hpp"

#include "thermops/bounds.hpp"
#include "thermops/channels.hpp"
#include "thermops/cones.hpp"
#include "thermops/core.hpp"
#include "thermops/export.hpp"
#include "thermops/kernels.hpp"
#include "thermops/random.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace thermops::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    double q = 0.5;
    double x = 0.0;
    bool has_x = false;
    int truncation = 0;  // 0: command default
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int samples = 10000;
    int directions = 360;
    int depth = 6;
    std::string format = "json";
    std::string out_path;
};

struct Report {
    std::string text;
    int code = kSuccess;
};

json config_json(const Config& c) {
    return {{"q", c.q}, {"truncation", c.truncation}, {"tol", c.tol}, {"seed", c.seed}, {"format", c.format}};
}

void validate(const Config& c) {
    if (!(c.q > 0.0 && c.q < 1.0)) throw UsageError("--q must lie in (0,1)");
    if (c.has_x && !(c.x > 0.0 && c.x < 1.0)) throw UsageError("--x must lie in (0,1)");
    if (c.truncation < 1) throw UsageError("--truncation must be >= 1");
    if (!(c.tol > 0.0)) throw UsageError("--tol must be > 0");
    if (c.samples < 0) throw UsageError("--samples must be >= 0");
    if (c.directions < 1) throw UsageError("--directions must be >= 1");
    if (c.depth < 1) throw UsageError("--depth must be >= 1");
    parse_export_format(c.format);
}

std::uint64_t seed_from_env() {
    const char* env = std::getenv("THERMOPS_SEED");
    if (!env || !*env) return 0;
    std::uint64_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto res = std::from_chars(env, end, v);
    if (res.ec != std::errc() || res.ptr != end) throw UsageError("THERMOPS_SEED is not an unsigned 64-bit integer");
    return v;
}

Vector parse_state(const std::string& text) {
    std::vector<double> vals;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const char* b = text.data() + start;
        const char* e = text.data() + comma;
        double v = 0.0;
        const auto res = std::from_chars(b, e, v);
        if (b == e || res.ec != std::errc() || res.ptr != e) throw UsageError("--state: '" + text + "' is not a list of numbers");
        vals.push_back(v);
        start = comma + 1;
    }
    if (vals.size() != 3) throw UsageError("--state: expected three populations");
    Vector p = Eigen::Map<Vector>(vals.data(), 3);
    if (!p.allFinite() || p.minCoeff() < 0.0 || std::abs(p.sum() - 1.0) > 1e-9)
        throw UsageError("--state: populations must be non-negative and sum to 1");
    return p;
}

// |+> style test state: every amplitude 1/sqrt(d).
Matrix uniform_pure(int d) {
    return Matrix::Constant(d, d, cplx(1.0 / d, 0.0));
}

Report finish(const json& doc, bool pass) {
    return {doc.dump(2) + "\n", pass ? kSuccess : kVerificationFailure};
}

Report cmd_verify(const std::string& channel, Config cfg, double p00, bool has_p00) {
    if (cfg.truncation == 0) cfg.truncation = 40;
    validate(cfg);
    if (cfg.format != "json") throw UsageError("verify reports are JSON only");

    json results;
    results["channel"] = channel;
    KrausChannel ch = KrausChannel::identity(1);
    SystemSpec spec = SystemSpec::ladder(2);
    double beta = -std::log(cfg.q);

    if (channel == "beta-swap") {
        const BathSpec bath = BathSpec::from_q(cfg.q, cfg.truncation);
        ch = sto_channel(beta_swap_qubit(bath), spec, bath);
    } else if (channel == "optimal-qubit") {
        if (!has_p00) p00 = 1.0 - cfg.q / 2.0;
        if (!(p00 >= 1.0 - cfg.q && p00 <= 1.0)) throw UsageError("--p00 must lie in [1 - q, 1]");
        const BathSpec bath = BathSpec::from_q(cfg.q, cfg.truncation);
        ch = sto_channel(qubit_optimal_sto(p00, bath), spec, bath);
        const TransitionMatrix g = transition_matrix(ch, spec);
        const Matrix rho = uniform_pure(2);
        results["p00_requested"] = p00;
        results["p00_measured"] = g(0, 0);
        results["damping"] = std::abs(ch.apply(rho)(1, 0)) / std::abs(rho(1, 0));
        results["damping_bound"] = std::sqrt(g(0, 0) * g(1, 1));
    } else if (channel == "sim-beta-swap") {
        const double x = cfg.has_x ? cfg.x : cfg.q;
        spec = SystemSpec::four_level(1, 3);
        beta = -std::log(x) / 3.0;
        ch = simultaneous_beta_swap_kraus(x, spec);
        results["x"] = x;
    } else {
        spec = SystemSpec::ladder(3);
        const Vector gamma = gibbs_weights(spec, beta);
        Rng rng(cfg.seed, 0);
        RealMatrix g = RealMatrix::Identity(3, 3);
        for (int step = 0; step < 4; ++step) {
            const int i = static_cast<int>(rng.below(2));
            const int j = i + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(2 - i)));
            const double ratio = gamma(j) / gamma(i);
            g = two_level_gibbs_stochastic(3, i, j, ratio, rng.uniform(1.0 - ratio, 1.0)) * g;
        }
        ch = exto_optimal_channel(TransitionMatrix(g), spec);
    }

    const DensityMatrix gamma_state = gibbs_state(spec, beta);
    const double cptp = ch.completeness_deviation();
    const double gibbs = verify_gibbs_preserving(ch, gamma_state, cfg.tol).max_deviation;
    const CovarianceReport cov = verify_covariant(ch, spec, cfg.tol);
    const double covariance = std::max(cov.max_deviation, cov.off_shift_norm);
    const double ratio = saturation_check(ch, uniform_pure(spec.dim()), spec, 1, 0).ratio;
    const bool pass = cptp <= cfg.tol && gibbs <= cfg.tol && covariance <= cfg.tol && ratio <= 1.0 + cfg.tol;

    results["cptp_dev"] = cptp;
    results["gibbs_dev"] = gibbs;
    results["covariance_dev"] = covariance;
    results["bound_ratio"] = ratio;
    results["pass"] = pass;
    json config = config_json(cfg);
    if (channel == "optimal-qubit") config["p00"] = p00;
    return finish(envelope("verify", config, results), pass);
}

Report cmd_cone(const std::string& which, Config cfg, const std::string& state) {
    if (cfg.truncation == 0) cfg.truncation = 20;
    validate(cfg);
    const Vector p = parse_state(state);
    const Vector gamma = gibbs_weights(SystemSpec::ladder(3), -std::log(cfg.q));
    const BathSpec bath = BathSpec::from_q(cfg.q, cfg.truncation);

    ConeApprox cone;
    if (which == "to" || which == "all") {
        cone = to_cone(p, gamma, cfg.directions);
    } else {
        cone.base = p;
        cone.gibbs = gamma;
        cone.points.push_back({p, Provenance::base});
    }
    std::vector<Vector> elto, sto;
    if (which == "elto" || which == "all") elto = elto_cone_sample(p, gamma, cfg.depth, cfg.samples, cfg.seed);
    if (which == "sto" || which == "all") sto = sto_cone_sample(p, bath, cfg.samples, cfg.seed);
    for (const auto& v : elto) cone.points.push_back({v, Provenance::elto_sequence});
    for (const auto& v : sto) cone.points.push_back({v, Provenance::sto_sample});

    json results;
    results["which"] = which;
    bool pass = true;
    if (which == "all") {
        const auto in_elto = kernels::membership_batch(elto, p, gamma, cfg.tol, Execution::parallel);
        const auto in_sto = kernels::membership_batch(sto, p, gamma, cfg.tol, Execution::parallel);
        const auto elto_ok = static_cast<std::size_t>(std::count(in_elto.begin(), in_elto.end(), 1));
        const auto sto_ok = static_cast<std::size_t>(std::count(in_sto.begin(), in_sto.end(), 1));
        std::vector<Vector> all_inner = elto;
        all_inner.insert(all_inner.end(), sto.begin(), sto.end());
        const double violation =
            all_inner.empty() ? 0.0 : kernels::halfspace_violation(all_inner, cone.supports, Execution::parallel);
        // The identity is an ElTO, so p belongs to the outer set.
        std::vector<Vector> outer = elto;
        outer.push_back(p);
        const double margin = sto.empty() ? 0.0 : hull_inclusion_margin(sto, outer);
        pass = elto_ok == elto.size() && sto_ok == sto.size() && violation <= 1e-8 && margin >= -kHullTolerance;
        results["inclusion"] = {
            {"elto_samples", elto.size()},
            {"elto_in_to", elto_ok},
            {"sto_samples", sto.size()},
            {"sto_in_to", sto_ok},
            {"max_halfspace_violation", violation},
            {"sto_in_elto_hull_margin", margin},
            {"pass", pass},
        };
    }

    const ExportFormat fmt = parse_export_format(cfg.format);
    if (fmt == ExportFormat::csv) return {cone_to_csv(cone), pass ? kSuccess : kVerificationFailure};
    results["cone"] = cone_to_json(cone);
    json config = config_json(cfg);
    config["state"] = {p(0), p(1), p(2)};
    config["samples"] = cfg.samples;
    config["directions"] = cfg.directions;
    config["depth"] = cfg.depth;
    return finish(envelope("cone", config, results), pass);
}

json merge_branch(const MergeBoundReport& r, double achieved) {
    return {{"bound", r.bound}, {"strategy", std::string(to_string(r.strategy))}, {"achieved_beta_swap", achieved}};
}

Report cmd_merge(Config cfg, bool overlap, double r10, double r32, double a, double b, const CLI::App& sub) {
    if (cfg.truncation == 0) cfg.truncation = 20;
    validate(cfg);
    if (cfg.format != "json") throw UsageError("merge reports are JSON only");
    json results;
    json config = config_json(cfg);
    if (overlap) {
        if (sub.count("--a") == 0 || sub.count("--b") == 0) throw UsageError("merge --overlap needs --a and --b");
        if (a < 0.0 || b < 0.0) throw UsageError("magnitudes must be >= 0");
        const OverlapBounds o = overlap_merge_bounds(a, b, cfg.q);
        results = {{"a", a}, {"b", b}, {"down", o.down}, {"up", o.up}};
        config["overlap"] = true;
    } else {
        if (sub.count("--r10") == 0 || sub.count("--r32") == 0 || !cfg.has_x)
            throw UsageError("merge needs --r10, --r32 and --x");
        if (r10 < 0.0 || r32 < 0.0) throw UsageError("magnitudes must be >= 0");
        const KrausChannel ch = simultaneous_beta_swap_kraus(cfg.x);
        Matrix rho = Matrix::Zero(4, 4);
        rho(1, 0) = r10;
        rho(3, 2) = r32;
        const Matrix out = ch.apply(rho);
        results = {{"r10", r10},
                   {"r32", r32},
                   {"x", cfg.x},
                   {"down", merge_branch(merge_down_bound(r10, r32, cfg.x), std::abs(out(1, 0)))},
                   {"up", merge_branch(merge_up_bound(r10, r32, cfg.x), std::abs(out(3, 2)))}};
        config["x"] = cfg.x;
    }
    return finish(envelope("merge", config, results), true);
}

Report cmd_decouple(Config cfg, double p, double a, double b, const CLI::App& sub) {
    if (cfg.truncation == 0) cfg.truncation = 20;
    validate(cfg);
    if (cfg.format != "json") throw UsageError("decouple reports are JSON only");
    if (sub.count("--p") == 0 || sub.count("--a") == 0 || sub.count("--b") == 0)
        throw UsageError("decouple needs --p, --a and --b");
    if (!(p > 0.0 && p < 1.0)) throw UsageError("--p must lie in (0,1)");
    if (!(a > 0.0 && b > 0.0)) throw UsageError("--a and --b must be > 0");
    const DecouplingWitness w = decoupling_witness(p, a, b, cfg.q);
    json results = {{"p", w.p},
                    {"a", w.a},
                    {"b", w.b},
                    {"q", w.q},
                    {"product_coherence", w.product_coherence},
                    {"exto_bound", w.exto_bound},
                    {"verdict", w.reachable ? "REACHABLE" : "NOT-REACHABLE"},
                    {"condition", std::string(to_string(w.condition))},
                    {"condition_threshold", w.condition_threshold}};
    if (w.condition == DecouplingCondition::vacuous)
        results["note"] = "p + q - 1 <= 0: the window a < b < a p (p + q - 1) / (1 - p)^2 is empty";
    return finish(envelope("decouple", config_json(cfg), results), true);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Single-mode thermal operations: channel certificates, coherence bounds, population cones"};
    app.name("thermops");
    app.fallthrough();
    app.require_subcommand(1);

    Config cfg;
    std::uint64_t seed = 0;
    app.add_option("--q", cfg.q, "Boltzmann factor of one bath quantum");
    app.add_option("--x", cfg.x, "Boltzmann factor of the four-level gap E2");
    app.add_option("--truncation", cfg.truncation, "Bath truncation N (default 40 for verify, 20 otherwise)");
    app.add_option("--tol", cfg.tol, "Verification tolerance");
    app.add_option("--seed", seed, "Run seed (falls back to THERMOPS_SEED)");
    app.add_option("--format", cfg.format, "json or csv");
    app.add_option("--out", cfg.out_path, "Write the report to this path");

    auto* verify = app.add_subcommand("verify", "Certify a named channel");
    std::string channel;
    double p00 = 0.0;
    verify->add_option("channel", channel)->required()->check(
        CLI::IsMember({"beta-swap", "optimal-qubit", "sim-beta-swap", "exto-optimal"}));
    verify->add_option("--p00", p00, "Requested p(0|0) for optimal-qubit");

    auto* cone = app.add_subcommand("cone", "Population cones of a qutrit state");
    std::string which;
    std::string state = "0.8,0.16,0.04";
    cone->add_option("which", which)->required()->check(CLI::IsMember({"to", "elto", "sto", "all"}));
    cone->add_option("--state", state, "Three populations, comma separated");
    cone->add_option("--samples", cfg.samples, "ElTO sequences and STO draws");
    cone->add_option("--directions", cfg.directions, "Support directions");
    cone->add_option("--depth", cfg.depth, "ElTO sequence depth");

    auto* merge = app.add_subcommand("merge", "Coherence merging bounds");
    double r10 = 0.0, r32 = 0.0, ma = 0.0, mb = 0.0;
    bool overlap = false;
    merge->add_option("--r10", r10);
    merge->add_option("--r32", r32);
    merge->add_flag("--overlap", overlap, "Qutrit overlapping-gap bounds");
    merge->add_option("--a", ma);
    merge->add_option("--b", mb);

    auto* decouple = app.add_subcommand("decouple", "Correlation erasure witness");
    double dp = 0.0, da = 0.0, db = 0.0;
    decouple->add_option("--p", dp);
    decouple->add_option("--a", da);
    decouple->add_option("--b", db);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "thermops: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        cfg.has_x = app.count("--x") > 0;
        cfg.seed = app.count("--seed") > 0 ? seed : seed_from_env();

        Report report;
        if (*verify)
            report = cmd_verify(channel, cfg, p00, verify->count("--p00") > 0);
        else if (*cone)
            report = cmd_cone(which, cfg, state);
        else if (*merge)
            report = cmd_merge(cfg, overlap, r10, r32, ma, mb, *merge);
        else
            report = cmd_decouple(cfg, dp, da, db, *decouple);

        if (cfg.out_path.empty()) {
            out << report.text;
        } else {
            std::ofstream file(cfg.out_path, std::ios::binary);
            if (!file) throw UsageError("cannot open --out path " + cfg.out_path);
            file << report.text;
        }
        return report.code;
    } catch (const UsageError& e) {
        err << "thermops: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "thermops: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::domain_error& e) {
        err << "thermops: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "thermops: " << e.what() << "\n";
        return kVerificationFailure;
    }
}

}  // namespace thermops::cli
