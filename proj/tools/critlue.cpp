// critlue command-line front end.
//
// Every run writes its CSV to --out and a manifest (the full option set plus
// the artifact version) to <out>.manifest.json. `critlue --from-manifest F`
// replays a manifest.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "critlue/cg.hpp"
#include "critlue/ensembles.hpp"
#include "critlue/fredholm.hpp"
#include "critlue/kernel.hpp"
#include "critlue/parallel.hpp"
#include "critlue/rh_matrix.hpp"

namespace {

using namespace critlue;
using json = nlohmann::json;

constexpr const char* kVersion = "critlue 0.1.0";

enum Exit { kOk = 0, kInternal = 1, kValidation = 2, kNumerical = 3 };

struct RunConfig {
    std::string subcommand;
    // ensemble
    std::string ensemble = "lue";
    int n_dim = 100;
    std::string scaling = "critical";
    int n_cols = 0;
    double c = 1.0;
    int samples = 100;
    std::uint64_t seed = 1;
    double eps = 1e-14;
    std::string x0 = "b";           // b | zero
    std::string apply = "factor";   // factor | dense
    // grids and numerics
    double s_min = -6.0, s_max = 4.0, step = 0.1;
    int nodes = 60;
    double delta = kDelta;
    std::string grid;
    std::string edge = "soft";
    std::string side = "max";
    std::string check = "all";
    int points = 16;
    int threads = 0;
    std::string out;
};

// x0:x1:step, inclusive of x1 up to rounding
std::vector<double> parse_grid(const std::string& g) {
    std::vector<double> v;
    double a, b, h;
    char c1, c2;
    std::istringstream is(g);
    if (!(is >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || !(h > 0.0) || b < a)
        throw ValidationError("--grid must look like x0:x1:step with step > 0 and x1 >= x0");
    const long n = std::lround(std::floor((b - a) / h + 1e-9));
    for (long i = 0; i <= n; ++i) v.push_back(a + i * h);
    return v;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class Csv {
public:
    Csv(const std::string& path, const std::string& header) : f_(path) {
        if (!f_) throw ValidationError("cannot open output file '" + path + "'");
        f_ << header << '\n';
    }
    template <class... T>
    void row(const T&... cols) {
        bool first = true;
        ((f_ << (first ? "" : ",") << cell(cols), first = false), ...);
        f_ << '\n';
    }

private:
    static std::string cell(double x) { return fmt(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(std::size_t x) { return std::to_string(x); }
    static std::string cell(bool x) { return x ? "1" : "0"; }
    static std::string cell(const char* x) { return x; }
    static std::string cell(const std::string& x) { return x; }
    std::ofstream f_;
};

EnsembleSpec ensemble_from(const RunConfig& cfg) {
    return EnsembleSpec::make(parse_matrix_dist(cfg.ensemble), parse_scaling_rule(cfg.scaling), cfg.n_dim, cfg.c,
                              cfg.seed, cfg.n_cols);
}

int run_spectrum(const RunConfig& cfg) {
    const auto spec = ensemble_from(cfg);
    if (cfg.samples < 1) throw ValidationError("--samples must be >= 1");
    const auto res = spectral_batch(spec, static_cast<std::size_t>(cfg.samples), false, cfg.threads);
    Csv csv(cfg.out, "sample_index,lambda_min,lambda_max,kappa");
    int zeros = 0;
    for (std::size_t i = 0; i < res.size(); ++i) {
        csv.row(i, res[i].lambda_min, res[i].lambda_max, res[i].kappa);
        zeros += res[i].zero_singular;
    }
    std::cout << "spectrum: " << res.size() << " samples, N = " << spec.N << ", n = " << spec.n << '\n';
    if (zeros) std::cout << "diagnostic: " << zeros << " samples with a zero singular value\n";
    return kOk;
}

int run_cg(const RunConfig& cfg) {
    const auto spec = ensemble_from(cfg);
    if (cfg.samples < 2) throw ValidationError("--samples must be >= 2");
    CgOptions opt;
    opt.eps = cfg.eps;
    if (cfg.x0 != "b" && cfg.x0 != "zero") throw ValidationError("--x0 must be b or zero");
    if (cfg.apply != "factor" && cfg.apply != "dense") throw ValidationError("--apply must be factor or dense");
    opt.x0_is_b = cfg.x0 == "b";
    opt.dense = cfg.apply == "dense";
    const auto res = cg_batch(spec, static_cast<std::size_t>(cfg.samples), opt, cfg.threads);
    Csv csv(cfg.out, "sample_index,T,kappa,kaniel_ok");
    std::vector<double> T;
    int caps = 0, kaniel = 0, breakdowns = 0, violations = 0;
    for (const auto& s : res) {
        csv.row(s.sample_index, s.record.T, s.record.kappa, s.record.kaniel_ok);
        T.push_back(s.record.T);
        caps += s.record.cap_hit;
        kaniel += s.record.kaniel_ok;
        breakdowns += s.record.breakdown_at >= 0;
        violations += s.record.monotone_violations;
    }
    const auto m = moments(T);
    const json summary = {{"mean", m.mean},
                          {"variance", m.variance},
                          {"skewness", m.skewness},
                          {"kurtosis", m.kurtosis},
                          {"sample_count", m.sample_count},
                          {"cap_hits", caps},
                          {"kaniel_ok", kaniel},
                          {"breakdowns", breakdowns},
                          {"monotone_violations", violations}};
    std::ofstream(cfg.out + ".summary.json") << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';
    return kOk;
}

int run_tw2(const RunConfig& cfg) {
    if (!(cfg.step > 0.0) || cfg.s_max < cfg.s_min) throw ValidationError("need --step > 0 and --s-max >= --s-min");
    std::vector<double> s;
    const long n = std::lround(std::floor((cfg.s_max - cfg.s_min) / cfg.step + 1e-9));
    for (long i = 0; i <= n; ++i) s.push_back(cfg.s_min + i * cfg.step);
    std::vector<DeterminantResult> r(s.size());
    FredholmOptions opt;
    opt.nodes = cfg.nodes;
    opt.max_nodes = std::max(opt.max_nodes, 2 * cfg.nodes);
    parallel_for(s.size(), [&](std::size_t i) { r[i] = tw2_cdf_result(s[i], opt); }, cfg.threads);
    Csv csv(cfg.out, "t,cdf,convergence_estimate");
    for (std::size_t i = 0; i < s.size(); ++i) csv.row(s[i], r[i].value, r[i].convergence_estimate);
    std::cout << "tw2: " << s.size() << " rows\n";
    return kOk;
}

int run_gap(const RunConfig& cfg) {
    if (cfg.side != "max" && cfg.side != "min") throw ValidationError("--side must be max or min");
    const auto p = ScalingParams::critical(cfg.n_dim, cfg.c);
    const auto t = parse_grid(cfg.grid.empty() ? "0.8:1.2:0.05" : cfg.grid);
    std::vector<DeterminantResult> r(t.size());
    FredholmOptions opt;
    opt.nodes = cfg.nodes;
    opt.max_nodes = std::max(opt.max_nodes, 2 * cfg.nodes);
    const double inf = std::numeric_limits<double>::infinity();
    parallel_for(
        t.size(),
        [&](std::size_t i) {
            r[i] = cfg.side == "max" ? gap_probability_finite(p, t[i], inf, opt)
                                     : gap_probability_finite(p, 0.0, t[i], opt);
        },
        cfg.threads);
    Csv csv(cfg.out, "t,cdf,convergence_estimate");
    for (std::size_t i = 0; i < t.size(); ++i) csv.row(t[i], r[i].value, r[i].convergence_estimate);
    std::cout << "gap: " << t.size() << " rows, N = " << p.N << ", alpha = " << p.alpha << '\n';
    return kOk;
}

int run_kernel_limit(const RunConfig& cfg) {
    EdgeKind edge;
    if (cfg.edge == "hard") edge = EdgeKind::Hard;
    else if (cfg.edge == "soft") edge = EdgeKind::Soft;
    else if (cfg.edge == "none") edge = EdgeKind::None;
    else throw ValidationError("--edge must be hard, soft or none");
    const auto p = ScalingParams::critical(cfg.n_dim, cfg.c);
    const std::string dflt = edge == EdgeKind::Hard ? "-2:1:0.25" : edge == EdgeKind::Soft ? "-2:2:0.25" : "0.1:1.2:0.1";
    const auto xs = parse_grid(cfg.grid.empty() ? dflt : cfg.grid);
    const auto g = make_kernel_grid(edge, p, xs, cfg.threads);
    Csv csv(cfg.out, "x,y,value,limit,abs_err");
    for (std::size_t i = 0; i < g.points.size(); ++i) {
        const double lim = g.limit_values.empty() ? NAN : g.limit_values[i];
        csv.row(g.points[i].first, g.points[i].second, g.values[i], lim, std::abs(g.values[i] - lim));
    }
    if (!g.limit_values.empty()) std::cout << "kernel-limit: sup error " << fmt(g.max_abs_error()) << '\n';
    return kOk;
}

int run_rhp_verify(const RunConfig& cfg) {
    JumpSuiteOptions o;
    o.delta = cfg.delta;
    o.points = cfg.points;
    if (!(o.delta > 0.0 && o.delta < 0.5)) throw ValidationError("--delta must lie in (0, 0.5)");
    if (o.points < 1) throw ValidationError("--points must be >= 1");
    using Suite = std::vector<JumpResidual> (*)(const JumpSuiteOptions&);
    const std::vector<std::pair<std::string, Suite>> suites = {
        {"ncal", jumps_script_N},  {"sinf", jumps_s_infinity},       {"ainf", jumps_a_infinity},
        {"pairy", jumps_p_airy},   {"pbessel", jumps_p_bessel},      {"sleft", jumps_s_local_left},
        {"sright", jumps_s_local_right}};
    bool known = cfg.check == "all";
    for (const auto& s : suites) known = known || s.first == cfg.check;
    if (!known) throw ValidationError("unknown --check '" + cfg.check + "'");
    Csv csv(cfg.out, "check,contour,re_z,im_z,residual");
    double worst = 0.0;
    for (const auto& [name, fn] : suites) {
        if (cfg.check != "all" && cfg.check != name) continue;
        const auto r = fn(o);
        for (const auto& j : r) csv.row(name, contour_name(j.contour_tag), j.location.real(), j.location.imag(), j.residual);
        const double m = max_residual(r);
        worst = std::max(worst, m);
        std::cout << name << ": max residual " << fmt(m) << " over " << r.size() << " points\n";
    }
    std::cout << "max residual " << fmt(worst) << '\n';
    return kOk;
}

int run_asymp_compare(const RunConfig& cfg) {
    const auto p = ScalingParams::critical(cfg.n_dim, cfg.c);
    const auto xs = parse_grid(cfg.grid.empty() ? "0.1:2:0.1" : cfg.grid);
    Csv csv(cfg.out, "x,region,asymp,exact,rel_err");
    ContourOptions co;
    co.delta = cfg.delta;
    for (double x : xs) {
        if (!(x > 0.0)) throw ValidationError("asymp-compare: grid points must be positive");
        const auto region = asymp_region_for(x, cfg.delta);
        const double a = y_plus_asymptotic(x, region, p, co).a11.real();
        const double e = monic_laguerre(p.N, p.alpha, p.nu, x);
        csv.row(x, region_name(region), a, e, std::abs(a / e - 1.0));
    }
    std::cout << "asymp-compare: " << xs.size() << " rows, N = " << p.N << ", alpha = " << p.alpha << '\n';
    return kOk;
}

json manifest_of(const RunConfig& c) {
    return {{"version", kVersion},
            {"subcommand", c.subcommand},
            {"options",
             {{"ensemble", c.ensemble},
              {"n-dim", c.n_dim},
              {"scaling", c.scaling},
              {"n-cols", c.n_cols},
              {"c", c.c},
              {"samples", c.samples},
              {"seed", c.seed},
              {"eps", c.eps},
              {"x0", c.x0},
              {"apply", c.apply},
              {"s-min", c.s_min},
              {"s-max", c.s_max},
              {"step", c.step},
              {"nodes", c.nodes},
              {"delta", c.delta},
              {"grid", c.grid},
              {"edge", c.edge},
              {"side", c.side},
              {"check", c.check},
              {"points", c.points},
              {"threads", c.threads},
              {"out", c.out}}}};
}

void add_ensemble_flags(CLI::App* s, RunConfig& c) {
    s->add_option("--ensemble", c.ensemble, "lue | pbe | real-gaussian");
    s->add_option("--n-dim", c.n_dim, "N (rows of X)");
    s->add_option("--scaling", c.scaling, "square | double | critical | custom");
    s->add_option("--n-cols", c.n_cols, "n for --scaling custom");
    s->add_option("--c", c.c, "critical-scaling constant");
    s->add_option("--samples", c.samples, "sample count");
    s->add_option("--seed", c.seed, "base seed");
}

int dispatch(RunConfig& cfg) {
    if (cfg.out.empty()) cfg.out = cfg.subcommand + ".csv";
    if (cfg.threads > 0) set_thread_count(cfg.threads);
    int rc = kOk;
    if (cfg.subcommand == "spectrum") rc = run_spectrum(cfg);
    else if (cfg.subcommand == "cg-halting") rc = run_cg(cfg);
    else if (cfg.subcommand == "tw2") rc = run_tw2(cfg);
    else if (cfg.subcommand == "gap") rc = run_gap(cfg);
    else if (cfg.subcommand == "kernel-limit") rc = run_kernel_limit(cfg);
    else if (cfg.subcommand == "rhp-verify") rc = run_rhp_verify(cfg);
    else if (cfg.subcommand == "asymp-compare") rc = run_asymp_compare(cfg);
    else throw ValidationError("unknown subcommand '" + cfg.subcommand + "'");
    std::ofstream(cfg.out + ".manifest.json") << manifest_of(cfg).dump(2) << '\n';
    return rc;
}

std::vector<std::string> argv_from_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read manifest '" + path + "'");
    json m;
    try {
        f >> m;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed manifest: ") + e.what());
    }
    std::vector<std::string> args = {"critlue", m.at("subcommand").get<std::string>()};
    for (const auto& [k, v] : m.at("options").items()) {
        args.push_back("--" + k);
        args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    return args;
}

int run(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"critlue: critically scaled Laguerre ensemble toolkit"};
    app.require_subcommand(0, 1);
    std::string manifest;
    app.add_option("--from-manifest", manifest, "replay a run manifest");
    app.set_version_flag("--version", kVersion);

    auto* sp = app.add_subcommand("spectrum", "extreme eigenvalues of sampled matrices");
    add_ensemble_flags(sp, cfg);

    auto* cg = app.add_subcommand("cg-halting", "conjugate gradient halting times");
    add_ensemble_flags(cg, cfg);
    cg->add_option("--eps", cfg.eps, "residual tolerance");
    cg->add_option("--x0", cfg.x0, "starting vector: b | zero");
    cg->add_option("--apply", cfg.apply, "factor: A v = X (X^* v); dense: form A = X X^*");

    auto* tw = app.add_subcommand("tw2", "Tracy-Widom F2 on a grid");
    tw->add_option("--s-min", cfg.s_min);
    tw->add_option("--s-max", cfg.s_max);
    tw->add_option("--step", cfg.step);
    tw->add_option("--nodes", cfg.nodes, "starting Gauss-Legendre node count");

    auto* gp = app.add_subcommand("gap", "finite-N gap probabilities");
    gp->add_option("--n-dim", cfg.n_dim);
    gp->add_option("--c", cfg.c);
    gp->add_option("--grid", cfg.grid, "x0:x1:step in lambda/nu units");
    gp->add_option("--side", cfg.side, "max: P(lambda_max/nu <= t), min: P(lambda_min/nu >= t)");
    gp->add_option("--nodes", cfg.nodes);

    auto* kl = app.add_subcommand("kernel-limit", "rescaled kernel against its edge limit");
    kl->add_option("--edge", cfg.edge, "hard | soft | none");
    kl->add_option("--n-dim", cfg.n_dim);
    kl->add_option("--c", cfg.c);
    kl->add_option("--grid", cfg.grid, "x0:x1:step");

    auto* rv = app.add_subcommand("rhp-verify", "jump residuals of the RHP objects");
    rv->add_option("--check", cfg.check, "ncal | sinf | ainf | pairy | pbessel | sleft | sright | all");
    rv->add_option("--delta", cfg.delta);
    rv->add_option("--points", cfg.points);

    auto* ac = app.add_subcommand("asymp-compare", "leading-order Y_11 against the monic polynomial");
    ac->add_option("--n-dim", cfg.n_dim);
    ac->add_option("--c", cfg.c);
    ac->add_option("--grid", cfg.grid, "x0:x1:step");
    ac->add_option("--delta", cfg.delta);

    for (auto* s : {sp, cg, tw, gp, kl, rv, ac}) {
        s->add_option("--out", cfg.out, "output CSV (default <subcommand>.csv)");
        s->add_option("--threads", cfg.threads, "worker cap (else CRITLUE_THREADS)");
        // flags shared in the manifest but unused by this subcommand are accepted and ignored
        for (const char* f : {"--ensemble", "--n-dim", "--scaling", "--n-cols", "--c", "--samples", "--seed", "--eps",
                              "--x0", "--apply", "--s-min", "--s-max", "--step", "--nodes", "--delta", "--grid",
                              "--edge", "--side", "--check", "--points"})
            if (!s->get_option_no_throw(f)) s->add_option(f)->group("");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }
    if (!manifest.empty()) {
        if (app.get_subcommands().size()) throw ValidationError("--from-manifest takes no subcommand");
        auto args = argv_from_manifest(manifest);
        std::vector<char*> av;
        for (auto& a : args) av.push_back(a.data());
        return run(static_cast<int>(av.size()), av.data());
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kValidation;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    return dispatch(cfg);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const UnsupportedRange& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const RangeError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}
