// Acceptance run: one PASS/FAIL line per criterion with the measured values.
// Exits 0 when every criterion was evaluated, whatever the verdicts; a
// criterion that cannot be met stays FAIL.

#include <boost/math/quadrature/exp_sinh.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "critlue/cg.hpp"
#include "critlue/ensembles.hpp"
#include "critlue/fredholm.hpp"
#include "critlue/kernel.hpp"
#include "critlue/parallel.hpp"
#include "critlue/rh_matrix.hpp"

using namespace critlue;

namespace {

int passed = 0, failed = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    (ok ? passed : failed) += 1;
}

std::string fmt(const char* f, auto... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

void edge_laws(const Tw2Table& F) {
    const int N = 200, M = 5000;
    const auto p = ScalingParams::critical(N, 1.0);
    const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, ScalingRule::Critical, N, 1.0, 20240001);
    const auto batch = spectral_batch(spec, M);
    // diagnostics: same scales, centered at the finite-N edges (sqrt n +- sqrt N)^2
    const double n = N + p.alpha;
    const double soft_c = std::pow(std::sqrt(n) + std::sqrt(N), 2), hard_c = std::pow(std::sqrt(n) - std::sqrt(N), 2);
    std::vector<double> large, small, cond, large_f, small_f, cond_f;
    for (const auto& s : batch) {
        large.push_back(standardize(LimitLaw::Large, s.lambda_max, p));
        small.push_back(standardize(LimitLaw::Small, s.lambda_min, p));
        cond.push_back(standardize(LimitLaw::Cond, s.kappa, p));
        large_f.push_back(large.back() + (p.nu - soft_c) / limit_scale(LimitLaw::Large, p));
        small_f.push_back(small.back() + (hard_c - p.c) / limit_scale(LimitLaw::Small, p));
        cond_f.push_back(cond.back() + (p.nu / p.c - soft_c / hard_c) / limit_scale(LimitLaw::Cond, p));
    }
    const auto cdf = [&](double t) { return F(t); };
    const double d1 = ks_distance(large, cdf), d2 = ks_distance(small, cdf), d3 = ks_distance(cond, cdf);
    const double f1 = ks_distance(large_f, cdf), f2 = ks_distance(small_f, cdf), f3 = ks_distance(cond_f, cdf);
    report(1, d1 <= 0.08, fmt("soft edge, N=%d alpha=%d M=%d: KS %.4f (bound 0.08); centered at (sqrt n + sqrt N)^2: %.4f",
                              N, p.alpha, M, d1, f1));
    report(2, d2 <= 0.08, fmt("hard edge, N=%d alpha=%d M=%d: KS %.4f (bound 0.08); centered at (sqrt n - sqrt N)^2: %.4f",
                              N, p.alpha, M, d2, f2));
    report(3, d3 <= 0.10, fmt("condition number, N=%d alpha=%d M=%d: KS %.4f (bound 0.10); centered at the edge ratio: %.4f",
                              N, p.alpha, M, d3, f3));
}

void edelman() {
    const int N = 100, M = 5000;
    const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, ScalingRule::Square, N, 1.0, 20240004);
    std::vector<double> t;
    std::size_t zeros = 0;
    for (const auto& s : spectral_batch(spec, M)) {
        t.push_back(s.kappa / (static_cast<double>(N) * N));
        zeros += s.zero_singular;
    }
    const double d = ks_distance(t, [](double x) { return x > 0.0 ? edelman_cdf(x) : 0.0; });
    report(4, d <= 0.08, fmt("n=N=%d M=%d: KS %.4f vs exp(-4/t) (bound 0.08), zero singular values %zu", N, M, d, zeros));
}

void finite_oracle() {
    const int N = 30;
    const std::size_t M = 100000;
    const auto p = ScalingParams::critical(N, 1.0);
    const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, ScalingRule::Critical, N, 1.0, 20240005);
    const auto batch = spectral_batch(spec, M);
    bool ok = true;
    std::string detail = fmt("N=%d, %zu samples:", N, M);
    for (double t : {0.9, 1.0, 1.1}) {
        double hits = 0.0;
        for (const auto& s : batch) hits += s.lambda_max / p.nu <= t ? 1.0 : 0.0;
        const double emp = hits / M, det = cdf_lambda_max(p, t);
        const double se = std::sqrt(det * (1.0 - det) / M);
        const double z = std::abs(emp - det) / se;
        ok = ok && z <= 3.0;
        detail += fmt(" t=%.1f emp %.5f det %.5f (%.2f SE)", t, emp, det, z);
    }
    report(5, ok, detail);
}

void kernel_limits() {
    std::vector<double> alphas, Ms, eh, es;
    for (int N : {100, 400, 1600}) {
        const auto p = ScalingParams::critical(N, 1.0);
        std::vector<double> hx, sx;
        for (int i = 0; i <= 12; ++i) hx.push_back(-2.0 + 0.25 * i);
        for (int i = 0; i <= 16; ++i) sx.push_back(-2.0 + 0.25 * i);
        alphas.push_back(p.alpha);
        Ms.push_back(p.M);
        eh.push_back(make_kernel_grid(EdgeKind::Hard, p, hx).max_abs_error());
        es.push_back(make_kernel_grid(EdgeKind::Soft, p, sx).max_abs_error());
    }
    const double sh = loglog_slope(alphas, eh), ss = loglog_slope(Ms, es);
    const bool ok_h = decreasing(eh) && std::abs(sh + 1.0 / 3.0) <= 0.3;
    const bool ok_s = decreasing(es) && std::abs(ss + 2.0 / 3.0) <= 0.3;
    report(6, ok_h && ok_s,
           fmt("hard sup errors %.4f %.4f %.4f slope %.3f in alpha (target -0.333 +- 0.3: %s); "
               "soft sup errors %.4f %.4f %.4f slope %.3f in M (target -0.667 +- 0.3: %s)",
               eh[0], eh[1], eh[2], sh, ok_h ? "ok" : "miss", es[0], es[1], es[2], ss, ok_s ? "ok" : "miss"));
}

void rhp_suite() {
    JumpSuiteOptions o;
    const double rn = max_residual(jumps_script_N(o)), rs = max_residual(jumps_s_infinity(o)),
                 ra = max_residual(jumps_a_infinity(o)), rp = max_residual(jumps_p_airy(o));
    o.alpha = 2;
    const double rb = max_residual(jumps_p_bessel(o));
    const double worst = std::max({rn, rs, ra, rp, rb});
    std::vector<double> M, ea, al, eb;
    for (int N : {100, 200, 400, 800}) {
        const auto p = ScalingParams::critical(N, 1.0);
        M.push_back(p.M);
        ea.push_back(matching_sweep_airy(p));
    }
    // N = k^2 keeps alpha = floor(sqrt(4N)) an exact doubling
    for (int N : {25, 100, 400, 1600}) {
        const auto p = ScalingParams::critical(N, 1.0);
        al.push_back(p.alpha);
        eb.push_back(matching_sweep_bessel(p));
    }
    const double sa = loglog_slope(M, ea), sb = loglog_slope(al, eb);
    const bool ok = worst <= 1e-8 && std::abs(sa + 1.0) <= 0.25 && std::abs(sb + 1.0) <= 0.25;
    report(7, ok,
           fmt("jumps N %.1e S_inf %.1e A_inf %.1e P_Ai %.1e P_Bes %.1e (bound 1e-8); "
               "airy matching %.3g..%.3g slope %.3f in M; bessel matching %.3g..%.3g slope %.3f in alpha (target -1 +- 0.25)",
               rn, rs, ra, rp, rb, ea.front(), ea.back(), sa, eb.front(), eb.back(), sb));
}

void polynomial_asymptotics() {
    auto err = [](int N) {
        const auto p = ScalingParams::critical(N, 1.0);
        const Mat2C Y = y_plus_asymptotic(2.0, AsympRegion::D, p);
        return std::abs(Y.a11.real() / monic_laguerre(N, p.alpha, p.nu, 2.0) - 1.0);
    };
    const double e20 = err(20), e40 = err(40);
    report(8, e20 / e40 >= 1.5, fmt("x=2: rel err %.4f (N=20) %.4f (N=40), ratio %.3f (need >= 1.5)", e20, e40, e20 / e40));
}

struct CgCase {
    const char* name;
    ScalingRule rule;
    double mean_ref;
    double mean_tol;  // relative
    double kurt_ref;  // < 0: not checked
};

void cg_tables(bool& monotone_ok, std::string& monotone_detail) {
    const int N = 100;
    const std::size_t M = 2000;
    const CgCase cases[] = {
        {"critical", ScalingRule::Critical, 133.573, 0.02, 3.09},
        {"double", ScalingRule::Double, 73.2159, 0.02, 3.0488},
        {"square", ScalingRule::Square, 282.442, 0.15, -1.0},
    };
    // reference values come out of x0 = 0 with A = X X^* formed; x0 = b is reported alongside
    CgOptions table_opt;
    table_opt.x0_is_b = false;
    table_opt.dense = true;
    bool ok = true;
    std::string detail;
    std::size_t viol_samples = 0, total = 0;
    for (const auto& c : cases) {
        const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, c.rule, N, 1.0, 20240009);
        const auto batch = cg_batch(spec, M, table_opt);
        std::vector<double> T, Tb;
        std::size_t kaniel = 0, caps = 0;
        for (const auto& s : batch) {
            T.push_back(s.record.T);
            kaniel += s.record.kaniel_ok;
            caps += s.record.cap_hit;
            viol_samples += s.record.monotone_violations > 0;
            ++total;
        }
        for (const auto& s : cg_batch(spec, M)) Tb.push_back(s.record.T);
        const auto m = moments(T);
        const double mean_b = moments(Tb).mean;
        const bool mean_ok = std::abs(m.mean / c.mean_ref - 1.0) <= c.mean_tol;
        // the ill-conditioned kurtosis does not settle and is reported only
        const bool kurt_ok = c.kurt_ref < 0.0 || std::abs(m.kurtosis - c.kurt_ref) <= 0.3;
        ok = ok && mean_ok && kurt_ok;
        detail += fmt("[%s n=%d: mean %.3f vs %.4f (%+.1f%%, %s), var %.2f, skew %.3f, kurt %.3f%s, kaniel_ok %zu/%zu, "
                      "cap hits %zu; x0=b mean %.3f (%+.1f%%)] ",
                      c.name, spec.n, m.mean, c.mean_ref, 100.0 * (m.mean / c.mean_ref - 1.0), mean_ok ? "ok" : "miss",
                      m.variance, m.skewness, m.kurtosis,
                      c.kurt_ref < 0.0 ? "" : fmt(" vs %.2f (%s)", c.kurt_ref, kurt_ok ? "ok" : "miss").c_str(),
                      kaniel, M, caps, mean_b, 100.0 * (mean_b / c.mean_ref - 1.0));
    }
    report(9, ok, detail);
    monotone_ok = viol_samples == 0;
    monotone_detail = fmt("%zu/%zu CG samples with non-monotone residual norms (slack 1e-2)", viol_samples, total);
}

void properties(bool monotone_ok, const std::string& monotone_detail) {
    // fluctuation normalization on a fixed batch of halting times
    const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, ScalingRule::Critical, 50, 1.0, 20240010);
    std::vector<double> T;
    for (const auto& s : cg_batch(spec, 200)) T.push_back(s.record.T);
    const auto tau = fluctuations(T).tau;
    const auto mt = moments(tau);
    const double norm_err = std::max(std::abs(mt.mean), std::abs(mt.variance - 1.0));
    // node doubling at m = 60
    double worst_det = 0.0;
    for (double s = -6.0; s <= 4.0001; s += 0.5) {
        FredholmOptions o;
        o.nodes = 120;
        o.max_nodes = 120;
        o.tol = 0.0;
        worst_det = std::max(worst_det, tw2_cdf_result(s, o).convergence_estimate);
    }
    // trace identity
    boost::math::quadrature::exp_sinh<double> q;
    double worst_trace = 0.0;
    for (int N : {4, 8, 16, 30}) {
        const auto p = ScalingParams::critical(N, 1.0);
        worst_trace = std::max(worst_trace, std::abs(q.integrate([&](double x) { return kernel_KN(x, x, p); }) - N));
    }
    const bool ok = monotone_ok && norm_err <= 1e-12 && worst_det <= 1e-8 && worst_trace <= 1e-6;
    report(10, ok,
           fmt("%s (%s); tau normalization error %.1e; node doubling |det(60)-det(120)| <= %.1e on s in [-6,4]; "
               "trace identity error %.1e",
               monotone_detail.c_str(), monotone_ok ? "ok" : "miss", norm_err, worst_det, worst_trace));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    std::printf("critlue acceptance, %d worker thread(s)\n", thread_count());
    const Tw2Table F;
    edge_laws(F);
    edelman();
    finite_oracle();
    kernel_limits();
    rhp_suite();
    polynomial_asymptotics();
    bool monotone_ok = false;
    std::string monotone_detail;
    cg_tables(monotone_ok, monotone_detail);
    properties(monotone_ok, monotone_detail);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("summary: %d PASS, %d FAIL, %.0f s\n", passed, failed, secs);
    return 0;
}
