#include "critlue/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "critlue/parallel.hpp"
#include "critlue/specfun.hpp"

namespace critlue {

namespace {

constexpr double kBig = 1e100;
constexpr double kNearDiagonal = 1e-6;

void rescale(std::vector<double>& m, double& log_scale, double factor) {
    for (auto& v : m) v *= factor;
    log_scale -= std::log(factor);
}

// psi_0 prefactor without the polynomial: log of e^{-x/2} x^{a/2} / sqrt(Gamma(a+1))
double log_psi0(double alpha, double x) {
    const double xa = alpha == 0.0 ? 0.0 : 0.5 * alpha * std::log(x);
    return -0.5 * std::lgamma(alpha + 1.0) - 0.5 * x + xa;
}

}  // namespace

double ScaledValue::value() const {
    if (mantissa == 0.0) return 0.0;
    return std::copysign(std::exp(std::log(std::abs(mantissa)) + log_scale), mantissa);
}

WavefunctionTable laguerre_wavefunctions(int count, double alpha, double x) {
    if (!(x >= 0.0)) throw ValidationError("laguerre_wavefunction: x must be nonnegative");
    if (!(alpha >= 0.0)) throw ValidationError("laguerre_wavefunction: alpha must be nonnegative");
    if (count < 1) throw ValidationError("laguerre_wavefunction: need at least one degree");
    WavefunctionTable t;
    t.mantissa.assign(static_cast<std::size_t>(count), 0.0);
    if (x == 0.0 && alpha > 0.0) return t;
    t.log_scale = log_psi0(alpha, x);
    // crude bound on the polynomial growth; far tails underflow to exact zeros
    const double growth = (count - 1.0) * std::log(x + 4.0 * count + 2.0 * alpha + 2.0);
    if (!(t.log_scale + growth > -800.0)) {
        t.log_scale = 0.0;
        return t;
    }
    t.mantissa[0] = 1.0;
    for (int j = 0; j + 1 < count; ++j) {
        const double prev = j > 0 ? t.mantissa[j - 1] : 0.0;
        const double next = ((2.0 * j + alpha + 1.0 - x) * t.mantissa[j] - std::sqrt(j * (j + alpha)) * prev) /
                            std::sqrt((j + 1.0) * (j + alpha + 1.0));
        t.mantissa[j + 1] = next;
        const double mag = std::max(std::abs(next), std::abs(t.mantissa[j]));
        if (mag > kBig) rescale(t.mantissa, t.log_scale, 1.0 / kBig);
        else if (mag < 1.0 / kBig && mag > 0.0) rescale(t.mantissa, t.log_scale, kBig);
    }
    return t;
}

ScaledValue laguerre_wavefunction_scaled(int j, double alpha, double x) {
    if (j < 0) throw ValidationError("laguerre_wavefunction: negative degree");
    const auto t = laguerre_wavefunctions(j + 1, alpha, x);
    return {t.mantissa[j], t.log_scale};
}

double laguerre_wavefunction(int j, double alpha, double x) {
    return laguerre_wavefunction_scaled(j, alpha, x).value();
}

double laguerre_polynomial(int j, double alpha, double x) {
    if (j < 0) throw ValidationError("laguerre_polynomial: negative degree");
    double lm = 0.0, l = 1.0;
    for (int k = 0; k < j; ++k) {
        const double ln = ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * lm) / (k + 1.0);
        lm = l;
        l = ln;
    }
    return l;
}

double monic_laguerre(int j, double alpha, double nu, double x) {
    if (j < 0) throw ValidationError("monic_laguerre: negative degree");
    if (!(nu > 0.0)) throw ValidationError("monic_laguerre: nu must be positive");
    double pm = 0.0, pc = 1.0, log_scale = 0.0;
    for (int k = 0; k < j; ++k) {
        const double a = (2.0 * k + alpha + 1.0) / nu;
        const double b = k * (k + alpha) / (nu * nu);
        const double pn = (x - a) * pc - b * pm;
        pm = pc;
        pc = pn;
        const double mag = std::max(std::abs(pc), std::abs(pm));
        if (mag > kBig) {
            pc /= kBig;
            pm /= kBig;
            log_scale += std::log(kBig);
        }
    }
    return ScaledValue{pc, log_scale}.value();
}

double kernel_KN_sum(double x, double y, const ScalingParams& p) {
    const auto tx = laguerre_wavefunctions(p.N, p.alpha, p.nu * x);
    const auto ty = laguerre_wavefunctions(p.N, p.alpha, p.nu * y);
    double s = 0.0;
    for (int j = 0; j < p.N; ++j) s += tx.mantissa[j] * ty.mantissa[j];
    return p.nu * ScaledValue{s, tx.log_scale + ty.log_scale}.value();
}

double kernel_KN(double x, double y, const ScalingParams& p) {
    if (!(x > 0.0 && y > 0.0)) throw ValidationError("kernel_KN: points must be positive");
    if (std::abs(x - y) < kNearDiagonal) {
        const double m = 0.5 * (x + y);
        return kernel_KN_sum(m, m, p);
    }
    const int N = p.N;
    const auto tx = laguerre_wavefunctions(N + 1, p.alpha, p.nu * x);
    const auto ty = laguerre_wavefunctions(N + 1, p.alpha, p.nu * y);
    const double num = tx.mantissa[N - 1] * ty.mantissa[N] - tx.mantissa[N] * ty.mantissa[N - 1];
    const double a = std::sqrt(N * (N + static_cast<double>(p.alpha)));
    return a * ScaledValue{num, tx.log_scale + ty.log_scale}.value() / (x - y);
}

double kernel_KN_physical(double lambda, double mu, const ScalingParams& p) {
    return kernel_KN(lambda / p.nu, mu / p.nu, p) / p.nu;
}

double airy_kernel(double x, double y) {
    if (std::abs(x - y) < kNearDiagonal) {
        const double m = 0.5 * (x + y);
        const double a = airy_ai(m), ap = airy_ai_prime(m);
        return ap * ap - m * a * a;
    }
    const double ax = airy_ai(x), apx = airy_ai_prime(x);
    const double ay = airy_ai(y), apy = airy_ai_prime(y);
    return (ax * apy - ay * apx) / (x - y);
}

double hard_limit_kernel(double x, double y) { return airy_kernel(-x, -y); }

double hard_edge_point(double x, const ScalingParams& p) {
    const double a = p.alpha;
    return p.c * p.c / (a * a) * (1.0 + x * std::pow(2.0 / a, 2.0 / 3.0));
}

double hard_edge_jacobian(const ScalingParams& p) {
    const double a = p.alpha;
    return p.c * p.c / (a * a) * std::pow(2.0 / a, 2.0 / 3.0);
}

double soft_edge_point(double x, const ScalingParams& p) { return 1.0 + x * soft_edge_jacobian(p); }

double soft_edge_jacobian(const ScalingParams& p) { return 1.0 / std::pow(2.0 * p.M, 2.0 / 3.0); }

double hard_rescaled_kernel(double x, double y, const ScalingParams& p) {
    const double xh = hard_edge_point(x, p), yh = hard_edge_point(y, p);
    if (!(xh > 0.0 && yh > 0.0)) throw ValidationError("hard_rescaled_kernel: rescaled point not positive");
    return kernel_KN(xh, yh, p) * hard_edge_jacobian(p);
}

double soft_rescaled_kernel(double x, double y, const ScalingParams& p) {
    const double xs = soft_edge_point(x, p), ys = soft_edge_point(y, p);
    if (!(xs > 0.0 && ys > 0.0)) throw ValidationError("soft_rescaled_kernel: rescaled point not positive");
    return kernel_KN(xs, ys, p) * soft_edge_jacobian(p);
}

EdgeFactors hard_edge_factors(double x, const ScalingParams& p) {
    if (!(x > 0.0 && x < 1.0)) throw ValidationError("hard_edge_factors: need 0 < x < 1");
    const cplx phi = phi_right(x, Side::Above);
    const double arg = (-kI * p.M * phi).real();
    const auto jv = bessel_j_pair(p.alpha, arg);
    const cplx pre = std::polar(std::sqrt(p.M), (p.N + 0.5) * kPi);
    EdgeFactors f;
    f.V = {pre * (-kPi * phi * jv.jp), pre * jv.j};
    f.W = {pre * jv.j, pre * (kPi * phi * jv.jp)};
    return f;
}

double hard_factor_kernel(double x, double y, const ScalingParams& p) {
    if (std::abs(x - y) < kNearDiagonal) throw ValidationError("hard_factor_kernel: off-diagonal only");
    const auto fx = hard_edge_factors(x, p), fy = hard_edge_factors(y, p);
    const cplx vw = fx.V[0] * fy.W[0] + fx.V[1] * fy.W[1];
    return (-vw / (2.0 * kPi * kI * (x - y))).real();
}

EdgeFactors soft_edge_factors(double x, const ScalingParams& p, double delta) {
    if (!(std::abs(x - 1.0) < delta)) throw ValidationError("soft_edge_factors: need |x - 1| < delta");
    const double xi = std::pow(p.M, 2.0 / 3.0) * f_left(x).real();
    const double ai = airy_ai(xi), aip = airy_ai_prime(xi);
    const double m6 = std::pow(p.M, 1.0 / 6.0);
    EdgeFactors f;
    f.V = {2.0 * kPi * kI * (-aip / m6), 2.0 * kPi * kI * (ai * m6)};
    f.W = {ai * m6, aip / m6};
    return f;
}

EdgeFactors soft_tail_factors(double x, const ScalingParams& p, double delta) {
    if (!(x >= 1.0 + delta)) throw ValidationError("soft_tail_factors: need x >= 1 + delta");
    const cplx h = h_fn(x, p.alpha, Side::Above);
    const cplx e = static_cast<double>(p.N) * g_fn(x, Side::Above).value + 0.5 * p.ellN;
    const double half_log_w = 0.5 * (p.alpha * std::log(x) - p.nu * x);
    EdgeFactors f;
    f.W = {std::exp(h + e + half_log_w), 0.0};
    f.V = {0.0, std::exp(-h + e + half_log_w)};
    return f;
}

double KernelGrid::max_abs_error() const {
    double e = 0.0;
    for (std::size_t i = 0; i < values.size() && i < limit_values.size(); ++i)
        e = std::max(e, std::abs(values[i] - limit_values[i]));
    return e;
}

double KernelGrid::max_asymmetry() const {
    double e = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].second && points[i].second == points[j].first)
                e = std::max(e, std::abs(values[i] - values[j]));
    return e;
}

KernelGrid make_kernel_grid(EdgeKind edge, const ScalingParams& p, const std::vector<double>& xs, int threads) {
    KernelGrid g;
    g.edge = edge;
    for (double x : xs)
        for (double y : xs) g.points.emplace_back(x, y);
    const std::size_t n = g.points.size();
    g.values.assign(n, 0.0);
    if (edge != EdgeKind::None) g.limit_values.assign(n, 0.0);
    parallel_for(
        n,
        [&](std::size_t i) {
            const auto [x, y] = g.points[i];
            switch (edge) {
                case EdgeKind::None:
                    g.values[i] = kernel_KN(x, y, p);
                    break;
                case EdgeKind::Hard:
                    g.values[i] = hard_rescaled_kernel(x, y, p);
                    g.limit_values[i] = hard_limit_kernel(x, y);
                    break;
                case EdgeKind::Soft:
                    g.values[i] = soft_rescaled_kernel(x, y, p);
                    g.limit_values[i] = airy_kernel(x, y);
                    break;
            }
        },
        threads);
    return g;
}

}  // namespace critlue
