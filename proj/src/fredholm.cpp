#include "critlue/fredholm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "critlue/kernel.hpp"
#include "critlue/parallel.hpp"
#include "critlue/specfun.hpp"

namespace critlue {

QuadratureRule gauss_legendre(int m, double a, double b) {
    if (m < 1) throw ValidationError("gauss_legendre: need m >= 1");
    if (!(b > a)) throw ValidationError("gauss_legendre: need b > a");
    QuadratureRule r;
    r.a = a;
    r.b = b;
    r.nodes.resize(m);
    r.weights.resize(m);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (m == 1) p0 = 1.0;
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[m - 1 - i] = mid + half * x;
        r.nodes[i] = mid - half * x;
        r.weights[i] = r.weights[m - 1 - i] = half * w;
    }
    return r;
}

double fredholm_det_rule(const KernelMatrixFn& k, const QuadratureRule& rule) {
    const std::size_t m = rule.nodes.size();
    std::vector<double> km(m * m);
    k(rule.nodes, km);
    Eigen::MatrixXd A(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const double si = std::sqrt(rule.weights[i]);
        for (std::size_t j = 0; j < m; ++j)
            A(i, j) = (i == j ? 1.0 : 0.0) - si * km[i * m + j] * std::sqrt(rule.weights[j]);
    }
    return A.partialPivLu().determinant();
}

DeterminantResult fredholm_det(const KernelMatrixFn& k, double a, double b, const FredholmOptions& opt) {
    if (!(std::isfinite(a) && std::isfinite(b))) throw ValidationError("fredholm_det: truncate infinite endpoints first");
    if (opt.nodes < 2 || opt.max_nodes < opt.nodes) throw ValidationError("fredholm_det: bad node counts");
    if (b <= a) return {1.0, 0, 0.0};
    double prev = fredholm_det_rule(k, gauss_legendre(opt.nodes / 2, a, b));
    DeterminantResult r;
    for (int m = opt.nodes;; m *= 2) {
        const double cur = fredholm_det_rule(k, gauss_legendre(m, a, b));
        r = {cur, m, std::abs(cur - prev)};
        if (r.convergence_estimate <= opt.tol || 2 * m > opt.max_nodes) break;
        prev = cur;
    }
    if (r.convergence_estimate > opt.fail_tol)
        throw ConvergenceError("fredholm_det: node doubling did not settle (estimate " +
                               std::to_string(r.convergence_estimate) + ")");
    return r;
}

DeterminantResult fredholm_det(const KernelFn& k, double a, double b, const FredholmOptions& opt) {
    KernelMatrixFn fill = [&k](const std::vector<double>& x, std::vector<double>& out) {
        const std::size_t m = x.size();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) out[i * m + j] = k(x[i], x[j]);
    };
    return fredholm_det(fill, a, b, opt);
}

namespace {

void airy_kernel_matrix(const std::vector<double>& x, std::vector<double>& out) {
    const std::size_t m = x.size();
    std::vector<double> ai(m), aip(m);
    for (std::size_t i = 0; i < m; ++i) {
        ai[i] = airy_ai(x[i]);
        aip[i] = airy_ai_prime(x[i]);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out[i * m + j] = i == j ? aip[i] * aip[i] - x[i] * ai[i] * ai[i]
                                    : (ai[i] * aip[j] - ai[j] * aip[i]) / (x[i] - x[j]);
}

KernelMatrixFn finite_kernel_matrix(const ScalingParams& p) {
    return [p](const std::vector<double>& x, std::vector<double>& out) {
        const std::size_t m = x.size();
        const std::size_t n = static_cast<std::size_t>(p.N);
        std::vector<double> psi(m * n);
        for (std::size_t i = 0; i < m; ++i) {
            const auto t = laguerre_wavefunctions(p.N, p.alpha, p.nu * x[i]);
            const double s = std::exp(t.log_scale) * std::sqrt(p.nu);
            for (std::size_t k = 0; k < n; ++k) psi[i * n + k] = t.mantissa[k] * s;
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += psi[i * n + k] * psi[j * n + k];
                out[i * m + j] = out[j * m + i] = s;
            }
    };
}

}  // namespace

DeterminantResult tw2_cdf_result(double s, const FredholmOptions& opt) {
    if (!(s >= -10.0)) throw ValidationError("tw2_cdf: s must be >= -10");
    return fredholm_det(KernelMatrixFn(airy_kernel_matrix), s, s + 12.0, opt);
}

double tw2_cdf(double s, int nodes) {
    FredholmOptions opt;
    opt.nodes = nodes;
    return tw2_cdf_result(s, opt).value;
}

Tw2Table::Tw2Table(double lo, double hi, double step, int threads) : lo_(lo), hi_(hi), step_(step) {
    if (!(hi > lo && step > 0.0)) throw ValidationError("Tw2Table: bad grid");
    const std::size_t n = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
    f_.assign(n, 0.0);
    parallel_for(
        n, [&](std::size_t i) { f_[i] = std::clamp(tw2_cdf(lo + i * step), 0.0, 1.0); }, threads);
}

double Tw2Table::operator()(double s) const {
    if (s <= lo_) return 0.0;
    const double u = (s - lo_) / step_;
    const std::size_t i = static_cast<std::size_t>(u);
    if (i + 1 >= f_.size()) return 1.0;
    const double t = u - i;
    return (1.0 - t) * f_[i] + t * f_[i + 1];
}

double Tw2Table::quantile(double p) const {
    double a = lo_, b = hi_;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        ((*this)(m) < p ? a : b) = m;
    }
    return 0.5 * (a + b);
}

double Tw2Table::mean() const {
    // E[s] = hi - int_lo^hi F ds - lo * F(lo) with F(lo) ~ 0
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < f_.size(); ++i) integral += 0.5 * (f_[i] + f_[i + 1]) * step_;
    return lo_ + (hi_ - lo_) - integral;
}

double kernel_support_cut(const ScalingParams& p) {
    double x = 1.0;
    for (int it = 0; it < 10000; ++it, x += 0.01)
        if (kernel_KN(x, x, p) < 1e-16) return x;
    throw ConvergenceError("kernel_support_cut: diagonal never fell below 1e-16");
}

DeterminantResult gap_probability_finite(const ScalingParams& p, double a, double b, const FredholmOptions& opt) {
    if (p.N > 50) throw ValidationError("gap_probability_finite: N must be <= 50");
    if (a < 0.0) a = 0.0;
    if (std::isinf(b)) b = std::max(a, kernel_support_cut(p));
    if (b <= a) return {1.0, 0, 0.0};
    return fredholm_det(finite_kernel_matrix(p), a, b, opt);
}

double cdf_lambda_min(const ScalingParams& p, double t) {
    if (t <= 0.0) return 1.0;
    return std::clamp(gap_probability_finite(p, 0.0, t).value, 0.0, 1.0);
}

double cdf_lambda_max(const ScalingParams& p, double t) {
    return std::clamp(gap_probability_finite(p, t, std::numeric_limits<double>::infinity()).value, 0.0, 1.0);
}

double limit_center(LimitLaw which, const ScalingParams& p) {
    switch (which) {
        case LimitLaw::Small: return p.c;
        case LimitLaw::Large: return p.nu;
        case LimitLaw::Cond: return p.nu / p.c;
    }
    return 0.0;
}

double limit_scale(LimitLaw which, const ScalingParams& p) {
    const double a = p.alpha;
    switch (which) {
        case LimitLaw::Small: return p.c * std::pow(a, -2.0 / 3.0) * std::pow(2.0, 2.0 / 3.0);
        case LimitLaw::Large: return std::cbrt(p.nu) * std::pow(2.0, 2.0 / 3.0);
        case LimitLaw::Cond: return p.nu / p.c * std::pow(2.0 / a, 2.0 / 3.0);
    }
    return 1.0;
}

double standardize(LimitLaw which, double value, const ScalingParams& p) {
    const double c0 = limit_center(which, p), s = limit_scale(which, p);
    return which == LimitLaw::Small ? (c0 - value) / s : (value - c0) / s;
}

double limiting_cdf(LimitLaw which, double value, const ScalingParams& p) {
    const double s = standardize(which, value, p);
    if (s > 20.0) return 1.0;
    if (s < -10.0) return 0.0;
    return std::clamp(tw2_cdf(s), 0.0, 1.0);
}

double edelman_cdf(double t) {
    if (!(t > 0.0)) throw ValidationError("edelman_cdf: t must be positive");
    return std::exp(-4.0 / t);
}

}  // namespace critlue
