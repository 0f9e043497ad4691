#pragma once

#include <functional>
#include <vector>

#include "critlue/rh_scalar.hpp"

namespace critlue {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double b = 0.0;
};

/// m-point Gauss-Legendre on [a, b]; nodes by Newton on P_m.
QuadratureRule gauss_legendre(int m, double a, double b);

struct DeterminantResult {
    double value = 1.0;
    int node_count = 0;
    double convergence_estimate = 0.0;  // |det(m) - det(m/2)|
};

using KernelFn = std::function<double(double, double)>;
/// Fills the m x m kernel matrix (row-major) for the given nodes. Lets a
/// kernel share work across entries (Airy values, wavefunction tables).
using KernelMatrixFn = std::function<void(const std::vector<double>& nodes, std::vector<double>& out)>;

struct FredholmOptions {
    int nodes = 60;
    int max_nodes = 960;
    double tol = 1e-10;      // stop doubling once the estimate falls below
    double fail_tol = 1e-6;  // estimate above this at max_nodes throws
};

/// det(I - K) on L^2(a, b) by Nystrom with symmetric sqrt-weights and
/// pivoted LU. Doubles the node count from opt.nodes until converged.
DeterminantResult fredholm_det(const KernelFn& k, double a, double b, const FredholmOptions& opt = {});
DeterminantResult fredholm_det(const KernelMatrixFn& k, double a, double b, const FredholmOptions& opt = {});
/// One rule, no doubling (estimate left at 0).
double fredholm_det_rule(const KernelMatrixFn& k, const QuadratureRule& rule);

/// F_2(s) = det(I - K_Ai) on (s, s + 12).
DeterminantResult tw2_cdf_result(double s, const FredholmOptions& opt = {});
double tw2_cdf(double s, int nodes = 60);

/// F_2 tabulated on [lo, hi] and linearly interpolated; 0 / 1 outside.
class Tw2Table {
public:
    Tw2Table(double lo = -9.0, double hi = 7.0, double step = 0.01, int threads = 0);
    double operator()(double s) const;
    /// F_2^{-1}(p) by bisection on the table.
    double quantile(double p) const;
    double mean() const;

private:
    double lo_, hi_, step_;
    std::vector<double> f_;
};

/// det(I - K_N) on (a, b) in nu-rescaled coordinates; b may be +inf and is
/// then cut where K_N(x, x) < 1e-16. N <= 50.
DeterminantResult gap_probability_finite(const ScalingParams& p, double a, double b, const FredholmOptions& opt = {});
/// P(lambda_min / nu >= t).
double cdf_lambda_min(const ScalingParams& p, double t);
/// P(lambda_max / nu <= t).
double cdf_lambda_max(const ScalingParams& p, double t);
/// Point beyond which K_N(x, x) < 1e-16 (searched upward from 1).
double kernel_support_cut(const ScalingParams& p);

enum class LimitLaw { Small, Large, Cond };

/// The standardized variable of each limit theorem, from the raw lambda_min,
/// lambda_max (unscaled eigenvalues) or kappa.
double standardize(LimitLaw which, double value, const ScalingParams& p);
double limit_center(LimitLaw which, const ScalingParams& p);
double limit_scale(LimitLaw which, const ScalingParams& p);
/// F_2(standardize(which, value)). For Small this approximates P(lambda_min >= value).
double limiting_cdf(LimitLaw which, double value, const ScalingParams& p);

/// e^{-4/t}, the n = N limit law of kappa / N^2.
double edelman_cdf(double t);

}  // namespace critlue
