#pragma once

#include <array>
#include <utility>
#include <vector>

#include "critlue/common.hpp"
#include "critlue/rh_scalar.hpp"

namespace critlue {

/// m * e^{log_scale}. Keeps wavefunctions representable far into the tails.
struct ScaledValue {
    double mantissa = 0.0;
    double log_scale = 0.0;
    double value() const;
};

/// psi_j(x) = (j!/Gamma(j+alpha+1))^{1/2} e^{-x/2} x^{alpha/2} L_j^{(alpha)}(x),
/// orthonormal on (0, inf) with Lebesgue measure. Unit scale (weight x^a e^{-x}).
double laguerre_wavefunction(int j, double alpha, double x);
ScaledValue laguerre_wavefunction_scaled(int j, double alpha, double x);

/// psi_0 .. psi_{count-1} at x, sharing a single log scale.
struct WavefunctionTable {
    std::vector<double> mantissa;
    double log_scale = 0.0;
};
WavefunctionTable laguerre_wavefunctions(int count, double alpha, double x);

/// Unweighted L_j^{(alpha)}(x) from the classical three-term recurrence.
double laguerre_polynomial(int j, double alpha, double x);

/// Monic pi_j for the weight x^alpha e^{-nu x}.
double monic_laguerre(int j, double alpha, double nu, double x);

/// K_N in nu-rescaled coordinates: nu * K_unit(nu x, nu y), K_unit the sum of
/// psi_j psi_j over j < N. Christoffel-Darboux off the diagonal; within 1e-6
/// of it the sum at the midpoint (the first-order Taylor value).
double kernel_KN(double x, double y, const ScalingParams& p);
/// Same, in eigenvalue units lambda = nu x.
double kernel_KN_physical(double lambda, double mu, const ScalingParams& p);
/// Brute-force sum, used as the reference for the CD form.
double kernel_KN_sum(double x, double y, const ScalingParams& p);

double airy_kernel(double x, double y);

/// Affine edge maps and their Jacobians.
double hard_edge_point(double x, const ScalingParams& p);
double hard_edge_jacobian(const ScalingParams& p);
double soft_edge_point(double x, const ScalingParams& p);
double soft_edge_jacobian(const ScalingParams& p);

double hard_rescaled_kernel(double x, double y, const ScalingParams& p);
double soft_rescaled_kernel(double x, double y, const ScalingParams& p);
/// Hard-edge limit (Ai(-y)Ai'(-x) - Ai'(-y)Ai(-x))/(x-y) = airy_kernel(-x, -y).
double hard_limit_kernel(double x, double y);

struct EdgeFactors {
    std::array<cplx, 2> V;  // row
    std::array<cplx, 2> W;  // column
};

/// V and W on 0 < x < 1 (unscaled coordinates): Bessel argument -i M phi_+(x) > 0.
EdgeFactors hard_edge_factors(double x, const ScalingParams& p);
/// Leading kernel -V(x)W(y) / (2 pi i (x - y)), analytic prefactors dropped.
double hard_factor_kernel(double x, double y, const ScalingParams& p);
/// Vbar and Wbar on |x - 1| < delta from Ai(M^{2/3} f_left(x)).
EdgeFactors soft_edge_factors(double x, const ScalingParams& p, double delta = kDelta);
/// Vtilde and Wtilde for x >= 1 + delta.
EdgeFactors soft_tail_factors(double x, const ScalingParams& p, double delta = kDelta);

enum class EdgeKind { None, Hard, Soft };

struct KernelGrid {
    EdgeKind edge = EdgeKind::None;
    std::vector<std::pair<double, double>> points;
    std::vector<double> values;
    std::vector<double> limit_values;  // empty for EdgeKind::None

    double max_abs_error() const;
    double max_asymmetry() const;  // needs the grid to contain both (x,y) and (y,x)
};

/// Tensor grid xs x xs. Parallel over points.
KernelGrid make_kernel_grid(EdgeKind edge, const ScalingParams& p, const std::vector<double>& xs, int threads = 0);

}  // namespace critlue
