#pragma once

#include "critlue/common.hpp"

namespace critlue {

/// Which boundary value to take when z sits on a cut. Off means z is
/// assumed to be off every cut; passing Off for a point on a cut throws.
enum class Side { Above, Below, Off };

struct BranchedValue {
    cplx value;
    Side side;
};

inline constexpr double kDelta = 0.25;

/// (N, c, alpha, nu, M, ell_N). alpha defaults to floor(sqrt(4cN)).
struct ScalingParams {
    int N = 1;
    double c = 1.0;
    int alpha = 2;
    double nu = 0.0;
    double M = 0.0;
    double ellN = 0.0;

    static ScalingParams critical(int N, double c);
    static ScalingParams with_alpha(int N, double c, int alpha);
};

int critical_alpha(int N, double c);

// branch-aware elementary functions -------------------------------------

/// log with cut on (-inf, 0] (principal).
BranchedValue log_left(cplx z, Side side = Side::Off);
/// log with cut on [0, inf), arg in (0, 2 pi).
BranchedValue log_right(cplx z, Side side = Side::Off);
BranchedValue root_left(double gamma, cplx z, Side side = Side::Off);
BranchedValue root_right(double gamma, cplx z, Side side = Side::Off);

/// (z(z-1))^{1/2}: cut [0,1], positive for z > 1, negative for z < 0.
cplx sqrt_zz1(cplx z, Side side = Side::Off);

cplx psi_right(cplx z, Side side = Side::Off);
cplx psi_left(cplx z, Side side = Side::Off);

/// phi_right = 2 int_0^z ((s-1)/s)^{1/2} ds, cut [0, inf).
cplx phi_right(cplx z, Side side = Side::Off);
/// phi_left = 2 int_1^z ((s-1)/s)^{1/2} ds, cut (-inf, 1].
cplx phi_left(cplx z, Side side = Side::Off);
/// d phi / dz, common to both branches: 2 (z(z-1))^{1/2} / z.
cplx phi_prime(cplx z, Side side = Side::Off);

BranchedValue g_fn(cplx z, Side side = Side::Off);

double equilibrium_density(double s);

// h, D and weights --------------------------------------------------------

cplx h_fn(cplx z, double alpha, Side side = Side::Off);
cplx hhat_fn(cplx z, double alpha, Side side = Side::Off);
/// log of the (1,1) entry of D_inf: alpha log 2 + (alpha+1)/2.
double log_d_infinity(double alpha);
cplx w_hat(cplx z, double alpha);
cplx w_check(cplx z, double alpha, Side side = Side::Off);
double w_nu(double x, double alpha, double nu);

// conformal maps ----------------------------------------------------------

/// f_left = ((3/2) phi_left)^{2/3}, conformal near 1, f'(1) = 2^{2/3}.
cplx f_left(cplx z, Side side = Side::Off);
/// f_right = phi_right^2 / 4, conformal near 0, f'(0) = -4.
cplx f_right(cplx z, Side side = Side::Off);
/// Newton inverses, for placing points on the preimages of parametrix rays.
cplx f_left_inverse(cplx xi);
cplx f_right_inverse(cplx xi);

/// Smallest difference quotient |f(z1) - f(z2)| / |z1 - z2| over a polar grid
/// of the disk of radius delta around the map's base point. A positive value
/// means no two grid points collide.
double injectivity_margin_left(double delta, int radial = 12, int angular = 48);
double injectivity_margin_right(double delta, int radial = 12, int angular = 48);

}  // namespace critlue
