#pragma once

#include <vector>

#include "critlue/common.hpp"
#include "critlue/rh_scalar.hpp"

namespace critlue {

struct Mat2C {
    cplx a11{1.0}, a12{0.0}, a21{0.0}, a22{1.0};

    static Mat2C identity() { return {}; }
    static Mat2C diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }
    /// diag(e^{t}, e^{-t})
    static Mat2C exp_sigma3(cplx t) { return diag(std::exp(t), std::exp(-t)); }

    cplx det() const { return a11 * a22 - a12 * a21; }
    Mat2C inverse() const;
    /// Spectral norm.
    double norm() const;
};

Mat2C operator*(const Mat2C& a, const Mat2C& b);
Mat2C operator+(const Mat2C& a, const Mat2C& b);
Mat2C operator-(const Mat2C& a, const Mat2C& b);
Mat2C operator*(cplx s, const Mat2C& a);

inline const cplx kOmega = std::polar(1.0, 2.0 * kPi / 3.0);

enum class ContourTag { GammaUp, GammaDown, Cut01, Cut1Inf, Circle0, Circle1, SigmaAi, SigmaBes };

const char* contour_name(ContourTag t);

struct JumpResidual {
    cplx location;
    ContourTag contour_tag;
    double residual;
};

/// ||plus - minus * J|| / max(1, ||plus||).
double jump_residual(const Mat2C& plus, const Mat2C& minus, const Mat2C& jump);

// global parametrix -------------------------------------------------------

Mat2C script_N(cplx z, Side side = Side::Off);
Mat2C d_matrix(cplx z, double alpha, Side side = Side::Off);
Mat2C d_infinity(double alpha);
Mat2C s_infinity(cplx z, const ScalingParams& p, Side side = Side::Off);

// the auxiliary problem near 0 --------------------------------------------

struct ContourOptions {
    double delta = kDelta;
    int nodes = 256;       // starting trapezoid size, doubled until converged
    int max_nodes = 16384;
    double rel_tol = 1e-10;
};

/// l(c) = i exp(-c (1/(pi i)) oint 2/(phi sq) ds - 2 log 2), purely imaginary.
cplx ell_of_c(double c, const ContourOptions& opt = {});

enum class CircleSide { Unspecified, Inside, Outside };

/// (z(z-1))^{1/2} r(z; l(c), c) by contour quadrature.
cplx sq_times_r(cplx z, double c, CircleSide where, Side side, const ContourOptions& opt = {});

/// A_inf(z). Points within 1e-6 of |z| = delta need `where`; points on (0,1)
/// take any side (the jump there is trivial).
Mat2C a_infinity(cplx z, double c, CircleSide where = CircleSide::Unspecified, Side side = Side::Off,
                 const ContourOptions& opt = {});

// model problems ------------------------------------------------------------

enum class AirySector { Auto, I, II, III, IV };
enum class BesselSector { Auto, I, II, III };  // I stands for I u IV

AirySector airy_sector(cplx xi, Side side = Side::Off);
BesselSector bessel_sector(cplx xi, Side side = Side::Off);

/// Unscaled P_Ai. Sector Auto picks it from arg xi (side flag on the real axis).
Mat2C p_airy(cplx xi, AirySector sector = AirySector::Auto, Side side = Side::Off);
/// P_Ai e^{zeta sigma3}, zeta = (2/3) xi^{3/2} on the sector's branch.
Mat2C p_airy_scaled(cplx xi, AirySector sector, Side side, cplx* zeta);

/// Unscaled P_Bes, alpha <= 10 and |xi| <= 625 (Bessel argument |2 xi^{1/2}| <= 50).
Mat2C p_bessel(cplx xi, double alpha, BesselSector sector = BesselSector::Auto, Side side = Side::Off);
/// P_Bes e^{-2 s sigma3}, s = xi^{1/2} on the sector's branch. Any order.
Mat2C p_bessel_scaled(cplx xi, double alpha, BesselSector sector, Side side, cplx* s);

// local parametrices --------------------------------------------------------

/// Which sector of the model plane a point of B(1, delta) resp. B(0, delta)
/// belongs to; the contours are the preimages of the model rays.
AirySector local_airy_sector(cplx z, const ScalingParams& p, Side side = Side::Off);
BesselSector local_bessel_sector(cplx z, const ScalingParams& p, Side side = Side::Off);

Mat2C m_airy(cplx z, const ScalingParams& p, Side side = Side::Off);
/// Closed form of m_airy in terms of f_left/(z(z-1)); used to cross-check the product.
Mat2C m_airy_closed(cplx z, const ScalingParams& p);
Mat2C m_bessel(cplx z, const ScalingParams& p, Side side = Side::Off);

Mat2C s_local_left(cplx z, const ScalingParams& p, AirySector sector = AirySector::Auto, Side side = Side::Off);
Mat2C s_local_right(cplx z, const ScalingParams& p, BesselSector sector = BesselSector::Auto,
                    Side side = Side::Off);

/// D_inf S_left S_inf^{-1} D_inf^{-1}, assembled without forming D_inf.
Mat2C matching_airy(cplx z, const ScalingParams& p);
/// D_inf S_right e^{-2c/phi sigma3} S_inf^{-1} D_inf^{-1}, same care.
Mat2C matching_bessel(cplx z, const ScalingParams& p);

/// max ||E - I|| over `points` points on the circle of radius delta.
double matching_sweep_airy(const ScalingParams& p, double delta = kDelta, int points = 16);
double matching_sweep_bessel(const ScalingParams& p, double delta = kDelta, int points = 16);

// leading order of Y_+ ------------------------------------------------------

enum class AsympRegion { A, B, Bulk, C, D };

AsympRegion asymp_region_for(double x, double delta = kDelta);
const char* region_name(AsympRegion r);

/// Y_+(x) with E = I. The bulk (delta, 1 - delta) uses S_inf^+ with the lens factor.
Mat2C y_plus_asymptotic(double x, AsympRegion region, const ScalingParams& p, const ContourOptions& opt = {});

// residual suites -----------------------------------------------------------

struct JumpSuiteOptions {
    int points = 16;
    double delta = kDelta;
    int N = 8;
    double c = 1.0;
    int alpha = 3;
};

std::vector<JumpResidual> jumps_script_N(const JumpSuiteOptions& o = {});
std::vector<JumpResidual> jumps_s_infinity(const JumpSuiteOptions& o = {});
std::vector<JumpResidual> jumps_a_infinity(const JumpSuiteOptions& o = {});
std::vector<JumpResidual> jumps_p_airy(const JumpSuiteOptions& o = {});
std::vector<JumpResidual> jumps_p_bessel(const JumpSuiteOptions& o = {});
std::vector<JumpResidual> jumps_s_local_left(const JumpSuiteOptions& o = {});
std::vector<JumpResidual> jumps_s_local_right(const JumpSuiteOptions& o = {});

double max_residual(const std::vector<JumpResidual>& r);

}  // namespace critlue
