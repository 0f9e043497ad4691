#pragma once

#include "critlue/common.hpp"

namespace critlue {

/// Airy evaluation knobs. Inside |xi| <= series_radius the Maclaurin series is
/// summed in quad precision; outside, the asymptotic series with at most
/// asym_terms terms (0 = stop at the smallest term, capped at 30).
struct AiryConfig {
    double series_radius = 10.0;
    int asym_terms = 0;
};

struct AiryValue {
    cplx ai;
    cplx aip;
};

AiryValue airy(cplx xi, const AiryConfig& cfg = {});

/// Ai and Ai' multiplied by exp(zeta), zeta = (2/3) xi^{3/2} principal.
/// Never overflows; used wherever the exponential is recombined by hand.
AiryValue airy_scaled(cplx xi, const AiryConfig& cfg = {});

/// (2/3) xi^{3/2}, principal branch.
cplx airy_zeta(cplx xi);

cplx airy_ai(cplx xi);
cplx airy_ai_prime(cplx xi);
/// Real argument: Boost.Math.
double airy_ai(double x);
double airy_ai_prime(double x);

// ---------------------------------------------------------------------------
// Bessel J of real order and positive argument

struct UniformBesselFrame {
    double t;
    double zeta;
    double prefactor;  // (4 zeta / (1 - t^2))^{1/4}
};

UniformBesselFrame uniform_bessel_frame(double t);

struct BesselJConfig {
    double uniform_threshold = 30.0;  // orders above use the uniform expansion
    int uniform_corrections = 1;      // 0: leading term, 1: + B0, A1 (C0, D1)
};

struct BesselJValue {
    double j;
    double jp;
};

BesselJValue bessel_j_pair(double alpha, double x, const BesselJConfig& cfg = {});
double bessel_j(double alpha, double x, const BesselJConfig& cfg = {});
double bessel_j_prime(double alpha, double x, const BesselJConfig& cfg = {});

/// Continued fraction / Temme series path, valid for every order.
BesselJValue bessel_j_direct(double alpha, double x);

/// Uniform Airy-type expansion of J_alpha(alpha t).
BesselJValue bessel_j_uniform(double alpha, double x, int corrections);

// ---------------------------------------------------------------------------
// Modified Bessel and Hankel functions of complex argument

/// I and K with exponential scaling: i = I e^{-z}, k = K e^{z}.
struct BesselIKScaled {
    cplx i, ip, k, kp;
};

BesselIKScaled bessel_ik_scaled(double alpha, cplx z);

/// K e^{z} and K' e^{z} only (cheaper, no CF1 for I).
struct BesselKScaled {
    cplx k, kp;
};

BesselKScaled bessel_k_scaled(double alpha, cplx z);

struct ModifiedBessel {
    cplx i, ip, k, kp;
    cplx h1, h1p, h2, h2p;
};

/// Unscaled values at xi. Envelope: alpha <= 10, 0 < |xi| <= 50.
ModifiedBessel bessel_modified(double alpha, cplx xi);

cplx hankel1(double alpha, cplx z);
cplx hankel2(double alpha, cplx z);

/// eta(z) = (1+z^2)^{1/2} + log(z / (1 + (1+z^2)^{1/2})).
cplx bessel_eta(cplx z);

}  // namespace critlue
