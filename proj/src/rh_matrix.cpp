#include "critlue/rh_matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "critlue/specfun.hpp"

namespace critlue {

// ---------------------------------------------------------------------------
// Mat2C

Mat2C operator*(const Mat2C& a, const Mat2C& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22, a.a21 * b.a11 + a.a22 * b.a21,
            a.a21 * b.a12 + a.a22 * b.a22};
}
Mat2C operator+(const Mat2C& a, const Mat2C& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}
Mat2C operator-(const Mat2C& a, const Mat2C& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}
Mat2C operator*(cplx s, const Mat2C& a) { return {s * a.a11, s * a.a12, s * a.a21, s * a.a22}; }

Mat2C Mat2C::inverse() const {
    const cplx d = det();
    if (d == cplx(0.0)) throw RangeError("Mat2C: singular matrix");
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

double Mat2C::norm() const {
    // largest singular value from the 2x2 Gram matrix
    const double n2 = std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22);
    const double d = std::abs(det());
    const double disc = std::max(0.0, n2 * n2 - 4.0 * d * d);
    return std::sqrt(0.5 * (n2 + std::sqrt(disc)));
}

const char* contour_name(ContourTag t) {
    switch (t) {
        case ContourTag::GammaUp: return "gamma-up";
        case ContourTag::GammaDown: return "gamma-down";
        case ContourTag::Cut01: return "cut-01";
        case ContourTag::Cut1Inf: return "cut-1inf";
        case ContourTag::Circle0: return "circle-0";
        case ContourTag::Circle1: return "circle-1";
        case ContourTag::SigmaAi: return "sigma-ai";
        case ContourTag::SigmaBes: return "sigma-bes";
    }
    return "?";
}

double jump_residual(const Mat2C& plus, const Mat2C& minus, const Mat2C& jump) {
    return (plus - minus * jump).norm() / std::max(1.0, plus.norm());
}

double max_residual(const std::vector<JumpResidual>& r) {
    double m = 0.0;
    for (const auto& j : r) m = std::max(m, j.residual);
    return m;
}

namespace {

inline bool on_axis(cplx z) { return z.imag() == 0.0; }

// Y = e^{L s3} K e^{R s3}, entries recombined in log space.
Mat2C conj_exp(cplx L, const Mat2C& K, cplx R) {
    return {K.a11 * std::exp(L + R), K.a12 * std::exp(L - R), K.a21 * std::exp(-L + R), K.a22 * std::exp(-L - R)};
}

// argument of xi with the side convention on the negative axis
double xi_arg(cplx xi, Side side, const char* what) {
    if (on_axis(xi) && xi.real() < 0.0) {
        if (side == Side::Off) throw ValidationError(std::string(what) + ": point on the negative axis needs a side");
        return side == Side::Above ? kPi : -kPi;
    }
    return std::arg(xi);
}

inline cplx power_arg(cplx xi, double theta, double gamma) {
    return std::pow(std::abs(xi), gamma) * std::polar(1.0, gamma * theta);
}

inline Side flip(Side s) {
    if (s == Side::Above) return Side::Below;
    if (s == Side::Below) return Side::Above;
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// N, D, S_inf

Mat2C script_N(cplx z, Side side) {
    if (z == cplx(0.0) || z == cplx(1.0)) throw ValidationError("script_N: branch point");
    cplx v;
    if (on_axis(z) && z.real() > 0.0 && z.real() < 1.0) {
        if (side == Side::Off) throw ValidationError("script_N: point on (0,1) needs a side");
        const double r = std::pow((1.0 - z.real()) / z.real(), 0.25);
        v = std::polar(r, side == Side::Above ? kPi / 4.0 : -kPi / 4.0);
    } else {
        v = std::exp(0.25 * (std::log(z - 1.0) - std::log(z)));
        if (on_axis(z) && z.real() < 0.0) v = std::pow((1.0 - z.real()) / -z.real(), 0.25);
    }
    const cplx iv = 1.0 / v;
    return {0.5 * (v + iv), 0.5 * (-kI * v + kI * iv), 0.5 * (kI * v - kI * iv), 0.5 * (v + iv)};
}

Mat2C d_matrix(cplx z, double alpha, Side side) { return Mat2C::exp_sigma3(h_fn(z, alpha, side)); }

Mat2C d_infinity(double alpha) { return Mat2C::exp_sigma3(log_d_infinity(alpha)); }

Mat2C s_infinity(cplx z, const ScalingParams& p, Side side) {
    return conj_exp(-log_d_infinity(p.alpha), script_N(z, side), h_fn(z, p.alpha, side));
}

// ---------------------------------------------------------------------------
// l(c) and A_inf

namespace {

// 1 / (phi_right(s) (s(s-1))^{1/2}); meromorphic in |s| < 1 with a simple pole at 0
inline cplx g_integrand(cplx s) { return 1.0 / (phi_right(s) * sqrt_zz1(s)); }

void check_contour(const ContourOptions& o) {
    if (!(o.delta > 0.0 && o.delta < 1.0)) throw ValidationError("contour: delta must lie in (0, 1)");
    if (o.nodes < 64) throw ValidationError("contour: need at least 64 nodes");
}

// trapezoid on |s - center| = rho of f(s) ds, doubling until converged
cplx circle_integral(const std::function<cplx(cplx)>& f, cplx center, double rho, const ContourOptions& o,
                     const char* what) {
    auto rule = [&](int n) {
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const cplx e = std::polar(1.0, 2.0 * kPi * (j + 0.5) / n);
            acc += f(center + rho * e) * e;
        }
        return acc * (kI * rho * 2.0 * kPi / static_cast<double>(n));
    };
    int n = o.nodes;
    cplx prev = rule(n);
    while (n < o.max_nodes) {
        n *= 2;
        const cplx cur = rule(n);
        const double scale = std::max(std::abs(cur), 1e-300);
        if (std::abs(cur - prev) <= o.rel_tol * scale || std::abs(cur - prev) < 1e-300) return cur;
        prev = cur;
    }
    throw ConvergenceError(std::string(what) + ": trapezoid rule did not converge");
}

}  // namespace

cplx ell_of_c(double c, const ContourOptions& opt) {
    check_contour(opt);
    const cplx I1 = circle_integral([](cplx s) { return 2.0 * g_integrand(s); }, 0.0, opt.delta, opt, "ell_of_c") /
                    (kPi * kI);
    const cplx e = -c * I1 - 2.0 * std::log(2.0);
    // the exponent is real up to quadrature error
    return kI * std::exp(e.real());
}

cplx sq_times_r(cplx z, double c, CircleSide where, Side side, const ContourOptions& opt) {
    check_contour(opt);
    if (z == cplx(0.0) || z == cplx(1.0)) throw ValidationError("sq_times_r: branch point");
    const double az = std::abs(z);
    bool inside;
    if (where == CircleSide::Unspecified) {
        if (std::abs(az - opt.delta) < 1e-6) throw ValidationError("A_inf: point within 1e-6 of the circle needs a side");
        inside = az < opt.delta;
    } else {
        inside = where == CircleSide::Inside;
    }
    // the integrand is analytic in 0 < |s| < 1, so the circle can move as long
    // as it keeps z on the same side
    if (inside && az >= 1.0) throw ValidationError("A_inf: inside point must satisfy |z| < 1");
    const double rho = inside ? std::sqrt(az) : 0.25 * std::min(az, 1.0);
    const cplx sq = sqrt_zz1(z, side);
    const cplx J = circle_integral([z](cplx s) { return g_integrand(s) / (s - z); }, 0.0, rho, opt, "r(z)");
    const cplx ell = ell_of_c(c, opt);
    return -c / (kPi * kI) * sq * J + 0.5 * std::log(-kI * ell) + 0.5 * std::log(2.0 + (2.0 * z - 1.0) / sq);
}

namespace {

Mat2C a_infinity_direct(cplx z, double c, CircleSide where, Side side, const ContourOptions& opt) {
    if (on_axis(z) && z.real() > 0.0 && z.real() < 1.0 && side == Side::Off) side = Side::Above;
    const cplx sq = sqrt_zz1(z, side);
    const cplx a = sq_times_r(z, c, where, side, opt);
    const cplx b = sq_times_r(z, -c, where, side, opt);
    const cplx lp = ell_of_c(c, opt), lm = ell_of_c(-c, opt);
    const Mat2C B{std::exp(a), lp * std::exp(-a) / sq, -lm * std::exp(-b) / sq, std::exp(b)};
    return B * script_N(z, side).inverse();
}

// A_inf is analytic near 0 and 1 but the formula has removable singularities there
Mat2C a_infinity_cauchy(cplx z, cplx center, double rho, double c, CircleSide where, const ContourOptions& opt) {
    constexpr int n = 64;
    Mat2C acc{0.0, 0.0, 0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        const cplx e = std::polar(1.0, 2.0 * kPi * (j + 0.5) / n);
        const cplx s = center + rho * e;
        const Mat2C v = a_infinity_direct(s, c, where, Side::Off, opt);
        acc = acc + (rho * e / (s - z)) * v;
    }
    return (1.0 / n) * acc;
}

}  // namespace

Mat2C a_infinity(cplx z, double c, CircleSide where, Side side, const ContourOptions& opt) {
    check_contour(opt);
    const double r0 = std::min(0.05, opt.delta / 5.0);
    if (std::abs(z) < r0 / 5.0) return a_infinity_cauchy(z, 0.0, r0, c, CircleSide::Inside, opt);
    if (std::abs(z - 1.0) < 0.01) {
        const CircleSide w = opt.delta > 0.95 ? CircleSide::Inside : CircleSide::Outside;
        return a_infinity_cauchy(z, 1.0, 0.05, c, w, opt);
    }
    return a_infinity_direct(z, c, where, side, opt);
}

// ---------------------------------------------------------------------------
// model problems

AirySector airy_sector(cplx xi, Side side) {
    if (xi == cplx(0.0)) return side == Side::Below ? AirySector::IV : AirySector::I;
    if (on_axis(xi) && xi.real() > 0.0) {
        if (side == Side::Off) throw ValidationError("p_airy: point on the positive axis needs a side");
        return side == Side::Above ? AirySector::I : AirySector::IV;
    }
    const double th = xi_arg(xi, side, "p_airy");
    if (th > 2.0 * kPi / 3.0) return AirySector::II;
    if (th > 0.0) return AirySector::I;
    if (th >= -2.0 * kPi / 3.0) return AirySector::IV;
    return AirySector::III;
}

BesselSector bessel_sector(cplx xi, Side side) {
    if (xi == cplx(0.0)) throw ValidationError("p_bessel: xi = 0");
    const double th = xi_arg(xi, side, "p_bessel");
    if (th > 2.0 * kPi / 3.0) return BesselSector::II;
    if (th < -2.0 * kPi / 3.0) return BesselSector::III;
    return BesselSector::I;
}

Mat2C p_airy_scaled(cplx xi, AirySector sector, Side side, cplx* zeta_out) {
    if (sector == AirySector::Auto) sector = airy_sector(xi, side);
    double th;
    if (on_axis(xi) && xi.real() < 0.0) {
        th = (sector == AirySector::III) ? -kPi : kPi;
    } else {
        th = std::arg(xi);
    }
    const cplx zeta = (2.0 / 3.0) * power_arg(xi, th, 1.5);
    if (zeta_out) *zeta_out = zeta;

    const cplx w1 = kOmega * xi, w2 = kOmega * kOmega * xi;
    const cplx o2 = kOmega * kOmega;
    const cplx qm = std::polar(1.0, -kPi / 6.0), qp = std::polar(1.0, kPi / 6.0);  // omega^{-1/4}, omega^{1/4}

    // Ai(w) e^{s zeta} for a rotated point w
    auto rot = [&](cplx w, double s) {
        const AiryValue a = airy_scaled(w);
        const cplx f = std::exp(s * zeta - airy_zeta(w));
        return AiryValue{a.ai * f, a.aip * f};
    };

    cplx c11, c21, c12, c22;
    switch (sector) {
        case AirySector::I:
        case AirySector::IV: {
            const AiryValue a = rot(xi, 1.0);
            c11 = qm * a.ai;
            c21 = qm * a.aip;
            if (sector == AirySector::I) {
                const AiryValue b = rot(w2, -1.0);
                c12 = qp * b.ai;
                c22 = qp * o2 * b.aip;
            } else {
                const AiryValue b = rot(w1, -1.0);
                c12 = -qp * o2 * b.ai;
                c22 = -qp * b.aip;
            }
            break;
        }
        case AirySector::II: {
            const AiryValue a = rot(w1, 1.0), b = rot(w2, -1.0);
            c11 = -qm * kOmega * a.ai;
            c21 = -qm * o2 * a.aip;
            c12 = qp * b.ai;
            c22 = qp * o2 * b.aip;
            break;
        }
        case AirySector::III: {
            const AiryValue a = rot(w2, 1.0), b = rot(w1, -1.0);
            c11 = -qm * o2 * a.ai;
            c21 = -qm * kOmega * a.aip;
            c12 = -qp * o2 * b.ai;
            c22 = -qp * b.aip;
            break;
        }
        default: throw ValidationError("p_airy: bad sector");
    }
    return {c11, c12, c21, c22};
}

Mat2C p_airy(cplx xi, AirySector sector, Side side) {
    cplx zeta;
    const Mat2C s = p_airy_scaled(xi, sector, side, &zeta);
    return s * Mat2C::exp_sigma3(-zeta);
}

Mat2C p_bessel_scaled(cplx xi, double alpha, BesselSector sector, Side side, cplx* s_out) {
    if (xi == cplx(0.0)) throw ValidationError("p_bessel: xi = 0");
    if (alpha < 0.0) throw ValidationError("p_bessel: negative order");
    if (sector == BesselSector::Auto) sector = bessel_sector(xi, side);
    double th;
    if (on_axis(xi) && xi.real() < 0.0) {
        th = (sector == BesselSector::III) ? -kPi : kPi;
    } else {
        th = std::arg(xi);
    }
    const cplx s = power_arg(xi, th, 0.5);
    if (s_out) *s_out = s;
    const cplx u = 2.0 * s;
    const BesselIKScaled b = bessel_ik_scaled(alpha, u);
    Mat2C P{b.i, kI / kPi * b.k, 2.0 * kPi * kI * s * b.ip, -2.0 * s * b.kp};
    if (sector != BesselSector::I) {
        // continuation of K across the negative axis
        const cplx e2u = std::exp(-2.0 * u);
        const cplx f = sector == BesselSector::II ? -std::exp(cplx(0.0, kPi * alpha)) : std::exp(cplx(0.0, -kPi * alpha));
        P.a11 += f * e2u * P.a12;
        P.a21 += f * e2u * P.a22;
    }
    return P;
}

Mat2C p_bessel(cplx xi, double alpha, BesselSector sector, Side side) {
    if (xi == cplx(0.0)) throw ValidationError("p_bessel: xi = 0");
    if (sector == BesselSector::Auto) sector = bessel_sector(xi, side);
    double th;
    if (on_axis(xi) && xi.real() < 0.0) {
        th = (sector == BesselSector::III) ? -kPi : kPi;
    } else {
        th = std::arg(xi);
    }
    const cplx s = power_arg(xi, th, 0.5);
    if (sector == BesselSector::I) {
        const ModifiedBessel m = bessel_modified(alpha, 2.0 * s);
        return {m.i, kI / kPi * m.k, 2.0 * kPi * kI * s * m.ip, -2.0 * s * m.kp};
    }
    const cplx w = 2.0 * std::sqrt(-xi);
    const ModifiedBessel m = bessel_modified(alpha, w);
    const cplx ph = std::exp(cplx(0.0, 0.5 * alpha * kPi));
    if (sector == BesselSector::II) {
        const Mat2C H{0.5 * m.h1, 0.5 * m.h2, kPi * s * m.h1p, kPi * s * m.h2p};
        return H * Mat2C::diag(ph, 1.0 / ph);
    }
    const Mat2C H{0.5 * m.h2, -0.5 * m.h1, -kPi * s * m.h2p, kPi * s * m.h1p};
    return H * Mat2C::diag(1.0 / ph, ph);
}

// ---------------------------------------------------------------------------
// local parametrices

namespace {

void need_disk(cplx z, cplx center, const char* what) {
    if (!(std::abs(z - center) < 0.5)) throw ValidationError(std::string(what) + ": point outside the local disk");
}

struct AiryLocal {
    cplx xi;
    Side xi_side;
    AirySector sector;
};

AiryLocal airy_local(cplx z, const ScalingParams& p, AirySector sector, Side side) {
    need_disk(z, 1.0, "s_local_left");
    AiryLocal a;
    a.xi = std::pow(p.M, 2.0 / 3.0) * f_left(z, side);
    if (on_axis(z)) a.xi = cplx(a.xi.real(), 0.0);
    a.xi_side = side;  // f_left keeps half planes
    a.sector = sector == AirySector::Auto ? airy_sector(a.xi, a.xi_side) : sector;
    return a;
}

struct BesselLocal {
    cplx xi;
    Side xi_side;
    BesselSector sector;
};

BesselLocal bessel_local(cplx z, const ScalingParams& p, BesselSector sector, Side side) {
    need_disk(z, 0.0, "s_local_right");
    if (z == cplx(0.0)) throw ValidationError("s_local_right: z = 0");
    BesselLocal b;
    b.xi = p.M * p.M * f_right(z, side);
    if (on_axis(z)) b.xi = cplx(b.xi.real(), 0.0);
    b.xi_side = flip(side);  // f_right swaps half planes
    b.sector = sector == BesselSector::Auto ? bessel_sector(b.xi, b.xi_side) : sector;
    return b;
}

// side of xi implied by a sector choice, for points on the negative axis
Side side_for(AirySector s, Side fallback) {
    if (s == AirySector::II) return Side::Above;
    if (s == AirySector::III) return Side::Below;
    return fallback;
}
Side side_for(BesselSector s, Side fallback) {
    if (s == BesselSector::II) return Side::Above;
    if (s == BesselSector::III) return Side::Below;
    return fallback;
}

// D_inf M_Ai (no D_inf factors)
Mat2C m_airy_hat_product(cplx z, const ScalingParams& p, Side side) {
    const cplx xi = std::pow(p.M, 2.0 / 3.0) * f_left(z, side);
    const double th = xi_arg(on_axis(z) ? cplx(xi.real(), 0.0) : xi, side, "m_airy");
    const cplx q = power_arg(xi, th, 0.25);
    const cplx psi = psi_left(z, side);
    const cplx qm = std::polar(1.0, -kPi / 6.0), oh = std::polar(1.0, kPi / 3.0);
    const Mat2C E0{qm, oh, -qm, oh};
    return (2.0 * std::sqrt(kPi)) * (script_N(z, side) * Mat2C::diag(1.0 / psi, psi) * E0.inverse() *
                                     Mat2C::diag(q, 1.0 / q));
}

// f_left(z) / (z - 1), analytic and nonzero near 1
cplx f_left_ratio(cplx z) {
    if (std::abs(z - 1.0) < 1e-4) {
        constexpr int n = 32;
        constexpr double rho = 1e-2;
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const cplx e = std::polar(1.0, 2.0 * kPi * (j + 0.5) / n);
            const cplx s = 1.0 + rho * e;
            acc += f_left(s) / (rho * e) * (rho * e / (s - z));
        }
        return acc / static_cast<double>(n);
    }
    return f_left(z) / (z - 1.0);
}

Mat2C m_airy_hat_closed(cplx z, const ScalingParams& p) {
    const cplx qp = std::polar(1.0, kPi / 6.0);
    const cplx r = std::pow(f_left_ratio(z) / z, 0.25);
    const double m6 = std::pow(p.M, 1.0 / 6.0);
    const Mat2C A{-0.5, 0.0, kI * (z - 0.5), kI};
    return (-2.0 * std::sqrt(kPi) * qp) * (A * Mat2C::diag(m6 * r, 1.0 / (m6 * r)));
}

Mat2C m_airy_hat(cplx z, const ScalingParams& p, Side side) {
    if (std::abs(z - 1.0) < 1e-2) return m_airy_hat_closed(z, p);
    if (on_axis(z) && side == Side::Off) side = Side::Above;
    return m_airy_hat_product(z, p, side);
}

Mat2C m_bessel_hat(cplx z, const ScalingParams& p, Side side) {
    if (on_axis(z) && z.real() > 0.0 && side == Side::Off) side = Side::Above;
    const cplx xi = p.M * p.M * f_right(z, side);
    const double th = xi_arg(on_axis(z) ? cplx(xi.real(), 0.0) : xi, flip(side), "m_bessel");
    const cplx q = power_arg(xi, th, 0.25);
    const cplx psi = psi_right(z, side);
    const Mat2C E0{0.5, 0.5 * kI, kI, 1.0};
    const double sp = std::sqrt(kPi);
    return script_N(z, side) * Mat2C::diag(1.0 / psi, psi) * E0.inverse() * Mat2C::diag(q * sp, 1.0 / (q * sp));
}

// D_inf S_left = Mhat Ptilde e^{E s3}
struct LocalPieces {
    Mat2C core;  // Mhat * Ptilde
    cplx E;
};

LocalPieces left_pieces(cplx z, const ScalingParams& p, AirySector sector, Side side) {
    const AiryLocal a = airy_local(z, p, sector, side);
    const Side zs = on_axis(z) ? side_for(a.sector, side) : side;
    cplx zeta;
    const Mat2C P = p_airy_scaled(a.xi, a.sector, side_for(a.sector, a.xi_side), &zeta);
    const cplx E = -zeta + 0.5 * w_hat(z, p.alpha) + static_cast<double>(p.N) * phi_left(z, zs);
    return {m_airy_hat(z, p, zs) * P, E};
}

LocalPieces right_pieces(cplx z, const ScalingParams& p, BesselSector sector, Side side) {
    const BesselLocal b = bessel_local(z, p, sector, side);
    // on (0, delta) the sector fixes the side of z
    Side zs = side;
    if (on_axis(z) && z.real() > 0.0) {
        if (b.sector == BesselSector::III) zs = Side::Above;
        if (b.sector == BesselSector::II) zs = Side::Below;
    }
    cplx s;
    const Mat2C P = p_bessel_scaled(b.xi, p.alpha, b.sector, side_for(b.sector, b.xi_side), &s);
    const cplx E = 2.0 * s + 0.5 * w_check(z, p.alpha, zs) + static_cast<double>(p.N) * phi_right(z, zs);
    return {m_bessel_hat(z, p, zs) * P, E};
}

}  // namespace

AirySector local_airy_sector(cplx z, const ScalingParams& p, Side side) {
    return airy_local(z, p, AirySector::Auto, side).sector;
}

BesselSector local_bessel_sector(cplx z, const ScalingParams& p, Side side) {
    return bessel_local(z, p, BesselSector::Auto, side).sector;
}

Mat2C m_airy(cplx z, const ScalingParams& p, Side side) {
    need_disk(z, 1.0, "m_airy");
    return conj_exp(-log_d_infinity(p.alpha), m_airy_hat(z, p, side), 0.0);
}

Mat2C m_airy_closed(cplx z, const ScalingParams& p) {
    need_disk(z, 1.0, "m_airy_closed");
    return conj_exp(-log_d_infinity(p.alpha), m_airy_hat_closed(z, p), 0.0);
}

Mat2C m_bessel(cplx z, const ScalingParams& p, Side side) {
    need_disk(z, 0.0, "m_bessel");
    if (z == cplx(0.0)) throw ValidationError("m_bessel: z = 0");
    return conj_exp(-log_d_infinity(p.alpha), m_bessel_hat(z, p, side), 0.0);
}

Mat2C s_local_left(cplx z, const ScalingParams& p, AirySector sector, Side side) {
    const LocalPieces lp = left_pieces(z, p, sector, side);
    return conj_exp(-log_d_infinity(p.alpha), lp.core, lp.E);
}

Mat2C s_local_right(cplx z, const ScalingParams& p, BesselSector sector, Side side) {
    const LocalPieces lp = right_pieces(z, p, sector, side);
    return conj_exp(-log_d_infinity(p.alpha), lp.core, lp.E);
}

Mat2C matching_airy(cplx z, const ScalingParams& p) {
    if (on_axis(z)) throw ValidationError("matching_airy: use points off the real axis");
    const LocalPieces lp = left_pieces(z, p, AirySector::Auto, Side::Off);
    return conj_exp(0.0, lp.core, lp.E - h_fn(z, p.alpha)) * script_N(z).inverse();
}

Mat2C matching_bessel(cplx z, const ScalingParams& p) {
    if (on_axis(z)) throw ValidationError("matching_bessel: use points off the real axis");
    const LocalPieces lp = right_pieces(z, p, BesselSector::Auto, Side::Off);
    const cplx E = lp.E - 2.0 * p.c / phi_right(z) - h_fn(z, p.alpha);
    return conj_exp(0.0, lp.core, E) * script_N(z).inverse();
}

namespace {
double matching_sweep(cplx center, const ScalingParams& p, double delta, int points,
                      Mat2C (*fn)(cplx, const ScalingParams&)) {
    double m = 0.0;
    for (int k = 0; k < points; ++k) {
        const cplx z = center + std::polar(delta, 2.0 * kPi * (k + 0.5) / points);
        m = std::max(m, (fn(z, p) - Mat2C::identity()).norm());
    }
    return m;
}
}  // namespace

double matching_sweep_airy(const ScalingParams& p, double delta, int points) {
    return matching_sweep(1.0, p, delta, points, matching_airy);
}

double matching_sweep_bessel(const ScalingParams& p, double delta, int points) {
    return matching_sweep(0.0, p, delta, points, matching_bessel);
}

// ---------------------------------------------------------------------------
// Y_+

AsympRegion asymp_region_for(double x, double delta) {
    if (!(x > 0.0)) throw ValidationError("asymp_region_for: x must be positive");
    if (x <= delta) return AsympRegion::A;
    if (x <= 1.0 - delta) return AsympRegion::Bulk;
    if (x <= 1.0) return AsympRegion::B;
    if (x <= 1.0 + delta) return AsympRegion::C;
    return AsympRegion::D;
}

const char* region_name(AsympRegion r) {
    switch (r) {
        case AsympRegion::A: return "a";
        case AsympRegion::B: return "b";
        case AsympRegion::Bulk: return "bulk";
        case AsympRegion::C: return "c";
        case AsympRegion::D: return "d";
    }
    return "?";
}

Mat2C y_plus_asymptotic(double x, AsympRegion region, const ScalingParams& p, const ContourOptions& opt) {
    const double d = opt.delta;
    bool ok = false;
    switch (region) {
        case AsympRegion::A: ok = x > 0.0 && x <= d; break;
        case AsympRegion::Bulk: ok = x > d && x < 1.0 - d; break;
        case AsympRegion::B: ok = x >= 1.0 - d && x <= 1.0; break;
        case AsympRegion::C: ok = x >= 1.0 && x <= 1.0 + d; break;
        case AsympRegion::D: ok = x >= 1.0 + d; break;
    }
    if (!ok) throw ValidationError(std::string("y_plus_asymptotic: x outside region ") + region_name(region));

    const cplx z(x, 0.0);
    const double N = p.N;
    const double ld = log_d_infinity(p.alpha);
    const cplx g = g_fn(z, Side::Above).value;
    const Mat2C A = a_infinity(z, p.c, region == AsympRegion::A ? CircleSide::Inside : CircleSide::Outside,
                               Side::Above, opt);
    const cplx L = -0.5 * p.ellN - ld;

    Mat2C K;
    cplx E;
    bool lens = false;
    switch (region) {
        case AsympRegion::D:
            K = A * script_N(z);
            E = h_fn(z, p.alpha);
            break;
        case AsympRegion::Bulk:
            K = A * script_N(z, Side::Above);
            E = h_fn(z, p.alpha, Side::Above);
            lens = true;
            break;
        case AsympRegion::B:
        case AsympRegion::C: {
            const AirySector s = region == AsympRegion::B ? AirySector::II : AirySector::I;
            const LocalPieces lp = left_pieces(z, p, s, Side::Above);
            K = A * lp.core;
            E = lp.E;
            lens = region == AsympRegion::B;
            break;
        }
        case AsympRegion::A: {
            const LocalPieces lp = right_pieces(z, p, BesselSector::III, Side::Above);
            K = A * lp.core;
            E = lp.E;
            lens = true;
            break;
        }
    }
    // K e^{E s3} [lens] e^{(N g + l/2) s3}
    const cplx R = N * g + 0.5 * p.ellN;
    Mat2C Y = conj_exp(L, K, E + R);
    if (lens) {
        // e^{E s3} [[1,0],[e^{2N phi + w},1]] = [[1,0],[e^{2N phi + w - 2E},1]] e^{E s3}
        const cplx t = 2.0 * N * phi_right(z, Side::Above) + w_hat(z, p.alpha) - 2.0 * E;
        const Mat2C Kl = K * Mat2C{1.0, 0.0, std::exp(t), 1.0};
        Y = conj_exp(L, Kl, E + R);
    }
    return Y;
}

// ---------------------------------------------------------------------------
// residual suites

namespace {
double node(int k, int n, double a, double b) { return a + (b - a) * (k + 0.5) / n; }

Mat2C cut_jump(cplx z, double alpha) {
    const cplx w = w_hat(z, alpha);
    return {0.0, std::exp(-w), -std::exp(w), 0.0};
}
Mat2C lens_jump(cplx z, const ScalingParams& p, Side side) {
    return {1.0, 0.0, std::exp(2.0 * p.N * phi_right(z, side) + w_hat(z, p.alpha)), 1.0};
}
}  // namespace

std::vector<JumpResidual> jumps_script_N(const JumpSuiteOptions& o) {
    std::vector<JumpResidual> out;
    const Mat2C J{0.0, 1.0, -1.0, 0.0};
    for (int k = 0; k < o.points; ++k) {
        const cplx x(node(k, o.points, 0.0, 1.0), 0.0);
        out.push_back({x, ContourTag::Cut01, jump_residual(script_N(x, Side::Above), script_N(x, Side::Below), J)});
    }
    return out;
}

std::vector<JumpResidual> jumps_s_infinity(const JumpSuiteOptions& o) {
    std::vector<JumpResidual> out;
    const ScalingParams p = ScalingParams::with_alpha(o.N, o.c, o.alpha);
    for (int k = 0; k < o.points; ++k) {
        const cplx x(node(k, o.points, 0.0, 1.0), 0.0);
        out.push_back({x, ContourTag::Cut01,
                       jump_residual(s_infinity(x, p, Side::Above), s_infinity(x, p, Side::Below),
                                     cut_jump(x, o.alpha))});
    }
    return out;
}

std::vector<JumpResidual> jumps_a_infinity(const JumpSuiteOptions& o) {
    std::vector<JumpResidual> out;
    ContourOptions co;
    co.delta = o.delta;
    for (int k = 0; k < o.points; ++k) {
        const cplx z = std::polar(o.delta, 2.0 * kPi * (k + 0.5) / o.points);
        const Mat2C Nz = script_N(z);
        const cplx e = 2.0 * o.c / phi_right(z);
        const Mat2C J = Nz * Mat2C::exp_sigma3(-e) * Nz.inverse();
        out.push_back({z, ContourTag::Circle0,
                       jump_residual(a_infinity(z, o.c, CircleSide::Inside, Side::Off, co),
                                     a_infinity(z, o.c, CircleSide::Outside, Side::Off, co), J)});
    }
    for (int k = 0; k < o.points; ++k) {
        cplx x(node(k, o.points, 0.0, 1.0), 0.0);
        if (std::abs(x.real() - o.delta) < 1e-3) x += 2e-3;
        out.push_back({x, ContourTag::Cut01,
                       jump_residual(a_infinity(x, o.c, CircleSide::Unspecified, Side::Above, co),
                                     a_infinity(x, o.c, CircleSide::Unspecified, Side::Below, co),
                                     Mat2C::identity())});
    }
    return out;
}

std::vector<JumpResidual> jumps_p_airy(const JumpSuiteOptions& o) {
    std::vector<JumpResidual> out;
    const Mat2C J1{1.0, 1.0, 0.0, 1.0}, J24{1.0, 0.0, 1.0, 1.0}, J3{0.0, 1.0, -1.0, 0.0};
    const cplx r2 = std::polar(1.0, 2.0 * kPi / 3.0), r4 = std::polar(1.0, -2.0 * kPi / 3.0);
    for (int k = 0; k < o.points; ++k) {
        const double t = node(k, o.points, 0.0, 6.0);
        const cplx a(t, 0.0), b(-t, 0.0);
        out.push_back({a, ContourTag::SigmaAi,
                       jump_residual(p_airy(a, AirySector::I), p_airy(a, AirySector::IV), J1)});
        out.push_back({t * r2, ContourTag::SigmaAi,
                       jump_residual(p_airy(t * r2, AirySector::I), p_airy(t * r2, AirySector::II), J24)});
        out.push_back({b, ContourTag::SigmaAi,
                       jump_residual(p_airy(b, AirySector::II), p_airy(b, AirySector::III), J3)});
        out.push_back({t * r4, ContourTag::SigmaAi,
                       jump_residual(p_airy(t * r4, AirySector::III), p_airy(t * r4, AirySector::IV), J24)});
    }
    return out;
}

std::vector<JumpResidual> jumps_p_bessel(const JumpSuiteOptions& o) {
    std::vector<JumpResidual> out;
    const double al = o.alpha;
    const Mat2C J1{1.0, 0.0, std::exp(cplx(0.0, al * kPi)), 1.0};
    const Mat2C J2{0.0, 1.0, -1.0, 0.0};
    const Mat2C J3{1.0, 0.0, std::exp(cplx(0.0, -al * kPi)), 1.0};
    const cplx r1 = std::polar(1.0, 2.0 * kPi / 3.0), r3 = std::polar(1.0, -2.0 * kPi / 3.0);
    for (int k = 0; k < o.points; ++k) {
        const double t = node(k, o.points, 0.0, 20.0);
        const cplx b(-t, 0.0);
        out.push_back({t * r1, ContourTag::SigmaBes,
                       jump_residual(p_bessel(t * r1, al, BesselSector::I), p_bessel(t * r1, al, BesselSector::II), J1)});
        out.push_back({b, ContourTag::SigmaBes,
                       jump_residual(p_bessel(b, al, BesselSector::II), p_bessel(b, al, BesselSector::III), J2)});
        out.push_back({t * r3, ContourTag::SigmaBes,
                       jump_residual(p_bessel(t * r3, al, BesselSector::III), p_bessel(t * r3, al, BesselSector::I), J3)});
    }
    return out;
}

std::vector<JumpResidual> jumps_s_local_left(const JumpSuiteOptions& o) {
    std::vector<JumpResidual> out;
    const ScalingParams p = ScalingParams::with_alpha(o.N, o.c, o.alpha);
    const double d = o.delta;
    const cplx r2 = std::polar(1.0, 2.0 * kPi / 3.0), r4 = std::polar(1.0, -2.0 * kPi / 3.0);
    // largest t with the ray preimage still inside the disk
    double tmax = 0.0;
    for (double t = 0.01; t < 2.0; t += 0.01) {
        if (std::abs(f_left_inverse(t * r2) - 1.0) >= 0.95 * d) break;
        tmax = t;
    }
    for (int k = 0; k < o.points; ++k) {
        const cplx a(1.0 + node(k, o.points, 0.0, d), 0.0);
        Mat2C J{1.0, std::exp(-2.0 * p.N * phi_left(a) - w_hat(a, p.alpha)), 0.0, 1.0};
        out.push_back({a, ContourTag::Cut1Inf,
                       jump_residual(s_local_left(a, p, AirySector::I, Side::Above),
                                     s_local_left(a, p, AirySector::IV, Side::Below), J)});
        const cplx b(1.0 - node(k, o.points, 0.0, d), 0.0);
        out.push_back({b, ContourTag::Cut01,
                       jump_residual(s_local_left(b, p, AirySector::II, Side::Above),
                                     s_local_left(b, p, AirySector::III, Side::Below), cut_jump(b, p.alpha))});
        const double t = node(k, o.points, 0.0, tmax);
        const cplx zu = f_left_inverse(t * r2), zd = f_left_inverse(t * r4);
        out.push_back({zu, ContourTag::GammaUp,
                       jump_residual(s_local_left(zu, p, AirySector::I), s_local_left(zu, p, AirySector::II),
                                     lens_jump(zu, p, Side::Off))});
        out.push_back({zd, ContourTag::GammaDown,
                       jump_residual(s_local_left(zd, p, AirySector::III), s_local_left(zd, p, AirySector::IV),
                                     lens_jump(zd, p, Side::Off))});
    }
    return out;
}

std::vector<JumpResidual> jumps_s_local_right(const JumpSuiteOptions& o) {
    std::vector<JumpResidual> out;
    const ScalingParams p = ScalingParams::with_alpha(o.N, o.c, o.alpha);
    const double d = o.delta;
    const cplx r1 = std::polar(1.0, 2.0 * kPi / 3.0), r3 = std::polar(1.0, -2.0 * kPi / 3.0);
    double tmax = 0.0;
    for (double t = 0.01; t < 4.0; t += 0.01) {
        if (std::abs(f_right_inverse(t * r3)) >= 0.95 * d) break;
        tmax = t;
    }
    for (int k = 0; k < o.points; ++k) {
        const cplx b(node(k, o.points, 0.0, d), 0.0);
        out.push_back({b, ContourTag::Cut01,
                       jump_residual(s_local_right(b, p, BesselSector::III, Side::Above),
                                     s_local_right(b, p, BesselSector::II, Side::Below), cut_jump(b, p.alpha))});
        const double t = node(k, o.points, 0.0, tmax);
        const cplx zu = f_right_inverse(t * r3), zd = f_right_inverse(t * r1);
        out.push_back({zu, ContourTag::GammaUp,
                       jump_residual(s_local_right(zu, p, BesselSector::I), s_local_right(zu, p, BesselSector::III),
                                     lens_jump(zu, p, Side::Off))});
        out.push_back({zd, ContourTag::GammaDown,
                       jump_residual(s_local_right(zd, p, BesselSector::II), s_local_right(zd, p, BesselSector::I),
                                     lens_jump(zd, p, Side::Off))});
    }
    return out;
}

}  // namespace critlue
