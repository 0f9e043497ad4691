#include "critlue/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/airy.hpp>

namespace critlue {
namespace {

// ---------------------------------------------------------------------------
// quad precision complex, just enough for the Airy Maclaurin series

using q128 = __float128;

struct qc {
    q128 re, im;
};

inline qc operator+(qc a, qc b) { return {a.re + b.re, a.im + b.im}; }
inline qc operator-(qc a, qc b) { return {a.re - b.re, a.im - b.im}; }
inline qc operator*(qc a, qc b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline qc operator*(qc a, q128 s) { return {a.re * s, a.im * s}; }
inline q128 norm2(qc a) { return a.re * a.re + a.im * a.im; }
inline cplx to_cplx(qc a) { return {static_cast<double>(a.re), static_cast<double>(a.im)}; }

const cplx kOmega{-0.5, 0.86602540378443864676};  // e^{2 pi i / 3}
const cplx kOmega2{-0.5, -0.86602540378443864676};
constexpr double kSqrtPi = 1.7724538509055160273;

AiryValue airy_series(cplx xi) {
    // Ai(0) and -Ai'(0) as double-double pairs
    const q128 c1 = static_cast<q128>(0.3550280538878172) + static_cast<q128>(2.05233632436212e-17);
    const q128 c2 = static_cast<q128>(0.2588194037928068) + static_cast<q128>(-2.522243111610832e-17);
    const q128 eps2 = static_cast<q128>(1e-34) * static_cast<q128>(1e-34);

    qc z{xi.real(), xi.imag()};
    qc z3 = z * z * z;
    qc a{1, 0}, b = z;
    qc p = z * z * static_cast<q128>(0.5);
    qc q{1, 0};
    qc f = a, g = b, fp = p, gp = q;
    for (int k = 1; k < 500; ++k) {
        const q128 kk = k;
        a = a * z3 * (1 / ((3 * kk - 1) * (3 * kk)));
        b = b * z3 * (1 / ((3 * kk) * (3 * kk + 1)));
        q = q * z3 * (1 / ((3 * kk - 2) * (3 * kk)));
        if (k >= 2) p = p * z3 * (1 / ((3 * kk - 3) * (3 * kk - 1)));
        f = f + a;
        g = g + b;
        gp = gp + q;
        if (k >= 2) fp = fp + p;
        const q128 mag = norm2(f) + norm2(g) + norm2(fp) + norm2(gp);
        const q128 step = norm2(a) + norm2(b) + norm2(p) + norm2(q);
        if (k > 2 && step <= eps2 * mag) break;
    }
    qc ai = f * c1 - g * c2;
    qc aip = fp * c1 - gp * c2;
    return {to_cplx(ai), to_cplx(aip)};
}

// Asymptotic series for the scaled pair, assuming |arg xi| <= 2 pi / 3.
AiryValue airy_asym_scaled(cplx xi, int max_terms) {
    const cplx zeta = airy_zeta(xi);
    const cplx s = std::exp(0.25 * std::log(xi));
    const bool adaptive = max_terms <= 0;
    const int cap = adaptive ? 30 : max_terms;

    cplx sa = 1.0, sb = 1.0;
    double u = 1.0;
    cplx zk = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < cap; ++k) {
        u *= (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
        const double v = -(6.0 * k + 1) / (6.0 * k - 1) * u;
        zk /= -zeta;
        const cplx ta = u * zk;
        const cplx tb = v * zk;
        const double mag = std::abs(ta) + std::abs(tb);
        if (adaptive && mag > prev) break;
        sa += ta;
        sb += tb;
        prev = mag;
        if (adaptive && mag < 1e-17) break;
    }
    const double norm = 1.0 / (2.0 * kSqrtPi);
    return {norm * sa / s, -norm * s * sb};
}

AiryValue airy_large_scaled(cplx xi, int max_terms) {
    if (std::abs(std::arg(xi)) <= 2.0 * kPi / 3.0) return airy_asym_scaled(xi, max_terms);
    // rotate into the sector where the expansion is uniform
    const cplx z1 = kOmega * xi;
    const cplx z2 = kOmega2 * xi;
    const AiryValue a1 = airy_asym_scaled(z1, max_terms);
    const AiryValue a2 = airy_asym_scaled(z2, max_terms);
    const cplx zt = airy_zeta(xi);
    const cplx e1 = std::exp(zt - airy_zeta(z1));
    const cplx e2 = std::exp(zt - airy_zeta(z2));
    AiryValue r;
    r.ai = -kOmega * a1.ai * e1 - kOmega2 * a2.ai * e2;
    r.aip = -kOmega2 * a1.aip * e1 - kOmega * a2.aip * e2;
    return r;
}

// ---------------------------------------------------------------------------
// 1/Gamma(1+x) Taylor coefficients, |x| <= 1/2

constexpr std::array<double, 27> kRecipGamma = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
};

struct TemmeGammas {
    double gam1, gam2, gampl, gammi;
};

TemmeGammas temme_gammas(double mu) {
    double even = 0.0, odd = 0.0;
    double pw = 1.0;  // mu^{k} for even k, mu^{k-1} for odd k
    for (std::size_t k = 0; k < kRecipGamma.size(); ++k) {
        if (k % 2 == 0) {
            even += kRecipGamma[k] * pw;
        } else {
            odd += kRecipGamma[k] * pw;
            pw *= mu * mu;
        }
    }
    // 1/Gamma(1+mu) = even + mu*odd, 1/Gamma(1-mu) = even - mu*odd
    return {-odd, even, even + mu * odd, even - mu * odd};
}

inline cplx sinhc(cplx e) {
    if (std::abs(e) < 1e-3) {
        const cplx e2 = e * e;
        return 1.0 + e2 / 6.0 + e2 * e2 / 120.0;
    }
    return std::sinh(e) / e;
}

constexpr double kEps = 1e-16;
constexpr double kFpMin = 1e-300;
constexpr int kMaxIt = 200000;

// K_mu and K_{mu+1} scaled by e^{z}, |mu| <= 1/2.
void k_pair_scaled(double mu, cplx z, cplx& kmu, cplx& k1) {
    const cplx xi = 1.0 / z;
    if (std::abs(z) < 2.0) {
        const TemmeGammas tg = temme_gammas(mu);
        const cplx x2 = 0.5 * z;
        const double pimu = kPi * mu;
        const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
        cplx d = -std::log(x2);
        cplx e = mu * d;
        cplx ff = fact * (tg.gam1 * std::cosh(e) + tg.gam2 * sinhc(e) * d);
        cplx sum = ff;
        e = std::exp(e);
        cplx p = 0.5 * e / tg.gampl;
        cplx q = 0.5 / (e * tg.gammi);
        cplx c = 1.0;
        d = x2 * x2;
        cplx sum1 = p;
        int i = 1;
        for (; i <= kMaxIt; ++i) {
            const double di = i;
            ff = (di * ff + p + q) / (di * di - mu * mu);
            c *= d / di;
            p /= (di - mu);
            q /= (di + mu);
            const cplx del = c * ff;
            sum += del;
            sum1 += c * (p - di * ff);
            if (std::abs(del) < std::abs(sum) * kEps) break;
        }
        if (i > kMaxIt) throw ConvergenceError("bessel K: Temme series did not converge");
        const cplx ez = std::exp(z);
        kmu = sum * ez;
        k1 = sum1 * 2.0 * xi * ez;
        return;
    }
    cplx b = 2.0 * (1.0 + z);
    cplx d = 1.0 / b;
    cplx h = d, delh = d;
    cplx q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu * mu;
    cplx q = a1, c = a1;
    double a = -a1;
    cplx s = 1.0 + q * delh;
    int i = 1;
    for (; i < kMaxIt; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const cplx qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const cplx dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    if (i >= kMaxIt) throw ConvergenceError("bessel K: continued fraction did not converge");
    h = a1 * h;
    kmu = std::sqrt(kPi / (2.0 * z)) / s;
    k1 = kmu * (mu + z + 0.5 - h) * xi;
}

// ---------------------------------------------------------------------------
// uniform expansion coefficients B0, A1, C0, D1 as functions of t

struct UniformCoeffs {
    double b0, a1, c0, d1;
};

UniformCoeffs uniform_coeffs_direct(double t) {
    const UniformBesselFrame fr = uniform_bessel_frame(t);
    const cplx zeta = fr.zeta;
    const cplx r = fr.zeta >= 0 ? cplx(std::sqrt(fr.zeta), 0.0) : cplx(0.0, std::sqrt(-fr.zeta));
    const cplx p = fr.prefactor * fr.prefactor / (2.0 * r);
    const cplx p2 = p * p, p3 = p2 * p, p4 = p2 * p2, p6 = p4 * p2;
    const cplx U1 = (3.0 * p - 5.0 * p3) / 24.0;
    const cplx U2 = (81.0 * p2 - 462.0 * p4 + 385.0 * p6) / 1152.0;
    const cplx V1 = (-9.0 * p + 7.0 * p3) / 24.0;
    const cplx V2 = (-135.0 * p2 + 594.0 * p4 - 455.0 * p6) / 1152.0;
    const double u1 = 5.0 / 72.0, u2 = 385.0 / 10368.0;
    const double v1 = -7.0 / 72.0, v2 = -455.0 / 10368.0;
    const cplx z32 = 1.0 / (zeta * r);  // zeta^{-3/2}
    const cplx z3 = z32 * z32;
    const cplx b0 = -(U1 + 1.5 * u1 * z32) / r;
    const cplx a1 = U2 + 1.5 * v1 * z32 * U1 + 2.25 * v2 * z3;
    const cplx c0 = -r * (V1 + 1.5 * v1 * z32);
    const cplx d1 = V2 + 1.5 * u1 * z32 * V1 + 2.25 * u2 * z3;
    return {b0.real(), a1.real(), c0.real(), d1.real()};
}

UniformCoeffs uniform_coeffs(double t) {
    constexpr double kBand = 0.1;
    if (std::abs(t - 1.0) >= kBand) return uniform_coeffs_direct(t);
    // removable singularity at t = 1: interpolate from nodes on both sides
    constexpr int kSide = 6;
    std::array<double, 2 * kSide> nodes{};
    std::array<UniformCoeffs, 2 * kSide> vals{};
    for (int k = 0; k < kSide; ++k) {
        const double off = kBand + 0.04 * k;
        nodes[2 * k] = 1.0 - off;
        nodes[2 * k + 1] = 1.0 + off;
    }
    for (std::size_t k = 0; k < nodes.size(); ++k) vals[k] = uniform_coeffs_direct(nodes[k]);
    UniformCoeffs out{0, 0, 0, 0};
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        double w = 1.0;
        for (std::size_t j = 0; j < nodes.size(); ++j)
            if (j != k) w *= (t - nodes[j]) / (nodes[k] - nodes[j]);
        out.b0 += w * vals[k].b0;
        out.a1 += w * vals[k].a1;
        out.c0 += w * vals[k].c0;
        out.d1 += w * vals[k].d1;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Airy

cplx airy_zeta(cplx xi) {
    if (xi == cplx(0.0)) return 0.0;
    return (2.0 / 3.0) * std::exp(1.5 * std::log(xi));
}

AiryValue airy(cplx xi, const AiryConfig& cfg) {
    if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag()))
        throw ValidationError("airy: non-finite argument");
    if (std::abs(xi) <= cfg.series_radius) return airy_series(xi);
    const AiryValue s = airy_large_scaled(xi, cfg.asym_terms);
    const cplx mz = -airy_zeta(xi);
    if (mz.real() > 700.0) throw RangeError("airy: result overflows");
    const cplx e = std::exp(mz);
    return {s.ai * e, s.aip * e};
}

AiryValue airy_scaled(cplx xi, const AiryConfig& cfg) {
    if (std::abs(xi) <= cfg.series_radius) {
        AiryValue s = airy_series(xi);
        const cplx e = std::exp(airy_zeta(xi));
        return {s.ai * e, s.aip * e};
    }
    return airy_large_scaled(xi, cfg.asym_terms);
}

cplx airy_ai(cplx xi) { return airy(xi).ai; }
cplx airy_ai_prime(cplx xi) { return airy(xi).aip; }
// real line: Boost is ~10x faster than the quad-precision series and feeds
// the Nystrom matrices
double airy_ai(double x) { return boost::math::airy_ai(x); }
double airy_ai_prime(double x) { return boost::math::airy_ai_prime(x); }

// ---------------------------------------------------------------------------
// Bessel J

UniformBesselFrame uniform_bessel_frame(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("uniform_bessel_frame: t must be positive");
    if (t == 1.0) return {t, 0.0, std::cbrt(2.0)};
    if (t < 1.0) {
        const double w = std::sqrt((1.0 - t) * (1.0 + t));
        double ratio;  // (atanh w - w) / w^3
        if (w < 0.1) {
            ratio = 0.0;
            double wp = 1.0;
            for (int k = 1; k < 20; ++k) {
                ratio += wp / (2 * k + 1);
                wp *= w * w;
            }
        } else {
            ratio = (std::log((1.0 + w) / t) - w) / (w * w * w);
        }
        const double zeta = std::pow(1.5 * ratio, 2.0 / 3.0) * w * w;
        const double pref = std::pow(4.0 * std::pow(1.5 * ratio, 2.0 / 3.0), 0.25);
        return {t, zeta, pref};
    }
    const double s = std::sqrt((t - 1.0) * (t + 1.0));
    double ratio;  // (s - atan s) / s^3
    if (s < 0.1) {
        ratio = 0.0;
        double sp = 1.0;
        for (int k = 1; k < 20; ++k) {
            ratio += ((k % 2) ? 1.0 : -1.0) * sp / (2 * k + 1);
            sp *= s * s;
        }
    } else {
        ratio = (s - std::atan(s)) / (s * s * s);
    }
    const double mag = std::pow(1.5 * ratio, 2.0 / 3.0);
    return {t, -mag * s * s, std::pow(4.0 * mag, 0.25)};
}

BesselJValue bessel_j_direct(double xnu, double x) {
    if (!(x > 0.0)) throw ValidationError("bessel_j: argument must be positive");
    if (xnu < 0.0) throw ValidationError("bessel_j: order must be nonnegative");
    if (x < 1e-8 * std::max(1.0, xnu)) {
        // leading series term
        const double j = std::exp(xnu * std::log(0.5 * x) - std::lgamma(xnu + 1.0));
        const double jp = xnu == 0.0 ? -0.5 * x : j * xnu / x;
        return {j, jp};
    }
    constexpr double kXmin = 2.0;
    const int nl = x < kXmin ? static_cast<int>(xnu + 0.5)
                             : std::max(0, static_cast<int>(xnu - x + 1.5));
    const double xmu = xnu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x, xi2 = 2.0 * xi, w = xi2 / kPi;

    int isign = 1;
    double h = xnu * xi;
    if (h < kFpMin) h = kFpMin;
    double b = xi2 * xnu, d = 0.0, c = h;
    int i = 0;
    for (; i < kMaxIt; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b - 1.0 / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) <= kEps) break;
    }
    if (i >= kMaxIt) throw ConvergenceError("bessel_j: CF1 did not converge");

    double rjl = isign * kFpMin, rjpl = h * rjl;
    double rjl1 = rjl, rjp1 = rjpl;
    double fact = xnu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if (std::abs(rjl) > 1e250) {
            rjl *= 1e-250;
            rjpl *= 1e-250;
            rjl1 *= 1e-250;
            rjp1 *= 1e-250;
        }
    }
    if (rjl == 0.0) rjl = kEps;
    const double f = rjpl / rjl;

    double rjmu;
    if (x < kXmin) {
        const TemmeGammas tg = temme_gammas(xmu);
        const double x2 = 0.5 * x;
        const double pimu = kPi * xmu;
        const double fct = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
        double dd = -std::log(x2);
        double e = xmu * dd;
        const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
        double ff = 2.0 / kPi * fct * (tg.gam1 * std::cosh(e) + tg.gam2 * fact2 * dd);
        e = std::exp(e);
        double p = e / (tg.gampl * kPi);
        double q = 1.0 / (e * kPi * tg.gammi);
        const double pimu2 = 0.5 * pimu;
        const double fact3 = std::abs(pimu2) < kEps ? 1.0 : std::sin(pimu2) / pimu2;
        const double r = kPi * pimu2 * fact3 * fact3;
        double cc = 1.0;
        dd = -x2 * x2;
        double sum = ff + r * q, sum1 = p;
        int k = 1;
        for (; k <= kMaxIt; ++k) {
            ff = (k * ff + p + q) / (k * k - xmu2);
            cc *= dd / k;
            p /= (k - xmu);
            q /= (k + xmu);
            const double del = cc * (ff + r * q);
            sum += del;
            sum1 += cc * p - k * del;
            if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) break;
        }
        if (k > kMaxIt) throw ConvergenceError("bessel_j: Temme series did not converge");
        const double rymu = -sum;
        const double ry1 = -sum1 * xi2;
        const double rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        double a = 0.25 - xmu2, p = -0.5 * xi, q = 1.0;
        const double br = 2.0 * x;
        double bi = 2.0;
        double fc = a * xi / (p * p + q * q);
        double cr = br + q * fc, ci = bi + p * fc;
        double den = br * br + bi * bi;
        double dr = br / den, di = -bi / den;
        double dlr = cr * dr - ci * di, dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        int k = 1;
        for (; k < kMaxIt; ++k) {
            a += 2 * k;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::abs(dr) + std::abs(di) < kFpMin) dr = kFpMin;
            fc = a / (cr * cr + ci * ci);
            cr = br + cr * fc;
            ci = bi - ci * fc;
            if (std::abs(cr) + std::abs(ci) < kFpMin) cr = kFpMin;
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::abs(dlr - 1.0) + std::abs(dli) <= kEps) break;
        }
        if (k >= kMaxIt) throw ConvergenceError("bessel_j: CF2 did not converge");
        const double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
    }
    const double scale = rjmu / rjl;
    return {rjl1 * scale, rjp1 * scale};
}

BesselJValue bessel_j_uniform(double alpha, double x, int corrections) {
    if (!(x > 0.0)) throw ValidationError("bessel_j: argument must be positive");
    if (!(alpha > 0.0)) throw ValidationError("bessel_j: uniform expansion needs positive order");
    const double t = x / alpha;
    const UniformBesselFrame fr = uniform_bessel_frame(t);
    const double a13 = std::cbrt(alpha);
    const double a23 = a13 * a13;
    const AiryValue ai = airy(cplx(a23 * fr.zeta, 0.0));
    const double A = ai.ai.real(), Ap = ai.aip.real();
    UniformCoeffs co{0, 0, 0, 0};
    if (corrections > 0) co = uniform_coeffs(t);
    const double a2 = alpha * alpha;
    const double j = fr.prefactor * (A / a13 * (1.0 + co.a1 / a2) + Ap / (a13 * a13 * a13 * a23) * co.b0);
    const double jp = -(2.0 / t) / fr.prefactor *
                      (A / (alpha * a13) * co.c0 + Ap / a23 * (1.0 + co.d1 / a2));
    return {j, jp};
}

BesselJValue bessel_j_pair(double alpha, double x, const BesselJConfig& cfg) {
    if (alpha < 0.0) throw ValidationError("bessel_j: order must be nonnegative");
    if (x < 0.0) throw ValidationError("bessel_j: negative argument");
    if (x == 0.0) return {alpha == 0.0 ? 1.0 : 0.0, alpha == 1.0 ? 0.5 : 0.0};
    if (alpha > cfg.uniform_threshold) return bessel_j_uniform(alpha, x, cfg.uniform_corrections);
    return bessel_j_direct(alpha, x);
}

double bessel_j(double alpha, double x, const BesselJConfig& cfg) { return bessel_j_pair(alpha, x, cfg).j; }
double bessel_j_prime(double alpha, double x, const BesselJConfig& cfg) {
    return bessel_j_pair(alpha, x, cfg).jp;
}

// ---------------------------------------------------------------------------
// modified Bessel, complex argument

static BesselIKScaled bessel_ik_scaled_right(double alpha, cplx z);

// K in the left half plane from K and I at -z (CF2 stalls near the negative axis)
static BesselKScaled k_reflected(double alpha, cplx z) {
    const cplx w = -z;
    const double m = z.imag() >= 0.0 ? 1.0 : -1.0;  // z = w e^{i pi m}
    const BesselIKScaled b = bessel_ik_scaled_right(alpha, w);
    const cplx ph = std::exp(cplx(0.0, -m * kPi * alpha));
    const cplx e2 = std::exp(-2.0 * w);
    const cplx k = ph * b.k * e2 - m * kI * kPi * b.i;
    const cplx kp = -(ph * b.kp * e2 - m * kI * kPi * b.ip);
    return {k, kp};
}

BesselKScaled bessel_k_scaled(double alpha, cplx z) {
    if (z == cplx(0.0)) throw ValidationError("bessel K: zero argument");
    if (alpha < 0.0) alpha = -alpha;  // K is even in the order
    if (z.real() < 0.0 && std::abs(z) >= 2.0) return k_reflected(alpha, z);
    const int nl = static_cast<int>(alpha + 0.5);
    const double mu = alpha - nl;
    cplx kmu, k1;
    k_pair_scaled(mu, z, kmu, k1);
    const cplx xi = 1.0 / z;
    for (int i = 1; i <= nl; ++i) {
        const cplx kt = (mu + i) * 2.0 * xi * k1 + kmu;
        kmu = k1;
        k1 = kt;
    }
    return {kmu, alpha * xi * kmu - k1};
}

BesselIKScaled bessel_ik_scaled(double alpha, cplx z) {
    if (z == cplx(0.0)) throw ValidationError("bessel I/K: zero argument");
    if (alpha < 0.0) throw ValidationError("bessel I/K: negative order");
    BesselIKScaled out = bessel_ik_scaled_right(alpha, z);
    if (z.real() < 0.0 && std::abs(z) >= 2.0) {
        const BesselKScaled k = k_reflected(alpha, z);
        out.k = k.k;
        out.kp = k.kp;
    }
    return out;
}

static BesselIKScaled bessel_ik_scaled_right(double alpha, cplx z) {
    const int nl = static_cast<int>(alpha + 0.5);
    const double mu = alpha - nl;
    const cplx xi = 1.0 / z, xi2 = 2.0 * xi;

    // CF1 for I'/I at order alpha
    cplx h = alpha * xi;
    if (std::abs(h) < kFpMin) h = kFpMin;
    cplx b = xi2 * alpha, d = 0.0, c = h;
    int i = 0;
    for (; i < kMaxIt; ++i) {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    if (i >= kMaxIt) throw ConvergenceError("bessel I: CF1 did not converge");

    cplx ril = kFpMin, ripl = h * ril;
    cplx ril1 = ril, rip1 = ripl;
    cplx fact = alpha * xi;
    for (int l = nl; l >= 1; --l) {
        const cplx rt = fact * ril + ripl;
        fact -= xi;
        ripl = fact * rt + ril;
        ril = rt;
        if (std::abs(ril) > 1e250) {
            ril *= 1e-250;
            ripl *= 1e-250;
            ril1 *= 1e-250;
            rip1 *= 1e-250;
        }
    }
    const cplx f = ripl / ril;

    cplx kmu, k1;
    k_pair_scaled(mu, z, kmu, k1);
    const cplx kmup = mu * xi * kmu - k1;
    const cplx imu = xi / (f * kmu - kmup);
    BesselIKScaled out;
    out.i = imu * ril1 / ril;
    out.ip = imu * rip1 / ril;
    for (int n = 1; n <= nl; ++n) {
        const cplx kt = (mu + n) * xi2 * k1 + kmu;
        kmu = k1;
        k1 = kt;
    }
    out.k = kmu;
    out.kp = alpha * xi * kmu - k1;
    return out;
}

ModifiedBessel bessel_modified(double alpha, cplx xi) {
    if (xi == cplx(0.0)) throw ValidationError("bessel_modified: zero argument");
    if (alpha < 0.0 || alpha > 10.0 || std::abs(xi) > 50.0)
        throw UnsupportedRange("bessel_modified: supported envelope is 0 <= alpha <= 10, |xi| <= 50");
    const BesselIKScaled s = bessel_ik_scaled(alpha, xi);
    const cplx ep = std::exp(xi), em = std::exp(-xi);
    ModifiedBessel m;
    m.i = s.i * ep;
    m.ip = s.ip * ep;
    m.k = s.k * em;
    m.kp = s.kp * em;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (std::abs(std::arg(xi)) <= kPi / 2.0) {
        const cplx rm = -kI * xi, rp = kI * xi;
        const BesselKScaled km = bessel_k_scaled(alpha, rm);
        const BesselKScaled kp = bessel_k_scaled(alpha, rp);
        const cplx ph1 = std::exp(cplx(0.0, -alpha * kPi / 2.0));
        const cplx ph2 = std::exp(cplx(0.0, alpha * kPi / 2.0));
        const cplx e1 = std::exp(-rm), e2 = std::exp(-rp);
        m.h1 = 2.0 / (kPi * kI) * ph1 * km.k * e1;
        m.h1p = -2.0 / kPi * ph1 * km.kp * e1;
        m.h2 = -2.0 / (kPi * kI) * ph2 * kp.k * e2;
        m.h2p = -2.0 / kPi * ph2 * kp.kp * e2;
    } else {
        m.h1 = m.h1p = m.h2 = m.h2p = cplx(nan, nan);
    }
    return m;
}

cplx hankel1(double alpha, cplx z) {
    const BesselKScaled k = bessel_k_scaled(alpha, -kI * z);
    return 2.0 / (kPi * kI) * std::exp(cplx(0.0, -alpha * kPi / 2.0)) * k.k * std::exp(kI * z);
}

cplx hankel2(double alpha, cplx z) {
    const BesselKScaled k = bessel_k_scaled(alpha, kI * z);
    return -2.0 / (kPi * kI) * std::exp(cplx(0.0, alpha * kPi / 2.0)) * k.k * std::exp(-kI * z);
}

cplx bessel_eta(cplx z) {
    const cplx r = std::sqrt(1.0 + z * z);
    return r + std::log(z / (1.0 + r));
}

}  // namespace critlue
