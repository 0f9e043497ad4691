#include "critlue/rh_scalar.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace critlue {

int critical_alpha(int N, double c) {
    if (N < 1 || !(c > 0.0)) throw ValidationError("critical_alpha: need N >= 1 and c > 0");
    const double target = 4.0 * c * N;
    long a = static_cast<long>(std::floor(std::sqrt(target)));
    while (static_cast<double>(a + 1) * (a + 1) <= target) ++a;
    while (a > 0 && static_cast<double>(a) * a > target) --a;
    return static_cast<int>(a);
}

ScalingParams ScalingParams::with_alpha(int N, double c, int alpha) {
    if (N < 1) throw ValidationError("ScalingParams: N must be positive");
    if (!(c > 0.0)) throw ValidationError("ScalingParams: c must be positive");
    if (alpha < 1) throw ValidationError("ScalingParams: alpha must be a positive integer");
    ScalingParams p;
    p.N = N;
    p.c = c;
    p.alpha = alpha;
    p.nu = 4.0 * N + 2.0 * alpha + 2.0;
    p.M = N + 0.5 * (alpha + 1.0);
    p.ellN = 2.0 * N * (2.0 * std::log(2.0) + 1.0);
    return p;
}

ScalingParams ScalingParams::critical(int N, double c) {
    return with_alpha(N, c, critical_alpha(N, c));
}

namespace {

inline bool on_axis(cplx z) { return z.imag() == 0.0; }

void need_side(Side side, const char* what) {
    if (side == Side::Off) throw ValidationError(std::string(what) + ": point on a cut needs a side flag");
}

// f is analytic across the real axis near its base point; any side works.
inline Side any_side(cplx z, Side side) {
    return (side == Side::Off && on_axis(z)) ? Side::Above : side;
}

struct TaylorCache {
    std::array<cplx, 6> coef{};
};

TaylorCache build_taylor(cplx center, cplx (*fn)(cplx, Side)) {
    constexpr int kNodes = 128;
    constexpr double kRho = 0.1;
    TaylorCache tc;
    for (int j = 0; j < kNodes; ++j) {
        const double th = 2.0 * kPi * (j + 0.5) / kNodes;
        const cplx e = std::polar(1.0, th);
        const cplx v = fn(center + kRho * e, Side::Above);
        cplx ek = 1.0;
        for (std::size_t k = 0; k < tc.coef.size(); ++k) {
            tc.coef[k] += v * std::conj(ek);
            ek *= e;
        }
    }
    double rk = 1.0;
    for (auto& a : tc.coef) {
        a /= kNodes * rk;
        rk *= kRho;
    }
    return tc;
}

cplx eval_taylor(const TaylorCache& tc, cplx dz) {
    cplx s = 0.0;
    for (int k = static_cast<int>(tc.coef.size()) - 1; k >= 0; --k) s = s * dz + tc.coef[k];
    return s;
}

cplx f_left_closed(cplx z, Side side) {
    side = any_side(z, side);
    const cplx phi = phi_left(z, side);
    const cplx p32 = std::exp(1.5 * log_left(z - 1.0, side).value);
    const cplx q = 1.5 * phi / p32;
    return (z - 1.0) * std::exp((2.0 / 3.0) * std::log(q));
}

cplx f_right_closed(cplx z, Side side) {
    side = any_side(z, side);
    const cplx phi = phi_right(z, side);
    return 0.25 * phi * phi;
}

template <class F>
cplx newton_invert(F f, cplx xi, cplx z0) {
    cplx z = z0;
    for (int it = 0; it < 60; ++it) {
        const cplx fz = f(z) - xi;
        if (std::abs(fz) < 1e-15 * (1.0 + std::abs(xi))) return z;
        const double h = 1e-6 * (1e-2 + std::abs(z));
        const cplx d = (f(z + h) - f(z - h)) / (2.0 * h);
        z -= fz / d;
    }
    if (std::abs(f(z) - xi) < 1e-11 * (1.0 + std::abs(xi))) return z;
    throw ConvergenceError("conformal map inverse: Newton did not converge");
}

template <class F>
double injectivity_margin(F f, cplx center, double delta, int radial, int angular) {
    std::vector<cplx> pts, vals;
    for (int r = 0; r < radial; ++r)
        for (int a = 0; a < angular; ++a) {
            const cplx z = center + std::polar(delta * (r + 0.5) / radial, 2.0 * kPi * (a + 0.25) / angular);
            pts.push_back(z);
            vals.push_back(f(z));
        }
    double best = 1e300;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::min(best, std::abs(vals[i] - vals[j]) / std::abs(pts[i] - pts[j]));
    return best;
}

}  // namespace

BranchedValue log_left(cplx z, Side side) {
    if (z == cplx(0.0)) throw ValidationError("log_left: z = 0");
    if (on_axis(z) && z.real() < 0.0) {
        need_side(side, "log_left");
        const double lr = std::log(-z.real());
        return {cplx(lr, side == Side::Above ? kPi : -kPi), side};
    }
    return {std::log(z), Side::Off};
}

BranchedValue log_right(cplx z, Side side) {
    if (z == cplx(0.0)) throw ValidationError("log_right: z = 0");
    if (on_axis(z)) {
        if (z.real() < 0.0) return {cplx(std::log(-z.real()), kPi), Side::Off};
        need_side(side, "log_right");
        const double lr = std::log(z.real());
        return {cplx(lr, side == Side::Above ? 0.0 : 2.0 * kPi), side};
    }
    const cplx l = std::log(z);
    return {z.imag() > 0.0 ? l : l + cplx(0.0, 2.0 * kPi), Side::Off};
}

BranchedValue root_left(double gamma, cplx z, Side side) {
    if (z == cplx(0.0) && gamma > 0.0) return {0.0, Side::Off};
    const BranchedValue l = log_left(z, side);
    return {std::exp(gamma * l.value), l.side};
}

BranchedValue root_right(double gamma, cplx z, Side side) {
    if (z == cplx(0.0) && gamma > 0.0) return {0.0, Side::Off};
    const BranchedValue l = log_right(z, side);
    return {std::exp(gamma * l.value), l.side};
}

cplx sqrt_zz1(cplx z, Side side) {
    if (on_axis(z)) {
        const double x = z.real();
        if (x > 0.0 && x < 1.0) {
            need_side(side, "sqrt_zz1");
            const double r = std::sqrt(x * (1.0 - x));
            return {0.0, side == Side::Above ? r : -r};
        }
        if (x <= 0.0) return -std::sqrt(x * (x - 1.0));
        return std::sqrt(x * (x - 1.0));
    }
    return std::sqrt(z) * std::sqrt(z - 1.0);
}

cplx psi_right(cplx z, Side side) {
    return root_right(0.5, z, side).value + root_right(0.5, z - 1.0, side).value;
}

cplx psi_left(cplx z, Side side) {
    return root_left(0.5, z, side).value + root_left(0.5, z - 1.0, side).value;
}

cplx phi_right(cplx z, Side side) {
    if (on_axis(z) && z.real() == 0.0) return 0.0;
    const cplx sq = sqrt_zz1(z, side);
    const cplx psi = psi_right(z, side);
    // psi_right lies in the closed upper half plane; on the lower side of
    // (1, inf) it is negative real and the limit is taken from above
    return 2.0 * sq - 2.0 * log_left(psi, Side::Above).value + cplx(0.0, kPi);
}

cplx phi_left(cplx z, Side side) {
    if (on_axis(z) && z.real() == 1.0) return 0.0;
    const cplx sq = sqrt_zz1(z, side);
    const cplx psi = psi_left(z, side);
    return 2.0 * sq - 2.0 * log_left(psi, Side::Above).value;
}

cplx phi_prime(cplx z, Side side) {
    if (z == cplx(0.0)) throw ValidationError("phi_prime: z = 0");
    return 2.0 * sqrt_zz1(z, side) / z;
}

BranchedValue g_fn(cplx z, Side side) {
    const cplx v = -phi_right(z, side) + 2.0 * z - (2.0 * std::log(2.0) + 1.0) + cplx(0.0, kPi);
    return {v, on_axis(z) && z.real() >= 0.0 ? side : Side::Off};
}

double equilibrium_density(double s) {
    if (!(s > 0.0 && s <= 1.0)) throw ValidationError("equilibrium_density: s must lie in (0, 1]");
    return 2.0 / kPi * std::sqrt((1.0 - s) / s);
}

cplx h_fn(cplx z, double alpha, Side side) {
    if (on_axis(z) && z.real() >= 1.0) side = any_side(z, side);  // h is analytic on (1, inf)
    return -0.5 * alpha * log_right(z, side).value + (alpha + 1.0) * z + cplx(0.0, 0.5 * alpha * kPi) -
           0.5 * alpha * phi_right(z, side) - sqrt_zz1(z, side);
}

cplx hhat_fn(cplx z, double alpha, Side side) {
    if (on_axis(z) && z.real() < 0.0) side = any_side(z, side);  // analytic on (-inf, 0)
    return -0.5 * alpha * log_left(z, side).value + (alpha + 1.0) * z - 0.5 * alpha * phi_left(z, side) -
           sqrt_zz1(z, side);
}

double log_d_infinity(double alpha) { return alpha * std::log(2.0) + 0.5 * (alpha + 1.0); }

cplx w_hat(cplx z, double alpha) { return (2.0 * alpha + 2.0) * z - alpha * std::log(z); }

cplx w_check(cplx z, double alpha, Side side) {
    return (2.0 * alpha + 2.0) * z - alpha * log_right(z, side).value + cplx(0.0, (alpha + 1.0) * kPi);
}

double w_nu(double x, double alpha, double nu) {
    if (x < 0.0) throw ValidationError("w_nu: x must be nonnegative");
    if (x == 0.0) return alpha == 0.0 ? 1.0 : 0.0;
    return std::exp(alpha * std::log(x) - nu * x);
}

cplx f_left(cplx z, Side side) {
    if (!(std::abs(z - 1.0) < 0.5)) throw ValidationError("f_left: need |z - 1| < 1/2");
    if (std::abs(z - 1.0) < 1e-3) {
        static const TaylorCache tc = build_taylor(1.0, f_left_closed);
        return eval_taylor(tc, z - 1.0);
    }
    return f_left_closed(z, side);
}

cplx f_right(cplx z, Side side) {
    if (!(std::abs(z) < 0.5)) throw ValidationError("f_right: need |z| < 1/2");
    if (std::abs(z) < 1e-3) {
        static const TaylorCache tc = build_taylor(0.0, f_right_closed);
        return eval_taylor(tc, z);
    }
    return f_right_closed(z, side);
}

cplx f_left_inverse(cplx xi) {
    return newton_invert([](cplx z) { return f_left(z); }, xi, 1.0 + xi / std::cbrt(4.0));
}

cplx f_right_inverse(cplx xi) {
    return newton_invert([](cplx z) { return f_right(z); }, xi, -0.25 * xi);
}

double injectivity_margin_left(double delta, int radial, int angular) {
    return injectivity_margin([](cplx z) { return f_left(z); }, 1.0, delta, radial, angular);
}

double injectivity_margin_right(double delta, int radial, int angular) {
    return injectivity_margin([](cplx z) { return f_right(z); }, 0.0, delta, radial, angular);
}

}  // namespace critlue
