#include "critlue/ensembles.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "critlue/common.hpp"
#include "critlue/parallel.hpp"
#include "critlue/rh_scalar.hpp"

namespace critlue {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

MatrixDist parse_matrix_dist(const std::string& s) {
    if (s == "lue" || s == "complex-gaussian") return MatrixDist::ComplexGaussian;
    if (s == "pbe" || s == "bernoulli-pm1") return MatrixDist::BernoulliPm1;
    if (s == "real-gaussian") return MatrixDist::RealGaussian;
    throw ValidationError("unknown ensemble '" + s + "'");
}

ScalingRule parse_scaling_rule(const std::string& s) {
    if (s == "square") return ScalingRule::Square;
    if (s == "double") return ScalingRule::Double;
    if (s == "critical") return ScalingRule::Critical;
    if (s == "custom") return ScalingRule::Custom;
    throw ValidationError("unknown scaling rule '" + s + "'");
}

std::string to_string(MatrixDist d) {
    switch (d) {
        case MatrixDist::ComplexGaussian: return "lue";
        case MatrixDist::BernoulliPm1: return "pbe";
        case MatrixDist::RealGaussian: return "real-gaussian";
    }
    return "?";
}

std::string to_string(ScalingRule r) {
    switch (r) {
        case ScalingRule::Square: return "square";
        case ScalingRule::Double: return "double";
        case ScalingRule::Critical: return "critical";
        case ScalingRule::Custom: return "custom";
    }
    return "?";
}

EnsembleSpec EnsembleSpec::make(MatrixDist d, ScalingRule r, int N, double c, std::uint64_t seed, int n_custom) {
    if (N < 1) throw ValidationError("ensemble: N must be >= 1");
    EnsembleSpec s;
    s.matrix_dist = d;
    s.scaling_rule = r;
    s.N = N;
    s.c = c;
    s.seed = seed;
    switch (r) {
        case ScalingRule::Square: s.n = N; break;
        case ScalingRule::Double: s.n = 2 * N; break;
        case ScalingRule::Critical: s.n = N + critical_alpha(N, c); break;
        case ScalingRule::Custom: s.n = n_custom; break;
    }
    s.validate();
    return s;
}

void EnsembleSpec::validate() const {
    if (N < 1) throw ValidationError("ensemble: N must be >= 1");
    if (n < N) throw ValidationError("ensemble: need n >= N");
    if (scaling_rule == ScalingRule::Critical && !(c > 0.0)) throw ValidationError("ensemble: c must be positive");
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index, std::uint64_t lane)
    : key_(splitmix(splitmix(splitmix(seed) ^ index) ^ (lane * 0xd1b54a32d192ed03ULL))) {}

std::uint64_t CounterRng::next_u64() { return splitmix(key_ ^ splitmix(counter_++)); }

double CounterRng::uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

double CounterRng::uniform_pm1() { return 2.0 * uniform() - 1.0; }

double CounterRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double th = 2.0 * kPi * uniform();
    spare_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
}

Eigen::MatrixXcd sample_matrix(const EnsembleSpec& spec, std::uint64_t sample_index) {
    spec.validate();
    CounterRng rng(spec.seed, sample_index, 0);
    Eigen::MatrixXcd X(spec.N, spec.n);
    const double h = std::sqrt(0.5);
    for (int j = 0; j < spec.n; ++j)
        for (int i = 0; i < spec.N; ++i) {
            switch (spec.matrix_dist) {
                case MatrixDist::ComplexGaussian: {
                    const double re = rng.normal(), im = rng.normal();
                    X(i, j) = cplx(h * re, h * im);
                    break;
                }
                case MatrixDist::BernoulliPm1:
                    X(i, j) = (rng.next_u64() >> 63) ? 1.0 : -1.0;
                    break;
                case MatrixDist::RealGaussian:
                    X(i, j) = rng.normal();
                    break;
            }
        }
    return X;
}

Eigen::VectorXcd sample_rhs(const EnsembleSpec& spec, std::uint64_t sample_index) {
    CounterRng rng(spec.seed, sample_index, 1);
    Eigen::VectorXcd b(spec.N);
    for (int i = 0; i < spec.N; ++i) b(i) = rng.uniform_pm1();
    return b;
}

std::vector<double> singular_values(const Eigen::MatrixXcd& X) {
    const lapack_int m = static_cast<lapack_int>(X.rows()), n = static_cast<lapack_int>(X.cols());
    if (m < 1 || m > n) throw ValidationError("singular_values: need 1 <= rows <= cols");
    Eigen::MatrixXcd A = X;  // zgesvd overwrites its input
    std::vector<double> s(m), superb(m > 1 ? m - 1 : 1);
    const lapack_int info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', 'N', m, n,
                                           reinterpret_cast<lapack_complex_double*>(A.data()), m, s.data(), nullptr,
                                           1, nullptr, 1, superb.data());
    if (info > 0) throw ConvergenceError("singular_values: bidiagonal QR did not converge");
    if (info < 0) throw ValidationError("singular_values: bad argument to zgesvd");
    std::sort(s.begin(), s.end());
    return s;
}

SpectralSummary summarize(const Eigen::MatrixXcd& X, bool keep_eigenvalues) {
    const auto s = singular_values(X);
    SpectralSummary r;
    r.lambda_min = s.front() * s.front();
    r.lambda_max = s.back() * s.back();
    r.zero_singular = s.front() == 0.0;
    r.kappa = r.zero_singular ? INFINITY : r.lambda_max / r.lambda_min;
    if (keep_eigenvalues) {
        r.eigenvalues.reserve(s.size());
        for (double v : s) r.eigenvalues.push_back(v * v);
    }
    return r;
}

SpectralSummary spectral_summary(const EnsembleSpec& spec, std::uint64_t sample_index, bool keep_eigenvalues) {
    return summarize(sample_matrix(spec, sample_index), keep_eigenvalues);
}

std::vector<SpectralSummary> spectral_batch(const EnsembleSpec& spec, std::size_t count, bool keep_eigenvalues,
                                            int threads, std::uint64_t first_index) {
    if (count < 1) throw ValidationError("spectral_batch: need at least one sample");
    std::vector<SpectralSummary> out(count);
    parallel_for(
        count, [&](std::size_t i) { out[i] = spectral_summary(spec, first_index + i, keep_eigenvalues); }, threads);
    return out;
}

std::vector<double> empirical_cdf(std::vector<double> sample, const std::vector<double>& xs) {
    std::sort(sample.begin(), sample.end());
    std::vector<double> f;
    f.reserve(xs.size());
    for (double x : xs) {
        const auto k = std::upper_bound(sample.begin(), sample.end(), x) - sample.begin();
        f.push_back(static_cast<double>(k) / static_cast<double>(sample.size()));
    }
    return f;
}

}  // namespace critlue
