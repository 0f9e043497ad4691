#include "critlue/cg.hpp"

#include <cmath>

#include "critlue/common.hpp"
#include "critlue/parallel.hpp"

namespace critlue {

double kaniel_factor(double kappa, int k) { return 2.0 * std::pow(1.0 + 2.0 / std::sqrt(kappa), -2.0 * k); }

HaltingRecord cg_halting(const LinearOperator& A, const Eigen::VectorXcd& b, double kappa, const CgOptions& opt) {
    if (!(opt.eps > 0.0)) throw ValidationError("cg_halting: eps must be positive");
    if (opt.cap_factor < 1) throw ValidationError("cg_halting: cap factor must be >= 1");
    const Eigen::Index n = b.size();
    const int cap = opt.cap_factor * static_cast<int>(n);

    HaltingRecord rec;
    rec.kappa = kappa;
    Eigen::VectorXcd x = opt.x0_is_b ? b : Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd Ap(n);
    Eigen::VectorXcd r = b;
    if (opt.x0_is_b) {
        A(x, Ap);
        r -= Ap;
    }
    Eigen::VectorXcd p = r;
    double rr = r.squaredNorm();
    const double r0 = std::sqrt(rr);
    rec.residual_norms.push_back(r0);

    int k = 0;
    while (std::sqrt(rr) > opt.eps) {
        if (k >= cap) {
            rec.cap_hit = true;
            break;
        }
        A(p, Ap);
        const double pAp = p.dot(Ap).real();  // <p, Ap>, conjugate-linear in p
        if (!(pAp > 0.0)) {
            rec.breakdown_at = k + 1;
            break;
        }
        const double a = rr / pAp;
        x += a * p;
        r -= a * Ap;
        const double rr_new = r.squaredNorm();
        p = r + (rr_new / rr) * p;
        rr = rr_new;
        ++k;
        const double rn = std::sqrt(rr);
        if (rn > rec.residual_norms.back() * (1.0 + opt.monotone_slack)) ++rec.monotone_violations;
        rec.residual_norms.push_back(rn);
    }
    rec.T = k;
    if (kappa > 0.0 && std::isfinite(kappa)) {
        for (int j = 0; j < static_cast<int>(rec.residual_norms.size()); ++j)
            if (rec.residual_norms[j] > kaniel_factor(kappa, j) * r0) {
                rec.kaniel_ok = false;
                break;
            }
    } else {
        rec.kaniel_ok = false;
    }
    return rec;
}

HaltingRecord cg_halting_dense(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double kappa,
                               const CgOptions& opt) {
    if (A.rows() != A.cols() || A.rows() != b.size()) throw ValidationError("cg_halting: dimension mismatch");
    return cg_halting([&A](const Eigen::VectorXcd& v, Eigen::VectorXcd& y) { y.noalias() = A * v; }, b, kappa, opt);
}

HaltingRecord cg_halting_factor(const Eigen::MatrixXcd& X, const Eigen::VectorXcd& b, double kappa,
                                const CgOptions& opt) {
    if (X.rows() != b.size()) throw ValidationError("cg_halting: dimension mismatch");
    Eigen::VectorXcd t(X.cols());
    return cg_halting(
        [&X, &t](const Eigen::VectorXcd& v, Eigen::VectorXcd& y) {
            t.noalias() = X.adjoint() * v;
            y.noalias() = X * t;
        },
        b, kappa, opt);
}

MomentSummary moments(const std::vector<double>& xs) {
    const std::size_t m = xs.size();
    if (m < 2) throw ValidationError("moments: need at least two samples");
    MomentSummary s;
    s.sample_count = m;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / m;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - s.mean, d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    s.variance = m2 / (m - 1.0);
    m2 /= m;
    m3 /= m;
    m4 /= m;
    if (m2 > 0.0) {
        s.skewness = m3 / std::pow(m2, 1.5);
        s.kurtosis = m4 / (m2 * m2);
    }
    return s;
}

Fluctuations fluctuations(const std::vector<double>& halting_times) {
    Fluctuations f;
    f.summary = moments(halting_times);
    if (!(f.summary.variance > 0.0)) throw ValidationError("fluctuations: zero variance (all halting times equal)");
    const double sd = std::sqrt(f.summary.variance);
    f.tau.reserve(halting_times.size());
    for (double t : halting_times) f.tau.push_back((t - f.summary.mean) / sd);
    return f;
}

std::vector<CgSample> cg_batch(const EnsembleSpec& spec, std::size_t count, const CgOptions& opt, int threads,
                               bool keep_residuals) {
    if (count < 1) throw ValidationError("cg_batch: need at least one sample");
    std::vector<CgSample> out(count);
    parallel_for(
        count,
        [&](std::size_t i) {
            const Eigen::MatrixXcd X = sample_matrix(spec, i);
            const Eigen::VectorXcd b = sample_rhs(spec, i);
            const auto s = summarize(X, false);
            out[i].sample_index = i;
            out[i].record = opt.dense ? cg_halting_dense(X * X.adjoint(), b, s.kappa, opt)
                                      : cg_halting_factor(X, b, s.kappa, opt);
            if (!keep_residuals) {
                // keep the count of monotone violations, drop the history
                out[i].record.residual_norms.shrink_to_fit();
                std::vector<double>().swap(out[i].record.residual_norms);
            }
        },
        threads);
    return out;
}

}  // namespace critlue
