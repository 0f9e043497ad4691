#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "critlue/ensembles.hpp"

namespace critlue {

/// y = A x.
using LinearOperator = std::function<void(const Eigen::VectorXcd& x, Eigen::VectorXcd& y)>;

struct CgOptions {
    double eps = 1e-14;
    int cap_factor = 10;       // iteration cap = cap_factor * N
    bool x0_is_b = true;       // false: x0 = 0
    bool dense = false;        // cg_batch: form A = X X^* instead of applying X (X^* v)
    double monotone_slack = 1e-2;
};

struct HaltingRecord {
    int T = 0;                          // first k with ||r_k|| <= eps (cap if never)
    std::vector<double> residual_norms;  // ||r_0|| .. ||r_T||
    double kappa = 0.0;
    bool kaniel_ok = true;
    bool cap_hit = false;
    int breakdown_at = -1;  // iteration where <p, Ap> <= 0, -1 if none
    int monotone_violations = 0;
};

HaltingRecord cg_halting(const LinearOperator& A, const Eigen::VectorXcd& b, double kappa, const CgOptions& opt = {});
HaltingRecord cg_halting_dense(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double kappa,
                               const CgOptions& opt = {});
/// A = X X^*, applied as X (X^* v).
HaltingRecord cg_halting_factor(const Eigen::MatrixXcd& X, const Eigen::VectorXcd& b, double kappa,
                                const CgOptions& opt = {});

/// 2 (1 + 2/sqrt(kappa))^{-2k}.
double kaniel_factor(double kappa, int k);

struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;  // 1/(M-1)
    double skewness = 0.0;  // central moments with 1/M
    double kurtosis = 0.0;
    std::size_t sample_count = 0;
};

MomentSummary moments(const std::vector<double>& xs);

struct Fluctuations {
    MomentSummary summary;
    std::vector<double> tau;
};

Fluctuations fluctuations(const std::vector<double>& halting_times);

/// One CG run per sample of the ensemble (matrix + rhs), parallel over samples.
struct CgSample {
    std::uint64_t sample_index = 0;
    HaltingRecord record;
};

std::vector<CgSample> cg_batch(const EnsembleSpec& spec, std::size_t count, const CgOptions& opt = {}, int threads = 0,
                               bool keep_residuals = false);

}  // namespace critlue
