#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace critlue {

enum class MatrixDist { ComplexGaussian, BernoulliPm1, RealGaussian };
enum class ScalingRule { Square, Double, Critical, Custom };

MatrixDist parse_matrix_dist(const std::string& s);  // lue | pbe | real-gaussian
ScalingRule parse_scaling_rule(const std::string& s);
std::string to_string(MatrixDist d);
std::string to_string(ScalingRule r);

struct EnsembleSpec {
    MatrixDist matrix_dist = MatrixDist::ComplexGaussian;
    ScalingRule scaling_rule = ScalingRule::Critical;
    int N = 1;
    int n = 1;
    double c = 1.0;
    std::uint64_t seed = 0;

    /// n from the rule; n_custom is only read for ScalingRule::Custom.
    static EnsembleSpec make(MatrixDist d, ScalingRule r, int N, double c, std::uint64_t seed, int n_custom = 0);
    void validate() const;
    int alpha() const { return n - N; }
};

/// Counter-based generator: the stream for (seed, index, lane) is fixed, so
/// samples do not depend on which thread draws them.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t index, std::uint64_t lane = 0);
    std::uint64_t next_u64();
    double uniform();       // (0, 1)
    double normal();        // N(0, 1), Box-Muller
    double uniform_pm1();   // U(-1, 1)

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// N x n sample. Complex Gaussian entries have variance 1/2 per part.
Eigen::MatrixXcd sample_matrix(const EnsembleSpec& spec, std::uint64_t sample_index);
/// Right-hand side with iid U(-1, 1) entries (independent lane from the matrix).
Eigen::VectorXcd sample_rhs(const EnsembleSpec& spec, std::uint64_t sample_index);

/// Ascending singular values (LAPACK zgesvd, values only). Needs rows <= cols.
std::vector<double> singular_values(const Eigen::MatrixXcd& X);

struct SpectralSummary {
    std::vector<double> eigenvalues;  // ascending, sigma^2
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double kappa = 0.0;
    bool zero_singular = false;
};

SpectralSummary summarize(const Eigen::MatrixXcd& X, bool keep_eigenvalues = true);
SpectralSummary spectral_summary(const EnsembleSpec& spec, std::uint64_t sample_index, bool keep_eigenvalues = true);
/// Samples first_index .. first_index + count - 1, parallel over samples.
std::vector<SpectralSummary> spectral_batch(const EnsembleSpec& spec, std::size_t count, bool keep_eigenvalues = false,
                                            int threads = 0, std::uint64_t first_index = 0);

/// Empirical CDF of a sample at the points xs.
std::vector<double> empirical_cdf(std::vector<double> sample, const std::vector<double>& xs);

}  // namespace critlue
