#include <Eigen/Eigenvalues>

#include <cmath>
#include <set>

#include "critlue/cg.hpp"
#include "critlue/common.hpp"
#include "doctest.h"

using namespace critlue;

namespace {

CgOptions zero_start() {
    CgOptions o;
    o.x0_is_b = false;
    return o;
}

}  // namespace

TEST_SUITE("cg") {

TEST_CASE("identity converges in one step from zero") {
    const Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(5, 5);
    Eigen::VectorXcd b(5);
    b << 1.0, -2.0, cplx(0, 1), 0.5, 3.0;
    const auto r = cg_halting_dense(A, b, 1.0, zero_start());
    CHECK(r.T == 1);
    CHECK(r.residual_norms.back() == 0.0);
    // x0 = b already solves it
    CHECK(cg_halting_dense(A, b, 1.0).T == 0);
}

TEST_CASE("two distinct eigenvalues take two steps") {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = 2.0;
    Eigen::VectorXcd b(2);
    b << 1.0, 1.0;
    const auto r = cg_halting_dense(A, b, 2.0, zero_start());
    CHECK(r.T == 2);
    CHECK(r.residual_norms.size() == 3);
    CHECK(r.residual_norms.back() <= 1e-14);
    CHECK(!r.cap_hit);
}

TEST_CASE("CG solves a Hermitian system and agrees with a direct solve") {
    const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, ScalingRule::Double, 30, 1.0, 4);
    const auto X = sample_matrix(spec, 0);
    const auto b = sample_rhs(spec, 0);
    const Eigen::MatrixXcd A = X * X.adjoint();
    const auto s = summarize(X);
    const auto rd = cg_halting_dense(A, b, s.kappa), rf = cg_halting_factor(X, b, s.kappa);
    CHECK(rd.T > 0);
    CHECK(std::abs(rd.T - rf.T) <= 2);
    CHECK(rf.residual_norms.back() <= 1e-14);
    for (std::size_t k = 0; k + 1 < rf.residual_norms.size(); ++k) CHECK(rf.residual_norms[k] > 1e-14);
    CHECK(rd.breakdown_at == -1);
}

TEST_CASE("iteration cap and breakdown are reported") {
    const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, ScalingRule::Square, 20, 1.0, 4);
    const auto X = sample_matrix(spec, 0);
    const auto b = sample_rhs(spec, 0);
    CgOptions o;
    o.cap_factor = 1;
    o.eps = 1e-300;
    const auto r = cg_halting_factor(X, b, summarize(X).kappa, o);
    CHECK(r.cap_hit);
    CHECK(r.T == 20);
    // indefinite operator
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = -1.0;
    Eigen::VectorXcd v(2);
    v << 1.0, 1.0;
    const auto bad = cg_halting_dense(A, v, 1.0, zero_start());
    CHECK(bad.breakdown_at == 1);  // the first step already fails
}

TEST_CASE("Kaniel flag follows the stated bound") {
    CHECK(kaniel_factor(4.0, 0) == 2.0);
    CHECK(kaniel_factor(4.0, 1) == doctest::Approx(0.5));
    const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, ScalingRule::Double, 50, 1.0, 7);
    for (const auto& s : cg_batch(spec, 10, {}, 1, true)) {
        const auto& r = s.record;
        bool ok = true;
        for (std::size_t k = 0; k < r.residual_norms.size(); ++k)
            ok = ok && r.residual_norms[k] <= kaniel_factor(r.kappa, static_cast<int>(k)) * r.residual_norms[0];
        CHECK(r.kaniel_ok == ok);
    }
}

TEST_CASE("energy norm error decreases monotonically") {
    // the quantity CG minimizes; the 2-norm residual need not be monotone
    const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, ScalingRule::Critical, 40, 1.0, 12);
    const auto X = sample_matrix(spec, 0);
    const auto b = sample_rhs(spec, 0);
    const Eigen::MatrixXcd A = X * X.adjoint();
    const Eigen::VectorXcd xs = A.ldlt().solve(b);
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(b.size()), r = b, p = r;
    double prev = std::real((xs - x).dot(A * (xs - x)));
    for (int k = 0; k < 30; ++k) {
        const Eigen::VectorXcd Ap = A * p;
        const cplx a = r.squaredNorm() / p.dot(Ap);
        x += a * p;
        const Eigen::VectorXcd rn = r - a * Ap;
        p = rn + (rn.squaredNorm() / r.squaredNorm()) * p;
        r = rn;
        const double e = std::real((xs - x).dot(A * (xs - x)));
        CHECK(e <= prev * (1.0 + 1e-8));
        prev = e;
    }
}

TEST_CASE("moments and fluctuations") {
    const auto f = fluctuations({1.0, 2.0, 3.0});
    CHECK(f.summary.mean == 2.0);
    CHECK(f.summary.variance == 1.0);
    CHECK(f.tau == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(moments({1.0, 2.0, 2.0, 3.0}).skewness == 0.0);
    CHECK_THROWS_AS(fluctuations({4.0, 4.0, 4.0}), ValidationError);
    CHECK_THROWS_AS(fluctuations({4.0}), ValidationError);
    const std::vector<double> xs{3.0, 7.0, 1.0, 1.0, 12.0, 5.0, 8.0};
    const auto m = moments(xs);
    CHECK(m.variance >= 0.0);
    CHECK(m.kurtosis >= 1.0 + m.skewness * m.skewness);
    const auto t = fluctuations(xs).tau;
    double s = 0.0, s2 = 0.0;
    for (double v : t) s += v;
    for (double v : t) s2 += (v - s / t.size()) * (v - s / t.size());
    CHECK(std::abs(s / t.size()) < 1e-12);
    CHECK(std::abs(s2 / (t.size() - 1) - 1.0) < 1e-12);
    // normal sample: skewness 0, kurtosis 3 with the 1/M convention
    CounterRng g(1, 0);
    std::vector<double> z(200000);
    for (double& v : z) v = g.normal();
    const auto mz = moments(z);
    CHECK(std::abs(mz.skewness) < 0.02);
    CHECK(std::abs(mz.kurtosis - 3.0) < 0.04);
}

TEST_CASE("well conditioned halting times are discrete") {
    const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, ScalingRule::Double, 100, 1.0, 3);
    std::set<int> ts;
    for (const auto& s : cg_batch(spec, 200, {}, 1)) ts.insert(s.record.T);
    CHECK(ts.size() <= 15);
}

TEST_CASE("batches are reproducible across thread counts") {
    const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, ScalingRule::Critical, 30, 1.0, 5);
    const auto a = cg_batch(spec, 8, {}, 1), b = cg_batch(spec, 8, {}, 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].record.T == b[i].record.T);
        CHECK(a[i].record.kappa == b[i].record.kappa);
    }
}

TEST_CASE("dense batches match per-sample dense runs") {
    const auto spec = EnsembleSpec::make(MatrixDist::ComplexGaussian, ScalingRule::Double, 20, 1.0, 6);
    CgOptions o = zero_start();
    o.dense = true;
    const auto batch = cg_batch(spec, 4, o, 1, true);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const auto X = sample_matrix(spec, i);
        const Eigen::MatrixXcd A = X * X.adjoint();
        const auto r = cg_halting_dense(A, sample_rhs(spec, i), summarize(X).kappa, o);
        CHECK(batch[i].record.T == r.T);
        CHECK(batch[i].record.residual_norms == r.residual_norms);
        CHECK(batch[i].record.kappa == doctest::Approx(r.kappa).epsilon(1e-12));
    }
}

}
