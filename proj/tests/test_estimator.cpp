// Copyright 2026 The chaostomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "chaostomo/errors.hpp"
#include "chaostomo/estimator.hpp"
#include "test_support.hpp"

using namespace chaostomo;
using chaostomo::testing::pure_density;
using chaostomo::testing::stacked_cue_series;

namespace {

// Exhaustive active-set search for the simplex projection: the projection is
// the unique support S with p_i = v_i - theta > 0 on S and v_i <= theta off S.
Eigen::VectorXd simplex_oracle(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(v.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
        double sum = 0.0;
        int count = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1 << i)) {
                sum += v(i);
                ++count;
            }
        }
        const double theta = (sum - 1.0) / count;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            const bool in = mask & (1 << i);
            ok = ok && (in ? v(i) - theta > 0.0 : v(i) - theta <= 0.0);
        }
        if (ok) return (v.array() - theta).cwiseMax(0.0).matrix();
    }
    FAIL("no active set found");
    return v;
}

double min_eigenvalue(const Operator& rho) {
    return Eigen::SelfAdjointEigenSolver<Operator>(rho, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

}  // namespace

TEST_CASE("covariance inverse") {
    SUBCASE("identity design") {
        const DesignMatrix design = DesignMatrix::Identity(8, 8);
        const CovarianceInfo cov = covariance_inverse(design, 0.0);
        CHECK((cov.cinv - Eigen::MatrixXd::Identity(8, 8)).norm() == 0.0);
        CHECK(cov.trace() == doctest::Approx(8.0));
    }
    SUBCASE("single row is an outer product") {
        DesignMatrix design(1, 5);
        design << 1, -2, 0.5, 3, 0;
        const CovarianceInfo cov = covariance_inverse(design, 0.1);
        const Eigen::VectorXd v = design.row(0).transpose();
        CHECK((cov.cinv - v * v.transpose()).norm() <= 1e-14);
        CHECK((cov.cinv_reg - cov.cinv - 0.1 * Eigen::MatrixXd::Identity(5, 5)).norm() <= 1e-14);
        CHECK(cov.spectrum(4) == doctest::Approx(v.squaredNorm()));
        CHECK(cov.spectrum.head(4).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("kicked top trace and spectrum") {
        const Spin j = Spin::from_value(10);
        const auto series = heisenberg_series(build_floquet({j, 1.4, 7.0}), build_jz(j), 100);
        const DesignMatrix design = design_matrix(series, gell_mann_basis(21));
        const CovarianceInfo cov = covariance_inverse(design, 0.0);
        CHECK(std::abs(cov.cinv.trace() - 77000.0) / 77000.0 <= 1e-9);
        CHECK(std::abs(cov.trace() - 77000.0) / 77000.0 <= 1e-9);
        CHECK((cov.cinv - cov.cinv.transpose()).norm() == 0.0);
        CHECK(cov.spectrum(0) >= -1e-10);
        // Gram-route spectrum against a direct eigendecomposition
        const CovarianceInfo direct = CovarianceInfo::from_matrix(cov.cinv, 0.0);
        CHECK((direct.spectrum - cov.spectrum).cwiseAbs().maxCoeff() <= 1e-8 * cov.spectrum(439));
    }
    CHECK_THROWS_AS(covariance_inverse(DesignMatrix::Identity(2, 2), -1.0), ParameterError);
}

TEST_CASE("ml estimate") {
    const Spin j = Spin::from_value(1);
    const OperatorBasis basis = gell_mann_basis(3);
    const auto series = stacked_cue_series(j, 4, 10, 11);
    const DesignMatrix design = design_matrix(series, basis);
    REQUIRE(Eigen::FullPivLU<Eigen::MatrixXd>(design).rank() == 8);

    SUBCASE("zero record") {
        const Record zero{Eigen::VectorXd::Zero(design.rows()), 0.0};
        CHECK(ml_estimate(design, zero, 1e-3).norm() == 0.0);
    }
    SUBCASE("exact recovery on an informationally complete record") {
        SeededRng rng(12, stream_id(StreamPurpose::Test, 1));
        for (int t = 0; t < 5; ++t) {
            const Operator rho = pure_density(haar_pure_state(3, rng));
            const Record rec = simulate_record(rho, series, 0.0, rng);
            const BlochVector r = ml_estimate(design, rec, 1e-12);
            CHECK((r - bloch_from_density(rho, basis)).cwiseAbs().maxCoeff() <= 1e-6);
        }
    }
    SUBCASE("shrinkage") {
        SeededRng rng(13, stream_id(StreamPurpose::Test, 2));
        const Record rec = simulate_record(pure_density(haar_pure_state(3, rng)), series, 0.05, rng);
        for (double eps : {1e-3, 1e-1, 10.0, 1e3}) {
            CHECK(ml_estimate(design, rec, 10 * eps).norm() < ml_estimate(design, rec, eps).norm());
        }
    }
    SUBCASE("small-n route matches the normal equations") {
        const DesignMatrix few = design.topRows(5);
        SeededRng rng(14, stream_id(StreamPurpose::Test, 3));
        const Record rec = simulate_record(pure_density(haar_pure_state(3, rng)), series, 0.05, rng);
        const Record head{rec.values.head(5), 0.05};
        Eigen::MatrixXd normal = few.transpose() * few;
        normal.diagonal().array() += 0.01;
        const Eigen::VectorXd oracle = normal.ldlt().solve(few.transpose() * head.values);
        CHECK((ml_estimate(few, head, 0.01) - oracle).norm() <= 1e-12);
    }
    SUBCASE("singular system") {
        const Record rec{Eigen::VectorXd::Zero(3), 0.0};
        CHECK_THROWS_AS(ml_estimate(design.topRows(3), rec, 0.0), SolverError);
        DesignMatrix repeated(10, 8);
        for (int i = 0; i < 10; ++i) repeated.row(i) = design.row(0);
        CHECK_THROWS_AS(ml_estimate(repeated, Record{Eigen::VectorXd::Ones(10), 0.0}, 0.0), SolverError);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(ml_estimate(design, Record{Eigen::VectorXd::Zero(2), 0.0}, 1.0), ParameterError);
    }
}

TEST_CASE("simplex and density projections") {
    SUBCASE("worked example") {
        Operator H = Operator::Zero(3, 3);
        H.diagonal() << 0.9, 0.3, -0.2;
        Operator expected = Operator::Zero(3, 3);
        expected.diagonal() << 0.8, 0.2, 0.0;
        CHECK(max_abs(project_psd_trace1(H) - expected) <= 1e-12);
        CHECK((simplex_oracle(Eigen::Vector3d(0.9, 0.3, -0.2)) - Eigen::Vector3d(0.8, 0.2, 0.0)).norm() <= 1e-15);
    }
    SUBCASE("agrees with the active-set oracle") {
        SeededRng rng(15, stream_id(StreamPurpose::Test, 4));
        for (int t = 0; t < 200; ++t) {
            const int n = 2 + t % 5;
            Eigen::VectorXd v(n);
            for (int i = 0; i < n; ++i) v(i) = 0.6 * rng.normal();
            CHECK((project_simplex(v) - simplex_oracle(v)).cwiseAbs().maxCoeff() <= 1e-14);
        }
    }
    SUBCASE("idempotent, feasible, fixes density matrices") {
        SeededRng rng(16, stream_id(StreamPurpose::Test, 5));
        for (int t = 0; t < 30; ++t) {
            const int d = 2 + t % 6;
            Operator G(d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) G(r, c) = rng.complex_normal();
            const Operator H = 0.5 * (G + G.adjoint());
            const Operator P = project_psd_trace1(H);
            CHECK(std::abs(P.trace() - Complex(1.0, 0.0)) <= 1e-12);
            CHECK(min_eigenvalue(P) >= -1e-12);
            CHECK(max_abs(project_psd_trace1(P) - P) <= 1e-12);

            Operator rho = G * G.adjoint();
            rho /= rho.trace().real();
            CHECK(max_abs(project_psd_trace1(rho) - rho) <= 1e-12);
        }
    }
}

TEST_CASE("constrained estimate") {
    SUBCASE("feasible unconstrained optimum is returned as is") {
        const Spin j = Spin::from_value(1);
        const OperatorBasis basis = gell_mann_basis(3);
        const auto series = stacked_cue_series(j, 4, 10, 21);
        const DesignMatrix design = design_matrix(series, basis);
        // interior state, so the ML point stays positive under small noise
        Operator rho = Operator::Identity(3, 3) / 3.0;
        rho(0, 1) = rho(1, 0) = 0.05;
        SeededRng rng(22, stream_id(StreamPurpose::Test, 6));
        const Record rec = simulate_record(rho, series, 0.001, rng);
        SolverOptions opts;
        // plain least squares by orthogonal decomposition
        const BlochVector ls = Eigen::MatrixXd(design).colPivHouseholderQr().solve(rec.values);
        const Operator ml = density_from_bloch(ls, basis);
        REQUIRE(min_eigenvalue(ml) > 0.0);
        const ConstrainedResult est = constrained_estimate(design, rec, basis, opts);
        CHECK(est.residual <= residual(design, rec, ls) * (1.0 + 1e-8));
        CHECK(max_abs(est.rho - ml) <= 1e-5);
        CHECK(est.converged);
    }
    SUBCASE("kicked-top records: optimality, monotonicity, positivity") {
        const Spin j = Spin::from_value(2);
        const OperatorBasis basis = gell_mann_basis(5);
        const auto series = heisenberg_series(build_floquet({j, 1.4, 7.0}), build_jz(j), 30);
        const DesignMatrix design = design_matrix(series, basis);
        SolverOptions opts;
        opts.record_history = true;
        SeededRng rng(23, stream_id(StreamPurpose::Test, 7));
        for (int t = 0; t < 10; ++t) {
            const Operator rho0 = pure_density(haar_pure_state(5, rng));
            const Record rec = simulate_record(rho0, series, 0.02, rng);
            const ConstrainedResult est = constrained_estimate(design, rec, basis, opts);
            CHECK(est.residual <= residual(design, rec, bloch_from_density(rho0, basis)) + 1e-8);
            CHECK(std::abs(est.residual - residual(design, rec, est.bloch)) <= 1e-12 * (1.0 + est.residual));
            CHECK(min_eigenvalue(est.rho) >= -1e-8);
            CHECK(std::abs(est.rho.trace() - Complex(1.0, 0.0)) <= 1e-12);
            CHECK(is_hermitian(est.rho, 1e-12));
            // the unconstrained ML residual is a lower bound
            const BlochVector ml = Eigen::MatrixXd(design).completeOrthogonalDecomposition().solve(rec.values);
            CHECK(est.residual >= residual(design, rec, ml) - 1e-8);
            for (std::size_t k = 1; k < est.history.size(); ++k) {
                CHECK(est.history[k] <= est.history[k - 1] + 1e-12);
            }
        }
    }
    SUBCASE("exact recovery with positivity") {
        const Spin j = Spin::from_value(1);
        const OperatorBasis basis = gell_mann_basis(3);
        const auto series = stacked_cue_series(j, 4, 10, 31);
        const DesignMatrix design = design_matrix(series, basis);
        SeededRng rng(32, stream_id(StreamPurpose::Test, 8));
        for (int t = 0; t < 5; ++t) {
            const StateVector psi = haar_pure_state(3, rng);
            const Record rec = simulate_record(pure_density(psi), series, 0.0, rng);
            const ConstrainedResult est = constrained_estimate(design, rec, basis, SolverOptions{});
            CHECK(std::real(psi.dot(est.rho * psi)) >= 1.0 - 1e-6);
        }
    }
    SUBCASE("warm start is used only when it is better") {
        const Spin j = Spin::from_value(1);
        const OperatorBasis basis = gell_mann_basis(3);
        const auto series = stacked_cue_series(j, 2, 3, 41);
        const DesignMatrix design = design_matrix(series, basis);
        SeededRng rng(42, stream_id(StreamPurpose::Test, 9));
        const Operator rho0 = pure_density(haar_pure_state(3, rng));
        const Record rec = simulate_record(rho0, series, 0.01, rng);
        SolverOptions opts;
        opts.max_iters = 1;
        opts.record_history = true;
        const ConstrainedResult cold = constrained_estimate(design, rec, basis, opts);
        const ConstrainedResult warm = constrained_estimate(design, rec, basis, opts, bloch_from_density(rho0, basis));
        CHECK(warm.history.front() <= cold.history.front());
        CHECK(warm.history.front() <= residual(design, rec, bloch_from_density(rho0, basis)) + 1e-12);
    }
    SUBCASE("iteration cap reports non-convergence") {
        const Spin j = Spin::from_value(10);
        const OperatorBasis basis = gell_mann_basis(21);
        const auto series = heisenberg_series(build_floquet({j, 1.4, 0.5}), build_jz(j), 40);
        const DesignMatrix design = design_matrix(series, basis);
        SeededRng rng(43, stream_id(StreamPurpose::Test, 10));
        const Record rec = simulate_record(pure_density(haar_pure_state(21, rng)), series, 0.1, rng);
        SolverOptions opts;
        opts.max_iters = 3;
        const ConstrainedResult est = constrained_estimate(design, rec, basis, opts);
        CHECK_FALSE(est.converged);
        CHECK(est.iterations == 3);
        CHECK(min_eigenvalue(est.rho) >= -1e-8);
    }
    SUBCASE("option validation") {
        SolverOptions bad;
        bad.max_iters = 0;
        CHECK_THROWS_AS(bad.validate(), ParameterError);
        bad = SolverOptions{};
        bad.rel_obj_tol = 0.0;
        CHECK_THROWS_AS(bad.validate(), ParameterError);
    }
}
