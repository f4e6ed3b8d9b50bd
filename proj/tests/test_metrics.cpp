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
#include "chaostomo/metrics.hpp"
#include "test_support.hpp"

using namespace chaostomo;
using chaostomo::testing::pure_density;

namespace {

Eigen::MatrixXd random_pd(int n, SeededRng& rng) {
    Eigen::MatrixXd G(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) G(r, c) = rng.normal();
    return G * G.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
}

Eigen::MatrixXd random_orthogonal(int n, SeededRng& rng) {
    Eigen::MatrixXd G(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) G(r, c) = rng.normal();
    return Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ();
}

}  // namespace

TEST_CASE("fidelity") {
    SeededRng rng(51, stream_id(StreamPurpose::Test, 1));
    const StateVector psi = haar_pure_state(5, rng);
    CHECK(fidelity(psi, pure_density(psi)) == doctest::Approx(1.0).epsilon(1e-14));
    // orthogonal complement vector
    StateVector phi = haar_pure_state(5, rng);
    phi -= psi.dot(phi) * psi;
    phi.normalize();
    CHECK(fidelity(psi, pure_density(phi)) <= 1e-14);
    CHECK(fidelity(psi, Operator::Identity(5, 5) / 5.0) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK_THROWS_AS(fidelity(psi, Operator::Identity(4, 4) / 4.0), ParameterError);
    CHECK_THROWS_AS(fidelity(psi, 2.0 * pure_density(psi)), ValidationError);
}

TEST_CASE("fisher information") {
    const CovarianceInfo unit = CovarianceInfo::from_matrix(Eigen::MatrixXd::Identity(440, 440), 0.0);
    CHECK(fisher_info(unit) == doctest::Approx(1.0 / 440.0).epsilon(1e-13));

    Eigen::VectorXd a(4);
    a << 0.5, 2.0, 3.0, 10.0;
    const CovarianceInfo diag = CovarianceInfo::from_matrix(a.asDiagonal().toDenseMatrix(), 0.0);
    CHECK(fisher_info(diag) == doctest::Approx(1.0 / (a.cwiseInverse().sum())).epsilon(1e-14));

    // adding a measurement row never lowers the information (fixed eps)
    SeededRng rng(52, stream_id(StreamPurpose::Test, 2));
    for (int t = 0; t < 20; ++t) {
        DesignMatrix design(6, 8);
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 8; ++c) design(r, c) = rng.normal();
        for (int n = 1; n < 6; ++n) {
            const double before = fisher_info(covariance_inverse(design.topRows(n), 1e-3));
            const double after = fisher_info(covariance_inverse(design.topRows(n + 1), 1e-3));
            CHECK(after >= before * (1.0 - 1e-12));
        }
    }
    CHECK_THROWS_AS(fisher_info(CovarianceInfo::from_matrix(Eigen::MatrixXd::Zero(3, 3), 0.0)), NumericError);
}

TEST_CASE("mutual information") {
    CHECK(mutual_information(CovarianceInfo::from_matrix(Eigen::MatrixXd::Identity(440, 440), 0.0)) ==
          doctest::Approx(0.0));
    const CovarianceInfo scaled = CovarianceInfo::from_matrix(3.0 * Eigen::MatrixXd::Identity(440, 440), 0.0);
    CHECK(mutual_information(scaled) == doctest::Approx(220.0 * std::log(3.0)).epsilon(1e-13));

    SeededRng rng(53, stream_id(StreamPurpose::Test, 3));
    for (int t = 0; t < 10; ++t) {
        const Eigen::MatrixXd cinv = random_pd(5, rng);
        const CovarianceInfo cov = CovarianceInfo::from_matrix(cinv, 0.01);
        // oracle: explicit covariance and its LU determinant
        const Eigen::MatrixXd C = cov.cinv_reg.inverse();
        CHECK(std::abs(mutual_information(cov) + 0.5 * std::log(C.determinant())) <= 1e-9);
    }
    CHECK_THROWS_AS(mutual_information(CovarianceInfo::from_matrix(Eigen::MatrixXd::Zero(3, 3), 0.0)), NumericError);
}

TEST_CASE("eigenvalue entropy") {
    const CovarianceInfo flat = CovarianceInfo::from_matrix(Eigen::MatrixXd::Identity(440, 440), 0.0);
    CHECK(eigen_entropy(flat) == doctest::Approx(std::log(440.0)).epsilon(1e-13));
    CHECK(std::log(440.0) == doctest::Approx(6.0868).epsilon(1e-4));

    DesignMatrix one(1, 10);
    one.setZero();
    one(0, 3) = 2.0;
    CHECK(eigen_entropy(covariance_inverse(one, 0.0)) == doctest::Approx(0.0));

    // a row orthogonal to everything measured so far raises the entropy
    DesignMatrix design = DesignMatrix::Zero(3, 10);
    design(0, 0) = 1.0;
    design(1, 0) = 1.0;
    design(2, 5) = 1.0;
    const double h2 = eigen_entropy(covariance_inverse(design.topRows(2), 0.0));
    const double h3 = eigen_entropy(covariance_inverse(design, 0.0));
    CHECK(h2 == doctest::Approx(0.0));
    CHECK(h3 > h2);
    CHECK(h3 == doctest::Approx(-(2.0 / 3) * std::log(2.0 / 3) - (1.0 / 3) * std::log(1.0 / 3)));

    CHECK_THROWS_AS(eigen_entropy(CovarianceInfo::from_matrix(Eigen::MatrixXd::Zero(3, 3), 1.0)), ParameterError);

    // AM-GM: log det <= D log(Tr / D)
    SeededRng rng(54, stream_id(StreamPurpose::Test, 4));
    for (int t = 0; t < 10; ++t) {
        const CovarianceInfo cov = CovarianceInfo::from_matrix(random_pd(6, rng), 0.0);
        CHECK(cov.log_det_reg() <= 6.0 * std::log(cov.trace_reg() / 6.0) + 1e-12);
        CHECK(eigen_entropy(cov) <= std::log(6.0) + 1e-12);
    }
}

TEST_CASE("design metrics are invariant under a change of operator basis") {
    const Spin j = Spin::from_value(1.5);
    const OperatorBasis basis = gell_mann_basis(4);
    const auto series = heisenberg_series(build_floquet({j, 1.4, 3.0}), build_jz(j), 12);
    const DesignMatrix design = design_matrix(series, basis);
    SeededRng rng(55, stream_id(StreamPurpose::Test, 5));
    // rotated basis X'_b = sum_a Q_ab X_a has coefficients O Q
    const Eigen::MatrixXd Q = random_orthogonal(basis.size(), rng);
    const DesignMatrix rotated = design * Q;
    const CovarianceInfo a = covariance_inverse(design, 1e-3);
    const CovarianceInfo b = covariance_inverse(rotated, 1e-3);
    CHECK(std::abs(mutual_information(a) - mutual_information(b)) <= 1e-8);
    CHECK(std::abs(fisher_info(a) - fisher_info(b)) <= 1e-8 * fisher_info(a));
    CHECK(std::abs(eigen_entropy(a) - eigen_entropy(b)) <= 1e-8);
}

TEST_CASE("hilbert-schmidt distance") {
    SeededRng rng(56, stream_id(StreamPurpose::Test, 6));
    const StateVector psi = haar_pure_state(4, rng);
    StateVector phi = haar_pure_state(4, rng);
    phi -= psi.dot(phi) * psi;
    phi.normalize();
    CHECK(hs_distance(pure_density(psi), pure_density(psi)) == doctest::Approx(0.0));
    CHECK(hs_distance(pure_density(psi), pure_density(phi)) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK_THROWS_AS(hs_distance(pure_density(psi), Operator::Identity(3, 3)), ParameterError);

    // pure rho0: Tr((rho0 - rho)^2) = 1 + Tr(rho^2) - 2F
    for (int t = 0; t < 20; ++t) {
        Operator G(4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) G(r, c) = rng.complex_normal();
        Operator rho = G * G.adjoint();
        rho /= rho.trace().real();
        const double purity = (rho * rho).trace().real();
        CHECK(std::abs(hs_distance(pure_density(psi), rho) - (1.0 + purity - 2.0 * fidelity(psi, rho))) <= 1e-12);
    }
}
