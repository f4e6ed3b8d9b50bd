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

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "chaostomo/basis.hpp"
#include "chaostomo/measurement.hpp"

namespace chaostomo {

/// Inverse covariance C^-1 = O^T O of the Gaussian likelihood, in units of
/// 1/kappa^2, together with its Tikhonov-regularized form.
struct CovarianceInfo {
    Eigen::MatrixXd cinv;
    double eps = 0.0;
    Eigen::MatrixXd cinv_reg;
    /// Eigenvalues of cinv, ascending, length D.
    Eigen::VectorXd spectrum;

    double trace() const { return spectrum.sum(); }
    double trace_reg() const { return trace() + eps * static_cast<double>(spectrum.size()); }
    /// log det(cinv_reg) from the spectrum.
    double log_det_reg() const;

    /// Builds from an explicit symmetric matrix (eigendecomposed directly).
    static CovarianceInfo from_matrix(const Eigen::MatrixXd& cinv, double eps);
};

struct SolverOptions {
    int max_iters = 20000;
    double rel_obj_tol = 1e-10;
    /// Regularization as a fraction of the mean eigenvalue Tr(C^-1)/D.
    double eps = 1e-6;
    /// Keep the objective value of every accepted iterate.
    bool record_history = false;

    void validate() const;
};

struct ConstrainedResult {
    Operator rho;
    BlochVector bloch;
    /// ||M - O r||^2 at the returned point.
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Objective at the start point and after each iteration (if requested).
    std::vector<double> history;
};

CovarianceInfo covariance_inverse(const DesignMatrix& design, double eps);

/// eps_rel * Tr(O^T O) / D.
double relative_regularization(const DesignMatrix& design, double eps_rel);

/// r_ML = (O^T O + eps I)^-1 O^T M. Solves whichever of the D x D or n x n
/// normal systems is smaller. Throws SolverError if the system is singular.
BlochVector ml_estimate(const DesignMatrix& design, const Record& record, double eps);

/// ||M - O r||^2.
double residual(const DesignMatrix& design, const Record& record, const Eigen::Ref<const BlochVector>& r);

/// Nearest density matrix in Frobenius norm: eigenvalues projected onto the
/// probability simplex.
Operator project_psd_trace1(const Operator& H);

/// Euclidean projection of v onto {p >= 0, sum p = 1}.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);

/// Positivity-constrained least squares over density matrices, solved by
/// monotone accelerated projected gradient (step 1/L, L = 2 lambda_max(O^T O)).
///
/// Starts from the projection of the regularized ML estimate; a caller-supplied
/// feasible warm start is used instead when it has the lower residual.
/// The returned point never has a larger residual than the starting point.
ConstrainedResult constrained_estimate(const DesignMatrix& design, const Record& record,
                                       const OperatorBasis& basis, const SolverOptions& opts,
                                       const std::optional<BlochVector>& warm_start = std::nullopt);

}  // namespace chaostomo
