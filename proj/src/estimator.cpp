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

#include "chaostomo/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "chaostomo/errors.hpp"

namespace chaostomo {

double CovarianceInfo::log_det_reg() const {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        const double v = spectrum(i) + eps;
        if (!(v > 0.0)) {
            throw NumericError("regularized inverse covariance is not positive definite");
        }
        acc += std::log(v);
    }
    return acc;
}

CovarianceInfo CovarianceInfo::from_matrix(const Eigen::MatrixXd& cinv, double eps) {
    if (cinv.rows() != cinv.cols()) {
        throw ParameterError("inverse covariance must be square");
    }
    CovarianceInfo info;
    info.cinv = cinv;
    info.eps = eps;
    info.cinv_reg = cinv;
    info.cinv_reg.diagonal().array() += eps;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cinv, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericError("eigendecomposition of the inverse covariance failed");
    }
    info.spectrum = es.eigenvalues();
    return info;
}

void SolverOptions::validate() const {
    if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
    if (!(rel_obj_tol > 0.0)) throw ParameterError("rel_obj_tol must be > 0");
    if (!(eps >= 0.0)) throw ParameterError("regularization eps must be >= 0");
}

CovarianceInfo covariance_inverse(const DesignMatrix& design, double eps) {
    if (!(eps >= 0.0)) {
        throw ParameterError("regularization eps must be >= 0");
    }
    const Eigen::Index n = design.rows();
    const Eigen::Index D = design.cols();
    CovarianceInfo info;
    info.eps = eps;
    info.cinv = Eigen::MatrixXd::Zero(D, D);
    info.cinv.selfadjointView<Eigen::Lower>().rankUpdate(design.transpose());
    info.cinv = info.cinv.selfadjointView<Eigen::Lower>();
    info.cinv_reg = info.cinv;
    info.cinv_reg.diagonal().array() += eps;

    // O^T O and O O^T share their nonzero eigenvalues; diagonalize the smaller.
    if (n < D) {
        Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
        gram.selfadjointView<Eigen::Lower>().rankUpdate(design);
        gram = gram.selfadjointView<Eigen::Lower>();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) {
            throw NumericError("eigendecomposition of the Gram matrix failed");
        }
        info.spectrum = Eigen::VectorXd::Zero(D);
        info.spectrum.tail(n) = es.eigenvalues();
        std::sort(info.spectrum.begin(), info.spectrum.end());
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(info.cinv, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) {
            throw NumericError("eigendecomposition of the inverse covariance failed");
        }
        info.spectrum = es.eigenvalues();
    }
    return info;
}

double relative_regularization(const DesignMatrix& design, double eps_rel) {
    if (design.cols() == 0) return 0.0;
    return eps_rel * design.squaredNorm() / static_cast<double>(design.cols());
}

namespace {

void check_shapes(const DesignMatrix& design, const Record& record) {
    if (design.rows() != record.values.size()) {
        throw ParameterError("record length " + std::to_string(record.values.size()) +
                             " does not match design rows " + std::to_string(design.rows()));
    }
}

template <class Matrix>
Eigen::VectorXd solve_spd(const Matrix& A, const Eigen::VectorXd& b) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    const double scale = std::max(1.0, A.diagonal().cwiseAbs().maxCoeff());
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() <= 1e-13 * scale) {
        throw SolverError("normal equations are singular; use a positive regularization");
    }
    return ldlt.solve(b);
}

// Largest eigenvalue of O^T O by power iteration.
double top_eigenvalue(const DesignMatrix& design) {
    const Eigen::Index D = design.cols();
    if (design.rows() == 0 || D == 0) return 0.0;
    // deterministic start with no special alignment
    Eigen::VectorXd v(D);
    for (Eigen::Index i = 0; i < D; ++i) v(i) = 1.0 + 0.01 * static_cast<double>(i % 7);
    v.normalize();
    double estimate = 0.0;
    for (int it = 0; it < 500; ++it) {
        Eigen::VectorXd w = design.transpose() * (design * v);
        const double next = v.dot(w);
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        v = w / norm;
        if (std::abs(next - estimate) <= 1e-10 * std::abs(next)) {
            estimate = next;
            break;
        }
        estimate = next;
    }
    return estimate;
}

struct Projector {
    const OperatorBasis& basis;
    BlochVector operator()(const BlochVector& r) const {
        return basis.coefficients(project_psd_trace1(basis.assemble(r)));
    }
};

}  // namespace

BlochVector ml_estimate(const DesignMatrix& design, const Record& record, double eps) {
    check_shapes(design, record);
    if (!(eps >= 0.0)) {
        throw ParameterError("regularization eps must be >= 0");
    }
    const Eigen::Index n = design.rows();
    const Eigen::Index D = design.cols();
    if (n < D) {
        // (O^T O + eps I)^-1 O^T = O^T (O O^T + eps I)^-1
        Eigen::MatrixXd gram = design * design.transpose();
        gram.diagonal().array() += eps;
        if (eps == 0.0) {
            // O^T O has rank <= n < D
            throw SolverError("normal equations are singular (rank <= " + std::to_string(n) + " < " +
                              std::to_string(D) + "); use a positive regularization");
        }
        return design.transpose() * solve_spd(gram, record.values);
    }
    Eigen::MatrixXd normal = design.transpose() * design;
    normal.diagonal().array() += eps;
    return solve_spd(normal, design.transpose() * record.values);
}

double residual(const DesignMatrix& design, const Record& record, const Eigen::Ref<const BlochVector>& r) {
    check_shapes(design, record);
    return (design * r - record.values).squaredNorm();
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
    const Eigen::Index n = v.size();
    if (n == 0) return v;
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    // water-filling threshold
    double cumsum = 0.0;
    double theta = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        cumsum += sorted[static_cast<std::size_t>(k)];
        const double candidate = (cumsum - 1.0) / static_cast<double>(k + 1);
        if (sorted[static_cast<std::size_t>(k)] - candidate > 0.0) {
            theta = candidate;
        }
    }
    return (v.array() - theta).cwiseMax(0.0).matrix();
}

Operator project_psd_trace1(const Operator& H) {
    if (H.rows() != H.cols()) {
        throw ParameterError("project_psd_trace1 requires a square operator");
    }
    Eigen::SelfAdjointEigenSolver<Operator> es(H);
    if (es.info() != Eigen::Success) {
        throw NumericError("eigendecomposition failed in project_psd_trace1");
    }
    const Eigen::VectorXd p = project_simplex(es.eigenvalues());
    // eigenvalues are ascending, so the support is a trailing block
    Eigen::Index first = 0;
    while (first < p.size() && p(first) == 0.0) ++first;
    const Eigen::Index k = p.size() - first;
    const auto V = es.eigenvectors().rightCols(k);
    Operator rho = V * p.tail(k).cast<Complex>().asDiagonal() * V.adjoint();
    return 0.5 * (rho + rho.adjoint());
}

ConstrainedResult constrained_estimate(const DesignMatrix& design, const Record& record,
                                       const OperatorBasis& basis, const SolverOptions& opts,
                                       const std::optional<BlochVector>& warm_start) {
    opts.validate();
    check_shapes(design, record);
    if (design.cols() != basis.size()) {
        throw ParameterError("design columns do not match basis size");
    }
    const Projector project{basis};
    const Eigen::VectorXd& M = record.values;
    auto objective = [&](const Eigen::VectorXd& Ar) { return (Ar - M).squaredNorm(); };

    // start point
    const double eps = relative_regularization(design, opts.eps);
    BlochVector x;
    if (eps > 0.0 && design.rows() > 0) {
        x = project(ml_estimate(design, record, eps));
    } else {
        x = BlochVector::Zero(basis.size());
    }
    Eigen::VectorXd Ax = design * x;
    double fx = objective(Ax);
    if (warm_start) {
        if (warm_start->size() != basis.size()) {
            throw ParameterError("warm start length does not match basis size");
        }
        BlochVector w = project(*warm_start);
        Eigen::VectorXd Aw = design * w;
        const double fw = objective(Aw);
        if (fw < fx) {
            x = std::move(w);
            Ax = std::move(Aw);
            fx = fw;
        }
    }

    ConstrainedResult result;
    if (opts.record_history) result.history.push_back(fx);

    const double lipschitz = 2.0 * 1.01 * top_eigenvalue(design);
    if (lipschitz == 0.0) {
        // constant objective; every feasible point is optimal
        result.bloch = x;
        result.rho = basis.assemble(x);
        result.residual = fx;
        result.converged = true;
        return result;
    }
    const double step = 1.0 / lipschitz;
    const double floor = 1e-14 * std::max(1.0, M.squaredNorm());

    BlochVector y = x;
    Eigen::VectorXd Ay = Ax;
    double t = 1.0;
    int it = 0;
    for (; it < opts.max_iters; ++it) {
        const Eigen::VectorXd grad = 2.0 * design.transpose() * (Ay - M);
        BlochVector z = project(y - step * grad);
        Eigen::VectorXd Az = design * z;
        const double fz = objective(Az);
        if (fz <= fx) {
            const double decrease = fx - fz;
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            const double momentum = (t - 1.0) / t_next;
            y = z + momentum * (z - x);
            Ay = Az + momentum * (Az - Ax);
            x = std::move(z);
            Ax = std::move(Az);
            fx = fz;
            t = t_next;
            if (opts.record_history) result.history.push_back(fx);
            if (decrease <= opts.rel_obj_tol * std::max(fx, floor)) {
                result.converged = true;
                ++it;
                break;
            }
        } else {
            if (opts.record_history) result.history.push_back(fx);
            if (fz - fx <= opts.rel_obj_tol * std::max(fx, floor) && t == 1.0) {
                // a plain gradient step no longer moves the objective
                result.converged = true;
                ++it;
                break;
            }
            // monotone guard plus momentum restart
            y = x;
            Ay = Ax;
            t = 1.0;
        }
    }
    result.iterations = it;
    result.bloch = x;
    result.rho = basis.assemble(x);
    result.residual = fx;
    return result;
}

}  // namespace chaostomo
