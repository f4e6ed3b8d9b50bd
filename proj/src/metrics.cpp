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

#include "chaostomo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chaostomo/errors.hpp"

namespace chaostomo {

double fidelity(const StateVector& psi0, const Operator& rho) {
    if (rho.rows() != psi0.size() || rho.cols() != psi0.size()) {
        throw ParameterError("fidelity: state and density matrix dimensions differ");
    }
    const Complex f = psi0.dot(rho * psi0);  // conjugates psi0
    if (std::abs(f.imag()) > 1e-9) {
        throw ValidationError("fidelity has imaginary residue " + std::to_string(f.imag()));
    }
    if (f.real() < -1e-10 || f.real() > 1.0 + 1e-10) {
        throw ValidationError("fidelity " + std::to_string(f.real()) + " outside [0, 1]");
    }
    return std::clamp(f.real(), 0.0, 1.0);
}

double fisher_info(const CovarianceInfo& cov) {
    double trace_c = 0.0;
    for (Eigen::Index i = 0; i < cov.spectrum.size(); ++i) {
        const double v = cov.spectrum(i) + cov.eps;
        if (!(v > 0.0)) {
            throw NumericError("regularized inverse covariance is not invertible");
        }
        trace_c += 1.0 / v;
    }
    return 1.0 / trace_c;
}

double mutual_information(const CovarianceInfo& cov) { return 0.5 * cov.log_det_reg(); }

double eigen_entropy(const CovarianceInfo& cov) {
    const double total = cov.trace();
    if (!(total > 0.0)) {
        throw ParameterError("eigen_entropy: inverse covariance has zero trace");
    }
    double h = 0.0;
    for (Eigen::Index i = 0; i < cov.spectrum.size(); ++i) {
        const double p = cov.spectrum(i) / total;
        // roundoff can leave null directions slightly negative; they carry no weight
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

double hs_distance(const Operator& rho0, const Operator& rho) {
    if (rho0.rows() != rho.rows() || rho0.cols() != rho.cols()) {
        throw ParameterError("hs_distance: dimensions differ");
    }
    // Tr(Delta^2) = ||Delta||_F^2 for Hermitian Delta
    return (rho0 - rho).squaredNorm();
}

}  // namespace chaostomo
