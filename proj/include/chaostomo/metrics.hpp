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

#include "chaostomo/estimator.hpp"

namespace chaostomo {

struct MetricsRow {
    int step = 0;
    double fidelity = 0.0;
    double fisher = 0.0;
    double mutual_info = 0.0;
    double entropy = 0.0;
    double hs_distance = 0.0;
};

/// <psi0|rho|psi0>, clipped to [0, 1].
double fidelity(const StateVector& psi0, const Operator& rho);

/// Total Fisher information 1 / Tr((C^-1 + eps I)^-1), units of 1/kappa^2.
double fisher_info(const CovarianceInfo& cov);

/// -1/2 log det C of the regularized covariance, natural log.
double mutual_information(const CovarianceInfo& cov);

/// Shannon entropy (nats) of the normalized eigenvalues of the raw C^-1.
double eigen_entropy(const CovarianceInfo& cov);

/// Tr((rho0 - rho)^2).
double hs_distance(const Operator& rho0, const Operator& rho);

}  // namespace chaostomo
