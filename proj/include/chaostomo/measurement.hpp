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

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chaostomo/basis.hpp"
#include "chaostomo/random.hpp"

namespace chaostomo {

/// n x D real matrix; row i holds Tr(O(i) X_a).
using DesignMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Record {
    Eigen::VectorXd values;
    /// kappa = sigma / N_A.
    double noise_spread = 0.0;
};

DesignMatrix design_matrix(const std::vector<Operator>& series, const OperatorBasis& basis);

/// M_i = Tr(O(i) rho0) + kappa * N(0,1).
Record simulate_record(const Operator& rho0, const std::vector<Operator>& series, double kappa,
                       SeededRng& rng);

// CSV dumps, one row per time step: step index, then the row values.
void write_design_csv(std::ostream& out, const DesignMatrix& design);
void write_record_csv(std::ostream& out, const Record& record);
void write_design_csv(const std::string& path, const DesignMatrix& design);
void write_record_csv(const std::string& path, const Record& record);

}  // namespace chaostomo
