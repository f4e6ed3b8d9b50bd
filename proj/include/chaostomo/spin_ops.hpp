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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace chaostomo {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Spin quantum number j, stored as the integer 2j so half-integers are exact.
class Spin {
public:
    /// Throws ParameterError unless j > 0 and 2j is an integer.
    static Spin from_value(double j);
    static Spin from_twice(int twice_j);

    int twice() const { return twice_j_; }
    double value() const { return 0.5 * twice_j_; }
    /// Hilbert-space dimension d = 2j + 1.
    int dim() const { return twice_j_ + 1; }

private:
    explicit Spin(int twice_j) : twice_j_(twice_j) {}
    int twice_j_;
};

/// Kicked-top parameters: U = exp(-i lam jz^2 / 2j) exp(-i alpha jx).
struct TopParams {
    Spin j;
    double alpha;
    double lam;
};

// Basis order is m = j (index 0) down to m = -j (index d-1).
Operator build_jz(Spin j);
Operator build_jx(Spin j);
Operator build_jy(Spin j);

/// Floquet operator of the kicked top. The rotation is exponentiated through
/// the eigendecomposition of jx; the twist is diagonal.
Operator build_floquet(const TopParams& p);

/// [O0, U^dag O0 U, ..., (U^dag)^(n-1) O0 U^(n-1)], one conjugation per step.
std::vector<Operator> heisenberg_series(const Operator& U, const Operator& O0, int n_steps);

/// exp(-i t H) for Hermitian H.
Operator hermitian_exp(const Operator& H, double t);

double max_abs(const Operator& A);
bool is_hermitian(const Operator& A, double tol = 1e-12);
bool is_unitary(const Operator& U, double tol = 1e-10);

}  // namespace chaostomo
