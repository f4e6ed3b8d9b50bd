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

#include <vector>

#include <Eigen/Dense>

#include "chaostomo/spin_ops.hpp"

namespace chaostomo {

using BlochVector = Eigen::VectorXd;

/// Orthonormal basis of traceless Hermitian operators, Tr(X_a X_b) = delta_ab.
///
/// Elements are held as sparse entry lists; the generalized Gell-Mann
/// matrices have at most d nonzeros each, so conversions cost O(d^2) rather
/// than O(d^4).
class OperatorBasis {
public:
    struct Entry {
        int row;
        int col;
        Complex value;
    };

    OperatorBasis(int dim, std::vector<std::vector<Entry>> elements);

    int dim() const { return dim_; }
    /// D = d^2 - 1.
    int size() const { return static_cast<int>(elements_.size()); }
    const std::vector<Entry>& entries(int alpha) const { return elements_[alpha]; }
    Operator dense(int alpha) const;

    /// Coefficients Tr(A X_a) of a Hermitian operator. Throws ValidationError
    /// if an imaginary residue exceeds 1e-12 (scaled by the operator norm).
    Eigen::VectorXd coefficients(const Operator& A) const;

    /// I/d + sum_a r_a X_a. No positivity check.
    Operator assemble(const Eigen::Ref<const Eigen::VectorXd>& r) const;

private:
    int dim_;
    std::vector<std::vector<Entry>> elements_;
};

/// Generalized Gell-Mann basis. Ordering: symmetric elements for k<l in
/// lexicographic order, then antisymmetric in the same order, then the d-1
/// diagonal elements diag(1,..,1,-l,0,..)/sqrt(l(l+1)), l = 1..d-1.
OperatorBasis gell_mann_basis(int d);

/// r_a = Tr(rho X_a). Throws ValidationError if |Tr(rho) - 1| > 1e-10.
BlochVector bloch_from_density(const Operator& rho, const OperatorBasis& basis);

/// I/d + sum_a r_a X_a. Throws ParameterError on a length mismatch.
Operator density_from_bloch(const Eigen::Ref<const BlochVector>& r, const OperatorBasis& basis);

}  // namespace chaostomo
