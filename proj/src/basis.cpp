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

#include "chaostomo/basis.hpp"

#include <cmath>
#include <string>

#include "chaostomo/errors.hpp"

namespace chaostomo {

OperatorBasis::OperatorBasis(int dim, std::vector<std::vector<Entry>> elements)
    : dim_(dim), elements_(std::move(elements)) {
    if (dim_ < 2) {
        throw ParameterError("operator basis dimension must be >= 2");
    }
    if (static_cast<int>(elements_.size()) != dim_ * dim_ - 1) {
        throw ParameterError("operator basis must have d^2 - 1 elements");
    }
}

Operator OperatorBasis::dense(int alpha) const {
    Operator X = Operator::Zero(dim_, dim_);
    for (const Entry& e : elements_[alpha]) {
        X(e.row, e.col) += e.value;
    }
    return X;
}

Eigen::VectorXd OperatorBasis::coefficients(const Operator& A) const {
    if (A.rows() != dim_ || A.cols() != dim_) {
        throw ParameterError("operator dimension " + std::to_string(A.rows()) +
                             " does not match basis dimension " + std::to_string(dim_));
    }
    const double scale = std::max(1.0, max_abs(A));
    Eigen::VectorXd out(size());
    for (int a = 0; a < size(); ++a) {
        Complex acc(0.0, 0.0);
        // Tr(A X) = sum_{rc} A(c, r) X(r, c)
        for (const Entry& e : elements_[a]) {
            acc += A(e.col, e.row) * e.value;
        }
        if (std::abs(acc.imag()) > 1e-12 * scale) {
            throw ValidationError("operator is not Hermitian: imaginary coefficient residue " +
                                  std::to_string(acc.imag()));
        }
        out(a) = acc.real();
    }
    return out;
}

Operator OperatorBasis::assemble(const Eigen::Ref<const Eigen::VectorXd>& r) const {
    if (r.size() != size()) {
        throw ParameterError("Bloch vector length " + std::to_string(r.size()) +
                             " does not match basis size " + std::to_string(size()));
    }
    Operator rho = Operator::Identity(dim_, dim_) / static_cast<double>(dim_);
    for (int a = 0; a < size(); ++a) {
        const double c = r(a);
        for (const Entry& e : elements_[a]) {
            rho(e.row, e.col) += c * e.value;
        }
    }
    return rho;
}

OperatorBasis gell_mann_basis(int d) {
    if (d < 2) {
        throw ParameterError("gell_mann_basis requires d >= 2, got " + std::to_string(d));
    }
    using Entry = OperatorBasis::Entry;
    std::vector<std::vector<Entry>> elements;
    elements.reserve(static_cast<std::size_t>(d * d - 1));
    const double s = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < d; ++k) {
        for (int l = k + 1; l < d; ++l) {
            elements.push_back({{k, l, Complex(s, 0.0)}, {l, k, Complex(s, 0.0)}});
        }
    }
    for (int k = 0; k < d; ++k) {
        for (int l = k + 1; l < d; ++l) {
            elements.push_back({{k, l, Complex(0.0, -s)}, {l, k, Complex(0.0, s)}});
        }
    }
    for (int l = 1; l < d; ++l) {
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        std::vector<Entry> diag;
        for (int k = 0; k < l; ++k) {
            diag.push_back({k, k, Complex(norm, 0.0)});
        }
        diag.push_back({l, l, Complex(-l * norm, 0.0)});
        elements.push_back(std::move(diag));
    }
    return OperatorBasis(d, std::move(elements));
}

BlochVector bloch_from_density(const Operator& rho, const OperatorBasis& basis) {
    if (rho.rows() != basis.dim() || rho.cols() != basis.dim()) {
        throw ParameterError("density matrix dimension does not match basis");
    }
    const Complex tr = rho.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > 1e-10) {
        throw ValidationError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    return basis.coefficients(rho);
}

Operator density_from_bloch(const Eigen::Ref<const BlochVector>& r, const OperatorBasis& basis) {
    return basis.assemble(r);
}

}  // namespace chaostomo
