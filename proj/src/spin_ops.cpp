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

#include "chaostomo/spin_ops.hpp"

#include <cmath>
#include <string>

#include "chaostomo/errors.hpp"

namespace chaostomo {

Spin Spin::from_value(double j) {
    const double twice = 2.0 * j;
    if (!std::isfinite(j) || j <= 0.0 || std::abs(twice - std::round(twice)) > 1e-12) {
        throw ParameterError("spin j must be a positive multiple of 1/2, got " + std::to_string(j));
    }
    return Spin(static_cast<int>(std::lround(twice)));
}

Spin Spin::from_twice(int twice_j) {
    if (twice_j <= 0) {
        throw ParameterError("2j must be a positive integer, got " + std::to_string(twice_j));
    }
    return Spin(twice_j);
}

namespace {

double m_of(Spin j, int index) { return j.value() - index; }

// <m+1| j+ |m>
double raising_element(Spin j, double m) {
    const double jj = j.value();
    return std::sqrt(jj * (jj + 1.0) - m * (m + 1.0));
}

}  // namespace

Operator build_jz(Spin j) {
    const int d = j.dim();
    Operator jz = Operator::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        jz(k, k) = m_of(j, k);
    }
    return jz;
}

Operator build_jx(Spin j) {
    const int d = j.dim();
    Operator jx = Operator::Zero(d, d);
    // index k+1 has m one lower than index k, so j+ maps k+1 -> k.
    for (int k = 0; k + 1 < d; ++k) {
        const double v = 0.5 * raising_element(j, m_of(j, k + 1));
        jx(k, k + 1) = v;
        jx(k + 1, k) = v;
    }
    return jx;
}

Operator build_jy(Spin j) {
    const int d = j.dim();
    Operator jy = Operator::Zero(d, d);
    const Complex half_i(0.0, 0.5);
    for (int k = 0; k + 1 < d; ++k) {
        const double v = raising_element(j, m_of(j, k + 1));
        // jy = (j+ - j-) / 2i
        jy(k, k + 1) = -half_i * v;
        jy(k + 1, k) = half_i * v;
    }
    return jy;
}

Operator hermitian_exp(const Operator& H, double t) {
    Eigen::SelfAdjointEigenSolver<Operator> es(H);
    if (es.info() != Eigen::Success) {
        throw NumericError("eigendecomposition failed in hermitian_exp");
    }
    const Eigen::VectorXcd phases =
        es.eigenvalues().unaryExpr([t](double e) { return std::exp(Complex(0.0, -t * e)); });
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Operator build_floquet(const TopParams& p) {
    const Spin j = p.j;
    const int d = j.dim();
    const Operator rotation = hermitian_exp(build_jx(j), p.alpha);
    Eigen::VectorXcd twist(d);
    for (int k = 0; k < d; ++k) {
        const double m = m_of(j, k);
        twist(k) = std::exp(Complex(0.0, -p.lam * m * m / (2.0 * j.value())));
    }
    return twist.asDiagonal() * rotation;
}

std::vector<Operator> heisenberg_series(const Operator& U, const Operator& O0, int n_steps) {
    if (U.rows() != U.cols() || O0.rows() != O0.cols() || U.rows() != O0.rows()) {
        throw ParameterError("heisenberg_series: U and O0 must be square with equal dimension");
    }
    if (n_steps < 1) {
        throw ParameterError("heisenberg_series: n_steps must be >= 1");
    }
    std::vector<Operator> series;
    series.reserve(static_cast<std::size_t>(n_steps));
    series.push_back(O0);
    const Operator Ud = U.adjoint();
    for (int k = 1; k < n_steps; ++k) {
        Operator next = Ud * series.back() * U;
        // re-symmetrize so roundoff cannot accumulate an anti-Hermitian part
        next = 0.5 * (next + next.adjoint()).eval();
        series.push_back(std::move(next));
    }
    return series;
}

double max_abs(const Operator& A) { return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Operator& A, double tol) {
    return A.rows() == A.cols() && max_abs(A - A.adjoint()) <= tol;
}

bool is_unitary(const Operator& U, double tol) {
    if (U.rows() != U.cols()) return false;
    return max_abs(U.adjoint() * U - Operator::Identity(U.rows(), U.cols())) <= tol;
}

}  // namespace chaostomo
