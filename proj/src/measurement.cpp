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

#include "chaostomo/measurement.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include "chaostomo/errors.hpp"

namespace chaostomo {

DesignMatrix design_matrix(const std::vector<Operator>& series, const OperatorBasis& basis) {
    DesignMatrix design(static_cast<Eigen::Index>(series.size()), basis.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        design.row(static_cast<Eigen::Index>(i)) = basis.coefficients(series[i]).transpose();
    }
    return design;
}

Record simulate_record(const Operator& rho0, const std::vector<Operator>& series, double kappa,
                       SeededRng& rng) {
    if (!(kappa >= 0.0)) {
        throw ParameterError("noise spread kappa must be >= 0");
    }
    Record rec;
    rec.noise_spread = kappa;
    rec.values.resize(static_cast<Eigen::Index>(series.size()));
    for (std::size_t i = 0; i < series.size(); ++i) {
        const Operator& O = series[i];
        if (O.rows() != rho0.rows() || O.cols() != rho0.cols()) {
            throw ParameterError("simulate_record: observable and state dimensions differ");
        }
        // Tr(O rho) without forming the product
        const double expectation = (O.transpose().cwiseProduct(rho0)).sum().real();
        rec.values(static_cast<Eigen::Index>(i)) = expectation;
    }
    // noise drawn after expectations so the stream layout does not depend on kappa
    for (Eigen::Index i = 0; i < rec.values.size(); ++i) {
        rec.values(i) += kappa * rng.normal();
    }
    return rec;
}

void write_design_csv(std::ostream& out, const DesignMatrix& design) {
    out << std::setprecision(17);
    for (Eigen::Index i = 0; i < design.rows(); ++i) {
        out << i;
        for (Eigen::Index a = 0; a < design.cols(); ++a) {
            out << ',' << design(i, a);
        }
        out << '\n';
    }
}

void write_record_csv(std::ostream& out, const Record& record) {
    out << std::setprecision(17);
    for (Eigen::Index i = 0; i < record.values.size(); ++i) {
        out << i << ',' << record.values(i) << '\n';
    }
}

namespace {

template <class Fn>
void write_file(const std::string& path, Fn&& fn) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    fn(out);
    out.flush();
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

}  // namespace

void write_design_csv(const std::string& path, const DesignMatrix& design) {
    write_file(path, [&](std::ostream& out) { write_design_csv(out, design); });
}

void write_record_csv(const std::string& path, const Record& record) {
    write_file(path, [&](std::ostream& out) { write_record_csv(out, record); });
}

}  // namespace chaostomo
