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

#include "chaostomo/random.hpp"

#include <cmath>

#include "chaostomo/errors.hpp"

namespace chaostomo {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_id(StreamPurpose purpose, std::uint64_t index) {
    return (static_cast<std::uint64_t>(purpose) << 56) ^ index;
}

namespace {

std::seed_seq make_seed(std::uint64_t master, std::uint64_t stream) {
    const std::uint64_t a = splitmix64(master);
    const std::uint64_t b = splitmix64(a ^ splitmix64(stream));
    return std::seed_seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                         static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
}

void require_dim(int d, const char* what) {
    if (d < 2) {
        throw ParameterError(std::string(what) + " requires d >= 2");
    }
}

}  // namespace

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
    std::seed_seq seq = make_seed(master_seed, stream_index);
    engine_.seed(seq);
}

double SeededRng::normal() { return normal_(engine_); }

Complex SeededRng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) / std::sqrt(2.0);
}

StateVector haar_pure_state(int d, SeededRng& rng) {
    require_dim(d, "haar_pure_state");
    StateVector psi(d);
    for (int k = 0; k < d; ++k) {
        psi(k) = rng.complex_normal();
    }
    return psi / psi.norm();
}

Operator cue_unitary(int d, SeededRng& rng) {
    require_dim(d, "cue_unitary");
    Operator Z(d, d);
    for (int c = 0; c < d; ++c) {
        for (int r = 0; r < d; ++r) {
            Z(r, c) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<Operator> qr(Z);
    const Operator Q = qr.householderQ();
    const Operator R = qr.matrixQR().triangularView<Eigen::Upper>();
    Eigen::VectorXcd phase(d);
    for (int k = 0; k < d; ++k) {
        const double mag = std::abs(R(k, k));
        phase(k) = mag > 0.0 ? R(k, k) / mag : Complex(1.0, 0.0);
    }
    return Q * phase.asDiagonal();
}

Operator coe_unitary(int d, SeededRng& rng) {
    const Operator U = cue_unitary(d, rng);
    Operator W = U.transpose() * U;
    // exact symmetry; the product is symmetric only up to roundoff
    W = 0.5 * (W + W.transpose()).eval();
    return W;
}

}  // namespace chaostomo
