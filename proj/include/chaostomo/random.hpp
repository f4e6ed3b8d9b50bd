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

#include <cstdint>
#include <random>

#include "chaostomo/spin_ops.hpp"

namespace chaostomo {

/// Reproducible random stream identified by (master_seed, stream_index).
///
/// The engine seed is a SplitMix64 hash of both numbers, so any stream can be
/// created independently of the others and in any order; worker scheduling
/// has no influence on the draws.
class SeededRng {
public:
    SeededRng(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    double normal();
    /// Standard complex Gaussian, E|z|^2 = 1.
    Complex complex_normal();

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

/// Stream index for a (purpose, member) pair. Purposes keep the state, noise
/// and random-unitary streams of one member disjoint.
enum class StreamPurpose : std::uint64_t { State = 1, Noise = 2, Unitary = 3, Test = 15 };
std::uint64_t stream_id(StreamPurpose purpose, std::uint64_t index);

StateVector haar_pure_state(int d, SeededRng& rng);

/// Haar unitary: QR of a complex Ginibre matrix with the R_ii/|R_ii| phase fix.
Operator cue_unitary(int d, SeededRng& rng);

/// Symmetric unitary W = U^T U with U from the CUE.
Operator coe_unitary(int d, SeededRng& rng);

}  // namespace chaostomo
