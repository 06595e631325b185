// Copyright 2026 The privguess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVGUESS_CHANNELS_HPP_
#define PRIVGUESS_CHANNELS_HPP_

#include <cstddef>

#include "privguess/pmf.hpp"

namespace privguess {

// Binary vectors are capped at 2^12 x 2^12 tables; larger alphabets are
// served by the closed forms, which only need scalars.
inline constexpr int kMaxVectorBits = 12;

// Rows (1-a, a) and (b, 1-b). Every row has the form {x, 1-x}, so row sums
// are exactly 1.0 in floating point.
Channel make_bibo(double alpha, double beta);
Channel make_bsc(double alpha);

// Z(b): rows (1, 0), (b, 1-b). Reverse Z(b): rows (1-b, b), (0, 1).
Channel make_z(double beta);
Channel make_reverse_z(double beta);

// Identity on {0..n-1} except row y0, which sends gamma to z0 and keeps
// 1-gamma on y0. Requires y0 != z0.
Channel make_nary_z(std::size_t y0, std::size_t z0, double gamma,
                    std::size_t n);

// N-ary Z-channel on {0,1}^bits from the all-ones input to the all-zeros
// output. Index bit k is symbol k (bit 0 = first coordinate).
Channel make_z2n(double gamma, int bits);

// Same sums as evaluate_filter(joint, make_nary_z(...)) without
// materializing the filter: only the y0 and z0 columns change.
LeakagePair evaluate_nary_z(const JointPmf& joint, std::size_t y0,
                            std::size_t z0, double gamma);

}  // namespace privguess

#endif  // PRIVGUESS_CHANNELS_HPP_
