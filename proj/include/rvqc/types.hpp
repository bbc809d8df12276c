// Copyright 2026 The rvqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace rvqc {

using complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Basis index of an N-qubit register. Qubit i is bit i counted from the LSB.
using BasisIndex = std::uint64_t;

/// Spin value of qubit `i` in basis state `b`: +1 for bit 0, -1 for bit 1.
inline int spin(BasisIndex b, int i) { return ((b >> i) & 1U) ? -1 : 1; }

inline constexpr BasisIndex dimension_of(int num_qubits) { return BasisIndex{1} << num_qubits; }

}  // namespace rvqc
