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

#include <stdexcept>
#include <string>

namespace rvqc {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A trajectory with R|omega| >= 1 is not timelike.
struct SuperluminalTrajectory : Error {
    using Error::Error;
};

/// The requested rotation angle cannot be produced by the given gap and duration.
struct UnreachableAngle : Error {
    using Error::Error;
};

/// Two qubits share a position, so their separation is zero.
struct CoincidentPositions : Error {
    CoincidentPositions(std::string what, int first, int second)
        : Error(std::move(what)), i(first), j(second) {}
    int i;
    int j;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

/// A special function was evaluated outside its representable range.
struct OverflowError : Error {
    using Error::Error;
};

/// A numerical integration failed to reach its requested tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

}  // namespace rvqc
