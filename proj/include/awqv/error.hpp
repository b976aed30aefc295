// Copyright 2026 The AWQV Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types shared by every module.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace awqv {

/// Common base so callers can catch everything thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: size mismatches, out-of-range values, bad labels.
class InputError : public Error {
  public:
    using Error::Error;
};

/// Problem too large for the dense simulator.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Non-finite values or numerical collapse.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// Unreadable or inconsistent files.
class FormatError : public Error {
  public:
    using Error::Error;
};

/// Largest qubit count for which dense 2^n arrays are built.
inline constexpr std::size_t kDenseQubitLimit = 24;

namespace detail {

inline void require(bool cond, const std::string &msg) {
    if (!cond) {
        throw InputError(msg);
    }
}

inline void require_dense(std::size_t n, std::size_t limit = kDenseQubitLimit) {
    if (n > limit) {
        throw CapacityError("dense limit exceeded: n=" + std::to_string(n) +
                            " > " + std::to_string(limit));
    }
}

} // namespace detail
} // namespace awqv
