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
/// Convenience header pulling in the whole library.
#pragma once

#include "ansatz.hpp"
#include "awqv.hpp"
#include "error.hpp"
#include "gw.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "optimize.hpp"
#include "pauli.hpp"
#include "problem.hpp"
#include "qite.hpp"
#include "statevec.hpp"
#include "trace.hpp"
