// Copyright 2026 The qsim Authors
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

#include <stdexcept>
#include <string>

namespace qsim {

/// Base class of all qsim errors. Everything thrown by the library derives
/// from this, so callers can catch one type at the boundary.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : Error { using Error::Error; };
struct QubitOutOfRange : Error { using Error::Error; };
struct RegisterOutOfRange : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct NonUnitaryGate : Error { using Error::Error; };
struct NonFinitePhase : Error { using Error::Error; };
struct UnnormalizedState : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NonHermitian : Error { using Error::Error; };
struct InvalidPlan : Error { using Error::Error; };
struct UnresolvableWidth : Error { using Error::Error; };
struct UnknownAnalyticCase : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

/// An embedded tolerance block in a problem file failed at run time.
struct ToleranceFailure : Error { using Error::Error; };

}  // namespace qsim
