// SPDX-License-Identifier: Apache-2.0
//
// sudas: resource allocation for SUDAS-assisted multicarrier downlink
// Copyright (C) 2026 The sudas authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SUDAS_ERROR_HPP
#define SUDAS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sudas
{

enum class ErrorCode
{
    Config = 1,    // invalid scenario / solver / sweep settings
    Domain = 2,    // argument outside the domain of a formula
    Rank = 3,      // stream count exceeds channel rank
    Numerical = 4, // non-finite input or numerically singular matrix
    Solver = 5,    // dual search could not reach the budget
    Io = 6         // file system errors
};

// All library errors derive from this; the C API maps `code()` onto its status enum.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct ConfigError : Error
{
    explicit ConfigError(const std::string &what) : Error(ErrorCode::Config, what) {}
};
struct DomainError : Error
{
    explicit DomainError(const std::string &what) : Error(ErrorCode::Domain, what) {}
};
struct RankError : Error
{
    explicit RankError(const std::string &what) : Error(ErrorCode::Rank, what) {}
};
struct NumericalError : Error
{
    explicit NumericalError(const std::string &what) : Error(ErrorCode::Numerical, what) {}
};
struct SolverError : Error
{
    explicit SolverError(const std::string &what) : Error(ErrorCode::Solver, what) {}
};
struct IoError : Error
{
    explicit IoError(const std::string &what) : Error(ErrorCode::Io, what) {}
};

} // namespace sudas

#endif
