// SPDX-License-Identifier: Apache-2.0
//
// swarray - spherical-wave array models, Fisher information and placement
// Copyright (C) 2026 The swarray authors
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

#ifndef SWARRAY_ERROR_HPP
#define SWARRAY_ERROR_HPP

#include <stdexcept>
#include <string>

namespace swarray
{
    // Failure classes. The C API and the CLI map these one-to-one onto status
    // and exit codes, so keep the enumerator values stable.
    enum class ErrorCode : int
    {
        invalid_argument = 1,
        domain = 2,
        validation = 3,
        io = 4,
        singular = 5,
        runtime = 6
    };

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    // Argument outside the mathematical domain of an operation (bad mode triple, theta outside [0, pi], kr <= 0, ...)
    class DomainError : public Error
    {
    public:
        explicit DomainError(const std::string &what) : Error(ErrorCode::domain, what) {}
    };

    // Malformed or inconsistent input data (files, configs, grids too coarse for the requested order)
    class ValidationError : public Error
    {
    public:
        explicit ValidationError(const std::string &what) : Error(ErrorCode::validation, what) {}
    };

    class IoError : public Error
    {
    public:
        explicit IoError(const std::string &what) : Error(ErrorCode::io, what) {}
    };

    class RuntimeError : public Error
    {
    public:
        explicit RuntimeError(const std::string &what) : Error(ErrorCode::runtime, what) {}
    };
} // namespace swarray

#endif
