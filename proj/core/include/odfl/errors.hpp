// SPDX-FileCopyrightText: © 2026 The odfl Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace odfl {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid input data (topology, design or routing documents).
class InputError : public Error {
public:
    using Error::Error;
};

/// Inconsistent or incomplete run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain (e.g. rho >= 1, instance too large).
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace odfl
