// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace takv {

// Base class for all takv failures. Subclasses map to distinct CLI exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad configuration: unknown keys, out-of-range values, malformed patterns.
// Raised at load time, never in the middle of a trial.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Non-finite or otherwise unusable inputs to the utility computation.
class ScoringError : public Error {
public:
    using Error::Error;
};

// Detector-level failures: dimension mismatches, zero-norm embeddings.
class DetectionError : public Error {
public:
    using Error::Error;
};

// Detector training failures (e.g. single-class data).
class TrainingError : public Error {
public:
    using Error::Error;
};

// A policy violated one of its invariants during a trial. Must never
// happen; surfacing it loudly beats producing a silently wrong table.
class TrialError : public Error {
public:
    using Error::Error;
};

// Bound checking could not run, e.g. the suite is missing the cell a
// bound needs. Distinct from a bound *violation*, which is a result.
class CheckError : public Error {
public:
    using Error::Error;
};

}  // namespace takv
