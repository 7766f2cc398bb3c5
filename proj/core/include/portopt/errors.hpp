#pragma once

#include <stdexcept>
#include <string>

namespace portopt {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Vector/matrix length disagreement.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Duplicate or out-of-range index.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Malformed input data (CSV cells, dates, prices).
class IngestError : public Error {
public:
    using Error::Error;
};

/// Market model cannot be formed (e.g. zero-variance asset).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration value or flag combination.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Portfolio statistics undefined (empty selection).
class StatsError : public Error {
public:
    using Error::Error;
};

/// Selected vertices violate independence.
class IndependenceError : public Error {
public:
    using Error::Error;
};

/// Problem too large for the requested solver.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Sample plan cannot cover all variables.
class CoverageError : public Error {
public:
    using Error::Error;
};

/// Recombination stage failed (uncovered variables, degenerate encoding).
class RecombineError : public Error {
public:
    using Error::Error;
};

/// Approximation ratio undefined for a non-negative baseline energy.
class RatioError : public Error {
public:
    using Error::Error;
};

}  // namespace portopt
