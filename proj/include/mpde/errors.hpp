#pragma once

#include <stdexcept>
#include <string>

namespace mpde {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parameter is outside its mathematical domain (nonpositive order, q outside (0,1), ...).
struct InvalidParameterError : Error {
    using Error::Error;
};

/// An evaluation point lies outside the analyticity/sector domain of an operator.
struct DomainError : Error {
    using Error::Error;
};

/// A truncated-series operation was asked to read past the available order.
struct TruncationError : Error {
    using Error::Error;
};

/// Series reciprocal of something with zero constant term, or a(0) == 0.
struct NonInvertibleError : Error {
    using Error::Error;
};

/// Quadrature non-convergence, divergent integrals, rank-deficient solves.
struct NumericalError : Error {
    using Error::Error;
};

/// Missing or inconsistent configuration (e.g. absent claimed orders).
struct ConfigError : Error {
    using Error::Error;
};

/// DSL syntax or constraint violation, annotated with the source position.
struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& msg)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
          line(line_),
          column(column_) {}
};

}  // namespace mpde
