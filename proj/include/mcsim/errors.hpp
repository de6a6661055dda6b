#pragma once

#include <stdexcept>
#include <string>

namespace mcsim {

/// A parameter or input violates its documented domain.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The main chamber volume would become non-positive at the requested stroke.
class StrokeOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// The plant integration produced non-finite values or left the small-angle regime.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration / scenario file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mcsim
