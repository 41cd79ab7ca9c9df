#pragma once

#include <stdexcept>
#include <string>

namespace sedscore {

// Input could not be read or parsed (bad row, missing file, empty
// operating-point directory). CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation-domain error (invalid configuration, no reference classes,
// event outside file bounds). CLI maps this to exit code 1.
class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace sedscore
