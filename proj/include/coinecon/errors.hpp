#pragma once

#include <stdexcept>
#include <string>

namespace coinecon {

/// Bad input data or arguments: missing files, malformed CSV, violated
/// preconditions. The CLI maps these to exit code 1.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not be completed (singular regressors,
/// non-positive-definite moment matrices, ...). The CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pipeline stage failed; carries the stage name so callers can report it.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& message)
        : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}

    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace coinecon
