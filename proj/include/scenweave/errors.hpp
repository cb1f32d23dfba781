#pragma once

#include <stdexcept>
#include <string>

namespace scenweave {

/// Base class for all scenweave errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// A role or scenario id was registered twice.
class DuplicateNameError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its stated contract.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A scenario program failed structural validation.
class ProgramError : public Error {
public:
    using Error::Error;
};

/// Inter/intra composition was ill-formed.
class CompositionError : public Error {
public:
    using Error::Error;
};

/// The engine selected more events than the configured bound allows.
class StepBoundError : public Error {
public:
    using Error::Error;
};

/// Feature-file parsing failed. Carries the 1-based offending line.
class ParseError : public Error {
public:
    ParseError(const std::string& what_arg, int line)
        : Error(what_arg + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Two step bindings of the same kind match one step text.
class AmbiguousStepError : public Error {
public:
    using Error::Error;
};

/// A tag filter expression failed to parse.
class TagExpressionError : public Error {
public:
    using Error::Error;
};

/// Thrown by step procedures to fail the current Gherkin step.
class StepFailure : public Error {
public:
    using Error::Error;
};

} // namespace scenweave
