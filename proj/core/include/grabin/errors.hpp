#pragma once

#include <stdexcept>
#include <string>

namespace grabin {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. `line` is 1-based; 0 when unknown.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that uses something outside the supported subset.
class UnsupportedFeature : public Error {
public:
    UnsupportedFeature(std::string feature, const std::string& what) : Error(what), feature_(std::move(feature)) {}
    const std::string& feature() const { return feature_; }

private:
    std::string feature_;
};

/// A conjunct could not be brought into Buchi/co-Buchi form over the spec's propositions.
class NormalizationError : public Error {
public:
    using Error::Error;
};

class WrongAcceptanceKind : public NormalizationError {
public:
    using NormalizationError::NormalizationError;
};

class CapacityExceeded : public Error {
public:
    using Error::Error;
};

class NotRealizable : public Error {
public:
    using Error::Error;
};

class IncompatibleAlphabets : public Error {
public:
    using Error::Error;
};

/// A synthesized artifact failed its own certificate. Always a bug.
class CertificationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace grabin
