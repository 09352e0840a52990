#pragma once

#include <stdexcept>
#include <string>

namespace uavchan {

/// Invalid channel or controller description (non-positive rate, BER >= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The regression design matrix does not have full column rank.
class SingularFitError : public DomainError {
public:
    SingularFitError(const std::string& column, const std::string& what)
        : DomainError(what), column_(column) {}

    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

/// The fitted model predicts a transaction size of zero bits or less.
class NonPhysicalPredictionError : public DomainError {
public:
    NonPhysicalPredictionError(double raw, const std::string& what)
        : DomainError(what), raw_(raw) {}

    double raw_value() const noexcept { return raw_; }

private:
    double raw_;
};

/// The adaptation loop hit its step cap before recording enough threshold events.
class NonTerminationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// File could not be read or written, or a model file violates its schema.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace uavchan
