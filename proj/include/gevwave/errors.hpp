#pragma once

#include <stdexcept>
#include <string>

namespace gevwave {

enum class ErrorKind { domain, input, precondition, convergence, resolution, verification, config };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(ErrorKind::precondition, what) {}
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : Error(ErrorKind::convergence, what), last_residual_(last_residual) {}
    [[nodiscard]] double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

class ResolutionError : public Error {
public:
    explicit ResolutionError(const std::string& what) : Error(ErrorKind::resolution, what) {}
};

// Carries a slash-separated path naming the failed assertion, e.g. "verify-onw/gram/max_offdiag".
class VerificationError : public Error {
public:
    VerificationError(std::string path, const std::string& what)
        : Error(ErrorKind::verification, what), path_(std::move(path)) {}
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(ErrorKind::config, what), field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Process exit status for each error family.
[[nodiscard]] constexpr int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::verification:
        return 1;
    case ErrorKind::domain:
    case ErrorKind::input:
    case ErrorKind::precondition:
    case ErrorKind::config:
        return 2;
    case ErrorKind::convergence:
    case ErrorKind::resolution:
        return 3;
    }
    return 3;
}

} // namespace gevwave
