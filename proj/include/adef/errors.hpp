#pragma once

#include <stdexcept>
#include <string>

namespace adef {

struct NonIntegrable : std::runtime_error {
    explicit NonIntegrable(const std::string& what) : std::runtime_error(what) {}
};

struct NonDifferentiable : std::runtime_error {
    explicit NonDifferentiable(const std::string& what) : std::runtime_error(what) {}
};

struct TruncationMismatch : std::runtime_error {
    explicit TruncationMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NotUnitForm : std::runtime_error {
    explicit NotUnitForm(const std::string& what) : std::runtime_error(what) {}
};

struct ResolventPrecondition : std::runtime_error {
    explicit ResolventPrecondition(const std::string& what) : std::runtime_error(what) {}
};

struct NotInEPrime : std::runtime_error {
    explicit NotInEPrime(const std::string& what) : std::runtime_error(what) {}
};

struct NotNormalizable : std::runtime_error {
    explicit NotNormalizable(const std::string& what) : std::runtime_error(what) {}
};

struct ParityViolation : std::runtime_error {
    explicit ParityViolation(const std::string& what) : std::runtime_error(what) {}
};

struct AugmentationViolation : std::runtime_error {
    explicit AugmentationViolation(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace adef
