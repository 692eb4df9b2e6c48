#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace annulus {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the expression parser. Carries the byte offset of the failure
/// and the set of tokens that would have been accepted there.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string message, std::vector<std::string> expected = {})
        : Error(format(offset, message, expected)),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string format(std::size_t offset, const std::string& message,
                              const std::vector<std::string>& expected) {
        std::string s = "parse error at offset " + std::to_string(offset) + ": " + message;
        if (!expected.empty()) {
            s += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i > 0) s += ", ";
                s += expected[i];
            }
            s += ")";
        }
        return s;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownIdentifierError : public ParseError {
public:
    UnknownIdentifierError(std::size_t offset, const std::string& name)
        : ParseError(offset, "unknown identifier '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// Evaluation left the real domain (ln of non-positive argument, sqrt of a
/// negative number, division by zero, fractional power of a negative base).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Node that differentiate() cannot handle (abs).
class NonDifferentiableError : public Error {
public:
    explicit NonDifferentiableError(const std::string& what) : Error(what) {}
};

/// |V(p)| too small for a formula that divides by it.
class EquilibriumError : public Error {
public:
    explicit EquilibriumError(const std::string& what) : Error(what) {}
};

/// ∇H(p) vanishes where a gradient-based construction needs it.
class SingularGradientError : public Error {
public:
    explicit SingularGradientError(const std::string& what) : Error(what) {}
};

/// |V ∧ W| below tolerance where transversality is required.
class TangencyError : public Error {
public:
    explicit TangencyError(const std::string& what) : Error(what) {}
};

/// A normalizer construction was evaluated outside its domain guard.
class GuardViolation : public Error {
public:
    GuardViolation(const std::string& construction, double x, double y)
        : Error("domain guard of '" + construction + "' normalizer violated at (" +
                std::to_string(x) + ", " + std::to_string(y) + ")"),
          construction_(construction) {}
    const std::string& construction() const { return construction_; }

private:
    std::string construction_;
};

/// The adaptive step size collapsed (stiffness or a singular field).
class StepUnderflowError : public Error {
public:
    explicit StepUnderflowError(const std::string& what) : Error(what) {}
};

/// No section return was found within the time horizon.
class NotPeriodicError : public Error {
public:
    explicit NotPeriodicError(const std::string& what) : Error(what) {}
};

/// Section crossings happened but none came back near the anchor.
class AmbiguousReturnError : public Error {
public:
    AmbiguousReturnError(const std::string& what, std::vector<double> candidate_times)
        : Error(what), candidates_(std::move(candidate_times)) {}
    const std::vector<double>& candidate_times() const { return candidates_; }

private:
    std::vector<double> candidates_;
};

/// Fewer than two usable levels in an annulus scan.
class UndeterminedScanError : public Error {
public:
    explicit UndeterminedScanError(const std::string& what) : Error(what) {}
};

/// Bad run configuration (CLI flags or config file).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace annulus
