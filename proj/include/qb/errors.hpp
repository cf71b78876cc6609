#pragma once

#include <stdexcept>
#include <string>

namespace qb {

enum class ErrorKind {
    Domain,
    PoleInLowerParameter,
    NonConvergent,
    InsufficientTruncation,
    InsufficientWindow,
    DegreeNegative,
    PlanInvalid,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Domain: return "DomainError";
        case ErrorKind::PoleInLowerParameter: return "PoleInLowerParameter";
        case ErrorKind::NonConvergent: return "NonConvergent";
        case ErrorKind::InsufficientTruncation: return "InsufficientTruncation";
        case ErrorKind::InsufficientWindow: return "InsufficientWindow";
        case ErrorKind::DegreeNegative: return "DegreeNegative";
        case ErrorKind::PlanInvalid: return "PlanInvalid";
    }
    return "Error";
}

class QError : public std::runtime_error {
public:
    QError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct DomainError : QError {
    explicit DomainError(const std::string& w) : QError(ErrorKind::Domain, w) {}
};
struct PoleInLowerParameter : QError {
    explicit PoleInLowerParameter(const std::string& w) : QError(ErrorKind::PoleInLowerParameter, w) {}
};
struct NonConvergent : QError {
    explicit NonConvergent(const std::string& w) : QError(ErrorKind::NonConvergent, w) {}
};
struct InsufficientTruncation : QError {
    explicit InsufficientTruncation(const std::string& w)
        : QError(ErrorKind::InsufficientTruncation, w) {}
};
struct InsufficientWindow : QError {
    explicit InsufficientWindow(const std::string& w) : QError(ErrorKind::InsufficientWindow, w) {}
};
struct DegreeNegative : QError {
    explicit DegreeNegative(const std::string& w) : QError(ErrorKind::DegreeNegative, w) {}
};
struct PlanInvalid : QError {
    explicit PlanInvalid(const std::string& w) : QError(ErrorKind::PlanInvalid, w) {}
};

}  // namespace qb
