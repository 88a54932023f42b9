#pragma once

#include <stdexcept>
#include <string>

namespace cosupp {

enum class ErrorKind {
    UnsupportedRing,
    NonPidBackend,
    UnsupportedComposition,
    InfiniteRank,
    WindowOverflow,
    DegreeRange,
    PreconditionViolation,
    NonzeroForbiddenComponent,
    CosupportViolation,
    UnsupportedShape,
    Parse,
    Validation,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& what) { throw Error(k, what); }

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::UnsupportedRing: return "unsupported-ring";
    case ErrorKind::NonPidBackend: return "non-PID-backend";
    case ErrorKind::UnsupportedComposition: return "unsupported-composition";
    case ErrorKind::InfiniteRank: return "infinite-rank";
    case ErrorKind::WindowOverflow: return "window-overflow";
    case ErrorKind::DegreeRange: return "degree-range";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::NonzeroForbiddenComponent: return "nonzero-forbidden-component";
    case ErrorKind::CosupportViolation: return "cosupport-violation";
    case ErrorKind::UnsupportedShape: return "unsupported-shape";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Validation: return "validation-error";
    }
    return "error";
}

} // namespace cosupp
