#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffgs {

enum class ErrorCode {
    NonPrime,
    ReducibleModulus,
    BadParameter,
    OverflowGuard,
    LengthMismatch,
    FieldMismatch,
    BadTarget,
    ShapeMismatch,
    RelationViolation,
    TwistViolation,
    AnnihilatorViolation,
    NotComposable,
    NotEquivariant,
    BudgetExceeded,
    PrecisionExceeded,
    UnstableTruncation,
    Precondition,
    MissingDegree,
    MissingDeRhamData,
    SchemaError,
    ShapeError,
};

std::string_view error_name(ErrorCode code);

/// Every library failure is reported through this exception; `code()` is
/// what callers (notably the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond)
        fail(code, what);
}

} // namespace ffgs
