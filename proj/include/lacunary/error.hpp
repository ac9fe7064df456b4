#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lacunary {

enum class ErrorCode {
    ExpansionOverflow,
    UndefinedInput,
    CapExceeded,
    Normalization,
    Inconsistency,
    NotApplicable,
    IrrationalShift,
    UndefinedValuation,
    Dependence,
    Precondition,
    CandidateBudget,
    SizeGuard,
    InvalidPoint,
    LaurentRejected,
    Parse,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ExpansionOverflow: return "expansion_overflow";
    case ErrorCode::UndefinedInput: return "undefined_input";
    case ErrorCode::CapExceeded: return "cap_exceeded";
    case ErrorCode::Normalization: return "normalization";
    case ErrorCode::Inconsistency: return "inconsistency";
    case ErrorCode::NotApplicable: return "not_applicable";
    case ErrorCode::IrrationalShift: return "irrational_shift";
    case ErrorCode::UndefinedValuation: return "undefined_valuation";
    case ErrorCode::Dependence: return "dependence";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::CandidateBudget: return "candidate_budget";
    case ErrorCode::SizeGuard: return "size_guard";
    case ErrorCode::InvalidPoint: return "invalid_point";
    case ErrorCode::LaurentRejected: return "laurent_rejected";
    case ErrorCode::Parse: return "parse";
    }
    return "unknown";
}

/// Domain error carrying a machine-readable code.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace lacunary
