#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weylforge {

enum class ErrorCode {
    InvalidFamilyRank,
    SystemMismatch,
    UnsupportedFamily,
    NotDominant,
    NotRestricted,
    Overflow,
    OrbitTooLarge,
    FormMismatch,
    MissingDecompositionData,
    BranchExplosion,
    UnknownScenario,
    AmbiguousTopWeight,
    NoEmbedding,
    NoCertificate,
    InvalidInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace weylforge
