#pragma once

#include <stdexcept>
#include <string>

namespace freqlab {

enum class Errc {
    EmptyPrefix,
    UnknownLabel,
    BadSchedule,
    EmptySelection,
    LengthMismatch,
    ConditionUndefined,
    NotCombinable,
    UnknownAtom,
    SpaceMismatch,
    NoDensity,
    StructureViolation,
    NotNormalized,
    BadConfig,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::EmptyPrefix: return "EmptyPrefix";
        case Errc::UnknownLabel: return "UnknownLabel";
        case Errc::BadSchedule: return "BadSchedule";
        case Errc::EmptySelection: return "EmptySelection";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::ConditionUndefined: return "ConditionUndefined";
        case Errc::NotCombinable: return "NotCombinable";
        case Errc::UnknownAtom: return "UnknownAtom";
        case Errc::SpaceMismatch: return "SpaceMismatch";
        case Errc::NoDensity: return "NoDensity";
        case Errc::StructureViolation: return "StructureViolation";
        case Errc::NotNormalized: return "NotNormalized";
        case Errc::BadConfig: return "BadConfig";
    }
    return "Unknown";
}

}  // namespace freqlab
