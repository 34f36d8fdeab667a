#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace qbc {

/// Outcome of one verification: the check passed, a genuine mismatch was
/// found, or every retry draw of random parameters landed on a pole.
enum class Verdict { kPass, kFail, kPoleRetryExhausted };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::kPass: return "pass";
        case Verdict::kFail: return "fail";
        case Verdict::kPoleRetryExhausted: return "pole-retry-exhausted";
    }
    return "fail";
}

/// First point of disagreement backing a failed check: the series exponent
/// where the coefficients differ (0 for plain scalar comparisons) and both
/// values rendered as strings.
struct Witness {
    long exponent = 0;
    std::string lhs;
    std::string rhs;
};

/// Structured verdict of one identity or property check, carrying enough
/// context (parameters, mode, truncation order, seed) to reproduce the run.
struct Report {
    std::string id;
    std::map<std::string, std::string> params;
    std::string mode;  // "exact-rational" | "q-series" | "p-series" | "float"
    int order = 0;
    Verdict verdict = Verdict::kPass;
    std::optional<Witness> witness;  // present whenever verdict is kFail
    std::uint64_t seed = 0;
    double wall_ms = 0.0;

    bool passed() const { return verdict == Verdict::kPass; }
};

}  // namespace qbc
