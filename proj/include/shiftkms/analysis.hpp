#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "shiftkms/spec_io.hpp"

namespace shiftkms {

inline constexpr const char* kToolVersion = "0.3.0";

struct RunFlags {
    int max_n = 30;
    int depth = 12;
    int l_max = 8;
    double tol = 1e-12;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    bool reducible_mode = false;
    bool timestamp = true;
};

struct AnalysisReport {
    std::string command;
    nlohmann::ordered_json input_echo;
    // Sections in fixed order: entropy, kms, parry, krieger, bracket,
    // variational, resolvent.
    std::vector<std::pair<std::string, nlohmann::ordered_json>> results;
    nlohmann::ordered_json provenance;
    std::vector<std::string> warnings;
    // Assertion-style failures (a computed invariant did not hold).
    std::vector<std::string> invariant_failures;

    nlohmann::ordered_json to_json() const;
    static AnalysisReport from_json(const nlohmann::ordered_json& doc);
    std::string dump() const;  // two-space indented, trailing newline

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

const std::vector<std::string>& known_commands();

// Runs one command ("all" runs every section that applies to the input).
// A single command that does not apply to the input throws InvalidInput.
AnalysisReport run(const std::string& command, const ParsedInput& input, const RunFlags& flags);

// Exact integers become JSON numbers when they fit in 64 bits, else decimal
// strings.
nlohmann::ordered_json big_to_json(const BigInt& x);

}  // namespace shiftkms
