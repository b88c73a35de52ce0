#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "shiftkms/matrix.hpp"
#include "shiftkms/subshift.hpp"

namespace shiftkms {

// A parsed input document. Subshift documents ("full", "sft", "forbidden",
// "beta") fill `subshift`; "matrix" documents hold a nonnegative real matrix.
// `zero_one` is set whenever a 0/1 transition matrix is available (full, sft,
// and 0/1-valued "matrix" inputs).
struct ParsedInput {
    std::string type;
    std::optional<SubshiftSpec> subshift;
    std::optional<NonnegativeMatrix> matrix;
    std::optional<ZeroOneMatrix> zero_one;
    nlohmann::ordered_json canonical;
};

// Throws InvalidInput naming the offending field. Symbols are 1-based.
ParsedInput parse_spec(const nlohmann::json& doc);
ParsedInput parse_spec_text(const std::string& text);

}  // namespace shiftkms
