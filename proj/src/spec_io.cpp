#include "shiftkms/spec_io.hpp"

#include <cmath>
#include <set>
#include <string>

#include "shiftkms/errors.hpp"

namespace shiftkms {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw InvalidInput(field + ": " + message);
}

void allow_only(const json& doc, std::initializer_list<const char*> keys) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& item : doc.items())
        if (!allowed.count(item.key())) fail(item.key(), "unknown field for type \"" + doc["type"].get<std::string>() + "\"");
}

const json& require(const json& doc, const char* field) {
    if (!doc.contains(field)) fail(field, "missing");
    return doc[field];
}

int get_int(const json& value, const std::string& field, int min) {
    if (!value.is_number_integer()) fail(field, "must be an integer");
    const auto x = value.get<long long>();
    if (x < min || x > 1'000'000'000) fail(field, "must be >= " + std::to_string(min));
    return static_cast<int>(x);
}

std::vector<std::vector<double>> get_matrix(const json& value) {
    if (!value.is_array() || value.empty()) fail("matrix", "must be a nonempty array of rows");
    const std::size_t d = value.size();
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < d; ++i) {
        const std::string where = "matrix[" + std::to_string(i) + "]";
        if (!value[i].is_array() || value[i].size() != d) fail(where, "must be a row of length " + std::to_string(d));
        std::vector<double> row;
        for (std::size_t j = 0; j < d; ++j) {
            const json& x = value[i][j];
            if (!x.is_number()) fail(where + "[" + std::to_string(j) + "]", "must be a number");
            const double v = x.get<double>();
            if (!std::isfinite(v) || v < 0.0) fail(where + "[" + std::to_string(j) + "]", "must be finite and >= 0");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::optional<ZeroOneMatrix> as_zero_one(const std::vector<std::vector<double>>& rows) {
    std::vector<std::vector<int>> ints;
    for (const auto& row : rows) {
        std::vector<int> r;
        for (double x : row) {
            if (x != 0.0 && x != 1.0) return std::nullopt;
            r.push_back(static_cast<int>(x));
        }
        ints.push_back(std::move(r));
    }
    return ZeroOneMatrix(ints);
}

void require_no_zero_lines(const std::vector<std::vector<double>>& rows) {
    const std::size_t d = rows.size();
    for (std::size_t i = 0; i < d; ++i) {
        bool row = false, col = false;
        for (std::size_t j = 0; j < d; ++j) {
            row = row || rows[i][j] != 0.0;
            col = col || rows[j][i] != 0.0;
        }
        if (!row) fail("matrix", "row " + std::to_string(i + 1) + " is zero");
        if (!col) fail("matrix", "column " + std::to_string(i + 1) + " is zero");
    }
}

}  // namespace

ParsedInput parse_spec(const json& doc) {
    if (!doc.is_object()) fail("document", "must be a JSON object");
    const json& type_field = require(doc, "type");
    if (!type_field.is_string()) fail("type", "must be a string");
    ParsedInput out;
    out.type = type_field.get<std::string>();
    out.canonical["type"] = out.type;

    if (out.type == "full") {
        allow_only(doc, {"type", "alphabet"});
        const int d = get_int(require(doc, "alphabet"), "alphabet", 1);
        out.subshift = SubshiftSpec::full(d);
        out.zero_one = ZeroOneMatrix::ones(static_cast<std::size_t>(d));
        out.matrix = out.zero_one->values();
        out.canonical["alphabet"] = d;
    } else if (out.type == "sft" || out.type == "matrix") {
        allow_only(doc, {"type", "matrix"});
        const auto rows = get_matrix(require(doc, "matrix"));
        require_no_zero_lines(rows);
        out.matrix = NonnegativeMatrix(rows);
        out.zero_one = as_zero_one(rows);
        if (out.type == "sft") {
            if (!out.zero_one) fail("matrix", "an sft matrix must have 0/1 entries");
            out.subshift = SubshiftSpec::sft(*out.zero_one);
            out.canonical["matrix"] = out.zero_one->to_rows();
        } else {
            out.canonical["matrix"] = rows;
        }
    } else if (out.type == "forbidden") {
        allow_only(doc, {"type", "alphabet", "words", "length_cap"});
        const int d = get_int(require(doc, "alphabet"), "alphabet", 1);
        const json& words_field = require(doc, "words");
        if (!words_field.is_array()) fail("words", "must be an array of words");
        std::vector<Word> words;
        for (std::size_t i = 0; i < words_field.size(); ++i) {
            const std::string where = "words[" + std::to_string(i) + "]";
            const json& w = words_field[i];
            if (!w.is_array() || w.empty()) fail(where, "must be a nonempty array of symbols");
            Word word;
            for (std::size_t k = 0; k < w.size(); ++k) {
                if (!w[k].is_number_integer()) fail(where + "[" + std::to_string(k) + "]", "must be an integer symbol");
                const auto s = w[k].get<long long>();
                if (s < 1 || s > d) {
                    fail(where + "[" + std::to_string(k) + "]",
                         "symbol " + std::to_string(s) + " is outside {1,...," + std::to_string(d) + "}");
                }
                word.push_back(static_cast<Symbol>(s));
            }
            words.push_back(std::move(word));
        }
        std::optional<int> cap;
        if (doc.contains("length_cap")) cap = get_int(doc["length_cap"], "length_cap", 1);
        out.subshift = SubshiftSpec::forbidden(d, std::move(words), cap);
        const auto& f = *out.subshift->as<ForbiddenShift>();
        out.canonical["alphabet"] = d;
        out.canonical["words"] = f.words;
        if (cap) out.canonical["length_cap"] = *cap;
    } else if (out.type == "beta") {
        allow_only(doc, {"type", "beta", "digit_depth"});
        const json& b = require(doc, "beta");
        if (!b.is_number()) fail("beta", "must be a number");
        const double beta = b.get<double>();
        if (!std::isfinite(beta) || beta <= 1.0) fail("beta", "must be a finite number > 1");
        const int depth = doc.contains("digit_depth") ? get_int(doc["digit_depth"], "digit_depth", 1) : 64;
        out.subshift = SubshiftSpec::beta(beta, depth);
        out.canonical["beta"] = beta;
        out.canonical["digit_depth"] = depth;
    } else {
        fail("type", "unknown type \"" + out.type + "\"; expected full, sft, forbidden, beta or matrix");
    }
    return out;
}

ParsedInput parse_spec_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("document: not valid JSON (") + e.what() + ")");
    }
    return parse_spec(doc);
}

}  // namespace shiftkms
