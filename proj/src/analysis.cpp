#include "shiftkms/analysis.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <algorithm>
#include <limits>

#include "shiftkms/equilibrium.hpp"
#include "shiftkms/errors.hpp"
#include "shiftkms/kernels.hpp"
#include "shiftkms/krieger.hpp"
#include "shiftkms/spectral.hpp"
#include "shiftkms/subshift.hpp"
#include "shiftkms/tracespace.hpp"

namespace shiftkms {
namespace {

using nlohmann::ordered_json;

// A section that does not apply to the given input kind.
struct NotApplicable : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct Context {
    const ParsedInput& input;
    const RunFlags& flags;
    std::optional<SubshiftSpec> subshift;
    std::vector<std::string>& warnings;
    std::vector<std::string>& failures;
    PowerOptions power() const { return PowerOptions{flags.tol, 100000}; }
};

const SubshiftSpec& need_subshift(const Context& c, const char* section) {
    if (!c.subshift) throw NotApplicable(std::string(section) + ": needs a subshift or 0/1 matrix input");
    return *c.subshift;
}

const ZeroOneMatrix& need_zero_one(const Context& c, const char* section) {
    if (!c.input.zero_one) {
        throw NotApplicable(std::string(section) + ": needs a 0/1 transition matrix (type full, sft or matrix)");
    }
    return *c.input.zero_one;
}

const ZeroOneMatrix& need_irreducible(const Context& c, const char* section) {
    const auto& a = need_zero_one(c, section);
    if (!irreducible(a)) throw PreconditionViolation(std::string(section) + ": matrix is reducible");
    return a;
}

ordered_json entropy_section(const Context& c) {
    const auto& spec = need_subshift(c, "entropy");
    const EntropyEstimate e = topological_entropy(spec, c.flags.max_n);
    ordered_json out;
    out["parameters"] = {{"n_max", c.flags.max_n}, {"tol", c.flags.tol}};
    ordered_json theta = ordered_json::array();
    for (const auto& t : e.theta) theta.push_back(big_to_json(t));
    out["theta"] = theta;
    out["log_rates"] = e.log_rates;
    out["fekete_bound"] = e.fekete_bound;
    out["extrapolated"] = e.extrapolated;
    out["method"] = e.method;
    if (e.exact) out["exact"] = *e.exact;
    return out;
}

ordered_json sign_json(const TemperatureSignReport& s) {
    return {{"sign", to_string(s.sign)}, {"lower_limit", s.lower_limit}, {"upper_limit", s.upper_limit}};
}

ordered_json kms_section(const Context& c) {
    ordered_json out;
    out["parameters"] = {{"tol", c.flags.tol}, {"depth", c.flags.depth}, {"reducible_mode", c.flags.reducible_mode}};
    if (c.input.zero_one) {
        KmsOptions opts;
        opts.power = c.power();
        opts.depth = c.flags.depth;
        opts.reducible_mode = c.flags.reducible_mode;
        const KmsReport r = kms_temperature(*c.input.zero_one, opts);
        out["lambda"] = r.lambda;
        out["beta"] = r.kms_beta;
        out["unique"] = r.unique;
        if (r.eigen_sequence) {
            out["eigen_sequence"] = r.eigen_sequence->levels;
            out["max_residual"] = r.eigen_sequence->max_residual();
        }
        if (r.bracket) {
            out["bracket"] = {r.bracket->first, r.bracket->second};
            c.warnings.push_back("reducible mode: kms.bracket lists candidate extremes over components");
        }
        out["temperature_sign"] = sign_json(temperature_sign(*c.input.zero_one, 64, 1e-9));
        return out;
    }
    if (c.input.matrix) {
        const BimoduleKms b = bimodule_kms(*c.input.matrix, c.flags.depth, c.power());
        out["lambda"] = b.lambda;
        out["beta"] = b.kms_beta;
        out["v0"] = b.v0;
        out["sequence"] = b.sequence;
        out["temperature_sign"] = sign_json(temperature_sign(*c.input.matrix, 64, 1e-9));
        return out;
    }
    throw NotApplicable("kms: needs a matrix input (type full, sft or matrix)");
}

ordered_json parry_section(const Context& c) {
    const auto& a = need_irreducible(c, "parry");
    const MarkovMeasure m = parry_measure(a, c.power());
    const double h = markov_entropy(m);
    ordered_json out;
    out["parameters"] = {{"tol", c.flags.tol}};
    out["lambda"] = m.lambda;
    out["u"] = m.u;
    out["v"] = m.v;
    out["p"] = m.p;
    out["pi"] = m.pi;
    out["entropy"] = h;
    out["log_lambda"] = std::log(m.lambda);
    if (std::fabs(h - std::log(m.lambda)) > 1e-9) c.failures.push_back("parry: entropy differs from log(lambda) by more than 1e-9");
    return out;
}

ordered_json krieger_section(const Context& c) {
    const auto& spec = need_subshift(c, "krieger");
    const SoficReport r = sofic_check(spec, c.flags.l_max, c.flags.depth);
    ordered_json out;
    out["parameters"] = {{"l_max", c.flags.l_max}, {"depth", c.flags.depth}};
    out["class_counts"] = r.counts;
    out["stabilized"] = r.stabilized;
    out["depths"] = r.depths;
    out["sofic_detected"] = r.sofic_detected;
    for (std::size_t i = 0; i < r.counts.size(); ++i) {
        if (!r.stabilized[i]) {
            c.warnings.push_back("krieger: stabilization not reached at l = " + std::to_string(i + 1) + " (depth " +
                                 std::to_string(r.depths[i]) + "); the count is a lower bound");
        }
    }
    return out;
}

ordered_json bracket_section(const Context& c) {
    const auto& spec = need_subshift(c, "bracket");
    const EntropyBracket b = entropy_bracket(spec, c.flags.max_n, c.flags.depth);
    ordered_json out;
    out["parameters"] = {{"n_max", c.flags.max_n}, {"depth", c.flags.depth}};
    out["lower"] = b.lower;
    out["upper"] = b.upper;
    out["width"] = b.upper - b.lower;
    out["correction"] = b.correction;
    out["correction_sequence"] = b.correction_sequence;
    out["sofic_detected"] = b.sofic_detected;
    out["trailing_window"] = b.trailing_window;
    return out;
}

ordered_json variational_section(const Context& c) {
    const auto& a = need_irreducible(c, "variational");
    const VariationalReport r = variational_scan(a, c.flags.samples, c.flags.seed, c.power());
    ordered_json out;
    out["parameters"] = {{"samples", c.flags.samples}, {"seed", c.flags.seed}, {"tol", c.flags.tol}};
    out["log_r"] = r.log_r;
    out["parry_entropy"] = r.parry_entropy;
    out["max_sample_entropy"] = r.max_sample_entropy;
    out["max_entropy"] = r.max_entropy;
    out["gap"] = r.gap;
    out["violations"] = r.violations;
    out["strictly_below"] = r.strictly_below;
    out["sample_entropies"] = r.sample_entropies;
    if (r.violations > 0) {
        c.failures.push_back("variational: " + std::to_string(r.violations) + " sampled measures exceed log r(A) + 1e-9");
    }
    if (std::fabs(r.parry_entropy - r.log_r) > 1e-9) c.failures.push_back("variational: the Parry entry misses log r(A)");
    return out;
}

ordered_json resolvent_section(const Context& c) {
    const auto& a = need_irreducible(c, "resolvent");
    const PerronData perron = perron_vectors(a, c.power());
    Vector v = perron.v;
    kernels::scale(v, 1.0 / kernels::sum(v));
    ordered_json out;
    out["parameters"] = {{"tol", c.flags.tol}};
    out["lambda"] = perron.lambda;
    ordered_json schedule = ordered_json::array();
    double last = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (double offset : {0.5, 0.1, 0.01, 1e-4}) {
        const ResolventVector r = resolvent_vector(a, perron, perron.lambda + offset);
        Vector normalized = r.a_t;
        kernels::scale(normalized, 1.0 / kernels::sum(normalized));
        const double distance = kernels::l1_distance(normalized, v);
        // Slack for inputs where a_t is already parallel to v up to rounding.
        monotone = monotone && distance <= last + 1e-14;
        last = distance;
        schedule.push_back({{"offset", offset}, {"t", r.t}, {"a_t", r.a_t}, {"pairing", r.pairing}, {"distance_to_v", distance}});
        // 1 - u^T a_t = r^T a_t with r = A u - lambda u, which a_t amplifies
        // like 1/(t - lambda) near the spectral radius.
        double mass = 0.0;
        for (double x : r.a_t) mass += std::fabs(x);
        const double allowed = std::max(1e-10, 2.0 * perron.residual * mass / offset);
        schedule.back()["pairing_tolerance"] = allowed;
        if (std::fabs(r.pairing - 1.0) > allowed) {
            std::ostringstream msg;
            msg << std::setprecision(17) << "resolvent: pairing u^T a_t = " << r.pairing << " at t = lambda + " << offset;
            c.failures.push_back(msg.str());
        }
    }
    out["schedule"] = schedule;
    out["monotone"] = monotone;
    if (!monotone) c.failures.push_back("resolvent: distance to v is not decreasing along the schedule");
    return out;
}

using SectionFn = ordered_json (*)(const Context&);

const std::vector<std::pair<std::string, SectionFn>>& sections() {
    static const std::vector<std::pair<std::string, SectionFn>> table{
        {"entropy", entropy_section},   {"kms", kms_section},
        {"parry", parry_section},       {"krieger", krieger_section},
        {"bracket", bracket_section},   {"variational", variational_section},
        {"resolvent", resolvent_section}};
    return table;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> names{"entropy", "kms",         "parry",     "krieger",
                                                "bracket", "variational", "resolvent", "all"};
    return names;
}

ordered_json big_to_json(const BigInt& x) {
    if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max()) return x.convert_to<std::uint64_t>();
    return x.str();
}

AnalysisReport run(const std::string& command, const ParsedInput& input, const RunFlags& flags) {
    const auto& names = known_commands();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
        throw InvalidInput("command: unknown command \"" + command + "\"");
    }
    AnalysisReport report;
    report.command = command;
    report.input_echo = input.canonical;

    std::optional<SubshiftSpec> subshift = input.subshift;
    if (!subshift && input.zero_one) subshift = SubshiftSpec::sft(*input.zero_one);
    Context ctx{input, flags, std::move(subshift), report.warnings, report.invariant_failures};

    for (const auto& [name, fn] : sections()) {
        if (command != "all" && command != name) continue;
        if (command == "all") {
            try {
                report.results.emplace_back(name, fn(ctx));
            } catch (const NotApplicable& e) {
                report.warnings.push_back(std::string("skipped ") + e.what());
            } catch (const PreconditionViolation& e) {
                report.warnings.push_back(std::string("skipped ") + e.what());
            }
        } else {
            report.results.emplace_back(name, fn(ctx));
        }
    }

    report.provenance["tool"] = "shiftkms";
    report.provenance["version"] = kToolVersion;
    report.provenance["command"] = command;
    report.provenance["parameters"] = {{"max_n", flags.max_n},     {"depth", flags.depth},
                                       {"l_max", flags.l_max},     {"tol", flags.tol},
                                       {"samples", flags.samples}, {"seed", flags.seed},
                                       {"reducible_mode", flags.reducible_mode}};
    report.provenance["kernel_backend"] = std::string(kernels::active().name);
    if (flags.timestamp) report.provenance["timestamp"] = utc_timestamp();
    return report;
}

ordered_json AnalysisReport::to_json() const {
    ordered_json doc;
    doc["command"] = command;
    doc["input_echo"] = input_echo;
    ordered_json res = ordered_json::object();
    for (const auto& [name, section] : results) res[name] = section;
    doc["results"] = res;
    doc["provenance"] = provenance;
    doc["warnings"] = warnings;
    doc["invariant_failures"] = invariant_failures;
    return doc;
}

AnalysisReport AnalysisReport::from_json(const ordered_json& doc) {
    AnalysisReport r;
    try {
        r.command = doc.at("command").get<std::string>();
        r.input_echo = doc.at("input_echo");
        for (const auto& item : doc.at("results").items()) r.results.emplace_back(item.key(), item.value());
        r.provenance = doc.at("provenance");
        r.warnings = doc.at("warnings").get<std::vector<std::string>>();
        r.invariant_failures = doc.at("invariant_failures").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("report: malformed (") + e.what() + ")");
    }
    return r;
}

std::string AnalysisReport::dump() const { return to_json().dump(2) + "\n"; }

}  // namespace shiftkms
