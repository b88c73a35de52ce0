// shiftkms: analyse a subshift or transition matrix and print a JSON report.
//
//   shiftkms kms golden.json
//   echo '{"type":"full","alphabet":3}' | shiftkms all --no-timestamp

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "shiftkms/analysis.hpp"
#include "shiftkms/errors.hpp"
#include "shiftkms/kernels.hpp"

namespace {

constexpr int kBadInput = 1;
constexpr int kInvariantFailure = 2;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    std::ifstream in(path);
    if (!in) throw shiftkms::InvalidInput("input: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool choose_kernel(const std::string& name) {
    using shiftkms::kernels::Backend;
    if (name == "auto") return shiftkms::kernels::select_backend(shiftkms::kernels::best_available());
    if (name == "scalar") return shiftkms::kernels::select_backend(Backend::Scalar);
    if (name == "avx2") return shiftkms::kernels::select_backend(Backend::Avx2);
    if (name == "neon") return shiftkms::kernels::select_backend(Backend::Neon);
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy, KMS temperatures and Krieger counts for subshifts"};
    shiftkms::RunFlags flags;
    std::string command;
    std::string input_path;
    std::string output_path;
    std::string kernel = "auto";
    bool no_timestamp = false;

    app.add_option("command", command, "entropy | kms | parry | krieger | bracket | variational | resolvent | all")
        ->required()
        ->check(CLI::IsMember(shiftkms::known_commands()));
    app.add_option("input", input_path, "JSON document (default: stdin)");
    app.add_option("--max-n", flags.max_n, "longest word length for entropy and bracket")->capture_default_str();
    app.add_option("--depth", flags.depth, "proxy depth for Krieger classes and eigen-sequences")->capture_default_str();
    app.add_option("--l-max", flags.l_max, "largest past length for Krieger counts")->capture_default_str();
    app.add_option("--tol", flags.tol, "power iteration tolerance")->capture_default_str();
    app.add_option("--samples", flags.samples, "sampled measures for the variational scan")->capture_default_str();
    app.add_option("--seed", flags.seed, "sampling seed")->capture_default_str();
    app.add_flag("--reducible-mode", flags.reducible_mode, "bracket temperatures of reducible matrices");
    app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp from the report");
    app.add_option("-o,--output", output_path, "write the report here instead of stdout");
    app.add_option("--kernel", kernel, "dense kernel variant")
        ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kBadInput;
    }
    flags.timestamp = !no_timestamp;
    if (!choose_kernel(kernel)) {
        std::cerr << "shiftkms: kernel " << kernel << " is not available on this machine\n";
        return kBadInput;
    }

    try {
        const auto input = shiftkms::parse_spec_text(read_input(input_path));
        const auto report = shiftkms::run(command, input, flags);
        const std::string text = report.dump();
        if (output_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(output_path);
            if (!out) throw shiftkms::InvalidInput("output: cannot write " + output_path);
            out << text;
        }
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
        if (!report.invariant_failures.empty()) {
            for (const auto& f : report.invariant_failures) std::cerr << "invariant failed: " << f << "\n";
            return kInvariantFailure;
        }
        return 0;
    } catch (const shiftkms::InvariantViolation& e) {
        std::cerr << "shiftkms: invariant violated: " << e.what() << "\n";
        return kInvariantFailure;
    } catch (const shiftkms::ConvergenceError& e) {
        std::cerr << "shiftkms: " << e.what() << " (residual " << e.residual() << ")\n";
        return kInvariantFailure;
    } catch (const shiftkms::Error& e) {
        std::cerr << "shiftkms: " << e.what() << "\n";
        return kBadInput;
    }
}
