// ml-antiunify: parse a problem file, antiunify, encode, generate the proof
// object, and re-check it with the trusted kernel. Prints `Checked: true` or
// `Checked: false`; exit 0 on success, 1 on a failed check, 2 on input
// errors.

#include "auproof/antiunify.hpp"
#include "auproof/encode.hpp"
#include "auproof/error.hpp"
#include "auproof/oracle.hpp"
#include "auproof/pattern.hpp"
#include "auproof/problem_file.hpp"
#include "auproof/proof.hpp"
#include "auproof/proof_check.hpp"
#include "auproof/proof_gen.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("failed while writing '" + path + "'");
    }
}

std::size_t parse_depth_option(const std::string& text) {
    const std::string prefix = "depth=";
    if (text.rfind(prefix, 0) != 0) {
        throw auproof::Error(auproof::ErrorCode::SyntaxError,
                             "--verify-semantics expects an argument of the "
                             "form depth=N, got '" +
                                 text + "'");
    }
    const std::string digits = text.substr(prefix.size());
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos) {
        throw auproof::Error(auproof::ErrorCode::SyntaxError,
                             "--verify-semantics depth must be a positive "
                             "integer, got '" +
                                 digits + "'");
    }
    return static_cast<std::size_t>(std::stoul(digits));
}

// Cross-checks the run on ground instances: every consecutive encoding pair
// along the trace, plus (t1 \/ t2) against the final encoding. Returns true
// when every comparison (or the vacuous empty-universe case) passes.
bool verify_semantics(const auproof::ProblemSpec& spec,
                      const auproof::AuResult& result, std::size_t depth) {
    using namespace auproof;
    const GroundUniverse universe(spec.signature, depth);
    if (universe.empty()) {
        std::cout << "Semantics: vacuous (no ground terms at depth "
                  << universe.depth() << ")\n";
        return true;
    }
    const std::vector<AuState> states = replay_trace(result.trace);
    std::vector<PatternPtr> encodings;
    encodings.reserve(states.size());
    for (const auto& state : states) {
        encodings.push_back(encode_problem(state));
    }
    const PatternPtr claim =
        MLPattern::disj(embed_term(spec.left), embed_term(spec.right));

    std::size_t environments = 0;
    for (std::size_t i = 0; i + 1 < encodings.size(); ++i) {
        const EquivReport report =
            check_equiv_report(encodings[i], encodings[i + 1], universe);
        environments += report.environments_checked;
        if (!report.equivalent) {
            std::cout << "Semantics: step " << (i + 1)
                      << " encoding differs — " << report.counterexample
                      << "\n";
            return false;
        }
    }
    const EquivReport final_report =
        check_equiv_report(claim, encodings.back(), universe);
    environments += final_report.environments_checked;
    if (!final_report.equivalent) {
        std::cout << "Semantics: final encoding differs from t1 \\/ t2 — "
                  << final_report.counterexample << "\n";
        return false;
    }
    std::cout << "Semantics: equivalent (depth " << universe.depth() << ", "
              << universe.size() << " ground terms, " << environments
              << " environments)\n";
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Antiunification with certified matching-logic proof objects"};
    std::string input_path;
    std::string emit_path;
    std::string check_path;
    std::string semantics_arg;
    bool json = false;
    bool stats = false;

    app.add_option("input", input_path,
                   "problem file with variables:/symbols:/problem: lines");
    app.add_option("--emit-proof", emit_path,
                   "write the generated proof object to PATH");
    app.add_flag("--json", json,
                 "also write a JSON mirror next to --emit-proof (PATH.json)");
    app.add_option("--check-only", check_path,
                   "check an existing proof file and exit");
    app.add_option("--verify-semantics", semantics_arg,
                   "cross-check encodings on ground instances; depth=N");
    app.add_flag("--stats", stats, "print k=<steps> lines=<line count>");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!check_path.empty()) {
            if (!input_path.empty() || !emit_path.empty() || json ||
                !semantics_arg.empty()) {
                std::cerr << "error: --check-only takes no other inputs\n";
                return 2;
            }
            const auproof::ProofObject proof =
                auproof::parse_proof(read_file(check_path));
            const auproof::Verdict verdict = auproof::check_proof(proof);
            if (stats) {
                std::cout << "lines=" << proof.lines.size() << "\n";
            }
            if (!verdict.checked && verdict.first_failure) {
                const std::size_t bad = *verdict.first_failure;
                std::cerr << "line " << (bad + 1) << ": "
                          << verdict.lines[bad].message << "\n";
            }
            std::cout << "Checked: " << (verdict.checked ? "true" : "false")
                      << "\n";
            return verdict.checked ? 0 : 1;
        }

        if (input_path.empty()) {
            std::cerr << "error: an input file (or --check-only) is "
                         "required\n";
            return 2;
        }
        if (json && emit_path.empty()) {
            std::cerr << "error: --json requires --emit-proof\n";
            return 2;
        }
        std::size_t depth = auproof::GroundUniverse::depth_default;
        if (!semantics_arg.empty()) {
            depth = parse_depth_option(semantics_arg);
        }

        const auproof::ProblemSpec spec =
            auproof::parse_spec(read_file(input_path));
        const auproof::AuResult result =
            auproof::antiunify(spec.left, spec.right, spec.signature);
        const auproof::ProofObject proof =
            auproof::gen_full(result, spec.signature);

        if (!emit_path.empty()) {
            write_file(emit_path, auproof::render_proof(proof));
            if (json) {
                write_file(emit_path + ".json",
                           auproof::proof_to_json_string(proof));
            }
        }
        if (stats) {
            std::cout << "k=" << result.step_count
                      << " lines=" << proof.lines.size() << "\n";
        }

        bool semantics_ok = true;
        if (!semantics_arg.empty()) {
            semantics_ok = verify_semantics(spec, result, depth);
        }

        const auproof::Verdict verdict = auproof::check_proof(proof);
        if (!verdict.checked && verdict.first_failure) {
            const std::size_t bad = *verdict.first_failure;
            std::cerr << "line " << (bad + 1) << ": "
                      << verdict.lines[bad].message << "\n";
        }
        std::cout << "Checked: " << (verdict.checked ? "true" : "false")
                  << "\n";
        return (verdict.checked && semantics_ok) ? 0 : 1;
    } catch (const auproof::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
