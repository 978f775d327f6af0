// quadcode: build, verify, extend and inspect plane codes of PG(5, q).
//
// Exit codes: 0 ok, 1 property violation, 2 usage or parse error, 3 I/O error.

#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "quadcode/codefile.hpp"
#include "quadcode/construction.hpp"
#include "quadcode/inspect.hpp"
#include "quadcode/verify.hpp"

namespace {

using namespace quadcode;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool checked_q(unsigned q) { return q >= 2 && q <= 5; }
bool unchecked_q(unsigned q) { return q == 7 || q == 8 || q == 9; }

void require_q(unsigned q, bool allow_unchecked) {
    if (checked_q(q)) return;
    if (unchecked_q(q)) {
        if (allow_unchecked) return;
        throw UsageError("q = " + std::to_string(q) + " is only available with --unchecked");
    }
    throw UsageError("unsupported q = " + std::to_string(q) + " (supported: 2, 3, 4, 5; 7, 8, 9 with --unchecked)");
}

std::string distance_str(const VerificationReport& r) {
    return r.min_distance ? std::to_string(*r.min_distance) : std::string("-");
}

void print_verification(std::ostream& os, const VerificationReport& r, const std::vector<Subspace>& planes) {
    os << "method: " << to_string(r.method) << '\n'
       << "M: " << r.M << '\n'
       << "min-distance: " << distance_str(r) << '\n'
       << "elapsed: " << std::fixed << std::setprecision(3) << r.elapsed << "s\n"
       << std::defaultfloat;
    if (r.worst_pair) {
        const auto [i, j] = *r.worst_pair;
        os << "worst-pair: " << i << ' ' << j << '\n'
           << "  " << planes[i].str() << '\n'
           << "  " << planes[j].str() << '\n';
    }
    os << "verdict: " << (r.ok() ? "ok" : "violation") << '\n';
}

int cmd_build(unsigned q, const std::string& out, const std::string& format, const std::string& report,
              bool unchecked) {
    require_q(q, unchecked);
    const Context ctx(q);
    CodeFile f{build_code(ctx), "quadric-veronese"};
    const auto spaces = f.code.spaces();
    const VerificationReport v = verify_line_index(ctx.F(), spaces);
    const ParameterReport rep = parameter_report(ctx, f.code, v);
    if (!out.empty()) {
        write_file(out, serialize(f, format == "json" ? FileFormat::Json : FileFormat::Text));
    }
    if (report == "json") {
        std::cout << to_json(rep) << '\n';
        return rep.sizes_match() && v.ok() ? kOk : kViolation;
    }
    std::cout << to_text(rep);
    if (q == 2) std::cout << "largest (6, M, 4; 3)_2 code: 77\n";
    if (!out.empty()) std::cout << "wrote " << f.code.planes.size() << " planes to " << out << '\n';
    return rep.sizes_match() && v.ok() ? kOk : kViolation;
}

int cmd_verify(const std::string& in, const std::string& method, unsigned threads) {
    const CodeFile f = parse_code_file(read_file(in));
    const FieldPtr F = Field::of_order(f.code.q);
    const auto planes = f.code.spaces();
    std::cout << "q: " << f.code.q << '\n';
    if (method == "naive" || method == "lineindex") {
        const auto r = method == "naive" ? verify_naive(*F, planes, threads) : verify_line_index(*F, planes);
        print_verification(std::cout, r, planes);
        return r.ok() ? kOk : kViolation;
    }
    const auto a = verify_naive(*F, planes, threads);
    const auto b = verify_line_index(*F, planes);
    print_verification(std::cout, a, planes);
    print_verification(std::cout, b, planes);
    const bool agree = a.min_distance == b.min_distance && a.ok() == b.ok();
    std::cout << "methods-agree: " << (agree ? "yes" : "no") << '\n';
    return agree && a.ok() ? kOk : kViolation;
}

int cmd_extend(unsigned q, const std::string& in, bool list, unsigned threads) {
    Code code;
    if (!in.empty()) {
        code = parse_code_file(read_file(in)).code;
        if (q != 0 && q != code.q) throw UsageError("--q does not match the code file");
        q = code.q;
    } else {
        if (q == 0) throw UsageError("extend needs --q or --in");
        require_q(q, false);
        code = build_code(q);
    }
    if (!checked_q(q)) throw UsageError("plane enumeration is limited to q <= 5");
    const FieldPtr F = Field::of_order(q);
    const ExtensionReport r = completeness_check(*F, code.spaces(), threads);
    std::cout << "q: " << q << '\n'
              << "M: " << code.planes.size() << '\n'
              << "candidates: " << r.candidates << '\n'
              << "addable: " << r.addable.size() << '\n'
              << "greedy-added: " << r.greedy_added.size() << '\n'
              << "complete: " << (r.addable.empty() ? "yes" : "no") << '\n'
              << "elapsed: " << std::fixed << std::setprecision(3) << r.elapsed << "s\n";
    if (list) {
        for (const auto& s : r.addable) std::cout << "addable " << s.str() << '\n';
        for (const auto& s : r.greedy_added) std::cout << "greedy " << s.str() << '\n';
    }
    return kOk;
}

int cmd_classify(unsigned q) {
    require_q(q, true);
    const Context ctx(q);
    const QuadricCensus got = quadric_census(ctx.plane), want = expected_census(q);
    std::cout << "q: " << q << '\n'
              << "repeated-lines: " << got.repeated << " (expected " << want.repeated << ")\n"
              << "bi-lines: " << got.bilines << " (expected " << want.bilines << ")\n"
              << "imaginary-bi-lines: " << got.imaginary << " (expected " << want.imaginary << ")\n"
              << "conics: " << got.conics << " (expected " << want.conics << ")\n"
              << "census: (" << got.repeated << ", " << got.bilines << ", " << got.imaginary << ", " << got.conics
              << ")\n"
              << "cubic-mismatches: " << got.cubic_mismatches << '\n';
    return got == want ? kOk : kViolation;
}

int cmd_inspect(unsigned q, const std::string& which) {
    require_q(q, true);
    std::vector<Suite> suites;
    if (which == "all") {
        suites = all_suites();
    } else {
        const auto s = suite_from_string(which);
        if (!s) throw UsageError("unknown check: " + which);
        if (!suite_supports(*s, q))
            throw UsageError("check '" + which + "' needs " + std::string(suite_bounds(*s)));
        suites = {*s};
    }
    const Context ctx(q);
    bool ok = true;
    for (Suite s : suites) {
        std::cout << "[" << to_string(s) << "]\n";
        if (!suite_supports(s, q)) {
            std::cout << "  skipped (needs " << suite_bounds(s) << ")\n";
            continue;
        }
        for (const auto& r : run_suite(ctx, s)) {
            const char* tag = r.informational ? "info" : r.passed ? "pass" : "FAIL";
            std::cout << "  " << tag << "  " << r.name;
            if (!r.detail.empty()) std::cout << ": " << r.detail;
            std::cout << '\n';
            ok = ok && (r.informational || r.passed);
        }
    }
    return ok ? kOk : kViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plane codes of PG(5, q) from conic bundles"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    unsigned q = 0, threads = 0;
    std::string out, in, format = "text", report = "text", method = "lineindex", check = "all";
    bool unchecked = false, list = false;

    auto* build = app.add_subcommand("build", "Construct the code and print its parameters");
    build->add_option("--q", q, "Field order")->required();
    build->add_option("--out", out, "Write the code to this file");
    build->add_option("--format", format, "File format")->check(CLI::IsMember({"text", "json"}));
    build->add_option("--report", report, "Parameter report on stdout")->check(CLI::IsMember({"text", "json"}));
    build->add_flag("--unchecked", unchecked, "Allow q = 7, 8, 9");

    auto* verify = app.add_subcommand("verify", "Check the minimum subspace distance of a code file");
    verify->add_option("--in", in, "Code file")->required();
    verify->add_option("--method", method, "naive, lineindex or both")
        ->check(CLI::IsMember({"naive", "lineindex", "both"}));
    verify->add_option("--threads", threads, "Worker threads (default: $QUADCODE_THREADS or all cores)");

    auto* extend = app.add_subcommand("extend", "Search for planes that can be added to the code (q <= 5)");
    extend->add_option("--q", q, "Field order (builds the code)");
    extend->add_option("--in", in, "Code file to extend instead of building");
    extend->add_flag("--list", list, "Print the addable and greedily added planes");
    extend->add_option("--threads", threads, "Worker threads");

    auto* classify = app.add_subcommand("classify", "Census of plane quadrics by type");
    classify->add_option("--q", q, "Field order")->required();

    auto* inspect = app.add_subcommand("inspect", "Run structural property checks");
    inspect->add_option("--q", q, "Field order")->required();
    inspect->add_option("--check", check, "census, solids, pp, singer, arcs, bundles, polar, r3lines or all")
        ->check(CLI::IsMember({"census", "solids", "pp", "singer", "arcs", "bundles", "polar", "r3lines", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*build) return cmd_build(q, out, format, report, unchecked);
        if (*verify) return cmd_verify(in, method, threads);
        if (*extend) return cmd_extend(q, in, list, threads);
        if (*classify) return cmd_classify(q);
        if (*inspect) return cmd_inspect(q, check);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kViolation;
    }
    return kUsage;
}
