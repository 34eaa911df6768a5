#pragma once

// Command-line front end. run_cli is the whole program minus process setup,
// so tests can drive it with string streams.
//
// Exit codes: 0 ok, 1 verification failed, 64 usage or parse error,
// 65 operator not factorable over Q(i), 70 internal oracle failure.

#include "parser.hpp"
#include "verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace dopsolve {

enum ExitCode : int {
    exit_ok = 0,
    exit_verify_failed = 1,
    exit_usage = 64,
    exit_unfactorable = 65,
    exit_internal = 70,
};

/// A failure with its exit code and a ready-to-print message.
struct CliFailure {
    int code;
    std::string message;
};

namespace detail {

inline std::string caret_diagnostic(const std::string& label, std::string_view src, const ParseError& e) {
    std::string out = label + ": " + e.what() + "\n";
    // Single-line inputs get a caret line under the offending span.
    if (src.find('\n') == std::string_view::npos) {
        const std::size_t begin = std::min(e.span().begin, src.size());
        const std::size_t end = std::max(begin + 1, std::min(e.span().end, src.size()));
        out += "    " + std::string(src) + "\n";
        out += "    " + std::string(begin, ' ') + std::string(end - begin, '^') + "\n";
    }
    return out;
}

inline ParsedOperator read_operator(const std::string& label, const std::string& src) {
    try {
        return parse_operator(src);
    } catch (const ParseError& e) {
        throw CliFailure{exit_usage, caret_diagnostic(label, src, e)};
    }
}

inline OperatorPoly read_coefficients(const std::string& src) {
    try {
        return parse_coefficient_list(src);
    } catch (const ParseError& e) {
        throw CliFailure{exit_usage, caret_diagnostic("--coeffs", src, e)};
    }
}

inline RealExpr read_function(const std::string& label, const std::string& src) {
    try {
        return parse_rhs(src);
    } catch (const ParseError& e) {
        throw CliFailure{exit_usage, caret_diagnostic(label, src, e)};
    }
}

inline FactoredOperator factored_or_fail(const ParsedOperator& parsed) {
    if (parsed.factored) return *parsed.factored;
    if (parsed.op.is_zero()) throw CliFailure{exit_usage, "the zero operator has no kernel basis\n"};
    try {
        return factor_exact(parsed.op);
    } catch (const UnfactorableOverGaussianRationals& e) {
        throw CliFailure{exit_unfactorable, "operator " + to_text(parsed.op) + " is not factorable: " + e.what() + "\n"};
    }
}

inline KernelBasis checked_kernel(const ParsedOperator& parsed) {
    KernelBasis basis = kernel_basis(factored_or_fail(parsed));
    Verdict v = check_kernel(parsed.op, basis);
    if (!v.exact()) throw CliFailure{exit_internal, "internal error: kernel check failed: " + v.detail + "\n"};
    return basis;
}

enum class Format { Text, Latex, Json };

inline std::string render(const RealExpr& f, Format fmt) { return fmt == Format::Latex ? to_latex(f) : to_text(f); }

/// Solves and certifies; the answer never leaves here unverified.
inline ParticularSolution certified_solve(const OperatorPoly& op, const RealExpr& g) {
    if (op.is_zero()) throw CliFailure{exit_usage, "the zero operator has no particular solutions\n"};
    ParticularSolution sol;
    try {
        sol = solve_particular(op, g);
    } catch (const InternalSolverError& e) {
        throw CliFailure{exit_internal, std::string("internal error: ") + e.what() + "\nplease report this input\n"};
    }
    Verdict v = check_particular(op, g, sol.y);
    if (!v.exact()) {
        throw CliFailure{exit_internal, "internal error: candidate " + to_text(sol.y) +
                                            " failed the residual check (" + v.detail +
                                            ")\nplease report this input\n"};
    }
    return sol;
}

struct SolveOptions {
    std::string op;
    std::string coeffs;
    std::string rhs;
    Format format = Format::Text;
    bool explain = false;
    bool general = false;
};

inline int cmd_solve(const SolveOptions& o, std::ostream& out) {
    ParsedOperator parsed;
    if (!o.coeffs.empty()) {
        parsed.op = read_coefficients(o.coeffs);
    } else {
        parsed = read_operator("--op", o.op);
    }
    const RealExpr g = read_function("--rhs", o.rhs);
    const ParticularSolution sol = certified_solve(parsed.op, g);

    KernelBasis basis;
    if (o.general) basis = checked_kernel(parsed);

    if (o.format == Format::Json) {
        Json j = {{"operator", to_text(parsed.op)}, {"rhs", to_text(g)}, {"solution", solution_json(sol.y)},
                  {"verified", true}};
        if (o.general) {
            Json kernel = Json::array();
            for (const auto& e : basis.elements) kernel.push_back(solution_json(e));
            j["kernel"] = kernel;
        }
        if (o.explain) j["trace"] = to_json(sol.trace);
        out << j.dump(2) << "\n";
        return exit_ok;
    }

    if (o.explain) out << explain(sol.trace);
    std::string line = sol.y.is_zero() && o.general && basis.size() > 0 ? "" : render(sol.y, o.format);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::string label = o.format == Format::Latex ? "C_{" + std::to_string(i + 1) + "}"
                                                            : "C" + std::to_string(i + 1);
        const std::string elem = render(basis.elements[i], o.format);
        const std::string term = o.format == Format::Latex ? label + elem : label + "*" + elem;
        if (line.empty()) {
            line = term;
        } else {
            line += o.format == Format::Latex ? "+" + term : " + " + term;
        }
    }
    if (o.explain) out << "Particular solution: ";
    out << line << "\n";
    return exit_ok;
}

inline int cmd_kernel(const std::string& op_src, Format fmt, std::ostream& out) {
    const ParsedOperator parsed = read_operator("--op", op_src);
    const KernelBasis basis = checked_kernel(parsed);
    if (fmt == Format::Json) {
        Json arr = Json::array();
        for (const auto& e : basis.elements) arr.push_back(solution_json(e));
        out << Json{{"operator", to_text(parsed.op)}, {"degree", parsed.op.degree()}, {"basis", arr}}.dump(2) << "\n";
        return exit_ok;
    }
    for (const auto& e : basis.elements) out << render(e, fmt) << "\n";
    return exit_ok;
}

inline int cmd_apply(const std::string& op_src, const std::string& fn_src, Format fmt, std::ostream& out) {
    const ParsedOperator parsed = read_operator("--op", op_src);
    const RealExpr f = read_function("--fn", fn_src);
    const RealExpr result = to_real(apply(parsed.op, to_complex(f)));
    if (fmt == Format::Json) {
        out << Json{{"result", solution_json(result)}}.dump(2) << "\n";
    } else {
        out << render(result, fmt) << "\n";
    }
    return exit_ok;
}

inline int cmd_verify(const std::string& op_src, const std::string& rhs_src, const std::string& cand_src, Format fmt,
                      std::ostream& out) {
    const ParsedOperator parsed = read_operator("--op", op_src);
    const RealExpr g = read_function("--rhs", rhs_src);
    const RealExpr y = read_function("--candidate", cand_src);
    const Verdict v = check_particular(parsed.op, g, y);
    if (fmt == Format::Json) {
        out << to_json(v).dump(2) << "\n";
    } else if (v.exact()) {
        out << "exact\n";
    } else {
        out << "residual: " << render(v.residual, fmt) << "\n";
    }
    return v.exact() ? exit_ok : exit_verify_failed;
}

/// One batch entry; failures are reported inline rather than aborting the batch.
inline Json solve_batch_entry(const Json& problem) {
    Json result = Json::object();
    try {
        if (!problem.is_object() || !problem.contains("op") || !problem.contains("rhs") ||
            !problem["op"].is_string() || !problem["rhs"].is_string())
            throw CliFailure{exit_usage, "each problem needs string fields \"op\" and \"rhs\""};
        const std::string op_src = problem["op"].get<std::string>();
        const std::string rhs_src = problem["rhs"].get<std::string>();
        result["op"] = op_src;
        result["rhs"] = rhs_src;
        const ParsedOperator parsed = read_operator("op", op_src);
        const RealExpr g = read_function("rhs", rhs_src);
        result["solution"] = solution_json(certified_solve(parsed.op, g).y);
        result["verified"] = true;
    } catch (const CliFailure& f) {
        result["error"] = {{"code", f.code}, {"message", f.message}};
    }
    return result;
}

inline int cmd_batch(std::istream& in, std::ostream& out, unsigned threads) {
    Json input;
    try {
        input = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw CliFailure{exit_usage, std::string("batch input is not valid JSON: ") + e.what() + "\n"};
    }
    if (!input.is_object() || !input.contains("problems") || !input["problems"].is_array())
        throw CliFailure{exit_usage, "batch input must be an object with a \"problems\" array\n"};

    const Json& problems = input["problems"];
    std::vector<Json> results(problems.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < problems.size(); i = next++) results[i] = solve_batch_entry(problems[i]);
    };
    const unsigned n = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(problems.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    out << Json{{"results", results}}.dump(2) << "\n";
    return exit_ok;
}

}  // namespace detail

struct CliEnvironment {
    bool color = false;  // color diagnostics on stderr
    unsigned threads = std::max(1U, std::thread::hardware_concurrency());
};

inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
                   const CliEnvironment& env = {}) {
    using detail::Format;
    CLI::App app{"Exact particular solutions of constant-coefficient linear ODEs P(D) y = g(x)", "dopsolve"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "dopsolve 1.0.0");

    const std::map<std::string, Format> formats{
        {"text", Format::Text}, {"latex", Format::Latex}, {"json", Format::Json}};
    auto add_format = [&](CLI::App* cmd, Format& target) {
        cmd->add_option_function<std::string>(
               "--format,-f",
               [&formats, &target](const std::string& v) {
                   std::string key;
                   for (char c : v) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                   target = formats.at(key);
               },
               "output format: text, latex or json")
            ->check(CLI::IsMember({"text", "latex", "json"}, CLI::ignore_case).description(""))
            ->option_text("{text,latex,json}");
    };

    detail::SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "particular solution of P(D) y = g");
    auto* op_opt = solve_cmd->add_option("--op", solve.op, "operator, e.g. \"(D-1)*(D+5)*(D-2)^3\"");
    auto* coeff_opt = solve_cmd->add_option("--coeffs", solve.coeffs, "operator coefficients a0,a1,...,an");
    op_opt->excludes(coeff_opt);
    solve_cmd->add_option("--rhs", solve.rhs, "right-hand side g(x)")->required();
    add_format(solve_cmd, solve.format);
    solve_cmd->add_flag("--explain", solve.explain, "print the solution steps");
    solve_cmd->add_flag("--general", solve.general, "append the kernel basis with constants C1, C2, ...");

    std::string op_src;
    std::string fn_src;
    std::string rhs_src;
    std::string cand_src;
    Format format = Format::Text;

    auto* kernel_cmd = app.add_subcommand("kernel", "basis of the solutions of P(D) y = 0");
    kernel_cmd->add_option("--op", op_src, "operator")->required();
    add_format(kernel_cmd, format);

    auto* apply_cmd = app.add_subcommand("apply", "compute P(D) f");
    apply_cmd->add_option("--op", op_src, "operator")->required();
    apply_cmd->add_option("--fn", fn_src, "function f(x)")->required();
    add_format(apply_cmd, format);

    auto* verify_cmd = app.add_subcommand("verify", "check that P(D) candidate = g exactly");
    verify_cmd->add_option("--op", op_src, "operator")->required();
    verify_cmd->add_option("--rhs", rhs_src, "right-hand side g(x)")->required();
    verify_cmd->add_option("--candidate", cand_src, "proposed solution")->required();
    add_format(verify_cmd, format);

    auto* batch_cmd = app.add_subcommand("batch", "solve {\"problems\": [{\"op\", \"rhs\"}, ...]} read from stdin");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << (env.color ? "\x1b[31merror\x1b[0m: " : "error: ") << e.what() << "\n";
        err << "run with --help for usage\n";
        return exit_usage;
    }

    try {
        if (solve_cmd->parsed()) {
            if (solve.op.empty() && solve.coeffs.empty())
                throw CliFailure{exit_usage, "solve needs --op or --coeffs\n"};
            return detail::cmd_solve(solve, out);
        }
        if (kernel_cmd->parsed()) return detail::cmd_kernel(op_src, format, out);
        if (apply_cmd->parsed()) return detail::cmd_apply(op_src, fn_src, format, out);
        if (verify_cmd->parsed()) return detail::cmd_verify(op_src, rhs_src, cand_src, format, out);
        if (batch_cmd->parsed()) return detail::cmd_batch(in, out, env.threads);
    } catch (const CliFailure& f) {
        err << (env.color ? "\x1b[31merror\x1b[0m: " : "error: ") << f.message;
        return f.code;
    } catch (const std::exception& e) {
        err << (env.color ? "\x1b[31merror\x1b[0m: " : "error: ") << "internal error: " << e.what()
            << "\nplease report this input\n";
        return exit_internal;
    }
    return exit_usage;
}

}  // namespace dopsolve
