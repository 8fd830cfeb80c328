// opvolterra - Bessel tables, operator expansions, closed-form applications
// and verification suites for powers of x*I.
//
// Exit codes: 0 success, 1 a verification case failed, 2 usage or input error.

#include "opvolterra/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace opvolterra;

int run(int argc, char** argv) {
    CLI::App app{"Exact operator calculus for (xI)^n with independent oracles"};
    app.require_subcommand(1);

    std::optional<std::string> format;
    auto add_format = [&](CLI::App* cmd, std::vector<std::string> choices) {
        cmd->add_option("--format", format, "Output format (default: $OPVOLTERRA_FORMAT or text)")
            ->check(CLI::IsMember(std::move(choices)));
    };

    int table_n = 5;
    auto* table = app.add_subcommand("bessel-table", "Print the Bessel-number triangle a(n,k)");
    table->add_option("--n-max", table_n, "Last row")->required();
    add_format(table, {"text", "csv", "json"});

    std::string op;
    int expand_n = 1;
    auto* expand = app.add_subcommand("expand", "Normal-ordered expansion of (xI)^n or (xD)^n");
    expand->add_option("--op", op, "xI or xD")->required()->check(CLI::IsMember({"xI", "xD"}));
    expand->add_option("--n", expand_n, "Power")->required();
    add_format(expand, {"text", "json"});

    std::string family;
    int apply_n = 1;
    std::optional<double> at;
    auto* apply = app.add_subcommand("apply", "Apply (xI)^n to monomial:M, exp, log1p or power:ALPHA");
    apply->add_option("--family", family, "Function family")->required();
    apply->add_option("--n", apply_n, "Power")->required();
    apply->add_option("--at", at, "Evaluate at x and compare with the quadrature oracle");
    add_format(apply, {"text", "json"});

    std::string suite = "all";
    VerifyConfig cfg;
    std::optional<std::string> fault;
    bool verbose = false;
    auto* verify = app.add_subcommand("verify", "Run verification suites");
    verify->add_option("--suite", suite, "all, bessel, theorem1, combiden, gamma, dobinski, expsum, kernel, grunert, log1p");
    verify->add_option("--n-max", cfg.exact_n_max, "Bound for exact suites")->capture_default_str();
    verify->add_option("--numeric-n-max", cfg.numeric_n_max, "Bound for floating-point suites")->capture_default_str();
    verify->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--abs-tol", cfg.abs_tol, "Absolute tolerance for numeric comparisons")->capture_default_str();
    verify->add_option("--rel-tol", cfg.rel_tol, "Relative tolerance for numeric comparisons")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "Seed for random real alpha")->capture_default_str();
    verify->add_option("--inject-fault", fault, "Corrupt one value: bessel:N:K[:D] or rewrite:N:XPOW:IPOW[:D]");
    verify->add_flag("--verbose", verbose, "List passing cases too");
    add_format(verify, {"text", "json"});

    std::string seq;
    std::string bfile;
    auto* oeis = app.add_subcommand("oeis-check", "Compare local values against an OEIS b-file");
    oeis->add_option("--seq", seq, "A001498 or A000806")->required()->check(CLI::IsMember({"A001498", "A000806"}));
    oeis->add_option("--bfile", bfile, "Local b-file path")->required();
    add_format(oeis, {"text", "json"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? cli::kOk : cli::kUsage;
    }

    try {
        const auto fmt = cli::resolve_format(format);
        cli::CommandOutput out;
        if (*table) {
            out = cli::bessel_table(table_n, fmt);
        } else if (*expand) {
            out = cli::expand(op, expand_n, fmt);
        } else if (*apply) {
            out = cli::apply(family, apply_n, at, fmt);
        } else if (*verify) {
            if (fault) cfg.fault = Fault::parse(*fault);
            out = cli::verify(suite, cfg, fmt, verbose);
        } else {
            out = cli::oeis_check_file(seq, bfile, fmt);
        }
        std::cout << out.text;
        return out.exit_code;
    } catch (const cli::UsageError& e) {
        std::cerr << "opvolterra: " << e.what() << "\n";
        return cli::kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "opvolterra: " << e.what() << "\n";
        return cli::kUsage;
    } catch (const std::exception& e) {
        std::cerr << "opvolterra: error: " << e.what() << "\n";
        return cli::kUsage;
    }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
