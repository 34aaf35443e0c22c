// ffspec: differential spectra of power maps over GF(2^n).

#include <unistd.h>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ffspec/commands.hpp"

namespace {

using namespace ffspec::cli;

struct Common {
    std::string format;
    unsigned threads = default_threads();
};

void add_common(CLI::App* sub, Common& common, bool with_threads) {
    sub->add_option("--format", common.format, "Output format: json, table or csv")
        ->check(CLI::IsMember({"json", "table", "csv"}));
    if (with_threads) sub->add_option("--threads", common.threads, "Worker threads (default $FFSPEC_THREADS)")->check(CLI::PositiveNumber);
}

int emit(const CommandResult& result, const Common& common) {
    Format fmt = common.format.empty() ? (isatty(STDOUT_FILENO) ? Format::Table : Format::Json)
                                       : parse_format(common.format);
    std::cout << render(result.report, fmt);
    for (const auto& w : result.report.warnings) std::cerr << "warning: " << w << '\n';
    if (result.report.results.contains("error"))
        std::cerr << "error: " << result.report.results["error"].get<std::string>() << '\n';
    if (result.exit_code == kMismatch && result.report.results.contains("diff"))
        for (const auto& d : result.report.results["diff"]) std::cerr << "diff: " << d.get<std::string>() << '\n';
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Differential spectra of power functions over GF(2^n)"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    Common common;

    SpectrumArgs spec_args;
    std::optional<int> spec_m, spec_n;
    std::optional<std::int64_t> spec_d;
    std::optional<std::string> spec_modulus;
    auto* spec = app.add_subcommand("spectrum", "Compute the differential spectrum of x^d");
    spec->add_option("--m", spec_m, "Half degree; implies n = 2m and d = 3*2^m-2");
    spec->add_option("--n", spec_n, "Field degree");
    spec->add_option("--d", spec_d, "Exponent");
    spec->add_option("--modulus", spec_modulus, "Irreducible modulus as hex, leading bit included");
    add_common(spec, common, true);

    PredictArgs pred_args;
    auto* pred = app.add_subcommand("predict", "Closed-form spectrum of x^(3q-2)");
    pred->add_option("--m", pred_args.m, "Even half degree >= 2")->required();
    add_common(pred, common, false);

    VerifyArgs ver_args;
    auto* ver = app.add_subcommand("verify", "Compare computed and predicted spectra");
    ver->add_option("--m", ver_args.m, "Even half degree >= 2")->required();
    ver->add_flag("--deep", ver_args.deep, "Also run moment, trinomial and counting cross-checks");
    ver->add_flag("--inject-fault", ver_args.inject_fault, "Perturb the prediction (harness self-test)")->group("");
    add_common(ver, common, true);

    TrinomialArgs tri_args;
    std::optional<std::string> tri_c;
    auto* tri = app.add_subcommand("trinomial", "Preimages of x^2 + x^(1-q) + x^(2-q)");
    tri->add_option("--m", tri_args.m, "Half degree")->required();
    tri->add_option("--c", tri_c, "Target element as hex");
    tri->add_flag("--histogram", tri_args.histogram, "Full preimage-size histogram");
    add_common(tri, common, true);

    TauArgs tau_args;
    auto* tau_cmd = app.add_subcommand("tau", "Exact values of tau_m");
    tau_cmd->add_option("--from", tau_args.m_from, "First index (default 1)");
    tau_cmd->add_option("--to", tau_args.m_to, "Last index (default 10)");
    add_common(tau_cmd, common, false);

    CatalogArgs cat_args;
    std::optional<int> cat_n;
    std::optional<std::int64_t> cat_d;
    auto* cat = app.add_subcommand("catalog", "Known power-map families; match (n, d)");
    cat->add_option("--n", cat_n, "Field degree");
    cat->add_option("--d", cat_d, "Exponent");
    add_common(cat, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    if (spec->parsed()) {
        spec_args = {spec_m, spec_n, spec_d, spec_modulus, common.threads};
        return emit(cmd_spectrum(spec_args), common);
    }
    if (pred->parsed()) return emit(cmd_predict(pred_args), common);
    if (ver->parsed()) {
        ver_args.threads = common.threads;
        return emit(cmd_verify(ver_args), common);
    }
    if (tri->parsed()) {
        tri_args.c = tri_c;
        tri_args.threads = common.threads;
        return emit(cmd_trinomial(tri_args), common);
    }
    if (tau_cmd->parsed()) return emit(cmd_tau(tau_args), common);
    cat_args = {cat_n, cat_d};
    return emit(cmd_catalog(cat_args), common);
}
