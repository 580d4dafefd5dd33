#include "equivapprox/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Equivariant approximation of symmetric semialgebraic sets"};
    std::string mode = "verify-pipeline";
    std::string group, formula, complex, params, ordering, out;
    std::string fixtures = EQUIVAPPROX_FIXTURE_DIR;
    unsigned jobs = 1;
    bool keep_all = false;

    app.add_option("--mode", mode, "triangulate | approximate | homology | verify-pipeline")
        ->check(CLI::IsMember({"triangulate", "approximate", "homology", "verify-pipeline"}));
    app.add_option("--group", group, "reflection group JSON");
    app.add_option("--formula", formula, "sign-condition formula JSON");
    app.add_option("--complex", complex, "decomposition, explicit or semilinear complex JSON");
    app.add_option("--params", params, "epsilon/delta tower JSON");
    app.add_option("--ordering", ordering, "parameter ordering variant")->check(CLI::IsMember({"thm110", "maintheorem"}));
    app.add_option("--jobs", jobs, "criteria run concurrently in verify-pipeline mode")->check(CLI::PositiveNumber);
    app.add_option("--out", out, "report path (stdout when omitted)");
    app.add_option("--fixtures", fixtures, "fixture directory for verify-pipeline mode");
    app.add_flag("--keep-all-signsets", keep_all, "keep sign tuples whose emptiness cannot be decided");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    eqa::PipelineConfig config;
    config.mode = eqa::parse_mode(mode);
    auto path = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<std::filesystem::path>(s); };
    config.group = path(group);
    config.formula = path(formula);
    config.complex = path(complex);
    config.params = path(params);
    config.fixtures = path(fixtures);
    if (!ordering.empty()) config.ordering = eqa::parse_ordering(ordering);
    config.jobs = jobs;
    config.keep_all_signsets = keep_all;

    auto report = eqa::run_pipeline(config);
    try {
        eqa::emit_report(report, path(out));
    } catch (const eqa::InputError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    if (!report.error.empty()) std::cerr << "error: " << report.error << "\n";
    return report.exit_code();
}
