#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "mgf/job.hpp"

namespace {

constexpr int kExitQueryFailed = 1;
constexpr int kExitBadConfig = 2;

void print_diagnostic(const mgf::Error& e) {
    std::cerr << "error: " << mgf::to_string(e.kind()) << ": " << e.what() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditional distributions and factorial moments of X given Y = A X"};

    std::string config_path;
    bool verify = false;
    std::string mode_flag;
    std::string output_flag;
    std::size_t max_pmf_rows = 10000;

    app.add_option("--config", config_path, "Job description (JSON)")->required();
    app.add_flag("--verify", verify, "Also compute brute-force oracle values");
    app.add_option("--mode", mode_flag, "Coefficient arithmetic: exact or float")
        ->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--max-pmf-rows", max_pmf_rows, "Largest fiber for which a conditional pmf is printed");
    app.add_option("--output", output_flag, "Report format: human or json-like")
        ->check(CLI::IsMember({"human", "json-like", "machine-readable"}));

    CLI11_PARSE(app, argc, argv);

    mgf::Report report;
    mgf::OutputFormat format = mgf::OutputFormat::Machine;
    try {
        mgf::JobConfig config = mgf::load_config(config_path);
        if (!mode_flag.empty())
            config.mode = *mgf::parse_mode(mode_flag);
        if (!output_flag.empty())
            config.output = *mgf::parse_output_format(output_flag);
        format = config.output;
        mgf::validate_config(config);
        report = mgf::run(config, mgf::RunOptions{verify, max_pmf_rows});
    } catch (const mgf::Error& e) {
        print_diagnostic(e);
        return kExitBadConfig;
    }

    std::cout << (format == mgf::OutputFormat::Human ? mgf::render_human(report) : mgf::render_machine(report));
    for (const auto& row : report.rows)
        if (row.error)
            std::cerr << "query " << row.index << " failed: " << mgf::to_string(row.error->kind) << "\n";
    return report.ok() ? 0 : kExitQueryFailed;
}
