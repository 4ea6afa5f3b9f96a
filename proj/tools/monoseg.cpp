#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "monoseg/commands.hpp"

int main(int argc, char** argv) {
    monoseg::RunConfig config;
    std::string format = "csv";

    CLI::App app{"Quasi-monotonic segmentation of numeric sequences", "monoseg"};
    app.add_option("command", config.command, "label | segment | spectrum | bench | synth")
        ->required();
    app.add_option("--input", config.input, "CSV or one-value-per-line file, '-' for stdin");
    app.add_option("--synth", config.synth_spec,
                   "synthetic series, e.g. piecewise:segments=70,samples=4000,noise=0");
    app.add_option("--column", config.column, "column name or 0-based index (default: last numeric)");
    app.add_option("--cap", config.cap, "keep at most N samples");
    app.add_option("--k", config.k, "segment budget");
    app.add_option("--kmax", config.k_max, "largest budget for spectrum / bench");
    app.add_option("--repeats", config.repeats, "timing repeats for bench")->capture_default_str();
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--seed", config.seed, "seed for --synth")->capture_default_str();
    app.add_option("--output", config.output, "output path, '-' for stdout")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "monoseg: " << e.what() << '\n';
        return static_cast<int>(monoseg::ExitCode::Usage);
    }
    config.format = format == "json" ? monoseg::OutputFormat::Json : monoseg::OutputFormat::Csv;
    return monoseg::run(config, std::cerr);
}
