// Command-line front end: ingest histogram CSV tables, run the
// clr -> smoothing-spline -> inverse-clr pipeline, emit tables and reports.
//
// Exit codes: 0 success, 1 usage or parse error, 2 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clrspline/dataset.hpp"
#include "clrspline/pipeline.hpp"

namespace {

struct CommonOptions {
    std::string input;
    std::string config_path;
    std::string knots;
    int degree = -1;
    int order = -1;
    double alpha = std::numeric_limits<double>::quiet_NaN();
    std::string mode;
    int grid = -1;
    std::string output;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--input", opt.input, "histogram CSV (label,group,<midpoints...>)")
        ->required();
    cmd->add_option("--config", opt.config_path, "JSON config file");
    cmd->add_option("--knots", opt.knots, "comma-separated knots a,l1,...,lg,b");
    cmd->add_option("--degree", opt.degree, "spline degree k");
    cmd->add_option("--order", opt.order, "penalty derivative order l");
    cmd->add_option("--alpha", opt.alpha, "residual weight alpha");
    cmd->add_option("--mode", opt.mode,
                    "zero_integral_clr | unconstrained_raw");
    cmd->add_option("--grid", opt.grid, "curve sample count");
    cmd->add_option("--output", opt.output, "output path (default: stdout)");
}

clrspline::FitConfig resolve_config(const CommonOptions& opt) {
    clrspline::FitConfig config;
    if (!opt.config_path.empty()) {
        config = clrspline::load_fit_config(opt.config_path);
    }
    if (!opt.knots.empty()) {
        std::vector<double> knots;
        std::stringstream ss(opt.knots);
        std::string cell;
        while (std::getline(ss, cell, ',')) knots.push_back(std::stod(cell));
        if (knots.size() < 2) {
            throw std::runtime_error("--knots needs at least a and b");
        }
        config.knots.a = knots.front();
        config.knots.b = knots.back();
        config.knots.interior.assign(knots.begin() + 1, knots.end() - 1);
    }
    if (opt.degree >= 0) config.knots.degree = opt.degree;
    if (opt.order >= 0) config.order = opt.order;
    if (!std::isnan(opt.alpha)) config.alpha = opt.alpha;
    if (!opt.mode.empty()) config.mode = clrspline::parse_fit_mode(opt.mode);
    if (opt.grid >= 0) config.grid_size = opt.grid;
    return config;
}

// Stdout unless --output was given.
class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw std::runtime_error("cannot open output file: " + path);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-integral smoothing splines for clr-transformed densities"};
    app.require_subcommand(1);

    CommonOptions opt;
    CLI::App* cmd_clr = app.add_subcommand("clr", "emit the clr table");
    CLI::App* cmd_fit = app.add_subcommand("fit", "emit fitted coefficients");
    CLI::App* cmd_curves =
        app.add_subcommand("curves", "emit sampled clr and density curves");
    CLI::App* cmd_report = app.add_subcommand("report", "per-row diagnostics");
    for (CLI::App* cmd : {cmd_clr, cmd_fit, cmd_curves, cmd_report}) {
        add_common(cmd, opt);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const clrspline::Dataset dataset =
            clrspline::parse_histogram_csv(opt.input);
        OutputSink sink(opt.output);

        if (cmd_clr->parsed()) {
            clrspline::write_clr_csv(dataset, sink.stream());
            return 0;
        }

        const clrspline::FitConfig config = resolve_config(opt);
        const clrspline::FitResult result =
            clrspline::fit_dataset(dataset, config);
        if (cmd_fit->parsed()) {
            clrspline::write_coefficients_csv(result, config, sink.stream());
        } else if (cmd_curves->parsed()) {
            clrspline::write_curves_csv(result, config, sink.stream());
        } else {
            clrspline::write_report(result, config, sink.stream());
        }
        if (!result.all_ok) {
            std::cerr << "clrspline: numerical failure in "
                      << [&] {
                             int bad = 0;
                             for (const auto& row : result.rows) bad += !row.ok;
                             return bad;
                         }()
                      << " row(s)\n";
            return 2;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "clrspline: " << e.what() << '\n';
        return 1;
    }
}
