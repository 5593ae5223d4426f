#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cssharp/cli/commands.hpp"

using namespace cssharp::cli;

namespace {

void add_xy(CLI::App* cmd, InputColumn& x, InputColumn& y) {
    cmd->add_option("--x", x.path, "CSV file holding the first series")->required();
    cmd->add_option("--y", y.path, "CSV file holding the second series")->required();
    cmd->add_option("--x-col", x.column, "Column of --x: header name or 0-based index")->capture_default_str();
    cmd->add_option("--y-col", y.column, "Column of --y: header name or 0-based index")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);

    CLI::App app{"Projection-refined Cauchy-Schwarz bounds, correlations and divergences"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "Print a key/value table instead of JSON");
    app.set_version_flag("--version", std::string(tool_version));

    BoundsOptions bounds;
    auto* c_bounds = app.add_subcommand("bounds", "Evaluate D(x,y|P) and the inequality chain");
    add_xy(c_bounds, bounds.x, bounds.y);
    c_bounds->add_option("--projection", bounds.projection,
                         "identity | zero | prefix:<k> | mask:<i,j,...> | mean | span-x | basis:<file>")
        ->capture_default_str();

    CrossCovOptions crosscov;
    bool no_center = false;
    auto* c_cross = app.add_subcommand("crosscov", "Lagged cross-covariance with its split bound");
    add_xy(c_cross, crosscov.x, crosscov.y);
    c_cross->add_option("--lag", crosscov.lag, "Forward lag h >= 1")->required();
    c_cross->add_option("--split", crosscov.split, "auto (minimizing k) | h (k = lag) | <k>")->capture_default_str();
    c_cross->add_flag("--no-center", no_center, "Use the data as given instead of centering");

    CorrOptions corr;
    std::string partition_path, partition_col = "0", corr_projection;
    std::size_t bins = 0;
    auto* c_corr = app.add_subcommand("corr", "Conditioning- or projection-aware correlation");
    add_xy(c_corr, corr.x, corr.y);
    auto* o_part = c_corr->add_option("--partition", partition_path, "CSV column of integer group labels");
    c_corr->add_option("--partition-col", partition_col, "Column of --partition")->capture_default_str();
    auto* o_bins = c_corr->add_option("--quantile-bins", bins, "Partition by quantiles of y into this many bins");
    auto* o_proj = c_corr->add_option("--projection", corr_projection, "Projection applied to the centered series");

    DivergenceOptions div;
    auto* c_div = app.add_subcommand("divergence", "Projection estimate of the Cauchy-Schwarz divergence");
    add_xy(c_div, div.x, div.y);
    c_div->add_option("--n-coeffs", div.n_coeffs, "Truncation N (uses 2N coefficients)")->capture_default_str();
    c_div->add_option("--range", div.range, "auto | a,b")->capture_default_str();
    c_div->add_option("--basis", div.basis, "cosine | trigonometric")->capture_default_str();

    SelftestOptions self;
    std::optional<std::uint64_t> seed;
    auto* c_self = app.add_subcommand("selftest", "Randomized identity and inequality checks");
    c_self->add_option("--seed", seed, "RNG seed (overrides CS_SHARP_SEED)");
    c_self->add_option("--cases", self.cases, "Number of random cases")->capture_default_str();
    c_self->add_option("--max-dim", self.max_dim, "Dimensions sweep 1..max")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_code::parse;
    }

    try {
        CommandResult result;
        if (c_bounds->parsed()) {
            result = cmd_bounds(bounds, args);
        } else if (c_cross->parsed()) {
            crosscov.center = !no_center;
            result = cmd_crosscov(crosscov, args);
        } else if (c_corr->parsed()) {
            if (o_part->count() > 0) corr.partition = InputColumn{partition_path, partition_col};
            if (o_bins->count() > 0) corr.quantile_bins = bins;
            if (o_proj->count() > 0) corr.projection = corr_projection;
            result = cmd_corr(corr, args);
        } else if (c_div->parsed()) {
            result = cmd_divergence(div, args);
        } else {
            self.seed = resolve_seed(seed);
            result = cmd_selftest(self, args);
        }
        std::cout << (pretty ? to_table(result.report) : to_json(result.report));
        if (result.exit_code == exit_code::undefined_divergence)
            std::cerr << "error: " << result.report["error"]["message"].get<std::string>() << '\n';
        else if (result.exit_code == exit_code::selftest_failure)
            std::cerr << "error: self-test failed\n";
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << error_name(e) << ": " << e.what() << '\n';
        return exit_code_for(e);
    }
}
