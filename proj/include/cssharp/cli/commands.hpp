#pragma once

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "cssharp/bounds.hpp"
#include "cssharp/cli/csv.hpp"
#include "cssharp/cli/report.hpp"
#include "cssharp/divergence.hpp"
#include "cssharp/errors.hpp"
#include "cssharp/projection.hpp"
#include "cssharp/sample_stats.hpp"
#include "cssharp/simulation.hpp"

// The command layer of the cs-sharp tool. Each command reads its inputs,
// runs the library, and returns a structured report plus the process exit
// code. Library errors propagate as exceptions; exit_code_for maps them.

namespace cssharp::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;
inline constexpr int parse = 2;
inline constexpr int dimension = 3;
inline constexpr int projection = 4;
inline constexpr int undefined_divergence = 5;
inline constexpr int selftest_failure = 6;
} // namespace exit_code

inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const DimensionMismatch*>(&e)) return exit_code::dimension;
    if (dynamic_cast<const InvalidProjection*>(&e)) return exit_code::projection;
    if (dynamic_cast<const UndefinedDivergence*>(&e)) return exit_code::undefined_divergence;
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const LagOutOfRange*>(&e) ||
        dynamic_cast<const SplitOutOfRange*>(&e) || dynamic_cast<const EmptySample*>(&e) ||
        dynamic_cast<const DomainError*>(&e) || dynamic_cast<const InvalidArgument*>(&e))
        return exit_code::parse;
    return exit_code::internal;
}

inline std::string error_name(const std::exception& e) {
    if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
    if (dynamic_cast<const InvalidProjection*>(&e)) return "InvalidProjection";
    if (dynamic_cast<const UndefinedDivergence*>(&e)) return "UndefinedDivergence";
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const LagOutOfRange*>(&e)) return "LagOutOfRange";
    if (dynamic_cast<const SplitOutOfRange*>(&e)) return "SplitOutOfRange";
    if (dynamic_cast<const EmptySample*>(&e)) return "EmptySample";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
    if (dynamic_cast<const QuadratureFailure*>(&e)) return "QuadratureFailure";
    return "Error";
}

struct InputColumn {
    std::string path;
    std::string column = "0";
};

struct CommandResult {
    Report report;
    int exit_code = exit_code::ok;
};

/// Parses `identity | zero | prefix:<k> | mask:<i,j,...> | mean | span-x |
/// basis:<file>`. `span-x` projects onto the span of `span_source`; mask
/// indices are 0-based.
inline ProjectionSpec parse_projection(const std::string& text, const Series& span_source) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto no_arg = [&] {
        if (colon != std::string::npos) throw ParseError("projection '" + head + "' takes no argument");
    };
    if (head == "identity") {
        no_arg();
        return proj::Identity{};
    }
    if (head == "zero") {
        no_arg();
        return proj::Zero{};
    }
    if (head == "mean") {
        no_arg();
        return proj::MeanDirection{};
    }
    if (head == "span-x") {
        no_arg();
        return proj::SpanOf{span_source};
    }
    if (head == "prefix") {
        const auto k = detail::parse_integer(arg);
        if (!k || *k < 0) throw ParseError("prefix needs a nonnegative integer, got '" + arg + "'");
        return proj::CoordinatePrefix{static_cast<std::size_t>(*k)};
    }
    if (head == "mask") {
        std::vector<std::size_t> idx;
        if (!detail::trim(arg).empty())
            for (auto field : detail::split_fields(arg)) {
                const auto i = detail::parse_integer(field);
                if (!i || *i < 0) throw ParseError("mask index '" + std::string(field) + "' is not a nonnegative integer");
                idx.push_back(static_cast<std::size_t>(*i));
            }
        return proj::CoordinateMask{std::move(idx)};
    }
    if (head == "basis") {
        if (arg.empty()) throw ParseError("basis needs a matrix file");
        return proj::OrthonormalColumns(read_matrix(arg));
    }
    throw ParseError("unknown projection '" + text + "'");
}

namespace detail {

inline Report describe_input(const InputColumn& in, const Series& s) {
    return Report{{"path", in.path}, {"column", in.column}, {"n", s.size()}, {"mean", mean(s)}};
}

inline Report header(const std::string& command, const std::vector<std::string>& argv) {
    Report r;
    r["tool"] = "cs-sharp";
    r["version"] = tool_version;
    r["command"] = command;
    r["args"] = argv;
    return r;
}

inline Report ratio_or_null(double num, double den) {
    return den > 0.0 ? Report(num / den) : Report(nullptr);
}

} // namespace detail

// --- bounds -----------------------------------------------------------------

struct BoundsOptions {
    InputColumn x, y;
    std::string projection = "mean";
};

inline CommandResult cmd_bounds(const BoundsOptions& opt, const std::vector<std::string>& argv = {}) {
    const Series x = read_column(opt.x.path, opt.x.column);
    const Series y = read_column(opt.y.path, opt.y.column);
    require_same_length(x, y);
    const ProjectionSpec spec = parse_projection(opt.projection, x);
    validate(spec, x.size());

    const BoundReport r = d_function(x, y, spec);
    const ExtremalBounds ext = extremal_bounds(x, y);
    const TriangleBound tri = enhanced_triangle(x, y, spec);

    Report rep = detail::header("bounds", argv);
    rep["inputs"] = {{"x", detail::describe_input(opt.x, x)}, {"y", detail::describe_input(opt.y, y)}};
    rep["results"] = {
        {"projection", describe(spec)},
        {"inner", r.inner},
        {"abs_inner", r.abs_inner},
        {"d_value", r.d_value},
        {"cs_value", r.cs_value},
        {"p_norm_x", r.p_norm_x},
        {"p_norm_y", r.p_norm_y},
        {"residual_x", r.residual_x},
        {"residual_y", r.residual_y},
        {"d_over_cs", detail::ratio_or_null(r.d_value, r.cs_value)},
        {"abs_inner_over_d", detail::ratio_or_null(r.abs_inner, r.d_value)},
        {"chain_holds", r.chain_holds()},
        {"squaring_identity_defect", squaring_identity_defect(r)},
        {"extremal", {{"lower", ext.lower}, {"upper", ext.upper}}},
        {"triangle", {{"norm_sum", tri.lower}, {"mid", tri.mid}, {"upper", tri.upper}}},
    };
    return {std::move(rep), exit_code::ok};
}

// --- crosscov ---------------------------------------------------------------

struct CrossCovOptions {
    InputColumn x, y;
    std::size_t lag = 1;
    std::string split = "auto"; ///< "auto" (best split), "h" (k = lag) or an integer
    bool center = true;
};

inline CommandResult cmd_crosscov(const CrossCovOptions& opt, const std::vector<std::string>& argv = {}) {
    const Series x = read_column(opt.x.path, opt.x.column);
    const Series y = read_column(opt.y.path, opt.y.column);
    require_same_length(x, y);

    CrossCovBound b;
    Report extra = Report::object();
    if (opt.split == "auto") {
        const SplitSearch s = best_split(x, y, opt.lag, opt.center);
        b = s.bound;
    } else if (opt.split == "h") {
        b = cross_cov_bound(x, y, opt.lag, opt.lag, opt.center);
        if (2 * opt.lag <= x.size()) extra["block_bound"] = lag_block_bound(x, y, opt.lag, opt.center);
    } else {
        const auto k = cssharp::cli::detail::parse_integer(opt.split);
        if (!k) throw ParseError("--split must be auto, h or an integer, got '" + opt.split + "'");
        if (*k < 1) throw SplitOutOfRange("split " + opt.split + " must be at least 1");
        b = cross_cov_bound(x, y, opt.lag, static_cast<std::size_t>(*k), opt.center);
    }

    Report rep = detail::header("crosscov", argv);
    rep["inputs"] = {{"x", detail::describe_input(opt.x, x)},
                     {"y", detail::describe_input(opt.y, y)},
                     {"centered", opt.center}};
    rep["results"] = {
        {"h", b.h},
        {"split_mode", opt.split},
        {"k", b.k},
        {"r_bar", b.r_bar},
        {"d_bound", b.d_bound},
        {"cs_bound", b.cs_bound},
        {"chain_holds", b.chain_holds()},
    };
    for (const auto& [key, value] : extra.items()) rep["results"][key] = value;
    return {std::move(rep), exit_code::ok};
}

// --- corr -------------------------------------------------------------------

struct CorrOptions {
    InputColumn x, y;
    std::optional<InputColumn> partition;
    std::optional<std::size_t> quantile_bins;
    std::optional<std::string> projection;
};

inline CommandResult cmd_corr(const CorrOptions& opt, const std::vector<std::string>& argv = {}) {
    const int modes = int(opt.partition.has_value()) + int(opt.quantile_bins.has_value()) +
                      int(opt.projection.has_value());
    if (modes != 1)
        throw ParseError("corr needs exactly one of --partition, --quantile-bins, --projection");
    const Series x = read_column(opt.x.path, opt.x.column);
    const Series y = read_column(opt.y.path, opt.y.column);
    require_same_length(x, y);

    CorrelationReport c;
    Report conditioning;
    if (opt.projection) {
        const Series xc = centered(x);
        const ProjectionSpec spec = parse_projection(*opt.projection, xc);
        validate(spec, x.size());
        c = p_correlation(x, y, spec);
        conditioning = {{"mode", "projection"}, {"projection", describe(spec)}};
    } else {
        const Partition p = opt.partition
                                ? Partition(read_labels(opt.partition->path, opt.partition->column))
                                : quantile_partition(y, *opt.quantile_bins);
        if (p.size() != x.size()) throw DimensionMismatch(x.size(), p.size());
        c = conditional_corr(x, y, p);
        conditioning = {{"mode", opt.partition ? "partition" : "quantile"}, {"groups", p.group_count()}};
        if (opt.partition) conditioning["path"] = opt.partition->path;
    }

    Report rep = detail::header("corr", argv);
    rep["inputs"] = {{"x", detail::describe_input(opt.x, x)},
                     {"y", detail::describe_input(opt.y, y)},
                     {"conditioning", conditioning}};
    const double tol = tolerance::rel;
    rep["results"] = {
        {"rho", c.rho},
        {"rho_p", c.rho_p},
        {"d_denominator", c.d_denominator},
        {"cov", c.cov},
        {"sigma_x", c.sigma_x},
        {"sigma_y", c.sigma_y},
        {"sigma_proj_x", c.sigma_proj_x},
        {"sigma_proj_y", c.sigma_proj_y},
        {"chain", {{"abs_rho_le_abs_rho_p", std::abs(c.rho) <= std::abs(c.rho_p) + tol},
                   {"abs_rho_p_le_1", std::abs(c.rho_p) <= 1.0}}},
    };
    return {std::move(rep), exit_code::ok};
}

// --- divergence -------------------------------------------------------------

struct DivergenceOptions {
    InputColumn x, y;
    std::size_t n_coeffs = 8;
    std::string range = "auto"; ///< "auto" or "a,b"
    std::string basis = "cosine";
};

inline BasisKind parse_basis_kind(const std::string& s) {
    if (s == "cosine") return BasisKind::cosine;
    if (s == "trigonometric") return BasisKind::trigonometric;
    throw ParseError("unknown basis '" + s + "' (expected cosine or trigonometric)");
}

inline Report estimate_to_json(const DivergenceEstimate& e) {
    return {{"t_hat_f", e.t_hat_f}, {"t_hat_g", e.t_hat_g}, {"r_hat_f", e.r_hat_f},
            {"r_hat_g", e.r_hat_g}, {"numerator", e.numerator}, {"denom", e.denom},
            {"n_coeffs", e.n_coeffs}, {"n_f", e.n_f}, {"n_g", e.n_g}};
}

inline CommandResult cmd_divergence(const DivergenceOptions& opt, const std::vector<std::string>& argv = {}) {
    if (opt.n_coeffs < 1) throw ParseError("--n-coeffs must be at least 1");
    const BasisKind kind = parse_basis_kind(opt.basis);
    const Series x = read_column(opt.x.path, opt.x.column);
    const Series y = read_column(opt.y.path, opt.y.column);

    std::optional<BasisFamily> basis;
    if (opt.range == "auto") {
        basis = padded_domain(x, y, kind);
    } else {
        const auto fields = cssharp::cli::detail::split_fields(opt.range);
        if (fields.size() != 2) throw ParseError("--range must be 'auto' or 'a,b'");
        const auto a = cssharp::cli::detail::parse_real(fields[0]);
        const auto b = cssharp::cli::detail::parse_real(fields[1]);
        if (!a || !b) throw ParseError("--range bounds must be reals, got '" + opt.range + "'");
        basis = BasisFamily(kind, *a, *b);
    }

    Report rep = detail::header("divergence", argv);
    rep["inputs"] = {{"x", detail::describe_input(opt.x, x)},
                     {"y", detail::describe_input(opt.y, y)},
                     {"basis", to_string(kind)},
                     {"range", {basis->lo(), basis->hi()}}};
    try {
        const DivergenceEstimate e = estimate_divergence(x, y, *basis, opt.n_coeffs);
        Report res = {{"value", e.value}};
        const Report fields = estimate_to_json(e);
        for (const auto& [key, value] : fields.items()) res[key] = value;
        rep["results"] = std::move(res);
        return {std::move(rep), exit_code::ok};
    } catch (const UndefinedEstimate& u) {
        rep["error"] = {{"kind", "UndefinedDivergence"}, {"message", u.what()}};
        rep["results"] = estimate_to_json(u.estimate());
        rep["results"]["value"] = nullptr;
        return {std::move(rep), exit_code::undefined_divergence};
    }
}

// --- selftest ---------------------------------------------------------------

struct SelftestOptions {
    std::uint64_t seed = 7;
    std::size_t cases = 2000;
    std::size_t max_dim = 32;
};

/// Seed precedence: explicit flag, then CS_SHARP_SEED, then the default.
inline std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, std::uint64_t fallback = 7) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CS_SHARP_SEED")) {
        const auto v = cssharp::cli::detail::parse_integer(env);
        if (!v || *v < 0) throw ParseError(std::string("CS_SHARP_SEED must be a nonnegative integer, got '") + env + "'");
        return static_cast<std::uint64_t>(*v);
    }
    return fallback;
}

inline CommandResult cmd_selftest(const SelftestOptions& opt, const std::vector<std::string>& argv = {}) {
    if (opt.max_dim < 1 || opt.cases < 1) throw ParseError("selftest needs cases >= 1 and max dimension >= 1");
    sim::Rng rng(opt.seed);
    double chain = 0.0, squaring = 0.0, lagrange = 0.0, triangle = 0.0, span = 0.0;
    bool extremes_exact = true;
    bool symmetric = true;

    for (std::size_t c = 0; c < opt.cases; ++c) {
        const std::size_t n = 1 + c % opt.max_dim;
        const Series x = sim::uniform_series(n, -10.0, 10.0, rng);
        const Series y = sim::uniform_series(n, -10.0, 10.0, rng);
        const ProjectionSpec spec = sim::random_projection(n, rng);

        const BoundReport r = d_function(x, y, spec);
        if (r.cs_value == 0.0) continue;
        chain = std::max({chain, (r.abs_inner - r.d_value) / r.cs_value, (r.d_value - r.cs_value) / r.cs_value});
        symmetric = symmetric && d_function(y, x, spec).d_value == r.d_value;

        const Series xu = (1.0 / norm(x)) * x;
        const Series yu = (1.0 / norm(y)) * y;
        squaring = std::max(squaring, squaring_identity_defect(xu, yu, spec));

        const double cs2 = r.cs_value * r.cs_value;
        lagrange = std::max(lagrange, std::abs(lagrange_defect(x, y) - lagrange_gap(x, y)) / cs2);

        const TriangleBound t = enhanced_triangle(x, y, spec);
        triangle = std::max({triangle, (t.lower - t.mid) / t.upper, (t.mid - t.upper) / t.upper});

        extremes_exact = extremes_exact && d_function(x, y, proj::Identity{}).d_value == r.cs_value &&
                         d_function(x, y, proj::Zero{}).d_value == r.cs_value;
        span = std::max(span, std::abs(d_function(x, y, proj::SpanOf{x}).d_value - r.abs_inner) / r.cs_value);
    }

    const bool passed = chain <= tolerance::rel && squaring <= 1e-12 && lagrange <= tolerance::rel &&
                        triangle <= tolerance::rel && span <= tolerance::rel && extremes_exact && symmetric;
    Report rep = detail::header("selftest", argv);
    rep["inputs"] = {{"seed", opt.seed}, {"cases", opt.cases}, {"dimensions", {1, opt.max_dim}}};
    rep["results"] = {
        {"max_chain_violation", chain},
        {"max_squaring_defect", squaring},
        {"max_lagrange_rel_defect", lagrange},
        {"max_triangle_violation", triangle},
        {"max_span_attainment_rel", span},
        {"identity_zero_exact", extremes_exact},
        {"symmetric", symmetric},
        {"passed", passed},
    };
    return {std::move(rep), passed ? exit_code::ok : exit_code::selftest_failure};
}

} // namespace cssharp::cli
