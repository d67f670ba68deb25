// Command-line front end for the polymap library: analyze single maps, run
// bifurcation-diagram sweeps, print or recompute band tables, and classify
// one-parameter families.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polymap/analysis.hpp"
#include "polymap/bifurcation.hpp"
#include "polymap/errors.hpp"
#include "polymap/io.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

struct FamilyFlags {
    std::string preset;
    std::string family_path;
    double r = 0.0;
    bool has_r = false;
    std::string b_expr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "named family (logistic, harvest, bmap, ccm_exp, quartic_demo)");
        cmd->add_option("--family", family_path, "family specification file (JSON)");
        auto* ropt = cmd->add_option("--r", r, "growth rate for the harvest preset");
        ropt->each([this](const std::string&) { has_r = true; });
        cmd->add_option("--b-expr", b_expr, "b(lambda) expression for the bmap preset");
    }

    polymap::CanonicalFamily build() const {
        if (!preset.empty() && !family_path.empty())
            throw polymap::Error("give either --preset or --family, not both");
        if (!preset.empty()) {
            polymap::PresetArgs args;
            if (has_r) args.r = r;
            if (!b_expr.empty()) args.b_expr = b_expr;
            return polymap::preset(preset, args);
        }
        if (!family_path.empty()) return polymap::load_family_spec(family_path);
        throw polymap::Error("a family is required: --preset or --family");
    }
};

std::vector<double> parse_grid(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    char extra = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &lo, &hi, &n, &extra) != 3 || n < 2 || !(hi > lo))
        throw polymap::Error("--grid must be lo:hi:n with lo < hi and n >= 2");
    return polymap::linspace(lo, hi, n);
}

std::vector<double> parse_seed_list(const std::string& spec) {
    std::vector<double> seeds;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            seeds.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw polymap::Error("bad seed value '" + item + "'");
        }
    }
    if (seeds.empty()) throw polymap::Error("--seeds needs a comma-separated list of numbers");
    return seeds;
}

std::string join_path(const std::string& dir, const std::string& file) {
    if (dir.empty()) return file;
    return dir.back() == '/' ? dir + file : dir + "/" + file;
}

int run(int argc, char** argv) {
    CLI::App app{"stability, bifurcation and chaos analysis for real polynomial maps"};
    app.require_subcommand(1);

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "reduce a map to canonical form and classify its fixed points");
    FamilyFlags an_family;
    an_family.attach(analyze);
    std::string an_coeffs;
    double an_lambda = 0.0;
    bool an_has_lambda = false;
    int an_degree = 0;
    int an_anchor = -1;
    double an_tol = 1e-10;
    std::string an_out;
    analyze->add_option("--coeffs", an_coeffs, "coefficients of the map f itself, ascending powers, comma separated");
    analyze->add_option("--lambda", an_lambda, "parameter value for --preset/--family")
        ->each([&](const std::string&) { an_has_lambda = true; });
    analyze->add_option("--degree", an_degree, "expected degree (validated against the input)");
    analyze->add_option("--anchor", an_anchor, "index of the fixed point mapped to zero (default: smallest)");
    analyze->add_option("--tol", an_tol, "root-finding tolerance");
    analyze->add_option("--out", an_out, "directory to also write analyze.json into");

    // ---- diagram ----
    auto* diagram = app.add_subcommand("diagram", "sweep a family and write bifurcation-diagram data");
    FamilyFlags dg_family;
    dg_family.attach(diagram);
    std::string dg_grid = "0:1:100";
    std::string dg_seeds;
    int dg_transient = 4096, dg_keep = 512;
    double dg_escape = 1e6;
    bool dg_svg = false, dg_deterministic = false;
    std::string dg_out = ".";
    diagram->add_option("--grid", dg_grid, "lambda grid as lo:hi:n")->required();
    diagram->add_option("--seeds", dg_seeds, "extra seeds, comma separated (replaces the default policy)");
    diagram->add_option("--transient", dg_transient, "discarded iterations per orbit");
    diagram->add_option("--keep", dg_keep, "kept iterations per orbit");
    diagram->add_option("--escape", dg_escape, "escape radius for divergence");
    diagram->add_flag("--svg", dg_svg, "also write a scatter SVG");
    diagram->add_flag("--deterministic", dg_deterministic, "suppress the SVG timestamp comment");
    diagram->add_option("--out", dg_out, "output directory");

    // ---- bands ----
    auto* bands = app.add_subcommand("bands", "print a stability-band table, optionally recomputing it");
    int bd_degree = 2;
    int bd_compute = 0;
    double bd_bisect_tol = 1e-6;
    std::string bd_out;
    std::string bd_family_path;
    bands->add_option("--degree", bd_degree, "map degree")->required();
    bands->add_option("--compute", bd_compute, "recompute b_1..b_K by bisection on the search slice");
    bands->add_option("--bisect-tol", bd_bisect_tol, "bisection bracket tolerance in lambda");
    bands->add_option("--family", bd_family_path, "search-slice family file for degree >= 4");
    bands->add_option("--out", bd_out, "directory to write bands.json into");

    // ---- classify ----
    auto* classify = app.add_subcommand("classify", "regular/reversal classification of a family over an interval");
    FamilyFlags cl_family;
    cl_family.attach(classify);
    std::string cl_grid;
    int cl_k = 1;
    std::string cl_out;
    classify->add_option("--grid", cl_grid, "lambda grid as lo:hi:n")->required();
    classify->add_option("--k", cl_k, "fixed point index whose regions are profiled");
    classify->add_option("--out", cl_out, "directory to write profile.csv into");

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) {
        polymap::MapAnalysis result;
        if (!an_coeffs.empty()) {
            std::vector<double> coeffs = parse_seed_list(an_coeffs);
            polymap::GeneralMap g = polymap::from_coefficients(polymap::Polynomial(coeffs));
            if (an_degree > 0 && g.degree() != an_degree)
                throw polymap::Error("--degree does not match the supplied coefficients");
            result = polymap::analyze_general_map(g, an_tol, an_anchor);
        } else {
            polymap::CanonicalFamily fam = an_family.build();
            if (!an_has_lambda) throw polymap::Error("--lambda is required with --preset/--family");
            polymap::CanonicalMap c = polymap::family_at(fam, an_lambda);
            if (an_degree > 0 && c.degree_n != an_degree)
                throw polymap::Error("--degree does not match the family degree");
            result = polymap::analyze_canonical_map(c, an_tol);
        }
        const std::string out = polymap::analysis_to_json(result);
        std::cout << out;
        if (!an_out.empty()) polymap::write_file(join_path(an_out, "analyze.json"), out);
        return 0;
    }

    if (diagram->parsed()) {
        polymap::CanonicalFamily fam = dg_family.build();
        std::vector<double> grid = parse_grid(dg_grid);
        polymap::SeedPolicy seeds;
        if (!dg_seeds.empty()) {
            seeds.critical_points = false;
            seeds.appendix_seeds = false;
            seeds.fixed_point_perturbations = false;
            seeds.extra = parse_seed_list(dg_seeds);
        }
        polymap::OrbitParams params;
        params.n_transient = dg_transient;
        params.n_keep = dg_keep;
        params.escape_radius = dg_escape;
        polymap::SweepDataset data = polymap::sweep(fam, grid, seeds, params);
        polymap::write_file(join_path(dg_out, "diagram.csv"), polymap::sweep_to_csv(data));
        polymap::write_file(join_path(dg_out, "diagram.json"), polymap::sweep_sidecar_json(data));
        if (dg_svg)
            polymap::write_file(join_path(dg_out, "diagram.svg"), polymap::sweep_to_svg(data, dg_deterministic));
        return 0;
    }

    if (bands->parsed()) {
        if (bd_compute > 0) {
            polymap::CascadeTable table;
            if (bd_degree == 2 || bd_degree == 3) {
                table = polymap::estimate_b_infinity(bd_degree, bd_compute, bd_bisect_tol);
            } else {
                if (bd_family_path.empty())
                    throw polymap::Error("degree >= 4 needs --family with a search slice");
                table = polymap::estimate_b_infinity(bd_degree, polymap::load_family_spec(bd_family_path),
                                                     bd_compute, bd_bisect_tol);
            }
            std::printf("# computed bifurcation values, degree %d\n", bd_degree);
            std::printf("%-4s %-22s %-14s %s\n", "k", "value", "half_width", "method");
            for (const auto& est : table.levels)
                std::printf("%-4d %-22.12g %-14.3g %s%s\n", est.k, est.value, est.half_width,
                            est.method == polymap::BifurcationEstimate::Method::ClosedForm ? "closed-form"
                                                                                           : "bisection",
                            est.noise_floor ? " (noise floor)" : "");
            std::printf("%-4s %-22.12g %-14.3g %s\n", "inf", table.b_infinity.value,
                        table.b_infinity.half_width, "extrapolated");
            if (!bd_out.empty())
                polymap::write_file(join_path(bd_out, "bands.json"), polymap::cascade_to_json(table));
        } else {
            const polymap::BandTable& table = polymap::builtin_band_table(bd_degree);
            std::printf("# built-in bifurcation values, degree %d\n", bd_degree);
            std::printf("%-4s %-22s %s\n", "k", "value", "uncertainty");
            for (std::size_t i = 0; i < table.thresholds.size(); ++i)
                std::printf("%-4zu %-22.12g %.3g\n", i + 1, table.thresholds[i], table.uncertainties[i]);
            std::printf("%-4s %-22.12g %.3g\n", "inf", table.b_inf, table.b_inf_uncertainty);
            if (!bd_out.empty()) {
                polymap::write_file(join_path(bd_out, "bands.json"),
                                    polymap::band_tables_to_json({table}));
            }
        }
        return 0;
    }

    if (classify->parsed()) {
        polymap::CanonicalFamily fam = cl_family.build();
        std::vector<double> grid = parse_grid(cl_grid);
        const polymap::BandTable& table = polymap::builtin_band_table(fam.degree);
        polymap::RegionProfile profile = polymap::region_profile(fam, cl_k, grid, table);
        const polymap::IntervalClass label = polymap::classify_interval(profile);
        std::cout << polymap::to_string(label) << "\n";

        std::ostringstream csv;
        csv << "lambda,pdf,type\n";
        for (std::size_t i = 0; i < profile.grid.size(); ++i) {
            csv << polymap::format_g17(profile.grid[i]) << ',';
            if (profile.poisoned[i]) {
                csv << ",poisoned\n";
                continue;
            }
            csv << polymap::format_g17(profile.pdf_values[i]) << ',';
            const polymap::RegionType& t = profile.types[i];
            if (t.kind == polymap::RegionType::Kind::Outside)
                csv << "outside";
            else if (t.kind == polymap::RegionType::Kind::TypeInfinity)
                csv << "infinity";
            else
                csv << t.k;
            csv << '\n';
        }
        if (!cl_out.empty())
            polymap::write_file(join_path(cl_out, "profile.csv"), csv.str());
        else
            std::cout << csv.str();
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const polymap::NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const polymap::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const polymap::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
