#include "infoloss/errors.hpp"
#include "infoloss/gallery.hpp"
#include "infoloss/json_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using infoloss::InvalidInputError;
using nlohmann::json;

constexpr int kExitInvalidInput = 2;
constexpr int kExitNumeric = 3;

/// Inline JSON text, or @path to read a file.
json parse_json_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg.front() == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw InvalidInputError("cannot open file '" + arg.substr(1) + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInputError(std::string("JSON parse error: ") + e.what());
    }
}

std::vector<double> parse_pmf(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

void print_gallery_table(const std::vector<infoloss::GalleryRunRow>& rows) {
    std::printf("%-26s %18s %18s %14s %8s\n", "quantity", "computed", "reference", "provenance",
                "status");
    bool all_pass = true;
    for (const auto& r : rows) {
        std::printf("%-26s %18.9g %18.9g %14s %8s\n", r.quantity.c_str(), r.computed,
                    r.reference, r.provenance.c_str(), r.pass ? "ok" : "FAIL");
        all_pass = all_pass && r.pass;
    }
    if (!all_pass) throw infoloss::NumericError("gallery run: reference comparison failed");
}

int run(int argc, char** argv) {
    CLI::App app{"information loss analysis for deterministic memoryless systems"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "loss report for a PBF and an input law");
    std::string pbf_arg, dist_arg, method = "partition";
    std::uint64_t seed = 1;
    std::size_t samples = 1000000;
    analyze->add_option("--pbf", pbf_arg, "PBF JSON (inline or @file)")->required();
    analyze->add_option("--dist", dist_arg, "distribution JSON (inline or @file)")->required();
    analyze->add_option("--method", method, "diffent|partition|mc");
    analyze->add_option("--seed", seed, "Monte Carlo seed");
    analyze->add_option("--samples", samples, "Monte Carlo sample count");

    // figure cubic
    auto* figure = app.add_subcommand("figure", "figure-style data emission");
    auto* fig_cubic = figure->add_subcommand("cubic", "loss and bounds over an input-sigma grid");
    double sigma_min = 2.0, sigma_max = 30.0;
    int points = 15;
    std::string out_path;
    fig_cubic->add_option("--sigma-min", sigma_min);
    fig_cubic->add_option("--sigma-max", sigma_max);
    fig_cubic->add_option("--points", points);
    fig_cubic->add_option("--out", out_path, "output CSV path (stdout when omitted)");

    // dimension
    auto* dimension = app.add_subcommand("dimension", "information-dimension estimate");
    std::string dim_dist;
    int n_lo = 6, n_hi = 14;
    std::size_t dim_samples = 1000000;
    std::uint64_t dim_seed = 1;
    dimension->add_option("--dist", dim_dist)->required();
    dimension->add_option("--n-lo", n_lo);
    dimension->add_option("--n-hi", n_hi);
    dimension->add_option("--samples", dim_samples, "0 selects the analytic cell-mass route");
    dimension->add_option("--seed", dim_seed);

    // relloss
    auto* relloss = app.add_subcommand("relloss", "relative information loss");
    std::string spec_arg;
    relloss->add_option("--spec", spec_arg, "structural piece spec JSON");
    auto* rel_emp = relloss->add_subcommand("empirical", "finite-resolution ratio estimate");
    std::string rel_dist, rel_map;
    int rel_n_lo = 4, rel_n_hi = 12;
    std::size_t rel_samples = 1000000;
    std::uint64_t rel_seed = 1;
    rel_emp->add_option("--dist", rel_dist)->required();
    rel_emp->add_option("--map", rel_map, "PBF JSON or a gallery system name")->required();
    rel_emp->add_option("--n-lo", rel_n_lo);
    rel_emp->add_option("--n-hi", rel_n_hi)->required();
    rel_emp->add_option("--samples", rel_samples);
    rel_emp->add_option("--seed", rel_seed);

    // gallery
    auto* gal = app.add_subcommand("gallery", "named example systems");
    auto* gal_list = gal->add_subcommand("list", "list available systems");
    auto* gal_run = gal->add_subcommand("run", "reference-vs-computed comparison");
    std::string gal_name;
    gal_run->add_option("name", gal_name)->required();

    // acr
    auto* acr = app.add_subcommand("acr", "autocorrelation receiver transfer analysis");
    int acr_n = 8;
    std::string acr_lags = "1,2,3";
    acr->add_option("--n", acr_n, "period length");
    acr->add_option("--lags", acr_lags, "three comma-separated lags");

    // accumulator
    auto* accu = app.add_subcommand("accumulator", "modulo-sum accumulator analysis");
    int accu_n = 4, accu_steps = 2;
    std::string accu_pmf;
    accu->add_option("--n", accu_n, "field size (even)");
    accu->add_option("--steps", accu_steps, "number of summands");
    accu->add_option("--pmf", accu_pmf, "comma-separated input pmf (default: ramp)");

    CLI11_PARSE(app, argc, argv);

    if (*analyze) {
        const infoloss::Pbf f = infoloss::pbf_from_json(parse_json_arg(pbf_arg));
        const infoloss::ScalarDistribution d = infoloss::dist_from_json(parse_json_arg(dist_arg));
        infoloss::LossReport rep;
        if (method == "diffent") rep = infoloss::loss_via_differential_entropy(f, d);
        else if (method == "partition") rep = infoloss::loss_via_partition(f, d);
        else if (method == "mc") rep = infoloss::loss_monte_carlo(f, d, samples, seed);
        else throw InvalidInputError("unknown method '" + method + "'");
        std::cout << infoloss::to_json(rep).dump(2) << "\n";
    } else if (*fig_cubic) {
        if (points < 1 || !(sigma_min > 0.0) || sigma_max < sigma_min)
            throw InvalidInputError("figure cubic: bad sigma grid");
        std::vector<double> grid;
        for (int i = 0; i < points; ++i)
            grid.push_back(points == 1 ? sigma_min
                                       : sigma_min + (sigma_max - sigma_min) * i / (points - 1));
        const std::string csv = infoloss::figure_cubic_csv(infoloss::figure_cubic(grid));
        if (out_path.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(out_path);
            if (!out) throw InvalidInputError("cannot write '" + out_path + "'");
            out << csv;
        }
    } else if (*dimension) {
        const infoloss::ScalarDistribution d = infoloss::dist_from_json(parse_json_arg(dim_dist));
        const infoloss::DimensionEstimate est =
            infoloss::information_dimension(d, n_lo, n_hi, dim_samples, dim_seed);
        std::cout << infoloss::to_json(est).dump(2) << "\n";
    } else if (*rel_emp) {
        const infoloss::ScalarDistribution d = infoloss::dist_from_json(parse_json_arg(rel_dist));
        std::function<double(double)> map;
        if (!rel_map.empty() && (rel_map.front() == '{' || rel_map.front() == '@')) {
            const infoloss::Pbf f = infoloss::pbf_from_json(parse_json_arg(rel_map));
            map = [f](double x) { return infoloss::evaluate(f, x); };
        } else {
            const infoloss::GallerySystem sys = infoloss::gallery(rel_map);
            if (!sys.scalar_map)
                throw InvalidInputError("gallery system '" + rel_map + "' has no scalar map");
            map = sys.scalar_map;
        }
        const infoloss::RelLossEmpirical r =
            infoloss::rel_loss_empirical(d, map, rel_n_lo, rel_n_hi, rel_samples, rel_seed);
        std::cout << infoloss::to_json(r).dump(2) << "\n";
    } else if (*relloss) {
        if (spec_arg.empty()) throw InvalidInputError("relloss: need --spec or the empirical mode");
        const infoloss::DimensionPieceSpec spec =
            infoloss::dim_spec_from_json(parse_json_arg(spec_arg));
        std::cout << infoloss::to_json(infoloss::rel_loss_structural(spec)).dump(2) << "\n";
    } else if (*gal_list) {
        for (const std::string& name : infoloss::gallery_names()) std::cout << name << "\n";
    } else if (*gal_run) {
        print_gallery_table(infoloss::gallery_run(infoloss::gallery(gal_name)));
    } else if (*acr) {
        const std::vector<double> lag_values = parse_pmf(acr_lags);
        if (lag_values.size() != 3) throw InvalidInputError("acr: need exactly three lags");
        std::array<int, 3> lags{static_cast<int>(lag_values[0]), static_cast<int>(lag_values[1]),
                                static_cast<int>(lag_values[2])};
        std::cout << infoloss::to_json(infoloss::mc_acr_analysis(acr_n, lags)).dump(2) << "\n";
    } else if (*accu) {
        std::vector<double> pmf;
        if (accu_pmf.empty()) {
            // default ramp pmf on {0..N-1}
            pmf.resize(accu_n);
            const double denom = accu_n * (accu_n + 1) / 2.0;
            for (int i = 0; i < accu_n; ++i) pmf[i] = (accu_n - i) / denom;
        } else {
            pmf = parse_pmf(accu_pmf);
        }
        std::cout << infoloss::accumulator_run_json(pmf, accu_steps).dump(2) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const infoloss::ToleranceError& e) {
        std::cerr << "numeric tolerance failure: " << e.what()
                  << " (best estimate " << e.best_estimate << ")\n";
        return kExitNumeric;
    } catch (const infoloss::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const infoloss::InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
}
