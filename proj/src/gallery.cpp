#include "infoloss/gallery.hpp"
#include "infoloss/accumulator.hpp"
#include "infoloss/acr.hpp"
#include "infoloss/entropy.hpp"
#include "infoloss/errors.hpp"
#include "infoloss/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace infoloss {

namespace {

const double kCubicKnee = 10.0 / std::sqrt(3.0);   // inner monotonicity break
const double kCubicOuter = 20.0 / std::sqrt(3.0);  // edge of the bijective part
const double kCubicYmax = 2000.0 / (3.0 * std::sqrt(3.0)); // local extremum level

double cubic_fwd(double x) { return x * x * x - 100.0 * x; }
double cubic_deriv(double x) { return 3.0 * x * x - 100.0; }

/// Real roots of x^3 - 100 x = y, ascending. Trig form inside the
/// three-root band, Cardano outside, one Newton polish when safe.
std::array<double, 3> cubic_roots_sorted(double y) {
    const double p = -100.0, q = -y;
    std::array<double, 3> r{};
    if (std::abs(y) <= kCubicYmax) {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = (3.0 * q) / (2.0 * p) * std::sqrt(-3.0 / p);
        arg = std::clamp(arg, -1.0, 1.0);
        const double th = std::acos(arg);
        for (int k = 0; k < 3; ++k) r[k] = m * std::cos(th / 3.0 - 2.0 * M_PI * k / 3.0);
        std::sort(r.begin(), r.end());
    } else {
        const double half_q = q / 2.0;
        const double disc = half_q * half_q + (p / 3.0) * (p / 3.0) * (p / 3.0);
        const double s = std::sqrt(disc);
        const double x = std::cbrt(-half_q + s) + std::cbrt(-half_q - s);
        r = {x, x, x};
    }
    for (double& x : r) {
        const double g1 = cubic_deriv(x);
        if (std::abs(g1) > 1e-6) x -= (cubic_fwd(x) - y) / g1;
    }
    return r;
}

ScalarDistribution clipper_ac_input() { return ScalarDistribution::uniform(-2.0, 2.0); }

double clip_map(double x) { return (std::abs(x) > 1.0) ? x : 0.0; }

MapDescriptor pbf_descriptor(const Pbf& f) {
    MapDescriptor m;
    for (const Branch& b : f.branches) m.pieces.push_back({b.domain, PieceClass::Bijective, 1, 1});
    return m;
}

ReferenceValue ref(std::string key, double value, std::string prov, double tol) {
    return {std::move(key), value, std::move(prov), tol};
}

GalleryRunRow row(std::string quantity, double computed, const ReferenceValue& r) {
    GalleryRunRow out;
    out.quantity = std::move(quantity);
    out.computed = computed;
    out.reference = r.value;
    out.provenance = r.provenance;
    out.tolerance = r.tolerance;
    out.pass = std::abs(computed - r.value) <= r.tolerance;
    return out;
}

const ReferenceValue& find_ref(const GallerySystem& sys, const std::string& key) {
    for (const ReferenceValue& r : sys.references)
        if (r.key == key) return r;
    throw InvalidInputError("gallery system '" + sys.name + "' has no reference '" + key + "'");
}

} // namespace

Pbf make_identity_pbf() {
    Branch b = make_branch({-kInf, kInf}, [](double x) { return x; },
                           [](double) { return 1.0; }, [](double y) { return y; },
                           Interval{-kInf, kInf});
    return make_pbf({b});
}

Pbf make_square_law_pbf() {
    Branch neg = make_branch({-kInf, 0.0}, [](double x) { return x * x; },
                             [](double x) { return 2.0 * x; },
                             [](double y) { return -std::sqrt(std::max(0.0, y)); },
                             Interval{0.0, kInf});
    Branch pos = make_branch({0.0, kInf}, [](double x) { return x * x; },
                             [](double x) { return 2.0 * x; },
                             [](double y) { return std::sqrt(std::max(0.0, y)); },
                             Interval{0.0, kInf});
    return make_pbf({neg, pos});
}

Pbf make_rectifier_pbf() {
    Branch neg = make_branch({-kInf, 0.0}, [](double x) { return -x; },
                             [](double) { return -1.0; }, [](double y) { return -y; },
                             Interval{0.0, kInf});
    Branch pos = make_branch({0.0, kInf}, [](double x) { return x; },
                             [](double) { return 1.0; }, [](double y) { return y; },
                             Interval{0.0, kInf});
    return make_pbf({neg, pos});
}

Pbf make_cubic_pbf() {
    Branch left = make_branch(
        {-kInf, -kCubicKnee}, cubic_fwd, cubic_deriv,
        [](double y) { return cubic_roots_sorted(y)[0]; }, Interval{-kInf, kCubicYmax});
    Branch mid = make_branch(
        {-kCubicKnee, kCubicKnee}, cubic_fwd, cubic_deriv,
        [](double y) { return cubic_roots_sorted(y)[1]; }, Interval{-kCubicYmax, kCubicYmax});
    Branch right = make_branch(
        {kCubicKnee, kInf}, cubic_fwd, cubic_deriv,
        [](double y) { return cubic_roots_sorted(y)[2]; }, Interval{-kCubicYmax, kInf});
    return make_pbf({left, mid, right});
}

ScalarDistribution cubic_input(double sigma) { return ScalarDistribution::gaussian(0.0, sigma); }

double cubic_p_b(double sigma) { return 2.0 * q_function(kCubicOuter / sigma); }

double cubic_p_e_map(double sigma) {
    return 2.0 * q_function(kCubicKnee / sigma) - 2.0 * q_function(kCubicOuter / sigma);
}

double staircase_piece_mass(std::int64_t n) {
    return 1.0 / std::log2(static_cast<double>(n + 1)) -
           1.0 / std::log2(static_cast<double>(n + 2));
}

double staircase_hw_partial_sum(std::int64_t k) {
    double s = 0.0;
    for (std::int64_t n = 1; n <= k; ++n) {
        const double p = staircase_piece_mass(n);
        s -= p * std::log2(p);
    }
    return s;
}

Pbf make_staircase_pbf(int pieces) {
    if (pieces < 1) throw InvalidInputError("make_staircase_pbf: need at least one piece");
    std::vector<Branch> branches;
    for (int n = 1; n <= pieces; ++n) {
        const double scale = std::ldexp(1.0, n);  // 2^n
        const double lo = std::ldexp(1.0, -n);    // 2^-n
        const double hi = std::ldexp(1.0, -n + 1);
        branches.push_back(make_branch(
            {lo, hi}, [scale, lo](double x) { return scale * (x - lo); },
            [scale](double) { return scale; },
            [scale, lo](double y) { return y / scale + lo; }, Interval{0.0, 1.0}));
    }
    Pbf f = make_pbf(std::move(branches));
    f.truncated_family = true;
    f.unbounded_branch_count = true;
    f.tail_mass = 1.0 / std::log2(static_cast<double>(pieces + 2));
    return f;
}

ScalarDistribution staircase_input(int pieces) {
    // Dyadic interval (2^-n, 2^-n+1] carries mass p_n at constant density;
    // the unrepresented tail below 2^-pieces is lumped uniformly so the
    // density still integrates to one.
    std::vector<double> edges{0.0};
    std::vector<double> levels;
    const double tail = 1.0 / std::log2(static_cast<double>(pieces + 2));
    edges.push_back(std::ldexp(1.0, -pieces));
    levels.push_back(tail * std::ldexp(1.0, pieces));
    for (int n = pieces; n >= 1; --n) {
        edges.push_back(std::ldexp(1.0, -n + 1));
        levels.push_back(staircase_piece_mass(n) * std::ldexp(1.0, n));
    }
    ScalarDistribution d = ScalarDistribution::piecewise_constant(edges, levels);
    d.name = "staircase_input";
    return d;
}

Pbf make_interleaved_pairs_pbf(double delta) {
    const double pairs_d = 0.5 / delta;
    const int pairs = static_cast<int>(std::lround(pairs_d));
    if (std::abs(pairs_d - pairs) > 1e-12 || pairs < 1)
        throw InvalidInputError("make_interleaved_pairs_pbf: 1/(2 delta) must be an integer");
    std::vector<Branch> branches;
    for (int j = 0; j < 2 * pairs; ++j) {
        const double lo = j * delta;
        const double shift = (j % 2 == 0) ? 0.0 : delta;
        branches.push_back(make_branch(
            {lo, lo + delta}, [shift](double x) { return x - shift; },
            [](double) { return 1.0; }, [shift](double y) { return y + shift; },
            Interval{lo - shift, lo - shift + delta}));
    }
    return make_pbf(std::move(branches));
}

std::vector<std::string> gallery_names() {
    return {"identity",       "square-law", "cubic",
            "rectifier",      "staircase",  "quantizer",
            "center-clipper", "center-clipper-mixed", "energy-vs-information",
            "projection",     "adder",      "mc-acr",
            "accumulator"};
}

GallerySystem gallery(const std::string& name) {
    GallerySystem sys;
    sys.name = name;
    if (name == "identity") {
        sys.summary = "lossless control system";
        sys.pbf = make_identity_pbf();
        sys.input = ScalarDistribution::gaussian(0.0, 1.0);
        sys.scalar_map = [](double x) { return x; };
        sys.descriptor = pbf_descriptor(*sys.pbf);
        sys.references = {ref("loss_bits", 0.0, "exact", 2e-3),
                          ref("map_error_prob", 0.0, "exact", 1e-9),
                          ref("bijective_mass", 1.0, "exact", 1e-12)};
    } else if (name == "square-law") {
        sys.summary = "y = x^2 with standard Gaussian input";
        sys.pbf = make_square_law_pbf();
        sys.input = ScalarDistribution::gaussian(0.0, 1.0);
        sys.scalar_map = [](double x) { return x * x; };
        sys.descriptor = pbf_descriptor(*sys.pbf);
        sys.references = {ref("loss_bits", 1.0, "closed-form", 0.01),
                          ref("map_error_prob", 0.5, "closed-form", 1e-6),
                          ref("h_of_w", 1.0, "exact", 1e-9),
                          ref("bijective_mass", 0.0, "exact", 1e-12)};
    } else if (name == "cubic") {
        const double sigma = 10.0;
        sys.summary = "y = x^3 - 100 x with Gaussian input, sigma = 10";
        sys.pbf = make_cubic_pbf();
        sys.input = cubic_input(sigma);
        sys.scalar_map = cubic_fwd;
        sys.descriptor = pbf_descriptor(*sys.pbf);
        sys.references = {
            ref("bijective_mass", cubic_p_b(sigma), "closed-form", 1e-9),
            ref("map_error_prob", cubic_p_e_map(sigma), "closed-form", 1e-6),
            ref("bound_e_log_card", (1.0 - cubic_p_b(sigma)) * std::log2(3.0), "closed-form",
                1e-9),
            ref("bound_log_e_card", std::log2(3.0 - 2.0 * cubic_p_b(sigma)), "closed-form",
                1e-9),
            ref("bound_ess_sup", std::log2(3.0), "closed-form", 1e-12),
            ref("cross_method_gap", 0.0, "cross-method", 0.02)};
    } else if (name == "rectifier") {
        sys.summary = "full-wave rectifier y = |x| with standard Gaussian input";
        sys.pbf = make_rectifier_pbf();
        sys.input = ScalarDistribution::gaussian(0.0, 1.0);
        sys.scalar_map = [](double x) { return std::abs(x); };
        sys.descriptor = pbf_descriptor(*sys.pbf);
        sys.references = {ref("loss_bits", 1.0, "closed-form", 0.01)};
    } else if (name == "staircase") {
        const int pieces = 40;
        sys.summary = "dyadic ramp family with slowly decaying piece masses";
        sys.pbf = make_staircase_pbf(pieces);
        sys.input = staircase_input(pieces);
        sys.scalar_map = [](double x) {
            if (x <= 0.0 || x > 1.0) throw DomainError("staircase map: x outside (0, 1]");
            const int n = static_cast<int>(std::floor(-std::log2(x))) + 1;
            const double lo = std::ldexp(1.0, -n);
            return std::ldexp(1.0, n) * (x - lo);
        };
        sys.descriptor = pbf_descriptor(*sys.pbf);
        sys.h_w_divergent = true;
        const double inv_log2_3 = 1.0 / std::log2(3.0);
        sys.references = {ref("map_error_prob", inv_log2_3, "closed-form", 1e-6),
                          ref("suboptimal_error_prob", inv_log2_3, "closed-form", 1e-6),
                          ref("tail_mass", 1.0 / std::log2(pieces + 2.0), "formula", 1e-12)};
    } else if (name == "quantizer") {
        sys.summary = "unit floor quantizer on uniform input";
        sys.input = ScalarDistribution::uniform(0.0, 4.0);
        sys.scalar_map = [](double x) { return std::floor(x); };
        for (int k = 0; k < 4; ++k)
            sys.descriptor.pieces.push_back(
                {{static_cast<double>(k), static_cast<double>(k + 1)}, PieceClass::Constant, 1, 0});
        sys.references = {ref("rel_loss", 1.0, "exact", 1e-12),
                          ref("empirical_rel_loss_n12", 1.0, "exact", 0.05)};
    } else if (name == "center-clipper") {
        sys.summary = "center clipper, clipping region [-1, 1], uniform input on [-2, 2]";
        sys.input = clipper_ac_input();
        sys.scalar_map = clip_map;
        sys.descriptor.pieces = {{{-2.0, -1.0}, PieceClass::Bijective, 1, 1},
                                 {{-1.0, 1.0}, PieceClass::Constant, 1, 0},
                                 {{1.0, 2.0}, PieceClass::Bijective, 1, 1}};
        sys.references = {ref("rel_loss", 0.5, "exact", 1e-12),
                          ref("empirical_rel_loss", 0.5, "exact", 0.05)};
    } else if (name == "center-clipper-mixed") {
        sys.summary = "center clipper with a 0.4 point mass at 0 and 0.6 AC mass";
        sys.input = ScalarDistribution::mixed(0.6, clipper_ac_input(), {{0.0, 0.4}});
        sys.scalar_map = clip_map;
        sys.descriptor.pieces = {{{-2.0, -1.0}, PieceClass::Bijective, 1, 1},
                                 {{-1.0, 1.0}, PieceClass::Constant, 1, 0},
                                 {{1.0, 2.0}, PieceClass::Bijective, 1, 1}};
        sys.references = {ref("info_dim", 0.6, "exact", 1e-12),
                          ref("rel_loss", 0.5, "exact", 1e-12),
                          ref("reconstruction_error", 0.3, "exact", 1e-12),
                          ref("fano_relative_bound", 0.5, "exact", 1e-12)};
    } else if (name == "energy-vs-information") {
        sys.summary = "equal information loss, different mean-squared error";
        sys.pbf = make_interleaved_pairs_pbf(0.5);
        sys.input = ScalarDistribution::uniform(0.0, 1.0);
        sys.descriptor = pbf_descriptor(*sys.pbf);
        sys.references = {ref("loss_bits_coarse", 1.0, "exact", 5e-3),
                          ref("loss_bits_fine", 1.0, "exact", 5e-3),
                          ref("mse_coarse", 0.125, "closed-form", 0.01),
                          ref("mse_fine", 0.0078125, "closed-form", 1e-3)};
    } else if (name == "projection") {
        sys.summary = "projection of a 4-dimensional AC law onto its first coordinate";
        std::vector<ScalarDistribution> margs(4, ScalarDistribution::uniform(0.0, 1.0));
        sys.vector_input = VectorDistribution::independent_product(margs);
        sys.dim_spec = DimensionPieceSpec{4, {{1.0, 1, DimPieceClass::Submersion}}};
        sys.descriptor.pieces = {{{-kInf, kInf}, PieceClass::Submersion, 4, 1}};
        sys.references = {ref("rel_loss", 0.75, "exact", 0.0)};
    } else if (name == "adder") {
        sys.summary = "sum of two independent AC scalars";
        std::vector<ScalarDistribution> margs(2, ScalarDistribution::uniform(0.0, 1.0));
        sys.vector_input = VectorDistribution::independent_product(margs);
        sys.descriptor.pieces = {{{-kInf, kInf}, PieceClass::Submersion, 2, 1}};
        sys.references = {ref("rel_loss", 0.5, "exact", 0.0)};
    } else if (name == "mc-acr") {
        sys.summary = "multi-channel autocorrelation receiver, N = 8, lags 1,2,3";
        sys.descriptor.pieces = {{{-kInf, kInf}, PieceClass::Submersion, 16, 6}};
        sys.declared_rel_transfer = 3.0 / 8.0;
        sys.references = {ref("t_x_to_yk", 15.0 / 16.0, "formula", 0.0),
                          ref("t_yk_to_rk", 2.0 / 15.0, "formula", 0.0),
                          ref("t_x_to_rk", 1.0 / 8.0, "formula", 0.0),
                          ref("joint_bound", 3.0 / 8.0, "formula", 0.0),
                          ref("t_full_autocorrelation", 0.5, "formula", 0.0)};
    } else if (name == "accumulator") {
        sys.summary = "modulo-sum accumulator over a field of size 4";
        sys.descriptor.pieces = {{{-kInf, kInf}, PieceClass::Bijective, 3, 3}};
        sys.references = {ref("loss_bound_i2", 2.0, "formula", 0.0),
                          ref("uniform_gap_i200", 0.0, "exact", 1e-6)};
    } else {
        std::string names;
        for (const std::string& n : gallery_names()) names += (names.empty() ? "" : ", ") + n;
        throw InvalidInputError("unknown gallery system '" + name + "'; available: " + names);
    }
    return sys;
}

std::string to_string(FlowClass c) {
    switch (c) {
        case FlowClass::FiniteConstant: return "finite";
        case FlowClass::Infinite: return "infinite";
        case FlowClass::Zero: return "0";
        case FlowClass::One: return "1";
        case FlowClass::Between: return "in(0,1)";
    }
    return "?";
}

FlowPattern flow_pattern(const GallerySystem& sys) {
    FlowPattern p;

    bool all_constant = true, any_constant = false;
    for (const MapPiece& piece : sys.descriptor.pieces) {
        if (piece.cls != PieceClass::Constant) all_constant = false;
        else any_constant = true;
    }

    // Mutual information: finite iff the output is discrete.
    p.mutual_information = all_constant ? FlowClass::FiniteConstant : FlowClass::Infinite;

    // Absolute loss: structural probe, plus the divergent-H(W) witness for
    // truncated families.
    bool loss_infinite;
    if (sys.input) {
        loss_infinite =
            infinite_loss_probe(sys.descriptor, *sys.input).result == LossClassification::Infinite;
    } else {
        // Vector systems: any declared dimension-reducing piece loses
        // uncountable fibers.
        loss_infinite = false;
        for (const MapPiece& piece : sys.descriptor.pieces)
            if (piece.cls == PieceClass::Submersion && piece.out_dim < piece.in_dim)
                loss_infinite = true;
            else if (piece.cls == PieceClass::Constant)
                loss_infinite = true;
    }
    if (sys.h_w_divergent) loss_infinite = true;
    p.abs_loss = loss_infinite ? FlowClass::Infinite : FlowClass::FiniteConstant;

    // Relative loss. Finite absolute loss forces zero relative loss for
    // inputs of infinite entropy; otherwise use the structural ratio.
    double l;
    if (!loss_infinite) {
        l = 0.0;
    } else if (sys.dim_spec) {
        l = rel_loss_structural(*sys.dim_spec).rel_loss;
    } else if (sys.declared_rel_transfer >= 0.0) {
        l = 1.0 - sys.declared_rel_transfer;
    } else if (sys.input && !sys.descriptor.pieces.empty() && any_constant) {
        // Mass ratio of the AC component sitting on constant pieces.
        double ac_total = sys.input->ac_weight;
        double ac_const = 0.0;
        for (const MapPiece& piece : sys.descriptor.pieces) {
            if (piece.cls != PieceClass::Constant) continue;
            double m = sys.input->prob(piece.domain.lo, piece.domain.hi);
            for (const Atom& a : sys.input->atoms)
                if (piece.domain.contains(a.location)) m -= a.mass;
            ac_const += std::max(0.0, m);
        }
        l = rel_loss_mixed(ac_const, ac_total).rel_loss;
    } else {
        l = sys.h_w_divergent ? 0.0 : 1.0; // all-bijective families keep countable fibers
    }
    p.rel_loss = (l <= 0.0) ? FlowClass::Zero : (l >= 1.0 ? FlowClass::One : FlowClass::Between);
    p.rel_transfer =
        (l <= 0.0) ? FlowClass::One : (l >= 1.0 ? FlowClass::Zero : FlowClass::Between);
    return p;
}

std::vector<FigureCubicRow> figure_cubic(const std::vector<double>& sigma_grid) {
    const Pbf f = make_cubic_pbf();
    std::vector<FigureCubicRow> rows;
    rows.reserve(sigma_grid.size());
    for (double sigma : sigma_grid) {
        if (!(sigma > 0.0)) throw InvalidInputError("figure_cubic: sigma must be positive");
        const ScalarDistribution d = cubic_input(sigma);
        const double pb = cubic_p_b(sigma);
        const double pe = cubic_p_e_map(sigma);
        FigureCubicRow r;
        r.sigma = sigma;
        r.numeric_loss = loss_via_partition(f, d).loss_bits;
        r.fano = classic_fano_bound(pe, 3.0);
        r.fano_type = fano_type_bound(pe, pb, 3.0 - 2.0 * pb);
        r.feder_merhav_lower = feder_merhav_phi(pe);
        r.ordered_ub = (1.0 - pb) * std::log2(3.0);
        rows.push_back(r);
    }
    return rows;
}

std::string figure_cubic_csv(const std::vector<FigureCubicRow>& rows) {
    std::string out = "sigma,numeric_loss,fano,fano_type,feder_merhav_lower,ordered_ub\n";
    char buf[256];
    for (const FigureCubicRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.sigma,
                      r.numeric_loss, r.fano, r.fano_type, r.feder_merhav_lower, r.ordered_ub);
        out += buf;
    }
    return out;
}

std::vector<GalleryRunRow> gallery_run(const GallerySystem& sys, std::uint64_t seed) {
    std::vector<GalleryRunRow> rows;
    const auto have = [&](const std::string& key) {
        return std::any_of(sys.references.begin(), sys.references.end(),
                           [&](const ReferenceValue& r) { return r.key == key; });
    };

    if (sys.pbf && sys.input && sys.name != "energy-vs-information") {
        const Pbf& f = *sys.pbf;
        const ScalarDistribution& d = sys.input.value();
        if (have("loss_bits"))
            rows.push_back(row("loss_bits", loss_via_partition(f, d).loss_bits,
                               find_ref(sys, "loss_bits")));
        if (have("map_error_prob"))
            rows.push_back(row("map_error_prob", map_error_probability(f, d),
                               find_ref(sys, "map_error_prob")));
        if (have("suboptimal_error_prob"))
            rows.push_back(row("suboptimal_error_prob", suboptimal_reconstructor(f, d).error_prob,
                               find_ref(sys, "suboptimal_error_prob")));
        if (have("h_of_w"))
            rows.push_back(row("h_of_w", bound_chain(f, d).h_of_w, find_ref(sys, "h_of_w")));
        if (have("bijective_mass"))
            rows.push_back(row("bijective_mass", bijective_part(f, d).mass,
                               find_ref(sys, "bijective_mass")));
        if (have("tail_mass"))
            rows.push_back(row("tail_mass", f.tail_mass, find_ref(sys, "tail_mass")));
        if (have("bound_e_log_card")) {
            const BoundChain bc = bound_chain(f, d);
            rows.push_back(
                row("bound_e_log_card", bc.e_log_card, find_ref(sys, "bound_e_log_card")));
            rows.push_back(
                row("bound_log_e_card", bc.log_e_card, find_ref(sys, "bound_log_e_card")));
            rows.push_back(
                row("bound_ess_sup", bc.ess_sup_log_card, find_ref(sys, "bound_ess_sup")));
        }
        if (have("cross_method_gap")) {
            const double lp = loss_via_partition(f, d).loss_bits;
            const double lh = loss_via_differential_entropy(f, d).loss_bits;
            rows.push_back(row("cross_method_gap", lh - lp, find_ref(sys, "cross_method_gap")));
        }
    }

    if (sys.name == "energy-vs-information") {
        const ScalarDistribution d = *sys.input;
        const Pbf coarse = make_interleaved_pairs_pbf(0.5);
        const Pbf fine = make_interleaved_pairs_pbf(0.125);
        rows.push_back(row("loss_bits_coarse", loss_via_partition(coarse, d).loss_bits,
                           find_ref(sys, "loss_bits_coarse")));
        rows.push_back(row("loss_bits_fine", loss_via_partition(fine, d).loss_bits,
                           find_ref(sys, "loss_bits_fine")));
        // Empirical MSE of the MAP reconstructor, same loss but different
        // reconstruction energy.
        const auto mse_of = [&](const Pbf& f) {
            Rng rng(seed);
            double acc = 0.0;
            const std::size_t m = 200000;
            for (std::size_t i = 0; i < m; ++i) {
                const double x = d.sample(rng);
                const double r = map_reconstruct(f, d, evaluate(f, x));
                acc += (x - r) * (x - r);
            }
            return acc / static_cast<double>(m);
        };
        rows.push_back(row("mse_coarse", mse_of(coarse), find_ref(sys, "mse_coarse")));
        rows.push_back(row("mse_fine", mse_of(fine), find_ref(sys, "mse_fine")));
    }

    if (sys.name == "quantizer") {
        DimensionPieceSpec spec{1, {{1.0, 0, DimPieceClass::Constant}}};
        rows.push_back(row("rel_loss", rel_loss_structural(spec).rel_loss,
                           find_ref(sys, "rel_loss")));
        const RelLossEmpirical emp =
            rel_loss_empirical(*sys.input, sys.scalar_map, 6, 12, 200000, seed);
        rows.push_back(row("empirical_rel_loss_n12", emp.ratios.back(),
                           find_ref(sys, "empirical_rel_loss_n12")));
    }
    if (sys.name == "center-clipper") {
        const double clip_mass = sys.input->prob(-1.0, 1.0);
        rows.push_back(row("rel_loss", rel_loss_mixed(clip_mass, 1.0).rel_loss,
                           find_ref(sys, "rel_loss")));
        const RelLossEmpirical emp =
            rel_loss_empirical(*sys.input, sys.scalar_map, 4, 12, 400000, seed);
        rows.push_back(
            row("empirical_rel_loss", emp.estimate, find_ref(sys, "empirical_rel_loss")));
    }
    if (sys.name == "center-clipper-mixed") {
        const ScalarDistribution& d = *sys.input;
        const double ac_total = d.ac_weight;
        double ac_clip = d.prob(-1.0, 1.0);
        for (const Atom& a : d.atoms)
            if (a.location >= -1.0 && a.location <= 1.0) ac_clip -= a.mass;
        rows.push_back(row("info_dim", ac_total, find_ref(sys, "info_dim")));
        rows.push_back(
            row("rel_loss", rel_loss_mixed(ac_clip, ac_total).rel_loss, find_ref(sys, "rel_loss")));
        // Fixed reconstructor r(0) = 0 recovers the atom; only the clipped AC
        // mass errs.
        rows.push_back(row("reconstruction_error", ac_clip, find_ref(sys, "reconstruction_error")));
        rows.push_back(row("fano_relative_bound",
                           fano_relative_bound(ac_clip, 1.0, ac_total).bound,
                           find_ref(sys, "fano_relative_bound")));
    }
    if (sys.name == "projection" || sys.name == "adder") {
        const double l = (sys.name == "projection")
                             ? rel_loss_structural(*sys.dim_spec).rel_loss
                             : rel_loss_from_dimensions(2.0, 1.0).rel_loss;
        rows.push_back(row("rel_loss", l, find_ref(sys, "rel_loss")));
    }
    if (sys.name == "mc-acr") {
        const McAcrAnalysis a = mc_acr_analysis(8, {1, 2, 3});
        rows.push_back(row("t_x_to_yk", a.t_x_to_yk, find_ref(sys, "t_x_to_yk")));
        rows.push_back(row("t_yk_to_rk", a.t_yk_to_rk, find_ref(sys, "t_yk_to_rk")));
        rows.push_back(row("t_x_to_rk", a.t_x_to_rk, find_ref(sys, "t_x_to_rk")));
        rows.push_back(row("joint_bound", a.joint_bound, find_ref(sys, "joint_bound")));
        rows.push_back(row("t_full_autocorrelation", a.t_x_to_full_r,
                           find_ref(sys, "t_full_autocorrelation")));
    }
    if (sys.name == "accumulator") {
        rows.push_back(
            row("loss_bound_i2", accumulator_loss_bound(4, 2), find_ref(sys, "loss_bound_i2")));
        const std::vector<double> p{0.4, 0.3, 0.2, 0.1};
        const std::vector<double> p200 = accumulator_pmf_at(p, 200);
        double gap = 0.0;
        for (double v : p200) gap = std::max(gap, std::abs(v - 0.25));
        rows.push_back(row("uniform_gap_i200", gap, find_ref(sys, "uniform_gap_i200")));
    }
    return rows;
}

} // namespace infoloss
