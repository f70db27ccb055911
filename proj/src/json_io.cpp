#include "infoloss/json_io.hpp"
#include "infoloss/errors.hpp"
#include "infoloss/expr.hpp"
#include "infoloss/gallery.hpp"

#include <cmath>
#include <string>

namespace infoloss {

using nlohmann::json;

namespace {

double domain_endpoint(const json& j, double fallback) {
    if (j.is_null()) return fallback;
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
        throw InvalidInputError("bad domain endpoint '" + s + "'");
    }
    return j.get<double>();
}

std::vector<Atom> atoms_from_json(const json& j) {
    std::vector<Atom> atoms;
    for (const json& a : j) {
        if (!a.is_array() || a.size() != 2)
            throw InvalidInputError("atom entries must be [location, mass] pairs");
        atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
    return atoms;
}

/// Monotonicity probe: the derivative must keep one sign across the domain.
void check_monotone(const Branch& b) {
    const Interval d = b.domain;
    const double lo = std::isfinite(d.lo) ? d.lo : (std::isfinite(d.hi) ? d.hi - 64.0 : -64.0);
    const double hi = std::isfinite(d.hi) ? d.hi : (std::isfinite(d.lo) ? d.lo + 64.0 : 64.0);
    const int kProbes = 33;
    for (int i = 1; i < kProbes; ++i) {
        const double x = lo + (hi - lo) * i / kProbes;
        const double g1 = b.deriv(x);
        if (g1 == 0.0 || (g1 > 0.0) != b.increasing)
            throw InvalidInputError("branch map is not strictly monotone on its domain");
    }
}

Branch branch_from_json(const json& j) {
    if (!j.contains("domain") || !j["domain"].is_array() || j["domain"].size() != 2)
        throw InvalidInputError("branch needs a [lo, hi] domain");
    Interval dom{domain_endpoint(j["domain"][0], -kInf), domain_endpoint(j["domain"][1], kInf)};
    const std::string kind = j.value("map", "");

    std::function<double(double)> fwd, deriv;
    std::optional<std::function<double(double)>> inverse;
    if (kind == "affine") {
        const double a = j.at("a").get<double>();
        const double c = j.value("b", 0.0);
        if (a == 0.0) throw InvalidInputError("affine branch needs a != 0");
        fwd = [a, c](double x) { return a * x + c; };
        deriv = [a](double) { return a; };
        inverse = [a, c](double y) { return (y - c) / a; };
    } else if (kind == "power") {
        const double p = j.at("exponent").get<double>();
        const double s = j.value("scale", 1.0);
        const double off = j.value("offset", 0.0);
        if (p == 0.0 || s == 0.0) throw InvalidInputError("power branch needs nonzero exponent/scale");
        fwd = [p, s, off](double x) { return s * std::pow(x, p) + off; };
        deriv = [p, s](double x) { return s * p * std::pow(x, p - 1.0); };
    } else if (kind == "cubic") {
        const auto& cj = j.at("coeffs");
        if (!cj.is_array() || cj.size() != 4)
            throw InvalidInputError("cubic branch needs coeffs [a3,a2,a1,a0]");
        const double a3 = cj[0].get<double>(), a2 = cj[1].get<double>(),
                     a1 = cj[2].get<double>(), a0 = cj[3].get<double>();
        fwd = [=](double x) { return ((a3 * x + a2) * x + a1) * x + a0; };
        deriv = [=](double x) { return (3.0 * a3 * x + 2.0 * a2) * x + a1; };
    } else if (kind == "expr") {
        if (!dom.bounded())
            throw InvalidInputError("expr branch requires a bounded domain");
        const std::function<double(double)> f = compile_expression(j.at("formula").get<std::string>());
        const double h = j.value("fd_step", 1e-6);
        fwd = f;
        deriv = [f, h](double x) { return (f(x + h) - f(x - h)) / (2.0 * h); };
    } else {
        throw InvalidInputError("unknown branch map kind '" + kind + "'");
    }

    std::optional<Interval> image;
    if (!dom.bounded()) {
        // IEEE evaluation at +-inf is exact for the closed-form kinds.
        const double ya = fwd(dom.lo), yb = fwd(dom.hi);
        image = Interval{std::min(ya, yb), std::max(ya, yb)};
    }
    Branch b = make_branch(dom, std::move(fwd), std::move(deriv), std::move(inverse), image);
    check_monotone(b);
    return b;
}

const char* method_name(LossMethod m) {
    switch (m) {
        case LossMethod::DiffEntropyFormula: return "diffent";
        case LossMethod::PartitionIntegral: return "partition";
        case LossMethod::MonteCarlo: return "mc";
    }
    return "?";
}

json finite_or_string(double v) {
    if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
    if (std::isnan(v)) return json(nullptr);
    return json(v);
}

} // namespace

ScalarDistribution dist_from_json(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "gaussian")
        return ScalarDistribution::gaussian(j.value("mean", 0.0), j.value("std", 1.0));
    if (kind == "uniform")
        return ScalarDistribution::uniform(j.value("a", 0.0), j.value("b", 1.0));
    if (kind == "discrete") return ScalarDistribution::discrete(atoms_from_json(j.at("atoms")));
    if (kind == "mixed") {
        const double w = j.at("ac_weight").get<double>();
        return ScalarDistribution::mixed(w, dist_from_json(j.at("ac")),
                                         atoms_from_json(j.at("atoms")));
    }
    throw InvalidInputError("unknown distribution kind '" + kind + "'");
}

Pbf pbf_from_json(const json& j) {
    if (j.contains("named")) {
        const std::string name = j["named"].get<std::string>();
        const GallerySystem sys = gallery(name);
        if (!sys.pbf)
            throw InvalidInputError("gallery system '" + name +
                                    "' is not a piecewise bijective map");
        return *sys.pbf;
    }
    if (!j.contains("branches") || !j["branches"].is_array() || j["branches"].empty())
        throw InvalidInputError("pbf JSON needs a nonempty branches array");
    std::vector<Branch> branches;
    for (const json& bj : j["branches"]) branches.push_back(branch_from_json(bj));
    return make_pbf(std::move(branches));
}

DimensionPieceSpec dim_spec_from_json(const json& j) {
    DimensionPieceSpec spec;
    spec.input_dim = j.at("N").get<int>();
    for (const json& pj : j.at("pieces")) {
        DimensionPiece p;
        p.mass = pj.at("mass").get<double>();
        p.output_dim = pj.value("M", 0);
        const std::string cls = pj.value("class", "submersion");
        if (cls == "submersion") p.cls = DimPieceClass::Submersion;
        else if (cls == "constant") p.cls = DimPieceClass::Constant;
        else if (cls == "injective") p.cls = DimPieceClass::Injective;
        else throw InvalidInputError("unknown piece class '" + cls + "'");
        spec.pieces.push_back(p);
    }
    spec.validate();
    return spec;
}

json to_json(const LossReport& rep) {
    return json{{"schema_version", kSchemaVersion},
                {"loss_bits", finite_or_string(rep.loss_bits)},
                {"method", method_name(rep.method)},
                {"numeric_error", rep.numeric_error},
                {"bound_chain",
                 {{"e_log_card", finite_or_string(rep.bound_chain.e_log_card)},
                  {"log_e_card", finite_or_string(rep.bound_chain.log_e_card)},
                  {"ess_sup_log_card", finite_or_string(rep.bound_chain.ess_sup_log_card)},
                  {"log_k", finite_or_string(rep.bound_chain.log_k)},
                  {"h_of_w", finite_or_string(rep.bound_chain.h_of_w)},
                  {"e_card", finite_or_string(rep.bound_chain.e_card)},
                  {"ess_sup_card", finite_or_string(rep.bound_chain.ess_sup_card)}}},
                {"flags", {{"infinite", rep.flags.infinite}, {"reason", rep.flags.reason}}}};
}

json to_json(const ReconResult& rec) {
    const char* kind = rec.kind == ReconKind::MAP          ? "map"
                       : rec.kind == ReconKind::Suboptimal ? "suboptimal"
                                                           : "custom";
    return json{{"schema_version", kSchemaVersion},
                {"kind", kind},
                {"error_prob", rec.error_prob},
                {"fano_type_bound", finite_or_string(rec.fano_type_bound)},
                {"classic_fano_bound", finite_or_string(rec.classic_fano_bound)},
                {"feder_merhav_lower", finite_or_string(rec.feder_merhav_lower)},
                {"suboptimal_bound", finite_or_string(rec.suboptimal_bound)},
                {"extra_bounds",
                 {{"binent_ess_sup", finite_or_string(rec.extra.binent_ess_sup)},
                  {"binent_card", finite_or_string(rec.extra.binent_card)},
                  {"fano_type_e_card", finite_or_string(rec.extra.fano_type_e_card)}}}};
}

json to_json(const RelLossResult& r) {
    const char* prov = r.provenance == RelProvenance::DimensionRatio ? "dimension-ratio"
                       : r.provenance == RelProvenance::Structural   ? "structural"
                       : r.provenance == RelProvenance::Mixed        ? "mixed"
                                                                     : "empirical";
    return json{{"schema_version", kSchemaVersion},
                {"rel_loss", r.rel_loss},
                {"rel_transfer", r.rel_transfer},
                {"provenance", prov},
                {"d_x", r.d_x},
                {"d_x_given_y", r.d_x_given_y}};
}

json to_json(const RelLossEmpirical& r) {
    return json{{"schema_version", kSchemaVersion},
                {"estimate", r.estimate},
                {"stderr", r.stderr_},
                {"ns", r.ns},
                {"ratios", r.ratios},
                {"undersampled", r.undersampled}};
}

json to_json(const DimensionEstimate& est) {
    return json{{"schema_version", kSchemaVersion},
                {"estimate", est.estimate},
                {"stderr", est.stderr_},
                {"entropies", est.entropies},
                {"undersampled", est.undersampled}};
}

json to_json(const McAcrAnalysis& a) {
    json ranks = json::array();
    for (const auto& r : a.ranks)
        ranks.push_back({{"lag", r.lag}, {"rank_plus", r.rank_plus}, {"rank_minus", r.rank_minus}});
    return json{{"schema_version", kSchemaVersion},
                {"n", a.n},
                {"lags", a.lags},
                {"t_x_to_yk", a.t_x_to_yk},
                {"t_yk_to_rk", a.t_yk_to_rk},
                {"t_x_to_rk", a.t_x_to_rk},
                {"t_x_to_r0", a.t_x_to_r0},
                {"joint_bound", a.joint_bound},
                {"joint_bound_raw", a.joint_bound_raw},
                {"joint_tight", a.joint_tight},
                {"duplicate_lags", a.duplicate_lags},
                {"t_x_to_full_r", a.t_x_to_full_r},
                {"hermitian_free_dims", a.hermitian_free_dims},
                {"circulant_ranks", ranks}};
}

json accumulator_run_json(const std::vector<double>& pmf, int steps) {
    AccumulatorState s = make_accumulator(pmf);
    double max_dev = 0.0;
    for (int i = 1; i < steps; ++i) {
        s = accumulator_step(s);
        max_dev = std::max(max_dev, s.last_consistency_dev);
    }
    double uniform_gap = 0.0;
    for (double v : s.current_pmf)
        uniform_gap = std::max(uniform_gap, std::abs(v - 1.0 / s.n));
    return json{{"schema_version", kSchemaVersion},
                {"n", s.n},
                {"steps", s.step},
                {"pmf", s.current_pmf},
                {"loss_bound_bits", accumulator_loss_bound(s.n, s.step)},
                {"max_route_deviation", max_dev},
                {"uniform_gap", uniform_gap}};
}

} // namespace infoloss
