#include "infoloss/loss.hpp"
#include "infoloss/entropy.hpp"
#include "infoloss/errors.hpp"
#include "infoloss/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace infoloss {

namespace {

inline double plogp(double p) {
    return (p > 0.0) ? -p * std::log2(p) : 0.0;
}

/// Entropy (bits) of unnormalized weights with total s.
double weight_entropy(const std::vector<double>& w, double s) {
    double h = 0.0;
    for (double v : w)
        if (v > 0.0) h += plogp(v / s);
    return h;
}

/// Integrates a y-space integrand over the image of f, cutting at every
/// branch-image endpoint and every mapped density breakpoint, with the
/// x-support truncated at negligible tail mass.
IntegralResult integrate_over_image(const Pbf& f, const ScalarDistribution& d,
                                    const Integrand& integrand) {
    const Interval xt = d.truncated_support();
    std::set<double> cuts;
    double ylo = kInf, yhi = -kInf;
    for (const Branch& b : f.branches) {
        const double a = std::max(b.domain.lo, xt.lo);
        const double c = std::min(b.domain.hi, xt.hi);
        if (!(c > a)) continue;
        const double ya = b.fwd(a), yc = b.fwd(c);
        ylo = std::min(ylo, std::min(ya, yc));
        yhi = std::max(yhi, std::max(ya, yc));
        cuts.insert(ya);
        cuts.insert(yc);
        if (std::isfinite(b.image.lo)) cuts.insert(b.image.lo);
        if (std::isfinite(b.image.hi)) cuts.insert(b.image.hi);
        for (double bp : d.pdf_breakpoints)
            if (bp > a && bp < c) cuts.insert(b.fwd(bp));
    }
    if (!(yhi > ylo)) return {0.0, 0.0};

    std::vector<double> pts;
    for (double c : cuts)
        if (c > ylo && c < yhi) pts.push_back(c);
    return integrate_with_breakpoints(integrand, ylo, yhi, pts, 1e-7, 1e-7);
}

} // namespace

BoundChain bound_chain(const Pbf& f, const ScalarDistribution& d) {
    BoundChain bc;
    double e_log = 0.0, e_card = 0.0, total = 0.0;
    int ess_sup = 1;
    for (const ImageCell& cell : decompose_image(f)) {
        const double mass = image_mass(f, d, cell.y);
        if (mass <= 0.0) continue;
        const auto card = static_cast<int>(cell.covering.size());
        e_log += mass * std::log2(static_cast<double>(card));
        e_card += mass * card;
        total += mass;
        if (mass > 1e-12) ess_sup = std::max(ess_sup, card);
    }
    // Truncation of tails can leave a sliver of unassigned mass; treat it as
    // cardinality-1 mass so the expectations stay expectations.
    if (total < 1.0 && !f.truncated_family) e_card += (1.0 - total);

    std::vector<double> masses(f.branch_count());
    for (int i = 0; i < f.branch_count(); ++i) masses[i] = branch_mass(f, d, i);

    bc.e_log_card = e_log;
    bc.e_card = std::max(1.0, e_card);
    bc.log_e_card = std::log2(bc.e_card);
    bc.ess_sup_card = ess_sup;
    bc.ess_sup_log_card = std::log2(static_cast<double>(ess_sup));
    bc.log_k = std::log2(static_cast<double>(f.branch_count()));
    bc.h_of_w = entropy_bits(masses);
    if (f.unbounded_branch_count) {
        bc.ess_sup_card = kInf;
        bc.ess_sup_log_card = kInf;
        bc.log_k = kInf;
    }
    return bc;
}

LossReport loss_via_differential_entropy(const Pbf& f, const ScalarDistribution& d) {
    if (d.kind != DistKind::AbsolutelyContinuous)
        throw InvalidInputError("loss_via_differential_entropy: input must be AC");
    check_covers(f, d);

    LossReport rep;
    rep.method = LossMethod::DiffEntropyFormula;
    rep.bound_chain = bound_chain(f, d);

    const DifferentialEntropyResult hx = differential_entropy(d);

    const auto hy_integrand = [&](double y) {
        const double fy = output_pdf(f, d, y);
        return (fy > 1e-300) ? -fy * std::log2(fy) : 0.0;
    };
    const IntegralResult hy = integrate_over_image(f, d, hy_integrand);

    // E[log2 |g'(X)|], branch by branch; the branch endpoints (where g' may
    // vanish) are panel boundaries, which QAGS absorbs.
    const Interval xt = d.truncated_support();
    double e_log_jac = 0.0, e_log_jac_err = 0.0;
    for (const Branch& b : f.branches) {
        const double a = std::max(b.domain.lo, xt.lo);
        const double c = std::min(b.domain.hi, xt.hi);
        if (!(c > a)) continue;
        const auto integrand = [&](double x) {
            const double fx = d.pdf(x);
            if (fx <= 1e-300) return 0.0;
            const double g1 = std::abs(b.deriv(x));
            if (g1 <= 1e-300) return 0.0;
            return fx * std::log2(g1);
        };
        std::vector<double> bps;
        for (double bp : d.pdf_breakpoints)
            if (bp > a && bp < c) bps.push_back(bp);
        const IntegralResult r = integrate_with_breakpoints(integrand, a, c, bps, 1e-7, 1e-7);
        e_log_jac += r.value;
        e_log_jac_err += r.abserr;
    }

    rep.loss_bits = hx.value_bits - hy.value + e_log_jac;
    rep.numeric_error = hx.abserr + hy.abserr + e_log_jac_err;
    if (!std::isfinite(rep.loss_bits)) {
        rep.flags.infinite = true;
        rep.flags.reason = "divergent differential-entropy decomposition";
    }
    return rep;
}

LossReport loss_via_partition(const Pbf& f, const ScalarDistribution& d) {
    if (d.kind != DistKind::AbsolutelyContinuous)
        throw InvalidInputError("loss_via_partition: input must be AC");
    check_covers(f, d);

    LossReport rep;
    rep.method = LossMethod::PartitionIntegral;
    rep.bound_chain = bound_chain(f, d);

    const auto integrand = [&](double y) {
        const std::vector<double> w = posterior_weights(f, d, y);
        double s = 0.0;
        for (double v : w) s += v;
        if (s <= 1e-300) return 0.0;
        return s * weight_entropy(w, s);
    };
    const IntegralResult r = integrate_over_image(f, d, integrand);
    rep.loss_bits = r.value;
    rep.numeric_error = r.abserr;
    if (f.truncated_family) {
        rep.flags.reason = "truncated branch family: tail mass " + std::to_string(f.tail_mass);
    }
    return rep;
}

LossReport loss_monte_carlo(const Pbf& f, const ScalarDistribution& d, std::size_t samples,
                            std::uint64_t seed) {
    if (samples < 10000)
        throw InvalidInputError("loss_monte_carlo: need at least 1e4 samples");
    check_covers(f, d);

    constexpr std::size_t kBatch = 1 << 16;
    double sum = 0.0, sum_sq = 0.0;
    std::size_t done = 0;
    for (std::size_t batch = 0; done < samples; ++batch) {
        Rng rng(derive_seed(seed, batch));
        const std::size_t m = std::min(kBatch, samples - done);
        for (std::size_t i = 0; i < m; ++i) {
            const double x = d.sample(rng);
            const double y = evaluate(f, x);
            const std::vector<double> w = posterior_weights(f, d, y);
            double s = 0.0;
            for (double v : w) s += v;
            const double h = (s > 0.0) ? weight_entropy(w, s) : 0.0;
            sum += h;
            sum_sq += h * h;
        }
        done += m;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);

    LossReport rep;
    rep.method = LossMethod::MonteCarlo;
    rep.loss_bits = mean;
    rep.numeric_error = std::sqrt(var / n);
    rep.bound_chain = bound_chain(f, d);
    return rep;
}

EqualityCheck equality_condition_check(const Pbf& f, const ScalarDistribution& d,
                                       std::size_t probes, std::uint64_t seed) {
    if (probes < 100) throw InvalidInputError("equality_condition_check: need >= 100 probes");
    Rng rng(seed);
    EqualityCheck ec;
    for (std::size_t i = 0; i < probes; ++i) {
        const double x = d.sample(rng);
        const int bi = branch_of(f, x);
        if (bi < 0) continue;
        const double fx = d.pdf(x);
        if (fx <= 1e-300) continue;
        const double g1 = std::abs(f.branches[bi].deriv(x));
        if (g1 <= 1e-300) continue;
        const double y = f.branches[bi].fwd(x);
        const std::vector<double> w = posterior_weights(f, d, y);
        double s = 0.0;
        for (double v : w) s += v;
        const double lhs = s * g1 / fx;
        const double card = preimage_cardinality(f, y);
        ec.max_deviation = std::max(ec.max_deviation, std::abs(lhs - card));
    }
    ec.holds = ec.max_deviation <= 1e-6;
    return ec;
}

CascadeLoss cascade_loss(const Pbf& f, const Pbf& h, const ScalarDistribution& d) {
    const LossReport first = loss_via_partition(f, d);
    const ScalarDistribution mid = pushforward(d, f);
    const LossReport second = loss_via_partition(h, mid);
    const LossReport direct = loss_via_partition(compose(f, h), d);
    CascadeLoss c;
    c.sum = first.loss_bits + second.loss_bits;
    c.direct = direct.loss_bits;
    c.numeric_error = first.numeric_error + second.numeric_error + direct.numeric_error;
    return c;
}

InfiniteLossProbe infinite_loss_probe(const MapDescriptor& m, const ScalarDistribution& d) {
    InfiniteLossProbe probe;
    const bool has_ac = d.kind != DistKind::Discrete && d.ac_weight > 0.0;
    for (std::size_t i = 0; i < m.pieces.size(); ++i) {
        const MapPiece& p = m.pieces[i];
        if (p.cls == PieceClass::Unknown) {
            probe.result = LossClassification::Undeterminable;
            probe.reason = "piece " + std::to_string(i) + " has unknown class";
            return probe;
        }
    }
    if (!has_ac) return probe; // discrete input: finite entropy, nothing to flag
    for (std::size_t i = 0; i < m.pieces.size(); ++i) {
        const MapPiece& p = m.pieces[i];
        double ac_mass = d.prob(p.domain.lo, p.domain.hi);
        for (const Atom& a : d.atoms)
            if (p.domain.contains(a.location)) ac_mass -= a.mass;
        if (ac_mass <= 0.0) continue;
        if (p.cls == PieceClass::Constant) {
            probe.result = LossClassification::Infinite;
            probe.reason = "constant piece " + std::to_string(i) +
                           " carries positive AC mass: output atom with uncountable fiber";
            return probe;
        }
        if (p.cls == PieceClass::Submersion && p.out_dim < p.in_dim) {
            probe.result = LossClassification::Infinite;
            probe.reason = "dimension-reducing piece " + std::to_string(i) +
                           " has uncountable fibers of positive mass";
            return probe;
        }
    }
    return probe;
}

} // namespace infoloss
