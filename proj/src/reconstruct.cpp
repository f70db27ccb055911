#include "infoloss/reconstruct.hpp"
#include "infoloss/entropy.hpp"
#include "infoloss/errors.hpp"
#include "infoloss/loss.hpp"
#include "infoloss/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace infoloss {

namespace {

inline double neg_plogp(double p) {
    return (p > 0.0) ? -p * std::log2(p) : 0.0;
}

int argmax_weight(const std::vector<double>& w) {
    int best = -1;
    double bw = -1.0;
    for (int i = 0; i < static_cast<int>(w.size()); ++i)
        if (w[i] > bw) { // strict: ties keep the lower index
            bw = w[i];
            best = i;
        }
    return (bw > 0.0) ? best : -1;
}

/// Shared y-space integration over the image (same cut structure as the loss
/// integrals).
IntegralResult integrate_image(const Pbf& f, const ScalarDistribution& d, const Integrand& g) {
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
    return integrate_with_breakpoints(g, ylo, yhi, pts, 1e-8, 1e-8);
}

} // namespace

double map_reconstruct(const Pbf& f, const ScalarDistribution& d, double y) {
    const std::vector<double> w = posterior_weights(f, d, y);
    const int k = argmax_weight(w);
    if (k < 0) throw DomainError("map_reconstruct: y has empty preimage or f_Y(y) = 0");
    return f.branches[k].invert(y);
}

double map_error_probability(const Pbf& f, const ScalarDistribution& d) {
    // P(correct) integrates the winning weight; mass in branches that were
    // truncated away (lazy families) counts as error automatically.
    const auto integrand = [&](double y) {
        const std::vector<double> w = posterior_weights(f, d, y);
        double m = 0.0;
        for (double v : w) m = std::max(m, v);
        return m;
    };
    const IntegralResult r = integrate_image(f, d, integrand);
    return std::clamp(1.0 - r.value, 0.0, 1.0);
}

double fano_type_bound(double p_e, double p_b, double e_card) {
    if (p_e < 0.0 || p_e > 1.0) throw DomainError("fano_type_bound: P_e outside [0, 1]");
    if (p_b < 0.0 || p_b > 1.0) throw DomainError("fano_type_bound: P_b outside [0, 1]");
    if (e_card < 1.0) throw DomainError("fano_type_bound: expected cardinality below 1");
    if (p_e == 0.0) return 0.0;
    const double excess = std::max(0.0, e_card - 1.0);
    return std::min(1.0 - p_b, binary_entropy(p_e)) + neg_plogp(p_e) +
           p_e * std::log2(excess);
}

double classic_fano_bound(double p_e, double cardinality_cap) {
    if (p_e < 0.0 || p_e > 1.0) throw DomainError("classic_fano_bound: P_e outside [0, 1]");
    if (cardinality_cap < 2.0) throw DomainError("classic_fano_bound: cardinality cap below 2");
    return binary_entropy(p_e) + p_e * std::log2(cardinality_cap - 1.0);
}

double feder_merhav_phi(double x) {
    if (x < 0.0 || x >= 1.0) throw DomainError("feder_merhav_phi: argument outside [0, 1)");
    if (x == 0.0) return 0.0;
    // segment index i with (i-1)/i <= x <= i/(i+1)
    auto i = static_cast<long>(std::ceil(x / (1.0 - x) - 1e-12));
    i = std::max<long>(i, 1);
    while (x < static_cast<double>(i - 1) / i) --i;
    const double di = static_cast<double>(i);
    return (x - (di - 1.0) / di) * (di + 1.0) * di * std::log2(1.0 + 1.0 / di) + std::log2(di);
}

namespace {

double classic_or_zero(double p_e, double cap) {
    // A cardinality cap below 2 means the map is essentially injective; the
    // bound degenerates to H2(Pe) (the log term has no survivors to count).
    if (cap < 2.0) return binary_entropy(p_e);
    return classic_fano_bound(p_e, cap);
}

} // namespace

ReconResult map_reconstruction_analysis(const Pbf& f, const ScalarDistribution& d) {
    ReconResult r;
    r.kind = ReconKind::MAP;
    const BoundChain bc = bound_chain(f, d);
    const BijectivePart bij = bijective_part(f, d);
    r.error_prob = map_error_probability(f, d);
    r.fano_type_bound = fano_type_bound(r.error_prob, bij.mass, bc.e_card);
    r.classic_fano_bound = classic_or_zero(r.error_prob, bc.ess_sup_card);
    r.feder_merhav_lower = feder_merhav_phi(std::min(r.error_prob, 1.0 - 1e-15));
    r.suboptimal_bound = std::numeric_limits<double>::quiet_NaN();
    r.extra.binent_ess_sup =
        binary_entropy(r.error_prob) + r.error_prob * std::log2(bc.ess_sup_card);
    r.extra.binent_card = binary_entropy(r.error_prob) +
                          r.error_prob * std::log2(static_cast<double>(f.branch_count()));
    r.extra.fano_type_e_card = std::min(1.0 - bij.mass, binary_entropy(r.error_prob)) +
                               neg_plogp(r.error_prob) + r.error_prob * std::log2(bc.e_card);

    const Pbf fc = f;
    const ScalarDistribution dc = d;
    r.reconstruct = [fc, dc](double y) { return map_reconstruct(fc, dc, y); };
    r.per_y_error = [fc, dc](double y) {
        const std::vector<double> w = posterior_weights(fc, dc, y);
        double s = 0.0, m = 0.0;
        for (double v : w) {
            s += v;
            m = std::max(m, v);
        }
        return (s > 0.0) ? 1.0 - m / s : 0.0;
    };
    return r;
}

ReconResult suboptimal_reconstructor(const Pbf& f, const ScalarDistribution& d) {
    const BijectivePart bij = bijective_part(f, d);
    const double p_b = bij.mass;

    // Per-branch share of the bijective mass (each bijective interval lies
    // inside exactly one branch domain).
    std::vector<double> bij_in_branch(f.branch_count(), 0.0);
    for (const Interval& iv : bij.x_intervals) {
        const int owner = branch_of(f, 0.5 * (iv.lo + iv.hi));
        if (owner >= 0) bij_in_branch[owner] += d.prob(iv.lo, iv.hi);
    }

    int k = 0;
    double best = -1.0;
    for (int i = 0; i < f.branch_count(); ++i) {
        const double union_mass = branch_mass(f, d, i) + p_b - bij_in_branch[i];
        if (union_mass > best + 1e-15) {
            best = union_mass;
            k = i;
        }
    }
    const double p_e_hat = std::clamp(1.0 - best, 0.0, 1.0);

    const BoundChain bc = bound_chain(f, d);
    const double kbar = bc.ess_sup_card;

    ReconResult r;
    r.kind = ReconKind::Suboptimal;
    r.error_prob = p_e_hat;
    r.suboptimal_bound =
        (p_e_hat > 0.0) ? 1.0 - p_b + p_e_hat * std::log2(std::max(kbar - 1.0, 0.0))
                        : 1.0 - p_b;
    r.feder_merhav_lower = std::numeric_limits<double>::quiet_NaN(); // MAP-only bound
    // Bounds valid without the r(y)-in-preimage property: cardinalities enter
    // unreduced.
    r.classic_fano_bound =
        binary_entropy(p_e_hat) + ((p_e_hat > 0.0) ? p_e_hat * std::log2(kbar) : 0.0);
    r.fano_type_bound = std::min(1.0 - p_b, binary_entropy(p_e_hat)) + neg_plogp(p_e_hat) +
                        ((p_e_hat > 0.0) ? p_e_hat * std::log2(bc.e_card) : 0.0);
    r.extra.binent_ess_sup = r.classic_fano_bound;
    r.extra.binent_card =
        binary_entropy(p_e_hat) +
        ((p_e_hat > 0.0) ? p_e_hat * std::log2(static_cast<double>(f.branch_count())) : 0.0);
    r.extra.fano_type_e_card = r.fano_type_bound;

    const Pbf fc = f;
    const ScalarDistribution dc = d;
    const int k_branch = k;
    r.reconstruct = [fc, dc, k_branch](double y) {
        const std::vector<PreimagePoint> pts = preimage(fc, y);
        if (pts.size() == 1) return pts.front().x; // bijective image
        for (const PreimagePoint& p : pts)
            if (p.branch == k_branch) return p.x;
        // y outside Y_k: answer anywhere inside X_k (always an error)
        const Interval dom = fc.branches[k_branch].domain;
        if (dom.bounded()) return 0.5 * (dom.lo + dom.hi);
        return std::isfinite(dom.lo) ? dom.lo + 1.0 : dom.hi - 1.0;
    };
    r.per_y_error = [fc, dc, k_branch](double y) {
        const std::vector<double> w = posterior_weights(fc, dc, y);
        double s = 0.0;
        for (double v : w) s += v;
        if (!(s > 0.0)) return 0.0;
        if (preimage_cardinality(fc, y) == 1) return 0.0;
        return 1.0 - w[k_branch] / s;
    };
    return r;
}

EmpiricalError empirical_error_probability(const Pbf& f, const ScalarDistribution& d,
                                           const std::function<double(double)>& reconstructor,
                                           std::size_t samples, std::uint64_t seed) {
    if (samples < 10000)
        throw InvalidInputError("empirical_error_probability: need at least 1e4 samples");
    constexpr std::size_t kBatch = 1 << 16;
    std::size_t done = 0, errors = 0;
    for (std::size_t batch = 0; done < samples; ++batch) {
        Rng rng(derive_seed(seed, batch));
        const std::size_t m = std::min(kBatch, samples - done);
        for (std::size_t i = 0; i < m; ++i) {
            const double x = d.sample(rng);
            const double y = evaluate(f, x);
            const double xr = reconstructor(y);
            if (std::abs(xr - x) > 1e-8 * (1.0 + std::abs(x))) ++errors;
        }
        done += m;
    }
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(errors) / n;
    return {p, std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n)};
}

} // namespace infoloss
