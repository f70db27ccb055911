#include "infoloss/reldim.hpp"
#include "infoloss/entropy.hpp"
#include "infoloss/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace infoloss {

RelLossResult make_rel_loss(double l, RelProvenance prov) {
    if (l < 0.0 || l > 1.0) throw DomainError("relative loss outside [0, 1]");
    RelLossResult r;
    r.rel_loss = l;
    r.rel_transfer = 1.0 - l;
    r.provenance = prov;
    return r;
}

RelLossResult rel_loss_from_dimensions(double d_x, double d_x_given_y) {
    if (!(d_x > 0.0)) throw DomainError("rel_loss_from_dimensions: d(X) must be positive");
    if (d_x_given_y < 0.0 || d_x_given_y > d_x)
        throw DomainError("rel_loss_from_dimensions: need 0 <= d(X|Y) <= d(X)");
    RelLossResult r = make_rel_loss(d_x_given_y / d_x, RelProvenance::DimensionRatio);
    r.d_x = d_x;
    r.d_x_given_y = d_x_given_y;
    return r;
}

RelLossResult rel_transfer_lipschitz(double d_x, double d_y) {
    if (!(d_x > 0.0)) throw DomainError("rel_transfer_lipschitz: d(X) must be positive");
    if (d_y < 0.0) throw DomainError("rel_transfer_lipschitz: d(Y) must be nonnegative");
    if (d_y > d_x)
        throw DomainError("rel_transfer_lipschitz: d(Y) > d(X) is impossible for a "
                          "Lipschitz map (dimension inflation)");
    RelLossResult r = make_rel_loss(1.0 - d_y / d_x, RelProvenance::DimensionRatio);
    r.d_x = d_x;
    return r;
}

void DimensionPieceSpec::validate() const {
    if (input_dim < 1) throw InvalidInputError("DimensionPieceSpec: input_dim must be >= 1");
    double total = 0.0;
    for (const DimensionPiece& p : pieces) {
        if (p.mass < 0.0) throw InvalidInputError("DimensionPieceSpec: negative mass");
        if (p.output_dim < 0 || p.output_dim > input_dim)
            throw InvalidInputError("DimensionPieceSpec: need 0 <= M_i <= N");
        total += p.mass;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw InvalidInputError("DimensionPieceSpec: masses must sum to 1");
}

RelLossResult rel_loss_structural(const DimensionPieceSpec& spec) {
    spec.validate();
    double l = 0.0;
    for (const DimensionPiece& p : spec.pieces) {
        if (p.cls == DimPieceClass::Injective)
            throw InvalidInputError("rel_loss_structural: injective piece is unsupported here");
        const int m = (p.cls == DimPieceClass::Constant) ? 0 : p.output_dim;
        l += p.mass * static_cast<double>(spec.input_dim - m) / spec.input_dim;
    }
    RelLossResult r = make_rel_loss(l, RelProvenance::Structural);
    r.d_x = spec.input_dim;
    r.d_x_given_y = l * spec.input_dim;
    return r;
}

RelLossResult rel_loss_mixed(double p_ac_constant_region, double p_ac_total) {
    if (!(p_ac_total > 0.0))
        throw DomainError("rel_loss_mixed: AC mass is zero, the input has dimension 0");
    if (p_ac_constant_region < 0.0 || p_ac_constant_region > p_ac_total)
        throw DomainError("rel_loss_mixed: need 0 <= P_ac(A) <= P_ac(domain)");
    RelLossResult r =
        make_rel_loss(p_ac_constant_region / p_ac_total, RelProvenance::Mixed);
    r.d_x = p_ac_total;
    r.d_x_given_y = p_ac_constant_region;
    return r;
}

RelCascade cascade_relative(double t1, double t2) {
    if (t1 < 0.0 || t1 > 1.0 || t2 < 0.0 || t2 > 1.0)
        throw DomainError("cascade_relative: transfers must lie in [0, 1]");
    RelCascade c;
    c.rel_transfer = t1 * t2;
    c.rel_loss = 1.0 - c.rel_transfer;
    const double l1 = 1.0 - t1, l2 = 1.0 - t2;
    c.rel_loss_incl_excl = l1 + l2 - l1 * l2;
    return c;
}

RelTransferBound ub_rel_transfer(std::span<const double> per_output_transfers) {
    RelTransferBound b;
    for (double t : per_output_transfers) {
        if (t < 0.0 || t > 1.0) throw DomainError("ub_rel_transfer: transfer outside [0, 1]");
        b.raw_sum += t;
    }
    b.bound = std::min(1.0, b.raw_sum);
    return b;
}

double ub_rel_loss(std::span<const double> per_coordinate_losses) {
    if (per_coordinate_losses.empty())
        throw InvalidInputError("ub_rel_loss: need at least one coordinate");
    double s = 0.0;
    for (double l : per_coordinate_losses) {
        if (l < 0.0 || l > 1.0) throw DomainError("ub_rel_loss: loss outside [0, 1]");
        s += l;
    }
    return s / static_cast<double>(per_coordinate_losses.size());
}

RelFanoBound fano_relative_bound(double p_e, double minkowski_dim, double info_dim) {
    if (p_e < 0.0 || p_e > 1.0) throw DomainError("fano_relative_bound: P_e outside [0, 1]");
    if (!(info_dim > 0.0)) throw DomainError("fano_relative_bound: d(X) must be positive");
    if (minkowski_dim < info_dim)
        throw DomainError("fano_relative_bound: box dimension below information dimension "
                          "is inconsistent");
    RelFanoBound b;
    b.raw = p_e * minkowski_dim / info_dim;
    b.bound = std::min(1.0, b.raw);
    return b;
}

double compression_converse(double d_x, double epsilon) {
    if (!(d_x > 0.0 && d_x <= 1.0))
        throw DomainError("compression_converse: d(X) must lie in (0, 1]");
    if (epsilon < 0.0 || epsilon > 1.0)
        throw DomainError("compression_converse: epsilon outside [0, 1]");
    return std::max(0.0, d_x - epsilon);
}

RelLossEmpirical rel_loss_empirical(const ScalarDistribution& d,
                                    const std::function<double(double)>& map, int n_lo, int n_hi,
                                    std::size_t samples, std::uint64_t seed) {
    if (!(n_hi > n_lo && n_lo >= 1))
        throw InvalidInputError("rel_loss_empirical: need n_hi > n_lo >= 1");
    if (samples < 100000)
        throw InvalidInputError("rel_loss_empirical: need >= 1e5 samples");

    // One pass at the finest resolution; coarser levels by index shifts.
    const double scale = std::ldexp(1.0, n_hi);
    std::map<std::pair<std::int64_t, std::int64_t>, double> joint;
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = d.sample(rng);
        const double y = map(x);
        joint[{static_cast<std::int64_t>(std::floor(x * scale)),
               static_cast<std::int64_t>(std::floor(y * scale))}] += 1.0;
    }
    std::size_t singleton = 0;
    for (auto& [k, c] : joint) {
        if (c == 1.0) ++singleton;
        c /= static_cast<double>(samples);
    }

    RelLossEmpirical out;
    out.undersampled = !joint.empty() && singleton * 100 >= joint.size();

    const auto entropy_of = [](const auto& hist) {
        double h = 0.0;
        for (const auto& [k, p] : hist)
            if (p > 0.0) h -= p * std::log2(p);
        return h;
    };

    for (int n = n_lo; n <= n_hi; ++n) {
        const int shift = n_hi - n;
        std::map<std::pair<std::int64_t, std::int64_t>, double> jn;
        std::map<std::int64_t, double> xn, yn;
        for (const auto& [k, p] : joint) {
            const std::int64_t ix = k.first >> shift;
            const std::int64_t iy = k.second >> shift;
            jn[{ix, iy}] += p;
            xn[ix] += p;
            yn[iy] += p;
        }
        const double hx = entropy_of(xn);
        const double h_cond = entropy_of(jn) - entropy_of(yn);
        out.ns.push_back(n);
        out.ratios.push_back(hx > 0.0 ? std::clamp(h_cond / hx, 0.0, 1.0) : 0.0);
    }

    // The finite-n ratio approaches its limit like c/n; regress on 1/n and
    // keep the intercept.
    const std::size_t m = out.ns.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double xi = 1.0 / out.ns[i];
        sx += xi;
        sy += out.ratios[i];
        sxx += xi * xi;
        sxy += xi * out.ratios[i];
    }
    const double denom = m * sxx - sx * sx;
    const double slope = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / m;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double fitted = intercept + slope / out.ns[i];
        rss += (out.ratios[i] - fitted) * (out.ratios[i] - fitted);
    }
    out.estimate = std::clamp(intercept, 0.0, 1.0);
    out.stderr_ = (m > 2) ? std::sqrt(rss / (m - 2) * (sxx / denom)) : 0.0;
    return out;
}

AbsLossClass positive_rel_implies_infinite_abs(double rel_loss, bool h_x_infinite) {
    if (h_x_infinite && rel_loss > 0.0) return AbsLossClass::Infinite;
    return AbsLossClass::Inconclusive;
}

} // namespace infoloss
