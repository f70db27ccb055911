#include "infoloss/pbf.hpp"
#include "infoloss/errors.hpp"
#include "infoloss/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace infoloss {

namespace {

constexpr double kInvertTol = 1e-12;

/// Expands a bracket away from `start` in direction `dir` until `h` changes
/// sign, staying inside [lo, hi].
double expand_bracket(const std::function<double(double)>& h, double start, double dir,
                      double lo, double hi) {
    double step = std::max(1.0, std::abs(start)) * 0.5;
    double x = start;
    const double h0 = h(start);
    for (int i = 0; i < 200; ++i) {
        double cand = x + dir * step;
        cand = std::clamp(cand, lo, hi);
        if (std::isfinite(cand) && h(cand) * h0 <= 0.0) return cand;
        if (cand == lo || cand == hi) break;
        x = cand;
        step *= 2.0;
    }
    throw NumericError("branch inversion: failed to bracket root");
}

} // namespace

double Branch::invert(double y) const {
    const double yc = std::clamp(y, image.lo, image.hi);
    if (inverse_fn) {
        double x = (*inverse_fn)(yc);
        return std::clamp(x, domain.lo, domain.hi);
    }
    const auto h = [this, yc](double x) { return fwd(x) - yc; };
    // Establish a finite bracket inside the domain.
    double a = domain.lo, b = domain.hi;
    if (!std::isfinite(a) || !std::isfinite(b)) {
        double seed = 0.0;
        if (std::isfinite(a)) seed = a + 1.0;
        else if (std::isfinite(b)) seed = b - 1.0;
        const double hs = h(seed);
        if (hs == 0.0) return seed;
        // Move in the direction that brings fwd toward yc.
        const double dir = (hs < 0.0) == increasing ? +1.0 : -1.0;
        const double other = expand_bracket(h, seed, dir, domain.lo, domain.hi);
        a = std::min(seed, other);
        b = std::max(seed, other);
    }
    return brent_root(h, a, b, kInvertTol);
}

Branch make_branch(Interval domain, std::function<double(double)> fwd,
                   std::function<double(double)> deriv,
                   std::optional<std::function<double(double)>> inverse,
                   std::optional<Interval> image) {
    if (!(domain.hi > domain.lo))
        throw InvalidInputError("make_branch: domain must have nonempty interior");
    Branch b;
    b.domain = domain;
    b.fwd = std::move(fwd);
    b.deriv = std::move(deriv);
    b.inverse_fn = std::move(inverse);

    // Orientation from the derivative sign at an interior probe.
    const double probe = domain.bounded()
                             ? 0.5 * (domain.lo + domain.hi)
                             : (std::isfinite(domain.lo)   ? domain.lo + 1.0
                                : std::isfinite(domain.hi) ? domain.hi - 1.0
                                                           : 0.0);
    const double dprobe = b.deriv(probe);
    if (dprobe == 0.0 || !std::isfinite(dprobe))
        throw InvalidInputError("make_branch: derivative vanishes at interior probe");
    b.increasing = dprobe > 0.0;

    if (image) {
        b.image = *image;
    } else {
        if (!domain.bounded())
            throw InvalidInputError("make_branch: unbounded domain requires explicit image");
        const double ya = b.fwd(domain.lo), yb = b.fwd(domain.hi);
        b.image = {std::min(ya, yb), std::max(ya, yb)};
    }
    if (!(b.image.hi >= b.image.lo)) throw InvalidInputError("make_branch: empty image");
    return b;
}

Pbf make_pbf(std::vector<Branch> branches) {
    if (branches.empty()) throw InvalidInputError("make_pbf: no branches");
    // Branch order is the caller's labeling of W; only verify that the
    // domain interiors are pairwise disjoint.
    std::vector<Interval> doms;
    doms.reserve(branches.size());
    for (const Branch& b : branches) doms.push_back(b.domain);
    std::sort(doms.begin(), doms.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < doms.size(); ++i)
        if (doms[i].lo < doms[i - 1].hi - 1e-12)
            throw InvalidInputError("make_pbf: branch domains overlap");
    Pbf f;
    f.branches = std::move(branches);
    return f;
}

Interval Pbf::domain_hull() const {
    return {branches.front().domain.lo, branches.back().domain.hi};
}

Interval Pbf::image_hull() const {
    double lo = kInf, hi = -kInf;
    for (const Branch& b : branches) {
        lo = std::min(lo, b.image.lo);
        hi = std::max(hi, b.image.hi);
    }
    return {lo, hi};
}

int branch_of(const Pbf& f, double x) {
    for (int i = 0; i < f.branch_count(); ++i)
        if (f.branches[i].domain.contains(x)) return i;
    return -1;
}

double evaluate(const Pbf& f, double x) {
    const int i = branch_of(f, x);
    if (i < 0) throw DomainError("evaluate: x = " + std::to_string(x) + " outside all branches");
    return f.branches[i].fwd(x);
}

std::vector<PreimagePoint> preimage(const Pbf& f, double y) {
    std::vector<PreimagePoint> pts;
    for (int i = 0; i < f.branch_count(); ++i) {
        const Branch& b = f.branches[i];
        if (!b.image.contains(y)) continue;
        double x;
        try {
            x = b.invert(y);
        } catch (const NumericError& e) {
            throw NumericError("preimage: branch " + std::to_string(i) + ": " + e.what());
        }
        const double yy = b.fwd(x);
        if (std::abs(yy - y) > 1e-9 * (1.0 + std::abs(y)))
            throw NumericError("preimage: inversion residual too large on branch " +
                               std::to_string(i));
        pts.push_back({i, x});
    }
    return pts;
}

int preimage_cardinality(const Pbf& f, double y) {
    int n = 0;
    for (const Branch& b : f.branches)
        if (b.image.contains(y)) ++n;
    return n;
}

std::vector<double> posterior_weights(const Pbf& f, const ScalarDistribution& d, double y) {
    std::vector<double> w(f.branch_count(), 0.0);
    for (int i = 0; i < f.branch_count(); ++i) {
        const Branch& b = f.branches[i];
        if (!b.image.contains(y)) continue;
        const double x = b.invert(y);
        const double fx = d.pdf(x);
        if (fx <= 0.0) continue;
        const double g1 = std::abs(b.deriv(x));
        if (g1 < 1e-12)
            throw NumericError("near-singular derivative on branch " + std::to_string(i) +
                               " at x = " + std::to_string(x));
        w[i] = fx / g1;
    }
    return w;
}

double output_pdf(const Pbf& f, const ScalarDistribution& d, double y) {
    const std::vector<double> w = posterior_weights(f, d, y);
    double s = 0.0;
    for (double v : w) s += v;
    return s;
}

std::vector<double> branch_posterior(const Pbf& f, const ScalarDistribution& d, double y) {
    std::vector<double> w = posterior_weights(f, d, y);
    double s = 0.0;
    for (double v : w) s += v;
    if (!(s > 0.0)) throw DomainError("branch_posterior: conditioning on f_Y(y) = 0");
    for (double& v : w) v /= s;
    return w;
}

Pbf compose(const Pbf& f, const Pbf& h) {
    // Image of f must sit inside h's domain (up to roundoff).
    const Interval fi = f.image_hull();
    const Interval hd = h.domain_hull();
    const auto escapes_below = [&] {
        if (!std::isfinite(hd.lo)) return false;
        if (!std::isfinite(fi.lo)) return true;
        return fi.lo < hd.lo - 1e-9 * (1.0 + std::abs(hd.lo));
    };
    const auto escapes_above = [&] {
        if (!std::isfinite(hd.hi)) return false;
        if (!std::isfinite(fi.hi)) return true;
        return fi.hi > hd.hi + 1e-9 * (1.0 + std::abs(hd.hi));
    };
    if (escapes_below() || escapes_above())
        throw DomainError("compose: image of f escapes the domain of h");

    std::vector<Branch> out;
    for (const Branch& gi : f.branches) {
        for (const Branch& hj : h.branches) {
            const double ylo = std::max(gi.image.lo, hj.domain.lo);
            const double yhi = std::min(gi.image.hi, hj.domain.hi);
            if (!(yhi > ylo)) continue; // empty or degenerate overlap

            // x-interval of gi mapping into [ylo, yhi]
            double xa, xb;
            const bool lo_is_end = (ylo == gi.image.lo);
            const bool hi_is_end = (yhi == gi.image.hi);
            if (gi.increasing) {
                xa = lo_is_end ? gi.domain.lo : gi.invert(ylo);
                xb = hi_is_end ? gi.domain.hi : gi.invert(yhi);
            } else {
                xa = hi_is_end ? gi.domain.lo : gi.invert(yhi);
                xb = lo_is_end ? gi.domain.hi : gi.invert(ylo);
            }
            if (!(xb > xa)) continue;

            const double za = hj.fwd(ylo);
            const double zb = hj.fwd(yhi);
            Interval image{std::min(za, zb), std::max(za, zb)};

            Branch nb;
            nb.domain = {xa, xb};
            nb.fwd = [g = gi.fwd, hf = hj.fwd](double x) { return hf(g(x)); };
            nb.deriv = [g = gi.fwd, gd = gi.deriv, hd2 = hj.deriv](double x) {
                return hd2(g(x)) * gd(x);
            };
            nb.increasing = (gi.increasing == hj.increasing);
            nb.image = image;
            // Inverse by composition when both pieces can invert.
            nb.inverse_fn = [gi, hj](double z) { return gi.invert(hj.invert(z)); };
            out.push_back(std::move(nb));
        }
    }
    if (out.empty()) throw DomainError("compose: no overlapping pieces");
    Pbf c = make_pbf(std::move(out));
    c.truncated_family = f.truncated_family || h.truncated_family;
    c.unbounded_branch_count = f.unbounded_branch_count || h.unbounded_branch_count;
    c.tail_mass = std::max(f.tail_mass, h.tail_mass);
    return c;
}

std::vector<ImageCell> decompose_image(const Pbf& f) {
    std::set<double> cuts;
    for (const Branch& b : f.branches) {
        cuts.insert(b.image.lo);
        cuts.insert(b.image.hi);
    }
    std::vector<double> edges(cuts.begin(), cuts.end());
    std::vector<ImageCell> cells;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        ImageCell cell;
        cell.y = {edges[i], edges[i + 1]};
        const double mid = std::isinf(cell.y.lo)   ? cell.y.hi - 1.0
                           : std::isinf(cell.y.hi) ? cell.y.lo + 1.0
                                                   : 0.5 * (cell.y.lo + cell.y.hi);
        for (int j = 0; j < f.branch_count(); ++j)
            if (f.branches[j].image.contains(mid)) cell.covering.push_back(j);
        if (!cell.covering.empty()) cells.push_back(std::move(cell));
    }
    return cells;
}

double branch_mass(const Pbf& f, const ScalarDistribution& d, int i) {
    const Interval& dom = f.branches[i].domain;
    return d.prob(dom.lo, dom.hi);
}

namespace {

/// P(X in X_i and g_i(X) in [ylo, yhi]) via exact cdf differences.
double branch_y_mass(const Branch& b, const ScalarDistribution& d, double ylo, double yhi) {
    const double a = std::max(ylo, b.image.lo);
    const double c = std::min(yhi, b.image.hi);
    if (!(c > a)) return 0.0;
    double xa, xb;
    if (b.increasing) {
        xa = (a <= b.image.lo) ? b.domain.lo : b.invert(a);
        xb = (c >= b.image.hi) ? b.domain.hi : b.invert(c);
    } else {
        xa = (c >= b.image.hi) ? b.domain.lo : b.invert(c);
        xb = (a <= b.image.lo) ? b.domain.hi : b.invert(a);
    }
    return d.prob(xa, xb);
}

} // namespace

double image_mass(const Pbf& f, const ScalarDistribution& d, const Interval& y_range) {
    double m = 0.0;
    for (const Branch& b : f.branches) m += branch_y_mass(b, d, y_range.lo, y_range.hi);
    return m;
}

BijectivePart bijective_part(const Pbf& f, const ScalarDistribution& d) {
    BijectivePart out;
    for (const ImageCell& cell : decompose_image(f)) {
        if (cell.covering.size() != 1) continue;
        const Branch& b = f.branches[cell.covering.front()];
        double xa, xb;
        if (b.increasing) {
            xa = (cell.y.lo <= b.image.lo) ? b.domain.lo : b.invert(cell.y.lo);
            xb = (cell.y.hi >= b.image.hi) ? b.domain.hi : b.invert(cell.y.hi);
        } else {
            xa = (cell.y.hi >= b.image.hi) ? b.domain.lo : b.invert(cell.y.hi);
            xb = (cell.y.lo <= b.image.lo) ? b.domain.hi : b.invert(cell.y.lo);
        }
        if (xb > xa) {
            out.x_intervals.push_back({xa, xb});
            out.mass += d.prob(xa, xb);
        }
    }
    std::sort(out.x_intervals.begin(), out.x_intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    return out;
}

ScalarDistribution pushforward(const ScalarDistribution& d, const Pbf& f) {
    ScalarDistribution y;
    y.kind = DistKind::AbsolutelyContinuous;
    y.name = "pushforward";
    const Interval hull = f.image_hull();
    y.support = hull;

    const Pbf fc = f;
    const ScalarDistribution dc = d;
    y.pdf = [fc, dc](double yy) {
        if (yy < fc.image_hull().lo || yy > fc.image_hull().hi) return 0.0;
        return output_pdf(fc, dc, yy);
    };
    y.cdf = [fc, dc](double t) {
        double v = 0.0;
        for (const Branch& b : fc.branches) v += branch_y_mass(b, dc, -kInf, t);
        return std::min(1.0, v);
    };
    const auto cdf_copy = y.cdf;
    // Quantile via bracketed root search on the cdf over the (truncated) image.
    y.quantile = [cdf_copy, fc, dc](double u) {
        Interval hull2 = fc.image_hull();
        double lo = hull2.lo, hi = hull2.hi;
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            // Fall back to the truncated x-support pushed through the map.
            const Interval xs = dc.truncated_support();
            lo = std::isfinite(lo) ? lo : evaluate(fc, xs.lo);
            hi = std::isfinite(hi) ? hi : evaluate(fc, xs.hi);
            for (const Branch& b : fc.branches) {
                if (std::isfinite(b.image.lo)) lo = std::min(lo, b.image.lo);
                if (std::isfinite(b.image.hi)) hi = std::max(hi, b.image.hi);
            }
            if (lo > hi) std::swap(lo, hi);
        }
        const auto h = [&](double t) { return cdf_copy(t) - u; };
        if (h(lo) >= 0.0) return lo;
        if (h(hi) <= 0.0) return hi;
        return brent_root(h, lo, hi, 1e-12);
    };
    // Density kinks sit at the image-interval endpoints of the branches.
    for (const Branch& b : f.branches) {
        if (std::isfinite(b.image.lo)) y.pdf_breakpoints.push_back(b.image.lo);
        if (std::isfinite(b.image.hi)) y.pdf_breakpoints.push_back(b.image.hi);
    }
    std::sort(y.pdf_breakpoints.begin(), y.pdf_breakpoints.end());
    y.pdf_breakpoints.erase(std::unique(y.pdf_breakpoints.begin(), y.pdf_breakpoints.end()),
                            y.pdf_breakpoints.end());
    return y;
}

void check_covers(const Pbf& f, const ScalarDistribution& d, double tol) {
    if (f.truncated_family) return;
    double covered = 0.0;
    for (int i = 0; i < f.branch_count(); ++i) covered += branch_mass(f, d, i);
    if (covered < 1.0 - tol)
        throw InvalidInputError("pbf does not cover the input support: mass " +
                                std::to_string(1.0 - covered) + " unassigned");
}

} // namespace infoloss
