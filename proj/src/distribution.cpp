#include "infoloss/distribution.hpp"
#include "infoloss/errors.hpp"
#include "infoloss/rootfind.hpp"

#include <gsl/gsl_cdf.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace infoloss {

namespace {

constexpr double kMassTol = 1e-12;

void check_atoms(const std::vector<Atom>& atoms) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!(atoms[i].mass > 0.0) || atoms[i].mass > 1.0)
            throw InvalidInputError("atom mass must lie in (0, 1]");
        if (i > 0 && !(atoms[i].location > atoms[i - 1].location))
            throw InvalidInputError("atom locations must be distinct and sorted");
    }
}

} // namespace

double ScalarDistribution::cdf_left(double x) const {
    double v = cdf(x);
    for (const Atom& a : atoms) {
        if (a.location == x) v -= a.mass;
        if (a.location >= x) break;
    }
    return std::max(0.0, v);
}

double ScalarDistribution::prob(double a, double b) const {
    if (b < a) return 0.0;
    return std::max(0.0, cdf(b) - cdf_left(a));
}

double ScalarDistribution::sample(Rng& rng) const {
    return quantile(rng.uniform01());
}

ScalarDistribution ScalarDistribution::affine_transform(double a, double b) const {
    if (a == 0.0) throw InvalidInputError("affine_transform: zero scale");
    ScalarDistribution out = *this;
    const ScalarDistribution self = *this;
    const double abs_a = std::abs(a);
    out.pdf = [self, a, b, abs_a](double y) { return self.pdf((y - b) / a) / abs_a; };
    if (a > 0) {
        out.cdf = [self, a, b](double y) { return self.cdf((y - b) / a); };
        out.quantile = [self, a, b](double u) { return a * self.quantile(u) + b; };
        out.support = {a * support.lo + b, a * support.hi + b};
    } else {
        // Reflection: P(aX + b <= y) = P(X >= (y - b)/a).
        out.cdf = [self, a, b](double y) { return 1.0 - self.cdf_left((y - b) / a); };
        out.quantile = [self, a, b](double u) { return a * self.quantile(1.0 - u) + b; };
        out.support = {a * support.hi + b, a * support.lo + b};
    }
    out.atoms.clear();
    for (const Atom& at : atoms) out.atoms.push_back({a * at.location + b, at.mass});
    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const Atom& x, const Atom& y) { return x.location < y.location; });
    out.pdf_breakpoints.clear();
    for (double p : pdf_breakpoints) out.pdf_breakpoints.push_back(a * p + b);
    std::sort(out.pdf_breakpoints.begin(), out.pdf_breakpoints.end());
    return out;
}

Interval ScalarDistribution::truncated_support(double tail_mass) const {
    Interval s = support;
    if (!std::isfinite(s.lo)) s.lo = quantile(tail_mass);
    if (!std::isfinite(s.hi)) s.hi = quantile(1.0 - tail_mass);
    return s;
}

void ScalarDistribution::validate() const {
    double atom_total = 0.0;
    check_atoms(atoms);
    for (const Atom& a : atoms) atom_total += a.mass;
    if (std::abs(ac_weight + atom_total - 1.0) > kMassTol)
        throw InvalidInputError("total probability mass must equal 1");
    if (kind == DistKind::AbsolutelyContinuous && (ac_weight != 1.0 || !atoms.empty()))
        throw InvalidInputError("AC distribution cannot carry atoms");
    if (kind == DistKind::Mixed && (ac_weight <= 0.0 || ac_weight >= 1.0))
        throw InvalidInputError("mixed distribution needs ac_weight in (0, 1)");
    if (kind != DistKind::Discrete) {
        const Interval s = truncated_support();
        for (int i = 1; i < 16; ++i) {
            const double x = s.lo + (s.hi - s.lo) * i / 16.0;
            if (pdf(x) < 0.0) throw InvalidInputError("pdf must be nonnegative");
            const double u = cdf(x);
            if (u > 0.0 && u < 1.0) {
                const double x_back = quantile(u);
                // quantile(cdf(x)) = x can fail only on flat cdf stretches
                if (std::abs(x_back - x) > 1e-9 * (1.0 + std::abs(x)) &&
                    prob(std::min(x, x_back), std::max(x, x_back)) > 1e-9)
                    throw InvalidInputError("quantile is not consistent with cdf");
            }
        }
    }
}

ScalarDistribution ScalarDistribution::gaussian(double mean, double stddev) {
    if (!(stddev > 0.0)) throw InvalidInputError("gaussian: stddev must be positive");
    ScalarDistribution d;
    d.kind = DistKind::AbsolutelyContinuous;
    d.name = "gaussian";
    d.support = {-kInf, kInf};
    const double inv_norm = 1.0 / (stddev * std::sqrt(2.0 * M_PI));
    d.pdf = [mean, stddev, inv_norm](double x) {
        const double z = (x - mean) / stddev;
        return inv_norm * std::exp(-0.5 * z * z);
    };
    d.cdf = [mean, stddev](double x) { return gsl_cdf_ugaussian_P((x - mean) / stddev); };
    d.quantile = [mean, stddev](double u) { return mean + stddev * gsl_cdf_ugaussian_Pinv(u); };
    return d;
}

ScalarDistribution ScalarDistribution::uniform(double a, double b) {
    if (!(b > a)) throw InvalidInputError("uniform: need a < b");
    ScalarDistribution d;
    d.kind = DistKind::AbsolutelyContinuous;
    d.name = "uniform";
    d.support = {a, b};
    const double inv_len = 1.0 / (b - a);
    d.pdf = [a, b, inv_len](double x) { return (x >= a && x <= b) ? inv_len : 0.0; };
    d.cdf = [a, b, inv_len](double x) {
        if (x <= a) return 0.0;
        if (x >= b) return 1.0;
        return (x - a) * inv_len;
    };
    d.quantile = [a, b](double u) { return a + (b - a) * u; };
    return d;
}

ScalarDistribution ScalarDistribution::truncated_gaussian(double mean, double stddev,
                                                          double a, double b) {
    if (!(b > a)) throw InvalidInputError("truncated_gaussian: need a < b");
    ScalarDistribution base = gaussian(mean, stddev);
    const double fa = base.cdf(a), fb = base.cdf(b);
    const double z = fb - fa;
    if (!(z > 0.0)) throw InvalidInputError("truncated_gaussian: empty mass on [a, b]");
    ScalarDistribution d;
    d.kind = DistKind::AbsolutelyContinuous;
    d.name = "truncated_gaussian";
    d.support = {a, b};
    d.pdf = [base, a, b, z](double x) {
        return (x >= a && x <= b) ? base.pdf(x) / z : 0.0;
    };
    d.cdf = [base, a, b, fa, z](double x) {
        if (x <= a) return 0.0;
        if (x >= b) return 1.0;
        return (base.cdf(x) - fa) / z;
    };
    d.quantile = [base, fa, z](double u) { return base.quantile(fa + u * z); };
    return d;
}

ScalarDistribution ScalarDistribution::discrete(std::vector<Atom> atom_list) {
    std::sort(atom_list.begin(), atom_list.end(),
              [](const Atom& x, const Atom& y) { return x.location < y.location; });
    check_atoms(atom_list);
    double total = 0.0;
    for (const Atom& a : atom_list) total += a.mass;
    if (std::abs(total - 1.0) > kMassTol)
        throw InvalidInputError("discrete: atom masses must sum to 1");

    ScalarDistribution d;
    d.kind = DistKind::Discrete;
    d.name = "discrete";
    d.ac_weight = 0.0;
    d.atoms = atom_list;
    d.support = {atom_list.front().location, atom_list.back().location};
    d.pdf = [](double) { return 0.0; };
    d.cdf = [atom_list](double x) {
        double v = 0.0;
        for (const Atom& a : atom_list) {
            if (a.location <= x) v += a.mass;
            else break;
        }
        return v;
    };
    d.quantile = [atom_list](double u) {
        double acc = 0.0;
        for (const Atom& a : atom_list) {
            acc += a.mass;
            if (u < acc) return a.location;
        }
        return atom_list.back().location;
    };
    return d;
}

ScalarDistribution ScalarDistribution::mixed(double ac_weight, ScalarDistribution ac_part,
                                             std::vector<Atom> atom_list) {
    if (!(ac_weight > 0.0 && ac_weight < 1.0))
        throw InvalidInputError("mixed: ac_weight must lie in (0, 1)");
    if (ac_part.kind != DistKind::AbsolutelyContinuous)
        throw InvalidInputError("mixed: AC part must be absolutely continuous");
    std::sort(atom_list.begin(), atom_list.end(),
              [](const Atom& x, const Atom& y) { return x.location < y.location; });
    check_atoms(atom_list);
    double atom_total = 0.0;
    for (const Atom& a : atom_list) atom_total += a.mass;
    if (std::abs(ac_weight + atom_total - 1.0) > kMassTol)
        throw InvalidInputError("mixed: ac_weight plus atom masses must equal 1");

    ScalarDistribution d;
    d.kind = DistKind::Mixed;
    d.name = "mixed";
    d.ac_weight = ac_weight;
    d.atoms = atom_list;
    d.support = {std::min(ac_part.support.lo, atom_list.front().location),
                 std::max(ac_part.support.hi, atom_list.back().location)};
    d.pdf_breakpoints = ac_part.pdf_breakpoints;
    for (const Atom& a : atom_list) d.pdf_breakpoints.push_back(a.location);
    std::sort(d.pdf_breakpoints.begin(), d.pdf_breakpoints.end());

    const ScalarDistribution ac = ac_part;
    d.pdf = [ac, ac_weight](double x) { return ac_weight * ac.pdf(x); };
    d.cdf = [ac, ac_weight, atom_list](double x) {
        double v = ac_weight * ac.cdf(x);
        for (const Atom& a : atom_list) {
            if (a.location <= x) v += a.mass;
            else break;
        }
        return v;
    };
    // Quantile by composition: route u through the atom/AC decomposition.
    d.quantile = [d_cdf = d.cdf, ac, ac_weight, atom_list](double u) {
        double acc = 0.0;   // discrete mass passed so far, scanning left to right
        double ac_share;    // portion of u attributable to the AC part
        // Walk atoms in location order, splitting u between the AC part below
        // each atom and the atom itself.
        for (const Atom& a : atom_list) {
            const double ac_below = ac_weight * ac.cdf(a.location);
            if (u < acc + ac_below) {
                ac_share = (u - acc) / ac_weight;
                return ac.quantile(std::clamp(ac_share, 0.0, 1.0));
            }
            if (u < acc + ac_below + a.mass) return a.location;
            acc += a.mass;
        }
        ac_share = (u - acc) / ac_weight;
        return ac.quantile(std::clamp(ac_share, 0.0, 1.0));
    };
    return d;
}

ScalarDistribution ScalarDistribution::piecewise_constant(std::vector<double> edges,
                                                          std::vector<double> levels) {
    if (edges.size() != levels.size() + 1 || levels.empty())
        throw InvalidInputError("piecewise_constant: need n+1 edges for n levels");
    if (!std::is_sorted(edges.begin(), edges.end()))
        throw InvalidInputError("piecewise_constant: edges must be sorted");
    std::vector<double> cum(edges.size(), 0.0);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 0.0) throw InvalidInputError("piecewise_constant: negative level");
        cum[i + 1] = cum[i] + levels[i] * (edges[i + 1] - edges[i]);
    }
    if (std::abs(cum.back() - 1.0) > 1e-9)
        throw InvalidInputError("piecewise_constant: density must integrate to 1");

    ScalarDistribution d;
    d.kind = DistKind::AbsolutelyContinuous;
    d.name = "piecewise_constant";
    d.support = {edges.front(), edges.back()};
    d.pdf_breakpoints.assign(edges.begin() + 1, edges.end() - 1);
    d.pdf = [edges, levels](double x) {
        if (x < edges.front() || x > edges.back()) return 0.0;
        const auto it = std::upper_bound(edges.begin(), edges.end(), x);
        const std::size_t i = std::min<std::size_t>(
            levels.size() - 1, static_cast<std::size_t>(it - edges.begin()) - 1);
        return levels[i];
    };
    d.cdf = [edges, levels, cum](double x) {
        if (x <= edges.front()) return 0.0;
        if (x >= edges.back()) return 1.0;
        const auto it = std::upper_bound(edges.begin(), edges.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - edges.begin()) - 1;
        return std::min(1.0, cum[i] + levels[i] * (x - edges[i]));
    };
    d.quantile = [edges, levels, cum](double u) {
        if (u <= 0.0) return edges.front();
        if (u >= 1.0) return edges.back();
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::size_t i = std::min<std::size_t>(
            levels.size() - 1, static_cast<std::size_t>(it - cum.begin()) - 1);
        if (levels[i] <= 0.0) return edges[i + 1];
        return edges[i] + (u - cum[i]) / levels[i];
    };
    return d;
}

VectorDistribution VectorDistribution::independent_product(
    std::vector<ScalarDistribution> marginals) {
    if (marginals.empty()) throw InvalidInputError("independent_product: no marginals");
    VectorDistribution v;
    v.dimension = static_cast<int>(marginals.size());
    v.marginals = std::move(marginals);
    v.dependence = Dependence::IndependentProduct;
    const auto margs = v.marginals;
    v.sampler = [margs](Rng& rng) {
        std::vector<double> x(margs.size());
        for (std::size_t i = 0; i < margs.size(); ++i) x[i] = margs[i].sample(rng);
        return x;
    };
    v.joint_pdf = [margs](const std::vector<double>& x) {
        if (x.size() != margs.size()) throw InvalidInputError("joint_pdf: wrong dimension");
        double p = 1.0;
        for (std::size_t i = 0; i < margs.size(); ++i) p *= margs[i].pdf(x[i]);
        return p;
    };
    return v;
}

VectorDistribution VectorDistribution::pushforward(
    VectorDistribution base, std::string map_name,
    std::function<std::vector<double>(const std::vector<double>&)> map) {
    VectorDistribution v;
    const auto base_sampler = base.sampler;
    std::vector<double> probe = [&] {
        Rng probe_rng(0x5eedULL);
        return map(base_sampler(probe_rng));
    }();
    v.dimension = static_cast<int>(probe.size());
    v.dependence = Dependence::Pushforward;
    v.pushforward_name = std::move(map_name);
    v.sampler = [base_sampler, map](Rng& rng) { return map(base_sampler(rng)); };
    return v;
}

} // namespace infoloss
