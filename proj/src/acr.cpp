#include "infoloss/acr.hpp"
#include "infoloss/errors.hpp"
#include "infoloss/reldim.hpp"

#include <algorithm>
#include <numeric>

namespace infoloss {

namespace {

int rank_i_minus_ck(int n, int k) {
    // eigenvalues 1 - w^{jk}: zero iff j k = 0 (mod n); gcd(k, n) solutions
    return n - std::gcd(k, n);
}

int rank_i_plus_ck(int n, int k) {
    // eigenvalues 1 + w^{jk}: zero iff j k = n/2 (mod n)
    if (n % 2 != 0) return n;
    int zeros = 0;
    for (int j = 0; j < n; ++j)
        if ((static_cast<long long>(j) * k) % n == n / 2) ++zeros;
    return n - zeros;
}

} // namespace

McAcrAnalysis mc_acr_analysis(int n, std::array<int, 3> lags) {
    if (n < 4) throw InvalidInputError("mc_acr_analysis: need N >= 4");
    for (int k : lags)
        if (k < 1 || k > n - 1)
            throw InvalidInputError("mc_acr_analysis: lags must lie in 1..N-1");

    McAcrAnalysis a;
    a.n = n;
    a.lags = lags;

    const double dn = n;
    a.t_x_to_yk = (2.0 * dn - 1.0) / (2.0 * dn);
    a.t_yk_to_rk = 2.0 / (2.0 * dn - 1.0);
    a.t_x_to_rk = cascade_relative(a.t_x_to_yk, a.t_yk_to_rk).rel_transfer;
    a.t_x_to_r0 = 1.0 / (2.0 * dn);

    const std::array<double, 3> per_lag{a.t_x_to_rk, a.t_x_to_rk, a.t_x_to_rk};
    const RelTransferBound jb = ub_rel_transfer(per_lag);
    a.joint_bound = jb.bound;
    a.joint_bound_raw = jb.raw_sum;

    std::array<int, 3> sorted = lags;
    std::sort(sorted.begin(), sorted.end());
    a.duplicate_lags = (sorted[0] == sorted[1] || sorted[1] == sorted[2]);
    const bool below_half =
        std::all_of(lags.begin(), lags.end(), [n](int k) { return 2 * k < n; });
    a.joint_tight = !a.duplicate_lags && below_half;

    // Spectrum route: the squared DFT magnitudes are a real Hermitian
    // N-vector, so the full autocorrelation keeps exactly N of 2N real
    // dimensions.
    a.hermitian_free_dims = n; // (n even: 2 real bins + (n-2)/2 complex pairs)
    a.t_x_to_full_r = static_cast<double>(a.hermitian_free_dims) / (2.0 * dn);

    for (int k : lags) a.ranks.push_back({k, rank_i_plus_ck(n, k), rank_i_minus_ck(n, k)});
    return a;
}

} // namespace infoloss
