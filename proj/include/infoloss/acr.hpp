#ifndef INFOLOSS_ACR_HPP
#define INFOLOSS_ACR_HPP

#include <array>
#include <vector>

namespace infoloss {

/// Relative information transfer through a multi-channel autocorrelation
/// receiver: an N-periodic complex input, three circular autocorrelation
/// lags as outputs.
struct McAcrAnalysis {
    int n = 0;
    std::array<int, 3> lags{};

    double t_x_to_yk = 0.0;   // product stage, (2N-1)/(2N)
    double t_yk_to_rk = 0.0;  // summation stage, 2/(2N-1)
    double t_x_to_rk = 0.0;   // cascade, 1/N
    double t_x_to_r0 = 0.0;   // zero-lag branch, 1/(2N)
    double joint_bound = 0.0; // min(1, 3/N)
    double joint_bound_raw = 0.0;
    bool joint_tight = false; // lags distinct and below N/2
    bool duplicate_lags = false;
    double t_x_to_full_r = 0.0; // 1/2: full autocorrelation via the spectrum route

    /// Exact ranks of I +/- C_k (C_k the circulant shift by k), counted from
    /// the eigenvalues 1 +/- w^{jk}. The lag-stage dimension claim equals
    /// rank_plus + rank_minus only when N and k leave both matrices with a
    /// single defect; the fields make the comparison auditable.
    struct RankDiagnostic {
        int lag;
        int rank_plus;
        int rank_minus;
    };
    std::vector<RankDiagnostic> ranks;
    int hermitian_free_dims = 0; // real degrees of freedom of a Hermitian N-spectrum
};

McAcrAnalysis mc_acr_analysis(int n, std::array<int, 3> lags);

} // namespace infoloss

#endif
