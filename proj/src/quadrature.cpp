#include "infoloss/quadrature.hpp"
#include "infoloss/errors.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>

namespace infoloss {

namespace {

constexpr std::size_t kWorkspaceSize = 4000;

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

// GSL's default handler aborts; errors are reported through status codes instead.
const bool g_handler_off = [] {
    gsl_set_error_handler_off();
    return true;
}();

double call_integrand(double x, void* params) {
    const auto* f = static_cast<const Integrand*>(params);
    const double v = (*f)(x);
    return std::isfinite(v) ? v : 0.0;
}

IntegralResult run(const Integrand& f, double a, double b, double abs_tol, double rel_tol) {
    (void)g_handler_off;
    Workspace ws(gsl_integration_workspace_alloc(kWorkspaceSize));
    gsl_function gf;
    gf.function = &call_integrand;
    gf.params = const_cast<Integrand*>(&f);

    IntegralResult r;
    int status;
    const bool lo_inf = std::isinf(a);
    const bool hi_inf = std::isinf(b);
    if (lo_inf && hi_inf) {
        status = gsl_integration_qagi(&gf, abs_tol, rel_tol, kWorkspaceSize, ws.get(),
                                      &r.value, &r.abserr);
    } else if (hi_inf) {
        status = gsl_integration_qagiu(&gf, a, abs_tol, rel_tol, kWorkspaceSize, ws.get(),
                                       &r.value, &r.abserr);
    } else if (lo_inf) {
        status = gsl_integration_qagil(&gf, b, abs_tol, rel_tol, kWorkspaceSize, ws.get(),
                                       &r.value, &r.abserr);
    } else {
        status = gsl_integration_qags(&gf, a, b, abs_tol, rel_tol, kWorkspaceSize, ws.get(),
                                      &r.value, &r.abserr);
    }

    // Roundoff-limited results are accepted with the achieved error estimate;
    // anything else that misses tolerance by a wide margin is an error.
    if (status != GSL_SUCCESS && status != GSL_EROUND && status != GSL_ESING &&
        status != GSL_EDIVERGE) {
        throw ToleranceError("quadrature failed: " + std::string(gsl_strerror(status)),
                             r.value, r.abserr);
    }
    return r;
}

} // namespace

IntegralResult integrate(const Integrand& f, double a, double b, double abs_tol, double rel_tol) {
    if (a == b) return {0.0, 0.0};
    if (a > b) {
        IntegralResult r = integrate(f, b, a, abs_tol, rel_tol);
        r.value = -r.value;
        return r;
    }
    return run(f, a, b, abs_tol, rel_tol);
}

IntegralResult integrate_with_breakpoints(const Integrand& f, double a, double b,
                                          std::vector<double> breakpoints,
                                          double abs_tol, double rel_tol) {
    std::vector<double> pts;
    pts.reserve(breakpoints.size() + 2);
    for (double p : breakpoints)
        if (std::isfinite(p) && p > a && p < b) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // Integrate each panel separately; QAGS inside each panel deals with
    // endpoint singularities at the breakpoints themselves.
    IntegralResult total;
    double lo = a;
    const double panel_abs = std::max(abs_tol / std::max<std::size_t>(pts.size() + 1, 1), 1e-15);
    for (std::size_t i = 0; i <= pts.size(); ++i) {
        const double hi = (i < pts.size()) ? pts[i] : b;
        if (hi > lo) {
            IntegralResult r = integrate(f, lo, hi, panel_abs, rel_tol);
            total.value += r.value;
            total.abserr += r.abserr;
        }
        lo = hi;
    }
    return total;
}

} // namespace infoloss
