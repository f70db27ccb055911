#include "infoloss/rootfind.hpp"
#include "infoloss/errors.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_roots.h>

#include <cmath>
#include <memory>
#include <string>

namespace infoloss {

namespace {

double call_fn(double x, void* params) {
    return (*static_cast<const std::function<double(double)>*>(params))(x);
}

struct SolverDeleter {
    void operator()(gsl_root_fsolver* s) const { gsl_root_fsolver_free(s); }
};

} // namespace

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double rel_tol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::isnan(fa) || std::isnan(fb) || fa * fb > 0.0)
        throw NumericError("brent_root: invalid bracket [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");

    gsl_function gf;
    gf.function = &call_fn;
    gf.params = const_cast<std::function<double(double)>*>(&f);

    std::unique_ptr<gsl_root_fsolver, SolverDeleter> solver(
        gsl_root_fsolver_alloc(gsl_root_fsolver_brent));
    gsl_root_fsolver_set(solver.get(), &gf, a, b);

    double root = 0.5 * (a + b);
    for (int it = 0; it < max_iter; ++it) {
        if (gsl_root_fsolver_iterate(solver.get()) != GSL_SUCCESS)
            throw NumericError("brent_root: iteration failure");
        root = gsl_root_fsolver_root(solver.get());
        const double lo = gsl_root_fsolver_x_lower(solver.get());
        const double hi = gsl_root_fsolver_x_upper(solver.get());
        // absolute floor keeps the test meaningful for roots at zero
        if (gsl_root_test_interval(lo, hi, 1e-14, rel_tol) == GSL_SUCCESS) return root;
    }
    throw NumericError("brent_root: no convergence after " + std::to_string(max_iter) +
                       " iterations");
}

} // namespace infoloss
