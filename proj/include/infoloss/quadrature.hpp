#ifndef INFOLOSS_QUADRATURE_HPP
#define INFOLOSS_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace infoloss {

struct IntegralResult {
    double value = 0.0;
    double abserr = 0.0;
};

using Integrand = std::function<double(double)>;

/// Adaptive integration of f over [a, b]. Either bound may be infinite.
/// Integrable endpoint singularities are handled. Throws ToleranceError
/// (carrying the best estimate) if the requested tolerance cannot be met.
IntegralResult integrate(const Integrand& f, double a, double b,
                         double abs_tol = 1e-10, double rel_tol = 1e-8);

/// Same, but with known interior trouble points (kinks, singular points of
/// the integrand). Infinite bounds are allowed; the infinite tails are
/// integrated separately from the finite core.
IntegralResult integrate_with_breakpoints(const Integrand& f, double a, double b,
                                          std::vector<double> breakpoints,
                                          double abs_tol = 1e-10, double rel_tol = 1e-8);

} // namespace infoloss

#endif
