#ifndef INFOLOSS_ROOTFIND_HPP
#define INFOLOSS_ROOTFIND_HPP

#include <functional>

namespace infoloss {

/// Brent root bracketing on [a, b]; f(a) and f(b) must have opposite signs
/// (or one endpoint is already a root). Converges to relative tolerance
/// rel_tol on x. Throws NumericError when the bracket is invalid.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double rel_tol = 1e-12, int max_iter = 200);

} // namespace infoloss

#endif
