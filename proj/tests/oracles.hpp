#pragma once

// Independent quadrature oracles shared by the unit tests and the acceptance run.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>

namespace oracle {

using boost::math::quadrature::gauss_kronrod;

inline double integrate(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13) {
  return gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, tol);
}

/// 1/2 int int (phi(x) - phi(y)) (x - y) |x - y|^{-a-2} rho(x) rho(y) dx dy.
/// With y = x + s and s = +-t^2 the weak diagonal singularity becomes t^{1-2a}.
inline double hsym(const std::function<double(double)>& phi, const std::function<double(double)>& rho, double a,
                   double x_max, double s_max) {
  const double t_max = std::sqrt(s_max);
  auto inner = [&](double x) {
    const double px = phi(x), rx = rho(x);
    if (rx == 0.0) return 0.0;
    auto g = [&](double t) {
      if (t == 0.0) return 0.0;
      const double s = t * t;
      const double w = 2.0 * std::pow(t, -2.0 * a - 1.0);
      return w * ((phi(x + s) - px) * rho(x + s) + (px - phi(x - s)) * rho(x - s));
    };
    return 0.5 * rx * integrate(g, 0.0, t_max, 1e-12);
  };
  return integrate(inner, -x_max, x_max, 1e-11);
}

}  // namespace oracle
