#include "l0newt/solver.hpp"

#include <algorithm>

namespace l0newt {

TheoryConstants theory_constants(double L, double delta, double sigma, double beta, Index n,
                                 double nu, double cap_D, double tau) {
  if (!(L > 0.0) || !(delta > 0.0) || n < 1) {
    throw InvalidParameters("theory_constants: need L > 0, delta > 0, n >= 1");
  }
  const double denom = L / delta - sigma;
  if (denom == 0.0) throw InvalidParameters("theory_constants: L / delta equals sigma");
  const double nd = static_cast<double>(n);

  TheoryConstants c;
  c.alpha_bar = std::min({(1.0 - 2.0 * sigma) / denom, 2.0 * (1.0 - sigma) * delta / L, 1.0});
  c.tau_bar = std::min({2.0 * c.alpha_bar * delta * beta / (nd * L * L), c.alpha_bar * beta / nd,
                        1.0 / (4.0 * L), nu / (nd * (2.0 * L + cap_D))});
  c.rho = std::min((2.0 * delta - nd * tau * L * L) / 2.0, (2.0 - nd * tau) / 2.0);
  return c;
}

double nu_upper_bound(double alpha_bar, double beta, double sigma) {
  return alpha_bar * beta * (1.0 - sigma) / (1.0 - alpha_bar * beta * sigma);
}

}  // namespace l0newt
