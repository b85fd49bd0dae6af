#pragma once

#include "leechps/numeric.hpp"

namespace leechps::analytic {

// e(x) = exp(2 pi i x), with x reduced mod 1 first.
Complex e_phase(double x);

// Lanczos (g = 7, 9 terms) with reflection for Re s < 1/2. Throws PoleError
// at nonpositive integers.
Complex gamma_complex(Complex s);
// A logarithm of Gamma(s); only exp() of it is meaningful (branch unspecified).
Complex log_gamma_complex(Complex s);

// K_nu(x) for complex order and x > 0 from
//   K_nu(x) = 1/2 int_R exp(-x cosh w + nu w) dw,
// taken along Im w = theta through (or towards) the saddle point and summed
// with the trapezoid rule, halving the step until successive values agree.
Complex bessel_k(Complex nu, double x, double rel_tol = 1e-14);

// Riemann zeta for real s > 1 (DomainError otherwise).
double zeta_real(double s);

// J_11(x) for x >= 0.
double bessel_j11(double x);

}  // namespace leechps::analytic
