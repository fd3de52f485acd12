#pragma once

namespace secrecy::specfun {

/// Ei(-t) = -E1(t) for t > 0. Negative, increasing to 0 as t grows.
double ei_neg(double t);

/// exp(t) * Ei(-t) for t > 0, evaluated without forming exp(t) or Ei(-t)
/// separately, so it stays finite for t far beyond the exp overflow point.
double ei_neg_scaled(double t);

/// exp(z) * E_m(z) for integer order m >= 1 and z > 0, where
/// E_m(z) = int_1^inf exp(-z u) u^-m du. Equals -ei_neg_scaled(z) for m = 1.
double expint_scaled(int order, double z);

/// 2F1(n+1, 1; n+2; z) for n >= 1 and z < 1.
double hyp2f1_n(int n, double z);

}  // namespace secrecy::specfun
