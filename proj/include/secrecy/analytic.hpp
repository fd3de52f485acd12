#pragma once

#include "secrecy/params.hpp"

namespace secrecy::analytic {

enum class SopMethod { exact_closed_form, exact_quadrature, asymptotic };

struct SopValue {
    double value = 1.0;  ///< secrecy outage probability in [0, 1]
    SopMethod method = SopMethod::exact_closed_form;
};

/// Alternating binomial sums lose all accuracy in double precision beyond
/// this many transmitters.
inline constexpr int kMaxTransmitters = 64;

inline constexpr double kDefaultOtsRelTol = 1e-8;

/// CDF of the primary receiver SINR. For gamma_s == 0 this is the plain
/// exponential CDF of the interference-free primary SNR.
double cdf_gamma_tr(double x, const DerivedParams& p);

/// CDF of the destination SINR under sub-optimal selection with Bernoulli(s)
/// backhaul availability among n_tx transmitters.
double cdf_gamma_sd_sts(double x, const DerivedParams& p, int n_tx, double s);

/// CDF / PDF of the eavesdropper SINR for the selected transmitter.
double cdf_gamma_se(double x, const DerivedParams& p);
double pdf_gamma_se(double x, const DerivedParams& p);

/// Closed-form SOP of sub-optimal selection (max destination gain among
/// transmitters with an active backhaul).
SopValue sop_sts(const DerivedParams& p, int n_tx, double s);

/// SOP of optimal selection (max secrecy rate among active transmitters) by
/// double quadrature over the primary interference gains.
SopValue sop_ots(const DerivedParams& p, int n_tx, double s, double rel_tol = kDefaultOtsRelTol);

/// High primary-SNR floors. Neither takes Gamma_T.
SopValue sop_sts_asymptotic(const AsymptoticParams& p, int n_tx, double s);
SopValue sop_ots_asymptotic(const AsymptoticParams& p, int n_tx, double s);

namespace detail {

/// I1 = int_0^inf e^{-cx} / ((x+a)(x+b)) dx and
/// I2 = int_0^inf e^{-cx} / ((x+a)(x+b)^2) dx for a, b, c > 0.
struct ExpRationalIntegrals {
    double i1;
    double i2;
};
ExpRationalIntegrals exp_rational_integrals(double a, double b, double c);

/// int_0^inf dx / ((x+a)(x+b)^2) for a, b > 0.
double rational_integral(double a, double b);

/// One binomial-expansion term of the optimal-selection floor,
///   lambda_td lambda_te int int (b y / (x + b y))^n e^{-a x - lambda_te y} dx dy.
double ots_asymptotic_term(int n, double a, double b, double lambda_td, double lambda_te);

}  // namespace detail

}  // namespace secrecy::analytic
