#pragma once

#include <array>

namespace secrecy {

/// Mean channel power gains 1/lambda in dB for the six links of the model:
/// primary Tx to primary Rx (tr), primary Tx to destination (td), secondary
/// Tx to destination (sd), secondary Tx to primary Rx (sr), primary Tx to
/// eavesdropper (te) and secondary Tx to eavesdropper (se).
struct MeanPowersDb {
    double tr = 3.0;
    double td = -6.0;
    double sd = 3.0;
    double sr = -3.0;
    double te = 6.0;
    double se = -3.0;
};

/// User-facing system description. Defaults reproduce the reference
/// numerical setup (beta = R_th = 0.5, N = 6, s = 0.99, Phi = 0.1).
struct SystemConfig {
    int n_transmitters = 6;
    double backhaul_prob = 0.99;              ///< s, probability a backhaul link is up
    double primary_outage_threshold = 0.1;    ///< Phi
    double primary_rate_threshold = 0.5;      ///< beta, bits/s/Hz
    double secrecy_rate_threshold = 0.5;      ///< R_th, bits/s/Hz
    double gamma_t_db = 30.0;                 ///< Gamma_T = P_T / N0 in dB
    MeanPowersDb mean_power_db{};
};

/// Linear-scale quantities consumed by the analytic and simulation code.
struct DerivedParams {
    double lambda_tr = 0.0;
    double lambda_td = 0.0;
    double lambda_sd = 0.0;
    double lambda_sr = 0.0;
    double lambda_te = 0.0;
    double lambda_se = 0.0;
    double gamma_t = 0.0;  ///< P_T / N0
    double gamma_0 = 0.0;  ///< 2^beta - 1
    double rho = 0.0;      ///< 2^R_th
    double xi = 0.0;       ///< power-constraint coefficient, may be <= 0
    double gamma_s = 0.0;  ///< P_S / N0, zero when xi <= 0
};

/// High-SNR counterpart of DerivedParams. There is deliberately no gamma_t
/// member: the saturation floor does not depend on the primary power.
struct AsymptoticParams {
    double lambda_tr = 0.0;
    double lambda_td = 0.0;
    double lambda_sd = 0.0;
    double lambda_sr = 0.0;
    double lambda_te = 0.0;
    double lambda_se = 0.0;
    double gamma_0 = 0.0;
    double rho = 0.0;
    double xi = 0.0;  ///< limit of xi as Gamma_T grows, always > 0
};

/// Exponential rate parameter for a mean power given in dB.
double rate_from_db(double mean_power_db);

/// Throws ValidationError naming the first violated constraint.
void validate(const SystemConfig& config);

DerivedParams derive(const SystemConfig& config);

/// (1/(lambda_tr Gamma_0)) * Phi/(1-Phi), the Gamma_T -> infinity limit of xi.
double xi_asymptotic(const SystemConfig& config);

/// Ignores config.gamma_t_db.
AsymptoticParams derive_asymptotic(const SystemConfig& config);

}  // namespace secrecy
