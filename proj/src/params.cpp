#include "secrecy/params.hpp"

#include <cmath>
#include <string>

#include "secrecy/errors.hpp"

namespace secrecy {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw ValidationError(message);
    }
}

void require_finite(double value, const char* name) {
    require(std::isfinite(value), std::string(name) + " must be finite");
}

}  // namespace

double rate_from_db(double mean_power_db) {
    return std::pow(10.0, -mean_power_db / 10.0);
}

void validate(const SystemConfig& c) {
    require(c.n_transmitters >= 1, "n_transmitters must be >= 1");
    require(c.backhaul_prob >= 0.0 && c.backhaul_prob <= 1.0,
            "backhaul_prob must lie in [0, 1]");
    require(c.primary_outage_threshold > 0.0 && c.primary_outage_threshold < 1.0,
            "primary_outage_threshold must lie in (0, 1)");
    // beta = 0 makes Gamma_0 = 0 and the secondary power unbounded.
    require(c.primary_rate_threshold > 0.0 && std::isfinite(c.primary_rate_threshold),
            "primary_rate_threshold must be positive and finite");
    // rho = 1 is excluded: (rho - 1) acts as a decay factor in the closed forms.
    require(c.secrecy_rate_threshold > 0.0 && std::isfinite(c.secrecy_rate_threshold),
            "secrecy_rate_threshold must be positive and finite");
    require_finite(c.gamma_t_db, "gamma_t_db");
    const auto& m = c.mean_power_db;
    require_finite(m.tr, "mean_power_tr_db");
    require_finite(m.td, "mean_power_td_db");
    require_finite(m.sd, "mean_power_sd_db");
    require_finite(m.sr, "mean_power_sr_db");
    require_finite(m.te, "mean_power_te_db");
    require_finite(m.se, "mean_power_se_db");
}

DerivedParams derive(const SystemConfig& c) {
    validate(c);
    DerivedParams p;
    p.lambda_tr = rate_from_db(c.mean_power_db.tr);
    p.lambda_td = rate_from_db(c.mean_power_db.td);
    p.lambda_sd = rate_from_db(c.mean_power_db.sd);
    p.lambda_sr = rate_from_db(c.mean_power_db.sr);
    p.lambda_te = rate_from_db(c.mean_power_db.te);
    p.lambda_se = rate_from_db(c.mean_power_db.se);
    p.gamma_t = std::pow(10.0, c.gamma_t_db / 10.0);
    p.gamma_0 = std::exp2(c.primary_rate_threshold) - 1.0;
    p.rho = std::exp2(c.secrecy_rate_threshold);

    const double phi = c.primary_outage_threshold;
    const double k = p.lambda_tr * p.gamma_0;
    // exp(-k/Gt)/(1-Phi) - 1 == (expm1(-k/Gt) + Phi)/(1-Phi), exact near Gt -> inf.
    p.xi = (std::expm1(-k / p.gamma_t) + phi) / ((1.0 - phi) * k);
    p.gamma_s = p.xi > 0.0 ? p.gamma_t * p.lambda_sr * p.xi : 0.0;
    return p;
}

double xi_asymptotic(const SystemConfig& c) {
    validate(c);
    const double phi = c.primary_outage_threshold;
    const double gamma_0 = std::exp2(c.primary_rate_threshold) - 1.0;
    return phi / (1.0 - phi) / (rate_from_db(c.mean_power_db.tr) * gamma_0);
}

AsymptoticParams derive_asymptotic(const SystemConfig& c) {
    validate(c);
    AsymptoticParams p;
    p.lambda_tr = rate_from_db(c.mean_power_db.tr);
    p.lambda_td = rate_from_db(c.mean_power_db.td);
    p.lambda_sd = rate_from_db(c.mean_power_db.sd);
    p.lambda_sr = rate_from_db(c.mean_power_db.sr);
    p.lambda_te = rate_from_db(c.mean_power_db.te);
    p.lambda_se = rate_from_db(c.mean_power_db.se);
    p.gamma_0 = std::exp2(c.primary_rate_threshold) - 1.0;
    p.rho = std::exp2(c.secrecy_rate_threshold);
    p.xi = xi_asymptotic(c);
    return p;
}

}  // namespace secrecy
