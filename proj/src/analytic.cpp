#include "secrecy/analytic.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "secrecy/errors.hpp"
#include "secrecy/quadrature.hpp"
#include "secrecy/specfun.hpp"

namespace secrecy::analytic {

namespace {

constexpr double kEps = 2.220446049250313e-16;

// Below this relative separation of a and b the divided-difference forms are
// replaced by their Taylor expansion about a = b.
constexpr double kCoincidenceThreshold = 0.05;

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return std::round(c);
}

double clamp_probability(double v) {
    if (!std::isfinite(v)) {
        throw NumericError("secrecy outage probability evaluated to a non-finite value");
    }
    return std::min(1.0, std::max(0.0, v));
}

void check_selection(int n_tx, double s) {
    if (n_tx < 1 || n_tx > kMaxTransmitters) {
        throw ValidationError("n_tx must lie in [1, " + std::to_string(kMaxTransmitters) + "], got " +
                              std::to_string(n_tx));
    }
    if (!(s >= 0.0 && s <= 1.0)) {
        throw ValidationError("backhaul probability must lie in [0, 1]");
    }
}

void check_nonnegative(double x, const char* fn) {
    if (!(x >= 0.0)) {
        throw ValidationError(std::string(fn) + ": x must be >= 0");
    }
}

void check_active_secondary(const DerivedParams& p, const char* fn) {
    if (!(p.gamma_s > 0.0)) {
        throw ValidationError(std::string(fn) + ": requires gamma_s > 0");
    }
}

void check_rho(double rho) {
    if (!(rho > 1.0)) {
        throw ValidationError("rho must exceed 1 (secrecy rate threshold > 0)");
    }
}

// Sign of (-1)^{n+1}.
double alternating(int n) { return n % 2 == 1 ? 1.0 : -1.0; }

}  // namespace

namespace detail {

ExpRationalIntegrals exp_rational_integrals(double a, double b, double c) {
    const double diff = a - b;
    if (std::abs(diff) <= kCoincidenceThreshold * b) {
        // 1/(x+a) = sum_k (-diff)^k / (x+b)^{k+1}, so with
        // K_m = int e^{-cx} (x+b)^{-m} dx = b^{1-m} e^{cb} E_m(cb):
        //   I1 = sum_k (-diff)^k K_{k+2},  I2 = sum_k (-diff)^k K_{k+3}.
        const double z = c * b;
        double i1 = 0.0;
        double i2 = 0.0;
        double factor = 1.0 / b;  // (-diff)^k b^{-(k+1)}
        for (int k = 0; k < 200; ++k) {
            const double t1 = factor * specfun::expint_scaled(k + 2, z);
            const double t2 = factor / b * specfun::expint_scaled(k + 3, z);
            i1 += t1;
            i2 += t2;
            if (std::abs(t1) <= kEps * std::abs(i1) && std::abs(t2) <= kEps * std::abs(i2)) {
                break;
            }
            factor *= -diff / b;
        }
        return {i1, i2};
    }
    const double ea = specfun::ei_neg_scaled(a * c);  // e^{ac} Ei(-ac)
    const double eb = specfun::ei_neg_scaled(b * c);
    const double i1 = (ea - eb) / diff;
    const double i2 = (eb - ea) / (diff * diff) + (c * eb + 1.0 / b) / diff;
    return {i1, i2};
}

double rational_integral(double a, double b) {
    const double diff = a - b;
    if (std::abs(diff) <= kCoincidenceThreshold * b) {
        // sum_k (-diff)^k b^{-(k+2)} / (k+2)
        double sum = 0.0;
        double factor = 1.0 / (b * b);
        for (int k = 0; k < 200; ++k) {
            const double term = factor / (k + 2);
            sum += term;
            if (std::abs(term) <= kEps * std::abs(sum)) {
                break;
            }
            factor *= -diff / b;
        }
        return sum;
    }
    return std::log(b / a) / (diff * diff) + 1.0 / (b * diff);
}

double ots_asymptotic_term(int n, double a, double b, double lambda_td, double lambda_te) {
    const double ratio = a * b / lambda_te;
    if (n == 1) {
        // b lambda_td lambda_te [ln(L/(ab)) / (L-ab)^2 - 1/((L-ab) L)]
        const double eps = lambda_te - a * b;
        double bracket = 0.0;
        if (std::abs(eps) <= kCoincidenceThreshold * lambda_te) {
            // ln(L/u) = sum_k (eps/L)^k / k  =>  bracket = sum_{k>=2} eps^{k-2} / (k L^k)
            double factor = 1.0 / (lambda_te * lambda_te);
            for (int k = 2; k < 200; ++k) {
                const double term = factor / k;
                bracket += term;
                if (std::abs(term) <= kEps * std::abs(bracket)) {
                    break;
                }
                factor *= eps / lambda_te;
            }
        } else {
            bracket = -std::log(ratio) / (eps * eps) - 1.0 / (eps * lambda_te);
        }
        return b * lambda_td * lambda_te * bracket;
    }
    if (ratio <= 1.0) {
        // Closed form with z = (L - ab)/L in [0, 1). Factored as
        //   b^n lambda_td lambda_te / (n-1)! * [...]
        //     = lambda_td lambda_te b / L^2 *
        //       [ sum_{k=1}^{n-1} (-r)^{n-k-1} / C(n-1, k-1)
        //         + (-r)^{n-1} n/(n+1) 2F1(n+1, 1; n+2; 1-r) ],  r = ab/L,
        // which keeps every piece bounded by one in magnitude.
        double bracket = 0.0;
        for (int k = 1; k <= n - 1; ++k) {
            bracket += std::pow(-ratio, n - k - 1) / binomial(n - 1, k - 1);
        }
        bracket += std::pow(-ratio, n - 1) * n / (n + 1.0) * specfun::hyp2f1_n(n, 1.0 - ratio);
        return lambda_td * lambda_te * b / (lambda_te * lambda_te) * bracket;
    }
    // ab > L: the expression above cancels catastrophically (its pieces grow
    // like r^{n-1}). Same integral, written with the reflected argument
    // zeta = 1 - L/(ab) in (0, 1) via the Gauss contiguous relation
    //   2F1(2, n+1; n+2; zeta) = (n+1)/(1-zeta) - n 2F1(n+1, 1; n+2; zeta).
    const double zeta = 1.0 - 1.0 / ratio;
    const double f2 = (n + 1) * ratio - n * specfun::hyp2f1_n(n, zeta);
    return lambda_td * lambda_te / (a * a * b * (n + 1)) * f2;
}

}  // namespace detail

double cdf_gamma_tr(double x, const DerivedParams& p) {
    check_nonnegative(x, "cdf_gamma_tr");
    if (p.gamma_s <= 0.0) {
        return -std::expm1(-p.lambda_tr * x / p.gamma_t);
    }
    const double kappa = p.lambda_sr * p.gamma_t / (p.lambda_tr * p.gamma_s);
    return 1.0 - kappa / (x + kappa) * std::exp(-p.lambda_tr * x / p.gamma_t);
}

double cdf_gamma_sd_sts(double x, const DerivedParams& p, int n_tx, double s) {
    check_nonnegative(x, "cdf_gamma_sd_sts");
    check_selection(n_tx, s);
    check_active_secondary(p, "cdf_gamma_sd_sts");
    CompensatedSum sum;
    for (int n = 1; n <= n_tx; ++n) {
        const double mu = p.lambda_td * p.gamma_s / (n * p.lambda_sd * p.gamma_t);
        sum.add(binomial(n_tx, n) * alternating(n) * std::pow(s, n) * mu / (x + mu) *
                std::exp(-n * p.lambda_sd * x / p.gamma_s));
    }
    return 1.0 - sum.value();
}

double cdf_gamma_se(double x, const DerivedParams& p) {
    check_nonnegative(x, "cdf_gamma_se");
    check_active_secondary(p, "cdf_gamma_se");
    const double nu = p.lambda_te * p.gamma_s / (p.lambda_se * p.gamma_t);
    return 1.0 - nu / (x + nu) * std::exp(-p.lambda_se * x / p.gamma_s);
}

double pdf_gamma_se(double x, const DerivedParams& p) {
    check_nonnegative(x, "pdf_gamma_se");
    check_active_secondary(p, "pdf_gamma_se");
    const double nu = p.lambda_te * p.gamma_s / (p.lambda_se * p.gamma_t);
    const double e = std::exp(-p.lambda_se * x / p.gamma_s);
    return (p.lambda_te / p.gamma_t) * e / (x + nu) + nu * e / ((x + nu) * (x + nu));
}

SopValue sop_sts(const DerivedParams& p, int n_tx, double s) {
    check_selection(n_tx, s);
    check_rho(p.rho);
    if (p.xi <= 0.0 || p.gamma_s <= 0.0 || s == 0.0) {
        return {1.0, SopMethod::exact_closed_form};
    }
    const double gt = p.gamma_t;
    const double gs = p.gamma_s;
    const double rho = p.rho;
    CompensatedSum sum;
    for (int n = 1; n <= n_tx; ++n) {
        const double decay = std::exp(-n * p.lambda_sd * (rho - 1.0) / gs);
        if (decay == 0.0) {
            continue;
        }
        const double coef = binomial(n_tx, n) * alternating(n) * std::pow(s, n) * p.lambda_te * p.lambda_td *
                            gs / (n * rho * p.lambda_sd * gt * gt) * decay;
        const double a = (p.lambda_td * gs + n * rho * p.lambda_sd * gt - n * p.lambda_sd * gt) /
                         (n * rho * p.lambda_sd * gt);
        const double b = p.lambda_te * gs / (p.lambda_se * gt);
        const double c = (n * rho * p.lambda_sd + p.lambda_se) / gs;
        const auto integrals = detail::exp_rational_integrals(a, b, c);
        sum.add(coef * (integrals.i1 + gs / p.lambda_se * integrals.i2));
    }
    return {clamp_probability(1.0 - sum.value()), SopMethod::exact_closed_form};
}

SopValue sop_ots(const DerivedParams& p, int n_tx, double s, double rel_tol) {
    check_selection(n_tx, s);
    check_rho(p.rho);
    if (!(rel_tol > 0.0)) {
        throw ValidationError("sop_ots: rel_tol must be positive");
    }
    if (p.xi <= 0.0 || p.gamma_s <= 0.0 || s == 0.0) {
        return {1.0, SopMethod::exact_quadrature};
    }
    const double gt = p.gamma_t;
    const double k = p.lambda_sd * (p.rho - 1.0) / p.gamma_s;
    // u = lambda_td |h_TD|^2, v = lambda_te |h_TE|^2, both unit exponential.
    auto integrand = [&](double u, double v) {
        const double x = u / p.lambda_td;
        const double y = v / p.lambda_te;
        const double dx = gt * x + 1.0;
        const double ey = p.lambda_se * (gt * y + 1.0);
        const double win = s * ey / (p.rho * p.lambda_sd * dx + ey) * std::exp(-k * dx);
        return std::pow(1.0 - win, n_tx) * std::exp(-u - v);
    };
    quadrature::QuadOptions2d options;
    options.rel_tol = rel_tol;
    // exp(-k gt x) can vary on a far shorter scale than exp(-u) when
    // Gamma_S << Gamma_T; give the inner rule a break at that width.
    const double u_decay = p.lambda_td / (k * gt);
    if (u_decay < 0.1) {
        options.break_x = 40.0 * u_decay;
    }
    try {
        const auto result = quadrature::integrate_double_semi_inf(integrand, options);
        return {clamp_probability(result.value), SopMethod::exact_quadrature};
    } catch (const quadrature::QuadratureError& e) {
        throw quadrature::QuadratureError(std::string("sop_ots: ") + e.what(), e.best_estimate(),
                                          e.error_bound(), e.dimension());
    }
}

SopValue sop_sts_asymptotic(const AsymptoticParams& p, int n_tx, double s) {
    check_selection(n_tx, s);
    check_rho(p.rho);
    if (p.xi <= 0.0 || s == 0.0) {
        return {1.0, SopMethod::asymptotic};
    }
    const double rho = p.rho;
    const double xi = p.xi;
    CompensatedSum sum;
    for (int n = 1; n <= n_tx; ++n) {
        const double a = (n * (rho - 1.0) * p.lambda_sd + p.lambda_sr * p.lambda_td * xi) / (n * rho * p.lambda_sd);
        const double b = p.lambda_te * p.lambda_sr * xi / p.lambda_se;
        const double coef = binomial(n_tx, n) * alternating(n) * std::pow(s, n) * p.lambda_te * p.lambda_td *
                            p.lambda_sr * p.lambda_sr * xi * xi / (n * rho * p.lambda_sd * p.lambda_se);
        sum.add(coef * detail::rational_integral(a, b));
    }
    return {clamp_probability(1.0 - sum.value()), SopMethod::asymptotic};
}

SopValue sop_ots_asymptotic(const AsymptoticParams& p, int n_tx, double s) {
    check_selection(n_tx, s);
    check_rho(p.rho);
    if (p.xi <= 0.0 || s == 0.0) {
        return {1.0, SopMethod::asymptotic};
    }
    const double b = p.lambda_se / (p.rho * p.lambda_sd);
    CompensatedSum sum;
    for (int n = 1; n <= n_tx; ++n) {
        const double a = (p.lambda_sd * (p.rho - 1.0) * n + p.lambda_td * p.lambda_sr * p.xi) / (p.lambda_sr * p.xi);
        const double term = detail::ots_asymptotic_term(n, a, b, p.lambda_td, p.lambda_te);
        sum.add(binomial(n_tx, n) * alternating(n) * std::pow(s, n) * term);
    }
    return {clamp_probability(1.0 - sum.value()), SopMethod::asymptotic};
}

}  // namespace secrecy::analytic
