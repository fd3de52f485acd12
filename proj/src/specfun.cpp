#include "secrecy/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "secrecy/errors.hpp"

namespace secrecy::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

void require_positive(double t, const char* fn) {
    if (!(t > 0.0)) {
        throw ValidationError(std::string(fn) + ": argument must be > 0, got " + std::to_string(t));
    }
}

// Ei(-t) = gamma + ln t + sum_{k>=1} (-t)^k / (k k!), used for t <= 1.
double ei_neg_series(double t) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= -t / k;
        const double contrib = term / k;
        sum += contrib;
        if (std::abs(contrib) < kEps * std::abs(sum)) {
            break;
        }
    }
    return std::numbers::egamma + std::log(t) + sum;
}

// Modified Lentz evaluation of exp(z) E_m(z) via
//   E_m(z) = exp(-z) / (z + m - 1*m/(z + m + 2 - 2(m+1)/(z + m + 4 - ...)))
// Converges quickly for z > 1.
double expint_scaled_cf(int m, double z) {
    double b = z + m;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -static_cast<double>(i) * (m - 1 + i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= kEps) {
            return h;
        }
    }
    throw NumericError("expint continued fraction failed to converge at z = " + std::to_string(z));
}

// Positive-term series (n+1) * sum_k z^k / (n+1+k).
double hyp2f1_n_series(int n, double z) {
    double sum = 0.0;
    double zk = 1.0;
    for (int k = 0; k < 50 * kMaxIterations; ++k) {
        const double term = zk / (n + 1 + k);
        sum += term;
        if (std::abs(term) <= 0.25 * kEps * std::abs(sum)) {
            return (n + 1) * sum;
        }
        zk *= z;
    }
    throw NumericError("hyp2f1_n series failed to converge at z = " + std::to_string(z));
}

// (n+1) z^-(n+1) (-ln(1-z) - sum_{m=1}^{n} z^m/m).
double hyp2f1_n_log_form(int n, double z) {
    double partial = 0.0;
    double zm = 1.0;
    for (int m = 1; m <= n; ++m) {
        zm *= z;
        partial += zm / m;
    }
    const double tail = -std::log1p(-z) - partial;
    return (n + 1) * tail / (zm * z);
}

// Pfaff transformation for z < 0:
//   2F1(n+1, 1; n+2; z) = (1-z)^-1 2F1(1, 1; n+2; w),  w = z/(z-1) in (0, 1),
//   2F1(1, 1; n+2; w) = sum_k k! / (n+2)_k w^k.
double hyp2f1_n_pfaff(int n, double z) {
    const double w = z / (z - 1.0);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 50 * kMaxIterations; ++k) {
        term *= w * (k + 1) / (n + 2 + k);
        sum += term;
        if (term <= 0.25 * kEps * sum) {
            return sum / (1.0 - z);
        }
    }
    throw NumericError("hyp2f1_n transformed series failed to converge at z = " + std::to_string(z));
}

}  // namespace

double ei_neg(double t) {
    require_positive(t, "ei_neg");
    if (t <= 1.0) {
        return ei_neg_series(t);
    }
    return -std::exp(-t) * expint_scaled_cf(1, t);
}

double ei_neg_scaled(double t) {
    require_positive(t, "ei_neg_scaled");
    if (t <= 1.0) {
        return std::exp(t) * ei_neg_series(t);
    }
    return -expint_scaled_cf(1, t);
}

double expint_scaled(int order, double z) {
    if (order < 1) {
        throw ValidationError("expint_scaled: order must be >= 1");
    }
    require_positive(z, "expint_scaled");
    if (z > 1.0) {
        return expint_scaled_cf(order, z);
    }
    // Upward recurrence S_{m+1} = (1 - z S_m) / m is stable for z <= 1.
    double s = -ei_neg_scaled(z);
    for (int m = 1; m < order; ++m) {
        s = (1.0 - z * s) / m;
    }
    return s;
}

double hyp2f1_n(int n, double z) {
    if (n < 1) {
        throw ValidationError("hyp2f1_n: n must be >= 1");
    }
    if (!(z < 1.0)) {
        throw ValidationError("hyp2f1_n: z must be < 1, got " + std::to_string(z));
    }
    if (std::abs(z) <= 0.25) {
        return hyp2f1_n_series(n, z);
    }
    if (z < 0.0) {
        // The log form is well conditioned once |z| >= 1; inside (-1, 0) the
        // truncated-log difference cancels, so sum the transformed series.
        return z <= -1.0 ? hyp2f1_n_log_form(n, z) : hyp2f1_n_pfaff(n, z);
    }
    // 0.25 < z < 1: the log form subtracts sum_{m<=n} z^m/m from -ln(1-z)
    // and keeps only the z^{n+1}/(n+1)-sized tail. Use it only when that
    // tail is not much smaller than the logarithm.
    // Past ~1e6 series terms the cancellation (bounded by (n+1) ln(1/(1-z))
    // once z^{n+1} ~ 1) is the cheaper loss.
    const double tail_scale = std::pow(z, n + 1) / (n + 1);
    const double series_terms = 37.0 / -std::log(z);
    if (tail_scale >= 1e-2 * -std::log1p(-z) || series_terms > 1e6) {
        return hyp2f1_n_log_form(n, z);
    }
    return hyp2f1_n_series(n, z);
}

}  // namespace secrecy::specfun
