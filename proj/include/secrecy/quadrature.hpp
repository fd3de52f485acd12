#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "secrecy/errors.hpp"

namespace secrecy::quadrature {

struct QuadResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t evaluations = 0;
};

/// Change of variables taking t in [0, 1) onto x in [0, inf).
enum class Mapping {
    rational,     ///< x = scale * t / (1 - t)
    logarithmic,  ///< x = -scale * ln(1 - t); reaches only ~37 scale in double
                  ///< precision, so use it for exponentially decaying integrands
};

struct QuadOptions {
    double rel_tol = 1e-9;
    std::int64_t budget = 200000;  ///< maximum number of integrand evaluations
    double abs_floor = 1e-14;
    double scale = 1.0;            ///< characteristic length of the integrand
    Mapping mapping = Mapping::rational;
};

struct QuadOptions2d {
    double rel_tol = 1e-9;
    std::int64_t budget = 2'000'000;
    double abs_floor = 1e-14;
    double scale_x = 1.0;
    double scale_y = 1.0;
    /// Inner subdivision point; set it to the width of a narrow feature near
    /// x = 0 that the initial rule would otherwise step over. 0 disables.
    double break_x = 0.0;
    Mapping mapping = Mapping::rational;
};

/// Raised when the tolerance cannot be met within the evaluation budget, or
/// when the integrand produces a non-finite value. Carries the best estimate.
class QuadratureError : public NumericError {
public:
    QuadratureError(const std::string& what, double best_estimate, double error_bound,
                    std::string dimension)
        : NumericError(what),
          best_estimate_(best_estimate),
          error_bound_(error_bound),
          dimension_(std::move(dimension)) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }
    /// "x" for one-dimensional and inner integrals, "y" for the outer one.
    const std::string& dimension() const noexcept { return dimension_; }

private:
    double best_estimate_;
    double error_bound_;
    std::string dimension_;
};

using Integrand = std::function<double(double)>;
using Integrand2d = std::function<double(double, double)>;

/// Adaptive integral of f over the finite interval [a, b].
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& options = {});

/// Integral of f over [0, inf). Converged results satisfy
/// |value - exact| <= max(rel_tol |value|, abs_floor) up to the reliability
/// of the Gauss-Kronrod error estimate.
QuadResult integrate_semi_inf(const Integrand& f, const QuadOptions& options);
QuadResult integrate_semi_inf(const Integrand& f, double rel_tol, std::int64_t budget);

/// Iterated integral of f(x, y) over [0, inf)^2: adaptive in y outside,
/// adaptive in x inside. Inner error estimates are carried into the total.
QuadResult integrate_double_semi_inf(const Integrand2d& f, const QuadOptions2d& options);
QuadResult integrate_double_semi_inf(const Integrand2d& f, double rel_tol, std::int64_t budget);

}  // namespace secrecy::quadrature
