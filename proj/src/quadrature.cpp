#include "secrecy/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace secrecy::quadrature {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

constexpr double kEpmach = std::numeric_limits<double>::epsilon();

// Integrand value together with an absolute error already present in it
// (nonzero when the value is itself the result of an inner quadrature).
struct Sample {
    double value;
    double carried_error;
};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    double carried;
    bool operator<(const Segment& other) const { return error + carried < other.error + other.carried; }
};

template <class G>
Segment gauss_kronrod(G& g, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Sample fc = g(center);
    double resg = fc.value * kWg[3];
    double resk = fc.value * kWgk[7];
    double resabs = std::abs(resk);
    double carried = fc.carried_error * kWgk[7];
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const Sample lo = g(center - dx);
        const Sample hi = g(center + dx);
        f1[j] = lo.value;
        f2[j] = hi.value;
        const double sum = lo.value + hi.value;
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(lo.value) + std::abs(hi.value));
        carried += kWgk[j] * (lo.carried_error + hi.carried_error);
        if (j % 2 == 1) {
            resg += kWg[j / 2] * sum;
        }
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc.value - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
    }
    const double result = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double abserr = std::abs((resk - resg) * half);
    if (resasc != 0.0 && abserr != 0.0) {
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    }
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEpmach)) {
        abserr = std::max(50.0 * kEpmach * resabs, abserr);
    }
    return Segment{a, b, result, abserr, carried * std::abs(half)};
}

struct AdaptOutcome {
    double value;
    double error;
    bool converged;
};

// Global adaptive bisection on [a, b]: always split the segment with the
// largest error until the total error meets the tolerance. An optional
// interior point `split` seeds the partition.
template <class G>
AdaptOutcome adapt(G& g, double a, double b, double rel_tol, double abs_floor,
                   std::int64_t budget, std::int64_t& evaluations, double split = 0.0) {
    std::vector<Segment> heap;
    if (split > a && split < b) {
        heap.push_back(gauss_kronrod(g, a, split));
        heap.push_back(gauss_kronrod(g, split, b));
        std::make_heap(heap.begin(), heap.end());
        evaluations += 30;
    } else {
        heap.push_back(gauss_kronrod(g, a, b));
        evaluations += 15;
    }
    double value = 0.0;
    double error = 0.0;
    for (const auto& s : heap) {
        value += s.value;
        error += s.error + s.carried;
    }
    for (std::int64_t iteration = 1;; ++iteration) {
        if (error <= std::max(rel_tol * std::abs(value), abs_floor)) {
            return {value, error, true};
        }
        if (evaluations + 30 > budget) {
            return {value, error, false};
        }
        std::pop_heap(heap.begin(), heap.end());
        const Segment worst = heap.back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval can no longer be split in double precision.
            std::push_heap(heap.begin(), heap.end());
            return {value, error, false};
        }
        heap.pop_back();
        const Segment left = gauss_kronrod(g, worst.a, mid);
        const Segment right = gauss_kronrod(g, mid, worst.b);
        evaluations += 30;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        value += left.value + right.value - worst.value;
        error += left.error + left.carried + right.error + right.carried - worst.error - worst.carried;
        if (iteration % 64 == 0 || error <= std::max(rel_tol * std::abs(value), abs_floor)) {
            // Periodic re-sum keeps the running totals from drifting.
            value = 0.0;
            error = 0.0;
            for (const auto& s : heap) {
                value += s.value;
                error += s.error + s.carried;
            }
        }
    }
}

struct MappedPoint {
    double x;
    double jacobian;
};

// Inverse of map_point's x(t).
double unmap_point(double x, double scale, Mapping mapping) {
    if (mapping == Mapping::rational) {
        return x / (scale + x);
    }
    return -std::expm1(-x / scale);
}

MappedPoint map_point(double t, double scale, Mapping mapping) {
    const double one_minus = 1.0 - t;
    if (mapping == Mapping::rational) {
        return {scale * t / one_minus, scale / (one_minus * one_minus)};
    }
    return {-scale * std::log1p(-t), scale / one_minus};
}

std::string describe_nonfinite(const char* dim, double x) {
    std::ostringstream os;
    os << "integrand is not finite at " << dim << " = " << x;
    return os.str();
}

std::string describe_budget(const char* dim, double value, double error, std::int64_t evals) {
    std::ostringstream os;
    os.precision(6);
    os << "quadrature over " << dim << " did not converge within " << evals
       << " evaluations (estimate " << value << ", error " << error << ")";
    return os.str();
}

void check_options(double rel_tol, std::int64_t budget, double scale) {
    if (!(rel_tol > 0.0)) {
        throw ValidationError("quadrature: rel_tol must be positive");
    }
    if (budget < 15) {
        throw ValidationError("quadrature: budget must allow at least one 15-point rule");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw ValidationError("quadrature: scale must be positive and finite");
    }
}

// Evaluates f(x(t)) x'(t). A zero integrand short-circuits so that tail
// points with an overflowing Jacobian contribute nothing.
template <class F>
double mapped_value(F& f, double t, double scale, Mapping mapping, const char* dim) {
    const MappedPoint p = map_point(t, scale, mapping);
    const double v = f(p.x);
    if (!std::isfinite(v)) {
        throw QuadratureError(describe_nonfinite(dim, p.x), std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::infinity(), dim);
    }
    if (v == 0.0) {
        return 0.0;
    }
    return v * p.jacobian;
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& options) {
    check_options(options.rel_tol, options.budget, 1.0);
    std::int64_t evaluations = 0;
    auto g = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw QuadratureError(describe_nonfinite("x", x), std::numeric_limits<double>::quiet_NaN(),
                                  std::numeric_limits<double>::infinity(), "x");
        }
        return Sample{v, 0.0};
    };
    const AdaptOutcome out = adapt(g, a, b, options.rel_tol, options.abs_floor, options.budget, evaluations);
    if (!out.converged) {
        throw QuadratureError(describe_budget("x", out.value, out.error, evaluations), out.value, out.error, "x");
    }
    return {out.value, out.error, evaluations};
}

QuadResult integrate_semi_inf(const Integrand& f, const QuadOptions& options) {
    check_options(options.rel_tol, options.budget, options.scale);
    std::int64_t evaluations = 0;
    auto g = [&](double t) {
        return Sample{mapped_value(f, t, options.scale, options.mapping, "x"), 0.0};
    };
    const AdaptOutcome out = adapt(g, 0.0, 1.0, options.rel_tol, options.abs_floor, options.budget, evaluations);
    if (!out.converged) {
        throw QuadratureError(describe_budget("x", out.value, out.error, evaluations), out.value, out.error, "x");
    }
    return {out.value, out.error, evaluations};
}

QuadResult integrate_semi_inf(const Integrand& f, double rel_tol, std::int64_t budget) {
    QuadOptions options;
    options.rel_tol = rel_tol;
    options.budget = budget;
    return integrate_semi_inf(f, options);
}

QuadResult integrate_double_semi_inf(const Integrand2d& f, const QuadOptions2d& options) {
    check_options(options.rel_tol, options.budget, options.scale_x);
    check_options(options.rel_tol, options.budget, options.scale_y);
    if (!(options.break_x >= 0.0) || !std::isfinite(options.break_x)) {
        throw ValidationError("quadrature: break_x must be finite and non-negative");
    }
    const double split_x = unmap_point(options.break_x, options.scale_x, options.mapping);
    std::int64_t evaluations = 0;
    // The inner tolerance is tighter so that inner errors, which are carried
    // into the outer estimate, do not dominate it.
    const double inner_rel_tol = 0.1 * options.rel_tol;
    const double inner_floor = 0.1 * options.abs_floor;

    auto outer = [&](double ty) -> Sample {
        const MappedPoint py = map_point(ty, options.scale_y, options.mapping);
        auto inner = [&](double tx) {
            auto fx = [&](double x) { return f(x, py.x); };
            return Sample{mapped_value(fx, tx, options.scale_x, options.mapping, "x"), 0.0};
        };
        const std::int64_t remaining = options.budget - evaluations;
        if (remaining < 15) {
            throw QuadratureError(describe_budget("y", std::numeric_limits<double>::quiet_NaN(),
                                                  std::numeric_limits<double>::infinity(), evaluations),
                                  std::numeric_limits<double>::quiet_NaN(),
                                  std::numeric_limits<double>::infinity(), "y");
        }
        std::int64_t inner_evals = 0;
        const AdaptOutcome in = adapt(inner, 0.0, 1.0, inner_rel_tol, inner_floor, remaining, inner_evals, split_x);
        evaluations += inner_evals;
        if (!in.converged) {
            throw QuadratureError(describe_budget("x", in.value, in.error, evaluations), in.value, in.error, "x");
        }
        if (in.value == 0.0 && in.error == 0.0) {
            return Sample{0.0, 0.0};
        }
        return Sample{in.value * py.jacobian, in.error * py.jacobian};
    };

    const AdaptOutcome out =
        adapt(outer, 0.0, 1.0, options.rel_tol, options.abs_floor, options.budget, evaluations);
    if (!out.converged) {
        throw QuadratureError(describe_budget("y", out.value, out.error, evaluations), out.value, out.error, "y");
    }
    return {out.value, out.error, evaluations};
}

QuadResult integrate_double_semi_inf(const Integrand2d& f, double rel_tol, std::int64_t budget) {
    QuadOptions2d options;
    options.rel_tol = rel_tol;
    options.budget = budget;
    return integrate_double_semi_inf(f, options);
}

}  // namespace secrecy::quadrature
