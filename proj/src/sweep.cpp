#include "secrecy/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "secrecy/analytic.hpp"
#include "secrecy/errors.hpp"

namespace secrecy::sweep {

namespace {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string describe_point(SweepAxis axis, double value, SchemeKind scheme, Method method) {
    return std::string(to_string(axis)) + "=" + format_number(value) + ", scheme=" + std::string(to_string(scheme)) +
           ", method=" + std::string(to_string(method)) + ": ";
}

// Runs fn(i) for i in [0, count) on up to `workers` threads. The first
// exception by index is rethrown after all threads finish.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn fn) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned k = 0; k < n; ++k) {
            threads.emplace_back(worker);
        }
        for (auto& t : threads) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

template <class Fn>
auto with_context(const std::string& context, Fn fn) {
    try {
        return fn();
    } catch (const ValidationError& e) {
        throw ValidationError(context + e.what());
    } catch (const NumericError& e) {
        throw NumericError(context + e.what());
    }
}

double evaluate_analytic(const SystemConfig& config, SchemeKind scheme, Method method, double rel_tol) {
    if (method == Method::asymptotic) {
        const AsymptoticParams ap = derive_asymptotic(config);
        return scheme == SchemeKind::sts_known
                   ? analytic::sop_sts_asymptotic(ap, config.n_transmitters, config.backhaul_prob).value
                   : analytic::sop_ots_asymptotic(ap, config.n_transmitters, config.backhaul_prob).value;
    }
    const DerivedParams p = derive(config);
    return scheme == SchemeKind::sts_known
               ? analytic::sop_sts(p, config.n_transmitters, config.backhaul_prob).value
               : analytic::sop_ots(p, config.n_transmitters, config.backhaul_prob, rel_tol).value;
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::gamma_t_db: return "gamma_t_db";
        case SweepAxis::s: return "s";
        case SweepAxis::phi: return "phi";
        case SweepAxis::n_transmitters: return "n_transmitters";
    }
    return "unknown";
}

std::string_view to_string(Method method) {
    switch (method) {
        case Method::analytic: return "analytic";
        case Method::asymptotic: return "asymptotic";
        case Method::mc: return "mc";
    }
    return "unknown";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
    for (SweepAxis a : {SweepAxis::gamma_t_db, SweepAxis::s, SweepAxis::phi, SweepAxis::n_transmitters}) {
        if (to_string(a) == name) {
            return a;
        }
    }
    return std::nullopt;
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::analytic, Method::asymptotic, Method::mc}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

SystemConfig config_at(const SweepSpec& spec, double v) {
    SystemConfig c = spec.fixed;
    switch (spec.axis) {
        case SweepAxis::gamma_t_db: c.gamma_t_db = v; break;
        case SweepAxis::s: c.backhaul_prob = v; break;
        case SweepAxis::phi: c.primary_outage_threshold = v; break;
        case SweepAxis::n_transmitters:
            if (v != std::floor(v) || v < 1.0 || v > 1e6) {
                throw ValidationError("n_transmitters axis values must be positive integers");
            }
            c.n_transmitters = static_cast<int>(v);
            break;
    }
    return c;
}

void validate(const SweepSpec& spec) {
    if (spec.axis_values.empty()) {
        throw ValidationError("sweep needs at least one axis value");
    }
    for (std::size_t i = 1; i < spec.axis_values.size(); ++i) {
        if (!(spec.axis_values[i] > spec.axis_values[i - 1])) {
            throw ValidationError("axis values must be strictly increasing");
        }
    }
    if (spec.schemes.empty()) {
        throw ValidationError("sweep needs at least one scheme");
    }
    if (spec.methods.empty()) {
        throw ValidationError("sweep needs at least one method");
    }
    if (std::set<SchemeKind>(spec.schemes.begin(), spec.schemes.end()).size() != spec.schemes.size()) {
        throw ValidationError("duplicate scheme in sweep");
    }
    if (std::set<Method>(spec.methods.begin(), spec.methods.end()).size() != spec.methods.size()) {
        throw ValidationError("duplicate method in sweep");
    }
    for (SchemeKind scheme : spec.schemes) {
        for (Method method : spec.methods) {
            if (is_blind(scheme) && method != Method::mc) {
                throw ValidationError("method '" + std::string(to_string(method)) +
                                      "' has no closed form for blind scheme '" + std::string(to_string(scheme)) +
                                      "'; use mc");
            }
        }
    }
    if (spec.trials == 0) {
        throw ValidationError("trials must be >= 1");
    }
    if (spec.workers == 0) {
        throw ValidationError("workers must be >= 1");
    }
    if (!(spec.rel_tol > 0.0)) {
        throw ValidationError("rel_tol must be positive");
    }
    const bool needs_analytic = std::any_of(spec.methods.begin(), spec.methods.end(),
                                            [](Method m) { return m != Method::mc; });
    for (double v : spec.axis_values) {
        const SystemConfig c = config_at(spec, v);
        with_context(std::string(to_string(spec.axis)) + "=" + format_number(v) + ": ", [&] {
            secrecy::validate(c);
            if (needs_analytic && c.n_transmitters > analytic::kMaxTransmitters) {
                throw ValidationError("analytic methods support at most " +
                                      std::to_string(analytic::kMaxTransmitters) + " transmitters");
            }
            return 0;
        });
    }
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index) {
    // splitmix64 finaliser over (seed, index)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    validate(spec);
    const std::size_t n_points = spec.axis_values.size();
    const std::size_t n_schemes = spec.schemes.size();
    const std::size_t n_methods = spec.methods.size();
    std::vector<SweepRow> rows(n_points * n_schemes * n_methods);
    auto slot = [&](std::size_t i, std::size_t s, std::size_t m) -> SweepRow& {
        return rows[(i * n_schemes + s) * n_methods + m];
    };

    // Closed-form and quadrature evaluations are independent; spread them
    // over the workers.
    struct Task {
        std::size_t point, scheme, method;
    };
    std::vector<Task> analytic_tasks;
    for (std::size_t i = 0; i < n_points; ++i) {
        for (std::size_t s = 0; s < n_schemes; ++s) {
            for (std::size_t m = 0; m < n_methods; ++m) {
                if (spec.methods[m] != Method::mc) {
                    analytic_tasks.push_back({i, s, m});
                }
            }
        }
    }
    parallel_for(analytic_tasks.size(), spec.workers, [&](std::size_t k) {
        const Task& t = analytic_tasks[k];
        const double v = spec.axis_values[t.point];
        const SchemeKind scheme = spec.schemes[t.scheme];
        const Method method = spec.methods[t.method];
        const double sop = with_context(describe_point(spec.axis, v, scheme, method), [&] {
            return evaluate_analytic(config_at(spec, v), scheme, method, spec.rel_tol);
        });
        slot(t.point, t.scheme, t.method) = SweepRow{spec.axis, v, scheme, method, sop, std::nullopt, std::nullopt};
    });

    // Monte Carlo: one shared-draw run per point, parallel across trials.
    const auto mc_it = std::find(spec.methods.begin(), spec.methods.end(), Method::mc);
    if (mc_it != spec.methods.end()) {
        const std::size_t m = static_cast<std::size_t>(mc_it - spec.methods.begin());
        for (std::size_t i = 0; i < n_points; ++i) {
            const double v = spec.axis_values[i];
            const auto estimates = with_context(describe_point(spec.axis, v, spec.schemes.front(), Method::mc), [&] {
                return simulate_sop(config_at(spec, v), spec.schemes, spec.trials, point_seed(spec.seed, i),
                                    spec.workers);
            });
            for (std::size_t s = 0; s < n_schemes; ++s) {
                slot(i, s, m) = SweepRow{spec.axis,          v, spec.schemes[s], Method::mc, estimates[s].estimate,
                                         estimates[s].std_error, estimates[s].trials};
            }
        }
    }
    return rows;
}

std::string format_csv(std::span<const SweepRow> rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += to_string(r.axis);
        out += ',';
        out += format_number(r.axis_value);
        out += ',';
        out += to_string(r.scheme);
        out += ',';
        out += to_string(r.method);
        out += ',';
        out += format_number(r.sop);
        out += ',';
        if (r.std_error) {
            out += format_number(*r.std_error);
        }
        out += ',';
        if (r.trials) {
            out += std::to_string(*r.trials);
        }
        out += '\n';
    }
    return out;
}

std::vector<CompareRow> compare_report(const SweepSpec& spec) {
    if (spec.axis_values.size() != 1) {
        throw ValidationError("compare report needs exactly one configuration point");
    }
    const bool has_mc = std::find(spec.methods.begin(), spec.methods.end(), Method::mc) != spec.methods.end();
    const bool has_reference = std::any_of(spec.methods.begin(), spec.methods.end(),
                                           [](Method m) { return m != Method::mc; });
    if (!has_mc || !has_reference) {
        throw ValidationError("compare report needs mc and at least one of analytic, asymptotic");
    }
    const auto rows = run_sweep(spec);
    std::vector<CompareRow> out;
    for (const auto& mc : rows) {
        if (mc.method != Method::mc) {
            continue;
        }
        for (const auto& ref : rows) {
            if (ref.scheme != mc.scheme || ref.method == Method::mc) {
                continue;
            }
            const double diff = ref.sop - mc.sop;
            double z = 0.0;
            if (*mc.std_error > 0.0) {
                z = diff / *mc.std_error;
            } else if (diff != 0.0) {
                // All or no trials in outage: any disagreement is unbounded in z.
                z = std::copysign(std::numeric_limits<double>::infinity(), diff);
            }
            out.push_back(CompareRow{mc.scheme, ref.method, ref.sop, mc.sop, *mc.std_error, *mc.trials, z,
                                     std::abs(z) <= kCompareZLimit});
        }
    }
    return out;
}

std::string format_compare_csv(std::span<const CompareRow> rows) {
    std::string out(kCompareCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += to_string(r.scheme);
        out += ',';
        out += to_string(r.reference_method);
        out += ',';
        out += format_number(r.reference);
        out += ',';
        out += format_number(r.mc);
        out += ',';
        out += format_number(r.std_error);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += format_number(r.z_score);
        out += ',';
        out += r.pass ? "pass" : "fail";
        out += '\n';
    }
    return out;
}

std::vector<double> gamma_t_grid_db() {
    std::vector<double> grid;
    for (int db = 0; db <= 60; db += 2) {
        grid.push_back(db);
    }
    return grid;
}

std::vector<std::string_view> preset_names() { return {"fig2", "fig3", "fig4"}; }

std::vector<PresetMember> preset(std::string_view name, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                                 double rel_tol) {
    struct Variant {
        std::string label;
        SystemConfig config;
    };
    std::vector<Variant> variants;
    SystemConfig base;  // reference channel setup, N = 6, s = 0.99, Phi = 0.1
    if (name == "fig2") {
        for (double s : {0.5, 0.99}) {
            SystemConfig c = base;
            c.backhaul_prob = s;
            variants.push_back({"s" + format_number(s), c});
        }
    } else if (name == "fig3") {
        for (int n : {2, 6}) {
            SystemConfig c = base;
            c.n_transmitters = n;
            variants.push_back({"N" + std::to_string(n), c});
        }
    } else if (name == "fig4") {
        for (double phi : {0.01, 0.1}) {
            SystemConfig c = base;
            c.primary_outage_threshold = phi;
            variants.push_back({"phi" + format_number(phi), c});
        }
    } else {
        throw ValidationError("unknown preset '" + std::string(name) + "' (expected fig2, fig3 or fig4)");
    }

    std::vector<PresetMember> members;
    for (const auto& v : variants) {
        SweepSpec known;
        known.axis = SweepAxis::gamma_t_db;
        known.axis_values = gamma_t_grid_db();
        known.fixed = v.config;
        known.schemes = {SchemeKind::sts_known, SchemeKind::ots_known};
        known.methods = {Method::analytic, Method::asymptotic, Method::mc};
        known.trials = trials;
        known.seed = seed;
        known.workers = workers;
        known.rel_tol = rel_tol;
        SweepSpec blind = known;
        blind.schemes = {SchemeKind::sts_blind, SchemeKind::ots_blind};
        blind.methods = {Method::mc};
        members.push_back({v.label, std::move(known), std::move(blind)});
    }
    return members;
}

std::vector<SweepRow> run_preset_member(const PresetMember& member) {
    const auto known = run_sweep(member.known);
    const auto blind = run_sweep(member.blind);
    const std::size_t points = member.known.axis_values.size();
    const std::size_t known_per_point = known.size() / points;
    const std::size_t blind_per_point = blind.size() / points;
    std::vector<SweepRow> rows;
    rows.reserve(known.size() + blind.size());
    for (std::size_t i = 0; i < points; ++i) {
        rows.insert(rows.end(), known.begin() + i * known_per_point, known.begin() + (i + 1) * known_per_point);
        rows.insert(rows.end(), blind.begin() + i * blind_per_point, blind.begin() + (i + 1) * blind_per_point);
    }
    return rows;
}

std::string gnuplot_script(std::string_view csv_path, std::span<const SweepRow> rows) {
    std::vector<std::pair<SchemeKind, Method>> series;
    for (const auto& r : rows) {
        const std::pair<SchemeKind, Method> key{r.scheme, r.method};
        if (std::find(series.begin(), series.end(), key) == series.end()) {
            series.push_back(key);
        }
    }
    const std::string_view axis = rows.empty() ? std::string_view("gamma_t_db") : to_string(rows.front().axis);
    std::ostringstream os;
    os << "set datafile separator ','\n";
    os << "set logscale y\n";
    os << "set xlabel '" << axis << "'\n";
    os << "set ylabel 'secrecy outage probability'\n";
    os << "set key outside right\n";
    os << "plot \\\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto scheme = to_string(series[k].first);
        const auto method = to_string(series[k].second);
        const char* style = series[k].second == Method::mc ? "points" : "lines";
        os << "  '" << csv_path << "' every ::1 using 2:(strcol(3) eq '" << scheme << "' && strcol(4) eq '"
           << method << "' ? $5 : 1/0) with " << style << " title '" << scheme << " " << method << "'"
           << (k + 1 < series.size() ? ", \\\n" : "\n");
    }
    return os.str();
}

}  // namespace secrecy::sweep
