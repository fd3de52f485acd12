// sopcalc: secrecy outage probability sweeps and analytic-vs-simulation
// reports for transmitter selection with unreliable backhaul.
//
// Exit codes: 0 success, 1 validation error, 2 numeric error,
// 3 comparison report with |z| > 4.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "secrecy/config_file.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/sweep.hpp"

namespace {

using namespace secrecy;
using namespace secrecy::sweep;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitCompareFailed = 3;

struct Options {
    std::string preset;
    std::string config_path;
    std::string axis = "gamma_t_db";
    std::string values;
    std::vector<std::string> schemes;
    std::vector<std::string> methods;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
    double rel_tol = 1e-8;
    bool emit_gnuplot = false;

    std::optional<int> n_transmitters;
    std::optional<double> backhaul_prob;
    std::optional<double> phi;
    std::optional<double> beta;
    std::optional<double> r_th;
    std::optional<double> gamma_t_db;
    std::string mean_power_db;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(current);
    return parts;
}

// "a,b,c" or an inclusive range "start:stop:step".
std::vector<double> parse_values(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw ValidationError("--values range must be start:stop:step");
        }
        const double start = parse_double(parts[0], "--values start");
        const double stop = parse_double(parts[1], "--values stop");
        const double step = parse_double(parts[2], "--values step");
        if (!(step > 0.0) || stop < start) {
            throw ValidationError("--values range needs step > 0 and stop >= start");
        }
        std::vector<double> values;
        const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
        for (long long k = 0; k <= count; ++k) {
            values.push_back(start + static_cast<double>(k) * step);
        }
        return values;
    }
    std::vector<double> values;
    for (const auto& part : split(text, ',')) {
        values.push_back(parse_double(part, "--values"));
    }
    return values;
}

SystemConfig build_config(const Options& o) {
    SystemConfig config;
    if (!o.config_path.empty()) {
        config = load_config(o.config_path, config);
    }
    if (o.n_transmitters) config.n_transmitters = *o.n_transmitters;
    if (o.backhaul_prob) config.backhaul_prob = *o.backhaul_prob;
    if (o.phi) config.primary_outage_threshold = *o.phi;
    if (o.beta) config.primary_rate_threshold = *o.beta;
    if (o.r_th) config.secrecy_rate_threshold = *o.r_th;
    if (o.gamma_t_db) config.gamma_t_db = *o.gamma_t_db;
    if (!o.mean_power_db.empty()) {
        const auto parts = split(o.mean_power_db, ',');
        if (parts.size() != 6) {
            throw ValidationError("--mean-power-db expects six comma-separated values (tr,td,sd,sr,te,se)");
        }
        const char* keys[] = {"mean_power_tr_db", "mean_power_td_db", "mean_power_sd_db",
                              "mean_power_sr_db", "mean_power_te_db", "mean_power_se_db"};
        for (std::size_t i = 0; i < 6; ++i) {
            apply_setting(config, keys[i], parts[i]);
        }
    }
    return config;
}

std::vector<SchemeKind> parse_schemes(const std::vector<std::string>& names,
                                      std::vector<SchemeKind> fallback) {
    if (names.empty()) {
        return fallback;
    }
    std::vector<SchemeKind> out;
    for (const auto& n : names) {
        const auto s = parse_scheme(n);
        if (!s) {
            throw ValidationError("unknown scheme '" + n + "'");
        }
        out.push_back(*s);
    }
    return out;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names, std::vector<Method> fallback) {
    if (names.empty()) {
        return fallback;
    }
    std::vector<Method> out;
    for (const auto& n : names) {
        const auto m = parse_method(n);
        if (!m) {
            throw ValidationError("unknown method '" + n + "'");
        }
        out.push_back(*m);
    }
    return out;
}

// Write only after the full table has been produced.
void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open output file '" + path + "'");
    }
    out << text;
}

std::string member_path(const std::string& out, const std::string& label) {
    const std::filesystem::path p(out);
    const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
    return (p.parent_path() / (p.stem().string() + "_" + label + ext)).string();
}

void emit_gnuplot(const std::string& csv_path, const std::vector<SweepRow>& rows) {
    write_output(csv_path + ".gp", gnuplot_script(csv_path, rows));
}

SweepSpec base_spec(const Options& o, std::vector<SchemeKind> default_schemes, std::vector<Method> default_methods) {
    SweepSpec spec;
    const auto axis = parse_axis(o.axis);
    if (!axis) {
        throw ValidationError("unknown axis '" + o.axis + "'");
    }
    spec.axis = *axis;
    spec.fixed = build_config(o);
    spec.schemes = parse_schemes(o.schemes, std::move(default_schemes));
    spec.methods = parse_methods(o.methods, std::move(default_methods));
    spec.trials = o.trials;
    spec.seed = o.seed;
    spec.workers = o.workers;
    spec.rel_tol = o.rel_tol;
    return spec;
}

int run_sweep_command(const Options& o) {
    if (!o.preset.empty()) {
        if (o.out.empty()) {
            throw ValidationError("--preset writes one CSV per curve family and needs --out");
        }
        for (const auto& member : preset(o.preset, o.trials, o.seed, o.workers, o.rel_tol)) {
            const auto rows = run_preset_member(member);
            const std::string path = member_path(o.out, member.label);
            write_output(path, format_csv(rows));
            if (o.emit_gnuplot) {
                emit_gnuplot(path, rows);
            }
            std::cerr << "wrote " << path << "\n";
        }
        return kExitOk;
    }
    SweepSpec spec = base_spec(o, {SchemeKind::sts_known, SchemeKind::ots_known}, {Method::analytic});
    if (o.values.empty()) {
        throw ValidationError("--values is required without --preset");
    }
    spec.axis_values = parse_values(o.values);
    const auto rows = run_sweep(spec);
    write_output(o.out, format_csv(rows));
    if (o.emit_gnuplot) {
        if (o.out.empty()) {
            throw ValidationError("--emit-gnuplot needs --out");
        }
        emit_gnuplot(o.out, rows);
    }
    return kExitOk;
}

int run_compare_command(const Options& o) {
    SweepSpec spec = base_spec(o, {SchemeKind::sts_known, SchemeKind::ots_known}, {Method::analytic, Method::mc});
    spec.axis = SweepAxis::gamma_t_db;
    spec.axis_values = {spec.fixed.gamma_t_db};
    const auto rows = compare_report(spec);
    write_output(o.out, format_compare_csv(rows));
    for (const auto& r : rows) {
        if (!r.pass) {
            return kExitCompareFailed;
        }
    }
    return kExitOk;
}

void add_common(CLI::App& cmd, Options& o) {
    cmd.add_option("--config", o.config_path, "key=value config file");
    cmd.add_option("--scheme", o.schemes, "sts_known, ots_known, sts_blind, ots_blind (repeatable)");
    cmd.add_option("--method", o.methods, "analytic, asymptotic, mc (repeatable)");
    cmd.add_option("--trials", o.trials, "Monte Carlo trials per point");
    cmd.add_option("--seed", o.seed, "Monte Carlo seed");
    cmd.add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    cmd.add_option("--out", o.out, "output CSV path (stdout if omitted)");
    cmd.add_option("--rel-tol", o.rel_tol, "relative tolerance of the optimal-selection quadrature");
    cmd.add_option("--n-transmitters", o.n_transmitters, "number of small-cell transmitters N");
    cmd.add_option("--backhaul-prob", o.backhaul_prob, "backhaul success probability s");
    cmd.add_option("--phi", o.phi, "primary outage threshold");
    cmd.add_option("--beta", o.beta, "primary rate threshold, bits/s/Hz");
    cmd.add_option("--rth", o.r_th, "secrecy rate threshold, bits/s/Hz");
    cmd.add_option("--gamma-t-db", o.gamma_t_db, "primary transmit SNR in dB");
    cmd.add_option("--mean-power-db", o.mean_power_db, "six mean channel powers in dB: tr,td,sd,sr,te,se");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy outage probability of transmitter selection with unreliable backhaul"};
    app.require_subcommand(1);
    Options o;

    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a parameter sweep and emit a CSV table");
    add_common(*sweep_cmd, o);
    sweep_cmd->add_option("--preset", o.preset, "built-in figure sweep: fig2, fig3, fig4");
    sweep_cmd->add_option("--axis", o.axis, "gamma_t_db, s, phi or n_transmitters");
    sweep_cmd->add_option("--values", o.values, "comma list or start:stop:step");
    sweep_cmd->add_flag("--emit-gnuplot", o.emit_gnuplot, "also write <out>.gp");

    auto* compare_cmd = app.add_subcommand("compare", "analytic vs Monte Carlo report at one point");
    add_common(*compare_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (sweep_cmd->parsed()) {
            return run_sweep_command(o);
        }
        return run_compare_command(o);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
