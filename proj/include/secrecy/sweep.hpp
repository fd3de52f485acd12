#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "secrecy/montecarlo.hpp"
#include "secrecy/params.hpp"

namespace secrecy::sweep {

enum class SweepAxis { gamma_t_db, s, phi, n_transmitters };
enum class Method { analytic, asymptotic, mc };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(Method method);
std::optional<SweepAxis> parse_axis(std::string_view name);
std::optional<Method> parse_method(std::string_view name);

/// One swept parameter evaluated for every (scheme, method) pair.
struct SweepSpec {
    SweepAxis axis = SweepAxis::gamma_t_db;
    std::vector<double> axis_values;
    SystemConfig fixed;  ///< the swept field is overwritten per point
    std::vector<SchemeKind> schemes;
    std::vector<Method> methods;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    double rel_tol = 1e-8;  ///< optimal-selection quadrature tolerance
};

/// Row layout of the sweep CSV. std_error and trials are set iff method == mc.
struct SweepRow {
    SweepAxis axis;
    double axis_value;
    SchemeKind scheme;
    Method method;
    double sop;
    std::optional<double> std_error;
    std::optional<std::uint64_t> trials;
};

/// Throws ValidationError for empty or non-increasing axis values, invalid
/// per-point configs, analytic on a blind scheme, or asymptotic on a blind
/// scheme.
void validate(const SweepSpec& spec);

SystemConfig config_at(const SweepSpec& spec, double axis_value);

/// Seed for the Monte Carlo run at axis index `index`. All schemes at one
/// point share draws; different points use unrelated streams.
std::uint64_t point_seed(std::uint64_t seed, std::size_t index);

/// Rows ordered by axis value, then scheme, then method, the latter two in
/// the order listed. Evaluation errors are rethrown with the offending point.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr std::string_view kCsvHeader = "axis,axis_value,scheme,method,sop,std_error,trials";

/// Comma separated, LF terminated, 12 significant digits.
std::string format_csv(std::span<const SweepRow> rows);

/// Analytic (or asymptotic) value against the Monte Carlo estimate.
struct CompareRow {
    SchemeKind scheme;
    Method reference_method;
    double reference;
    double mc;
    double std_error;
    std::uint64_t trials;
    double z_score;  ///< (reference - mc) / std_error
    bool pass;       ///< |z| <= kCompareZLimit
};

inline constexpr double kCompareZLimit = 4.0;

inline constexpr std::string_view kCompareCsvHeader = "scheme,method,reference,mc,std_error,trials,z_score,pass";

/// Requires exactly one axis value and methods containing mc plus analytic
/// and/or asymptotic.
std::vector<CompareRow> compare_report(const SweepSpec& spec);

std::string format_compare_csv(std::span<const CompareRow> rows);

/// Built-in figure reproductions. Each preset has members (one curve family
/// per fixed parameter value) that sweep gamma_t_db over 0..60 dB in 2 dB
/// steps.
struct PresetMember {
    std::string label;  ///< e.g. "s0.5"; used in output file names
    SweepSpec known;    ///< known-backhaul schemes with analytic, asymptotic, mc
    SweepSpec blind;    ///< blind schemes with mc
};

std::vector<std::string_view> preset_names();

/// Throws ValidationError for an unknown name.
std::vector<PresetMember> preset(std::string_view name, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                                 double rel_tol);

/// Runs both halves of a member and interleaves them per axis point: known
/// scheme rows before blind scheme rows.
std::vector<SweepRow> run_preset_member(const PresetMember& member);

std::vector<double> gamma_t_grid_db();

/// Gnuplot script plotting `csv_path`, one series per (scheme, method).
std::string gnuplot_script(std::string_view csv_path, std::span<const SweepRow> rows);

}  // namespace secrecy::sweep
