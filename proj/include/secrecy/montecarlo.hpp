#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "secrecy/params.hpp"
#include "secrecy/rng.hpp"

namespace secrecy {

/// Transmitter-selection rule. The *_known variants select among the
/// transmitters whose backhaul is up; the *_blind variants select among all
/// transmitters and fail when the chosen backhaul is down.
enum class SchemeKind { sts_known, ots_known, sts_blind, ots_blind };

inline constexpr SchemeKind kAllSchemes[] = {SchemeKind::sts_known, SchemeKind::ots_known,
                                             SchemeKind::sts_blind, SchemeKind::ots_blind};

std::string_view to_string(SchemeKind scheme);
std::optional<SchemeKind> parse_scheme(std::string_view name);
bool is_blind(SchemeKind scheme);

struct SopEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
};

SopEstimate make_estimate(std::uint64_t outages, std::uint64_t trials);

/// Outage flags of one channel realisation, evaluated for every scheme on
/// the same draws. Bit i corresponds to kAllSchemes[i].
struct TrialOutcome {
    unsigned outage_mask = 0;
    bool outage(SchemeKind scheme) const;
};

/// One channel realisation.
///
/// Draw order (stream version 1): |h_TD|^2, |h_TE|^2, then for each branch
/// n = 1..N the backhaul uniform, |h_SnD|^2 and |h_SnE|^2. Ties in a
/// selection argmax go to the lowest branch index. If gamma_s == 0 every
/// scheme is in outage and nothing is drawn.
TrialOutcome sample_trial_all(const DerivedParams& p, const SystemConfig& config, PhiloxStream& rng);

/// True when the trial ends in secrecy outage under `scheme`.
bool sample_trial(const DerivedParams& p, const SystemConfig& config, SchemeKind scheme, PhiloxStream& rng);

/// Monte Carlo SOP. Trial i consumes substream (seed, i), so the result is
/// identical for any number of workers.
SopEstimate simulate_sop(const SystemConfig& config, SchemeKind scheme, std::uint64_t trials,
                         std::uint64_t seed, unsigned workers);

/// Same as simulate_sop for several schemes at once, sharing every draw.
std::vector<SopEstimate> simulate_sop(const SystemConfig& config, std::span<const SchemeKind> schemes,
                                      std::uint64_t trials, std::uint64_t seed, unsigned workers);

}  // namespace secrecy
