#include "secrecy/montecarlo.hpp"

#include <array>
#include <cmath>
#include <thread>

#include "secrecy/errors.hpp"

namespace secrecy {

namespace {

constexpr unsigned bit(SchemeKind scheme) { return 1u << static_cast<unsigned>(scheme); }

constexpr unsigned kAllOutage =
    bit(SchemeKind::sts_known) | bit(SchemeKind::ots_known) | bit(SchemeKind::sts_blind) | bit(SchemeKind::ots_blind);

using Counts = std::array<std::uint64_t, 4>;

Counts run_range(const DerivedParams& p, const SystemConfig& config, std::uint64_t seed, std::uint64_t begin,
                 std::uint64_t end) {
    Counts counts{};
    for (std::uint64_t i = begin; i < end; ++i) {
        PhiloxStream rng({seed, i});
        const TrialOutcome outcome = sample_trial_all(p, config, rng);
        for (std::size_t k = 0; k < counts.size(); ++k) {
            counts[k] += (outcome.outage_mask >> k) & 1u;
        }
    }
    return counts;
}

}  // namespace

std::string_view to_string(SchemeKind scheme) {
    switch (scheme) {
        case SchemeKind::sts_known: return "sts_known";
        case SchemeKind::ots_known: return "ots_known";
        case SchemeKind::sts_blind: return "sts_blind";
        case SchemeKind::ots_blind: return "ots_blind";
    }
    return "unknown";
}

std::optional<SchemeKind> parse_scheme(std::string_view name) {
    for (SchemeKind s : kAllSchemes) {
        if (to_string(s) == name) {
            return s;
        }
    }
    return std::nullopt;
}

bool is_blind(SchemeKind scheme) {
    return scheme == SchemeKind::sts_blind || scheme == SchemeKind::ots_blind;
}

SopEstimate make_estimate(std::uint64_t outages, std::uint64_t trials) {
    if (trials == 0) {
        throw ValidationError("trials must be >= 1");
    }
    SopEstimate e;
    e.trials = trials;
    e.outages = outages;
    e.estimate = static_cast<double>(outages) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(trials));
    return e;
}

bool TrialOutcome::outage(SchemeKind scheme) const { return (outage_mask & bit(scheme)) != 0; }

TrialOutcome sample_trial_all(const DerivedParams& p, const SystemConfig& config, PhiloxStream& rng) {
    if (p.gamma_s <= 0.0) {
        return {kAllOutage};
    }
    const double s = config.backhaul_prob;
    const double i_d = p.gamma_t * rng.exponential(p.lambda_td) + 1.0;
    const double i_e = p.gamma_t * rng.exponential(p.lambda_te) + 1.0;

    // Secrecy ratio (1 + G_SD)/(1 + G_SE); outage iff ratio < rho, which is
    // log2(ratio) < R_th.
    bool any_active = false;
    double sts_known_gain = -1.0, sts_known_ratio = 0.0;
    double ots_known_ratio = -1.0;
    double sts_blind_gain = -1.0, sts_blind_ratio = 0.0;
    bool sts_blind_active = false;
    double ots_blind_ratio = -1.0;
    bool ots_blind_active = false;

    for (int n = 0; n < config.n_transmitters; ++n) {
        const bool active = rng.uniform() < s;
        const double g_d = rng.exponential(p.lambda_sd);
        const double g_e = rng.exponential(p.lambda_se);
        const double ratio = (1.0 + p.gamma_s * g_d / i_d) / (1.0 + p.gamma_s * g_e / i_e);
        if (g_d > sts_blind_gain) {
            sts_blind_gain = g_d;
            sts_blind_ratio = ratio;
            sts_blind_active = active;
        }
        if (ratio > ots_blind_ratio) {
            ots_blind_ratio = ratio;
            ots_blind_active = active;
        }
        if (!active) {
            continue;
        }
        any_active = true;
        if (g_d > sts_known_gain) {
            sts_known_gain = g_d;
            sts_known_ratio = ratio;
        }
        if (ratio > ots_known_ratio) {
            ots_known_ratio = ratio;
        }
    }

    unsigned mask = 0;
    if (!any_active || sts_known_ratio < p.rho) mask |= bit(SchemeKind::sts_known);
    if (!any_active || ots_known_ratio < p.rho) mask |= bit(SchemeKind::ots_known);
    if (!sts_blind_active || sts_blind_ratio < p.rho) mask |= bit(SchemeKind::sts_blind);
    if (!ots_blind_active || ots_blind_ratio < p.rho) mask |= bit(SchemeKind::ots_blind);
    return {mask};
}

bool sample_trial(const DerivedParams& p, const SystemConfig& config, SchemeKind scheme, PhiloxStream& rng) {
    return sample_trial_all(p, config, rng).outage(scheme);
}

std::vector<SopEstimate> simulate_sop(const SystemConfig& config, std::span<const SchemeKind> schemes,
                                      std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    if (trials == 0) {
        throw ValidationError("trials must be >= 1");
    }
    if (workers == 0) {
        throw ValidationError("workers must be >= 1");
    }
    const DerivedParams p = derive(config);

    Counts totals{};
    if (p.gamma_s <= 0.0) {
        totals.fill(trials);
    } else {
        const std::uint64_t w = std::min<std::uint64_t>(workers, trials);
        std::vector<Counts> partial(w);
        std::vector<std::thread> threads;
        threads.reserve(w);
        for (std::uint64_t k = 0; k < w; ++k) {
            const std::uint64_t begin = trials * k / w;
            const std::uint64_t end = trials * (k + 1) / w;
            threads.emplace_back([&, k, begin, end] { partial[k] = run_range(p, config, seed, begin, end); });
        }
        for (auto& t : threads) {
            t.join();
        }
        for (const auto& c : partial) {
            for (std::size_t i = 0; i < totals.size(); ++i) {
                totals[i] += c[i];
            }
        }
    }

    std::vector<SopEstimate> out;
    out.reserve(schemes.size());
    for (SchemeKind scheme : schemes) {
        out.push_back(make_estimate(totals[static_cast<std::size_t>(scheme)], trials));
    }
    return out;
}

SopEstimate simulate_sop(const SystemConfig& config, SchemeKind scheme, std::uint64_t trials, std::uint64_t seed,
                         unsigned workers) {
    const SchemeKind one[] = {scheme};
    return simulate_sop(config, std::span<const SchemeKind>(one), trials, seed, workers).front();
}

}  // namespace secrecy
