#include "secrecy/config_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "secrecy/errors.hpp"

namespace secrecy {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ValidationError(std::string(what) + ": not a number: '" + std::string(text) + "'");
    }
    return value;
}

long long parse_integer(std::string_view text, std::string_view what) {
    text = trim(text);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ValidationError(std::string(what) + ": not an integer: '" + std::string(text) + "'");
    }
    return value;
}

void apply_setting(SystemConfig& c, std::string_view key, std::string_view value) {
    key = trim(key);
    if (key == "n_transmitters") {
        const long long n = parse_integer(value, key);
        if (n < 1 || n > 1'000'000) {
            throw ValidationError("n_transmitters out of range: " + std::to_string(n));
        }
        c.n_transmitters = static_cast<int>(n);
    } else if (key == "backhaul_prob") {
        c.backhaul_prob = parse_double(value, key);
    } else if (key == "primary_outage_threshold") {
        c.primary_outage_threshold = parse_double(value, key);
    } else if (key == "primary_rate_threshold") {
        c.primary_rate_threshold = parse_double(value, key);
    } else if (key == "secrecy_rate_threshold") {
        c.secrecy_rate_threshold = parse_double(value, key);
    } else if (key == "gamma_t_db") {
        c.gamma_t_db = parse_double(value, key);
    } else if (key == "mean_power_tr_db") {
        c.mean_power_db.tr = parse_double(value, key);
    } else if (key == "mean_power_td_db") {
        c.mean_power_db.td = parse_double(value, key);
    } else if (key == "mean_power_sd_db") {
        c.mean_power_db.sd = parse_double(value, key);
    } else if (key == "mean_power_sr_db") {
        c.mean_power_db.sr = parse_double(value, key);
    } else if (key == "mean_power_te_db") {
        c.mean_power_db.te = parse_double(value, key);
    } else if (key == "mean_power_se_db") {
        c.mean_power_db.se = parse_double(value, key);
    } else {
        throw ValidationError("unknown config key '" + std::string(key) + "'");
    }
}

SystemConfig parse_config(std::istream& in, SystemConfig base) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        try {
            apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
        } catch (const ValidationError& e) {
            throw ValidationError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

SystemConfig load_config(const std::filesystem::path& path, SystemConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config file '" + path.string() + "'");
    }
    return parse_config(in, base);
}

}  // namespace secrecy
