#pragma once

#include <filesystem>
#include <istream>
#include <string_view>

#include "secrecy/params.hpp"

namespace secrecy {

/// Sets one SystemConfig field from its textual key and value. Recognised
/// keys: n_transmitters, backhaul_prob, primary_outage_threshold,
/// primary_rate_threshold, secrecy_rate_threshold, gamma_t_db and
/// mean_power_{tr,td,sd,sr,te,se}_db.
void apply_setting(SystemConfig& config, std::string_view key, std::string_view value);

/// Reads `key = value` lines on top of `base`. Blank lines and anything
/// after '#' are ignored. Errors carry the line number.
SystemConfig parse_config(std::istream& in, SystemConfig base = {});
SystemConfig load_config(const std::filesystem::path& path, SystemConfig base = {});

double parse_double(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);

}  // namespace secrecy
