// SPDX-License-Identifier: Apache-2.0
//
// optbf - multiuser downlink transmit beamforming library
// Copyright (C) 2026 The optbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "optbf/sim/config.hpp"

#include "optbf/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace optbf::sim {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view text, std::string_view key) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError("invalid number '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

template <class Int>
Int to_integer(std::string_view text, std::string_view key) {
  Int value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid integer '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string format_db(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

void check_known(const std::string& key) {
  const auto& keys = valid_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw ConfigError("unknown key '" + key + "'; valid keys: " + join(keys, ", "));
  }
}

}  // namespace

std::string_view to_string(SweepScheme scheme) {
  switch (scheme) {
    case SweepScheme::kMrt:
      return "mrt";
    case SweepScheme::kZf:
      return "zf";
    case SweepScheme::kMmse:
      return "mmse";
    case SweepScheme::kOracle:
      return "oracle";
    case SweepScheme::kP1Reference:
      return "p1-reference";
  }
  return "unknown";
}

SweepScheme parse_sweep_scheme(std::string_view text) {
  for (auto s : {SweepScheme::kMrt, SweepScheme::kZf, SweepScheme::kMmse, SweepScheme::kOracle,
                 SweepScheme::kP1Reference}) {
    if (text == to_string(s)) return s;
  }
  throw ConfigError("unknown scheme '" + std::string(text) +
                    "'; valid schemes: mrt, zf, mmse, oracle, p1-reference");
}

const std::vector<std::string>& valid_keys() {
  static const std::vector<std::string> keys = {
      "n",     "k",       "snr", "trials", "seed", "schemes", "power", "utility",
      "out",   "oracle_resolution", "threads"};
  return keys;
}

std::vector<double> parse_snr_grid(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ConfigError("snr grid is empty");
  std::vector<double> grid;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("snr range must be start:step:stop, got '" + std::string(text) + "'");
    const double start = to_double(parts[0], "snr");
    const double step = to_double(parts[1], "snr");
    const double stop = to_double(parts[2], "snr");
    if (step == 0.0 || (stop - start) / step < 0.0) {
      throw ConfigError("snr range step must move from start toward stop");
    }
    const double span = (stop - start) / step;
    const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
    if (count > 100000) throw ConfigError("snr range has too many points");
    for (long i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  } else {
    for (auto item : split(text, ',')) {
      if (item.empty()) throw ConfigError("empty entry in snr list");
      grid.push_back(to_double(item, "snr"));
    }
  }
  return grid;
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> values;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    ++line_no;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + " is not 'key = value'");
    }
    std::string key = normalize_key(std::string(trim(line.substr(0, eq))));
    const std::string value(trim(line.substr(eq + 1)));
    check_known(key);
    values[key] = value;
  }
  return values;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

SweepConfig config_from_values(const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) check_known(key);

  auto get = [&](const std::string& key) -> std::optional<std::string_view> {
    const auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return std::string_view(it->second);
  };
  auto require = [&](const std::string& key) {
    const auto v = get(key);
    if (!v) throw ConfigError("missing required field '" + key + "'");
    return *v;
  };

  SweepConfig cfg;
  cfg.antennas = to_integer<int>(require("n"), "n");
  cfg.users = to_integer<int>(require("k"), "k");
  cfg.snr_db = parse_snr_grid(get("snr").value_or("-10:5:30"));
  if (auto v = get("trials")) cfg.trials = to_integer<int>(*v, "trials");
  if (auto v = get("seed")) cfg.seed = to_integer<std::uint64_t>(*v, "seed");

  for (auto item : split(get("schemes").value_or("mrt,zf,mmse"), ',')) {
    const SweepScheme s = parse_sweep_scheme(item);
    if (std::find(cfg.schemes.begin(), cfg.schemes.end(), s) != cfg.schemes.end()) {
      throw ConfigError("scheme '" + std::string(item) + "' listed twice");
    }
    cfg.schemes.push_back(s);
  }
  try {
    if (auto v = get("power")) cfg.power = parse_power_policy(*v);
    if (auto v = get("utility")) cfg.utility = parse_utility(*v).kind();
  } catch (const optbf::ContractViolation& e) {
    throw ConfigError(e.what());
  }
  if (auto v = get("out")) cfg.output_path = std::string(*v);
  if (auto v = get("oracle_resolution")) cfg.oracle_resolution = to_integer<int>(*v, "oracle_resolution");
  if (auto v = get("threads")) cfg.threads = to_integer<unsigned>(*v, "threads");

  validate(cfg);
  return cfg;
}

void validate(const SweepConfig& cfg) {
  if (cfg.antennas < 1) throw ConfigError("n must be at least 1");
  if (cfg.users < 1) throw ConfigError("k must be at least 1");
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (cfg.snr_db.empty()) throw ConfigError("snr grid is empty");
  if (cfg.schemes.empty()) throw ConfigError("no schemes selected");
  const bool oracle =
      std::find(cfg.schemes.begin(), cfg.schemes.end(), SweepScheme::kOracle) != cfg.schemes.end();
  if (oracle && cfg.users > 3) {
    throw ConfigError("scheme 'oracle' needs k <= 3, got k = " + std::to_string(cfg.users));
  }
  if (cfg.oracle_resolution < 2) throw ConfigError("oracle_resolution must be at least 2");
}

std::vector<std::pair<std::string, std::string>> describe(const SweepConfig& cfg) {
  std::vector<std::string> snr;
  for (double v : cfg.snr_db) snr.push_back(format_db(v));
  std::vector<std::string> schemes;
  for (auto s : cfg.schemes) schemes.emplace_back(to_string(s));
  return {
      {"n", std::to_string(cfg.antennas)},
      {"k", std::to_string(cfg.users)},
      {"snr", join(snr, ",")},
      {"trials", std::to_string(cfg.trials)},
      {"seed", std::to_string(cfg.seed)},
      {"schemes", join(schemes, ",")},
      {"power", std::string(to_string(cfg.power))},
      {"utility", std::string(to_string(cfg.utility))},
      {"out", cfg.output_path.empty() ? "-" : cfg.output_path},
      {"oracle_resolution", std::to_string(cfg.oracle_resolution)},
  };
}

ParseOutcome parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Monte Carlo sum-rate sweep for multiuser downlink beamforming", "optbf-sim"};

  std::map<std::string, std::string> flags;
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value config file; flags override it");
  const std::map<std::string, std::string> help = {
      {"n", "transmit antennas N (required)"},
      {"k", "users K (required)"},
      {"snr", "P/sigma2 grid in dB, start:step:stop or a,b,c (default -10:5:30)"},
      {"trials", "channel draws per grid point (default 1000)"},
      {"seed", "base seed; trial t uses stream (seed, t) (default 1)"},
      {"schemes", "comma list of mrt, zf, mmse, oracle, p1-reference (default mrt,zf,mmse)"},
      {"power", "equal or waterfill (default equal)"},
      {"utility", "sumrate or minsinr (default sumrate)"},
      {"out", "CSV path; omitted writes CSV to stdout and the summary to stderr"},
      {"oracle_resolution", "grid points per simplex dimension for oracle (default 64)"},
      {"threads", "worker threads, 0 = hardware concurrency (default 0)"},
  };
  for (const auto& key : valid_keys()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    app.add_option_function<std::string>(
        flag, [&flags, key](const std::string& v) { flags[key] = v; }, help.at(key));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    ParseOutcome out;
    out.help_requested = true;
    out.help = app.help();
    return out;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  std::map<std::string, std::string> values;
  if (!config_path.empty()) values = read_config_file(config_path);
  for (const auto& [key, value] : flags) values[key] = value;

  ParseOutcome out;
  out.config = config_from_values(values);
  return out;
}

}  // namespace optbf::sim
