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

#include "optbf/sim/sweep.hpp"

#include "optbf/errors.hpp"
#include "optbf/p1solver.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

namespace optbf::sim {
namespace {

constexpr double kNoiseVariance = 1.0;

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct Outcome {
  std::optional<double> utility;
  double power_saving = 0.0;
};

Utility make_utility(UtilityKind kind) {
  return kind == UtilityKind::kMinSinr ? Utility::min_sinr() : Utility::sum_rate();
}

Outcome evaluate(const ChannelSet& ch, SweepScheme scheme, const SystemBudget& budget,
                 const SweepConfig& cfg, const Utility& u) {
  Outcome out;
  try {
    switch (scheme) {
      case SweepScheme::kMrt:
        out.utility = evaluate_scheme(ch, Scheme::kMrt, budget, cfg.power, u).utility;
        break;
      case SweepScheme::kZf:
        out.utility = evaluate_scheme(ch, Scheme::kZf, budget, cfg.power, u).utility;
        break;
      case SweepScheme::kMmse:
        out.utility = evaluate_scheme(ch, Scheme::kMmse, budget, cfg.power, u).utility;
        break;
      case SweepScheme::kOracle: {
        OracleOptions opts;
        opts.resolution = cfg.oracle_resolution;
        opts.threads = 1;
        out.utility = grid_oracle(ch, budget, u, opts).utility_value;
        break;
      }
      case SweepScheme::kP1Reference: {
        // Minimum power that reproduces the SINRs transmit MMSE reaches with the full budget.
        const SchemeEvaluation mmse = evaluate_scheme(ch, Scheme::kMmse, budget, cfg.power, u);
        if (!(mmse.sinrs.array() > 0.0).all()) return out;
        const P1Solution sol = solve_p1(ch, SinrTargets(mmse.sinrs));
        out.utility = u(sinr(ch, sol.beamformers()));
        out.power_saving = 1.0 - sol.total_power / budget.total_power();
        break;
      }
    }
  } catch (const InfeasibleError&) {
    out.utility.reset();
  } catch (const ConvergenceError&) {
    out.utility.reset();
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const auto trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t snrs = cfg.snr_db.size();
  const std::size_t schemes = cfg.schemes.size();
  const Utility u = make_utility(cfg.utility);

  // outcomes[(trial * snrs + s) * schemes + j]
  std::vector<Outcome> outcomes(trials * snrs * schemes);

  auto run_trial = [&](std::size_t t) {
    const ChannelSet ch =
        generate_rayleigh(cfg.seed, t, cfg.antennas, cfg.users, kNoiseVariance);
    for (std::size_t s = 0; s < snrs; ++s) {
      const SystemBudget budget = SystemBudget::from_snr_db(cfg.snr_db[s], kNoiseVariance);
      for (std::size_t j = 0; j < schemes; ++j) {
        outcomes[(t * snrs + s) * schemes + j] = evaluate(ch, cfg.schemes[j], budget, cfg, u);
      }
    }
  };

  unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t t = next++; t < trials; t = next++) {
            try {
              run_trial(t);
            } catch (...) {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
              next = trials;
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  // Aggregate in trial order so the result is independent of scheduling.
  SweepResult result;
  for (std::size_t s = 0; s < snrs; ++s) {
    for (std::size_t j = 0; j < schemes; ++j) {
      CompensatedSum sum;
      CompensatedSum saving;
      int ok = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const Outcome& o = outcomes[(t * snrs + s) * schemes + j];
        if (!o.utility) continue;
        sum.add(*o.utility);
        saving.add(o.power_saving);
        ++ok;
      }
      const double mean = ok > 0 ? sum.value() / ok : std::numeric_limits<double>::quiet_NaN();
      CompensatedSum squares;
      for (std::size_t t = 0; t < trials; ++t) {
        const Outcome& o = outcomes[(t * snrs + s) * schemes + j];
        if (o.utility) squares.add((*o.utility - mean) * (*o.utility - mean));
      }
      const double stderr_value =
          ok > 1 ? std::sqrt(squares.value() / (ok - 1) / ok)
                 : (ok == 1 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
      SweepRow row{cfg.snr_db[s], cfg.schemes[j], mean, stderr_value, cfg.trials, cfg.trials - ok};
      row.mean_power_saving = ok > 0 ? saving.value() / ok : 0.0;
      result.rows.push_back(row);
    }
  }
  return result;
}

void write_csv(std::ostream& out, const SweepConfig& cfg, const SweepResult& result,
               const std::string& timestamp) {
  out << "# " << kToolName << " " << kToolVersion << "\n";
  for (const auto& [key, value] : describe(cfg)) out << "# " << key << " = " << value << "\n";
  out << "# rng = " << kGeneratorName << "\n";
  out << "# rng_seed = " << cfg.seed << "\n";
  out << "# noise_variance = " << format_number(kNoiseVariance) << "\n";
  out << "# timestamp = " << timestamp << "\n";
  out << "snr_db,scheme,mean_utility,stderr,trials,failed_trials\n";
  for (const auto& row : result.rows) {
    out << format_number(row.snr_db) << ',' << to_string(row.scheme) << ','
        << format_number(row.mean_utility) << ',' << format_number(row.stderr_utility) << ','
        << row.trials << ',' << row.failed_trials << '\n';
  }
}

void print_summary(std::ostream& out, const SweepConfig& cfg, const SweepResult& result) {
  out << kToolName << ": N=" << cfg.antennas << " K=" << cfg.users << " trials=" << cfg.trials
      << " power=" << to_string(cfg.power) << " utility=" << to_string(cfg.utility) << "\n";
  out << std::setw(10) << "snr_db";
  for (auto s : cfg.schemes) out << std::setw(16) << to_string(s);
  out << "\n";
  const std::size_t schemes = cfg.schemes.size();
  for (std::size_t i = 0; i < result.rows.size(); i += schemes) {
    out << std::setw(10) << format_number(result.rows[i].snr_db);
    for (std::size_t j = 0; j < schemes; ++j) {
      out << std::setw(16) << std::setprecision(6) << result.rows[i + j].mean_utility;
    }
    out << "\n";
  }
  for (const auto& row : result.rows) {
    if (row.failed_trials > 0) {
      out << "warning: " << to_string(row.scheme) << " failed on " << row.failed_trials << " of "
          << row.trials << " trials at " << format_number(row.snr_db) << " dB\n";
    }
    if (row.scheme == SweepScheme::kP1Reference) {
      out << "p1-reference at " << format_number(row.snr_db)
          << " dB: mean power saving versus budget " << std::setprecision(4)
          << 100.0 * row.mean_power_saving << "%\n";
    }
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParseOutcome parsed;
  try {
    parsed = parse_config(args);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  }
  if (parsed.help_requested) {
    out << parsed.help;
    return 0;
  }
  const SweepConfig& cfg = parsed.config;

  try {
    std::ofstream file;
    if (!cfg.output_path.empty()) {
      file.open(cfg.output_path, std::ios::binary | std::ios::trunc);
      if (!file) {
        err << "error: cannot write output file '" << cfg.output_path << "'\n";
        return 2;
      }
    }
    const SweepResult result = run_sweep(cfg);
    if (file.is_open()) {
      write_csv(file, cfg, result, utc_timestamp());
      file.flush();
      if (!file) {
        err << "error: failed while writing '" << cfg.output_path << "'\n";
        return 2;
      }
      print_summary(out, cfg, result);
    } else {
      write_csv(out, cfg, result, utc_timestamp());
      print_summary(err, cfg, result);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace optbf::sim
