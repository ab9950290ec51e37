// SPDX-License-Identifier: Apache-2.0
//
// sudas: resource allocation for SUDAS-assisted multicarrier downlink
// Copyright (C) 2026 The sudas authors
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

#ifndef SUDAS_SCENARIO_IO_HPP
#define SUDAS_SCENARIO_IO_HPP

#include "sudas/config.hpp"
#include "sudas/sim.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace sudas
{

// Everything a run needs, as read from one configuration file.
struct Scenario
{
    SystemConfig system;
    SolverParams solver;
    SweepSpec sweep;
    bool has_sweep = false; // the file had a [sweep] section
};

// INI-style text with [scenario], [solver] and [sweep] sections; see README for the key list.
// Keys ending in _dbm / _db are converted to watts / linear. `overrides` are "key=value" strings
// where key is "section.key" or a bare key; they replace file entries (a dB override replaces the
// linear form of the same quantity and vice versa). Throws ConfigError naming the key path.
Scenario parse_config(std::string_view text, std::span<const std::string> overrides = {});
Scenario load_config(const std::filesystem::path &path, std::span<const std::string> overrides = {});

// Linear-unit text that parses back to the same Scenario.
std::string serialize_config(const Scenario &scenario);

// Writes <out>/trace.csv: iteration,objective,upper_bound,ratio
void cmd_trace(const Scenario &scenario, const std::filesystem::path &out_dir);
// Writes <out>/sweep.csv: sweep_value,system,mean_tp_bits_s,stderr,n_drops,n_failures
void cmd_sweep(const Scenario &scenario, const std::filesystem::path &out_dir);
// Writes <out>/allocation.csv (subcarrier,ue,stream,p_bs,p_sudas,s) and <out>/summary.csv
// (quantity,ue,value).
void cmd_solve(const Scenario &scenario, const std::filesystem::path &out_dir);

// Full-precision decimal used in every CSV.
std::string format_number(double v);

} // namespace sudas

#endif
