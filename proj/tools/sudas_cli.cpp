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

// Command-line front end. Talks to the library only through the C interface.

#include "sudas/sudas.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace
{

struct Options
{
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    std::vector<std::string> sets;
};

void add_common(CLI::App *cmd, Options &opt)
{
    cmd->add_option("--config", opt.config, "configuration file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out, "output directory")->required();
    cmd->add_option("--seed", opt.seed, "master seed, overrides scenario.rng_seed");
    cmd->add_option("--set", opt.sets, "override a configuration key, e.g. --set solver.max_iterations=50")
        ->type_name("KEY=VALUE");
}

int report(sudas_status st, const char *what)
{
    if (st == SUDAS_OK)
        return 0;
    std::fprintf(stderr, "sudas %s: %s: %s\n", what, sudas_status_name(st), sudas_last_error());
    return static_cast<int>(st);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Resource allocation for SUDAS-assisted multicarrier downlink"};
    app.set_version_flag("--version", std::string(sudas_version()));
    app.require_subcommand(1);

    Options opt;
    CLI::App *solve = app.add_subcommand("solve", "allocate one drop and write allocation.csv and summary.csv");
    CLI::App *sweep = app.add_subcommand("sweep", "Monte-Carlo sweep, writes sweep.csv");
    CLI::App *trace = app.add_subcommand("trace", "convergence trace of one drop, writes trace.csv");
    for (CLI::App *cmd : {solve, sweep, trace})
        add_common(cmd, opt);

    CLI11_PARSE(app, argc, argv);

    std::vector<std::string> overrides = opt.sets;
    for (CLI::App *cmd : {solve, sweep, trace})
        if (cmd->parsed() && cmd->count("--seed") > 0)
            overrides.push_back("scenario.rng_seed=" + std::to_string(opt.seed));
    std::vector<const char *> argv_overrides;
    for (const std::string &s : overrides)
        argv_overrides.push_back(s.c_str());

    sudas_scenario *scenario = nullptr;
    if (int rc = report(sudas_scenario_load(opt.config.c_str(), argv_overrides.data(), argv_overrides.size(), &scenario),
                        "config"))
        return rc;

    int rc = 0;
    if (solve->parsed())
        rc = report(sudas_run_solve(scenario, opt.out.c_str()), "solve");
    else if (sweep->parsed())
        rc = report(sudas_run_sweep(scenario, opt.out.c_str()), "sweep");
    else
        rc = report(sudas_run_trace(scenario, opt.out.c_str()), "trace");
    sudas_scenario_free(scenario);
    return rc;
}
