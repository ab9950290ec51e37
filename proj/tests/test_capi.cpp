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

#include "sudas/sudas.h"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace
{

const char *kConfig = "[scenario]\n"
                      "n_tx_bs = 4\nn_sudacs = 4\nn_ues = 2\nn_streams = auto\nn_subcarriers = 8\n"
                      "p_bs_max_dbm = 46\np_sudac_max_dbm = 23\nbackend_gain_db = 10\nfrontend_gain_db = 30\n"
                      "rng_seed = 4\n"
                      "[sweep]\nvariable = bs_power\nvalues = 30, 46\nn_drops = 2\n";

} // namespace

TEST_CASE("version and status names")
{
    CHECK(std::string(sudas_version()) == "1.0.0");
    CHECK(std::string(sudas_status_name(SUDAS_ERR_RANK)) == "rank error");
}

TEST_CASE("parse, solve and query")
{
    sudas_scenario *sc = nullptr;
    REQUIRE(sudas_scenario_parse(kConfig, nullptr, 0, &sc) == SUDAS_OK);
    REQUIRE(sc != nullptr);
    std::uint64_t seed = 0;
    CHECK(sudas_scenario_seed(sc, &seed) == SUDAS_OK);
    CHECK(seed == 4);

    sudas_solution *sol = nullptr;
    REQUIRE(sudas_solve(sc, &sol) == SUDAS_OK);
    double tp = 0.0, tp_s = 0.0;
    CHECK(sudas_solution_throughput(sol, &tp, &tp_s) == SUDAS_OK);
    CHECK(tp > 0.0);
    CHECK(tp_s == doctest::Approx(tp * 15e3));
    std::size_t iters = 0;
    int converged = -1;
    CHECK(sudas_solution_iterations(sol, &iters, &converged) == SUDAS_OK);
    CHECK(iters >= 1);
    CHECK((converged == 0 || converged == 1));

    const std::size_t len = sudas_solution_trace(sol, nullptr, 0);
    CHECK(len == iters);
    std::vector<double> trace(len);
    CHECK(sudas_solution_trace(sol, trace.data(), trace.size()) == len);
    CHECK(trace.back() >= tp);

    for (std::size_t i = 0; i < 8; ++i)
    {
        std::size_t ue = 99;
        CHECK(sudas_solution_assignment(sol, i, &ue) == SUDAS_OK);
        CHECK(ue < 2);
    }
    std::size_t ue = 0;
    CHECK(sudas_solution_assignment(sol, 8, &ue) == SUDAS_ERR_INVALID_ARGUMENT);

    double used = 0.0, budget = 0.0;
    CHECK(sudas_solution_power(sol, 0, &used, &budget) == SUDAS_OK);
    CHECK(used <= budget * (1.0 + 1e-6));
    CHECK(sudas_solution_power(sol, 1, &used, &budget) == SUDAS_OK);
    CHECK(budget == doctest::Approx(4 * 0.19952623149688797));
    CHECK(sudas_solution_power(sol, 2, &used, &budget) == SUDAS_ERR_INVALID_ARGUMENT);

    sudas_solution_free(sol);
    sudas_scenario_free(sc);
}

TEST_CASE("serialization through the C interface")
{
    sudas_scenario *sc = nullptr;
    REQUIRE(sudas_scenario_parse(kConfig, nullptr, 0, &sc) == SUDAS_OK);
    const std::size_t n = sudas_scenario_serialize(sc, nullptr, 0);
    std::string text(n + 1, '\0');
    CHECK(sudas_scenario_serialize(sc, text.data(), text.size()) == n);
    text.resize(n);
    CHECK(text.find("n_streams = auto") != std::string::npos);
    sudas_scenario *again = nullptr;
    CHECK(sudas_scenario_parse(text.c_str(), nullptr, 0, &again) == SUDAS_OK);
    CHECK(sudas_scenario_serialize(again, nullptr, 0) == n);

    char small[8];
    CHECK(sudas_scenario_serialize(sc, small, sizeof small) == n);
    CHECK(std::string(small).size() == 7);
    sudas_scenario_free(again);
    sudas_scenario_free(sc);
}

TEST_CASE("errors map to status codes with messages")
{
    sudas_scenario *sc = nullptr;
    const char *bad_rank[] = {"scenario.n_streams=5"};
    CHECK(sudas_scenario_parse(kConfig, bad_rank, 1, &sc) == SUDAS_ERR_CONFIG);
    CHECK(sc == nullptr);
    CHECK(std::string(sudas_last_error()).find("rank") != std::string::npos);

    CHECK(sudas_scenario_load("/nonexistent/sudas.ini", nullptr, 0, &sc) == SUDAS_ERR_IO);
    CHECK(std::string(sudas_last_error()).find("/nonexistent/sudas.ini") != std::string::npos);

    CHECK(sudas_scenario_parse(nullptr, nullptr, 0, &sc) == SUDAS_ERR_INVALID_ARGUMENT);
    CHECK(sudas_scenario_parse(kConfig, nullptr, 1, &sc) == SUDAS_ERR_INVALID_ARGUMENT);
    const char *null_override[] = {nullptr};
    CHECK(sudas_scenario_parse(kConfig, null_override, 1, &sc) == SUDAS_ERR_CONFIG);
    CHECK(sudas_run_solve(nullptr, "/tmp") == SUDAS_ERR_INVALID_ARGUMENT);
    CHECK(sudas_solution_throughput(nullptr, nullptr, nullptr) == SUDAS_ERR_INVALID_ARGUMENT);

    const char *no_solver[] = {"solver.dual_bracket_max=1e-9"};
    REQUIRE(sudas_scenario_parse(kConfig, no_solver, 1, &sc) == SUDAS_OK);
    sudas_solution *sol = nullptr;
    CHECK(sudas_solve(sc, &sol) == SUDAS_ERR_SOLVER);
    CHECK(sol == nullptr);
    sudas_scenario_free(sc);

    // A successful call clears the message.
    REQUIRE(sudas_scenario_parse(kConfig, nullptr, 0, &sc) == SUDAS_OK);
    CHECK(std::string(sudas_last_error()).empty());
    sudas_scenario_free(sc);
    sudas_scenario_free(nullptr);
    sudas_solution_free(nullptr);
}

TEST_CASE("commands write their files")
{
    const auto dir = std::filesystem::temp_directory_path() / "sudas_capi_test";
    std::filesystem::remove_all(dir);
    const auto cfg = dir / "cfg.ini";
    std::filesystem::create_directories(dir);
    std::ofstream(cfg) << kConfig;

    sudas_scenario *sc = nullptr;
    const char *ov[] = {"solver.bound_max_iterations=100"};
    REQUIRE(sudas_scenario_load(cfg.c_str(), ov, 1, &sc) == SUDAS_OK);
    CHECK(sudas_run_solve(sc, (dir / "out").c_str()) == SUDAS_OK);
    CHECK(sudas_run_trace(sc, (dir / "out").c_str()) == SUDAS_OK);
    CHECK(sudas_run_sweep(sc, (dir / "out").c_str()) == SUDAS_OK);
    for (const char *f : {"allocation.csv", "summary.csv", "trace.csv", "sweep.csv"})
        CHECK(std::filesystem::exists(dir / "out" / f));
    sudas_scenario_free(sc);
    std::filesystem::remove_all(dir);
}
