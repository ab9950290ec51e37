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

#include "sudas/scenario_io.hpp"
#include "sudas/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace sudas
{

namespace
{

using Section = std::map<std::string, std::string>;
using Document = std::map<std::string, Section>;

// A quantity that may be given in linear units or in dB under `key + suffix`.
struct Quantity
{
    const char *key;
    const char *db_suffix; // nullptr: linear only
    bool dbm;              // suffix converts from dBm rather than dB
};

constexpr Quantity kScenarioQuantities[] = {
    {"p_bs_max", "_dbm", true},      {"p_sudac_max", "_dbm", true},  {"noise_power", "_dbm", true},
    {"backend_gain", "_db", false},  {"frontend_gain", "_db", false}, {"direct_gain", "_db", false},
    {"subcarrier_bandwidth_hz", nullptr, false},
};

const std::vector<std::string> &known_keys(const std::string &section)
{
    static const std::map<std::string, std::vector<std::string>> keys = [] {
        std::map<std::string, std::vector<std::string>> k;
        k["scenario"] = {"n_tx_bs", "n_sudacs", "n_ues", "n_streams", "n_subcarriers", "ue_weights", "rng_seed"};
        for (const Quantity &q : kScenarioQuantities)
        {
            k["scenario"].emplace_back(q.key);
            if (q.db_suffix)
                k["scenario"].push_back(std::string(q.key) + q.db_suffix);
        }
        k["solver"] = {"max_iterations", "convergence_eps", "dual_search_tolerance", "dual_bracket_max",
                       "bound_max_iterations"};
        k["sweep"] = {"variable", "values", "n_drops", "systems"};
        return k;
    }();
    static const std::vector<std::string> none;
    const auto it = keys.find(section);
    return it == keys.end() ? none : it->second;
}

bool is_known(const std::string &section, const std::string &key)
{
    const auto &k = known_keys(section);
    return std::find(k.begin(), k.end(), key) != k.end();
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

double to_double(const std::string &path, const std::string &text)
{
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError(path + ": expected a number, got '" + text + "'");
    return v;
}

std::uint64_t to_uint(const std::string &path, const std::string &text)
{
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError(path + ": expected a non-negative integer, got '" + text + "'");
    return v;
}

Document read_document(std::string_view text)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in{std::string(text)};
    try
    {
        pt::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw ConfigError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }

    Document doc;
    for (const auto &[section, node] : tree)
    {
        if (node.empty() && !node.data().empty())
            throw ConfigError("config: key '" + section + "' must be inside a [section]");
        if (known_keys(section).empty())
            throw ConfigError("config: unknown section [" + section + "]");
        Section &sec = doc[section];
        for (const auto &[key, value] : node)
        {
            if (!is_known(section, key))
                throw ConfigError(section + "." + key + ": unknown key");
            sec[key] = value.data();
        }
    }
    return doc;
}

// The linear and dB spellings of a quantity are mutually exclusive.
void erase_sibling(Section &sec, const std::string &key)
{
    for (const Quantity &q : kScenarioQuantities)
    {
        if (!q.db_suffix)
            continue;
        const std::string lin = q.key;
        const std::string db = lin + q.db_suffix;
        if (key == lin)
            sec.erase(db);
        else if (key == db)
            sec.erase(lin);
    }
}

void apply_override(Document &doc, const std::string &entry)
{
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override '" + entry + "': expected key=value");
    const std::string key = trim(std::string_view(entry).substr(0, eq));
    const std::string value = trim(std::string_view(entry).substr(eq + 1));

    std::string section;
    std::string name;
    if (const auto dot = key.find('.'); dot != std::string::npos)
    {
        section = key.substr(0, dot);
        name = key.substr(dot + 1);
    }
    else
    {
        name = key;
        for (const char *s : {"scenario", "solver", "sweep"})
            if (is_known(s, name))
            {
                section = s;
                break;
            }
    }
    if (section.empty() || !is_known(section, name))
        throw ConfigError("override '" + key + "': unknown configuration key");
    Section &sec = doc[section];
    erase_sibling(sec, name);
    sec[name] = value;
}

const std::string *find(const Section &sec, const std::string &key)
{
    const auto it = sec.find(key);
    return it == sec.end() ? nullptr : &it->second;
}

std::size_t required_count(const Section &sec, const std::string &key)
{
    const std::string *v = find(sec, key);
    if (!v)
        throw ConfigError("scenario." + key + ": missing required key");
    return static_cast<std::size_t>(to_uint("scenario." + key, *v));
}

// Reads a quantity in linear units; `fallback` when absent (nullopt: required).
double read_quantity(const Section &sec, const Quantity &q, std::optional<double> fallback)
{
    const std::string lin = q.key;
    const std::string *linear = find(sec, lin);
    const std::string *db = q.db_suffix ? find(sec, lin + q.db_suffix) : nullptr;
    if (linear && db)
        throw ConfigError("scenario." + lin + ": given both as " + lin + " and " + lin + q.db_suffix);
    if (linear)
        return to_double("scenario." + lin, *linear);
    if (db)
    {
        const double v = to_double("scenario." + lin + q.db_suffix, *db);
        return q.dbm ? dbm_to_watt(v) : db_to_linear(v);
    }
    if (!fallback)
        throw ConfigError("scenario." + lin + ": missing required key (or " + lin + (q.db_suffix ? q.db_suffix : "") +
                          ")");
    return *fallback;
}

const Quantity &quantity(const char *key)
{
    for (const Quantity &q : kScenarioQuantities)
        if (std::string_view(q.key) == key)
            return q;
    throw std::logic_error("unknown quantity");
}

Scenario build(const Document &doc)
{
    static const Section empty;
    const auto section = [&](const char *name) -> const Section & {
        const auto it = doc.find(name);
        return it == doc.end() ? empty : it->second;
    };
    const Section &sc = section("scenario");
    const Section &so = section("solver");
    const Section &sw = section("sweep");

    Scenario out;
    SystemConfig &cfg = out.system;
    cfg.n_tx_bs = required_count(sc, "n_tx_bs");
    cfg.n_sudacs = required_count(sc, "n_sudacs");
    cfg.n_ues = required_count(sc, "n_ues");
    cfg.n_subcarriers = required_count(sc, "n_subcarriers");

    const std::string *streams = find(sc, "n_streams");
    if (!streams)
        throw ConfigError("scenario.n_streams: missing required key");
    if (trim(*streams) == "auto")
    {
        out.sweep.auto_streams = true;
        cfg.n_streams = std::min(cfg.n_tx_bs, cfg.n_sudacs);
    }
    else
        cfg.n_streams = static_cast<std::size_t>(to_uint("scenario.n_streams", *streams));

    cfg.p_bs_max = read_quantity(sc, quantity("p_bs_max"), std::nullopt);
    cfg.p_sudac_max = read_quantity(sc, quantity("p_sudac_max"), std::nullopt);
    cfg.noise_power = read_quantity(sc, quantity("noise_power"), 1.0);
    cfg.backend_gain = read_quantity(sc, quantity("backend_gain"), 1.0);
    cfg.frontend_gain = read_quantity(sc, quantity("frontend_gain"), 1.0);
    cfg.direct_gain = read_quantity(sc, quantity("direct_gain"), 1.0);
    cfg.subcarrier_bandwidth_hz = read_quantity(sc, quantity("subcarrier_bandwidth_hz"), 15e3);
    if (const std::string *seed = find(sc, "rng_seed"))
        cfg.rng_seed = to_uint("scenario.rng_seed", *seed);

    if (const std::string *w = find(sc, "ue_weights"))
    {
        cfg.ue_weights.clear();
        for (const std::string &item : split_list(*w))
            cfg.ue_weights.push_back(to_double("scenario.ue_weights", item));
    }
    else
        cfg.ue_weights.assign(cfg.n_ues, 1.0);
    validate(cfg);

    SolverParams &sp = out.solver;
    if (const std::string *v = find(so, "max_iterations"))
        sp.max_iterations = static_cast<std::size_t>(to_uint("solver.max_iterations", *v));
    if (const std::string *v = find(so, "convergence_eps"))
        sp.convergence_eps = to_double("solver.convergence_eps", *v);
    if (const std::string *v = find(so, "dual_search_tolerance"))
        sp.dual_search_tolerance = to_double("solver.dual_search_tolerance", *v);
    if (const std::string *v = find(so, "dual_bracket_max"))
        sp.dual_bracket_max = to_double("solver.dual_bracket_max", *v);
    if (const std::string *v = find(so, "bound_max_iterations"))
        sp.bound_max_iterations = static_cast<std::size_t>(to_uint("solver.bound_max_iterations", *v));
    validate(sp);

    out.has_sweep = doc.count("sweep") > 0;
    if (out.has_sweep)
    {
        SweepSpec &spec = out.sweep;
        const std::string *var = find(sw, "variable");
        if (!var)
            throw ConfigError("sweep.variable: missing required key");
        const auto parsed = parse_sweep_variable(trim(*var));
        if (!parsed)
            throw ConfigError("sweep.variable: expected bs_power, n_sudacs or n_tx_bs, got '" + *var + "'");
        spec.variable = *parsed;

        const std::string *values = find(sw, "values");
        if (!values)
            throw ConfigError("sweep.values: missing required key");
        spec.values.clear();
        for (const std::string &item : split_list(*values))
            spec.values.push_back(to_double("sweep.values", item));

        if (const std::string *v = find(sw, "n_drops"))
            spec.n_drops = static_cast<std::size_t>(to_uint("sweep.n_drops", *v));
        if (const std::string *v = find(sw, "systems"))
        {
            spec.systems.clear();
            for (const std::string &item : split_list(*v))
            {
                const auto s = parse_system(item);
                if (!s)
                    throw ConfigError("sweep.systems: unknown system '" + item + "'");
                spec.systems.push_back(*s);
            }
        }
        validate(spec);
        for (double v : spec.values)
            (void)sweep_point(cfg, spec, v);
    }
    return out;
}

} // namespace

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

Scenario parse_config(std::string_view text, std::span<const std::string> overrides)
{
    Document doc = read_document(text);
    for (const std::string &o : overrides)
        apply_override(doc, o);
    return build(doc);
}

Scenario load_config(const std::filesystem::path &path, std::span<const std::string> overrides)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides);
}

std::string serialize_config(const Scenario &s)
{
    const SystemConfig &c = s.system;
    std::string out = "[scenario]\n";
    out += fmt::format("n_tx_bs = {}\n", c.n_tx_bs);
    out += fmt::format("n_sudacs = {}\n", c.n_sudacs);
    out += fmt::format("n_ues = {}\n", c.n_ues);
    out += s.sweep.auto_streams ? std::string("n_streams = auto\n") : fmt::format("n_streams = {}\n", c.n_streams);
    out += fmt::format("n_subcarriers = {}\n", c.n_subcarriers);
    out += "p_bs_max = " + format_number(c.p_bs_max) + "\n";
    out += "p_sudac_max = " + format_number(c.p_sudac_max) + "\n";
    out += "noise_power = " + format_number(c.noise_power) + "\n";
    out += "backend_gain = " + format_number(c.backend_gain) + "\n";
    out += "frontend_gain = " + format_number(c.frontend_gain) + "\n";
    out += "direct_gain = " + format_number(c.direct_gain) + "\n";
    out += "subcarrier_bandwidth_hz = " + format_number(c.subcarrier_bandwidth_hz) + "\n";
    out += "ue_weights = ";
    for (std::size_t k = 0; k < c.ue_weights.size(); ++k)
        out += (k ? ", " : "") + format_number(c.ue_weights[k]);
    out += fmt::format("\nrng_seed = {}\n", c.rng_seed);

    const SolverParams &p = s.solver;
    out += "\n[solver]\n";
    out += fmt::format("max_iterations = {}\n", p.max_iterations);
    out += "convergence_eps = " + format_number(p.convergence_eps) + "\n";
    out += "dual_search_tolerance = " + format_number(p.dual_search_tolerance) + "\n";
    out += "dual_bracket_max = " + format_number(p.dual_bracket_max) + "\n";
    out += fmt::format("bound_max_iterations = {}\n", p.bound_max_iterations);

    if (s.has_sweep)
    {
        const SweepSpec &w = s.sweep;
        out += "\n[sweep]\n";
        out += fmt::format("variable = {}\n", to_string(w.variable));
        out += "values = ";
        for (std::size_t j = 0; j < w.values.size(); ++j)
            out += (j ? ", " : "") + format_number(w.values[j]);
        out += fmt::format("\nn_drops = {}\n", w.n_drops);
        out += "systems = ";
        for (std::size_t j = 0; j < w.systems.size(); ++j)
            out += std::string(j ? ", " : "") + std::string(to_string(w.systems[j]));
        out += "\n";
    }
    return out;
}

} // namespace sudas
