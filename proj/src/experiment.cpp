#include "hcran/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "hcran/parallel.hpp"
#include "hcran/rng.hpp"

#ifndef HCRAN_VERSION
#define HCRAN_VERSION "0.0.0"
#endif

namespace hcran {

std::string_view toolkit_version() noexcept { return HCRAN_VERSION; }

namespace {

constexpr std::string_view kVersionKey = "hcran_version";

// Keys that do not influence the numbers in a table.
bool runtime_only(std::string_view key) { return key == "output" || key == "threads"; }

std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cells.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.emplace_back();
        } else {
            cells.back() += c;
        }
    }
    if (quoted) throw std::invalid_argument("csv: unterminated quote");
    return cells;
}

std::string fmt(double x) { return format_double(x); }
std::string fmt(std::size_t x) { return std::to_string(x); }
std::string fmt_u64(std::uint64_t x) { return std::to_string(x); }
std::string fmt(bool b) { return b ? "true" : "false"; }

ResultTable with_metadata(const ExperimentConfig& config, std::vector<std::string> header) {
    ResultTable t;
    t.header = std::move(header);
    t.metadata.emplace_back(kVersionKey, toolkit_version());
    std::istringstream lines(emit_config(config));
    for (std::string line; std::getline(lines, line);) {
        const auto eq = line.find(" = ");
        std::string key = line.substr(0, eq);
        if (runtime_only(key)) continue;
        t.metadata.emplace_back(std::move(key), line.substr(eq + 3));
    }
    return t;
}

ResultTable run_ee_sweep(const ExperimentConfig& c) {
    const auto& p = c.ee;
    auto table = with_metadata(c, {"seed", "circuit_power", "mode", "ee", "active_count", "feasible"});
    const std::size_t grid = p.circuit_power_grid.size();
    std::vector<std::vector<std::vector<std::string>>> rows(p.instances);
    parallel_for(p.instances, c.threads, [&](std::size_t i) {
        const auto seed = derive_seed(c.seed, {stream::instance, i});
        const auto topo = generate_topology(p.topology, seed);
        const auto ch = sample_channel(topo, p.subcarriers, 0, seed, p.channel);
        auto power = p.power;
        for (std::size_t g = 0; g < grid; ++g) {
            power.rrh_circuit_power = p.circuit_power_grid[g];
            const auto joint = joint_rrh_power_max_ee(ch, power, p.constraint, p.search, p.options);
            const auto only = power_only_max_ee(ch, power, p.constraint, p.options);
            for (const auto* r : {&joint, &only}) {
                const bool ok = r->feasible;
                rows[i].push_back({fmt_u64(seed), fmt(p.circuit_power_grid[g]), r == &joint ? "joint" : "power_only",
                                   fmt(ok ? r->ee : 0.0), fmt(ok ? r->allocation.active_count() : std::size_t{0}),
                                   fmt(ok)});
            }
        }
    });
    for (auto& block : rows) {
        for (auto& r : block) table.add_row(std::move(r));
    }
    return table;
}

ResultTable run_planning(const ExperimentConfig& c) {
    auto table =
        with_metadata(c, {"isd_m", "mbs_tx_w", "apc_w_per_km2", "ase_bps_hz_km2", "coverage", "feasible"});
    for (const auto& pt : sweep_isd(c.planning, c.seed, c.threads)) {
        table.add_row({fmt(pt.isd), fmt(pt.mbs_tx_power), fmt(pt.apc), fmt(pt.ase), fmt(pt.coverage), fmt(pt.feasible)});
    }
    return table;
}

ResultTable run_fairness(const ExperimentConfig& c) {
    auto table = with_metadata(c, {"sample", "solver", "network_ee", "best_ee", "worst_ee", "jain", "feasible"});
    const auto summary = monte_carlo_compare(c.fairness.scenario, c.fairness.samples, c.seed, c.threads);
    for (const auto& s : summary.per_sample) {
        for (const auto& [name, st] : {std::pair{"nep", s.nep}, std::pair{"mep", s.mep}}) {
            table.add_row({fmt(s.index), name, fmt(st.network_ee), fmt(st.best_ee), fmt(st.worst_ee), fmt(st.jain),
                           fmt(s.feasible)});
        }
    }
    return table;
}

ResultTable run_delay(const ExperimentConfig& c) {
    const auto& d = c.delay;
    auto table = with_metadata(c, {"arrival_rate", "scheduler", "v", "alpha", "seed", "long_term_ee", "avg_queue",
                                   "avg_delay", "avg_power", "stable"});
    std::vector<std::uint64_t> seeds(d.seeds);
    for (std::size_t j = 0; j < d.seeds; ++j) seeds[j] = derive_seed(c.seed, {stream::sweep_point, j});

    auto add = [&](double rate, const char* scheduler, double v, double alpha, std::uint64_t seed,
                   const EpisodeResult& r) {
        table.add_row({fmt(rate), scheduler, fmt(v), fmt(alpha), fmt_u64(seed), fmt(r.long_term_ee), fmt(r.avg_queue),
                       fmt(r.avg_delay), fmt(r.avg_power), fmt(r.stability_flag)});
    };

    bool traced = false;
    for (double rate : d.arrival_rate_grid) {
        EpisodeSetup base = d.episode;
        base.traffic.arrival_rate = rate;
        for (const auto& pt : sweep_tradeoff(d.v_grid, d.alpha_grid, seeds, d.topology, base, c.threads)) {
            add(rate, "load_aware", pt.v, pt.alpha, pt.seed, pt.result);
        }
        if (d.compare_baseline) {
            const std::size_t n = d.v_grid.size() * d.alpha_grid.size() * seeds.size();
            std::vector<EpisodeResult> results(n);
            parallel_for(n, c.threads, [&](std::size_t i) {
                const std::size_t s = i % seeds.size();
                const std::size_t a = (i / seeds.size()) % d.alpha_grid.size();
                const std::size_t v = i / (seeds.size() * d.alpha_grid.size());
                const auto setup = make_episode_setup(d.topology, base, seeds[s]);
                results[i] = baseline_always_on(setup, {d.v_grid[v], d.alpha_grid[a]}, seeds[s]);
            });
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t s = i % seeds.size();
                const std::size_t a = (i / seeds.size()) % d.alpha_grid.size();
                const std::size_t v = i / (seeds.size() * d.alpha_grid.size());
                add(rate, "always_on", d.v_grid[v], d.alpha_grid[a], seeds[s], results[i]);
            }
        }
        if (!d.trace_path.empty() && !traced) {
            auto setup = make_episode_setup(d.topology, base, seeds.front());
            setup.record_trace = true;
            auto trace = trace_table(run_episode(setup, {d.v_grid.front(), d.alpha_grid.front()}, seeds.front()));
            trace.metadata = table.metadata;
            write_file_atomic(d.trace_path, trace.to_csv());
            traced = true;
        }
    }
    return table;
}

std::string_view oracle_name(OracleKind k) {
    switch (k) {
        case OracleKind::ee_grid: return "ee_grid";
        case OracleKind::ee_exhaustive: return "ee_exhaustive";
        case OracleKind::fairness_exhaustive: return "fairness_exhaustive";
        case OracleKind::delay_brute_force: return "delay_brute_force";
        case OracleKind::trace_replay: return "trace_replay";
    }
    return "unknown";
}

ResultTable run_oracle_experiment(const ExperimentConfig& c) {
    auto table = with_metadata(c, {"kind", "cases", "max_deviation", "tolerance", "passed", "detail"});
    const auto r = run_oracle(c.oracle, c.seed);
    table.add_row({std::string(oracle_name(r.kind)), fmt(r.cases), fmt(r.max_deviation), fmt(r.tolerance),
                   fmt(r.passed), r.detail});
    return table;
}

}  // namespace

void ResultTable::add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) {
        throw std::invalid_argument("result table: row has " + std::to_string(row.size()) + " fields, header has " +
                                    std::to_string(header.size()));
    }
    rows.push_back(std::move(row));
}

std::size_t ResultTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::out_of_range("result table: no column '" + std::string(name) + "'");
}

const std::string& ResultTable::cell(std::size_t row, std::string_view name) const {
    return rows.at(row).at(column(name));
}

double ResultTable::number(std::size_t row, std::string_view name) const {
    const auto& text = cell(row, name);
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("result table: '" + text + "' is not a number");
    return v;
}

std::string ResultTable::to_csv() const {
    std::string out;
    for (const auto& [k, v] : metadata) out += "# " + k + " = " + v + '\n';
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += quote(cells[i]);
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

ResultTable ResultTable::from_csv(std::string_view text) {
    ResultTable t;
    bool have_header = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!have_header && line.starts_with("# ")) {
            const auto eq = line.find(" = ");
            if (eq == std::string_view::npos) throw std::invalid_argument("csv: malformed metadata line");
            t.metadata.emplace_back(std::string(line.substr(2, eq - 2)), std::string(line.substr(eq + 3)));
            continue;
        }
        if (line.empty()) continue;
        if (!have_header) {
            t.header = split_csv_line(line);
            have_header = true;
        } else {
            t.add_row(split_csv_line(line));
        }
    }
    if (!have_header) throw std::invalid_argument("csv: missing header row");
    return t;
}

ExperimentConfig config_from_metadata(const ResultTable& table) {
    std::string text;
    for (const auto& [k, v] : table.metadata) {
        if (k == kVersionKey) continue;
        text += k + " = " + v + '\n';
    }
    return parse_config(text);
}

void write_file_atomic(const std::string& path, std::string_view contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ResultTable trace_table(const EpisodeResult& result) {
    ResultTable t;
    t.header = {"slot", "active_count", "power", "gamma"};
    const std::size_t users = result.trace.empty() ? 0 : result.trace.front().queues.size();
    for (std::size_t u = 0; u < users; ++u) {
        t.header.push_back("queue_" + std::to_string(u));
        t.header.push_back("arrival_" + std::to_string(u));
        t.header.push_back("served_" + std::to_string(u));
    }
    for (const auto& rec : result.trace) {
        std::vector<std::string> row{fmt_u64(rec.slot), fmt(rec.active_count), fmt(rec.power), fmt(rec.gamma)};
        for (std::size_t u = 0; u < users; ++u) {
            row.push_back(fmt(rec.queues[u]));
            row.push_back(fmt(rec.arrivals[u]));
            row.push_back(fmt(rec.served[u]));
        }
        t.add_row(std::move(row));
    }
    return t;
}

ResultTable run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    ResultTable table;
    switch (config.experiment) {
        case ExperimentKind::ee_sweep: table = run_ee_sweep(config); break;
        case ExperimentKind::planning_sweep: table = run_planning(config); break;
        case ExperimentKind::fairness_compare: table = run_fairness(config); break;
        case ExperimentKind::delay_sweep: table = run_delay(config); break;
        case ExperimentKind::oracle: table = run_oracle_experiment(config); break;
    }
    if (!config.output_path.empty()) write_file_atomic(config.output_path, table.to_csv());
    return table;
}

}  // namespace hcran
