#include "hcran/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace hcran {

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}

namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKinds[] = {
    {ExperimentKind::ee_sweep, "ee_sweep"},
    {ExperimentKind::planning_sweep, "planning_sweep"},
    {ExperimentKind::fairness_compare, "fairness_compare"},
    {ExperimentKind::delay_sweep, "delay_sweep"},
    {ExperimentKind::oracle, "oracle"},
};

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
    for (const auto& [k, name] : kKinds) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view text) noexcept {
    for (const auto& [k, name] : kKinds) {
        if (name == text) return k;
    }
    return std::nullopt;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError(key, "expected a finite number, got '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t parse_unsigned(const std::string& key, std::string_view text) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError(key, "expected a nonnegative integer, got '" + std::string(text) + "'");
    }
    return v;
}

bool parse_bool(const std::string& key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError(key, "expected true or false, got '" + std::string(text) + "'");
}

// Setter, getter, and a value check run after parsing, per key.
struct Entry {
    std::string key;
    std::function<void(std::string_view)> set;
    std::function<std::string()> get;
    std::function<void()> check;
};

using Check = std::function<bool(double)>;

Check positive() { return [](double x) { return x > 0.0; }; }
Check nonnegative() { return [](double x) { return x >= 0.0; }; }
Check any_value() { return [](double) { return true; }; }
Check within(double lo, double hi) { return [=](double x) { return x >= lo && x <= hi; }; }

class Table {
public:
    void real(const std::string& key, double& ref, Check ok, const std::string& rule) {
        add({key, [&ref, key](std::string_view v) { ref = parse_real(key, v); }, [&ref] { return format_double(ref); },
             [&ref, key, ok, rule] {
                 if (!ok(ref)) throw ConfigError(key, "must satisfy " + rule + " (got " + format_double(ref) + ")");
             }});
    }

    void count(const std::string& key, std::size_t& ref, std::size_t lo, std::size_t hi) {
        add({key, [&ref, key](std::string_view v) { ref = static_cast<std::size_t>(parse_unsigned(key, v)); },
             [&ref] { return std::to_string(ref); },
             [&ref, key, lo, hi] {
                 if (ref < lo || ref > hi) {
                     throw ConfigError(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "] (got " +
                                                std::to_string(ref) + ")");
                 }
             }});
    }

    void u64(const std::string& key, std::uint64_t& ref) {
        add({key, [&ref, key](std::string_view v) { ref = parse_unsigned(key, v); },
             [&ref] { return std::to_string(ref); }, [] {}});
    }

    void flag(const std::string& key, bool& ref) {
        add({key, [&ref, key](std::string_view v) { ref = parse_bool(key, v); },
             [&ref] { return std::string(ref ? "true" : "false"); }, [] {}});
    }

    void text(const std::string& key, std::string& ref) {
        add({key, [&ref](std::string_view v) { ref = std::string(trim(v)); }, [&ref] { return ref; }, [] {}});
    }

    void list(const std::string& key, std::vector<double>& ref, Check ok, const std::string& rule, bool allow_empty,
              bool increasing) {
        add({key,
             [&ref, key](std::string_view v) {
                 ref.clear();
                 v = trim(v);
                 if (v.empty()) return;
                 std::size_t start = 0;
                 while (true) {
                     const auto comma = v.find(',', start);
                     ref.push_back(parse_real(key, v.substr(start, comma - start)));
                     if (comma == std::string_view::npos) break;
                     start = comma + 1;
                 }
             },
             [&ref] {
                 std::string out;
                 for (std::size_t i = 0; i < ref.size(); ++i) out += (i ? ", " : "") + format_double(ref[i]);
                 return out;
             },
             [&ref, key, ok, rule, allow_empty, increasing] {
                 if (ref.empty() && !allow_empty) throw ConfigError(key, "must not be empty");
                 for (std::size_t i = 0; i < ref.size(); ++i) {
                     if (!ok(ref[i])) {
                         throw ConfigError(key, "every value must satisfy " + rule + " (got " + format_double(ref[i]) + ")");
                     }
                     if (increasing && i > 0 && !(ref[i] > ref[i - 1])) {
                         throw ConfigError(key, "values must be strictly increasing");
                     }
                 }
             }});
    }

    template <class E>
    void choice(const std::string& key, E& ref, std::vector<std::pair<E, std::string>> options) {
        add({key,
             [&ref, key, options](std::string_view v) {
                 v = trim(v);
                 std::string names;
                 for (const auto& [e, name] : options) {
                     if (name == v) {
                         ref = e;
                         return;
                     }
                     names += (names.empty() ? "" : ", ") + name;
                 }
                 throw ConfigError(key, "expected one of {" + names + "}, got '" + std::string(v) + "'");
             },
             [&ref, options] {
                 for (const auto& [e, name] : options) {
                     if (e == ref) return name;
                 }
                 return std::string("?");
             },
             [] {}});
    }

    const std::vector<Entry>& entries() const noexcept { return entries_; }

    Entry* find(std::string_view key) {
        const auto it = index_.find(std::string(key));
        return it == index_.end() ? nullptr : &entries_[it->second];
    }

private:
    void add(Entry e) {
        index_[e.key] = entries_.size();
        entries_.push_back(std::move(e));
    }

    std::vector<Entry> entries_;
    std::map<std::string, std::size_t> index_;
};

const std::vector<std::pair<InterferenceMode, std::string>> kInterference{
    {InterferenceMode::orthogonal, "orthogonal"}, {InterferenceMode::cochannel_worst_case, "cochannel_worst_case"}};
const std::vector<std::pair<RrhPlacement, std::string>> kPlacement{{RrhPlacement::uniform, "uniform"},
                                                                   {RrhPlacement::ring, "ring"}};

void bind_topology(Table& t, TopologyConfig& topo) {
    t.count("num_rrhs", topo.num_rrhs, 0, 64);
    t.count("num_users", topo.num_users, 1, 64);
    t.real("cell_radius", topo.cell_radius, positive(), "> 0");
    t.choice("rrh_placement", topo.rrh_placement, kPlacement);
    t.real("ring_fraction", topo.ring_fraction, within(0.0, 1.0), "0 <= ring_fraction <= 1");
}

void bind_channel(Table& t, ChannelConfig& ch) {
    t.real("bandwidth", ch.bandwidth, positive(), "> 0");
    t.real("noise_psd_dbm_hz", ch.noise_psd_dbm_hz, any_value(), "finite");
    t.flag("fading", ch.fading);
    t.real("shadowing_sigma_db", ch.shadowing_sigma_db, nonnegative(), ">= 0");
    t.real("min_distance", ch.min_distance, positive(), "> 0");
}

void bind_downlink_power(Table& t, PowerModel& pm, RateConstraint& rc) {
    t.real("mbs_slope", pm.mbs.slope, positive(), "> 0");
    t.real("mbs_static", pm.mbs.static_power, nonnegative(), ">= 0");
    t.real("rrh_slope", pm.sbs.slope, positive(), "> 0");
    t.real("rrh_static", pm.sbs.static_power, nonnegative(), ">= 0");
    t.real("mbs_max_power", rc.mbs_max_power, positive(), "> 0");
    t.real("rrh_max_power", rc.rrh_max_power, positive(), "> 0");
}

Table make_table(ExperimentConfig& c) {
    Table t;
    t.u64("seed", c.seed);
    t.text("output", c.output_path);
    t.count("threads", c.threads, 1, 1024);
    switch (c.experiment) {
        case ExperimentKind::ee_sweep: {
            auto& e = c.ee;
            bind_topology(t, e.topology);
            t.count("subcarriers", e.subcarriers, 1, 4096);
            t.count("instances", e.instances, 1, 1'000'000);
            t.real("min_rate", e.constraint.min_rate, nonnegative(), ">= 0");
            bind_downlink_power(t, e.power, e.constraint);
            t.list("circuit_power", e.circuit_power_grid, nonnegative(), ">= 0", false, true);
            bind_channel(t, e.channel);
            t.choice("interference", e.options.interference, kInterference);
            t.choice("search", e.search,
                     std::vector<std::pair<SearchMode, std::string>>{{SearchMode::exhaustive, "exhaustive"},
                                                                     {SearchMode::greedy, "greedy"}});
            t.real("tolerance", e.options.tolerance, positive(), "> 0");
            t.count("max_iterations", e.options.max_iterations, 1, 100000);
            break;
        }
        case ExperimentKind::planning_sweep: {
            auto& p = c.planning;
            t.list("isd", p.isd_grid, positive(), "> 0", false, true);
            t.count("sbs_per_site", p.sbs_per_site, 0, 64);
            t.real("coverage_target", p.coverage_target, [](double x) { return x > 0.0 && x < 1.0; },
                   "0 < coverage_target < 1");
            t.real("sinr_threshold_db", p.coverage_sinr_threshold_db, any_value(), "finite");
            t.count("drops", p.drops_per_point, 1, 100'000'000);
            t.count("reuse_factor", p.reuse_factor, 1, 100);
            t.flag("co_channel_interference", p.co_channel_interference);
            t.flag("fading", p.fading);
            t.real("bandwidth", p.bandwidth, positive(), "> 0");
            t.real("noise_psd_dbm_hz", p.noise_psd_dbm_hz, any_value(), "finite");
            t.real("min_distance", p.min_distance, positive(), "> 0");
            t.real("sbs_tx_power", p.sbs_tx_power, nonnegative(), ">= 0");
            t.real("max_mbs_power", p.max_mbs_power, positive(), "> 0");
            t.real("power_tolerance", p.power_tolerance, positive(), "> 0");
            t.real("mbs_slope", p.power.mbs.slope, positive(), "> 0");
            t.real("mbs_static", p.power.mbs.static_power, nonnegative(), ">= 0");
            t.real("sbs_slope", p.power.sbs.slope, positive(), "> 0");
            t.real("sbs_static", p.power.sbs.static_power, nonnegative(), ">= 0");
            break;
        }
        case ExperimentKind::fairness_compare: {
            auto& s = c.fairness.scenario;
            t.count("num_users", s.num_users, 1, 1024);
            t.count("num_subcarriers", s.num_subcarriers, 1, 65536);
            t.real("xi", s.user.amplifier_inefficiency, [](double x) { return x >= 1.0; }, ">= 1");
            t.real("circuit_power", s.user.circuit_power, positive(), "> 0");
            t.real("min_rate", s.user.min_rate, nonnegative(), ">= 0");
            t.real("max_tx_power", s.user.max_tx_power, positive(), "> 0");
            t.count("samples", c.fairness.samples, 1, 10'000'000);
            t.real("cell_radius", s.cell_radius, positive(), "> 0");
            t.real("subcarrier_bandwidth", s.subcarrier_bandwidth, positive(), "> 0");
            t.real("noise_psd_dbm_hz", s.noise_psd_dbm_hz, any_value(), "finite");
            t.real("min_distance", s.min_distance, positive(), "> 0");
            t.flag("fading", s.fading);
            break;
        }
        case ExperimentKind::delay_sweep: {
            auto& d = c.delay;
            auto& ep = d.episode;
            t.list("v", d.v_grid, nonnegative(), "v >= 0", false, false);
            t.list("alpha", d.alpha_grid, within(0.0, 1.0), "0 <= alpha <= 1", false, false);
            t.list("arrival_rate", d.arrival_rate_grid, nonnegative(), ">= 0", false, false);
            t.count("seeds", d.seeds, 1, 100000);
            t.count("slots", ep.slots, 1, 100'000'000);
            bind_topology(t, d.topology);
            t.count("subcarriers", ep.subcarriers, 1, 4096);
            t.choice("arrival_distribution", ep.traffic.distribution,
                     std::vector<std::pair<ArrivalDistribution, std::string>>{
                         {ArrivalDistribution::deterministic, "deterministic"},
                         {ArrivalDistribution::poisson, "poisson"},
                         {ArrivalDistribution::bernoulli_batch, "bernoulli_batch"}});
            t.real("batch_probability", ep.traffic.batch_probability, [](double x) { return x > 0.0 && x <= 1.0; },
                   "0 < batch_probability <= 1");
            t.list("traffic_profile", ep.traffic.profile, nonnegative(), ">= 0", true, false);
            t.real("circuit_power", ep.scheduler.power.rrh_circuit_power, nonnegative(), ">= 0");
            bind_downlink_power(t, ep.scheduler.power, ep.scheduler.limits);
            bind_channel(t, ep.channel);
            t.choice("interference", ep.scheduler.interference, kInterference);
            t.count("exhaustive_limit", ep.scheduler.exhaustive_limit, 0, 20);
            t.real("slot_duration", ep.slot_duration, positive(), "> 0");
            t.real("stability_factor", ep.stability_factor, positive(), "> 0");
            t.flag("baseline", d.compare_baseline);
            t.text("trace", d.trace_path);
            break;
        }
        case ExperimentKind::oracle: {
            auto& o = c.oracle;
            t.choice("kind", o.kind,
                     std::vector<std::pair<OracleKind, std::string>>{
                         {OracleKind::ee_grid, "ee_grid"},
                         {OracleKind::ee_exhaustive, "ee_exhaustive"},
                         {OracleKind::fairness_exhaustive, "fairness_exhaustive"},
                         {OracleKind::delay_brute_force, "delay_brute_force"},
                         {OracleKind::trace_replay, "trace_replay"}});
            t.count("num_rrhs", o.num_rrhs, 0, 64);
            t.count("num_users", o.num_users, 1, 64);
            t.count("num_subcarriers", o.num_subcarriers, 1, 4096);
            t.count("grid_points", o.grid_points, 2, 100'000'000);
            t.count("line_points", o.line_points, 2, 100'000'000);
            t.count("instances", o.instances, 1, 1'000'000);
            t.count("slots", o.slots, 1, 10'000'000);
            t.real("min_rate", o.min_rate, nonnegative(), ">= 0");
            t.real("v", o.v, nonnegative(), "v >= 0");
            t.real("alpha", o.alpha, within(0.0, 1.0), "0 <= alpha <= 1");
            t.real("arrival_rate", o.arrival_rate, nonnegative(), ">= 0");
            break;
        }
    }
    return t;
}

void validate_with(Table& t, const ExperimentConfig& c) {
    for (const auto& e : t.entries()) e.check();
    if (c.experiment == ExperimentKind::oracle) {
        try {
            check_oracle_guards(c.oracle);
        } catch (const OracleRefusal& err) {
            const std::string msg = err.what();
            std::string key = "kind";
            for (const char* k : {"num_rrhs", "num_users", "num_subcarriers", "grid_points", "line_points"}) {
                if (msg.find(k) != std::string::npos) key = k;
            }
            throw ConfigError(key, msg);
        }
    }
    if (c.experiment == ExperimentKind::planning_sweep) {
        try {
            c.planning.validate();
        } catch (const std::invalid_argument& err) {
            const std::string msg = err.what();
            const auto colon = msg.find(':');
            std::string key = msg.substr(0, colon);
            if (key == "isd_grid") key = "isd";
            if (key == "coverage_sinr_threshold_db") key = "sinr_threshold_db";
            if (key == "drops_per_point") key = "drops";
            throw ConfigError(key, colon == std::string::npos ? msg : msg.substr(colon + 2));
        }
    }
}

std::pair<std::string, std::string> split_assignment(std::string_view line, std::size_t line_no) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("line " + std::to_string(line_no), "expected 'key = value', got '" + std::string(line) + "'");
    }
    return {std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1)))};
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, std::optional<ExperimentKind> kind) {
    std::vector<std::tuple<std::string, std::string, std::size_t>> pairs;
    std::optional<ExperimentKind> declared;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto [key, value] = split_assignment(line, line_no);
        if (key == "experiment") {
            declared = parse_experiment_kind(value);
            if (!declared) throw ConfigError("experiment", "unknown experiment '" + value + "'");
            continue;
        }
        pairs.emplace_back(std::move(key), std::move(value), line_no);
    }
    if (declared && kind && *declared != *kind) {
        throw ConfigError("experiment", "file declares " + std::string(to_string(*declared)) + " but " +
                                            std::string(to_string(*kind)) + " was requested");
    }
    ExperimentConfig c;
    if (declared) {
        c.experiment = *declared;
    } else if (kind) {
        c.experiment = *kind;
    } else {
        throw ConfigError("experiment", "missing; set 'experiment = <name>' or pick a subcommand");
    }
    auto table = make_table(c);
    std::map<std::string, std::size_t> seen;
    for (const auto& [key, value, ln] : pairs) {
        auto* e = table.find(key);
        if (!e) {
            throw ConfigError(key, "unknown key for experiment " + std::string(to_string(c.experiment)) + " (line " +
                                       std::to_string(ln) + ")");
        }
        if (!seen.emplace(key, ln).second) throw ConfigError(key, "set twice (line " + std::to_string(ln) + ")");
        e->set(value);
    }
    validate_with(table, c);
    return c;
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
    auto [key, value] = split_assignment(trim(assignment), 0);
    if (key == "experiment") {
        if (parse_experiment_kind(value) != config.experiment) {
            throw ConfigError("experiment", "cannot be changed by an override");
        }
        return;
    }
    ExperimentConfig next = config;
    auto table = make_table(next);
    auto* e = table.find(key);
    if (!e) throw ConfigError(key, "unknown key for experiment " + std::string(to_string(config.experiment)));
    e->set(value);
    validate_with(table, next);
    config = std::move(next);
}

std::string emit_config(const ExperimentConfig& config) {
    ExperimentConfig copy = config;
    auto table = make_table(copy);
    std::ostringstream out;
    out << "experiment = " << to_string(config.experiment) << '\n';
    for (const auto& e : table.entries()) out << e.key << " = " << e.get() << '\n';
    return out.str();
}

std::vector<std::string> config_keys(ExperimentKind kind) {
    ExperimentConfig c;
    c.experiment = kind;
    auto table = make_table(c);
    std::vector<std::string> keys{"experiment"};
    for (const auto& e : table.entries()) keys.push_back(e.key);
    return keys;
}

void validate_config(const ExperimentConfig& config) {
    ExperimentConfig copy = config;
    auto table = make_table(copy);
    validate_with(table, copy);
}

bool same_config(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.experiment == b.experiment && emit_config(a) == emit_config(b);
}

}  // namespace hcran
