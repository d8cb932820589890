#include "aggsim/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "aggsim/errors.hpp"

namespace aggsim {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string field_error(std::string_view key, std::string_view value, std::string_view what) {
    return std::string(key) + ": " + std::string(what) + " (got '" + std::string(value) + "')";
}

double parse_double(std::string_view key, std::string_view value) {
    // from_chars for double is not available on every toolchain we target.
    const std::string text(value);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) throw ConfigError(field_error(key, value, "expected a number"));
    return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(field_error(key, value, "expected true or false"));
}

template <class Int>
Int parse_int(std::string_view key, std::string_view value) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError(field_error(key, value, "expected an integer"));
    return v;
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> items;
    while (!value.empty()) {
        const auto comma = value.find(',');
        const auto item = trim(value.substr(0, comma));
        if (!item.empty()) items.push_back(item);
        if (comma == std::string_view::npos) break;
        value.remove_prefix(comma + 1);
    }
    return items;
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view key, std::string_view value, Parse parse) {
    std::vector<T> out;
    for (auto item : split_list(value)) out.push_back(parse(key, item));
    if (out.empty()) throw ConfigError(field_error(key, value, "expected a non-empty comma-separated list"));
    return out;
}

template <class T, class Format>
std::string join(const std::vector<T>& items, Format fmt) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += fmt(items[i]);
    }
    return out;
}

}  // namespace

std::string format_number(double value) {
    char buf[32];
    for (int precision = 6; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

Variant parse_variant(std::string_view text) {
    if (text == "baseline") return Variant::Baseline;
    if (text == "simplified") return Variant::Simplified;
    throw ConfigError(field_error("variant", text, "expected 'baseline' or 'simplified'"));
}

void apply_setting(RunSettings& s, std::string_view key, std::string_view value) {
    auto& t = s.trial;
    auto& c = t.controller;
    value = trim(value);
    const auto num = [&] { return parse_double(key, value); };

    if (key == "swarm_size") t.swarm_size = parse_int<int>(key, value);
    else if (key == "rho_informed") t.rho_informed = num();
    else if (key == "rho_black") t.rho_black = num();
    else if (key == "variant") t.variant = parse_variant(value);
    else if (key == "arena_diameter") { t.arena.arena_diameter = num(); s.arena_explicit = true; }
    else if (key == "site_diameter") { t.arena.site_diameter = num(); s.arena_explicit = true; }
    else if (key == "body_radius") t.body.body_radius = num();
    else if (key == "proximity_range") t.body.proximity_range = num();
    else if (key == "comm_range") t.body.comm_range = num();
    else if (key == "broadcast_during_entry") t.body.broadcast_during_entry = parse_bool(key, value);
    else if (key == "a") c.a = num();
    else if (key == "k") c.k = num();
    else if (key == "alpha") c.alpha = num();
    else if (key == "beta") c.beta = num();
    else if (key == "cauchy_rho") c.cauchy_rho = num();
    else if (key == "straight_duration") c.straight_duration = num();
    else if (key == "entry_forward_duration") c.entry_forward_duration = num();
    else if (key == "fsm_update_period") c.fsm_update_period = num();
    else if (key == "linear_speed") c.linear_speed = num();
    else if (key == "duration") t.duration = num();
    else if (key == "tick_dt") t.tick_dt = num();
    else if (key == "seed") t.seed = parse_int<std::uint64_t>(key, value);
    else if (key == "occupancy_interval") t.occupancy_interval = num();
    else if (key == "trajectory_interval") s.trajectory_interval = num();
    else if (key == "workers") s.workers = parse_int<int>(key, value);
    else if (key == "sweep.swarm_sizes") s.sweep.swarm_sizes = parse_list<int>(key, value, parse_int<int>);
    else if (key == "sweep.rho_informed") s.sweep.rho_informed_values = parse_list<double>(key, value, parse_double);
    else if (key == "sweep.rho_black") s.sweep.rho_black_values = parse_list<double>(key, value, parse_double);
    else if (key == "sweep.variants")
        s.sweep.variants = parse_list<Variant>(key, value, [](std::string_view, std::string_view v) { return parse_variant(v); });
    else if (key == "sweep.trials_per_cell") s.sweep.trials_per_cell = parse_int<int>(key, value);
    else if (key == "sweep.base_seed") s.sweep.base_seed = parse_int<std::uint64_t>(key, value);
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

RunSettings parse_config(std::istream& in) {
    RunSettings settings;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        view = trim(view.substr(0, view.find('#')));
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        try {
            apply_setting(settings, trim(view.substr(0, eq)), view.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(e.what()) + " at line " + std::to_string(line_no));
        }
    }
    return settings;
}

RunSettings load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");
    return parse_config(in);
}

void finalize(RunSettings& s) {
    if (s.arena_explicit)
        s.trial.arena = make_arena(s.trial.arena.arena_diameter, s.trial.arena.site_diameter);
    else
        s.trial.arena = make_arena(s.trial.swarm_size);
    validate(s.trial);
    if (s.workers < 0) throw ConfigError("workers must be non-negative");
    if (!(s.trajectory_interval > 0.0)) throw ConfigError("trajectory_interval must be positive");
}

std::string dump_config(const RunSettings& s) {
    const auto& t = s.trial;
    const auto& c = t.controller;
    std::ostringstream out;
    const auto put = [&](std::string_view key, const std::string& value) { out << key << " = " << value << '\n'; };
    const auto num = [](double v) { return format_number(v); };

    out << "# trial\n";
    put("swarm_size", std::to_string(t.swarm_size));
    put("rho_informed", num(t.rho_informed));
    put("rho_black", num(t.rho_black));
    put("variant", std::string(to_string(t.variant)));
    put("duration", num(t.duration));
    put("tick_dt", num(t.tick_dt));
    put("seed", std::to_string(t.seed));
    put("occupancy_interval", num(t.occupancy_interval));
    if (s.arena_explicit) {
        put("arena_diameter", num(t.arena.arena_diameter));
        put("site_diameter", num(t.arena.site_diameter));
    } else {
        out << "# arena_diameter = " << num(t.arena.arena_diameter) << "  (preset for swarm_size)\n";
        out << "# site_diameter = " << num(t.arena.site_diameter) << "  (preset for swarm_size)\n";
    }
    out << "# body\n";
    put("body_radius", num(t.body.body_radius));
    put("proximity_range", num(t.body.proximity_range));
    put("comm_range", num(t.body.comm_range));
    put("broadcast_during_entry", t.body.broadcast_during_entry ? "true" : "false");
    out << "# controller\n";
    put("a", num(c.a));
    put("k", num(c.k));
    put("alpha", num(c.alpha));
    put("beta", num(c.beta));
    put("cauchy_rho", num(c.cauchy_rho));
    put("straight_duration", num(c.straight_duration));
    put("entry_forward_duration", num(c.entry_forward_duration));
    put("fsm_update_period", num(c.fsm_update_period));
    put("linear_speed", num(c.linear_speed));
    out << "# execution\n";
    put("workers", std::to_string(s.workers));
    put("trajectory_interval", num(s.trajectory_interval));
    out << "# sweep\n";
    put("sweep.swarm_sizes", join(s.sweep.swarm_sizes, [](int v) { return std::to_string(v); }));
    put("sweep.rho_informed", join(s.sweep.rho_informed_values, num));
    put("sweep.rho_black", join(s.sweep.rho_black_values, num));
    put("sweep.variants", join(s.sweep.variants, [](Variant v) { return std::string(to_string(v)); }));
    put("sweep.trials_per_cell", std::to_string(s.sweep.trials_per_cell));
    put("sweep.base_seed", std::to_string(s.sweep.base_seed));
    return out.str();
}

}  // namespace aggsim
