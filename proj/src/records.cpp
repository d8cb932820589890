#include "aggsim/records.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aggsim/config.hpp"
#include "aggsim/errors.hpp"

namespace aggsim {

namespace {

constexpr int kRawColumns = 11;

std::string hex_id(std::uint64_t id) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id));
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

template <class Int>
Int parse_field(const char* name, const std::string& text) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError(std::string(name) + ": expected an integer (got '" + text + "')");
    return v;
}

double parse_real(const char* name, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size())
        throw ConfigError(std::string(name) + ": expected a number (got '" + text + "')");
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    return out;
}

}  // namespace

std::string raw_csv_header() {
    return "cell,trial,swarm_size,rho_informed,rho_black,variant,seed,status,black,white,elsewhere";
}

std::string raw_csv_row(const TrialRecord& r) {
    std::ostringstream out;
    out << hex_id(r.cell.id()) << ',' << r.trial << ',' << r.cell.swarm_size << ','
        << format_number(r.cell.rho_informed) << ',' << format_number(r.cell.rho_black) << ','
        << to_string(r.cell.variant) << ',' << r.seed << ',' << (r.ok ? "ok" : "failed") << ',' << r.black << ','
        << r.white << ',' << r.elsewhere;
    return out.str();
}

std::string raw_json_line(const TrialRecord& r) {
    nlohmann::ordered_json j;
    j["cell"] = hex_id(r.cell.id());
    j["trial"] = r.trial;
    j["swarm_size"] = r.cell.swarm_size;
    j["rho_informed"] = r.cell.rho_informed;
    j["rho_black"] = r.cell.rho_black;
    j["variant"] = to_string(r.cell.variant);
    j["seed"] = r.seed;
    j["status"] = r.ok ? "ok" : "failed";
    j["black"] = r.black;
    j["white"] = r.white;
    j["elsewhere"] = r.elsewhere;
    if (!r.ok) j["error"] = r.error;
    return j.dump();
}

std::vector<TrialRecord> read_raw_csv(std::istream& in) {
    std::vector<TrialRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line == raw_csv_header()) continue;
        const auto fail = [&](const std::string& why) {
            return DataError("line " + std::to_string(line_no) + ": " + why);
        };
        const auto f = split_csv(line);
        if (static_cast<int>(f.size()) != kRawColumns)
            throw fail("expected " + std::to_string(kRawColumns) + " fields, found " + std::to_string(f.size()));
        TrialRecord r;
        try {
            r.cell = {parse_field<int>("swarm_size", f[2]), parse_real("rho_informed", f[3]),
                      parse_real("rho_black", f[4]), parse_variant(f[5])};
            r.trial = parse_field<int>("trial", f[1]);
            r.seed = parse_field<std::uint64_t>("seed", f[6]);
            r.black = parse_field<int>("black", f[8]);
            r.white = parse_field<int>("white", f[9]);
            r.elsewhere = parse_field<int>("elsewhere", f[10]);
        } catch (const ConfigError& e) {
            throw fail(e.what());
        }
        if (f[7] != "ok" && f[7] != "failed") throw fail("status must be 'ok' or 'failed'");
        r.ok = f[7] == "ok";
        if (f[0] != hex_id(r.cell.id())) throw fail("cell id does not match the cell parameters");
        if (r.ok && r.black + r.white + r.elsewhere != r.cell.swarm_size)
            throw fail("site counts do not add up to swarm_size");
        records.push_back(r);
    }
    if (records.empty()) throw DataError("no trial records found");
    return records;
}

std::vector<TrialRecord> read_raw_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return read_raw_csv(in);
}

void write_raw_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records) {
    auto out = open_out(path);
    out << raw_csv_header() << '\n';
    for (const auto& r : records) out << raw_csv_row(r) << '\n';
}

void write_raw_jsonl(const std::filesystem::path& path, const std::vector<TrialRecord>& records) {
    auto out = open_out(path);
    for (const auto& r : records) out << raw_json_line(r) << '\n';
}

void write_summary_csv(std::ostream& out, const SummaryTable& table) {
    out << "swarm_size,rho_informed,rho_black,variant,trials,failed,median_black,median_white,iqr_black,iqr_white,"
           "median_elsewhere\n";
    for (const auto& c : table.cells) {
        out << c.cell.swarm_size << ',' << format_number(c.cell.rho_informed) << ','
            << format_number(c.cell.rho_black) << ',' << to_string(c.cell.variant) << ',' << c.trials << ','
            << c.failed << ',' << format_number(c.median_black) << ',' << format_number(c.median_white) << ','
            << format_number(c.iqr_black) << ',' << format_number(c.iqr_white) << ','
            << format_number(c.median_elsewhere) << '\n';
    }
}

void write_failures_json(std::ostream& out, const std::vector<TrialRecord>& records) {
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        if (r.ok) continue;
        failures.push_back({{"cell", hex_id(r.cell.id())},
                            {"swarm_size", r.cell.swarm_size},
                            {"rho_informed", r.cell.rho_informed},
                            {"rho_black", r.cell.rho_black},
                            {"variant", to_string(r.cell.variant)},
                            {"trial", r.trial},
                            {"seed", r.seed},
                            {"error", r.error}});
    }
    out << failures.dump(2) << '\n';
}

void write_heatmap_csv(std::ostream& out, const SummaryTable& table, Variant variant, int swarm_size, Site site,
                       HeatmapStat stat) {
    std::set<double> rows;
    std::set<double> cols;
    std::map<std::pair<double, double>, const CellSummary*> grid;
    for (const auto& c : table.cells) {
        if (c.cell.variant != variant || c.cell.swarm_size != swarm_size) continue;
        rows.insert(c.cell.rho_informed);
        cols.insert(c.cell.rho_black);
        grid[{c.cell.rho_informed, c.cell.rho_black}] = &c;
    }
    out << "rho_informed\\rho_black";
    for (double col : cols) out << ',' << format_number(col);
    out << '\n';
    for (double row : rows) {
        out << format_number(row);
        for (double col : cols) {
            out << ',';
            const auto it = grid.find({row, col});
            if (it == grid.end() || it->second->raw_black.empty()) continue;
            const CellSummary& c = *it->second;
            double value = 0.0;
            if (stat == HeatmapStat::Median)
                value = site == Site::Black ? c.median_black : c.median_white;
            else
                value = site == Site::Black ? c.iqr_black : c.iqr_white;
            out << format_number(value);
        }
        out << '\n';
    }
}

std::vector<std::filesystem::path> write_heatmaps(const std::filesystem::path& dir, const SummaryTable& table) {
    std::filesystem::create_directories(dir);
    std::set<std::pair<Variant, int>> groups;
    for (const auto& c : table.cells) groups.insert({c.cell.variant, c.cell.swarm_size});

    std::vector<std::filesystem::path> written;
    for (const auto& [variant, n] : groups) {
        for (HeatmapStat stat : {HeatmapStat::Median, HeatmapStat::Iqr}) {
            for (Site site : {Site::Black, Site::White}) {
                const std::string name = std::string(stat == HeatmapStat::Median ? "median" : "iqr") + "_" +
                                         std::string(to_string(site)) + "_" + std::string(to_string(variant)) +
                                         "_N" + std::to_string(n) + ".csv";
                auto out = open_out(dir / name);
                write_heatmap_csv(out, table, variant, n, site, stat);
                written.push_back(dir / name);
            }
        }
    }
    return written;
}

void write_histogram_csv(std::ostream& out, const SymmetryReport& report) {
    out << "site,robots,frequency\n";
    for (const auto& [robots, freq] : report.black_histogram) out << "black," << robots << ',' << freq << '\n';
    for (const auto& [robots, freq] : report.white_histogram) out << "white," << robots << ',' << freq << '\n';
}

std::string trial_result_json(const TrialConfig& config, const TrialResult& result) {
    nlohmann::ordered_json j;
    j["swarm_size"] = config.swarm_size;
    j["rho_informed"] = config.rho_informed;
    j["rho_black"] = config.rho_black;
    j["variant"] = to_string(config.variant);
    j["seed"] = config.seed;
    j["duration"] = config.duration;
    j["tick_dt"] = config.tick_dt;
    j["robots_on_black"] = result.robots_on_black;
    j["robots_on_white"] = result.robots_on_white;
    j["robots_elsewhere"] = result.robots_elsewhere;
    auto robots = nlohmann::ordered_json::array();
    for (const auto& r : result.per_robot_final) {
        robots.push_back({{"kind", to_string(r.kind)},
                          {"state", to_string(r.state)},
                          {"site", r.site ? nlohmann::ordered_json(to_string(*r.site)) : nlohmann::ordered_json()}});
    }
    j["robots"] = std::move(robots);
    if (!result.occupancy.empty()) {
        auto series = nlohmann::ordered_json::array();
        for (const auto& s : result.occupancy)
            series.push_back({{"t", s.time}, {"black", s.black}, {"white", s.white}, {"staying", s.staying}});
        j["occupancy"] = std::move(series);
    }
    return j.dump(2) + "\n";
}

}  // namespace aggsim
