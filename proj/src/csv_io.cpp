#include "trust_pomdp/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace trust_pomdp {

std::string format_number(double x) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, x);
    if (result.ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, result.ptr);
}

namespace {

double parse_number(std::string_view s, const std::filesystem::path& path, std::size_t line) {
    double x = 0.0;
    const auto result = std::from_chars(s.data(), s.data() + s.size(), x);
    if (result.ec != std::errc() || result.ptr != s.data() + s.size()) {
        throw IoError(path, "line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
    }
    return x;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError(path.parent_path(), "cannot create directory: " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out << text;
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

std::vector<PolicyGridRow> policy_grid_rows(const PolicySolution<double>& solution, int step) {
    const auto& grid = solution.step(step);
    std::vector<PolicyGridRow> rows;
    rows.reserve(static_cast<std::size_t>(grid.value.size()));
    for (Eigen::Index j = 0; j < grid.n_beta(); ++j) {
        for (Eigen::Index i = 0; i < grid.n_alpha(); ++i) {
            const auto b = solution.belief_at(i, j);
            rows.push_back({solution.first_site() + step, b.alpha(), b.beta(), grid.q_skip(i, j), grid.q_wear(i, j),
                            grid.value(i, j), static_cast<int>(grid.action(i, j))});
        }
    }
    return rows;
}

void write_policy_grid(const std::vector<PolicyGridRow>& rows, const std::filesystem::path& path) {
    std::string text = std::string(kPolicyGridHeader) + "\n";
    for (const auto& r : rows) {
        text += std::to_string(r.site) + ',' + format_number(r.alpha) + ',' + format_number(r.beta) + ',' +
                format_number(r.q0) + ',' + format_number(r.q1) + ',' + format_number(r.value) + ',' +
                std::to_string(r.action) + '\n';
    }
    write_text_file(path, text);
}

void export_policy_grid(const PolicySolution<double>& solution, const std::filesystem::path& path, int step) {
    if (solution.n_steps() == 0) throw std::invalid_argument("export_policy_grid: empty solution");
    write_policy_grid(policy_grid_rows(solution, step), path);
}

std::vector<PolicyGridRow> read_policy_grid(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    std::string line;
    if (!std::getline(in, line) || line != kPolicyGridHeader) throw IoError(path, "missing policy grid header");
    std::vector<PolicyGridRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 7) throw IoError(path, "line " + std::to_string(line_no) + ": expected 7 fields");
        rows.push_back({static_cast<int>(parse_number(f[0], path, line_no)), parse_number(f[1], path, line_no),
                        parse_number(f[2], path, line_no), parse_number(f[3], path, line_no),
                        parse_number(f[4], path, line_no), parse_number(f[5], path, line_no),
                        static_cast<int>(parse_number(f[6], path, line_no))});
    }
    return rows;
}

void write_mission(const Mission<double>& mission, const std::filesystem::path& path) {
    std::string text = std::string(kMissionHeader) + "\n";
    int k = 1;
    for (const auto& s : mission) {
        text += std::to_string(k++) + ',' + format_number(s.danger) + ',' + (s.threat_present ? "1" : "0") + ',' +
                format_number(s.reported) + ',' + format_number(s.sensed) + '\n';
    }
    write_text_file(path, text);
}

void write_episode_logs(const std::vector<EpisodeLog>& logs, const std::filesystem::path& path,
                        std::size_t first_episode) {
    std::string text = std::string(kEpisodeHeader) + "\n";
    for (std::size_t e = 0; e < logs.size(); ++e) {
        for (const auto& r : logs[e].sites) {
            text += std::to_string(first_episode + e) + ',' + std::to_string(r.site) + ',' +
                    format_number(r.belief_before.alpha()) + ',' + format_number(r.belief_before.beta()) + ',' +
                    std::to_string(to_bit(r.robot_action)) + ',' + std::to_string(to_bit(r.human_action)) + ',' +
                    (r.threat_present ? "1" : "0") + ',' + (r.performance ? "1" : "0") + ',' +
                    format_number(r.reward) + '\n';
        }
    }
    write_text_file(path, text);
}

std::string format_aggregate_row(const AggregateRow& row) {
    const auto& sc = row.scenario;
    const auto& st = row.stats;
    std::ostringstream out;
    out << row.label << ',' << (sc.reward_spec.trust_seeking ? "trust_seeking" : "task") << ','
        << to_string(sc.assumed_model) << ',' << to_string(sc.actual_model) << ','
        << format_number(sc.trust_params.alpha_init) << ',' << format_number(sc.trust_params.beta_init) << ','
        << format_number(sc.env.kappa1) << ',' << format_number(sc.env.kappa2) << ',' << st.n_episodes << ','
        << format_number(st.mean_reward) << ',' << format_number(st.std_reward) << ','
        << format_number(st.se_reward()) << ',' << format_number(st.mean_final_trust) << ','
        << format_number(st.std_final_trust) << ',' << format_number(st.se_final_trust());
    return out.str();
}

void write_aggregate_rows(const std::vector<AggregateRow>& rows, const std::filesystem::path& path) {
    std::string text = std::string(kAggregateHeader) + "\n";
    for (const auto& r : rows) text += format_aggregate_row(r) + '\n';
    write_text_file(path, text);
}

}  // namespace trust_pomdp
