#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "trust_pomdp/mission_env.hpp"
#include "trust_pomdp/planner.hpp"
#include "trust_pomdp/simulator.hpp"

// CSV exports. All files are UTF-8 with LF line endings, a fixed header,
// and locale-independent shortest round-trip decimals.

namespace trust_pomdp {

class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& message)
        : std::runtime_error(path.string() + ": " + message), path_(path) {}
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// Shortest decimal that parses back to exactly `x`.
std::string format_number(double x);

inline constexpr const char* kPolicyGridHeader = "site,alpha,beta,q0,q1,value,action";
inline constexpr const char* kMissionHeader = "site,d,eta,d_tilde,d_hat";
inline constexpr const char* kEpisodeHeader = "episode,site,alpha,beta,a_r,a_h,eta,p,reward";
inline constexpr const char* kAggregateHeader =
    "label,reward,assumed_model,actual_model,alpha_init,beta_init,kappa1,kappa2,n_episodes,"
    "mean_reward,std_reward,se_reward,mean_final_trust,std_final_trust,se_final_trust";

struct PolicyGridRow {
    int site;
    double alpha;
    double beta;
    double q0;
    double q1;
    double value;
    int action;

    friend bool operator==(const PolicyGridRow&, const PolicyGridRow&) = default;
};

/// Rows of step `step` of `solution`, beta-major then alpha.
std::vector<PolicyGridRow> policy_grid_rows(const PolicySolution<double>& solution, int step = 0);

void write_policy_grid(const std::vector<PolicyGridRow>& rows, const std::filesystem::path& path);
void export_policy_grid(const PolicySolution<double>& solution, const std::filesystem::path& path, int step = 0);
std::vector<PolicyGridRow> read_policy_grid(const std::filesystem::path& path);

void write_mission(const Mission<double>& mission, const std::filesystem::path& path);

/// `first_episode` numbers the first log (episodes are 0-based).
void write_episode_logs(const std::vector<EpisodeLog>& logs, const std::filesystem::path& path,
                        std::size_t first_episode = 0);

struct AggregateRow {
    std::string label;
    ScenarioConfig scenario;
    AggregateStats stats;
};

std::string format_aggregate_row(const AggregateRow& row);
void write_aggregate_rows(const std::vector<AggregateRow>& rows, const std::filesystem::path& path);

/// Writes `text` to `path` in binary mode, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace trust_pomdp
