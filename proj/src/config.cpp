#include "trust_pomdp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

namespace trust_pomdp {

using nlohmann::json;

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::kSolve: return "solve";
        case ExperimentKind::kSimulate: return "simulate";
        case ExperimentKind::kExperiment1: return "exp1";
        case ExperimentKind::kExperiment2: return "exp2";
    }
    return "simulate";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "solve") return ExperimentKind::kSolve;
    if (s == "simulate") return ExperimentKind::kSimulate;
    if (s == "exp1") return ExperimentKind::kExperiment1;
    if (s == "exp2") return ExperimentKind::kExperiment2;
    throw std::invalid_argument("unknown experiment '" + s + "'");
}

namespace {

/// Walks one JSON object, reading optional fields and rejecting any key
/// that was never asked for.
class ObjectReader {
public:
    ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) throw SchemaError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    /// Rejects keys that no accessor asked for.
    void done() const {
        for (const auto& [key, _] : node_.items()) {
            if (!seen_.contains(key)) throw SchemaError(join(key), "unknown field");
        }
    }

    std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json* find(const std::string& key) {
        seen_.insert(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out) {
        if (const json* v = find(key)) {
            if (!v->is_number()) throw SchemaError(join(key), "expected a number");
            out = v->get<double>();
        }
    }

    template <typename Int>
    void integer(const std::string& key, Int& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_integer()) throw SchemaError(join(key), "expected an integer");
            if constexpr (std::is_unsigned_v<Int>) {
                if (v->is_number_unsigned() || v->get<long long>() >= 0) {
                    out = v->get<Int>();
                } else {
                    throw SchemaError(join(key), "expected a non-negative integer");
                }
            } else {
                out = v->get<Int>();
            }
        }
    }

    void boolean(const std::string& key, bool& out) {
        if (const json* v = find(key)) {
            if (!v->is_boolean()) throw SchemaError(join(key), "expected a boolean");
            out = v->get<bool>();
        }
    }

    void string(const std::string& key, std::string& out) {
        if (const json* v = find(key)) {
            if (!v->is_string()) throw SchemaError(join(key), "expected a string");
            out = v->get<std::string>();
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& field, const std::string& message) {
    if (!ok) throw ConstraintError(field, message);
}

BehaviorModel read_model(ObjectReader& r, const std::string& key, BehaviorModel fallback) {
    std::string name(to_string(fallback));
    r.string(key, name);
    try {
        return behavior_model_from_string(name);
    } catch (const std::invalid_argument&) {
        throw SchemaError(r.join(key), "expected \"reverse_psychology\" or \"disuse\", got \"" + name + "\"");
    }
}

void read_cost_table(const json& node, CostTable& table) {
    ObjectReader r(node, "reward.cost_table");
    auto cell = [&](const std::string& key, GearChoice human, bool threat) {
        const json* v = r.find(key);
        if (!v) return;
        if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
            throw SchemaError(r.join(key), "expected [health_loss, time_cost]");
        }
        table.at(human, threat) = {(*v)[0].get<double>(), (*v)[1].get<double>()};
    };
    cell("wear_threat", GearChoice::kWear, true);
    cell("wear_no_threat", GearChoice::kWear, false);
    cell("skip_threat", GearChoice::kSkip, true);
    cell("skip_no_threat", GearChoice::kSkip, false);
    r.done();
}

}  // namespace

RunConfig parse_config(const json& doc) {
    RunConfig config;
    auto& sc = config.scenario;
    {
        ObjectReader root(doc, "");
        int version = kConfigSchemaVersion;
        root.integer("schema_version", version);
        if (version != kConfigSchemaVersion) {
            throw SchemaError("schema_version", "unsupported version " + std::to_string(version));
        }

        std::string experiment = to_string(config.experiment);
        root.string("experiment", experiment);
        try {
            config.experiment = experiment_kind_from_string(experiment);
        } catch (const std::invalid_argument&) {
            throw SchemaError("experiment", "expected one of solve, simulate, exp1, exp2");
        }

        std::string out = config.output_dir.string();
        root.string("output_dir", out);
        config.output_dir = out;
        root.integer("solve_site", config.solve_site);

        if (const json* env = root.find("env")) {
            ObjectReader r(*env, "env");
            r.integer("n_sites", sc.env.n_sites);
            r.number("kappa1", sc.env.kappa1);
            r.number("kappa2", sc.env.kappa2);
            r.integer("seed", sc.env.seed);
            r.done();
        }
        if (const json* trust = root.find("trust_params")) {
            ObjectReader r(*trust, "trust_params");
            r.number("w_success", sc.trust_params.w_success);
            r.number("w_failure", sc.trust_params.w_failure);
            r.number("alpha_init", sc.trust_params.alpha_init);
            r.number("beta_init", sc.trust_params.beta_init);
            r.done();
        }
        if (const json* reward = root.find("reward")) {
            ObjectReader r(*reward, "reward");
            r.number("health_weight", sc.reward_spec.health_weight);
            r.number("time_weight", sc.reward_spec.time_weight);
            r.number("bonus_scale", sc.reward_spec.bonus_scale);
            r.number("bonus_rate", sc.reward_spec.bonus_rate);
            r.boolean("trust_seeking", sc.reward_spec.trust_seeking);
            if (const json* table = r.find("cost_table")) read_cost_table(*table, sc.reward_spec.cost_table);
            r.done();
        }
        sc.assumed_model = read_model(root, "assumed_model", sc.assumed_model);
        sc.actual_model = read_model(root, "actual_model", sc.actual_model);
        root.number("discount", sc.discount);
        root.integer("n_episodes", sc.n_episodes);
        root.integer("master_seed", sc.master_seed);
        if (const json* grid = root.find("grid")) {
            ObjectReader r(*grid, "grid");
            r.number("alpha_min", config.grid.alpha_min);
            r.number("alpha_max", config.grid.alpha_max);
            r.number("beta_min", config.grid.beta_min);
            r.number("beta_max", config.grid.beta_max);
            r.done();
        }
        root.done();
    }

    require(sc.env.n_sites >= 1, "env.n_sites", "must be at least 1");
    require(sc.env.kappa1 >= 1.0, "env.kappa1", "must be >= 1");
    require(sc.env.kappa2 >= sc.env.kappa1, "env.kappa2", "must be >= env.kappa1");
    require(sc.trust_params.w_success > 0.0, "trust_params.w_success", "must be positive");
    require(sc.trust_params.w_failure > 0.0, "trust_params.w_failure", "must be positive");
    require(sc.trust_params.alpha_init > 0.0, "trust_params.alpha_init", "must be positive");
    require(sc.trust_params.beta_init > 0.0, "trust_params.beta_init", "must be positive");
    require(sc.reward_spec.health_weight >= 0.0, "reward.health_weight", "must be non-negative");
    require(sc.reward_spec.time_weight >= 0.0, "reward.time_weight", "must be non-negative");
    require(sc.discount > 0.0 && sc.discount <= 1.0, "discount", "must lie in (0, 1]");
    require(sc.n_episodes >= 1, "n_episodes", "must be at least 1");
    require(config.solve_site >= 1 && config.solve_site <= sc.env.n_sites, "solve_site",
            "must lie in [1, env.n_sites]");
    require(config.grid.alpha_min > 0.0, "grid.alpha_min", "must be positive");
    require(config.grid.beta_min > 0.0, "grid.beta_min", "must be positive");
    require(config.grid.alpha_max >= config.grid.alpha_min, "grid.alpha_max", "must be >= grid.alpha_min");
    require(config.grid.beta_max >= config.grid.beta_min, "grid.beta_max", "must be >= grid.beta_min");
    require(!config.output_dir.empty(), "output_dir", "must not be empty");
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("", "cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return parse_config(json::object());
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("", path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

json to_json(const RunConfig& config) {
    const auto& sc = config.scenario;
    const auto cell = [&](GearChoice human, bool threat) {
        const auto& c = sc.reward_spec.cost_table.at(human, threat);
        return json::array({c.health, c.time});
    };
    return {
        {"schema_version", kConfigSchemaVersion},
        {"experiment", to_string(config.experiment)},
        {"output_dir", config.output_dir.string()},
        {"solve_site", config.solve_site},
        {"env", {{"n_sites", sc.env.n_sites}, {"kappa1", sc.env.kappa1}, {"kappa2", sc.env.kappa2}, {"seed", sc.env.seed}}},
        {"trust_params",
         {{"w_success", sc.trust_params.w_success},
          {"w_failure", sc.trust_params.w_failure},
          {"alpha_init", sc.trust_params.alpha_init},
          {"beta_init", sc.trust_params.beta_init}}},
        {"reward",
         {{"health_weight", sc.reward_spec.health_weight},
          {"time_weight", sc.reward_spec.time_weight},
          {"bonus_scale", sc.reward_spec.bonus_scale},
          {"bonus_rate", sc.reward_spec.bonus_rate},
          {"trust_seeking", sc.reward_spec.trust_seeking},
          {"cost_table",
           {{"wear_threat", cell(GearChoice::kWear, true)},
            {"wear_no_threat", cell(GearChoice::kWear, false)},
            {"skip_threat", cell(GearChoice::kSkip, true)},
            {"skip_no_threat", cell(GearChoice::kSkip, false)}}}}},
        {"assumed_model", std::string(to_string(sc.assumed_model))},
        {"actual_model", std::string(to_string(sc.actual_model))},
        {"discount", sc.discount},
        {"n_episodes", sc.n_episodes},
        {"master_seed", sc.master_seed},
        {"grid",
         {{"alpha_min", config.grid.alpha_min},
          {"alpha_max", config.grid.alpha_max},
          {"beta_min", config.grid.beta_min},
          {"beta_max", config.grid.beta_max}}},
    };
}

}  // namespace trust_pomdp
