#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "duality/errors.hpp"
#include "duality/experiments.hpp"
#include "duality/state_io.hpp"
#include "duality/version.hpp"

using namespace duality;
using nlohmann::json;

namespace {

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm utc{};
    gmtime_r(&t, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config is not valid JSON: ") + err.what());
    }
}

void reject_unknown(const json& object, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        (void)value;
        bool found = false;
        for (const char* k : known)
            if (key == k) found = true;
        if (!found) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

std::vector<double> parse_grid(const json& node, const std::string& where) {
    if (node.is_array()) {
        std::vector<double> values;
        for (const auto& entry : node) {
            if (!entry.is_number()) throw ConfigError(where + " entries must be numbers");
            values.push_back(entry.get<double>());
        }
        if (values.empty()) throw ConfigError(where + " must not be empty");
        return values;
    }
    if (node.is_object()) {
        reject_unknown(node, {"start", "stop", "count"}, where);
        if (!node.contains("start") || !node.contains("stop") || !node.contains("count"))
            throw ConfigError(where + " needs start, stop and count");
        return linspace(node["start"].get<double>(), node["stop"].get<double>(),
                        node["count"].get<int>());
    }
    throw ConfigError(where + " must be an array or {start, stop, count}");
}

ParticleKind parse_kind(const json& node, const std::string& where) {
    if (node == "boson") return ParticleKind::boson;
    if (node == "fermion") return ParticleKind::fermion;
    throw ConfigError(where + " must be 'boson' or 'fermion'");
}

HomConfig parse_hom_params(const json& params) {
    reject_unknown(params, {"kind", "r_grid", "theta_grid"}, "params");
    HomConfig config;
    if (params.contains("kind")) config.kind = parse_kind(params["kind"], "params.kind");
    if (params.contains("r_grid")) config.r_grid = parse_grid(params["r_grid"], "params.r_grid");
    if (params.contains("theta_grid"))
        config.theta_grid = parse_grid(params["theta_grid"], "params.theta_grid");
    return config;
}

BoseHubbardConfig parse_bose_hubbard_params(const json& params) {
    reject_unknown(params, {"gamma_grid", "t_grid", "u_over_j_grid", "tilt", "povms"}, "params");
    BoseHubbardConfig config;
    if (params.contains("gamma_grid"))
        config.gamma_grid = parse_grid(params["gamma_grid"], "params.gamma_grid");
    if (params.contains("t_grid")) config.t_grid = parse_grid(params["t_grid"], "params.t_grid");
    if (params.contains("u_over_j_grid"))
        config.u_over_j_grid = parse_grid(params["u_over_j_grid"], "params.u_over_j_grid");
    if (params.contains("tilt")) config.tilt = params["tilt"].get<double>();
    if (params.contains("povms")) {
        config.povms.clear();
        for (const auto& entry : params["povms"]) config.povms.push_back(entry.get<std::string>());
        if (config.povms.empty()) throw ConfigError("params.povms must not be empty");
    }
    return config;
}

RandomSweepConfig parse_sweep_params(const json& params) {
    reject_unknown(params, {"count", "l_values", "n", "m", "N", "kind"}, "params");
    RandomSweepConfig config;
    if (params.contains("count")) config.count = params["count"].get<int>();
    if (params.contains("l_values")) {
        config.l_values.clear();
        for (const auto& entry : params["l_values"]) config.l_values.push_back(entry.get<int>());
        if (config.l_values.empty()) throw ConfigError("params.l_values must not be empty");
    }
    if (params.contains("n")) config.n_modes = params["n"].get<int>();
    if (params.contains("m")) config.letter_count = params["m"].get<int>();
    if (params.contains("N")) config.n_particles = params["N"].get<int>();
    if (params.contains("kind")) config.kind = parse_kind(params["kind"], "params.kind");
    return config;
}

struct OutputTarget {
    std::string path = "-";
    std::string format = "csv";
};

int emit(const Table& table, const RunMeta& meta, const OutputTarget& target) {
    std::ostringstream body;
    if (target.format == "csv")
        write_csv(table, meta, body);
    else if (target.format == "json")
        write_json(table, meta, body);
    else
        throw ConfigError("format must be csv or json");

    if (target.path == "-") {
        std::cout << body.str();
        return 0;
    }
    std::ofstream out(target.path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + target.path + "'");
    out << body.str();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partial-distinguishability measures, interference visibilities and "
                 "complementarity experiments for many-particle states"};
    app.set_version_flag("--version", std::string("duality ") + kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    std::optional<std::uint64_t> seed;
    int threads = 1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON experiment configuration")->required();
        cmd->add_option("--out", out_path, "output path ('-' for stdout)");
        cmd->add_option("--format", format, "csv or json");
        cmd->add_option("--seed", seed, "override the config seed");
        cmd->add_option("--threads", threads, "worker threads for grid evaluation");
    };

    CLI::App* hom = app.add_subcommand("hom", "Hong-Ou-Mandel sweep over (r, theta)");
    CLI::App* bose_hubbard = app.add_subcommand("bose-hubbard", "double-well visibility sweep");
    CLI::App* random_sweep =
        app.add_subcommand("random-sweep", "random-state complementarity scatter");
    CLI::App* measures_cmd = app.add_subcommand("measures", "evaluate measures for a state file");
    for (CLI::App* cmd : {hom, bose_hubbard, random_sweep, measures_cmd}) add_common(cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : 1;
    }

    try {
        const json config = load_config(config_path);
        if (!config.is_object()) throw ConfigError("config must be a JSON object");
        reject_unknown(config, {"experiment", "seed", "output", "params"}, "config");

        const std::string experiment =
            config.contains("experiment") ? config["experiment"].get<std::string>() : "";
        const std::string subcommand = app.get_subcommands().front()->get_name();
        const std::string expected = subcommand == "bose-hubbard"    ? "bose_hubbard"
                                     : subcommand == "random-sweep" ? "random_sweep"
                                                                    : subcommand;
        if (experiment != expected)
            throw ConfigError("config experiment '" + experiment +
                              "' does not match subcommand '" + subcommand + "'");

        std::uint64_t effective_seed = 0;
        if (config.contains("seed")) effective_seed = config["seed"].get<std::uint64_t>();
        if (seed) effective_seed = *seed;

        OutputTarget target;
        if (config.contains("output")) {
            reject_unknown(config["output"], {"path", "format"}, "config.output");
            if (config["output"].contains("path")) target.path = config["output"]["path"];
            if (config["output"].contains("format")) target.format = config["output"]["format"];
        }
        if (!out_path.empty()) target.path = out_path;
        if (!format.empty()) target.format = format;

        const json params = config.contains("params") ? config["params"] : json::object();

        json canonical = config;
        canonical["seed"] = effective_seed;
        RunMeta meta;
        meta.experiment = expected;
        meta.seed = effective_seed;
        meta.config_hash = fnv1a_hex(canonical.dump());
        meta.timestamp = timestamp_utc();

        if (expected == "hom")
            return emit(to_table(run_hom(parse_hom_params(params), threads)), meta, target);
        if (expected == "bose_hubbard")
            return emit(to_table(run_bose_hubbard(parse_bose_hubbard_params(params), threads)),
                        meta, target);
        if (expected == "random_sweep") {
            RandomSweepConfig sweep = parse_sweep_params(params);
            sweep.seed = effective_seed;
            return emit(to_table(run_random_sweep(sweep, threads)), meta, target);
        }
        // measures
        reject_unknown(params, {"state_file"}, "params");
        if (!params.contains("state_file")) throw ConfigError("measures needs params.state_file");
        const PreparedState state = read_state_file(params["state_file"].get<std::string>());
        return emit(to_table(run_measures(state)), meta, target);
    } catch (const StateFileError& err) {
        std::cerr << "state error: " << err.what() << '\n';
        if (!err.report().ok()) std::cerr << err.report().to_string() << '\n';
        return 2;
    } catch (const StateValidationError& err) {
        std::cerr << "state error: " << err.what() << '\n';
        return 2;
    } catch (const InvariantViolationError& err) {
        std::cerr << "invariant violation: " << err.what() << '\n';
        return 3;
    } catch (const NonPhysicalError& err) {
        std::cerr << "invariant violation: " << err.what() << '\n';
        return 3;
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 1;
    } catch (const json::exception& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 1;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
