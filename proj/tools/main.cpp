#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "msl/scenario.hpp"

namespace {

using nlohmann::ordered_json;

int run_one(const std::string& scenario, const std::string& config_path, std::uint64_t seed,
            bool seed_set, const std::string& out_flag) {
    ordered_json config;
    {
        std::ifstream is(config_path);
        if (!is) {
            std::cout << ordered_json{{"status", "error"},
                                      {"error",
                                       ordered_json{{"code", "io"},
                                                    {"message", "cannot open config file '" +
                                                                    config_path + "'"}}}}
                             .dump()
                      << std::endl;
            return 2;
        }
        try {
            config = ordered_json::parse(is);
        } catch (const nlohmann::json::exception& e) {
            std::cout << ordered_json{{"status", "error"},
                                      {"error", ordered_json{{"code", "parse"},
                                                             {"message", e.what()}}}}
                             .dump()
                      << std::endl;
            return 2;
        }
    }
    if (seed_set) config["seed"] = seed;

    std::string out_dir = out_flag;
    if (out_dir.empty()) {
        if (const char* env = std::getenv("MIXED_SDE_LAB_OUT")) out_dir = env;
    }
    if (out_dir.empty()) out_dir = "msl-out/" + scenario;

    try {
        ordered_json report;
        const int rc = msl::run_scenario(scenario, config, out_dir, &report);
        std::cout << report.dump(2) << std::endl;
        return rc;
    } catch (const msl::ValidationError& e) {
        std::cout << e.record().dump() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cout << ordered_json{{"status", "error"},
                                  {"error",
                                   ordered_json{{"code", "runtime"}, {"message", e.what()}}}}
                         .dump()
                  << std::endl;
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed-sde-lab: a numerical laboratory for SDEs driven jointly by a Wiener "
                 "process and fractional Brownian motion (H > 1/2)"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list scenarios, parameters and the claims they check");

    struct Args {
        std::string config;
        std::string out;
        std::uint64_t seed = 0;
        bool seed_set = false;
    };
    std::map<std::string, Args> args;
    for (const std::string& name : msl::scenario_names()) {
        auto& a = args[name];
        auto* sub = app.add_subcommand(name, "run the '" + name + "' scenario");
        sub->add_option("--config", a.config, "JSON config file")->required();
        sub->add_option("--out", a.out, "output directory (default: $MIXED_SDE_LAB_OUT)");
        sub->add_option("--seed", a.seed, "override the config seed")
            ->each([&a](const std::string&) { a.seed_set = true; });
    }

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        std::cout << msl::list_scenarios();
        return 0;
    }
    for (const auto& [name, a] : args) {
        if (app.get_subcommand(name)->parsed())
            return run_one(name, a.config, a.seed, a.seed_set, a.out);
    }
    return 1;
}
