// mcsim: command-line front end for runs, controller comparisons and elastic maps.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcsim/config.hpp"
#include "mcsim/csv.hpp"
#include "mcsim/errors.hpp"
#include "mcsim/harness.hpp"

namespace fs = std::filesystem;
using namespace mcsim;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitDivergence = 2;

template <class Fn>
std::string render(Fn&& fn) {
    std::ostringstream os;
    fn(os);
    return os.str();
}

void write_run(const fs::path& dir, const harness::RunResult& r, const std::string& prefix) {
    csv::write_file(dir / (prefix + "timeseries.csv"), render([&](auto& os) { csv::write_timeseries(os, r.series); }));
    csv::write_file(dir / (prefix + "events.csv"), render([&](auto& os) { csv::write_events(os, r.events); }));
    csv::write_file(dir / (prefix + "metrics.csv"), render([&](auto& os) { csv::write_metrics(os, r.metrics); }));
}

std::vector<harness::Mode> parse_modes(const std::string& list) {
    std::vector<harness::Mode> modes;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) modes.push_back(harness::parse_mode(item));
    if (modes.empty()) throw ConfigError("no modes given");
    return modes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multichamber air-suspension simulator"};
    app.require_subcommand(1);

    std::string scenario_path, controller = "extended", out, modes = "soft,hard,basic,extended", config_path;

    auto* run = app.add_subcommand("run", "Simulate one controller on a scenario");
    run->add_option("--scenario", scenario_path, "scenario/config JSON")->required();
    run->add_option("--controller", controller, "soft|hard|basic|extended")
        ->check(CLI::IsMember({"soft", "hard", "basic", "extended"}));
    run->add_option("--out", out, "output directory")->required();

    auto* cmp = app.add_subcommand("compare", "Run several controllers and normalise against hard");
    cmp->add_option("--scenario", scenario_path, "scenario/config JSON")->required();
    cmp->add_option("--modes", modes, "comma-separated modes");
    cmp->add_option("--out", out, "output directory")->required();

    auto* maps = app.add_subcommand("maps", "Export a static stroke-force map");
    maps->add_option("--config", config_path, "config JSON with a map block")->required();
    maps->add_option("--out", out, "output CSV")->required();

    auto* trace = app.add_subcommand("trace", "Export the input trace of a scenario");
    trace->add_option("--scenario", scenario_path, "scenario/config JSON")->required();
    trace->add_option("--out", out, "output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto cf = config::load(scenario_path);
            const auto tr = config::build_trace(cf.scenario);
            const auto res = harness::run(tr, harness::parse_mode(controller), cf.sim);
            fs::create_directories(out);
            write_run(out, res, "");
            std::cout << controller << ": " << res.events.size() << " valve events, J_z = " << res.metrics.j_z
                      << " m/s^2\n";
        } else if (*cmp) {
            const auto cf = config::load(scenario_path);
            const auto tr = config::build_trace(cf.scenario);
            const auto rep = harness::compare(tr, parse_modes(modes), cf.sim);
            fs::create_directories(out);
            for (const auto& r : rep.runs) write_run(out, r, std::string(harness::mode_name(r.mode)) + "_");
            csv::write_file(fs::path(out) / "compare.csv", render([&](auto& os) { csv::write_compare(os, rep.rows); }));
            csv::write_compare(std::cout, rep.rows);
        } else if (*maps) {
            const auto cf = config::load(config_path);
            const config::MapRequest req = cf.map ? *cf.map : config::MapRequest{};
            const auto map = config::build_map(req, cf.sim);
            if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
            csv::write_file(out, render([&](auto& os) { csv::write_map(os, map); }));
        } else if (*trace) {
            const auto cf = config::load(scenario_path);
            const auto tr = config::build_trace(cf.scenario);
            if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
            csv::write_file(out, render([&](auto& os) { csv::write_trace(os, tr); }));
        }
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
