#include "mcsim/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mcsim/errors.hpp"

namespace mcsim::config {

using nlohmann::json;

namespace {

double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
    return v.get<double>();
}

bool boolean(const json& v, const std::string& key) {
    if (!v.is_boolean()) throw ConfigError("key '" + key + "' must be true or false");
    return v.get<bool>();
}

std::string text(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("key '" + key + "' must be a string");
    return v.get<std::string>();
}

void require_object(const json& v, const std::string& what) {
    if (!v.is_object()) throw ConfigError(what + " must be a JSON object");
}

using Handlers = std::map<std::string, std::function<void(const json&)>>;

void dispatch(const json& obj, const Handlers& h, const std::string& where) {
    require_object(obj, where);
    for (const auto& [key, value] : obj.items()) {
        const auto it = h.find(key);
        if (it == h.end()) throw ConfigError("unknown key '" + key + "' in " + where);
        it->second(value);
    }
}

airspring::Valve parse_valve(const json& v, const std::string& key) {
    const std::string s = text(v, key);
    if (s == "open") return airspring::Valve::Open;
    if (s == "closed" || s == "close") return airspring::Valve::Closed;
    throw ConfigError("key '" + key + "' must be \"open\" or \"closed\"");
}

scenarios::Segment parse_segment(const json& j) {
    scenarios::Segment s;
    bool has_t0 = false, has_t1 = false;
    dispatch(j,
             {{"t0", [&](const json& v) { s.t0 = number(v, "t0"); has_t0 = true; }},
              {"t1", [&](const json& v) { s.t1 = number(v, "t1"); has_t1 = true; }},
              {"ax", [&](const json& v) { s.ax = number(v, "ax"); }},
              {"ay", [&](const json& v) { s.ay = number(v, "ay"); }},
              {"ramp_in", [&](const json& v) { s.ramp_in = number(v, "ramp_in"); }},
              {"ramp_out", [&](const json& v) { s.ramp_out = number(v, "ramp_out"); }},
              {"label", [&](const json& v) { s.label = text(v, "label"); }}},
             "segment");
    if (!has_t0 || !has_t1) throw ConfigError("segment needs t0 and t1");
    return s;
}

MapRequest parse_map(const json& j) {
    MapRequest m;
    dispatch(j,
             {{"valve", [&](const json& v) { m.valve = parse_valve(v, "valve"); }},
              {"stroke_min_m", [&](const json& v) { m.stroke_min = number(v, "stroke_min_m"); }},
              {"stroke_max_m", [&](const json& v) { m.stroke_max = number(v, "stroke_max_m"); }},
              {"points",
               [&](const json& v) {
                   if (!v.is_number_integer()) throw ConfigError("key 'points' must be an integer");
                   m.points = v.get<int>();
               }},
              {"static_load_n", [&](const json& v) { m.static_load = number(v, "static_load_n"); }},
              {"events",
               [&](const json& v) {
                   if (!v.is_array()) throw ConfigError("map events must be an array");
                   for (const auto& e : v) {
                       airspring::MapEvent ev{0.0, airspring::Valve::Closed};
                       bool has_stroke = false, has_action = false;
                       dispatch(e,
                                {{"stroke_m", [&](const json& x) { ev.stroke = number(x, "stroke_m"); has_stroke = true; }},
                                 {"action", [&](const json& x) { ev.target = parse_valve(x, "action"); has_action = true; }}},
                                "map event");
                       if (!has_stroke || !has_action) throw ConfigError("map event needs stroke_m and action");
                       m.events.push_back(ev);
                   }
               }}},
             "map");
    return m;
}

}  // namespace

ConfigFile parse(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }

    ConfigFile cf;
    auto& veh = cf.sim.vehicle;
    auto& sp = veh.spring;
    auto& th = cf.sim.thresholds;
    auto& hp = cf.sim.harness;
    auto& sc = cf.scenario;

    auto num = [](double& dst, const char* key) {
        return std::pair<const std::string, std::function<void(const json&)>>(
            key, [&dst, key](const json& v) { dst = number(v, key); });
    };

    Handlers h{
        num(veh.sprung_mass, "sprung_mass_kg"),
        num(veh.wheelbase, "wheelbase_m"),
        num(veh.track, "track_m"),
        num(veh.cog_height, "cog_height_m"),
        num(veh.roll_inertia, "roll_inertia_kgm2"),
        num(veh.pitch_inertia, "pitch_inertia_kgm2"),
        num(veh.unsprung_mass, "unsprung_mass_kg"),
        num(veh.tire_stiffness, "tire_stiffness_n_per_m"),
        num(veh.front_axle_distance, "front_axle_distance_m"),
        num(veh.rear_axle_distance, "rear_axle_distance_m"),
        num(veh.gravity, "gravity_mps2"),
        num(sp.gamma, "gamma"),
        num(sp.area, "piston_area_m2"),
        num(sp.v_main_0, "v_main0_m3"),
        num(sp.v_aux, "v_aux_m3"),
        num(sp.p_atm, "p_atm_pa"),
        num(sp.damping_c, "damping_ns_per_m"),
        num(cf.sim.filter.tau_fast, "tau_fast_s"),
        num(cf.sim.filter.tau_slow, "tau_slow_s"),
        num(th.t1, "t1_n"),
        num(th.t2, "t2_n"),
        num(th.t3, "t3_n"),
        num(th.stroke_tol, "stroke_tol_m"),
        num(th.backup_timeout, "backup_timeout_s"),
        num(th.min_switch_interval, "min_switch_interval_s"),
        num(hp.jz_window, "jz_window_s"),
        num(hp.accel_noise, "accel_noise_mps2"),
        num(sc.dt, "dt"),
        {"accel_noise_seed",
         [&](const json& v) {
             if (!v.is_number_unsigned()) throw ConfigError("key 'accel_noise_seed' must be a non-negative integer");
             hp.accel_noise_seed = v.get<std::uint64_t>();
         }},
        {"kick_avoidance", [&](const json& v) { cf.sim.extended.kick_avoidance = boolean(v, "kick_avoidance"); }},
        {"inversion_cycle", [&](const json& v) { cf.sim.extended.inversion = boolean(v, "inversion_cycle"); }},
        {"duration_s", [&](const json& v) { sc.duration = number(v, "duration_s"); }},
        {"segments",
         [&](const json& v) {
             if (!v.is_array()) throw ConfigError("segments must be an array");
             for (const auto& s : v) sc.segments.push_back(parse_segment(s));
         }},
        {"road",
         [&](const json& v) {
             dispatch(v,
                      {{"amplitude_m", [&](const json& x) { sc.road.amplitude = number(x, "amplitude_m"); }},
                       {"seed",
                        [&](const json& x) {
                            if (!x.is_number_unsigned()) throw ConfigError("road seed must be a non-negative integer");
                            sc.road.seed = x.get<std::uint64_t>();
                        }}},
                      "road");
         }},
        {"map", [&](const json& v) { cf.map = parse_map(v); }},
    };
    dispatch(root, h, "config");

    try {
        cf.sim.validate();
    } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
    }
    if (!(sc.dt > 0.0) || sc.dt > vehicle::FullCar::max_dt) throw ConfigError("dt must be in (0, 0.002] s");
    return cf;
}

ConfigFile load(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

scenarios::ScenarioTrace build_trace(const ScenarioConfig& sc) {
    try {
        scenarios::ScenarioTrace tr = sc.duration ? scenarios::make_mixed(sc.segments, sc.dt, *sc.duration)
                                                  : scenarios::make_mixed(sc.segments, sc.dt);
        tr.road = scenarios::make_road_noise(sc.road, tr.size(), tr.dt);
        return tr;
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
}

std::vector<airspring::MapPoint> build_map(const MapRequest& req, const harness::SimConfig& sim) {
    try {
        const double load = req.static_load ? *req.static_load : sim.vehicle.static_corner_load(Corner::FL);
        const auto grid = airspring::stroke_grid(req.stroke_min, req.stroke_max, req.points);
        return airspring::export_elastic_map(sim.vehicle.spring, load, req.valve, grid, req.events);
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("map: ") + e.what());
    } catch (const StrokeOutOfRange& e) {
        throw ConfigError(std::string("map: ") + e.what());
    }
}

}  // namespace mcsim::config
