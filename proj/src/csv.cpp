#include "mcsim/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace mcsim::csv {

std::string fmt(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_timeseries(std::ostream& os, const harness::TimeSeries& ts) {
    os << "t,phi,theta,z,Az";
    for (const char* col : {"stroke", "Fz", "valve"})
        for (Corner c : kCorners) os << ',' << col << '_' << corner_name(c);
    os << '\n';
    for (std::size_t k = 0; k < ts.size(); ++k) {
        os << fmt(ts.t[k]) << ',' << fmt(ts.phi[k]) << ',' << fmt(ts.theta[k]) << ',' << fmt(ts.z[k]) << ','
           << fmt(ts.az[k]);
        for (std::size_t i = 0; i < 4; ++i) os << ',' << fmt(ts.stroke[i][k]);
        for (std::size_t i = 0; i < 4; ++i) os << ',' << fmt(ts.fz[i][k]);
        for (std::size_t i = 0; i < 4; ++i) os << ',' << ts.valve[i][k];
        os << '\n';
    }
}

void write_events(std::ostream& os, const std::vector<harness::Event>& events) {
    os << "t,corner,action,kick_N,reason\n";
    for (const auto& e : events)
        os << fmt(e.t) << ',' << corner_name(e.corner) << ','
           << (e.action == airspring::Valve::Open ? "open" : "close") << ',' << fmt(e.kick) << ','
           << controller::reason_name(e.reason) << '\n';
}

void write_metrics(std::ostream& os, const harness::MetricsReport& m) {
    os << "metric,phase,value\n";
    for (const auto& p : m.phases) {
        os << "j_phi," << p.phase << ',' << fmt(p.j_phi) << '\n';
        os << "j_theta," << p.phase << ',' << fmt(p.j_theta) << '\n';
    }
    for (const auto& o : m.openings)
        os << "j_z_open," << corner_name(o.corner) << '@' << fmt(o.t) << ',' << fmt(o.j_z) << '\n';
    os << "j_z,all," << fmt(m.j_z) << '\n';
}

void write_compare(std::ostream& os, const std::vector<harness::CompareRow>& rows) {
    os << "mode,metric,phase,value,ratio_vs_hard\n";
    for (const auto& r : rows)
        os << r.mode << ',' << r.metric << ',' << r.phase << ',' << fmt(r.value) << ',' << fmt(r.ratio_vs_hard)
           << '\n';
}

void write_map(std::ostream& os, const std::vector<airspring::MapPoint>& map) {
    os << "stroke_m,force_N\n";
    for (const auto& p : map) os << fmt(p.stroke) << ',' << fmt(p.force) << '\n';
}

void write_trace(std::ostream& os, const scenarios::ScenarioTrace& tr) {
    os << "t,ax,ay";
    for (Corner c : kCorners) os << ",road_" << corner_name(c);
    os << '\n';
    for (std::size_t k = 0; k < tr.size(); ++k) {
        os << fmt(tr.t[k]) << ',' << fmt(tr.ax[k]) << ',' << fmt(tr.ay[k]);
        for (std::size_t i = 0; i < 4; ++i) os << ',' << fmt(tr.road[i][k]);
        os << '\n';
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace mcsim::csv
