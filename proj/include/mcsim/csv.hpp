#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "mcsim/airspring.hpp"
#include "mcsim/harness.hpp"
#include "mcsim/scenarios.hpp"

namespace mcsim::csv {

/// Shortest round-trip decimal form of v.
std::string fmt(double v);

void write_timeseries(std::ostream& os, const harness::TimeSeries& ts);
void write_events(std::ostream& os, const std::vector<harness::Event>& events);
void write_metrics(std::ostream& os, const harness::MetricsReport& m);
void write_compare(std::ostream& os, const std::vector<harness::CompareRow>& rows);
void write_map(std::ostream& os, const std::vector<airspring::MapPoint>& map);
void write_trace(std::ostream& os, const scenarios::ScenarioTrace& tr);

/// Opens `path` for writing, throwing std::runtime_error on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace mcsim::csv
