#pragma once

// JSON and TSV emission for gcoh reports. Everything except the
// "generated_at" field is a function of the scenario and the command.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gcoh/grading.hpp"
#include "gcoh/homres.hpp"
#include "gcoh/module.hpp"

namespace gcoh::report {

using Json = nlohmann::ordered_json;

inline std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline Json degree_list(const std::vector<Degree>& ds) {
  Json a = Json::array();
  for (const auto& d : ds) a.push_back(to_string(d));
  return a;
}

inline Json window_json(const DegreeWindow& w) {
  Json j;
  j["size"] = w.size();
  if (!w.empty()) {
    j["first"] = to_string(w.degrees().front());
    j["last"] = to_string(w.degrees().back());
  }
  return j;
}

inline Json table_json(const HilbertTable& t) {
  Json rows = Json::array();
  for (const auto& g : t.window()) rows.push_back(Json{{"degree", to_string(g)}, {"dim", t.at(g)}});
  return rows;
}

inline Json colimit_json(const ColimitResult& r) {
  Json j;
  j["route"] = r.route;
  j["stabilized"] = r.stabilized;
  j["stable_stage"] = r.stable_stage;
  if (!r.note.empty()) j["note"] = r.note;
  Json rows = Json::array();
  for (const auto& g : r.table.window()) {
    Json row{{"degree", to_string(g)}, {"dim", r.table.at(g)}};
    if (auto it = r.trajectory.find(g); it != r.trajectory.end()) row["trajectory"] = it->second;
    rows.push_back(std::move(row));
  }
  j["table"] = std::move(rows);
  return j;
}

/// A plain table: header row then data rows, tab separated.
struct Tsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;  // emitted as leading '#' lines

  std::string str() const {
    std::ostringstream os;
    for (const auto& n : notes) os << "# " << n << "\n";
    auto line = [&os](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "\t" : "") << cells[i];
      os << "\n";
    };
    if (!header.empty()) line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }
};

inline Tsv table_tsv(const HilbertTable& t, const std::string& column = "dim") {
  Tsv out;
  out.header = {"degree", column};
  for (const auto& g : t.window()) out.rows.push_back({to_string(g), std::to_string(t.at(g))});
  return out;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

}  // namespace gcoh::report
