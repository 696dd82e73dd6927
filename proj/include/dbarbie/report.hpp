// SPDX-License-Identifier: MIT
//
// Structured run reports.  Every CLI command produces one Report: a list
// of named check entries, each carrying its measured numbers and a pass
// flag, plus the effective configuration and wall-clock timings.  Reports
// serialize to JSON with keys in insertion order, and a rerun with the
// same configuration and seed produces byte-identical output except for
// the "timings" object, which is kept at the top level precisely so that
// consumers can strip it before comparing runs.

#pragma once

#include <json.hpp>

#include <complex>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dbarbie {

using json = nlohmann::ordered_json;

inline json json_complex(std::complex<double> z) {
  return json::array({z.real(), z.imag()});
}

struct ReportEntry {
  std::string name;
  json data;
  bool pass = true;
};

struct Report {
  std::string command;
  json config = json::object();
  std::vector<ReportEntry> entries;
  json timings = json::object();

  void add(std::string name, json data, bool pass) {
    entries.push_back({std::move(name), std::move(data), pass});
  }

  void time(const std::string& name, double seconds) {
    timings[name] = seconds;
  }

  bool pass() const {
    for (const auto& e : entries) {
      if (!e.pass) return false;
    }
    return true;
  }

  json to_json() const {
    json j;
    j["schema"] = "dbar-bie-report/1";
    j["command"] = command;
    j["config"] = config;
    json list = json::array();
    for (const auto& e : entries) {
      json item;
      item["name"] = e.name;
      item["data"] = e.data;
      item["pass"] = e.pass;
      list.push_back(std::move(item));
    }
    j["entries"] = std::move(list);
    j["pass"] = pass();
    j["timings"] = timings;
    return j;
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report file: " + path);
    out << dump();
  }
};

}  // namespace dbarbie
