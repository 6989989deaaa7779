#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ptcubic/version.hpp"

// Machine-readable result envelope for the command-line tool. All numbers are
// serialized as decimal text with 12 significant digits so output files are
// reproducible across platforms and parse back to within 1 ulp.

namespace ptcubic {

inline std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  return buf;
}

struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, std::string>> results;
  std::string provenance = std::string("ptcubic ") + kVersion;

  void add_input(const std::string& key, std::string value) {
    inputs.emplace_back(key, std::move(value));
  }
  void add_input(const std::string& key, double value) {
    inputs.emplace_back(key, format_number(value));
  }
  void add_result(const std::string& key, std::string value) {
    results.emplace_back(key, std::move(value));
  }
  void add_result(const std::string& key, double value) {
    results.emplace_back(key, format_number(value));
  }

  std::string to_csv() const {
    std::string csv = "key,value\n";
    for (const auto& [k, v] : results) csv += k + "," + v + "\n";
    return csv;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : inputs) j["inputs"][k] = v;
    j["results"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : results) j["results"][k] = v;
    j["provenance"] = provenance;
    return j;
  }
};

}
