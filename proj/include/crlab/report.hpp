#pragma once

#include <json.hpp>

#include <string>

namespace crlab {

using Json = nlohmann::ordered_json;

// Machine-readable run report. The schema is fixed:
//   {command, inputs, seed, results: [{name, status, witness?, value?,
//    tolerance?, ...}], elapsed}
// elapsed is null unless timing was requested, so identical runs produce
// byte-identical reports.
class Report {
public:
  Report(std::string command, std::uint64_t seed) {
    json_["command"] = std::move(command);
    json_["inputs"] = Json::object();
    json_["seed"] = seed;
    json_["results"] = Json::array();
    json_["elapsed"] = nullptr;
  }

  void input(const std::string& key, const Json& value) { json_["inputs"][key] = value; }

  Json& add_result(const std::string& name, bool pass) {
    Json entry;
    entry["name"] = name;
    entry["status"] = pass ? "pass" : "fail";
    json_["results"].push_back(std::move(entry));
    all_pass_ &= pass;
    return json_["results"].back();
  }

  Json& add_error(const std::string& name, const std::string& message) {
    Json entry;
    entry["name"] = name;
    entry["status"] = "error";
    entry["error"] = message;
    json_["results"].push_back(std::move(entry));
    all_pass_ = false;
    return json_["results"].back();
  }

  void set_elapsed_ms(double ms) { json_["elapsed"] = ms; }

  bool all_pass() const { return all_pass_; }
  const Json& json() const { return json_; }
  std::string dump() const { return json_.dump(2) + "\n"; }

private:
  Json json_;
  bool all_pass_ = true;
};

}  // namespace crlab
