#pragma once

#include <string>
#include <utility>

#include <json.hpp>

namespace stitkit {

// Structured verdict shared by every validator and search operation.
// holds == false exactly when a witness is attached.
struct CheckReport {
  std::string label;
  bool holds = true;
  nlohmann::json witness;  // null unless holds == false
  nlohmann::json info;     // optional annotations; never affects the verdict

  static CheckReport pass(std::string label) {
    CheckReport r;
    r.label = std::move(label);
    return r;
  }

  static CheckReport fail(std::string label, nlohmann::json witness) {
    CheckReport r;
    r.label = std::move(label);
    r.holds = false;
    r.witness = std::move(witness);
    return r;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["label"] = label;
    j["holds"] = holds;
    if (!holds) j["witness"] = witness;
    if (!info.is_null()) j["info"] = info;
    return j;
  }
};

}  // namespace stitkit
