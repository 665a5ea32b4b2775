#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "stitkit/bits.hpp"
#include "stitkit/check_report.hpp"
#include "stitkit/formula.hpp"

namespace stitkit {

// Identifier lookups and construction-time invariant violations.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& msg, nlohmann::json detail = nullptr)
      : std::runtime_error(msg), detail_(std::move(detail)) {}

  const nlohmann::json& detail() const { return detail_; }

 private:
  nlohmann::json detail_;
};

// Ordered, distinct state names; subsets are bitmasks over this order.
class StateSet {
 public:
  explicit StateSet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  Subset full() const { return subset_full(size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;  // throws ModelError
  bool contains(const std::string& name) const { return index_.count(name) > 0; }

  Subset make_subset(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(Subset s) const;

  bool operator==(const StateSet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

// One-shot strategic stit frame: per agent and state, the generator
// antichain of its choice neighbourhood. The induced neighbourhood is the
// up-closure of the generators; it is never materialized.
class NbhdFrame {
 public:
  NbhdFrame(StateSet states, std::vector<AgentId> agents,
            std::vector<std::vector<std::vector<Subset>>> gens);

  // same generator antichain at every state; (nec) holds by construction
  static NbhdFrame uniform(StateSet states, std::vector<AgentId> agents,
                           std::vector<std::vector<Subset>> gens_per_agent);

  const StateSet& states() const { return states_; }
  const std::vector<AgentId>& agents() const { return agents_; }
  int num_states() const { return states_.size(); }
  int num_agents() const { return static_cast<int>(agents_.size()); }
  int agent_index(const AgentId& agent) const;  // throws ModelError

  // Non-monotonic core of the induced neighbourhood at (agent, state):
  // its inclusion-minimal members. Equals the stored generators.
  const std::vector<Subset>& core(int agent, int state) const;
  const std::vector<Subset>& core(const AgentId& agent, const std::string& state) const;

  // X is in the induced neighbourhood iff some generator is included in it.
  bool member(int agent, int state, Subset x) const;
  bool member(const AgentId& agent, const std::string& state, Subset x) const;

  Subset core_union(int agent, int state) const;

  bool operator==(const NbhdFrame& other) const;

 private:
  StateSet states_;
  std::vector<AgentId> agents_;
  std::vector<std::vector<std::vector<Subset>>> gens_;  // [agent][state], canonically sorted
};

struct NbhdModel {
  NbhdFrame frame;
  std::map<std::string, Subset> valuation;  // absent atoms denote the empty set

  Subset val(const std::string& atom) const {
    auto it = valuation.find(atom);
    return it == valuation.end() ? Subset{0} : it->second;
  }
};

// Frame-condition checks. Witnesses are canonical (state order) JSON.
CheckReport check_ind(const NbhdFrame& frame);
CheckReport check_nec(const NbhdFrame& frame);
CheckReport check_un(const NbhdFrame& frame);
CheckReport check_partition_cores(const NbhdFrame& frame);
CheckReport is_class_C(const NbhdFrame& frame);
CheckReport is_class_P(const NbhdFrame& frame);

// R_i = (union of the core)^2, taken at an arbitrary state; requires (nec).
struct RelationReport {
  Subset field = 0;                 // union of the core cells
  std::vector<Subset> rows;         // rows[w] = successors of w
  bool reflexive_on_field = false;  // reflexive over its field
  bool symmetric = false;
  bool transitive = false;
  bool total = false;  // equals W x W
};

RelationReport relation_Ri(const NbhdFrame& frame, const AgentId& agent);

// JSON model file:
// { "states": [..], "agents": [..],
//   "choice": { AGENT: { STATE: [[state,..],..] } | { "uniform": [[state,..],..] } },
//   "valuation": { ATOM: [state,..] } }
NbhdModel nbhd_model_from_json(const nlohmann::json& j);
nlohmann::json nbhd_model_to_json(const NbhdModel& model);

nlohmann::json subset_to_json(const StateSet& states, Subset s);

}  // namespace stitkit
