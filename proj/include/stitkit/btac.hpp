#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stitkit/bits.hpp"
#include "stitkit/check_report.hpp"
#include "stitkit/formula.hpp"
#include "stitkit/nbhd.hpp"

namespace stitkit {

// Finite set of moments with a strict partial order. The constructor takes
// any pair list and stores its transitive closure; irreflexivity and
// backward linearity are reported by report(), not enforced, so that
// deliberately broken frames remain constructible for validation tests.
class BTFrame {
 public:
  BTFrame(std::vector<std::string> moments,
          const std::vector<std::pair<std::string, std::string>>& order);

  int num_moments() const { return static_cast<int>(moments_.size()); }
  const std::string& name(int m) const { return moments_.at(m); }
  const std::vector<std::string>& moments() const { return moments_; }
  int index_of(const std::string& name) const;

  bool less(int a, int b) const { return subset_contains(above_[a], b); }
  Subset above(int m) const { return above_.at(m); }  // strict successors
  Subset below(int m) const { return below_.at(m); }  // strict predecessors

  // irreflexivity (no cycles after closure) and backward linearity
  CheckReport report() const;

  // original pairs, for serialization
  const std::vector<std::pair<std::string, std::string>>& order_pairs() const { return pairs_; }

 private:
  std::vector<std::string> moments_;
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::vector<Subset> above_;
  std::vector<Subset> below_;
};

// Maximal chain of moments. In a finite backward-linear frame these are
// exactly the down-sets of the maximal moments, so every history is named
// after its top moment.
struct History {
  Subset moments = 0;
  int top = -1;
};

// Down-set construction; throws ModelError if the frame report fails.
std::vector<History> histories(const BTFrame& frame);

std::vector<History> histories_through(const BTFrame& frame, const std::string& moment);

struct Index {
  int moment = -1;
  int history = -1;
};

class BTACModel {
 public:
  // choice: agent -> moment name -> cells, each cell a list of history ids;
  // valuation: atom -> list of (moment, historyId) pairs
  BTACModel(BTFrame frame, std::vector<AgentId> agents,
            const std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>>& choice,
            const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& valuation);

  const BTFrame& frame() const { return frame_; }
  const std::vector<AgentId>& agents() const { return agents_; }
  int num_agents() const { return static_cast<int>(agents_.size()); }
  int agent_index(const AgentId& agent) const;

  const std::vector<History>& all_histories() const { return histories_; }
  int history_index(const std::string& id) const;
  const std::string& history_id(int h) const { return frame_.name(histories_.at(h).top); }
  Subset hm(int m) const { return hm_.at(m); }  // histories passing through m

  const std::vector<Subset>& choice_cells(int agent, int m) const;
  Subset choice_cell_of(int agent, int m, int h) const;  // 0 when h is in no cell

  bool val_at(const std::string& atom, int m, int h) const;
  const std::map<std::string, std::vector<Subset>>& valuation() const { return valuation_; }

  Index index_of(const std::string& moment, const std::string& history_id) const;
  bool valid_index(const Index& idx) const;

 private:
  BTFrame frame_;
  std::vector<AgentId> agents_;
  std::vector<History> histories_;
  std::vector<Subset> hm_;
  std::vector<std::vector<std::vector<Subset>>> choice_;     // [agent][moment] -> cells
  std::map<std::string, std::vector<Subset>> valuation_;     // atom -> per-moment history sets
};

// Classical stit evaluation at a moment/history pair. box quantifies over
// the histories through the moment, [stit:i] over the agent's cell around
// the current history. Throws ModelError on strategic operators.
bool eval_cstit(const BTACModel& model, const Index& idx, const Formula& f);

// Partition of H_m per (agent, moment), independence of agents, and the
// frame conditions, with witnesses.
CheckReport validate_btac(const BTACModel& model);

// BT+AC file:
// { "moments": [..], "order": [[m,m'],..], "agents": [..],
//   "choice": { AGENT: { MOMENT: [[historyId,..],..] } },
//   "valuation": { ATOM: [[moment, historyId],..] } }
BTACModel btac_model_from_json(const nlohmann::json& j);
nlohmann::json btac_model_to_json(const BTACModel& model);

}  // namespace stitkit
