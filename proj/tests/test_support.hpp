#pragma once

// Test-only oracles and fixture builders. The oracles deliberately work by
// exhaustive materialization so they stay independent of the library's
// generator-based code paths.

#include <string>
#include <vector>

#include "stitkit/bits.hpp"
#include "stitkit/formula.hpp"
#include "stitkit/nbhd.hpp"
#include "stitkit/rng.hpp"

namespace stitkit::testing {

// Full up-closure of a generator list over an n-state space.
inline std::vector<Subset> up_closure_oracle(const std::vector<Subset>& gens, int n) {
  std::vector<Subset> family;
  for (Subset x = 0; x <= subset_full(n); ++x) {
    for (Subset g : gens) {
      if ((g & ~x) == 0) {
        family.push_back(x);
        break;
      }
    }
    if (x == subset_full(n)) break;  // Subset is unsigned; avoid wrap
  }
  return family;
}

inline bool member_oracle(const std::vector<Subset>& gens, int n, Subset x) {
  for (Subset y : up_closure_oracle(gens, n)) {
    if (y == x) return true;
  }
  return false;
}

// Inclusion-minimal members of the materialized family.
inline std::vector<Subset> core_oracle(const std::vector<Subset>& gens, int n) {
  std::vector<Subset> family = up_closure_oracle(gens, n);
  std::vector<Subset> out;
  for (Subset x : family) {
    bool minimal = true;
    for (Subset y : family) {
      if (y != x && (y & ~x) == 0) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(x);
  }
  return out;
}

// All maximal chains of a strict order given as successor rows, by scanning
// every subset of the carrier.
inline std::vector<Subset> maximal_chains_oracle(const std::vector<Subset>& above) {
  const int n = static_cast<int>(above.size());
  auto is_chain = [&](Subset s) {
    auto ms = subset_members(s);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      for (std::size_t j = i + 1; j < ms.size(); ++j) {
        int a = ms[i], b = ms[j];
        if (!subset_contains(above[a], b) && !subset_contains(above[b], a)) return false;
      }
    }
    return true;
  };
  std::vector<Subset> chains;
  for (Subset s = 1; s <= subset_full(n); ++s) {
    if (is_chain(s)) chains.push_back(s);
    if (s == subset_full(n)) break;
  }
  std::vector<Subset> maximal;
  for (Subset s : chains) {
    bool strict_superset_exists = false;
    for (Subset t : chains) {
      if (t != s && (s & ~t) == 0) {
        strict_superset_exists = true;
        break;
      }
    }
    if (!strict_superset_exists) maximal.push_back(s);
  }
  return maximal;
}

// Every strict partial order on n labeled elements, as successor rows.
inline std::vector<std::vector<Subset>> all_strict_orders(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  std::vector<std::vector<Subset>> out;
  const long long total = 1LL << slots.size();
  for (long long mask = 0; mask < total; ++mask) {
    std::vector<Subset> above(n, 0);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (mask & (1LL << s)) above[slots[s].first] |= subset_single(slots[s].second);
    }
    bool transitive = true;
    bool irreflexive = true;
    for (int i = 0; i < n && transitive; ++i) {
      for (int j : subset_members(above[i])) {
        if ((above[j] & ~above[i]) != 0) {
          transitive = false;
          break;
        }
        if (subset_contains(above[j], i)) irreflexive = false;
      }
    }
    if (transitive && irreflexive) out.push_back(std::move(above));
  }
  return out;
}

inline bool backward_linear(const std::vector<Subset>& above) {
  const int n = static_cast<int>(above.size());
  std::vector<Subset> below(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j : subset_members(above[i])) below[j] |= subset_single(i);
  }
  for (int m = 0; m < n; ++m) {
    auto preds = subset_members(below[m]);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      for (std::size_t j = i + 1; j < preds.size(); ++j) {
        int p = preds[i], q = preds[j];
        if (!subset_contains(above[p], q) && !subset_contains(above[q], p)) return false;
      }
    }
  }
  return true;
}

// quick frame builders -------------------------------------------------------

inline NbhdFrame uniform_frame(const std::vector<std::string>& states,
                               const std::vector<std::string>& agents,
                               const std::vector<std::vector<std::vector<std::string>>>& cores) {
  StateSet ss(states);
  std::vector<AgentId> ids;
  for (const auto& a : agents) ids.emplace_back(a);
  std::vector<std::vector<Subset>> gens;
  for (const auto& per_agent : cores) {
    std::vector<Subset> cells;
    for (const auto& cell : per_agent) cells.push_back(ss.make_subset(cell));
    gens.push_back(std::move(cells));
  }
  return NbhdFrame::uniform(std::move(ss), std::move(ids), std::move(gens));
}

// Random valid frame that need not sit in class C: independent random
// antichains per agent and state.
inline NbhdFrame random_any_frame(Rng& rng, int n, int agents) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i + 1));
  std::vector<AgentId> ids;
  for (int a = 0; a < agents; ++a) ids.emplace_back(std::string(1, static_cast<char>('a' + a)));

  auto random_antichain = [&]() {
    for (;;) {
      std::vector<Subset> cells;
      int count = 1 + rng.below(3);
      for (int c = 0; c < count; ++c) cells.push_back(rng.nonempty_subset(n));
      bool antichain = true;
      for (std::size_t i = 0; i < cells.size() && antichain; ++i) {
        for (std::size_t j = 0; j < cells.size() && antichain; ++j) {
          if (i != j && subset_lt(cells[i], cells[j])) antichain = false;
        }
      }
      if (antichain) return cells;  // duplicates collapse at construction
    }
  };

  std::vector<std::vector<std::vector<Subset>>> gens(agents);
  bool uniform = rng.coin();  // half the frames satisfy (nec)
  for (int a = 0; a < agents; ++a) {
    if (uniform) {
      auto cells = random_antichain();
      gens[a].assign(n, cells);
    } else {
      for (int w = 0; w < n; ++w) gens[a].push_back(random_antichain());
    }
  }
  return NbhdFrame(StateSet(names), std::move(ids), std::move(gens));
}

// Full-grammar random formula (all sugar, stit included) for round-trip
// style properties.
inline Formula random_full_formula(Rng& rng, int depth) {
  static const std::vector<std::string> atoms{"p", "q", "r"};
  static const std::vector<std::string> agents{"a", "b"};
  if (depth <= 0 || rng.below(3) == 0) {
    int roll = rng.below(5);
    if (roll == 3) return Formula::top();
    if (roll == 4) return Formula::bottom();
    return Formula::atom(atoms[rng.below(3)]);
  }
  AgentId agent(agents[rng.below(2)]);
  switch (rng.below(14)) {
    case 0: return Formula::negate(random_full_formula(rng, depth - 1));
    case 1:
      return Formula::or_of(random_full_formula(rng, depth - 1),
                            random_full_formula(rng, depth - 1));
    case 2:
      return Formula::and_of(random_full_formula(rng, depth - 1),
                             random_full_formula(rng, depth - 1));
    case 3:
      return Formula::implies(random_full_formula(rng, depth - 1),
                              random_full_formula(rng, depth - 1));
    case 4:
      return Formula::iff(random_full_formula(rng, depth - 1),
                          random_full_formula(rng, depth - 1));
    case 5: return Formula::box(random_full_formula(rng, depth - 1));
    case 6: return Formula::dia(random_full_formula(rng, depth - 1));
    case 7: return Formula::ability(agent, random_full_formula(rng, depth - 1));
    case 8: return Formula::ability_dual(agent, random_full_formula(rng, depth - 1));
    case 9: return Formula::forall_core(agent, random_full_formula(rng, depth - 1));
    case 10: return Formula::forall_core_dual(agent, random_full_formula(rng, depth - 1));
    case 11: return Formula::stit(agent, random_full_formula(rng, depth - 1));
    case 12: return Formula::stit_dual(agent, random_full_formula(rng, depth - 1));
    default: return Formula::negate(random_full_formula(rng, depth - 1));
  }
}

}  // namespace stitkit::testing
