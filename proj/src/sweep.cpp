#include "stitkit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stitkit/bridge.hpp"
#include "stitkit/mc.hpp"

namespace stitkit {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

bool use_parallel(ExecMode mode) {
#ifdef _OPENMP
  return mode == ExecMode::Parallel;
#else
  (void)mode;
  return false;
#endif
}

}  // namespace

NbhdModel random_class_c_model(std::uint64_t seed, std::uint64_t index,
                               const SearchBounds& bounds) {
  Rng rng(split_seed(seed, index));
  FrameGenParams params;
  params.states = 1 + rng.below(bounds.max_states);
  params.agents = 1 + rng.below(bounds.agent_count);
  params.seed = rng.next_u64();
  params.style = rng.coin() ? FrameStyle::Grid : FrameStyle::Perturbed;
  NbhdFrame frame = generate_frame(params);
  NbhdModel model{std::move(frame), random_valuation(rng, params.states, bounds.atom_count)};
  return model;
}

// ---------------------------------------------------------------------------
// soundness fuzz

namespace {

struct FuzzItem {
  bool failed = false;
  nlohmann::json witness;
  long long instances = 0;
  long long states = 0;
};

FuzzItem fuzz_one(const FuzzConfig& config, int k) {
  FuzzItem item;
  NbhdModel model = random_class_c_model(config.seed, k, config.bounds);
  item.states = model.frame.num_states();
  Rng rng(split_seed(config.seed ^ 0x5157AABBCCDD0011ULL, k));
  const auto& agents = model.frame.agents();
  const Subset full = model.frame.states().full();

  auto random_args = [&](int count) {
    std::vector<Formula> out;
    for (int i = 0; i < count; ++i) {
      out.push_back(random_osstit_formula(rng, config.bounds.atom_count, agents, 2));
    }
    return out;
  };
  auto check = [&](SchemaTag tag, const Formula& instance) {
    ++item.instances;
    Subset ext = extension(model, instance);
    if (ext != full && !item.failed) {
      int state = subset_members(full & ~ext).front();
      item.failed = true;
      item.witness = {{"schema", schema_name(tag)},
                      {"instance", render(instance)},
                      {"state", model.frame.states().name(state)},
                      {"model", nbhd_model_to_json(model)}};
    }
    return !item.failed;
  };

  for (SchemaTag tag : config.schemas) {
    SchemaArity arity = schema_arity(tag);
    if (arity.variadic) {
      // Ind over every nonempty sublist of the agent set
      int n = static_cast<int>(agents.size());
      for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<AgentId> slots;
        for (int i = 0; i < n; ++i) {
          if (mask & (1 << i)) slots.push_back(agents[i]);
        }
        if (!check(tag, instantiate(tag, random_args(static_cast<int>(slots.size())), slots))) {
          return item;
        }
      }
      continue;
    }
    for (int rep = 0; rep < 3; ++rep) {
      std::vector<AgentId> slots;
      for (int i = 0; i < arity.agents; ++i) {
        slots.push_back(agents[rng.below(static_cast<int>(agents.size()))]);
      }
      if (!check(tag, instantiate(tag, random_args(arity.formulas), slots))) return item;
    }
  }
  return item;
}

}  // namespace

FuzzReport soundness_fuzz(const FuzzConfig& config, ExecMode mode) {
  auto t0 = Clock::now();
  FuzzReport rep;
  rep.report = CheckReport::pass("soundness-fuzz");
  rep.models_checked = config.models;

  long long instances = 0;
  long long states = 0;
  long long best = -1;
  nlohmann::json best_witness;

#pragma omp parallel for schedule(dynamic, 8) reduction(+ : instances, states) \
    if (use_parallel(mode))
  for (int k = 0; k < config.models; ++k) {
    FuzzItem item = fuzz_one(config, k);
    instances += item.instances;
    states += item.states;
    if (item.failed) {
#pragma omp critical
      {
        if (best < 0 || k < best) {
          best = k;
          best_witness = item.witness;
        }
      }
    }
  }

  rep.instances_checked = instances;
  rep.states_explored = states;
  if (best >= 0) {
    best_witness["model_index"] = best;
    rep.report = CheckReport::fail("soundness-fuzz", best_witness);
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// bounded validity search

namespace {

// All antichains of nonempty subsets of [n] whose union is the full set,
// in lexicographic order of their (ascending) member lists.
std::vector<std::vector<Subset>> covering_antichains(int n) {
  std::vector<std::vector<Subset>> out;
  const Subset full = subset_full(n);
  std::vector<Subset> chosen;
  std::function<void(Subset, Subset)> dfs = [&](Subset next, Subset covered) {
    if (covered == full) out.push_back(chosen);
    for (Subset s = next; s <= full; ++s) {
      bool ok = true;
      for (Subset c : chosen) {
        if (subset_leq(c, s) || subset_leq(s, c)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        chosen.push_back(s);
        dfs(s + 1, covered | s);
        chosen.pop_back();
      }
    }
  };
  dfs(1, 0);
  return out;
}

std::vector<AgentId> search_agents(const Formula& f, int agent_count) {
  std::set<AgentId> used = agents_of(f);
  std::vector<AgentId> out(used.begin(), used.end());
  for (const AgentId& cand : default_agents(26)) {
    if (static_cast<int>(out.size()) >= agent_count) break;
    if (!used.count(cand)) out.push_back(cand);
  }
  return out;
}

std::vector<std::string> search_states(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i + 1));
  return names;
}

// antichain pair satisfies independence: all cross cells intersect
bool compatible(const std::vector<Subset>& a, const std::vector<Subset>& b) {
  for (Subset x : a) {
    for (Subset y : b) {
      if ((x & y) == 0) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Subset permute_subset(Subset s, const std::vector<int>& perm) {
  Subset out = 0;
  for (int i : subset_members(s)) out |= subset_single(perm[i]);
  return out;
}

struct FrameEnum {
  const std::vector<std::vector<Subset>>& antichains;
  int agent_count;
  long long total;  // |antichains|^agent_count

  std::vector<int> decompose(long long flat) const {
    std::vector<int> idx(agent_count);
    for (int a = agent_count - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(flat % antichains.size());
      flat /= static_cast<long long>(antichains.size());
    }
    return idx;
  }
};

struct Hit {
  long long frame = -1;
  long long valuation = -1;
  int state = -1;

  bool better_than(const Hit& other) const {
    if (other.frame < 0) return frame >= 0;
    if (frame < 0) return false;
    if (frame != other.frame) return frame < other.frame;
    if (valuation != other.valuation) return valuation < other.valuation;
    return state < other.state;
  }
};

}  // namespace

nlohmann::json ValidityResult::to_json() const {
  nlohmann::json j;
  switch (verdict) {
    case Verdict::ValidUpToBound:
      j["verdict"] = "valid-up-to-bound";
      break;
    case Verdict::Countermodel:
      j["verdict"] = "countermodel";
      break;
    case Verdict::Timeout:
      j["verdict"] = "timeout";
      break;
  }
  if (countermodel) {
    j["witness"] = {{"model", nbhd_model_to_json(*countermodel)}, {"state", state}};
  }
  j["modelsChecked"] = models_checked;
  j["statesExplored"] = states_explored;
  j["elapsedMs"] = elapsed_ms;
  return j;
}

ValidityResult validity_search(const Formula& f, const SearchBounds& bounds, ExecMode mode) {
  if (!is_osstit_pure(f)) throw ModelError("formula is not strategic: " + render(f));
  auto t0 = Clock::now();
  ValidityResult result;
  result.verdict = ValidityResult::Verdict::ValidUpToBound;

  const std::vector<AgentId> agents = search_agents(f, bounds.agent_count);
  const int k = static_cast<int>(agents.size());
  const std::set<std::string> var_set = vars_of(f);
  const std::vector<std::string> vars(var_set.begin(), var_set.end());

  const std::int64_t budget_ms = static_cast<std::int64_t>(bounds.max_seconds * 1000);
  for (int n = 1; n <= bounds.max_states; ++n) {
    if (ms_since(t0) > budget_ms) {
      result.verdict = ValidityResult::Verdict::Timeout;
      break;
    }
    const auto antichains = covering_antichains(n);
    FrameEnum frames{antichains, k, 1};
    for (int a = 0; a < k; ++a) {
      frames.total *= static_cast<long long>(antichains.size());
      if (frames.total > (1LL << 50)) {
        throw std::invalid_argument("frame space too large for bounded search");
      }
    }

    // frames surviving the pairwise independence filter, in flat order
    std::vector<long long> candidates;
    bool enum_timed_out = false;
    for (long long flat = 0; flat < frames.total; ++flat) {
      if ((flat & 0xFFFF) == 0 && ms_since(t0) > budget_ms) {
        enum_timed_out = true;
        break;
      }
      auto idx = frames.decompose(flat);
      bool ok = true;
      for (int a = 0; a < k && ok; ++a) {
        for (int b = a + 1; b < k && ok; ++b) {
          ok = compatible(antichains[idx[a]], antichains[idx[b]]);
        }
      }
      if (ok) candidates.push_back(flat);
    }
    if (enum_timed_out) {
      result.verdict = ValidityResult::Verdict::Timeout;
      break;
    }

    // deduplicate up to state permutation when the size is small enough for
    // the canonicalization to pay for itself; keys are computed per frame
    // (parallel-safe), the first-wins scan stays in flat order
    const bool dedup =
        static_cast<long long>(candidates.size()) * n <= 400000 && n <= 6;
    std::vector<long long> kept;
    if (dedup) {
      const auto perms = permutations(n);
      std::vector<std::vector<Subset>> keys(candidates.size());
      const long long cand_count = static_cast<long long>(candidates.size());
#pragma omp parallel for schedule(static) if (use_parallel(mode))
      for (long long c = 0; c < cand_count; ++c) {
        auto idx = frames.decompose(candidates[c]);
        std::vector<Subset> best_key;
        for (const auto& perm : perms) {
          std::vector<Subset> key;
          for (int a = 0; a < k; ++a) {
            std::vector<Subset> cells;
            for (Subset cell : antichains[idx[a]]) cells.push_back(permute_subset(cell, perm));
            std::sort(cells.begin(), cells.end());
            key.insert(key.end(), cells.begin(), cells.end());
            key.push_back(~Subset{0});  // agent separator
          }
          if (best_key.empty() || key < best_key) best_key = std::move(key);
        }
        keys[c] = std::move(best_key);
      }
      std::set<std::vector<Subset>> seen;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (seen.insert(keys[c]).second) kept.push_back(candidates[c]);
      }
    } else {
      kept = std::move(candidates);
    }

    long long vals_total = 1;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      vals_total *= (Subset{1} << n);
      if (vals_total > (1LL << 40)) {
        throw std::invalid_argument("valuation space too large for bounded search");
      }
    }

    auto scan_frame = [&](long long flat, std::atomic<bool>& stop,
                          long long& out_val) -> int {
      auto idx = frames.decompose(flat);
      std::vector<std::vector<Subset>> cores;
      for (int a = 0; a < k; ++a) cores.push_back(antichains[idx[a]]);
      NbhdModel model{
          NbhdFrame::uniform(StateSet(search_states(n)), agents, std::move(cores)), {}};
      for (long long v = 0; v < vals_total; ++v) {
        if ((v & 0xFFFF) == 0) {
          if (stop.load(std::memory_order_relaxed)) return -2;
          if (ms_since(t0) > budget_ms) {
            stop.store(true, std::memory_order_relaxed);
            return -2;
          }
        }
        long long rest = v;
        for (const auto& var : vars) {
          model.valuation[var] = static_cast<Subset>(rest & ((Subset{1} << n) - 1));
          rest >>= n;
        }
        Subset ext = extension(model, f);
        if (ext != subset_full(n)) {
          out_val = v;
          return subset_members(subset_full(n) & ~ext).front();
        }
      }
      return -1;
    };

    // frames are processed in blocks so that the parallel kernel can stop
    // early and timeouts stay coarse-grained
    const long long block_size = 2048;
    Hit winner;
    std::atomic<bool> timed_out{false};
    long long frames_done = 0;
    for (std::size_t block_lo = 0; block_lo < kept.size() && winner.frame < 0;
         block_lo += block_size) {
      if (ms_since(t0) > budget_ms) {
        timed_out = true;
        break;
      }
      const long long block_hi =
          std::min<long long>(static_cast<long long>(kept.size()),
                              static_cast<long long>(block_lo) + block_size);
      std::atomic<long long> best_in_block{-1};
      Hit block_hit;
#pragma omp parallel for schedule(dynamic) if (use_parallel(mode))
      for (long long i = static_cast<long long>(block_lo); i < block_hi; ++i) {
        long long current_best = best_in_block.load(std::memory_order_relaxed);
        if (current_best >= 0 && i > current_best) continue;
        long long val_idx = -1;
        int state = scan_frame(kept[i], timed_out, val_idx);
        if (state >= 0) {
#pragma omp critical
          {
            Hit h{i, val_idx, state};
            if (h.better_than(block_hit)) {
              block_hit = h;
              best_in_block.store(i, std::memory_order_relaxed);
            }
          }
        }
      }
      if (timed_out) break;
      if (block_hit.frame >= 0) {
        winner = block_hit;
        frames_done = winner.frame;  // full scans before the winning frame
      } else {
        frames_done = block_hi;
      }
    }

    // counters cover fully scanned frames plus the winner's partial scan,
    // which both execution modes agree on
    result.models_checked += frames_done * vals_total;
    result.states_explored += frames_done * vals_total * n;
    if (winner.frame >= 0) {
      result.models_checked += winner.valuation + 1;
      result.states_explored += (winner.valuation + 1) * n;
      auto idx = frames.decompose(kept[winner.frame]);
      std::vector<std::vector<Subset>> cores;
      for (int a = 0; a < k; ++a) cores.push_back(antichains[idx[a]]);
      NbhdModel model{
          NbhdFrame::uniform(StateSet(search_states(n)), agents, std::move(cores)), {}};
      long long rest = winner.valuation;
      for (const auto& var : vars) {
        model.valuation[var] = static_cast<Subset>(rest & ((Subset{1} << n) - 1));
        rest >>= n;
      }
      result.state = model.frame.states().name(winner.state);
      result.countermodel = std::move(model);
      result.verdict = ValidityResult::Verdict::Countermodel;
      break;
    }
    if (timed_out) {
      result.verdict = ValidityResult::Verdict::Timeout;
      break;
    }
  }

  result.elapsed_ms = ms_since(t0);
  return result;
}

// ---------------------------------------------------------------------------
// translation fuzz

BTACModel random_btac_model(std::uint64_t seed, int max_tree, int max_agents, int atoms) {
  Rng rng(seed);
  int t = 1 + rng.below(max_tree);
  std::vector<std::string> moments;
  for (int i = 0; i < t; ++i) moments.push_back("m" + std::to_string(i + 1));
  std::vector<std::pair<std::string, std::string>> order;
  for (int i = 1; i < t; ++i) {
    order.emplace_back(moments[rng.below(i)], moments[i]);
  }
  BTFrame frame(moments, order);

  int agent_count = 1 + rng.below(max_agents);
  std::vector<AgentId> agents = default_agents(agent_count);

  std::vector<History> hists = histories(frame);
  std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>> choice;
  for (int m = 0; m < frame.num_moments(); ++m) {
    std::vector<int> through;
    for (std::size_t h = 0; h < hists.size(); ++h) {
      if (subset_contains(hists[h].moments, m)) through.push_back(static_cast<int>(h));
    }
    auto cores = grid_partition_cores(rng, static_cast<int>(through.size()), agent_count);
    for (int a = 0; a < agent_count; ++a) {
      std::vector<std::vector<std::string>> cells;
      for (Subset local : cores[a]) {
        std::vector<std::string> ids;
        for (int bit : subset_members(local)) {
          ids.push_back(frame.name(hists[through[bit]].top));
        }
        cells.push_back(std::move(ids));
      }
      choice[agents[a].name()][frame.name(m)] = std::move(cells);
    }
  }

  std::map<std::string, std::vector<std::pair<std::string, std::string>>> valuation;
  for (int i = 0; i < atoms && i < static_cast<int>(default_atoms().size()); ++i) {
    auto& pairs = valuation[default_atoms()[i]];
    for (int m = 0; m < frame.num_moments(); ++m) {
      for (std::size_t h = 0; h < hists.size(); ++h) {
        if (subset_contains(hists[h].moments, m) && rng.coin()) {
          pairs.emplace_back(frame.name(m), frame.name(hists[h].top));
        }
      }
    }
  }
  return BTACModel(std::move(frame), std::move(agents), choice, valuation);
}

namespace {

struct TranslationItem {
  bool failed = false;
  nlohmann::json witness;
  long long checks = 0;
};

TranslationItem translation_one(const TranslationFuzzConfig& config, int k) {
  TranslationItem item;
  BTACModel model = random_btac_model(split_seed(config.seed, k), config.max_tree,
                                      config.max_agents, config.atoms);
  Rng rng(split_seed(config.seed ^ 0x7A5C3D2E1F001122ULL, k));
  for (int j = 0; j < config.formulas_per_model; ++j) {
    Formula f = random_osstit_formula(rng, config.atoms, model.agents(), config.max_depth,
                                      /*for_translation=*/true);
    ++item.checks;
    CheckReport rep = check_translation_equiv(model, f);
    if (!rep.holds) {
      item.failed = true;
      item.witness = {{"model", btac_model_to_json(model)},
                      {"formula", render(f)},
                      {"witness", rep.witness},
                      {"formula_index", j}};
      return item;
    }
  }
  return item;
}

}  // namespace

TranslationFuzzReport translation_fuzz(const TranslationFuzzConfig& config, ExecMode mode) {
  auto t0 = Clock::now();
  TranslationFuzzReport rep;
  rep.report = CheckReport::pass("translation-equiv-fuzz");

  long long checks = 0;
  long long best = -1;
  nlohmann::json best_witness;

#pragma omp parallel for schedule(dynamic, 4) reduction(+ : checks) if (use_parallel(mode))
  for (int k = 0; k < config.models; ++k) {
    TranslationItem item = translation_one(config, k);
    checks += item.checks;
    if (item.failed) {
#pragma omp critical
      {
        if (best < 0 || k < best) {
          best = k;
          best_witness = item.witness;
        }
      }
    }
  }

  rep.checks = checks;
  if (best >= 0) {
    best_witness["model_index"] = best;
    rep.report = CheckReport::fail("translation-equiv-fuzz", best_witness);
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// closure-rule smoke test

CheckReport derivability_smoke(const std::vector<SchemaTag>& schemas, const SmokeConfig& config) {
  Rng rng(split_seed(config.seed, 0x51110));
  SearchBounds bounds;
  bounds.max_states = 4;
  bounds.agent_count = 1;  // every sampled model then contains agent "a"
  bounds.atom_count = 2;

  std::vector<NbhdModel> sample;
  for (int i = 0; i < config.models; ++i) {
    sample.push_back(random_class_c_model(config.seed, i, bounds));
  }
  const AgentId agent("a");

  auto valid_on_sample = [&](const Formula& f) {
    for (const auto& model : sample) {
      if (!valid_on(model, f)) return false;
    }
    return true;
  };
  auto equivalent_on_sample = [&](const Formula& f, const Formula& g) {
    for (const auto& model : sample) {
      if (extension(model, f) != extension(model, g)) return false;
    }
    return true;
  };

  std::vector<Formula> pool;
  for (int i = 0; i < config.pool; ++i) {
    pool.push_back(random_osstit_formula(rng, bounds.atom_count, {agent}, 2));
  }
  for (SchemaTag tag : schemas) {
    SchemaArity arity = schema_arity(tag);
    std::vector<Formula> args;
    int count = arity.variadic ? 1 : arity.formulas;
    for (int i = 0; i < count; ++i) {
      args.push_back(random_osstit_formula(rng, bounds.atom_count, {agent}, 1));
    }
    std::vector<AgentId> slots(arity.variadic ? 1 : arity.agents, agent);
    pool.push_back(instantiate(tag, args, slots));
  }
  // constructed equivalents so that the replacement rule actually fires
  std::vector<std::pair<Formula, Formula>> eq_pairs;
  for (int i = 0; i < 8; ++i) {
    Formula f = pool[rng.below(static_cast<int>(pool.size()))];
    Formula g = pool[rng.below(static_cast<int>(pool.size()))];
    eq_pairs.emplace_back(f, Formula::negate(Formula::negate(f)));
    eq_pairs.emplace_back(Formula::or_of(f, g), Formula::or_of(g, f));
    eq_pairs.emplace_back(f, Formula::and_of(f, Formula::top()));
    eq_pairs.emplace_back(f, g);  // usually inequivalent; exercises the vacuous path
  }

  long long re_triggers = 0;
  long long mp_triggers = 0;

  for (const auto& [f, g] : eq_pairs) {
    if (!equivalent_on_sample(f, g)) continue;
    ++re_triggers;
    Formula lhs = Formula::ability(agent, f);
    Formula rhs = Formula::ability(agent, g);
    if (!equivalent_on_sample(lhs, rhs)) {
      return CheckReport::fail("derivability-smoke",
                               {{"rule", "RE"},
                                {"formula", render(f)},
                                {"equivalent", render(g)}});
    }
  }

  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = 0; j < pool.size(); j += 3) {
      const Formula& f = pool[i];
      const Formula& g = pool[j];
      if (!valid_on_sample(f)) continue;
      if (!valid_on_sample(Formula::implies(f, g))) continue;
      ++mp_triggers;
      if (!valid_on_sample(g)) {
        return CheckReport::fail("derivability-smoke",
                                 {{"rule", "MP"},
                                  {"premise", render(f)},
                                  {"conclusion", render(g)}});
      }
    }
  }

  CheckReport rep = CheckReport::pass("derivability-smoke");
  rep.info = {{"re_triggers", re_triggers}, {"mp_triggers", mp_triggers}};
  return rep;
}

}  // namespace stitkit
