// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion pins its own workload sizes and time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "stitkit/bridge.hpp"
#include "stitkit/logic.hpp"
#include "stitkit/mc.hpp"
#include "stitkit/morphism.hpp"
#include "stitkit/parser.hpp"
#include "stitkit/sweep.hpp"
#include "test_support.hpp"

using namespace stitkit;
using namespace stitkit::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

bool expect(bool cond, const std::string& what, std::string& detail) {
  if (!cond && detail.empty()) detail = what;
  return cond;
}

// --- criterion 1 ------------------------------------------------------------

bool run_fixture_suite(std::string& detail) {
  UndefinabilityFixture fx = partition_undefinability_fixture();
  bool ok = true;
  ok &= expect(check_partition_cores(fx.f1).holds, "source cores must partition", detail);
  CheckReport overlap = check_partition_cores(fx.f2);
  ok &= expect(!overlap.holds, "target cores must overlap", detail);
  ok &= expect(overlap.witness.at("state") == "w1", "overlap must sit at w1", detail);
  ok &= expect(overlap.witness.at("overlap") == nlohmann::json({"w2"}),
               "overlap must be exactly {w2}", detail);
  ok &= expect(is_surjective(fx.map), "map must be surjective", detail);
  ok &= expect(is_bounded_core_morphism(fx.map).holds, "map must be a bounded core morphism",
               detail);
  // the source leaves class C through (nec) alone
  ok &= expect(!check_nec(fx.f1).holds, "source must violate (nec)", detail);
  ok &= expect(check_un(fx.f1).holds, "source must satisfy (un)", detail);
  return ok;
}

// --- criterion 2 ------------------------------------------------------------

bool run_soundness_fuzz(std::string& detail) {
  FuzzConfig config;
  config.models = 500;
  config.bounds.max_states = 5;
  config.bounds.agent_count = 3;
  config.bounds.atom_count = 3;
  config.seed = 417;
  FuzzReport rep = soundness_fuzz(config);
  if (!rep.report.holds) {
    detail = "invalid instance: " + rep.report.witness.dump();
    return false;
  }
  detail = std::to_string(rep.instances_checked) + " instances over 500 models";
  return rep.models_checked == 500;
}

// --- criterion 3 ------------------------------------------------------------

NbhdFrame frame_violating_ind(Rng& rng) {
  for (;;) {
    int n = 2 + rng.below(3);
    auto partition = [&](int cells) {
      std::vector<Subset> out(cells, 0);
      for (;;) {
        for (auto& c : out) c = 0;
        for (int w = 0; w < n; ++w) out[rng.below(cells)] |= subset_single(w);
        bool ok = true;
        for (Subset c : out) ok = ok && c != 0;
        if (ok) return out;
      }
    };
    std::vector<std::vector<Subset>> cores{partition(2), partition(2)};
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i + 1));
    NbhdFrame f = NbhdFrame::uniform(StateSet(names), default_agents(2), cores);
    if (!check_ind(f).holds && check_nec(f).holds && check_un(f).holds) return f;
  }
}

NbhdFrame frame_violating_nec(Rng& rng) {
  for (;;) {
    int n = 2 + rng.below(3);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i + 1));
    // a nontrivial partition at w1, the whole space elsewhere
    std::vector<Subset> cells(2, 0);
    for (int w = 0; w < n; ++w) cells[rng.below(2)] |= subset_single(w);
    if (cells[0] == 0 || cells[1] == 0) continue;
    std::vector<std::vector<Subset>> per_state(n, {subset_full(n)});
    per_state[0] = cells;
    NbhdFrame f(StateSet(names), default_agents(1), {per_state});
    if (check_nec(f).holds) continue;
    if (check_ind(f).holds && check_un(f).holds) return f;
  }
}

NbhdFrame frame_violating_un(Rng& rng) {
  for (;;) {
    int n = 2 + rng.below(3);
    Subset carrier = rng.nonempty_subset(n);
    if (carrier == subset_full(n)) continue;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i + 1));
    // agent a covers only the carrier, agent b covers everything
    std::vector<Subset> cells;
    for (int w : subset_members(carrier)) cells.push_back(subset_single(w));
    NbhdFrame f = NbhdFrame::uniform(StateSet(names), default_agents(2),
                                     {cells, {subset_full(n)}});
    if (!check_un(f).holds && check_ind(f).holds && check_nec(f).holds) return f;
  }
}

bool run_definability_converses(std::string& detail) {
  Rng rng(2718);
  int produced = 0;
  for (int i = 0; i < 40; ++i) {
    NbhdFrame ind_frame = frame_violating_ind(rng);
    Falsification ind_fals = falsify_ind(ind_frame);  // throws when it fails to falsify
    NbhdModel ind_model{ind_frame, ind_fals.valuation};
    if (!expect(!eval(ind_model, ind_fals.state, ind_fals.instance),
                "(ind) instance must fail at the witness state", detail)) {
      return false;
    }

    NbhdFrame nec_frame = frame_violating_nec(rng);
    Falsification nec_fals = falsify_nec(nec_frame);
    NbhdModel nec_model{nec_frame, nec_fals.valuation};
    if (!expect(!eval(nec_model, nec_fals.state, nec_fals.instance),
                "(nec) instance must fail at the witness state", detail)) {
      return false;
    }

    NbhdFrame un_frame = frame_violating_un(rng);
    Falsification un_fals = falsify_un(un_frame);
    NbhdModel un_model{un_frame, un_fals.valuation};
    if (!expect(!eval(un_model, un_fals.state, un_fals.instance),
                "(un) instance must fail at the witness state", detail)) {
      return false;
    }
    produced += 3;
  }
  detail = std::to_string(produced) + " falsifying constructions";
  return produced >= 100;
}

// --- criterion 4 ------------------------------------------------------------

bool run_definitional_equivalence(std::string& detail) {
  SearchBounds bounds;
  bounds.max_states = 5;
  bounds.agent_count = 3;
  bounds.atom_count = 3;
  long long comparisons = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    NbhdModel model = random_class_c_model(31415, i, bounds);
    Rng rng(split_seed(31415 ^ 0xF00D, i));
    for (int j = 0; j < 50; ++j) {
      Formula f = random_osstit_formula(rng, 3, model.frame.agents(), 2);
      for (const AgentId& agent : model.frame.agents()) {
        Formula able = Formula::ability(agent, f);
        Formula forall = Formula::forall_core(agent, f);
        for (int w = 0; w < model.frame.num_states(); ++w) {
          ++comparisons;
          if (eval(model, w, able) != eval_ability_core(model, w, agent, f)) {
            detail = "ability clauses disagree on " + render(f);
            return false;
          }
          if (eval(model, w, forall) != eval_forall_rel(model, w, agent, f)) {
            detail = "[E:i] clauses disagree on " + render(f);
            return false;
          }
        }
      }
    }
  }
  detail = std::to_string(comparisons) + " comparisons, zero disagreements";
  return true;
}

// --- criterion 5 ------------------------------------------------------------

bool run_translation_theorem(std::string& detail) {
  TranslationFuzzConfig config;
  config.models = 200;
  config.formulas_per_model = 20;
  config.max_tree = 4;
  config.max_depth = 3;
  config.seed = 1618;
  TranslationFuzzReport rep = translation_fuzz(config);
  if (!rep.report.holds) {
    detail = "witness: " + rep.report.witness.dump();
    return false;
  }
  detail = std::to_string(rep.checks) + " model/formula checks, zero witnesses";
  return rep.checks == 200 * 20;
}

// --- criterion 6 ------------------------------------------------------------

bool run_bounded_validity(std::string& detail) {
  SearchBounds bounds;
  bounds.max_states = 3;
  bounds.agent_count = 2;
  bounds.max_seconds = 100.0;

  const std::vector<std::string> valid_instances{
      "box p -> [a] p",                 // Incl
      "[a] true",                       // N
      "~[a] false",                     // D
      "box p <-> [E:a] p",              // Pos
      "[a] p -> box [a] p",             // Nec-A
      "[a] p & [b] q -> dia (p & q)",   // Ind
  };
  for (const auto& text : valid_instances) {
    ValidityResult r = validity_search(parse(text), bounds);
    if (r.verdict != ValidityResult::Verdict::ValidUpToBound) {
      detail = "expected validity up to the bound for: " + text;
      return false;
    }
  }

  SearchBounds small = bounds;
  small.agent_count = 1;
  ValidityResult cm = validity_search(parse("[a] p -> p"), small);
  if (cm.verdict != ValidityResult::Verdict::Countermodel ||
      cm.countermodel->frame.num_states() != 2) {
    detail = "expected a two-state countermodel for [a] p -> p";
    return false;
  }
  if (eval(*cm.countermodel, cm.state, parse("[a] p -> p"))) {
    detail = "countermodel does not refute [a] p -> p";
    return false;
  }

  ValidityResult cm2 = validity_search(parse("[a] p -> [b] p"), bounds);
  if (cm2.verdict != ValidityResult::Verdict::Countermodel) {
    detail = "expected a countermodel for [a] p -> [b] p";
    return false;
  }
  if (eval(*cm2.countermodel, cm2.state, parse("[a] p -> [b] p"))) {
    detail = "countermodel does not refute [a] p -> [b] p";
    return false;
  }
  detail = "six instances certified, two countermodels found";
  return true;
}

// --- criterion 7 ------------------------------------------------------------

std::vector<std::vector<Subset>> all_antichains(int n) {
  std::vector<std::vector<Subset>> out;
  std::vector<Subset> chosen;
  std::function<void(Subset)> dfs = [&](Subset next) {
    if (!chosen.empty()) out.push_back(chosen);
    for (Subset s = next; s <= subset_full(n); ++s) {
      bool ok = true;
      for (Subset c : chosen) {
        if (subset_leq(c, s) || subset_leq(s, c)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        chosen.push_back(s);
        dfs(s + 1);
        chosen.pop_back();
      }
    }
  };
  dfs(1);
  return out;
}

bool run_oracle_crosschecks(std::string& detail) {
  // histories: down-set construction vs brute-force maximal chains on every
  // backward-linear strict order with at most five moments
  long long frames_checked = 0;
  for (int n = 1; n <= 5; ++n) {
    for (const auto& above : all_strict_orders(n)) {
      if (!backward_linear(above)) continue;
      ++frames_checked;
      std::vector<std::string> names;
      for (int i = 0; i < n; ++i) names.push_back("m" + std::to_string(i + 1));
      std::vector<std::pair<std::string, std::string>> order;
      for (int i = 0; i < n; ++i) {
        for (int j : subset_members(above[i])) order.emplace_back(names[i], names[j]);
      }
      BTFrame frame(names, order);
      std::vector<Subset> got;
      for (const History& h : histories(frame)) got.push_back(h.moments);
      std::vector<Subset> expected = maximal_chains_oracle(above);
      std::sort(got.begin(), got.end());
      std::sort(expected.begin(), expected.end());
      if (got != expected) {
        detail = "history mismatch on a " + std::to_string(n) + "-moment order";
        return false;
      }
    }
  }

  // membership: generator test vs materialized up-closure, exhaustively over
  // every antichain for |W| <= 3 and sampled antichains at |W| = 4
  long long families_checked = 0;
  auto check_family = [&](const std::vector<Subset>& cells, int n) {
    ++families_checked;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i + 1));
    NbhdFrame f = NbhdFrame::uniform(StateSet(names), default_agents(1), {cells});
    for (Subset x = 0; x <= subset_full(n); ++x) {
      if (f.member(0, 0, x) != member_oracle(cells, n, x)) return false;
      if (x == subset_full(n)) break;
    }
    auto oracle = core_oracle(cells, n);
    std::sort(oracle.begin(), oracle.end());
    return f.core(0, 0) == oracle;
  };
  for (int n = 1; n <= 3; ++n) {
    for (const auto& cells : all_antichains(n)) {
      if (!check_family(cells, n)) {
        detail = "membership mismatch on a " + std::to_string(n) + "-state family";
        return false;
      }
    }
  }
  Rng rng(86);
  for (int i = 0; i < 200; ++i) {
    NbhdFrame f = random_any_frame(rng, 4, 1);
    if (!check_family(f.core(0, rng.below(4)), 4)) {
      detail = "membership mismatch on a sampled 4-state family";
      return false;
    }
  }
  detail = std::to_string(frames_checked) + " orders, " + std::to_string(families_checked) +
           " neighbourhood families";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"undefinability fixture suite", 1.0, run_fixture_suite},
      {"soundness fuzz, 500 class-C models", 60.0, run_soundness_fuzz},
      {"definability converses, 120 broken frames", 10.0, run_definability_converses},
      {"definitional equivalence, 200 models x 50 formulas", 60.0, run_definitional_equivalence},
      {"translation theorem, 200 BT+AC models x 20 formulas", 60.0, run_translation_theorem},
      {"bounded validity sanity", 120.0, run_bounded_validity},
      {"oracle cross-checks", 60.0, run_oracle_crosschecks},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    std::string detail;
    auto t0 = Clock::now();
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_budget = seconds < c.budget_seconds;
    bool pass = ok && in_budget;
    std::printf("[%s] %zu/%zu %s (%.2fs%s)%s%s\n", pass ? "PASS" : "FAIL", i + 1,
                criteria.size(), c.name.c_str(), seconds,
                in_budget ? "" : ", over budget", detail.empty() ? "" : " -- ",
                detail.c_str());
    if (!pass) ++failures;
  }
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
