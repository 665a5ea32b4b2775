#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stitkit/btac.hpp"
#include "stitkit/check_report.hpp"
#include "stitkit/formula.hpp"
#include "stitkit/logic.hpp"
#include "stitkit/nbhd.hpp"

namespace stitkit {

// Every sweep comes in a serial and an OpenMP flavour. Work items are
// seeded independently and merged by lowest index, so both flavours
// produce identical reports; the serial one is the reference the parallel
// kernels are tested against.
enum class ExecMode { Serial, Parallel };

struct SearchBounds {
  int max_states = 5;
  int agent_count = 2;
  int atom_count = 3;
  double max_seconds = 600.0;
};

struct FuzzConfig {
  int models = 500;
  SearchBounds bounds;
  std::vector<SchemaTag> schemas = all_schemas();
  std::uint64_t seed = 0;
};

struct FuzzReport {
  CheckReport report;
  long long models_checked = 0;
  long long instances_checked = 0;
  long long states_explored = 0;
  std::int64_t elapsed_ms = 0;
};

// Generates class-C models and checks every schema instance (random
// depth <= 2 subformulas; Ind over every nonempty agent sublist) for
// validity at every state. Any witness is a soundness bug.
FuzzReport soundness_fuzz(const FuzzConfig& config, ExecMode mode = ExecMode::Parallel);

struct ValidityResult {
  enum class Verdict { ValidUpToBound, Countermodel, Timeout } verdict;
  std::optional<NbhdModel> countermodel;
  std::string state;
  long long models_checked = 0;   // (frame, valuation) pairs evaluated
  long long states_explored = 0;  // states across those models
  std::int64_t elapsed_ms = 0;

  nlohmann::json to_json() const;
};

// Bounded validity over class C: enumerates, in increasing state count,
// every uniform covering-antichain frame tuple (filtered by cross-agent
// independence, deduplicated up to state permutation when cheap) and every
// valuation of the formula's atoms, and reports the first countermodel in
// enumeration order or certifies the bound.
ValidityResult validity_search(const Formula& f, const SearchBounds& bounds,
                               ExecMode mode = ExecMode::Parallel);

struct TranslationFuzzConfig {
  int models = 200;
  int formulas_per_model = 20;
  int max_tree = 4;
  int max_agents = 2;
  int atoms = 3;
  int max_depth = 3;
  std::uint64_t seed = 0;
};

struct TranslationFuzzReport {
  CheckReport report;
  long long checks = 0;
  std::int64_t elapsed_ms = 0;
};

// Random BT+AC models vs random strategic formulas: the per-moment
// extraction plus disjoint union must agree with the classical evaluation
// of the translated formula at every index.
TranslationFuzzReport translation_fuzz(const TranslationFuzzConfig& config,
                                       ExecMode mode = ExecMode::Parallel);

// Random BT+AC model with grid-style (hence independent) choice
// partitions on a random tree order.
BTACModel random_btac_model(std::uint64_t seed, int max_tree, int max_agents, int atoms);

struct SmokeConfig {
  int models = 30;
  int pool = 40;
  std::uint64_t seed = 0;
};

// Semantic counterparts of the closure rules: over a fuzzed model sample,
// premises valid on the sample must give conclusions valid on the sample
// (modus ponens), and sample-equivalent formulas must stay equivalent
// under [i] (replacement of equivalents). Info carries trigger counts.
CheckReport derivability_smoke(const std::vector<SchemaTag>& schemas, const SmokeConfig& config);

// Deterministic class-C model keyed by (seed, index); shared by the fuzz
// drivers and tests.
NbhdModel random_class_c_model(std::uint64_t seed, std::uint64_t index, const SearchBounds& bounds);

}  // namespace stitkit
