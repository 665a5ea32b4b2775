#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stitkit/check_report.hpp"
#include "stitkit/formula.hpp"
#include "stitkit/nbhd.hpp"
#include "stitkit/rng.hpp"

namespace stitkit {

// The axiom schemas of the strategic system, plus the S5 components for
// box and the T/4/B components for [E:i].
enum class SchemaTag {
  Incl,   // box f -> [i] f
  M,      // [i](f & g) -> ([i]f & [i]g)
  N,      // [i] true
  D,      // ~[i] false
  Pos,    // box f <-> [E:i] f
  NecA,   // [i]f -> box [i]f
  Ind,    // [i1]f1 & ... & [ik]fk -> dia (f1 & ... & fk), distinct agents
  KBox,   // box (f -> g) -> (box f -> box g)
  TBox,   // box f -> f
  Box4,   // box f -> box box f
  Box5,   // dia f -> box dia f
  TEx,    // [E:i] f -> f
  Ex4,    // [E:i] f -> [E:i][E:i] f
  ExB,    // f -> [E:i]<E:i> f
};

const std::vector<SchemaTag>& all_schemas();
std::string schema_name(SchemaTag tag);
std::optional<SchemaTag> schema_from_name(const std::string& name);

struct SchemaArity {
  int formulas = 0;
  int agents = 0;
  bool variadic = false;  // Ind: one formula per agent, any positive count
};

SchemaArity schema_arity(SchemaTag tag);

// Fills the schema's slots. Ind accepts any nonempty list of distinct
// agents with one formula each.
Formula instantiate(SchemaTag tag, const std::vector<Formula>& formulas,
                    const std::vector<AgentId>& agents);

enum class FrameStyle { Grid, Perturbed };

struct FrameGenParams {
  int states = 4;
  int agents = 2;
  std::uint64_t seed = 0;
  FrameStyle style = FrameStyle::Grid;
};

// Random frame in class C. Grid style assigns every state a coordinate
// tuple (one coordinate per agent, every tuple inhabited) and takes
// coordinate preimages as the uniform cores, which yields partition cores.
// Perturbed style then merges cells or adds overlapping covering cells and
// re-validates, so it can leave class P while staying in class C.
NbhdFrame generate_frame(const FrameGenParams& params);

// The grid construction behind generate_frame, usable on any carrier set
// of `count` elements: per-agent partitions whose cells pairwise intersect
// across agents (every coordinate tuple is inhabited).
std::vector<std::vector<Subset>> grid_partition_cores(Rng& rng, int count, int agents);

std::vector<AgentId> default_agents(int count);

Subset random_subset(Rng& rng, int n);
std::map<std::string, Subset> random_valuation(Rng& rng, int n, int atoms);

// Random strategic formula over the first `atoms` default atom names and
// the given agents; no stit and, when for_translation, no [E:i] either.
Formula random_osstit_formula(Rng& rng, int atoms, const std::vector<AgentId>& agents,
                              int max_depth, bool for_translation = false);

const std::vector<std::string>& default_atoms();

// Falsifying valuations for frames violating a single frame condition:
// the corresponding axiom instance fails at the witness state. Each
// construction re-evaluates the instance and throws ModelError if the
// frame actually satisfies the property.
struct Falsification {
  std::map<std::string, Subset> valuation;
  Formula instance;
  std::string state;
};

Falsification falsify_ind(const NbhdFrame& frame);
Falsification falsify_nec(const NbhdFrame& frame);
Falsification falsify_un(const NbhdFrame& frame);

}  // namespace stitkit
