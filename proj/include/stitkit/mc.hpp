#pragma once

#include "stitkit/formula.hpp"
#include "stitkit/nbhd.hpp"

namespace stitkit {

// Extension of an osstit-pure formula: the set of states satisfying it.
// Computed bottom-up with memoization on shared subformula nodes.
//   box f     -- universal modality: W when f holds everywhere, else empty
//   [i] f     -- states whose neighbourhood contains the extension of f
//   [E:i] f   -- states where every core cell lies inside the extension
// Throws ModelError on stit operators or unknown agents.
Subset extension(const NbhdModel& model, const Formula& f);

bool eval(const NbhdModel& model, int state, const Formula& f);
bool eval(const NbhdModel& model, const std::string& state, const Formula& f);

// [i] via the core route: some core cell included in the extension of f.
// Agrees with eval of [i] f on every model (monotonicity).
bool eval_ability_core(const NbhdModel& model, int state, const AgentId& agent, const Formula& f);

// [E:i] via the relation R_i; requires (nec). Coincides with the core
// clause wherever the core union covers the state space; outside that
// union the relational reading is vacuously true.
bool eval_forall_rel(const NbhdModel& model, int state, const AgentId& agent, const Formula& f);

// f holds at every state
bool valid_on(const NbhdModel& model, const Formula& f);

}  // namespace stitkit
