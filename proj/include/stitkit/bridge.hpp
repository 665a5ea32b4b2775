#pragma once

#include <string>
#include <vector>

#include "stitkit/btac.hpp"
#include "stitkit/check_report.hpp"
#include "stitkit/formula.hpp"
#include "stitkit/mc.hpp"
#include "stitkit/nbhd.hpp"

namespace stitkit {

// One-shot strategic model extracted at a moment: states are the indices
// m/h for h through m (named "m/historyId"), each agent's generators are
// the cells of its choice partition there, and the valuation is the
// restriction of the BT+AC valuation. Uniform across states, so (nec)
// holds; BT+AC invariants put the result in class P.
NbhdModel bt_to_osstit(const BTACModel& model, const std::string& moment);

// Disjoint union of strategic models over a shared agent set. Component
// states are renamed "c{n}:{state}". Generators are kept per component;
// their up-closure in the union realizes the membership law
//   X in N_i(w)  iff  X \cap W_n in N^n_i(w)   for w in W_n.
struct DisjointUnion {
  NbhdModel model;
  std::vector<Subset> blocks;  // component state sets, in input order
};

DisjointUnion disjoint_union(const std::vector<NbhdModel>& models);

// Extension where box is evaluated per block: it quantifies over the
// block containing the state (the generated-submodel reading) rather than
// the whole union. All other operators are block-local already.
Subset extension_scoped(const NbhdModel& model, const std::vector<Subset>& blocks,
                        const Formula& f);

// Checks, at every index of every moment, that the strategic formula holds
// in the disjoint union of the per-moment extractions exactly when its
// translation holds in the BT+AC model. The info field records any indices
// where a global (whole-union) box reading would diverge from the
// per-component one used here.
CheckReport check_translation_equiv(const BTACModel& model, const Formula& f);

}  // namespace stitkit
