#pragma once

#include <map>
#include <string>
#include <vector>

#include "stitkit/check_report.hpp"
#include "stitkit/nbhd.hpp"

namespace stitkit {

// Total map between the state sets of two neighbourhood frames.
class CoreMorphism {
 public:
  CoreMorphism(NbhdFrame source, NbhdFrame target, std::vector<int> map);
  CoreMorphism(NbhdFrame source, NbhdFrame target,
               const std::map<std::string, std::string>& map);

  const NbhdFrame& source() const { return source_; }
  const NbhdFrame& target() const { return target_; }
  int apply(int w) const { return map_.at(w); }
  Subset image(Subset x) const;

 private:
  NbhdFrame source_;
  NbhdFrame target_;
  std::vector<int> map_;
};

// Forth: the image of every source core cell at w is a target core cell at
// f(w). Back: every target core cell at f(w) is the image of some source
// core cell at w. The witness lists every failing condition instance.
CheckReport is_bounded_core_morphism(const CoreMorphism& m);

bool is_surjective(const CoreMorphism& m);

// g after f; requires f's target and g's source to be the same frame.
CoreMorphism compose(const CoreMorphism& f, const CoreMorphism& g);

// Pushes the source valuation through the map and compares satisfaction of
// every formula up to the given modal depth (basis: atoms, ~, |, box, [i];
// enumeration pruned by joint extension) at every source state against its
// image. Requires each V(p) to be a union of map fibers.
CheckReport check_modal_equivalence(const CoreMorphism& m, const NbhdModel& src_model, int depth);

// The two fixture frames of the partition-undefinability argument and the
// collapsing map between them: the source has partition cores everywhere,
// the target has an overlapping core at w1, and the map is a surjective
// bounded core morphism.
struct UndefinabilityFixture {
  NbhdFrame f1;
  NbhdFrame f2;
  CoreMorphism map;
};

UndefinabilityFixture partition_undefinability_fixture();

}  // namespace stitkit
