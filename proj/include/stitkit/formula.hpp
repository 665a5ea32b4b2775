#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace stitkit {

bool is_identifier(const std::string& s);

// Agent names are identifier tokens; equality is by name.
class AgentId {
 public:
  explicit AgentId(std::string name);

  const std::string& name() const { return name_; }

  friend bool operator==(const AgentId& a, const AgentId& b) { return a.name_ == b.name_; }
  friend bool operator!=(const AgentId& a, const AgentId& b) { return a.name_ != b.name_; }
  friend bool operator<(const AgentId& a, const AgentId& b) { return a.name_ < b.name_; }

 private:
  std::string name_;
};

enum class Kind {
  Atom,
  Not,
  Or,
  And,
  Implies,
  Iff,
  Box,
  Dia,
  Ability,         // [i]f        agent i is able to see to it that f
  AbilityDual,     // <i>f        sugar for ~[i]~f
  ForallCore,      // [E:i]f      every proper action of i yields f
  ForallCoreDual,  // <E:i>f      sugar for ~[E:i]~f
  Stit,            // [stit:i]f   i's current choice guarantees f
  StitDual,        // <stit:i>f   sugar for ~[stit:i]~f
};

// The atom used to spell out the true/false literals: true is
// kTopAtom | ~kTopAtom, false its negation.
inline constexpr const char* kTopAtom = "p0";

// Immutable formula over both languages. Shared-structure value type;
// cheap to copy, safe to share across threads.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula negate(Formula f);
  static Formula or_of(Formula a, Formula b);
  static Formula and_of(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula box(Formula f);
  static Formula dia(Formula f);
  static Formula ability(AgentId i, Formula f);
  static Formula ability_dual(AgentId i, Formula f);
  static Formula forall_core(AgentId i, Formula f);
  static Formula forall_core_dual(AgentId i, Formula f);
  static Formula stit(AgentId i, Formula f);
  static Formula stit_dual(AgentId i, Formula f);

  Kind kind() const;
  const std::string& atom_name() const;
  const AgentId& agent() const;
  const Formula& child() const;  // unary operand
  const Formula& left() const;
  const Formula& right() const;

  bool is_unary() const;
  bool is_binary() const;
  bool has_agent() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  // identity of the underlying node; used for memoization
  const void* id() const { return node_.get(); }

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  explicit Formula(NodePtr n) : node_(std::move(n)) {}
  static Formula make_unary(Kind k, Formula f);
  static Formula make_binary(Kind k, Formula a, Formula b);
  static Formula make_agent(Kind k, AgentId i, Formula f);
  NodePtr node_;
};

// Rewrites sugar (and, ->, <->, dia, duals, literals) into the core
// connectives {Atom, Not, Or, Box, Ability, ForallCore, Stit}. Idempotent.
Formula normalize(const Formula& f);

bool is_core(const Formula& f);
bool is_osstit_pure(const Formula& f);  // no Stit / StitDual nodes
bool is_cstit_pure(const Formula& f);   // no Ability / ForallCore (or dual) nodes
bool contains_forall_core(const Formula& f);

std::set<std::string> vars_of(const Formula& f);
std::set<AgentId> agents_of(const Formula& f);
int modal_depth(const Formula& f);

// Concrete syntax; output re-parses to an equal AST.
std::string render(const Formula& f);

// Maps the strategic language into the classical one: homomorphic on the
// Boolean connectives and box, [i]f becomes dia [stit:i] f. Rejects
// formulas with [E:i] (no translation row exists for it) or stit nodes.
Formula translate_tr(const Formula& f);

struct TranslateError : std::runtime_error {
  explicit TranslateError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace stitkit
