#include "stitkit/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace stitkit {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

AgentId::AgentId(std::string name) : name_(std::move(name)) {
  if (!is_identifier(name_)) {
    throw std::invalid_argument("invalid agent name: '" + name_ + "'");
  }
}

struct Formula::Node {
  Kind kind;
  std::string atom;              // Atom only
  std::optional<AgentId> agent;  // agent modalities only
  std::optional<Formula> a, b;   // unary: a; binary: a, b
};

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) {
    throw std::invalid_argument("invalid atom name: '" + name + "'");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->atom = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::make_unary(Kind k, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::make_binary(Kind k, Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::make_agent(Kind k, AgentId i, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->agent = std::move(i);
  n->a = std::move(f);
  return Formula(std::move(n));
}

Formula Formula::negate(Formula f) { return make_unary(Kind::Not, std::move(f)); }
Formula Formula::box(Formula f) { return make_unary(Kind::Box, std::move(f)); }
Formula Formula::dia(Formula f) { return make_unary(Kind::Dia, std::move(f)); }
Formula Formula::or_of(Formula a, Formula b) { return make_binary(Kind::Or, std::move(a), std::move(b)); }
Formula Formula::and_of(Formula a, Formula b) { return make_binary(Kind::And, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) { return make_binary(Kind::Implies, std::move(a), std::move(b)); }
Formula Formula::iff(Formula a, Formula b) { return make_binary(Kind::Iff, std::move(a), std::move(b)); }

Formula Formula::ability(AgentId i, Formula f) {
  return make_agent(Kind::Ability, std::move(i), std::move(f));
}
Formula Formula::ability_dual(AgentId i, Formula f) {
  return make_agent(Kind::AbilityDual, std::move(i), std::move(f));
}
Formula Formula::forall_core(AgentId i, Formula f) {
  return make_agent(Kind::ForallCore, std::move(i), std::move(f));
}
Formula Formula::forall_core_dual(AgentId i, Formula f) {
  return make_agent(Kind::ForallCoreDual, std::move(i), std::move(f));
}
Formula Formula::stit(AgentId i, Formula f) {
  return make_agent(Kind::Stit, std::move(i), std::move(f));
}
Formula Formula::stit_dual(AgentId i, Formula f) {
  return make_agent(Kind::StitDual, std::move(i), std::move(f));
}

Formula Formula::top() {
  Formula p = atom(kTopAtom);
  return or_of(p, negate(p));
}

Formula Formula::bottom() { return negate(top()); }

Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::atom_name() const {
  if (node_->kind != Kind::Atom) throw std::logic_error("atom_name on non-atom");
  return node_->atom;
}

const AgentId& Formula::agent() const {
  if (!node_->agent) throw std::logic_error("agent on agent-free node");
  return *node_->agent;
}

bool Formula::has_agent() const { return node_->agent.has_value(); }

bool Formula::is_binary() const {
  switch (node_->kind) {
    case Kind::Or:
    case Kind::And:
    case Kind::Implies:
    case Kind::Iff:
      return true;
    default:
      return false;
  }
}

bool Formula::is_unary() const { return node_->kind != Kind::Atom && !is_binary(); }

const Formula& Formula::child() const {
  if (!is_unary()) throw std::logic_error("child on non-unary node");
  return *node_->a;
}

const Formula& Formula::left() const {
  if (!is_binary()) throw std::logic_error("left on non-binary node");
  return *node_->a;
}

const Formula& Formula::right() const {
  if (!is_binary()) throw std::logic_error("right on non-binary node");
  return *node_->b;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Atom:
      return node_->atom == other.node_->atom;
    case Kind::Or:
    case Kind::And:
    case Kind::Implies:
    case Kind::Iff:
      return left() == other.left() && right() == other.right();
    default:
      if (node_->agent && *node_->agent != *other.node_->agent) return false;
      return child() == other.child();
  }
}

Formula normalize(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
      return f;
    case Kind::Not: {
      Formula c = normalize(f.child());
      return c.id() == f.child().id() ? f : Formula::negate(c);
    }
    case Kind::Or: {
      Formula a = normalize(f.left());
      Formula b = normalize(f.right());
      if (a.id() == f.left().id() && b.id() == f.right().id()) return f;
      return Formula::or_of(a, b);
    }
    case Kind::And: {
      // a & b  ==  ~(~a | ~b)
      Formula a = normalize(f.left());
      Formula b = normalize(f.right());
      return Formula::negate(Formula::or_of(Formula::negate(a), Formula::negate(b)));
    }
    case Kind::Implies:
      return Formula::or_of(Formula::negate(normalize(f.left())), normalize(f.right()));
    case Kind::Iff:
      return normalize(Formula::and_of(Formula::implies(f.left(), f.right()),
                                       Formula::implies(f.right(), f.left())));
    case Kind::Box: {
      Formula c = normalize(f.child());
      return c.id() == f.child().id() ? f : Formula::box(c);
    }
    case Kind::Dia:
      return Formula::negate(Formula::box(Formula::negate(normalize(f.child()))));
    case Kind::Ability: {
      Formula c = normalize(f.child());
      return c.id() == f.child().id() ? f : Formula::ability(f.agent(), c);
    }
    case Kind::AbilityDual:
      return Formula::negate(Formula::ability(f.agent(), Formula::negate(normalize(f.child()))));
    case Kind::ForallCore: {
      Formula c = normalize(f.child());
      return c.id() == f.child().id() ? f : Formula::forall_core(f.agent(), c);
    }
    case Kind::ForallCoreDual:
      return Formula::negate(
          Formula::forall_core(f.agent(), Formula::negate(normalize(f.child()))));
    case Kind::Stit: {
      Formula c = normalize(f.child());
      return c.id() == f.child().id() ? f : Formula::stit(f.agent(), c);
    }
    case Kind::StitDual:
      return Formula::negate(Formula::stit(f.agent(), Formula::negate(normalize(f.child()))));
  }
  throw std::logic_error("unreachable");
}

bool is_core(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
      return true;
    case Kind::Not:
    case Kind::Box:
    case Kind::Ability:
    case Kind::ForallCore:
    case Kind::Stit:
      return is_core(f.child());
    case Kind::Or:
      return is_core(f.left()) && is_core(f.right());
    default:
      return false;
  }
}

static bool any_kind(const Formula& f, bool (*pred)(Kind)) {
  if (pred(f.kind())) return true;
  if (f.is_binary()) return any_kind(f.left(), pred) || any_kind(f.right(), pred);
  if (f.is_unary()) return any_kind(f.child(), pred);
  return false;
}

bool is_osstit_pure(const Formula& f) {
  return !any_kind(f, [](Kind k) { return k == Kind::Stit || k == Kind::StitDual; });
}

bool is_cstit_pure(const Formula& f) {
  return !any_kind(f, [](Kind k) {
    return k == Kind::Ability || k == Kind::AbilityDual || k == Kind::ForallCore ||
           k == Kind::ForallCoreDual;
  });
}

bool contains_forall_core(const Formula& f) {
  return any_kind(f, [](Kind k) { return k == Kind::ForallCore || k == Kind::ForallCoreDual; });
}

static void collect_vars(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Kind::Atom) {
    out.insert(f.atom_name());
  } else if (f.is_binary()) {
    collect_vars(f.left(), out);
    collect_vars(f.right(), out);
  } else {
    collect_vars(f.child(), out);
  }
}

std::set<std::string> vars_of(const Formula& f) {
  std::set<std::string> out;
  collect_vars(f, out);
  return out;
}

static void collect_agents(const Formula& f, std::set<AgentId>& out) {
  if (f.has_agent()) out.insert(f.agent());
  if (f.is_binary()) {
    collect_agents(f.left(), out);
    collect_agents(f.right(), out);
  } else if (f.is_unary()) {
    collect_agents(f.child(), out);
  }
}

std::set<AgentId> agents_of(const Formula& f) {
  std::set<AgentId> out;
  collect_agents(f, out);
  return out;
}

int modal_depth(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
      return 0;
    case Kind::Not:
      return modal_depth(f.child());
    case Kind::Or:
    case Kind::And:
    case Kind::Implies:
    case Kind::Iff:
      return std::max(modal_depth(f.left()), modal_depth(f.right()));
    default:
      return 1 + modal_depth(f.child());
  }
}

// ---------------------------------------------------------------------------
// rendering

namespace {

// precedence: <-> 1, -> 2, | 3, & 4, unary 5, atom 6
int precedence(Kind k) {
  switch (k) {
    case Kind::Iff:
      return 1;
    case Kind::Implies:
      return 2;
    case Kind::Or:
      return 3;
    case Kind::And:
      return 4;
    case Kind::Atom:
      return 6;
    default:
      return 5;
  }
}

bool is_top_pattern(const Formula& f) {
  return f.kind() == Kind::Or && f.left().kind() == Kind::Atom &&
         f.left().atom_name() == kTopAtom && f.right().kind() == Kind::Not &&
         f.right().child().kind() == Kind::Atom && f.right().child().atom_name() == kTopAtom;
}

bool is_bottom_pattern(const Formula& f) {
  return f.kind() == Kind::Not && is_top_pattern(f.child());
}

void render_into(const Formula& f, int min_prec, std::string& out) {
  if (is_top_pattern(f)) {
    out += "true";
    return;
  }
  if (is_bottom_pattern(f)) {
    out += "false";
    return;
  }
  int p = precedence(f.kind());
  bool parens = p < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case Kind::Atom:
      out += f.atom_name();
      break;
    case Kind::Not:
      out += '~';
      render_into(f.child(), 5, out);
      break;
    case Kind::Box:
      out += "box ";
      render_into(f.child(), 5, out);
      break;
    case Kind::Dia:
      out += "dia ";
      render_into(f.child(), 5, out);
      break;
    case Kind::Ability:
      out += '[' + f.agent().name() + "] ";
      render_into(f.child(), 5, out);
      break;
    case Kind::AbilityDual:
      out += '<' + f.agent().name() + "> ";
      render_into(f.child(), 5, out);
      break;
    case Kind::ForallCore:
      out += "[E:" + f.agent().name() + "] ";
      render_into(f.child(), 5, out);
      break;
    case Kind::ForallCoreDual:
      out += "<E:" + f.agent().name() + "> ";
      render_into(f.child(), 5, out);
      break;
    case Kind::Stit:
      out += "[stit:" + f.agent().name() + "] ";
      render_into(f.child(), 5, out);
      break;
    case Kind::StitDual:
      out += "<stit:" + f.agent().name() + "> ";
      render_into(f.child(), 5, out);
      break;
    case Kind::Or:  // left-associative
      render_into(f.left(), 3, out);
      out += " | ";
      render_into(f.right(), 4, out);
      break;
    case Kind::And:  // left-associative
      render_into(f.left(), 4, out);
      out += " & ";
      render_into(f.right(), 5, out);
      break;
    case Kind::Implies:  // right-associative
      render_into(f.left(), 3, out);
      out += " -> ";
      render_into(f.right(), 2, out);
      break;
    case Kind::Iff:  // right-associative
      render_into(f.left(), 2, out);
      out += " <-> ";
      render_into(f.right(), 1, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, 0, out);
  return out;
}

Formula translate_tr(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
      return f;
    case Kind::Not:
      return Formula::negate(translate_tr(f.child()));
    case Kind::Or:
      return Formula::or_of(translate_tr(f.left()), translate_tr(f.right()));
    case Kind::And:
      return Formula::and_of(translate_tr(f.left()), translate_tr(f.right()));
    case Kind::Implies:
      return Formula::implies(translate_tr(f.left()), translate_tr(f.right()));
    case Kind::Iff:
      return Formula::iff(translate_tr(f.left()), translate_tr(f.right()));
    case Kind::Box:
      return Formula::box(translate_tr(f.child()));
    case Kind::Dia:
      return Formula::dia(translate_tr(f.child()));
    case Kind::Ability:
      return Formula::dia(Formula::stit(f.agent(), translate_tr(f.child())));
    case Kind::AbilityDual:
      // <i>f == ~[i]~f, so translate the spelled-out form
      return Formula::negate(
          Formula::dia(Formula::stit(f.agent(), Formula::negate(translate_tr(f.child())))));
    case Kind::ForallCore:
    case Kind::ForallCoreDual:
      throw TranslateError("no translation exists for [E:" + f.agent().name() + "]");
    case Kind::Stit:
    case Kind::StitDual:
      throw TranslateError("input already contains [stit:" + f.agent().name() + "]");
  }
  throw std::logic_error("unreachable");
}

}  // namespace stitkit
