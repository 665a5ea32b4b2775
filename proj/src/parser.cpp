#include "stitkit/parser.hpp"

#include <cctype>
#include <sstream>

namespace stitkit {

namespace {

enum class Tok {
  Ident,
  KwBox,
  KwDia,
  KwTrue,
  KwFalse,
  Tilde,
  Amp,
  Pipe,
  Arrow,
  DArrow,  // <->
  LParen,
  RParen,
  LBracket,
  RBracket,
  Less,
  Greater,
  Colon,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

std::string describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::KwBox: return "'box'";
    case Tok::KwDia: return "'dia'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Less: return "'<'";
    case Tok::Greater: return "'>'";
    case Tok::Colon: return "':'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string word = text.substr(i, j - i);
      Tok k = Tok::Ident;
      if (word == "box") k = Tok::KwBox;
      else if (word == "dia") k = Tok::KwDia;
      else if (word == "true") k = Tok::KwTrue;
      else if (word == "false") k = Tok::KwFalse;
      out.push_back({k, std::move(word), start});
      i = j;
      continue;
    }
    switch (c) {
      case '~': out.push_back({Tok::Tilde, "~", start}); ++i; break;
      case '&': out.push_back({Tok::Amp, "&", start}); ++i; break;
      case '|': out.push_back({Tok::Pipe, "|", start}); ++i; break;
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; break;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; break;
      case '[': out.push_back({Tok::LBracket, "[", start}); ++i; break;
      case ']': out.push_back({Tok::RBracket, "]", start}); ++i; break;
      case '>': out.push_back({Tok::Greater, ">", start}); ++i; break;
      case ':': out.push_back({Tok::Colon, ":", start}); ++i; break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", start});
          i += 2;
        } else {
          throw ParseError(start, {"'->'"}, std::string(1, c));
        }
        break;
      case '<':
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
          out.push_back({Tok::DArrow, "<->", start});
          i += 3;
        } else {
          out.push_back({Tok::Less, "<", start});
          ++i;
        }
        break;
      default:
        throw ParseError(start, {"a formula token"}, std::string(1, c));
    }
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_formula() {
    Formula f = parse_iff();
    expect(Tok::End);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  Token advance() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.offset, std::move(expected),
                     t.kind == Tok::End ? "end of input" : "'" + t.text + "'");
  }

  Token expect(Tok k) {
    if (peek().kind != k) fail({describe(k)});
    return advance();
  }

  // <-> is right-associative and binds weakest
  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (peek().kind == Tok::DArrow) {
      advance();
      return Formula::iff(std::move(lhs), parse_iff());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Arrow) {
      advance();
      return Formula::implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (peek().kind == Tok::Pipe) {
      advance();
      lhs = Formula::or_of(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (peek().kind == Tok::Amp) {
      advance();
      lhs = Formula::and_of(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  AgentId parse_agent() {
    Token t = expect(Tok::Ident);
    return AgentId(t.text);
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Tilde:
        advance();
        return Formula::negate(parse_unary());
      case Tok::KwBox:
        advance();
        return Formula::box(parse_unary());
      case Tok::KwDia:
        advance();
        return Formula::dia(parse_unary());
      case Tok::KwTrue:
        advance();
        return Formula::top();
      case Tok::KwFalse:
        advance();
        return Formula::bottom();
      case Tok::Ident: {
        Token t = advance();
        return Formula::atom(t.text);
      }
      case Tok::LParen: {
        advance();
        Formula f = parse_iff();
        expect(Tok::RParen);
        return f;
      }
      case Tok::LBracket:
        return parse_bracket_modality();
      case Tok::Less:
        return parse_angle_modality();
      default:
        fail({"'~'", "'box'", "'dia'", "'true'", "'false'", "identifier", "'('", "'['", "'<'"});
    }
  }

  // "[" AGENT "]" f | "[E:" AGENT "]" f | "[stit:" AGENT "]" f
  Formula parse_bracket_modality() {
    expect(Tok::LBracket);
    Token head = expect(Tok::Ident);
    if (peek().kind == Tok::Colon) {
      advance();
      AgentId agent = parse_agent();
      expect(Tok::RBracket);
      if (head.text == "E") return Formula::forall_core(std::move(agent), parse_unary());
      if (head.text == "stit") return Formula::stit(std::move(agent), parse_unary());
      throw ParseError(head.offset, {"'E'", "'stit'"}, "'" + head.text + "'");
    }
    expect(Tok::RBracket);
    return Formula::ability(AgentId(head.text), parse_unary());
  }

  // "<E:" AGENT ">" f | "<stit:" AGENT ">" f | "<" AGENT ">" f
  Formula parse_angle_modality() {
    expect(Tok::Less);
    Token head = expect(Tok::Ident);
    if (peek().kind == Tok::Colon) {
      advance();
      AgentId agent = parse_agent();
      expect(Tok::Greater);
      if (head.text == "E") return Formula::forall_core_dual(std::move(agent), parse_unary());
      if (head.text == "stit") return Formula::stit_dual(std::move(agent), parse_unary());
      throw ParseError(head.offset, {"'E'", "'stit'"}, "'" + head.text + "'");
    }
    expect(Tok::Greater);
    return Formula::ability_dual(AgentId(head.text), parse_unary());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string format_message(std::size_t offset, const std::vector<std::string>& expected,
                           const std::string& found) {
  std::ostringstream os;
  os << "syntax error at byte " << offset << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", found " << found;
  return os.str();
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& found)
    : std::runtime_error(format_message(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected)) {}

Formula parse(const std::string& text) {
  return Parser(lex(text)).parse_formula();
}

}  // namespace stitkit
