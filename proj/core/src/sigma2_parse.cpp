#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "inflearn/sigma2.hpp"

namespace inflearn {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Number, LBrace, RBrace, LParen, RParen, Comma, Semi, Colon, Not, And, Or, Arrow, Eq, Neq, Le,
                 Lt, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t q = 0; q < k; ++q) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, c = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    Tok k;
    std::size_t len = 1;
    if (two == "->") {
      k = Tok::Arrow;
      len = 2;
    } else if (two == "!=") {
      k = Tok::Neq;
      len = 2;
    } else if (two == "<=") {
      k = Tok::Le;
      len = 2;
    } else {
      switch (ch) {
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case ';': k = Tok::Semi; break;
        case ':': k = Tok::Colon; break;
        case '!': k = Tok::Not; break;
        case '&': k = Tok::And; break;
        case '|': k = Tok::Or; break;
        case '=': k = Tok::Eq; break;
        case '<': k = Tok::Lt; break;
        default: throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
      }
    }
    out.push_back({k, std::string(src.substr(i, len)), l, c});
    advance(len);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

Formula atom(std::string pred, std::vector<std::string> vars) {
  Formula f;
  f.kind = Formula::Kind::Atom;
  f.pred = std::move(pred);
  f.vars = std::move(vars);
  return f;
}

Formula equality(std::string a, std::string b) {
  Formula f;
  f.kind = Formula::Kind::Eq;
  f.vars = {std::move(a), std::move(b)};
  return f;
}

Formula unary(Formula::Kind k, Formula a) {
  Formula f;
  f.kind = k;
  f.kids.push_back(std::move(a));
  return f;
}

Formula binary(Formula::Kind k, Formula a, Formula b) {
  Formula f;
  f.kind = k;
  f.kids.push_back(std::move(a));
  f.kids.push_back(std::move(b));
  return f;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  bool at_end() const { return peek().kind == Tok::End; }
  const Token& peek() const { return t_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().col); }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what + (peek().kind == Tok::End ? " at end of input" : ", found '" + peek().text + "'"));
    return t_[pos_++];
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  bool is_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  Sigma2Sentence sentence() {
    if (is_word("forall"))
      fail("sentence must start with 'exists'; forall-exists (Pi2) shapes are not supported");
    if (!is_word("exists")) fail("sentence must start with 'exists'");
    ++pos_;
    Sigma2Sentence s;
    std::set<std::string> declared;
    while (peek().kind == Tok::Ident) {
      if (is_word("forall") || is_word("exists")) fail("quantifier blocks must be 'exists ... { forall ... : ... }'");
      if (!declared.insert(peek().text).second) fail("variable '" + peek().text + "' declared twice");
      s.existentials.push_back(peek().text);
      ++pos_;
    }
    expect(Tok::LBrace, "'{'");
    if (peek().kind == Tok::RBrace) fail("sentence needs at least one conjunct");
    while (true) {
      s.conjuncts.push_back(conjunct(declared));
      if (accept(Tok::Semi)) {
        if (peek().kind == Tok::RBrace) break;
        continue;
      }
      break;
    }
    expect(Tok::RBrace, "'}' or ';'");
    return s;
  }

  FamilyEntry family_entry() {
    if (!is_word("sentence")) fail("expected 'sentence'");
    ++pos_;
    FamilyEntry e;
    e.name = expect(Tok::Ident, "sentence name").text;
    expect(Tok::Eq, "'='");
    e.nu_index = std::stoull(expect(Tok::Number, "enumeration index").text);
    expect(Tok::Colon, "':'");
    e.sentence = sentence();
    return e;
  }

 private:
  Conjunct conjunct(const std::set<std::string>& exist) {
    Conjunct c;
    scope_ = exist;
    if (is_word("exists")) fail("nested quantifier: only exists-forall prenex sentences are supported");
    if (is_word("forall")) {
      ++pos_;
      while (peek().kind == Tok::Ident) {
        if (is_word("exists") || is_word("forall"))
          fail("nested quantifier: only exists-forall prenex sentences are supported");
        if (!scope_.insert(peek().text).second) fail("variable '" + peek().text + "' declared twice");
        c.universals.push_back(peek().text);
        ++pos_;
      }
      if (c.universals.empty()) fail("'forall' needs at least one variable");
    }
    expect(Tok::Colon, "':'");
    c.matrix = implication();
    return c;
  }

  Formula implication() {
    Formula a = disjunction();
    if (accept(Tok::Arrow)) return binary(Formula::Kind::Implies, std::move(a), implication());
    return a;
  }

  Formula disjunction() {
    Formula a = conjunction();
    while (accept(Tok::Or)) a = binary(Formula::Kind::Or, std::move(a), conjunction());
    return a;
  }

  Formula conjunction() {
    Formula a = negation();
    while (accept(Tok::And)) a = binary(Formula::Kind::And, std::move(a), negation());
    return a;
  }

  Formula negation() {
    if (accept(Tok::Not)) return unary(Formula::Kind::Not, negation());
    return primary();
  }

  std::string variable() {
    const Token& v = peek();
    if (v.kind != Tok::Ident) fail("expected a variable");
    if (!scope_.count(v.text)) fail("undeclared variable '" + v.text + "'");
    ++pos_;
    return v.text;
  }

  Formula primary() {
    if (accept(Tok::LParen)) {
      Formula f = implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (peek().kind != Tok::Ident) fail("expected an atom, '(' or '!'");
    if (is_word("exists") || is_word("forall"))
      fail("nested quantifier: only exists-forall prenex sentences are supported");
    if (is_word("true") || is_word("false")) {
      Formula f;
      f.kind = peek().text == "true" ? Formula::Kind::True : Formula::Kind::False;
      ++pos_;
      return f;
    }
    if (t_[pos_ + 1].kind == Tok::LParen) {
      std::string name = t_[pos_].text;
      pos_ += 2;
      std::vector<std::string> args{variable()};
      while (accept(Tok::Comma)) args.push_back(variable());
      expect(Tok::RParen, "')'");
      return atom(std::move(name), std::move(args));
    }
    std::string lhs = variable();
    switch (peek().kind) {
      case Tok::Eq: ++pos_; return equality(lhs, variable());
      case Tok::Neq: ++pos_; return unary(Formula::Kind::Not, equality(lhs, variable()));
      case Tok::Le: ++pos_; return atom("Le", {lhs, variable()});
      case Tok::Lt: {
        ++pos_;
        std::string rhs = variable();
        return binary(Formula::Kind::And, atom("Le", {lhs, rhs}), unary(Formula::Kind::Not, equality(lhs, rhs)));
      }
      default: fail("expected '=', '!=', '<=' or '<' after variable '" + lhs + "'");
    }
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  std::set<std::string> scope_;
};

int precedence(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not: return 4;
    default: return 5;
  }
}

void print(const Formula& f, std::ostringstream& out);

void print_child(const Formula& f, int min_prec, std::ostringstream& out) {
  if (precedence(f) < min_prec) {
    out << '(';
    print(f, out);
    out << ')';
  } else {
    print(f, out);
  }
}

void print(const Formula& f, std::ostringstream& out) {
  switch (f.kind) {
    case Formula::Kind::True: out << "true"; break;
    case Formula::Kind::False: out << "false"; break;
    case Formula::Kind::Atom:
      out << f.pred << '(';
      for (std::size_t i = 0; i < f.vars.size(); ++i) out << (i ? "," : "") << f.vars[i];
      out << ')';
      break;
    case Formula::Kind::Eq: out << f.vars[0] << " = " << f.vars[1]; break;
    case Formula::Kind::Not:
      out << '!';
      print_child(f.kids[0], f.kids[0].kind == Formula::Kind::Eq ? 6 : 4, out);
      break;
    case Formula::Kind::And:
      print_child(f.kids[0], 3, out);
      out << " & ";
      print_child(f.kids[1], 4, out);
      break;
    case Formula::Kind::Or:
      print_child(f.kids[0], 2, out);
      out << " | ";
      print_child(f.kids[1], 3, out);
      break;
    case Formula::Kind::Implies:
      print_child(f.kids[0], 2, out);
      out << " -> ";
      print_child(f.kids[1], 1, out);
      break;
  }
}

std::string print_conjunct(const Conjunct& c) {
  std::ostringstream out;
  if (!c.universals.empty()) {
    out << "forall";
    for (const auto& u : c.universals) out << ' ' << u;
    out << ' ';
  }
  out << ": ";
  print(c.matrix, out);
  return out.str();
}

}  // namespace

bool operator==(const Sigma2Sentence& a, const Sigma2Sentence& b) {
  if (a.existentials != b.existentials || a.conjuncts.size() != b.conjuncts.size()) return false;
  std::vector<std::string> pa, pb;
  for (const auto& c : a.conjuncts) pa.push_back(print_conjunct(c));
  for (const auto& c : b.conjuncts) pb.push_back(print_conjunct(c));
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  return pa == pb;
}

Sigma2Sentence parse_sentence(std::string_view text) {
  Parser p(lex(text));
  Sigma2Sentence s = p.sentence();
  if (!p.at_end()) p.fail("unexpected input after the sentence");
  return s;
}

std::string print_formula(const Formula& f) {
  std::ostringstream out;
  print(f, out);
  return out.str();
}

std::string print_sentence(const Sigma2Sentence& s) {
  std::ostringstream out;
  out << "exists";
  for (const auto& x : s.existentials) out << ' ' << x;
  std::vector<std::string> parts;
  for (const auto& c : s.conjuncts) parts.push_back(print_conjunct(c));
  std::sort(parts.begin(), parts.end());
  out << " {";
  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? " ;\n  " : "\n  ") << parts[i];
  out << "\n}";
  return out.str();
}

std::vector<FamilyEntry> parse_sentence_family(std::string_view text) {
  Parser p(lex(text));
  std::vector<FamilyEntry> out;
  while (!p.at_end()) out.push_back(p.family_entry());
  return out;
}

std::string print_sentence_family(const std::vector<FamilyEntry>& fam) {
  std::ostringstream out;
  for (const auto& e : fam) out << "sentence " << e.name << " = " << e.nu_index << " : " << print_sentence(e.sentence) << "\n\n";
  return out.str();
}

}  // namespace inflearn
