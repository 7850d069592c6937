#include "autg/expr.hpp"

#include <cctype>

namespace autg {

SymWord SymWord::pow(long long n) const {
  SymWord base = n < 0 ? inverse() : *this;
  long long k = n < 0 ? -n : n;
  if (k > 1000000) throw EvalError("exponent too large");
  SymWord r;
  for (long long i = 0; i < k; ++i) r.append(base);
  return r;
}

SymWord SymWord::conj(const SymWord& by) const {
  SymWord r = by.inverse();
  r.append(*this);
  r.append(by);
  return r;
}

// ---------------------------------------------------------------------------

struct WordExpression::Node {
  enum Kind {
    kGen,      // named generator (or bound integer symbol in exponents)
    kProd,     // word product, children in order
    kComm,     // [lhs, rhs] = lhs^-1 rhs^-1 lhs rhs
    kPow,      // base ^ exponent
    kExpInt,   // integer literal exponent
    kExpSum,   // signed sum of exponent terms: a^(x+y) = a^x a^y
    kExpProd,  // product of exponent terms: a^(xy) = (a^x)^y
  };
  Kind kind;
  std::string name;
  long long value = 0;
  std::vector<NodePtr> kids;
  std::vector<int> signs;  // for kExpSum, parallel to kids
};

namespace {

using Node = WordExpression::Node;
using NodePtr = WordExpression::NodePtr;

std::shared_ptr<Node> make(Node::Kind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return n;
}

struct Lexer {
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  char get() {
    skip();
    return s[i++];
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string name() {
    skip();
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    return s.substr(start, i - start);
  }
  long long integer() {
    skip();
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) throw ParseError("expected an integer", start);
    try {
      return std::stoll(s.substr(start, i - start));
    } catch (...) {
      throw ParseError("integer out of range", start);
    }
  }
};

struct Parser {
  Lexer lex;

  explicit Parser(const std::string& text) : lex{text} {}

  NodePtr parse_expr() {
    auto prod = make(Node::kProd);
    while (true) {
      char c = lex.peek();
      if (c == '\0' || c == ')' || c == ']' || c == ',' || c == '+' || c == '-')
        break;
      prod->kids.push_back(parse_factor());
    }
    if (prod->kids.empty()) throw ParseError("expected a word", lex.i);
    if (prod->kids.size() == 1) return prod->kids[0];
    return prod;
  }

  NodePtr parse_factor() {
    NodePtr atom = parse_atom();
    if (lex.accept('^')) {
      auto pw = make(Node::kPow);
      pw->kids.push_back(atom);
      pw->kids.push_back(parse_exponent());
      return pw;
    }
    return atom;
  }

  NodePtr parse_atom() {
    char c = lex.peek();
    if (c == '(') {
      lex.get();
      NodePtr e = parse_expr();
      if (!lex.accept(')')) throw ParseError("expected `)`", lex.i);
      return e;
    }
    if (c == '[') {
      lex.get();
      auto comm = make(Node::kComm);
      comm->kids.push_back(parse_expr());
      if (!lex.accept(',')) throw ParseError("expected `,` in commutator", lex.i);
      comm->kids.push_back(parse_expr());
      if (!lex.accept(']')) throw ParseError("expected `]`", lex.i);
      return comm;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      auto gen = make(Node::kGen);
      gen->name = lex.name();
      return gen;
    }
    throw ParseError("unexpected character", lex.i);
  }

  NodePtr parse_exponent() {
    char c = lex.peek();
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      auto e = make(Node::kExpInt);
      e->value = lex.integer();
      return e;
    }
    if (c == '(') {
      lex.get();
      NodePtr e = parse_expsum();
      if (!lex.accept(')')) throw ParseError("expected `)` in exponent", lex.i);
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '[')
      return parse_expfactor();
    throw ParseError("bad exponent", lex.i);
  }

  NodePtr parse_expsum() {
    auto sum = make(Node::kExpSum);
    int sign = 1;
    if (lex.accept('-'))
      sign = -1;
    else
      lex.accept('+');
    sum->kids.push_back(parse_expterm());
    sum->signs.push_back(sign);
    while (true) {
      char c = lex.peek();
      if (c != '+' && c != '-') break;
      lex.get();
      sum->kids.push_back(parse_expterm());
      sum->signs.push_back(c == '+' ? 1 : -1);
    }
    if (sum->kids.size() == 1 && sum->signs[0] == 1) return sum->kids[0];
    return sum;
  }

  // Product of exponent primaries, applied left to right. Integers scale,
  // group words conjugate: a^((1+ta)2) = (a a^(ta))^2.
  NodePtr parse_expterm() {
    auto prod = make(Node::kExpProd);
    while (true) {
      char c = lex.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        auto e = make(Node::kExpInt);
        e->value = lex.integer();
        prod->kids.push_back(e);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '[' || c == '(') {
        prod->kids.push_back(parse_expfactor());
      } else {
        break;
      }
    }
    if (prod->kids.empty()) throw ParseError("expected exponent term", lex.i);
    if (prod->kids.size() == 1) return prod->kids[0];
    return prod;
  }

  // A group-word factor inside an exponent; "t^2" here is the element t^2.
  NodePtr parse_expfactor() {
    NodePtr atom;
    char c = lex.peek();
    if (c == '(') {
      lex.get();
      atom = parse_expsum();
      if (!lex.accept(')')) throw ParseError("expected `)`", lex.i);
    } else if (c == '[') {
      atom = parse_atom();
    } else {
      auto e = make(Node::kGen);
      e->name = lex.name();
      atom = e;
    }
    if (lex.accept('^')) {
      auto pw = make(Node::kPow);
      pw->kids.push_back(atom);
      pw->kids.push_back(parse_exponent());
      return pw;
    }
    return atom;
  }
};

struct Evaluator {
  const WordExpression::Resolver& resolve;
  const WordExpression::IntEnv& env;

  SymWord gen_word(const std::string& name) const {
    int sym = resolve(name);
    if (sym >= 0) {
      SymWord w;
      w.push(sym, 1);
      return w;
    }
    // Fall back to single letters; uppercase is the inverse of lowercase.
    SymWord w;
    for (char c : name) {
      if (std::isupper(static_cast<unsigned char>(c))) {
        int s = resolve(std::string(1, static_cast<char>(
                               std::tolower(static_cast<unsigned char>(c)))));
        if (s < 0) throw EvalError("unknown generator `" + std::string(1, c) + "`");
        w.push(s, -1);
      } else {
        int s = resolve(std::string(1, c));
        if (s < 0) throw EvalError("unknown generator `" + std::string(1, c) + "`");
        w.push(s, 1);
      }
    }
    return w;
  }

  SymWord word(const NodePtr& n) const {
    switch (n->kind) {
      case Node::kGen:
        return gen_word(n->name);
      case Node::kProd: {
        SymWord w;
        for (const auto& k : n->kids) w.append(word(k));
        return w;
      }
      case Node::kComm: {
        SymWord x = word(n->kids[0]), y = word(n->kids[1]);
        SymWord w = x.inverse();
        w.append(y.inverse());
        w.append(x);
        w.append(y);
        return w;
      }
      case Node::kPow:
        return apply_exponent(word(n->kids[0]), n->kids[1]);
      default:
        throw EvalError("exponent node used as a word");
    }
  }

  // Integer value of an exponent node when it is purely integral
  // (literals, bound symbols, and their sums/products).
  bool integral(const NodePtr& n, long long& out) const {
    switch (n->kind) {
      case Node::kExpInt:
        out = n->value;
        return true;
      case Node::kGen: {
        auto it = env.find(n->name);
        if (it == env.end()) return false;
        out = it->second;
        return true;
      }
      case Node::kExpSum: {
        long long acc = 0, v;
        for (size_t i = 0; i < n->kids.size(); ++i) {
          if (!integral(n->kids[i], v)) return false;
          acc += n->signs[i] * v;
        }
        out = acc;
        return true;
      }
      case Node::kExpProd: {
        long long acc = 1, v;
        for (const auto& k : n->kids) {
          if (!integral(k, v)) return false;
          acc *= v;
        }
        out = acc;
        return true;
      }
      default:
        return false;
    }
  }

  SymWord apply_exponent(const SymWord& base, const NodePtr& e) const {
    long long v;
    if (integral(e, v)) return base.pow(v);
    switch (e->kind) {
      case Node::kGen:
      case Node::kProd:
      case Node::kComm:
      case Node::kPow:
        return base.conj(word(e));
      case Node::kExpSum: {
        SymWord r;
        for (size_t i = 0; i < e->kids.size(); ++i) {
          SymWord t = apply_exponent(base, e->kids[i]);
          if (e->signs[i] < 0) t = t.inverse();
          r.append(t);
        }
        return r;
      }
      case Node::kExpProd: {
        SymWord r = base;
        for (const auto& k : e->kids) r = apply_exponent(r, k);
        return r;
      }
      case Node::kExpInt:
        return base.pow(e->value);
    }
    throw EvalError("bad exponent node");
  }
};

}  // namespace

WordExpression WordExpression::parse(const std::string& text) {
  Parser p(text);
  WordExpression e;
  e.root_ = p.parse_expr();
  if (!p.lex.eof()) throw ParseError("trailing input", p.lex.i);
  e.source_ = text;
  return e;
}

SymWord WordExpression::evaluate(const Resolver& resolve, const IntEnv& env) const {
  Evaluator ev{resolve, env};
  return ev.word(root_);
}

}  // namespace autg
