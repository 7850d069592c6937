#pragma once

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace autg {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos(pos) {}
  size_t pos;
};

class EvalError : public std::runtime_error {
public:
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Abstract word over named generators: signed (name-id, sign) letters,
// freely reduced. The expression evaluator is generic over the symbol set;
// modules map symbol ids onto their own generator tables.
struct SymWord {
  std::vector<std::pair<int, int>> letters;  // (symbol id, +-1)

  void push(int sym, int sign) {
    if (!letters.empty() && letters.back().first == sym &&
        letters.back().second == -sign)
      letters.pop_back();
    else
      letters.emplace_back(sym, sign);
  }
  void append(const SymWord& o) {
    for (auto [s, g] : o.letters) push(s, g);
  }
  SymWord inverse() const {
    SymWord w;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      w.letters.emplace_back(it->first, -it->second);
    return w;
  }
  SymWord pow(long long n) const;
  SymWord conj(const SymWord& by) const;
};

// Grammar:
//   expr     := factor+
//   factor   := atom ('^' exponent)?
//   atom     := name | '(' expr ')' | '[' expr ',' expr ']'
//   exponent := signedint | name | atom | '(' expsum ')'
//   expsum   := term (('+'|'-') term)*
//   term     := (integer | factor)+          products, applied left to right
// Uppercase single-letter names denote inverses of lowercase generators.
// [x,y] evaluates as x^-1 y^-1 x y; a^(x+y) = a^x a^y; a^(xy) = (a^x)^y.
class WordExpression {
public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  // Resolver: maps a generator name to a symbol id, or -1 if unknown.
  using Resolver = std::function<int(const std::string&)>;
  // Integer bindings for symbolic exponents (e.g. p in relator families).
  using IntEnv = std::map<std::string, long long>;

  static WordExpression parse(const std::string& text);

  SymWord evaluate(const Resolver& resolve, const IntEnv& env = {}) const;

  const std::string& source() const { return source_; }

private:
  NodePtr root_;
  std::string source_;
};

}  // namespace autg
