#include "autg/transducer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace autg {

Transducer::Transducer(int alphabet_size, std::vector<std::string> state_names)
    : d_(alphabet_size), names_(std::move(state_names)) {
  if (d_ < 2) throw TransducerError("alphabet size must be at least 2");
  if (names_.empty() || names_[0] != "id")
    throw TransducerError("state 0 must be the identity state `id`");
  int n = num_states();
  out_.assign(n * d_, -1);
  next_.assign(n * d_, -1);
  out_inv_.assign(n * d_, -1);
  for (int x = 0; x < d_; ++x) {
    out_[x] = x;  // identity row
    next_[x] = 0;
  }
  for (int q = 1; q < n; ++q) gens_.push_back(q);
}

int Transducer::state_index(const std::string& name) const {
  for (int q = 0; q < num_states(); ++q)
    if (names_[q] == name) return q;
  return -1;
}

void Transducer::set_row(int state, int letter, int out_letter, int next_state) {
  if (state <= 0 || state >= num_states())
    throw TransducerError("set_row: bad state index");
  if (letter < 0 || letter >= d_ || out_letter < 0 || out_letter >= d_)
    throw TransducerError("set_row: letter out of range");
  if (next_state < 0 || next_state >= num_states())
    throw TransducerError("set_row: bad next state");
  out_[state * d_ + letter] = out_letter;
  next_[state * d_ + letter] = next_state;
}

void Transducer::finalize() {
  for (int q = 0; q < num_states(); ++q) {
    std::vector<bool> seen(d_, false);
    for (int x = 0; x < d_; ++x) {
      int y = out_[q * d_ + x];
      if (y < 0 || next_[q * d_ + x] < 0)
        throw TransducerError("state `" + names_[q] + "` has no row for letter " +
                              std::to_string(x + 1));
      if (seen[y])
        throw TransducerError("output not a permutation in state `" + names_[q] + "`");
      seen[y] = true;
      out_inv_[q * d_ + y] = x;
    }
  }
  finalized_ = true;
}

std::pair<int, SignedState> Transducer::step(SignedState s, int letter) const {
  if (letter < 0 || letter >= d_) throw TransducerError("letter out of range");
  if (s.sign >= 0) {
    return {output(s.state, letter), SignedState{next(s.state, letter), 1}};
  }
  // Inverse action: send x to the preimage y, continue with the inverse of
  // the state the forward machine reaches from y.
  int y = output_inv(s.state, letter);
  int q = next(s.state, y);
  return {y, SignedState{q, -1}};
}

int Transducer::root_image(SignedState s, int letter) const {
  return s.sign >= 0 ? output(s.state, letter) : output_inv(s.state, letter);
}

SignedState Transducer::section(SignedState s, int letter) const {
  if (s.sign >= 0) return SignedState{next(s.state, letter), 1};
  int y = output_inv(s.state, letter);
  return SignedState{next(s.state, y), -1};
}

std::string Transducer::describe_signed(StateCode c) const {
  SignedState s = SignedState::from_code(c);
  return s.sign >= 0 ? names_[s.state] : names_[s.state] + "^-1";
}

Vertex apply_state(const Transducer& t, SignedState s, const Vertex& v) {
  Vertex image(v.size());
  SignedState cur = s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (cur.state == 0) {  // identity fixes the rest
      std::copy(v.begin() + i, v.end(), image.begin() + i);
      return image;
    }
    auto [y, nxt] = t.step(cur, v[i]);
    image[i] = static_cast<uint8_t>(y);
    cur = nxt;
  }
  return image;
}

ValidationReport validate(const Transducer& t) {
  ValidationReport r;
  r.invertible = true;  // output bijectivity is enforced at finalize()

  int n = t.num_states();
  int d = t.alphabet();

  // Monomial: each non-identity state occurs exactly once among all
  // first-level sections of non-identity states, every other section is
  // trivial, and every root permutation is a power of (1 2 ... d).
  std::vector<int> child_count(n, 0);
  bool monomial = true;
  for (int q = 1; q < n && monomial; ++q) {
    int nontrivial = 0;
    for (int x = 0; x < d; ++x) {
      int c = t.next(q, x);
      if (c != 0) {
        ++child_count[c];
        ++nontrivial;
      }
    }
    if (nontrivial != 1) monomial = false;
    // root permutation must be x -> x + k mod d for some fixed k
    int k = (t.output(q, 0) - 0 + d) % d;
    for (int x = 0; x < d; ++x)
      if (t.output(q, x) != (x + k) % d) monomial = false;
  }
  for (int q = 1; q < n && monomial; ++q)
    if (child_count[q] != 1) monomial = false;
  r.monomial = monomial && n > 1;
  if (n == 1) r.monomial = true;  // trivial machine, vacuously monomial

  r.dual_invertible = dual_invertible(t);
  return r;
}

bool dual_invertible(const Transducer& t) {
  int n = t.num_states();
  for (int x = 0; x < t.alphabet(); ++x) {
    std::vector<bool> seen(n, false);
    for (int q = 0; q < n; ++q) {
      int c = t.next(q, x);
      if (seen[c]) return false;
      seen[c] = true;
    }
  }
  return true;
}

DualTables dual_tables(const Transducer& t) {
  DualTables dt;
  dt.num_states = t.alphabet();
  dt.alphabet = t.num_states();
  dt.output.assign(dt.num_states, std::vector<int>(dt.alphabet));
  dt.next.assign(dt.num_states, std::vector<int>(dt.alphabet));
  for (int x = 0; x < dt.num_states; ++x)
    for (int q = 0; q < dt.alphabet; ++q) {
      dt.output[x][q] = t.next(q, x);
      dt.next[x][q] = t.output(q, x);
    }
  return dt;
}

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void syntax_error(int line, const std::string& msg) {
  throw TransducerError("line " + std::to_string(line) + ": " + msg);
}

bool valid_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

Transducer parse_transducer(const std::string& text) {
  auto lines = tokenize_lines(text);
  if (lines.empty()) throw TransducerError("empty automaton description");

  size_t i = 0;
  if (lines[i].tokens.size() != 2 || lines[i].tokens[0] != "alphabet")
    syntax_error(lines[i].number, "expected `alphabet <d>`");
  int d = 0;
  try {
    d = std::stoi(lines[i].tokens[1]);
  } catch (...) {
    syntax_error(lines[i].number, "bad alphabet size");
  }
  if (d < 2) syntax_error(lines[i].number, "alphabet size must be at least 2");
  ++i;

  // First pass: collect state names in declaration order.
  std::vector<std::string> names{"id"};
  for (size_t j = i; j < lines.size(); ++j) {
    const auto& tk = lines[j].tokens;
    if (tk[0] == "state") {
      if (tk.size() != 2) syntax_error(lines[j].number, "expected `state <name>`");
      if (!valid_name(tk[1]) || tk[1] == "id")
        syntax_error(lines[j].number, "bad state name `" + tk[1] + "`");
      if (std::find(names.begin(), names.end(), tk[1]) != names.end())
        syntax_error(lines[j].number, "duplicate state `" + tk[1] + "`");
      names.push_back(tk[1]);
    }
  }

  Transducer t(d, names);
  int cur_state = -1;
  for (; i < lines.size(); ++i) {
    const auto& tk = lines[i].tokens;
    if (tk[0] == "state") {
      cur_state = t.state_index(tk[1]);
      continue;
    }
    if (tk[0] == "on") {
      // on <x> -> <y> goto <state|id>
      if (tk.size() != 6 || tk[2] != "->" || tk[4] != "goto")
        syntax_error(lines[i].number, "expected `on <x> -> <y> goto <state>`");
      if (cur_state < 0) syntax_error(lines[i].number, "`on` before any `state`");
      int x, y;
      try {
        x = std::stoi(tk[1]);
        y = std::stoi(tk[3]);
      } catch (...) {
        syntax_error(lines[i].number, "bad letter");
      }
      if (x < 1 || x > d || y < 1 || y > d)
        syntax_error(lines[i].number, "letter out of range 1.." + std::to_string(d));
      int nxt = t.state_index(tk[5]);
      if (nxt < 0)
        syntax_error(lines[i].number, "undefined state reference `" + tk[5] + "`");
      try {
        t.set_row(cur_state, x - 1, y - 1, nxt);
      } catch (const TransducerError& e) {
        syntax_error(lines[i].number, e.what());
      }
      continue;
    }
    syntax_error(lines[i].number, "unrecognized directive `" + tk[0] + "`");
  }
  t.finalize();
  return t;
}

Transducer load_transducer(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TransducerError("cannot open `" + path + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_transducer(buf.str());
}

std::string format_transducer(const Transducer& t) {
  std::ostringstream out;
  out << "alphabet " << t.alphabet() << "\n";
  for (int q = 1; q < t.num_states(); ++q) {
    out << "state " << t.state_name(q) << "\n";
    for (int x = 0; x < t.alphabet(); ++x)
      out << "on " << x + 1 << " -> " << t.output(q, x) + 1 << " goto "
          << t.state_name(t.next(q, x)) << "\n";
  }
  return out.str();
}

namespace {

Transducer make_gamma() {
  Transducer t(2, {"id", "a", "b"});
  int a = 1, b = 2;
  t.set_row(a, 0, 1, b);  // a = <b,1> swap
  t.set_row(a, 1, 0, 0);
  t.set_row(b, 0, 0, a);  // b = <a,1>
  t.set_row(b, 1, 1, 0);
  t.finalize();
  return t;
}

Transducer make_bsv() {
  // l = <l,1> swap, m = <m^-1,1> swap, with the inverses L, M stored as
  // explicit states so every transition lands on a machine state.
  Transducer t(2, {"id", "l", "m", "L", "M"});
  int l = 1, m = 2, L = 3, M = 4;
  t.set_row(l, 0, 1, l);
  t.set_row(l, 1, 0, 0);
  t.set_row(m, 0, 1, M);
  t.set_row(m, 1, 0, 0);
  t.set_row(L, 0, 1, 0);  // l^-1 = <1,l^-1> swap
  t.set_row(L, 1, 0, L);
  t.set_row(M, 0, 1, 0);  // m^-1 = <1,m> swap
  t.set_row(M, 1, 0, m);
  t.finalize();
  t.set_generators({l, m});
  return t;
}

Transducer make_grigorchuk() {
  Transducer t(2, {"id", "a", "b", "c", "d"});
  int a = 1, b = 2, c = 3, d = 4;
  t.set_row(a, 0, 1, 0);  // a = <1,1> swap
  t.set_row(a, 1, 0, 0);
  t.set_row(b, 0, 0, a);  // b = <a,c>
  t.set_row(b, 1, 1, c);
  t.set_row(c, 0, 0, a);  // c = <a,d>
  t.set_row(c, 1, 1, d);
  t.set_row(d, 0, 0, 0);  // d = <1,b>
  t.set_row(d, 1, 1, b);
  t.finalize();
  return t;
}

Transducer make_aleshin() {
  // a = <b,c> swap, b = <c,b> swap, c = <a,a>
  Transducer t(2, {"id", "a", "b", "c"});
  int a = 1, b = 2, c = 3;
  t.set_row(a, 0, 1, b);
  t.set_row(a, 1, 0, c);
  t.set_row(b, 0, 1, c);
  t.set_row(b, 1, 0, b);
  t.set_row(c, 0, 0, a);
  t.set_row(c, 1, 1, a);
  t.finalize();
  return t;
}

Transducer make_mandelbrot(const std::string& kneading) {
  if (kneading.empty())
    throw TransducerError("mandelbrot builtin needs a kneading word over {1,2}");
  int n = static_cast<int>(kneading.size()) + 1;
  if (n > 26) throw TransducerError("kneading word too long (at most 25 letters)");
  std::vector<std::string> names{"id"};
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
  Transducer t(2, names);
  // First state cycles back to the last one and is the only active state.
  t.set_row(1, 0, 1, n);
  t.set_row(1, 1, 0, 0);
  for (int i = 2; i <= n; ++i) {
    char k = kneading[i - 2];
    if (k == '1') {  // <prev, 1>
      t.set_row(i, 0, 0, i - 1);
      t.set_row(i, 1, 1, 0);
    } else if (k == '2') {  // <1, prev>
      t.set_row(i, 0, 0, 0);
      t.set_row(i, 1, 1, i - 1);
    } else {
      throw TransducerError("kneading word must use letters 1 and 2");
    }
  }
  t.finalize();
  return t;
}

Transducer make_trivial() {
  Transducer t(2, {"id"});
  t.finalize();
  return t;
}

}  // namespace

Transducer builtin(const std::string& name, const std::string& parameter) {
  if (name == "gamma") return make_gamma();
  if (name == "bsv") return make_bsv();
  if (name == "grigorchuk") return make_grigorchuk();
  if (name == "aleshin") return make_aleshin();
  if (name == "mandelbrot") return make_mandelbrot(parameter);
  if (name == "trivial") return make_trivial();
  throw TransducerError("unknown builtin `" + name + "`");
}

Vertex parse_vertex(const std::string& text, int alphabet) {
  Vertex v;
  if (text.empty()) return v;
  if (alphabet <= 9 && text.find(',') == std::string::npos) {
    for (char c : text) {
      if (c < '1' || c > '0' + alphabet)
        throw TransducerError("vertex letter out of range: " + std::string(1, c));
      v.push_back(static_cast<uint8_t>(c - '1'));
    }
    return v;
  }
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    int x = std::stoi(part);
    if (x < 1 || x > alphabet) throw TransducerError("vertex letter out of range");
    v.push_back(static_cast<uint8_t>(x - 1));
  }
  return v;
}

std::string format_vertex(const Vertex& v, int alphabet) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (alphabet <= 9) {
      s += static_cast<char>('1' + v[i]);
    } else {
      if (i) s += ',';
      s += std::to_string(v[i] + 1);
    }
  }
  return s;
}

}  // namespace autg
