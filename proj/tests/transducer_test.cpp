#include "doctest.h"

#include <set>

#include "autg/transducer.hpp"

using namespace autg;

namespace {

const char* kGammaFile = R"(# the 3-state machine with a = <b,1>(1 2), b = <a,1>
alphabet 2
state a
on 1 -> 2 goto b
on 2 -> 1 goto id
state b
on 1 -> 1 goto a
on 2 -> 2 goto id
)";

Vertex vx(const std::string& s) { return parse_vertex(s, 2); }

}  // namespace

TEST_CASE("parse_transducer accepts the basilica machine") {
  Transducer t = parse_transducer(kGammaFile);
  CHECK(t.alphabet() == 2);
  CHECK(t.num_states() == 3);
  CHECK(t.state_index("a") == 1);
  CHECK(t.state_index("b") == 2);
  Transducer g = builtin("gamma");
  CHECK(format_transducer(t) == format_transducer(g));
}

TEST_CASE("parse_transducer rejects bad inputs") {
  CHECK_THROWS_AS(parse_transducer("alphabet 2\nstate a\non 1 -> 1 goto id\non 2 -> 1 goto id\n"),
                  TransducerError);  // output not a permutation
  CHECK_THROWS_AS(parse_transducer("alphabet 2\nstate a\non 1 -> 2 goto zz\non 2 -> 1 goto id\n"),
                  TransducerError);  // undefined state
  CHECK_THROWS_AS(parse_transducer("alphabet 2\nstate a\non 1 -> 2 goto id\n"),
                  TransducerError);  // missing row
  CHECK_THROWS_AS(parse_transducer("alphabet 1\n"), TransducerError);
  try {
    parse_transducer("alphabet 2\nstate a\nbogus line here\n");
    CHECK(false);
  } catch (const TransducerError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("trivial machine: only id") {
  Transducer t = parse_transducer("alphabet 2\n");
  CHECK(t.num_states() == 1);
  ValidationReport r = validate(t);
  CHECK(r.invertible);
  CHECK(r.monomial);
  CHECK(r.dual_invertible);
  CHECK(apply_state(t, SignedState{0, 1}, vx("1212")) == vx("1212"));
}

TEST_CASE("basilica action on vertices") {
  Transducer t = builtin("gamma");
  SignedState a{t.state_index("a"), 1};
  SignedState b{t.state_index("b"), 1};
  CHECK(apply_state(t, a, vx("1")) == vx("2"));
  CHECK(apply_state(t, a, vx("21")) == vx("11"));
  CHECK(apply_state(t, b, vx("2")) == vx("2"));
  CHECK(apply_state(t, b, vx("11")) == vx("12"));  // (1w)^b = 1 w^a
  CHECK(apply_state(t, SignedState{0, 1}, vx("121")) == vx("121"));
  CHECK(apply_state(t, a, Vertex{}).empty());
}

TEST_CASE("inverse action inverts") {
  for (const char* name : {"gamma", "bsv", "grigorchuk", "aleshin"}) {
    Transducer t = builtin(name);
    for (int q = 1; q < t.num_states(); ++q) {
      Vertex v = vx("21122121");
      Vertex img = apply_state(t, SignedState{q, 1}, v);
      CHECK(apply_state(t, SignedState{q, -1}, img) == v);
      Vertex img2 = apply_state(t, SignedState{q, -1}, v);
      CHECK(apply_state(t, SignedState{q, 1}, img2) == v);
    }
  }
}

TEST_CASE("each state acts as a bijection on every level") {
  for (const char* name : {"gamma", "bsv", "grigorchuk", "aleshin"}) {
    Transducer t = builtin(name);
    for (int q = 1; q < t.num_states(); ++q) {
      for (int n = 1; n <= 8; ++n) {
        std::set<Vertex> images;
        Vertex v(n, 0);
        while (true) {
          images.insert(apply_state(t, SignedState{q, 1}, v));
          int i = n - 1;
          while (i >= 0 && v[i] == 1) v[i--] = 0;
          if (i < 0) break;
          ++v[i];
        }
        CHECK(images.size() == (size_t{1} << n));
      }
    }
  }
}

TEST_CASE("prefix compatibility") {
  Transducer t = builtin("grigorchuk");
  Vertex v = vx("2122121121");
  for (int q = 1; q < t.num_states(); ++q) {
    Vertex img = apply_state(t, SignedState{q, 1}, v);
    for (size_t p = 0; p < v.size(); ++p) {
      Vertex prefix(v.begin(), v.begin() + p);
      Vertex pimg = apply_state(t, SignedState{q, 1}, prefix);
      CHECK(Vertex(img.begin(), img.begin() + p) == pimg);
    }
  }
}

TEST_CASE("validation flags") {
  ValidationReport g = validate(builtin("gamma"));
  CHECK(g.invertible);
  CHECK(g.monomial);
  CHECK_FALSE(g.dual_invertible);

  ValidationReport gr = validate(builtin("grigorchuk"));
  CHECK(gr.invertible);
  CHECK_FALSE(gr.monomial);

  ValidationReport bs = validate(builtin("bsv"));
  CHECK(bs.invertible);
  CHECK(bs.monomial);

  // The Aleshin machine is bireversible.
  ValidationReport al = validate(builtin("aleshin"));
  CHECK(al.invertible);
  CHECK_FALSE(al.monomial);
  CHECK(al.dual_invertible);
}

TEST_CASE("dual of dual is the original") {
  for (const char* name : {"gamma", "bsv", "grigorchuk", "aleshin"}) {
    Transducer t = builtin(name);
    DualTables d1 = dual_tables(t);
    // Re-dualize by hand and compare against the original tables.
    for (int q = 0; q < t.num_states(); ++q)
      for (int x = 0; x < t.alphabet(); ++x) {
        CHECK(d1.output[x][q] == t.next(q, x));
        CHECK(d1.next[x][q] == t.output(q, x));
      }
  }
}

TEST_CASE("bsv builtin carries explicit inverse states") {
  Transducer t = builtin("bsv");
  CHECK(t.num_states() == 5);
  CHECK(t.generators() == std::vector<int>{1, 2});
  // State M must act exactly like the signed inverse of m.
  int m = t.state_index("m"), M = t.state_index("M");
  Vertex v = vx("1221211");
  CHECK(apply_state(t, SignedState{M, 1}, v) == apply_state(t, SignedState{m, -1}, v));
  CHECK(apply_state(t, SignedState{M, -1}, v) == apply_state(t, SignedState{m, 1}, v));
}

TEST_CASE("mandelbrot family") {
  Transducer g = builtin("mandelbrot", "1");
  CHECK(format_transducer(g) == format_transducer(builtin("gamma")));
  Transducer t = builtin("mandelbrot", "121");
  CHECK(t.num_states() == 5);
  CHECK(validate(t).monomial);
  CHECK_THROWS_AS(builtin("mandelbrot", "13"), TransducerError);
  CHECK_THROWS_AS(builtin("mandelbrot", ""), TransducerError);
  CHECK_THROWS_AS(builtin("nope"), TransducerError);
}

TEST_CASE("vertex round trip") {
  CHECK(format_vertex(parse_vertex("2121", 2), 2) == "2121");
  CHECK(parse_vertex("", 2).empty());
  CHECK(format_vertex(parse_vertex("1,12,3", 14), 14) == "1,12,3");
  CHECK_THROWS_AS(parse_vertex("3", 2), TransducerError);
}
