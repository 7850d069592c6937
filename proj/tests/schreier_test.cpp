#include "doctest.h"

#include "autg/schreier.hpp"

using namespace autg;

TEST_CASE("level-1 basilica graph") {
  Transducer t = builtin("gamma");
  SchreierGraph g = schreier_graph(t, 1);
  REQUIRE(g.num_vertices() == 2);
  REQUIRE(g.labels == std::vector<std::string>{"a", "b"});
  CHECK(g.succ[0] == std::vector<uint32_t>{1, 0});  // a swaps
  CHECK(g.succ[1] == std::vector<uint32_t>{0, 1});  // b loops
  CHECK(g.root == 0);
  CHECK(g.vertex_name(0) == "1");
  CHECK(g.vertex_name(1) == "2");
}

TEST_CASE("level-0 graph is a single vertex with loops") {
  Transducer t = builtin("gamma");
  SchreierGraph g = schreier_graph(t, 0);
  CHECK(g.num_vertices() == 1);
  CHECK(g.succ[0][0] == 0);
  CHECK(g.succ[1][0] == 0);
}

TEST_CASE("level-3 basilica graph has 8 vertices, all of degree 4") {
  Transducer t = builtin("gamma");
  SchreierGraph g = schreier_graph(t, 3);
  CHECK(g.num_vertices() == 8);
  CHECK(regular_degree(g, 4));
  CHECK_FALSE(regular_degree(g, 6));
}

TEST_CASE("parallel and serial construction agree") {
  Transducer t = builtin("grigorchuk");
  SchreierGraph gp = schreier_graph(t, 7, 0);
  SchreierGraph gs = schreier_graph_serial(t, 7);
  CHECK(gp.succ == gs.succ);
  CHECK(gp.root == gs.root);
}

TEST_CASE("recursive construction, small cases") {
  SchreierGraph g0 = basilica_recursive_graph(0);
  CHECK(g0.num_vertices() == 1);

  SchreierGraph g1 = basilica_recursive_graph(1);
  REQUIRE(g1.num_vertices() == 2);
  // a-digon with b-loops on both vertices
  CHECK(g1.succ[0] == std::vector<uint32_t>{1, 0});
  CHECK(g1.succ[1] == std::vector<uint32_t>{0, 1});
}

TEST_CASE("recursive matches direct up to level 8") {
  Transducer t = builtin("gamma");
  for (int n = 0; n <= 8; ++n) {
    SchreierGraph direct = schreier_graph(t, n);
    SchreierGraph recursive = basilica_recursive_graph(n);
    CHECK(recursive.num_vertices() == direct.num_vertices());
    CHECK(regular_degree(recursive, 4));
    CHECK(labeled_isomorphic(recursive, direct));
  }
}

TEST_CASE("isomorphism is reflexive and label-sensitive") {
  Transducer t = builtin("gamma");
  SchreierGraph g = schreier_graph(t, 4);
  CHECK(labeled_isomorphic(g, g));

  Transducer grig = builtin("grigorchuk");
  SchreierGraph h = schreier_graph(grig, 4);
  CHECK_FALSE(labeled_isomorphic(g, h));  // different label alphabets

  // same labels, different graphs: tweak one edge pair
  SchreierGraph g2 = g;
  std::swap(g2.succ[0][0], g2.succ[0][g2.succ[0][0]]);
  CHECK_FALSE(labeled_isomorphic(g, g2));
}

TEST_CASE("dot export of the level-1 graph") {
  Transducer t = builtin("gamma");
  std::string dot = export_dot(schreier_graph(t, 1));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("\"1\" -> \"2\" [label=\"a\"]") != std::string::npos);
  CHECK(dot.find("\"2\" -> \"2\" [label=\"b\"]") != std::string::npos);
}

TEST_CASE("json export shape") {
  Transducer t = builtin("gamma");
  std::string js = export_json(schreier_graph(t, 1));
  CHECK(js.find("\"level\": 1") != std::string::npos);
  CHECK(js.find("\"vertices\": [\"1\", \"2\"]") != std::string::npos);
  CHECK(js.find("{\"from\": \"1\", \"label\": \"a\", \"to\": \"2\"}") != std::string::npos);
}
