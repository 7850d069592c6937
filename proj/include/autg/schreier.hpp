#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "autg/word.hpp"

namespace autg {

// Level-n orbit graph: one out-edge per generator label per vertex.
// Vertices are indexed root-first (first letter most significant); the
// distinguished vertex of a direct construction is 11...1, index 0.
struct SchreierGraph {
  int level = 0;
  int alphabet = 2;
  std::vector<std::string> labels;             // generator names
  std::vector<std::vector<uint32_t>> succ;     // succ[label][v]
  uint32_t root = 0;

  size_t num_vertices() const { return succ.empty() ? 0 : succ[0].size(); }
  std::string vertex_name(uint32_t v) const;
};

// Direct construction: apply every generator to every level-n vertex. The
// vertex loop is the parallel kernel; the serial variant is the reference.
SchreierGraph schreier_graph(const Transducer& t, int n, int threads = 0);
SchreierGraph schreier_graph_serial(const Transducer& t, int n);

// Recursive construction of the basilica level graphs: an a-labelled
// 2^(k+1)-gon with b-parts attached at the 2-adic valuation of each corner,
// alternating with the b-labelled step, glued at distinguished vertices.
SchreierGraph basilica_recursive_graph(int n);

// Label- and root-preserving isomorphism, decided by canonical BFS
// renumbering (out-degree one per label makes the traversal canonical).
bool labeled_isomorphic(const SchreierGraph& g1, const SchreierGraph& g2);

// True iff every label acts as a permutation and every vertex meets
// `degree` edge ends: one out- and one in-edge per label, a loop counting
// as both.
bool regular_degree(const SchreierGraph& g, int degree);

std::string export_dot(const SchreierGraph& g);
std::string export_json(const SchreierGraph& g);

}  // namespace autg
