#include "autg/schreier.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

#include "autg/parallel.hpp"

namespace autg {

namespace {

constexpr uint32_t kUndef = std::numeric_limits<uint32_t>::max();

uint64_t pow_u64(int base, int exp) {
  uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<uint64_t>(base);
  return r;
}

SchreierGraph build_direct(const Transducer& t, int n, int threads) {
  uint64_t m64 = pow_u64(t.alphabet(), n);
  if (m64 > (1u << 24)) throw std::runtime_error("schreier_graph: level too large");
  uint32_t m = static_cast<uint32_t>(m64);
  int d = t.alphabet();

  SchreierGraph g;
  g.level = n;
  g.alphabet = d;
  for (int q : t.generators()) g.labels.push_back(t.state_name(q));
  g.succ.assign(g.labels.size(), std::vector<uint32_t>(m));
  g.root = 0;

  const auto& gens = t.generators();
  for (size_t gi = 0; gi < gens.size(); ++gi) {
    SignedState s{gens[gi], 1};
    auto& succ = g.succ[gi];
    parallel_for(m, threads, [&](int64_t idx) {
      Vertex v(n);
      uint64_t rest = static_cast<uint64_t>(idx);
      for (int i = n - 1; i >= 0; --i) {
        v[i] = static_cast<uint8_t>(rest % d);
        rest /= d;
      }
      Vertex img = apply_state(t, s, v);
      uint64_t out = 0;
      for (int i = 0; i < n; ++i) out = out * d + img[i];
      succ[idx] = static_cast<uint32_t>(out);
    });
  }
  return g;
}

}  // namespace

std::string SchreierGraph::vertex_name(uint32_t v) const {
  if (level == 0) return "e";
  std::string s(level, '?');
  uint32_t rest = v;
  for (int i = level - 1; i >= 0; --i) {
    s[i] = static_cast<char>('1' + rest % alphabet);
    rest /= alphabet;
  }
  return s;
}

SchreierGraph schreier_graph(const Transducer& t, int n, int threads) {
  return build_direct(t, n, threads);
}

SchreierGraph schreier_graph_serial(const Transducer& t, int n) {
  return build_direct(t, n, 1);
}

namespace {

// Partial graph used while assembling the recursive construction: vertex 0
// is the distinguished vertex; missing edges stay kUndef until parts merge.
struct Part {
  std::vector<uint32_t> a, b;

  size_t size() const { return a.size(); }
  uint32_t add_vertex() {
    a.push_back(kUndef);
    b.push_back(kUndef);
    return static_cast<uint32_t>(a.size() - 1);
  }
  // Copies `other` into this part, identifying other's vertex 0 with `at`.
  void attach(const Part& other, uint32_t at) {
    std::vector<uint32_t> map(other.size());
    map[0] = at;
    for (size_t v = 1; v < other.size(); ++v) map[v] = add_vertex();
    for (size_t v = 0; v < other.size(); ++v) {
      if (other.a[v] != kUndef) a[map[v]] = map[other.a[v]];
      if (other.b[v] != kUndef) b[map[v]] = map[other.b[v]];
    }
  }
};

int valuation2(int i) {
  int j = 0;
  while ((i & 1) == 0) {
    i >>= 1;
    ++j;
  }
  return j;
}

// A_n and B_n of the recursive description: A_0/B_0 are single loops, the
// odd step builds an a-labelled 2^(k+1)-gon with B_{2j} attached at corner
// i for 2^j || i, the even step a b-labelled 2^k-gon with A_{2j+1} parts.
struct RecursiveParts {
  std::vector<Part> A, B;

  const Part& getA(int n) {
    build(n);
    return A[n];
  }
  const Part& getB(int n) {
    build(n);
    return B[n];
  }

  void build(int n) {
    if (A.empty()) {
      Part a0;
      a0.add_vertex();
      a0.a[0] = 0;
      Part b0;
      b0.add_vertex();
      b0.b[0] = 0;
      A.push_back(a0);
      B.push_back(b0);
    }
    while (static_cast<int>(A.size()) <= n) {
      int m = static_cast<int>(A.size());
      if (m % 2 == 1) {
        int k = (m - 1) / 2;
        int side = 1 << (k + 1);
        Part part;
        for (int i = 0; i < side; ++i) part.add_vertex();
        for (int i = 0; i < side; ++i) part.a[i] = static_cast<uint32_t>((i + 1) % side);
        for (int i = 1; i < side; ++i)
          part.attach(B[2 * valuation2(i)], static_cast<uint32_t>(i));
        A.push_back(part);
        B.push_back(B[m - 1]);
      } else {
        int k = m / 2;
        int side = 1 << k;
        Part part;
        for (int i = 0; i < side; ++i) part.add_vertex();
        for (int i = 0; i < side; ++i) part.b[i] = static_cast<uint32_t>((i + 1) % side);
        for (int i = 1; i < side; ++i)
          part.attach(A[2 * valuation2(i) + 1], static_cast<uint32_t>(i));
        A.push_back(A[m - 1]);
        B.push_back(part);
      }
    }
  }
};

}  // namespace

SchreierGraph basilica_recursive_graph(int n) {
  if (n < 0) throw std::invalid_argument("basilica_recursive_graph: negative level");
  SchreierGraph g;
  g.level = n;
  g.alphabet = 2;
  g.labels = {"a", "b"};
  if (n == 0) {
    g.succ.assign(2, std::vector<uint32_t>{0});
    g.root = 0;
    return g;
  }
  RecursiveParts parts;
  Part glued = parts.getA(n);
  glued.attach(parts.getB(n), 0);
  if (glued.size() != pow_u64(2, n))
    throw std::runtime_error("basilica_recursive_graph: size mismatch");
  for (size_t v = 0; v < glued.size(); ++v)
    if (glued.a[v] == kUndef || glued.b[v] == kUndef)
      throw std::runtime_error("basilica_recursive_graph: missing edge");
  g.succ = {std::move(glued.a), std::move(glued.b)};
  g.root = 0;
  return g;
}

bool labeled_isomorphic(const SchreierGraph& g1, const SchreierGraph& g2) {
  if (g1.level != g2.level) return false;
  if (g1.labels != g2.labels) return false;
  if (g1.num_vertices() != g2.num_vertices()) return false;
  size_t m = g1.num_vertices();
  size_t L = g1.labels.size();

  auto preds = [&](const SchreierGraph& g) {
    std::vector<std::vector<uint32_t>> pred(L, std::vector<uint32_t>(m, kUndef));
    for (size_t l = 0; l < L; ++l)
      for (uint32_t v = 0; v < m; ++v) {
        if (pred[l][g.succ[l][v]] != kUndef) return std::vector<std::vector<uint32_t>>{};
        pred[l][g.succ[l][v]] = v;
      }
    return pred;
  };
  auto p1 = preds(g1), p2 = preds(g2);
  if (p1.empty() || p2.empty()) return false;

  // Canonical BFS from the roots following labels in a fixed order; the
  // discovered pairing is the only possible root-preserving isomorphism.
  std::vector<uint32_t> map1(m, kUndef);
  std::vector<uint32_t> seen2(m, 0);
  std::vector<uint32_t> queue;
  map1[g1.root] = g2.root;
  seen2[g2.root] = 1;
  queue.push_back(g1.root);
  size_t visited = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    uint32_t v = queue[qi];
    uint32_t w = map1[v];
    for (size_t l = 0; l < L; ++l) {
      for (int dir = 0; dir < 2; ++dir) {
        uint32_t nv = dir == 0 ? g1.succ[l][v] : p1[l][v];
        uint32_t nw = dir == 0 ? g2.succ[l][w] : p2[l][w];
        if (map1[nv] == kUndef) {
          if (seen2[nw]) return false;
          map1[nv] = nw;
          seen2[nw] = 1;
          queue.push_back(nv);
          ++visited;
        } else if (map1[nv] != nw) {
          return false;
        }
      }
    }
  }
  return visited == m;  // both connected and fully matched
}

bool regular_degree(const SchreierGraph& g, int degree) {
  size_t m = g.num_vertices();
  for (size_t l = 0; l < g.labels.size(); ++l) {
    std::vector<int> indeg(m, 0);
    for (uint32_t v = 0; v < m; ++v) {
      if (g.succ[l][v] >= m) return false;
      ++indeg[g.succ[l][v]];
    }
    for (uint32_t v = 0; v < m; ++v)
      if (indeg[v] != 1) return false;
  }
  return degree == static_cast<int>(2 * g.labels.size());
}

std::string export_dot(const SchreierGraph& g) {
  std::ostringstream out;
  out << "digraph schreier {\n";
  out << "  // level " << g.level << ", root " << g.vertex_name(g.root) << "\n";
  for (uint32_t v = 0; v < g.num_vertices(); ++v) {
    out << "  \"" << g.vertex_name(v) << "\"";
    if (v == g.root) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (size_t l = 0; l < g.labels.size(); ++l)
    for (uint32_t v = 0; v < g.num_vertices(); ++v)
      out << "  \"" << g.vertex_name(v) << "\" -> \"" << g.vertex_name(g.succ[l][v])
          << "\" [label=\"" << g.labels[l] << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string export_json(const SchreierGraph& g) {
  std::ostringstream out;
  out << "{\"level\": " << g.level << ", \"vertices\": [";
  for (uint32_t v = 0; v < g.num_vertices(); ++v) {
    if (v) out << ", ";
    out << "\"" << g.vertex_name(v) << "\"";
  }
  out << "], \"edges\": [";
  bool first = true;
  for (size_t l = 0; l < g.labels.size(); ++l)
    for (uint32_t v = 0; v < g.num_vertices(); ++v) {
      if (!first) out << ", ";
      first = false;
      out << "{\"from\": \"" << g.vertex_name(v) << "\", \"label\": \"" << g.labels[l]
          << "\", \"to\": \"" << g.vertex_name(g.succ[l][v]) << "\"}";
    }
  out << "]}";
  return out.str();
}

}  // namespace autg
