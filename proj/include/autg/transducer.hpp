#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace autg {

// Letters are 0-based internally; all I/O (files, CLI, vertex strings) is
// 1-based. Vertex words are read root-first: the first letter selects the
// top-level subtree.
using Vertex = std::vector<uint8_t>;

// Signed state code: +(q) for a state, -(q) for its formal inverse, with
// q >= 1 a state index. The identity state (index 0) never appears in codes.
using StateCode = int16_t;

struct SignedState {
  int state = 0;  // index into Transducer::names, >= 1
  int sign = 1;   // +1 or -1

  StateCode code() const { return static_cast<StateCode>(sign * state); }
  static SignedState from_code(StateCode c) {
    return {c < 0 ? -c : c, c < 0 ? -1 : 1};
  }
};

class TransducerError : public std::runtime_error {
public:
  explicit TransducerError(const std::string& what) : std::runtime_error(what) {}
};

// Finite invertible letter transducer. State 0 is the identity state `id`;
// every state's output row is a bijection of the alphabet. Immutable once
// built, safe to share across threads.
class Transducer {
public:
  Transducer(int alphabet_size, std::vector<std::string> state_names);

  int alphabet() const { return d_; }
  int num_states() const { return static_cast<int>(names_.size()); }
  const std::string& state_name(int q) const { return names_[q]; }
  const std::vector<std::string>& state_names() const { return names_; }
  int state_index(const std::string& name) const;  // -1 if unknown

  // Group generating set: state indices acting as the group's generators.
  // Defaults to all non-identity states; builtins narrow it (e.g. the BSV
  // machine carries explicit inverse states that are not generators).
  const std::vector<int>& generators() const { return gens_; }
  void set_generators(std::vector<int> gens) { gens_ = std::move(gens); }

  void set_row(int state, int letter, int out_letter, int next_state);
  // Validates totality, output bijectivity and the identity row; computes
  // inverse output tables. Must be called once after all set_row calls.
  void finalize();

  int output(int q, int letter) const { return out_[q * d_ + letter]; }
  int next(int q, int letter) const { return next_[q * d_ + letter]; }
  int output_inv(int q, int letter) const { return out_inv_[q * d_ + letter]; }

  // Single step of the signed action on a letter: returns the image letter
  // and the signed state continuing on the suffix.
  std::pair<int, SignedState> step(SignedState s, int letter) const;

  // Root permutation and first-level section of one signed state.
  int root_image(SignedState s, int letter) const;
  SignedState section(SignedState s, int letter) const;

  std::string describe_signed(StateCode c) const;

private:
  int d_;
  std::vector<std::string> names_;
  std::vector<int> gens_;
  std::vector<int> out_, next_, out_inv_;
  bool finalized_ = false;
};

// Applies one signed state to a vertex word. Image has the same length.
Vertex apply_state(const Transducer& t, SignedState s, const Vertex& v);

struct ValidationReport {
  bool invertible = false;
  bool monomial = false;
  bool dual_invertible = false;
};

// Monomial test: over the non-identity states, every state appears exactly
// once among all first-level sections, all other sections are trivial, and
// every root permutation is a power of the cycle (1 2 ... d).
ValidationReport validate(const Transducer& t);

// Raw dual tables (states and letters swapped), used for the duality
// round-trip check. dual_output[x][q] = next(q, x); dual_next[x][q] =
// output(q, x).
struct DualTables {
  int num_states = 0;  // = alphabet of the original
  int alphabet = 0;    // = number of states of the original
  std::vector<std::vector<int>> output, next;
};
DualTables dual_tables(const Transducer& t);
bool dual_invertible(const Transducer& t);

// Automaton file format (line based, '#' comments):
//   alphabet <d>
//   state <name>
//   on <x> -> <y> goto <state|id>     (d lines per state)
Transducer parse_transducer(const std::string& text);
Transducer load_transducer(const std::string& path);
std::string format_transducer(const Transducer& t);

// Built-in machines: gamma, bsv, grigorchuk, aleshin, mandelbrot.
// mandelbrot takes a kneading word over {1,2} choosing, per extra state,
// whether the previous state sits in the first or second coordinate.
Transducer builtin(const std::string& name, const std::string& parameter = "");

// Vertex word I/O: digits "121" for d <= 9, comma separated "1,12,3" above.
Vertex parse_vertex(const std::string& text, int alphabet);
std::string format_vertex(const Vertex& v, int alphabet);

}  // namespace autg
