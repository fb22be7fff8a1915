#pragma once

#include "sdtk/egg.hpp"
#include "sdtk/rule.hpp"

namespace sdtk {

/// Raised when a belt operation needs a cell outside the supplied window;
/// distinguishable from an inconsistency verdict.
class WindowEdge : public std::runtime_error {
 public:
  explicit WindowEdge(const std::string& what) : std::runtime_error(what) {}
};

enum class Tri { False, True, Edge };

/// Single-track belt alphabet: symbols carrying a back pointer, a forward
/// pointer (both from the pointer set S), and one symbol of A per track
/// (top and bottom), plus `extra` non-belt symbols.
struct ToyBeltSpec {
  GroupPtr group;
  AlphabetPtr track_alpha;
  std::vector<Elem> pointers;  // S
  int extra = 1;
  AlphabetPtr belt_alpha;  // built by make()

  static ToyBeltSpec make(GroupPtr group, AlphabetPtr track_alpha,
                          std::vector<Elem> pointers, int extra = 1);

  int belt_count() const;
  bool is_belt(int sym) const;
  int back_idx(int sym) const;
  int fwd_idx(int sym) const;
  const Elem& back(int sym) const;
  const Elem& fwd(int sym) const;
  int top(int sym) const;
  int bot(int sym) const;
  int encode(int back_idx, int fwd_idx, int top, int bot) const;
  int pointer_index(const Elem& e) const;
  /// Longest pointer, in the word metric.
  int max_pointer_length() const;

  json to_json() const;
  static ToyBeltSpec from_json(const json& j);
};

struct BeltState {
  Elem pos;
  bool top = true;
  bool operator==(const BeltState&) const = default;
};

/// x(g) and x(g.fwd) are belt symbols whose pointers reciprocate.
Tri forward_consistent(const ToyBeltSpec& spec, const Pattern& w,
                       const Elem& g);
Tri backward_consistent(const ToyBeltSpec& spec, const Pattern& w,
                        const Elem& g);

/// One application of the belt permutation f_x; throws WindowEdge when a
/// consulted cell is missing.
BeltState belt_step(const ToyBeltSpec& spec, const Pattern& w,
                    const BeltState& s);
BeltState inverse_step(const ToyBeltSpec& spec, const Pattern& w,
                       const BeltState& s);

struct OrbitResult {
  /// "cycle", "segment", "ray-backstop", "ray-frontstop", "exceeds-window"
  std::string label;
  int length = 0;  // states visited before revisit/truncation
  int turns = 0;
  std::vector<BeltState> states;
};

OrbitResult orbit_classify(const ToyBeltSpec& spec, const Pattern& w,
                           const BeltState& start, int max_steps = 0);

/// Track symbols read along the orbit: value at n is the active-track
/// symbol after n forward (or -n backward) steps from (g, top_track).
/// Support lives over the integers regardless of the carrier group.
Pattern trace(const ToyBeltSpec& spec, const Pattern& w, const Elem& g,
              bool top_track, const ElemSet& positions);

/// The embedding of full-shift automorphisms: pointers preserved, non-belt
/// symbols copied, both track symbols rewritten through phi along traces.
/// phi must be a rule over A with memory inside the integers' ball(rho);
/// the result has memory ball(rho * max pointer length).
LocalRule psi_toy(const ToyBeltSpec& spec, const LocalRule& phi,
                  std::size_t budget = 1u << 20);

struct ToyWitness {
  Pattern window;
  Elem anchor;
  int out1 = 0, out2 = 0;  // belt symbols produced at the anchor
};

/// Constructs a straight-belt window on which psi(phi1) and psi(phi2)
/// disagree at the anchor, when phi1 and phi2 differ as rules. Integer
/// carrier with pointers {-1,+1} required.
std::optional<ToyWitness> toy_injectivity_witness(const ToyBeltSpec& spec,
                                                  const LocalRule& phi1,
                                                  const LocalRule& phi2);

/// 2^k-track belt symbols living in the yolks of an egg collection:
/// direction fields d_{i,-}, d_{i,+} over a direction set D and one symbol
/// of A per track in {bottom,top}^k. Symbols are egg-model indices; indices
/// past belt_count are non-belt eggs, the last symbol is the star.
struct EggBeltEncoding {
  GroupPtr group;
  int k = 1;
  std::vector<Elem> directions;  // D
  AlphabetPtr track_alpha;
  int extra_eggs = 0;
  AlphabetPtr model_alpha;  // built by make()

  static EggBeltEncoding make(GroupPtr group, int k,
                              std::vector<Elem> directions,
                              AlphabetPtr track_alpha, int extra_eggs = 0);

  long belt_count() const;
  int star_symbol() const;
  bool is_belt(int sym) const;
  Elem back(int sym, int i) const;  // i in 1..k
  Elem fwd(int sym, int i) const;
  int direction_digit(int sym, int i, bool plus) const;
  int track_value(int sym, const std::vector<bool>& t) const;
  int encode(const std::vector<int>& dir_digits,
             const std::vector<int>& track_vals) const;

  json to_json() const;
  static EggBeltEncoding from_json(const json& j);
};

struct EggBeltState {
  Elem pos;
  std::vector<bool> t;  // t[i-1] true = top on line i
  bool operator==(const EggBeltState&) const = default;
};

Tri egg_forward_consistent(const EggBeltEncoding& enc, const Pattern& w,
                           const Elem& g, int i);
Tri egg_backward_consistent(const EggBeltEncoding& enc, const Pattern& w,
                            const Elem& g, int i);

EggBeltState egg_belt_step(const EggBeltEncoding& enc, const Pattern& w,
                           const EggBeltState& s, int i);
EggBeltState egg_inverse_step(const EggBeltEncoding& enc, const Pattern& w,
                              const EggBeltState& s, int i);

/// Trace over free-group words: value at u is the active-track field after
/// walking u (letter j steps line |j|, inverted for negative letters).
/// Support lives over the rank-k free group.
Pattern egg_trace(const EggBeltEncoding& enc, const Pattern& w, const Elem& g,
                  const std::vector<bool>& t, const ElemSet& words);

/// The track-rewriting rule on the egg model: stars and non-belt eggs are
/// copied, direction fields preserved, each track field t replaced by
/// phi(c[x,g,t]) at the empty word. phi is a rule over A with memory inside
/// the rank-k free group.
LocalRule psi_egg(const EggBeltEncoding& enc, const LocalRule& phi,
                  std::size_t budget = 1u << 20);

struct FatFreeResult {
  int n0 = 1;
  bool conclusive = true;
  std::vector<Elem> gammas;
  bool disjoint = true;
  json details;
};

/// n0 = 1 + max{|u| : psi(u)T meets T} over reduced words of length <=
/// length_cap, gammas = psi(a_i)^{n0}; verifies {wT} pairwise disjoint for
/// all words w over the gammas of length <= test_len.
FatFreeResult fat_free_group(const GroupPtr& G, const ElemSet& T,
                             const std::vector<Elem>& images, int length_cap,
                             int test_len);

}  // namespace sdtk
