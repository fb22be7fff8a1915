#include "sdtk/belt.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sdtk {

namespace {

using Lookup = std::function<std::optional<int>(const Elem&)>;

long double ipow(std::size_t b, std::size_t e) {
  return std::pow(static_cast<long double>(b), static_cast<long double>(e));
}

}  // namespace

// ---- single-track belts ----

ToyBeltSpec ToyBeltSpec::make(GroupPtr group, AlphabetPtr track_alpha,
                              std::vector<Elem> pointers, int extra) {
  if (pointers.empty()) throw std::invalid_argument("empty pointer set");
  ToyBeltSpec spec;
  spec.group = std::move(group);
  spec.track_alpha = std::move(track_alpha);
  spec.pointers = std::move(pointers);
  spec.extra = extra;
  std::vector<std::string> syms;
  for (const auto& b : spec.pointers)
    for (const auto& f : spec.pointers)
      for (std::size_t a = 0; a < spec.track_alpha->size(); ++a)
        for (std::size_t b2 = 0; b2 < spec.track_alpha->size(); ++b2)
          syms.push_back("b[" + spec.group->format(b) + "," +
                         spec.group->format(f) + ";" +
                         spec.track_alpha->symbol(static_cast<int>(a)) + "," +
                         spec.track_alpha->symbol(static_cast<int>(b2)) + "]");
  for (int i = 0; i < extra; ++i) syms.push_back("n" + std::to_string(i));
  spec.belt_alpha = std::make_shared<Alphabet>(std::move(syms));
  return spec;
}

int ToyBeltSpec::belt_count() const {
  return static_cast<int>(pointers.size() * pointers.size() *
                          track_alpha->size() * track_alpha->size());
}

bool ToyBeltSpec::is_belt(int sym) const { return sym < belt_count(); }

int ToyBeltSpec::back_idx(int sym) const {
  int a = static_cast<int>(track_alpha->size());
  return sym / (a * a) / static_cast<int>(pointers.size());
}

int ToyBeltSpec::fwd_idx(int sym) const {
  int a = static_cast<int>(track_alpha->size());
  return sym / (a * a) % static_cast<int>(pointers.size());
}

const Elem& ToyBeltSpec::back(int sym) const {
  return pointers[static_cast<std::size_t>(back_idx(sym))];
}

const Elem& ToyBeltSpec::fwd(int sym) const {
  return pointers[static_cast<std::size_t>(fwd_idx(sym))];
}

int ToyBeltSpec::top(int sym) const {
  int a = static_cast<int>(track_alpha->size());
  return sym / a % a;
}

int ToyBeltSpec::bot(int sym) const {
  return sym % static_cast<int>(track_alpha->size());
}

int ToyBeltSpec::encode(int back_idx, int fwd_idx, int top, int bot) const {
  int a = static_cast<int>(track_alpha->size());
  int s = static_cast<int>(pointers.size());
  return ((back_idx * s + fwd_idx) * a + top) * a + bot;
}

int ToyBeltSpec::pointer_index(const Elem& e) const {
  for (std::size_t i = 0; i < pointers.size(); ++i)
    if (pointers[i] == e) return static_cast<int>(i);
  throw std::invalid_argument("element is not in the pointer set");
}

int ToyBeltSpec::max_pointer_length() const {
  int m = 0;
  for (const auto& p : pointers) m = std::max(m, group->word_length(p));
  return m;
}

json ToyBeltSpec::to_json() const {
  json ptrs = json::array();
  for (const auto& p : pointers) ptrs.push_back(group->elem_to_json(p));
  return json{{"group", group->to_json()},
              {"track_alphabet", track_alpha->to_json()},
              {"pointers", ptrs},
              {"extra", extra}};
}

ToyBeltSpec ToyBeltSpec::from_json(const json& j) {
  auto g = Group::from_json(j.at("group"));
  auto a = Alphabet::from_json(j.at("track_alphabet"));
  std::vector<Elem> ptrs;
  for (const auto& pj : j.at("pointers")) ptrs.push_back(g->elem_from_json(pj));
  return make(g, a, std::move(ptrs), j.value("extra", 1));
}

namespace {

Tri fwd_cons(const ToyBeltSpec& spec, const Lookup& look, const Elem& g) {
  auto c = look(g);
  if (!c) return Tri::Edge;
  if (!spec.is_belt(*c)) return Tri::False;
  Elem g2 = spec.group->mul(g, spec.fwd(*c));
  auto c2 = look(g2);
  if (!c2) return Tri::Edge;
  if (!spec.is_belt(*c2)) return Tri::False;
  return spec.group->inv(spec.fwd(*c)) == spec.back(*c2) ? Tri::True
                                                         : Tri::False;
}

Tri bwd_cons(const ToyBeltSpec& spec, const Lookup& look, const Elem& g) {
  auto c = look(g);
  if (!c) return Tri::Edge;
  if (!spec.is_belt(*c)) return Tri::False;
  Elem g2 = spec.group->mul(g, spec.back(*c));
  auto c2 = look(g2);
  if (!c2) return Tri::Edge;
  if (!spec.is_belt(*c2)) return Tri::False;
  return spec.group->inv(spec.back(*c)) == spec.fwd(*c2) ? Tri::True
                                                         : Tri::False;
}

BeltState step_impl(const ToyBeltSpec& spec, const Lookup& look,
                    const BeltState& s) {
  if (s.top) {
    Tri t = fwd_cons(spec, look, s.pos);
    if (t == Tri::Edge) throw WindowEdge("belt step left the window");
    if (t == Tri::True)
      return BeltState{spec.group->mul(s.pos, spec.fwd(*look(s.pos))), true};
    return BeltState{s.pos, false};
  }
  Tri t = bwd_cons(spec, look, s.pos);
  if (t == Tri::Edge) throw WindowEdge("belt step left the window");
  if (t == Tri::True)
    return BeltState{spec.group->mul(s.pos, spec.back(*look(s.pos))), false};
  return BeltState{s.pos, true};
}

BeltState istep_impl(const ToyBeltSpec& spec, const Lookup& look,
                     const BeltState& s) {
  if (s.top) {
    Tri t = bwd_cons(spec, look, s.pos);
    if (t == Tri::Edge) throw WindowEdge("belt step left the window");
    if (t == Tri::True)
      return BeltState{spec.group->mul(s.pos, spec.back(*look(s.pos))), true};
    return BeltState{s.pos, false};
  }
  Tri t = fwd_cons(spec, look, s.pos);
  if (t == Tri::Edge) throw WindowEdge("belt step left the window");
  if (t == Tri::True)
    return BeltState{spec.group->mul(s.pos, spec.fwd(*look(s.pos))), false};
  return BeltState{s.pos, true};
}

Lookup pattern_lookup(const Pattern& w) {
  return [&w](const Elem& g) { return w.maybe_at(g); };
}

}  // namespace

Tri forward_consistent(const ToyBeltSpec& spec, const Pattern& w,
                       const Elem& g) {
  return fwd_cons(spec, pattern_lookup(w), g);
}

Tri backward_consistent(const ToyBeltSpec& spec, const Pattern& w,
                        const Elem& g) {
  return bwd_cons(spec, pattern_lookup(w), g);
}

BeltState belt_step(const ToyBeltSpec& spec, const Pattern& w,
                    const BeltState& s) {
  return step_impl(spec, pattern_lookup(w), s);
}

BeltState inverse_step(const ToyBeltSpec& spec, const Pattern& w,
                       const BeltState& s) {
  return istep_impl(spec, pattern_lookup(w), s);
}

OrbitResult orbit_classify(const ToyBeltSpec& spec, const Pattern& w,
                           const BeltState& start, int max_steps) {
  if (max_steps <= 0) max_steps = 4 * static_cast<int>(w.size()) + 4;
  auto look = pattern_lookup(w);
  OrbitResult res;
  int front_stops = 0, back_stops = 0;
  // A turn during forward motion flips top->bottom at a forward-inconsistent
  // cell (a front stop) or bottom->top at a backward-inconsistent one (a
  // back stop); traversing backward swaps the reading.
  auto note_turn = [&](const BeltState& from, const BeltState& to,
                       bool forward_motion) {
    if (from.pos != to.pos || from.top == to.top) return;
    ++res.turns;
    bool front = forward_motion ? from.top : !from.top;
    (front ? front_stops : back_stops) += 1;
  };

  BeltState cur = start;
  res.states.push_back(cur);
  bool closed = false, edge = false;
  for (int i = 0; i < max_steps; ++i) {
    BeltState next;
    try {
      next = step_impl(spec, look, cur);
    } catch (const WindowEdge&) {
      edge = true;
      break;
    }
    note_turn(cur, next, true);
    if (next == start) {
      closed = true;
      break;
    }
    res.states.push_back(next);
    cur = next;
  }
  if (closed) {
    res.length = static_cast<int>(res.states.size());
    res.label = res.turns == 0 ? "cycle" : "segment";
    return res;
  }
  if (!edge) {  // ran out of steps
    res.length = static_cast<int>(res.states.size());
    res.label = "exceeds-window";
    return res;
  }
  cur = start;
  for (int i = 0; i < max_steps; ++i) {
    BeltState prev;
    try {
      prev = istep_impl(spec, look, cur);
    } catch (const WindowEdge&) {
      break;
    }
    note_turn(cur, prev, false);
    res.states.insert(res.states.begin(), prev);
    cur = prev;
  }
  res.length = static_cast<int>(res.states.size());
  if (res.turns == 1)
    res.label = front_stops ? "ray-frontstop" : "ray-backstop";
  else
    res.label = "exceeds-window";
  return res;
}

namespace {

int trace_value_at(const ToyBeltSpec& spec, const Lookup& look, const Elem& g,
                   bool top_track, int n) {
  BeltState s{g, top_track};
  for (int i = 0; i < std::abs(n); ++i)
    s = n > 0 ? step_impl(spec, look, s) : istep_impl(spec, look, s);
  auto c = look(s.pos);
  if (!c || !spec.is_belt(*c))
    throw WindowEdge("trace reached a non-belt cell");
  return s.top ? spec.top(*c) : spec.bot(*c);
}

}  // namespace

Pattern trace(const ToyBeltSpec& spec, const Pattern& w, const Elem& g,
              bool top_track, const ElemSet& positions) {
  auto look = pattern_lookup(w);
  std::vector<int> values;
  for (const auto& n : positions.elems())
    values.push_back(trace_value_at(spec, look, g, top_track, n.c.at(0)));
  return Pattern(Group::integers(), spec.track_alpha, positions,
                 std::move(values));
}

LocalRule psi_toy(const ToyBeltSpec& spec, const LocalRule& phi,
                  std::size_t budget) {
  if (phi.group()->kind() != GroupKind::Integers)
    throw std::invalid_argument("phi must be a rule over the integers");
  if (phi.in_alphabet()->size() != spec.track_alpha->size())
    throw std::invalid_argument("phi alphabet must match the track alphabet");
  int rho = 0;
  for (const auto& e : phi.memory().elems())
    rho = std::max(rho, std::abs(e.c.at(0)));
  ElemSet mem = spec.group->ball(rho * spec.max_pointer_length());
  ToyBeltSpec spec_copy = spec;
  LocalRule phi_copy = phi;
  std::vector<int> phi_coords;
  for (const auto& e : phi.memory().elems()) phi_coords.push_back(e.c.at(0));
  std::size_t id_idx =
      static_cast<std::size_t>(mem.index_of(spec.group->identity()));
  auto fn = [spec_copy, phi_copy, phi_coords, mem,
             id_idx](const std::vector<int>& v) {
    Lookup look = [&](const Elem& g) -> std::optional<int> {
      auto i = mem.index_of(g);
      if (i < 0) return std::nullopt;
      return v[static_cast<std::size_t>(i)];
    };
    int c0 = v[id_idx];
    if (!spec_copy.is_belt(c0)) return c0;
    Elem origin = spec_copy.group->identity();
    std::vector<int> vals;
    vals.reserve(phi_coords.size());
    for (int n : phi_coords)
      vals.push_back(trace_value_at(spec_copy, look, origin, true, n));
    int new_top = phi_copy.eval(vals);
    vals.clear();
    for (int n : phi_coords)
      vals.push_back(trace_value_at(spec_copy, look, origin, false, n));
    int new_bot = phi_copy.eval(vals);
    return spec_copy.encode(spec_copy.back_idx(c0), spec_copy.fwd_idx(c0),
                            new_top, new_bot);
  };
  LocalRule rule(spec.group, spec.belt_alpha, spec.belt_alpha, mem, fn);
  if (rule.table_size() <= static_cast<long double>(budget))
    return LocalRule(spec.group, spec.belt_alpha, spec.belt_alpha, mem,
                     rule.materialize(budget));
  return rule;
}

std::optional<ToyWitness> toy_injectivity_witness(const ToyBeltSpec& spec,
                                                  const LocalRule& phi1,
                                                  const LocalRule& phi2) {
  if (spec.group->kind() != GroupKind::Integers)
    throw std::invalid_argument("witness construction needs integer carrier");
  Elem plus{{1}}, minus{{-1}};
  int pi_plus = spec.pointer_index(plus);
  int pi_minus = spec.pointer_index(minus);
  ElemSet U = phi1.memory().set_union(phi2.memory());
  std::vector<std::size_t> p1, p2;
  for (const auto& e : phi1.memory().elems())
    p1.push_back(static_cast<std::size_t>(U.index_of(e)));
  for (const auto& e : phi2.memory().elems())
    p2.push_back(static_cast<std::size_t>(U.index_of(e)));
  int alpha = static_cast<int>(phi1.in_alphabet()->size());
  std::vector<int> y(U.size(), 0);
  bool found = false;
  do {
    std::vector<int> v1, v2;
    for (std::size_t i : p1) v1.push_back(y[i]);
    for (std::size_t i : p2) v2.push_back(y[i]);
    if (phi1.eval(v1) != phi2.eval(v2)) {
      found = true;
      break;
    }
    std::size_t i = y.size();
    while (i > 0 && y[i - 1] == alpha - 1) y[--i] = 0;
    if (i == 0) break;
    ++y[i - 1];
  } while (true);
  if (!found) return std::nullopt;

  int rho = 0;
  for (const auto& e : U.elems()) rho = std::max(rho, std::abs(e.c.at(0)));
  int R = rho * spec.max_pointer_length();
  std::vector<Elem> support;
  std::vector<int> values;
  for (int i = -R; i <= R; ++i) {
    Elem e{{i}};
    auto idx = U.index_of(e);
    int top = idx >= 0 ? y[static_cast<std::size_t>(idx)] : 0;
    support.push_back(e);
    values.push_back(spec.encode(pi_minus, pi_plus, top, 0));
  }
  Pattern window(spec.group, spec.belt_alpha, ElemSet(spec.group, support),
                 values);
  auto r1 = psi_toy(spec, phi1);
  auto r2 = psi_toy(spec, phi2);
  ToyWitness wit;
  wit.window = window;
  wit.anchor = spec.group->identity();
  wit.out1 = apply(r1, window).at(wit.anchor);
  wit.out2 = apply(r2, window).at(wit.anchor);
  if (wit.out1 == wit.out2) return std::nullopt;
  return wit;
}

// ---- 2^k-track belts over egg yolks ----

EggBeltEncoding EggBeltEncoding::make(GroupPtr group, int k,
                                      std::vector<Elem> directions,
                                      AlphabetPtr track_alpha,
                                      int extra_eggs) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (directions.empty()) throw std::invalid_argument("empty direction set");
  EggBeltEncoding enc;
  enc.group = std::move(group);
  enc.k = k;
  enc.directions = std::move(directions);
  enc.track_alpha = std::move(track_alpha);
  enc.extra_eggs = extra_eggs;
  long double count = ipow(enc.directions.size(), 2 * k) *
                      ipow(enc.track_alpha->size(), 1u << k);
  if (count > (1 << 20)) throw BudgetExceeded("belt symbol space too large");
  std::vector<std::string> syms;
  long n = static_cast<long>(count) + extra_eggs;
  for (long i = 0; i < n; ++i) syms.push_back("e" + std::to_string(i));
  syms.push_back("*");
  enc.model_alpha = std::make_shared<Alphabet>(std::move(syms));
  return enc;
}

long EggBeltEncoding::belt_count() const {
  return static_cast<long>(ipow(directions.size(), 2 * k) *
                           ipow(track_alpha->size(), 1u << k));
}

int EggBeltEncoding::star_symbol() const {
  return static_cast<int>(model_alpha->size()) - 1;
}

bool EggBeltEncoding::is_belt(int sym) const { return sym < belt_count(); }

int EggBeltEncoding::direction_digit(int sym, int i, bool plus) const {
  long trackspace =
      static_cast<long>(ipow(track_alpha->size(), 1u << k));
  long dir_part = sym / trackspace;
  int j = 2 * (i - 1) + (plus ? 1 : 0);
  int shift = 2 * k - 1 - j;
  long d = dir_part;
  for (int s = 0; s < shift; ++s) d /= static_cast<long>(directions.size());
  return static_cast<int>(d % static_cast<long>(directions.size()));
}

Elem EggBeltEncoding::back(int sym, int i) const {
  return directions[static_cast<std::size_t>(direction_digit(sym, i, false))];
}

Elem EggBeltEncoding::fwd(int sym, int i) const {
  return directions[static_cast<std::size_t>(direction_digit(sym, i, true))];
}

int EggBeltEncoding::track_value(int sym, const std::vector<bool>& t) const {
  long trackspace = static_cast<long>(ipow(track_alpha->size(), 1u << k));
  long track_part = sym % trackspace;
  int code = 0;
  for (int i = 0; i < k; ++i)
    if (t[static_cast<std::size_t>(i)]) code |= 1 << i;
  long v = track_part;
  for (int s = 0; s < code; ++s) v /= static_cast<long>(track_alpha->size());
  return static_cast<int>(v % static_cast<long>(track_alpha->size()));
}

int EggBeltEncoding::encode(const std::vector<int>& dir_digits,
                            const std::vector<int>& track_vals) const {
  long dir_part = 0;
  for (int j = 0; j < 2 * k; ++j)
    dir_part = dir_part * static_cast<long>(directions.size()) +
               dir_digits[static_cast<std::size_t>(j)];
  long track_part = 0;
  for (int code = (1 << k) - 1; code >= 0; --code)
    track_part = track_part * static_cast<long>(track_alpha->size()) +
                 track_vals[static_cast<std::size_t>(code)];
  long trackspace = static_cast<long>(ipow(track_alpha->size(), 1u << k));
  return static_cast<int>(dir_part * trackspace + track_part);
}

json EggBeltEncoding::to_json() const {
  json dirs = json::array();
  for (const auto& d : directions) dirs.push_back(group->elem_to_json(d));
  return json{{"group", group->to_json()},
              {"k", k},
              {"directions", dirs},
              {"track_alphabet", track_alpha->to_json()},
              {"extra_eggs", extra_eggs}};
}

EggBeltEncoding EggBeltEncoding::from_json(const json& j) {
  auto g = Group::from_json(j.at("group"));
  auto a = Alphabet::from_json(j.at("track_alphabet"));
  std::vector<Elem> dirs;
  for (const auto& dj : j.at("directions"))
    dirs.push_back(g->elem_from_json(dj));
  return make(g, j.at("k").get<int>(), std::move(dirs), a,
              j.value("extra_eggs", 0));
}

namespace {

Tri egg_fwd_cons(const EggBeltEncoding& enc, const Lookup& look,
                 const Elem& g, int i) {
  auto c = look(g);
  if (!c) return Tri::Edge;
  if (!enc.is_belt(*c)) return Tri::False;
  Elem g2 = enc.group->mul(g, enc.fwd(*c, i));
  auto c2 = look(g2);
  if (!c2) return Tri::Edge;
  if (!enc.is_belt(*c2)) return Tri::False;
  return enc.group->inv(enc.fwd(*c, i)) == enc.back(*c2, i) ? Tri::True
                                                            : Tri::False;
}

Tri egg_bwd_cons(const EggBeltEncoding& enc, const Lookup& look,
                 const Elem& g, int i) {
  auto c = look(g);
  if (!c) return Tri::Edge;
  if (!enc.is_belt(*c)) return Tri::False;
  Elem g2 = enc.group->mul(g, enc.back(*c, i));
  auto c2 = look(g2);
  if (!c2) return Tri::Edge;
  if (!enc.is_belt(*c2)) return Tri::False;
  return enc.group->inv(enc.back(*c, i)) == enc.fwd(*c2, i) ? Tri::True
                                                            : Tri::False;
}

EggBeltState egg_step_impl(const EggBeltEncoding& enc, const Lookup& look,
                           const EggBeltState& s, int i) {
  bool top_i = s.t.at(static_cast<std::size_t>(i - 1));
  if (top_i) {
    Tri t = egg_fwd_cons(enc, look, s.pos, i);
    if (t == Tri::Edge) throw WindowEdge("belt step left the window");
    if (t == Tri::True)
      return EggBeltState{enc.group->mul(s.pos, enc.fwd(*look(s.pos), i)),
                          s.t};
  } else {
    Tri t = egg_bwd_cons(enc, look, s.pos, i);
    if (t == Tri::Edge) throw WindowEdge("belt step left the window");
    if (t == Tri::True)
      return EggBeltState{enc.group->mul(s.pos, enc.back(*look(s.pos), i)),
                          s.t};
  }
  EggBeltState flipped = s;
  flipped.t[static_cast<std::size_t>(i - 1)] = !top_i;
  return flipped;
}

EggBeltState egg_istep_impl(const EggBeltEncoding& enc, const Lookup& look,
                            const EggBeltState& s, int i) {
  bool top_i = s.t.at(static_cast<std::size_t>(i - 1));
  if (top_i) {
    Tri t = egg_bwd_cons(enc, look, s.pos, i);
    if (t == Tri::Edge) throw WindowEdge("belt step left the window");
    if (t == Tri::True)
      return EggBeltState{enc.group->mul(s.pos, enc.back(*look(s.pos), i)),
                          s.t};
  } else {
    Tri t = egg_fwd_cons(enc, look, s.pos, i);
    if (t == Tri::Edge) throw WindowEdge("belt step left the window");
    if (t == Tri::True)
      return EggBeltState{enc.group->mul(s.pos, enc.fwd(*look(s.pos), i)),
                          s.t};
  }
  EggBeltState flipped = s;
  flipped.t[static_cast<std::size_t>(i - 1)] = !top_i;
  return flipped;
}

int egg_trace_value(const EggBeltEncoding& enc, const Lookup& look,
                    const Elem& g, const std::vector<bool>& t,
                    const Elem& word) {
  EggBeltState s{g, t};
  for (std::int32_t letter : word.c) {
    int line = std::abs(letter);
    s = letter > 0 ? egg_step_impl(enc, look, s, line)
                   : egg_istep_impl(enc, look, s, line);
  }
  auto c = look(s.pos);
  if (!c || !enc.is_belt(*c))
    throw WindowEdge("trace reached a non-belt cell");
  return enc.track_value(*c, s.t);
}

}  // namespace

Tri egg_forward_consistent(const EggBeltEncoding& enc, const Pattern& w,
                           const Elem& g, int i) {
  return egg_fwd_cons(enc, pattern_lookup(w), g, i);
}

Tri egg_backward_consistent(const EggBeltEncoding& enc, const Pattern& w,
                            const Elem& g, int i) {
  return egg_bwd_cons(enc, pattern_lookup(w), g, i);
}

EggBeltState egg_belt_step(const EggBeltEncoding& enc, const Pattern& w,
                           const EggBeltState& s, int i) {
  return egg_step_impl(enc, pattern_lookup(w), s, i);
}

EggBeltState egg_inverse_step(const EggBeltEncoding& enc, const Pattern& w,
                              const EggBeltState& s, int i) {
  return egg_istep_impl(enc, pattern_lookup(w), s, i);
}

Pattern egg_trace(const EggBeltEncoding& enc, const Pattern& w, const Elem& g,
                  const std::vector<bool>& t, const ElemSet& words) {
  auto look = pattern_lookup(w);
  std::vector<int> values;
  for (const auto& u : words.elems())
    values.push_back(egg_trace_value(enc, look, g, t, u));
  return Pattern(Group::free_group(enc.k), enc.track_alpha, words,
                 std::move(values));
}

LocalRule psi_egg(const EggBeltEncoding& enc, const LocalRule& phi,
                  std::size_t budget) {
  if (phi.group()->kind() != GroupKind::Free ||
      phi.group()->dim() != enc.k)
    throw std::invalid_argument(
        "phi must be a rule over the rank-k free group");
  if (phi.in_alphabet()->size() != enc.track_alpha->size())
    throw std::invalid_argument("phi alphabet must match the track alphabet");
  int rho = 0;
  for (const auto& u : phi.memory().elems())
    rho = std::max(rho, static_cast<int>(u.c.size()));
  // Reachable positions: products of at most rho direction elements.
  std::set<Elem> reach{enc.group->identity()};
  std::set<Elem> frontier = reach;
  for (int j = 0; j < rho; ++j) {
    std::set<Elem> next;
    for (const auto& p : frontier)
      for (const auto& d : enc.directions) next.insert(enc.group->mul(p, d));
    frontier = next;
    reach.insert(next.begin(), next.end());
  }
  ElemSet mem(enc.group, std::vector<Elem>(reach.begin(), reach.end()));

  EggBeltEncoding enc_copy = enc;
  LocalRule phi_copy = phi;
  std::vector<Elem> phi_words = phi.memory().elems();
  std::size_t id_idx =
      static_cast<std::size_t>(mem.index_of(enc.group->identity()));
  auto fn = [enc_copy, phi_copy, phi_words, mem,
             id_idx](const std::vector<int>& v) {
    Lookup look = [&](const Elem& g) -> std::optional<int> {
      auto i = mem.index_of(g);
      if (i < 0) return std::nullopt;
      return v[static_cast<std::size_t>(i)];
    };
    int c0 = v[id_idx];
    if (!enc_copy.is_belt(c0)) return c0;
    Elem origin = enc_copy.group->identity();
    int k = enc_copy.k;
    std::vector<int> track_vals(static_cast<std::size_t>(1) << k, 0);
    std::vector<int> vals;
    for (int code = 0; code < (1 << k); ++code) {
      std::vector<bool> t(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] =
          (code >> i) & 1;
      vals.clear();
      for (const auto& u : phi_words)
        vals.push_back(egg_trace_value(enc_copy, look, origin, t, u));
      track_vals[static_cast<std::size_t>(code)] = phi_copy.eval(vals);
    }
    std::vector<int> dirs;
    for (int i = 1; i <= k; ++i) {
      dirs.push_back(enc_copy.direction_digit(c0, i, false));
      dirs.push_back(enc_copy.direction_digit(c0, i, true));
    }
    return enc_copy.encode(dirs, track_vals);
  };
  LocalRule rule(enc.group, enc.model_alpha, enc.model_alpha, mem, fn);
  if (rule.table_size() <= static_cast<long double>(budget))
    return LocalRule(enc.group, enc.model_alpha, enc.model_alpha, mem,
                     rule.materialize(budget));
  return rule;
}

FatFreeResult fat_free_group(const GroupPtr& G, const ElemSet& T,
                             const std::vector<Elem>& images, int length_cap,
                             int test_len) {
  FatFreeResult res;
  int k = static_cast<int>(images.size());
  ElemSet TTinv = set_product(T, set_inverse(T));
  int max_len = 0;
  bool cap_hit = false;
  // DFS over reduced words in the letters 1..k and their inverses.
  std::vector<int> word;
  std::function<void(const Elem&)> rec = [&](const Elem& cur) {
    if (static_cast<int>(word.size()) >= 1 && TTinv.contains(cur)) {
      max_len = std::max(max_len, static_cast<int>(word.size()));
      if (static_cast<int>(word.size()) == length_cap) cap_hit = true;
    }
    if (static_cast<int>(word.size()) == length_cap) return;
    for (int l = -k; l <= k; ++l) {
      if (l == 0) continue;
      if (!word.empty() && word.back() == -l) continue;
      const Elem& img = images[static_cast<std::size_t>(std::abs(l) - 1)];
      Elem next = G->mul(cur, l > 0 ? img : G->inv(img));
      word.push_back(l);
      rec(next);
      word.pop_back();
    }
  };
  rec(G->identity());
  res.n0 = max_len + 1;
  res.conclusive = !cap_hit;
  for (const auto& img : images) {
    Elem gamma = G->identity();
    for (int i = 0; i < res.n0; ++i) gamma = G->mul(gamma, img);
    res.gammas.push_back(gamma);
  }
  // Disjointness of {wT} over words in the gammas.
  std::vector<std::pair<std::vector<int>, Elem>> words{{{}, G->identity()}};
  std::vector<int> w2;
  std::function<void(const Elem&)> rec2 = [&](const Elem& cur) {
    if (static_cast<int>(w2.size()) == test_len) return;
    for (int l = -k; l <= k; ++l) {
      if (l == 0) continue;
      if (!w2.empty() && w2.back() == -l) continue;
      const Elem& g = res.gammas[static_cast<std::size_t>(std::abs(l) - 1)];
      Elem next = G->mul(cur, l > 0 ? g : G->inv(g));
      w2.push_back(l);
      words.emplace_back(w2, next);
      rec2(next);
      w2.pop_back();
    }
  };
  rec2(G->identity());
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < words.size() && res.disjoint; ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      ++pairs;
      if (!translate_set(words[i].second, T)
               .set_intersect(translate_set(words[j].second, T))
               .empty()) {
        res.disjoint = false;
        res.details["witness_pair"] = {G->format(words[i].second),
                                       G->format(words[j].second)};
        break;
      }
    }
  res.details["n0"] = res.n0;
  res.details["max_intersecting_length"] = max_len;
  res.details["length_cap"] = length_cap;
  res.details["words_tested"] = words.size();
  res.details["pairs_tested"] = pairs;
  return res;
}

}  // namespace sdtk
