#include "sdtk/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace sdtk {

namespace {

std::vector<std::int32_t> reduce_word(std::vector<std::int32_t> w) {
  std::vector<std::int32_t> out;
  for (std::int32_t letter : w) {
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

void split_product(const Elem& e, Elem& l, Elem& r) {
  if (e.c.empty()) throw std::invalid_argument("malformed product element");
  auto n = static_cast<std::size_t>(e.c[0]);
  if (1 + n > e.c.size()) throw std::invalid_argument("malformed product element");
  l.c.assign(e.c.begin() + 1, e.c.begin() + 1 + n);
  r.c.assign(e.c.begin() + 1 + n, e.c.end());
}

Elem join_product(const Elem& l, const Elem& r) {
  Elem e;
  e.c.reserve(1 + l.c.size() + r.c.size());
  e.c.push_back(static_cast<std::int32_t>(l.c.size()));
  e.c.insert(e.c.end(), l.c.begin(), l.c.end());
  e.c.insert(e.c.end(), r.c.begin(), r.c.end());
  return e;
}

}  // namespace

ElemSet::ElemSet(GroupPtr g, std::vector<Elem> elems)
    : group_(std::move(g)), elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool ElemSet::contains(const Elem& e) const {
  return std::binary_search(elems_.begin(), elems_.end(), e);
}

std::ptrdiff_t ElemSet::index_of(const Elem& e) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
  if (it == elems_.end() || *it != e) return -1;
  return it - elems_.begin();
}

ElemSet ElemSet::set_union(const ElemSet& other) const {
  std::vector<Elem> out;
  std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(),
                 other.elems_.end(), std::back_inserter(out));
  return ElemSet(group_ ? group_ : other.group_, std::move(out));
}

ElemSet ElemSet::set_minus(const ElemSet& other) const {
  std::vector<Elem> out;
  std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(),
                      other.elems_.end(), std::back_inserter(out));
  return ElemSet(group_, std::move(out));
}

ElemSet ElemSet::set_intersect(const ElemSet& other) const {
  std::vector<Elem> out;
  std::set_intersection(elems_.begin(), elems_.end(), other.elems_.begin(),
                        other.elems_.end(), std::back_inserter(out));
  return ElemSet(group_, std::move(out));
}

bool ElemSet::subset_of(const ElemSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(),
                       elems_.begin(), elems_.end());
}

GroupPtr Group::integers() {
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Integers;
  g->gens_ = {Elem{{1}}, Elem{{-1}}};
  return g;
}

GroupPtr Group::lattice(int d) {
  if (d < 1) throw std::invalid_argument("lattice dimension must be >= 1");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Lattice;
  g->dim_ = d;
  for (int i = 0; i < d; ++i) {
    for (int s : {1, -1}) {
      Elem e;
      e.c.assign(d, 0);
      e.c[i] = s;
      g->gens_.push_back(e);
    }
  }
  return g;
}

GroupPtr Group::free_group(int k) {
  if (k < 1 || k > 26) throw std::invalid_argument("free rank must be in 1..26");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Free;
  g->dim_ = k;
  for (int i = 1; i <= k; ++i) {
    g->gens_.push_back(Elem{{i}});
    g->gens_.push_back(Elem{{-i}});
  }
  return g;
}

void Group::validate_table() const {
  const auto n = table_.size();
  if (n == 0) throw std::invalid_argument("empty multiplication table");
  for (const auto& row : table_) {
    if (row.size() != n) throw std::invalid_argument("non-square table");
    for (auto v : row)
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw std::invalid_argument("table entry out of range");
  }
  // identity
  std::int32_t id = -1;
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n; ++a)
      if (table_[e][a] != static_cast<std::int32_t>(a) ||
          table_[a][e] != static_cast<std::int32_t>(a)) {
        ok = false;
        break;
      }
    if (ok) {
      id = static_cast<std::int32_t>(e);
      break;
    }
  }
  if (id != 0)
    throw std::invalid_argument("table index 0 must be the identity");
  // associativity
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw std::invalid_argument("table is not associative");
  // inverses (existence)
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == 0 && table_[b][a] == 0) {
        found = true;
        break;
      }
    if (!found) throw std::invalid_argument("table element without inverse");
  }
}

GroupPtr Group::finite_table(std::vector<std::vector<std::int32_t>> table,
                             std::vector<std::int32_t> generators) {
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::FiniteTable;
  g->table_ = std::move(table);
  g->validate_table();
  const auto n = g->table_.size();
  g->table_inv_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g->table_[a][b] == 0) g->table_inv_[a] = static_cast<std::int32_t>(b);

  if (generators.empty()) {
    for (std::size_t i = 1; i < n; ++i)
      generators.push_back(static_cast<std::int32_t>(i));
  }
  std::set<std::int32_t> sym;
  for (auto s : generators) {
    if (s < 0 || static_cast<std::size_t>(s) >= n)
      throw std::invalid_argument("generator index out of range");
    if (s == 0) continue;
    sym.insert(s);
    sym.insert(g->table_inv_[s]);
  }
  for (auto s : sym) g->gens_.push_back(Elem{{s}});

  // BFS for the word metric; also confirms S generates.
  g->table_dist_.assign(n, -1);
  g->table_dist_[0] = 0;
  std::vector<std::int32_t> frontier = {0};
  while (!frontier.empty()) {
    std::vector<std::int32_t> next;
    for (auto v : frontier)
      for (auto s : sym) {
        auto w = g->table_[v][s];
        if (g->table_dist_[w] < 0) {
          g->table_dist_[w] = g->table_dist_[v] + 1;
          next.push_back(w);
        }
      }
    frontier = std::move(next);
  }
  for (auto d : g->table_dist_)
    if (d < 0) throw std::invalid_argument("generators do not generate the group");
  return g;
}

GroupPtr Group::product(GroupPtr left, GroupPtr right) {
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Product;
  g->left_ = std::move(left);
  g->right_ = std::move(right);
  // S = S_L x {1} union {1} x S_R
  Elem idl = g->left_->identity(), idr = g->right_->identity();
  for (const auto& s : g->left_->generators())
    g->gens_.push_back(join_product(s, idr));
  for (const auto& s : g->right_->generators())
    g->gens_.push_back(join_product(idl, s));
  return g;
}

Elem Group::identity() const {
  switch (kind_) {
    case GroupKind::Integers:
      return Elem{{0}};
    case GroupKind::Lattice: {
      Elem e;
      e.c.assign(dim_, 0);
      return e;
    }
    case GroupKind::Free:
      return Elem{};
    case GroupKind::FiniteTable:
      return Elem{{0}};
    case GroupKind::Product:
      return join_product(left_->identity(), right_->identity());
  }
  throw std::logic_error("unreachable");
}

Elem Group::mul(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case GroupKind::Integers:
      return Elem{{a.c.at(0) + b.c.at(0)}};
    case GroupKind::Lattice: {
      Elem e = a;
      for (int i = 0; i < dim_; ++i) e.c[i] += b.c.at(i);
      return e;
    }
    case GroupKind::Free: {
      std::vector<std::int32_t> w = a.c;
      w.insert(w.end(), b.c.begin(), b.c.end());
      return Elem{reduce_word(std::move(w))};
    }
    case GroupKind::FiniteTable:
      return Elem{{table_.at(a.c.at(0)).at(b.c.at(0))}};
    case GroupKind::Product: {
      Elem al, ar, bl, br;
      split_product(a, al, ar);
      split_product(b, bl, br);
      return join_product(left_->mul(al, bl), right_->mul(ar, br));
    }
  }
  throw std::logic_error("unreachable");
}

Elem Group::inv(const Elem& a) const {
  switch (kind_) {
    case GroupKind::Integers:
      return Elem{{-a.c.at(0)}};
    case GroupKind::Lattice: {
      Elem e = a;
      for (auto& v : e.c) v = -v;
      return e;
    }
    case GroupKind::Free: {
      Elem e;
      e.c.assign(a.c.rbegin(), a.c.rend());
      for (auto& v : e.c) v = -v;
      return e;
    }
    case GroupKind::FiniteTable:
      return Elem{{table_inv_.at(a.c.at(0))}};
    case GroupKind::Product: {
      Elem l, r;
      split_product(a, l, r);
      return join_product(left_->inv(l), right_->inv(r));
    }
  }
  throw std::logic_error("unreachable");
}

int Group::word_length(const Elem& a) const {
  switch (kind_) {
    case GroupKind::Integers:
      return static_cast<int>(std::abs(a.c.at(0)));
    case GroupKind::Lattice: {
      long s = 0;
      for (auto v : a.c) s += std::abs(v);
      return static_cast<int>(s);
    }
    case GroupKind::Free:
      return static_cast<int>(a.c.size());
    case GroupKind::FiniteTable:
      return table_dist_.at(a.c.at(0));
    case GroupKind::Product: {
      Elem l, r;
      split_product(a, l, r);
      return left_->word_length(l) + right_->word_length(r);
    }
  }
  throw std::logic_error("unreachable");
}

ElemSet Group::ball(int r, std::size_t budget) const {
  if (r < 0) throw std::invalid_argument("ball radius must be >= 0");
  std::set<Elem> seen;
  seen.insert(identity());
  std::vector<Elem> frontier = {identity()};
  for (int step = 0; step < r && !frontier.empty(); ++step) {
    std::vector<Elem> next;
    for (const auto& v : frontier)
      for (const auto& s : gens_) {
        Elem w = mul(v, s);
        if (seen.insert(w).second) {
          if (seen.size() > budget)
            throw BudgetExceeded("ball(" + std::to_string(r) +
                                 ") exceeds element budget " +
                                 std::to_string(budget));
          next.push_back(std::move(w));
        }
      }
    frontier = std::move(next);
  }
  return ElemSet(shared_from_this(),
                 std::vector<Elem>(seen.begin(), seen.end()));
}

ElemSet Group::ring(int r, int R, std::size_t budget) const {
  if (r >= R) throw std::invalid_argument("ring requires r < R");
  return ball(R, budget).set_minus(ball(r, budget));
}

std::optional<int> Group::diameter() const {
  switch (kind_) {
    case GroupKind::FiniteTable:
      return *std::max_element(table_dist_.begin(), table_dist_.end());
    case GroupKind::Product: {
      auto dl = left_->diameter(), dr = right_->diameter();
      if (dl && dr) return *dl + *dr;
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

bool Group::is_abelian() const {
  switch (kind_) {
    case GroupKind::Integers:
    case GroupKind::Lattice:
      return true;
    case GroupKind::Free:
      return dim_ == 1;
    case GroupKind::FiniteTable: {
      const auto n = table_.size();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          if (table_[a][b] != table_[b][a]) return false;
      return true;
    }
    case GroupKind::Product:
      return left_->is_abelian() && right_->is_abelian();
  }
  throw std::logic_error("unreachable");
}

bool Group::is_central(const Elem& g) const {
  switch (kind_) {
    case GroupKind::Integers:
    case GroupKind::Lattice:
      return true;
    case GroupKind::Free:
      return dim_ == 1 || g.c.empty();
    case GroupKind::FiniteTable: {
      const auto n = table_.size();
      auto a = g.c.at(0);
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a][b] != table_[b][a]) return false;
      return true;
    }
    case GroupKind::Product: {
      Elem l, r;
      split_product(g, l, r);
      return left_->is_central(l) && right_->is_central(r);
    }
  }
  throw std::logic_error("unreachable");
}

bool Group::same_group(const Group& other) const {
  if (this == &other) return true;
  return to_json() == other.to_json();
}

std::string Group::format(const Elem& e) const {
  switch (kind_) {
    case GroupKind::Integers:
      return std::to_string(e.c.at(0));
    case GroupKind::Lattice: {
      std::ostringstream os;
      os << '[';
      for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << e.c[i];
      os << ']';
      return os.str();
    }
    case GroupKind::Free: {
      if (e.c.empty()) return "1";
      std::string s;
      for (auto v : e.c)
        s += v > 0 ? static_cast<char>('a' + v - 1)
                   : static_cast<char>('A' - v - 1);
      return s;
    }
    case GroupKind::FiniteTable:
      return std::to_string(e.c.at(0));
    case GroupKind::Product: {
      Elem l, r;
      split_product(e, l, r);
      return "(" + left_->format(l) + "," + right_->format(r) + ")";
    }
  }
  throw std::logic_error("unreachable");
}

Elem Group::elem_from_json(const json& j) const {
  switch (kind_) {
    case GroupKind::Integers:
      return Elem{{j.get<std::int32_t>()}};
    case GroupKind::Lattice: {
      Elem e;
      e.c = j.get<std::vector<std::int32_t>>();
      if (static_cast<int>(e.c.size()) != dim_)
        throw std::invalid_argument("lattice element has wrong dimension");
      return e;
    }
    case GroupKind::Free:
      return parse(j.get<std::string>());
    case GroupKind::FiniteTable: {
      auto idx = j.get<std::int32_t>();
      if (idx < 0 || static_cast<std::size_t>(idx) >= table_.size())
        throw std::invalid_argument("table index out of range");
      return Elem{{idx}};
    }
    case GroupKind::Product: {
      if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("product element must be a pair");
      return join_product(left_->elem_from_json(j[0]),
                          right_->elem_from_json(j[1]));
    }
  }
  throw std::logic_error("unreachable");
}

json Group::elem_to_json(const Elem& e) const {
  switch (kind_) {
    case GroupKind::Integers:
      return e.c.at(0);
    case GroupKind::Lattice:
      return e.c;
    case GroupKind::Free:
      return format(e);
    case GroupKind::FiniteTable:
      return e.c.at(0);
    case GroupKind::Product: {
      Elem l, r;
      split_product(e, l, r);
      return json::array({left_->elem_to_json(l), right_->elem_to_json(r)});
    }
  }
  throw std::logic_error("unreachable");
}

Elem Group::parse(const std::string& s) const {
  switch (kind_) {
    case GroupKind::Free: {
      if (s == "1") return identity();
      std::vector<std::int32_t> w;
      for (char ch : s) {
        if (std::islower(static_cast<unsigned char>(ch)))
          w.push_back(ch - 'a' + 1);
        else if (std::isupper(static_cast<unsigned char>(ch)))
          w.push_back(-(ch - 'A' + 1));
        else
          throw std::invalid_argument("bad free-group letter: " + s);
      }
      for (auto v : w)
        if (std::abs(v) > dim_)
          throw std::invalid_argument("letter beyond free rank: " + s);
      return Elem{reduce_word(std::move(w))};
    }
    default:
      return elem_from_json(json::parse(s));
  }
}

json Group::to_json() const {
  json j;
  switch (kind_) {
    case GroupKind::Integers:
      j["kind"] = "integers";
      break;
    case GroupKind::Lattice:
      j["kind"] = "lattice";
      j["params"]["d"] = dim_;
      break;
    case GroupKind::Free:
      j["kind"] = "free";
      j["params"]["k"] = dim_;
      break;
    case GroupKind::FiniteTable: {
      j["kind"] = "finite-table";
      j["params"]["table"] = table_;
      std::vector<std::int32_t> gens;
      for (const auto& g : gens_) gens.push_back(g.c.at(0));
      j["params"]["generators"] = gens;
      break;
    }
    case GroupKind::Product:
      j["kind"] = "product";
      j["params"]["left"] = left_->to_json();
      j["params"]["right"] = right_->to_json();
      break;
  }
  return j;
}

GroupPtr Group::from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "integers") return integers();
  if (kind == "lattice") return lattice(j.at("params").at("d").get<int>());
  if (kind == "free") return free_group(j.at("params").at("k").get<int>());
  if (kind == "finite-table") {
    auto table =
        j.at("params").at("table").get<std::vector<std::vector<std::int32_t>>>();
    std::vector<std::int32_t> gens;
    if (j.at("params").contains("generators"))
      gens = j.at("params").at("generators").get<std::vector<std::int32_t>>();
    return finite_table(std::move(table), std::move(gens));
  }
  if (kind == "product")
    return product(from_json(j.at("params").at("left")),
                   from_json(j.at("params").at("right")));
  throw std::invalid_argument("unknown group kind: " + kind);
}

ElemSet set_product(const ElemSet& F, const ElemSet& K) {
  const auto& g = F.group();
  if (K.group() && g && !g->same_group(*K.group()))
    throw std::invalid_argument("set_product across different groups");
  std::vector<Elem> out;
  out.reserve(F.size() * K.size());
  for (const auto& a : F.elems())
    for (const auto& b : K.elems()) out.push_back(g->mul(a, b));
  return ElemSet(g, std::move(out));
}

ElemSet set_inverse(const ElemSet& F) {
  std::vector<Elem> out;
  for (const auto& a : F.elems()) out.push_back(F.group()->inv(a));
  return ElemSet(F.group(), std::move(out));
}

ElemSet translate_set(const Elem& g, const ElemSet& F) {
  std::vector<Elem> out;
  for (const auto& a : F.elems()) out.push_back(F.group()->mul(g, a));
  return ElemSet(F.group(), std::move(out));
}

bool is_k_disjoint(const std::vector<ElemSet>& family, const ElemSet& K) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    ElemSet aik = set_product(family[i], K);
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (j == i) continue;
      if (!aik.set_intersect(family[j]).empty()) return false;
    }
  }
  return true;
}

ElemSet parse_set_expr(const GroupPtr& g, const std::string& expr,
                       std::size_t budget) {
  std::string s = expr;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.rfind("B(", 0) == 0 && s.back() == ')') {
    int r = std::stoi(s.substr(2, s.size() - 3));
    return g->ball(r, budget);
  }
  if (s.rfind("ring(", 0) == 0 && s.back() == ')') {
    auto body = s.substr(5, s.size() - 6);
    auto comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("ring(r,R) needs two arguments");
    int r = std::stoi(body.substr(0, comma));
    int R = std::stoi(body.substr(comma + 1));
    return g->ring(r, R, budget);
  }
  json parsed = json::parse(s, nullptr, false);
  if (parsed.is_discarded())
    throw std::invalid_argument("unrecognized set expression: " + expr);
  return set_from_json(g, parsed);
}

json set_to_json(const ElemSet& s) {
  json arr = json::array();
  for (const auto& e : s.elems()) arr.push_back(s.group()->elem_to_json(e));
  return arr;
}

ElemSet set_from_json(const GroupPtr& g, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("element set must be an array");
  std::vector<Elem> out;
  for (const auto& item : j) out.push_back(g->elem_from_json(item));
  return ElemSet(g, std::move(out));
}

}  // namespace sdtk
