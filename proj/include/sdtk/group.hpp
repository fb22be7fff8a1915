#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace sdtk {

using json = nlohmann::json;

/// Error raised when an enumeration would exceed a caller-supplied budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

enum class GroupKind { Integers, Lattice, Free, FiniteTable, Product };

/// Canonical form of a group element, encoded as a flat integer payload.
///
/// Interpretation depends on the owning Group:
///   Integers     {n}
///   Lattice(d)   d coordinates
///   Free(k)      reduced word, letters +-1..+-k
///   FiniteTable  {index}
///   Product      {len(left), left payload..., right payload...}
///
/// The payload ordering (lexicographic on the encoding) is the canonical
/// element ordering used everywhere determinism matters.
struct Elem {
  std::vector<std::int32_t> c;
  auto operator<=>(const Elem&) const = default;
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// Deduplicated, canonically ordered finite subset of a group.
class ElemSet {
 public:
  ElemSet() = default;
  ElemSet(GroupPtr g, std::vector<Elem> elems);

  const GroupPtr& group() const { return group_; }
  const std::vector<Elem>& elems() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  bool contains(const Elem& e) const;
  /// Index of e in canonical order, or -1.
  std::ptrdiff_t index_of(const Elem& e) const;

  ElemSet set_union(const ElemSet& other) const;
  ElemSet set_minus(const ElemSet& other) const;
  ElemSet set_intersect(const ElemSet& other) const;
  bool subset_of(const ElemSet& other) const;
  bool operator==(const ElemSet& other) const { return elems_ == other.elems_; }

 private:
  GroupPtr group_;
  std::vector<Elem> elems_;
};

/// A finitely generated group with computable canonical forms, a fixed
/// symmetric generating set, and the word metric it induces.
class Group : public std::enable_shared_from_this<Group> {
 public:
  static GroupPtr integers();
  static GroupPtr lattice(int d);
  static GroupPtr free_group(int k);
  /// Table is n x n with entries in [0,n); index 0 need not be the identity.
  /// Group axioms are verified once here. Generators are table indices and
  /// are symmetrized; they must generate the whole group.
  static GroupPtr finite_table(std::vector<std::vector<std::int32_t>> table,
                               std::vector<std::int32_t> generators);
  static GroupPtr product(GroupPtr left, GroupPtr right);

  GroupKind kind() const { return kind_; }
  int dim() const { return dim_; }  // d for Lattice, k for Free
  const GroupPtr& left() const { return left_; }
  const GroupPtr& right() const { return right_; }
  std::size_t table_order() const { return table_.size(); }

  Elem identity() const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  int word_length(const Elem& a) const;
  bool is_identity(const Elem& a) const { return a == identity(); }

  /// Generating set S (symmetric, fixed at construction).
  const std::vector<Elem>& generators() const { return gens_; }

  /// B(r) = {g : |g|_S <= r}, by breadth-first expansion. Throws
  /// BudgetExceeded if the ball would hold more than `budget` elements.
  ElemSet ball(int r, std::size_t budget = 1u << 20) const;
  /// B(r,R) = B(R) \ B(r). Requires r < R.
  ElemSet ring(int r, int R, std::size_t budget = 1u << 20) const;

  /// diameter of the Cayley graph; nullopt means infinite.
  std::optional<int> diameter() const;

  bool is_abelian() const;
  /// True when g is known to be central. For free groups of rank >= 2 only
  /// the identity qualifies; for finite tables the table decides.
  bool is_central(const Elem& g) const;

  bool same_group(const Group& other) const;

  std::string format(const Elem& e) const;
  Elem parse(const std::string& s) const;
  Elem elem_from_json(const json& j) const;
  json elem_to_json(const Elem& e) const;

  json to_json() const;
  static GroupPtr from_json(const json& j);

 private:
  Group() = default;
  void validate_table() const;

  GroupKind kind_ = GroupKind::Integers;
  int dim_ = 0;
  std::vector<std::vector<std::int32_t>> table_;
  std::vector<std::int32_t> table_inv_;
  std::vector<int> table_dist_;  // word length per index, BFS once
  std::vector<Elem> gens_;
  GroupPtr left_, right_;
};

/// FK = {gh : g in F, h in K}, deduplicated.
ElemSet set_product(const ElemSet& F, const ElemSet& K);
ElemSet set_inverse(const ElemSet& F);
ElemSet translate_set(const Elem& g, const ElemSet& F);

/// K-disjointness of a family: A_i K misses every A_j, j != i.
bool is_k_disjoint(const std::vector<ElemSet>& family, const ElemSet& K);

/// Parses the CLI set grammar: "B(r)", "ring(r,R)", or a JSON array of
/// element forms.
ElemSet parse_set_expr(const GroupPtr& g, const std::string& expr,
                       std::size_t budget = 1u << 20);

json set_to_json(const ElemSet& s);
ElemSet set_from_json(const GroupPtr& g, const json& j);

}  // namespace sdtk
