#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdtk/group.hpp"

namespace sdtk {

/// Ordered list of distinct opaque symbols.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);
  /// Convenience: symbols "0","1",...,"n-1".
  static std::shared_ptr<const Alphabet> numeric(int n);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(int i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  int index_of(const std::string& s) const;

  json to_json() const;
  static std::shared_ptr<const Alphabet> from_json(const json& j);

 private:
  std::vector<std::string> symbols_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Finitely supported pattern: a total map support -> alphabet symbol,
/// stored in canonical support order. Equality includes the support.
class Pattern {
 public:
  Pattern() = default;
  Pattern(GroupPtr group, AlphabetPtr alphabet, ElemSet support,
          std::vector<int> values);
  /// Empty-support pattern.
  static Pattern empty(GroupPtr group, AlphabetPtr alphabet);

  const GroupPtr& group() const { return group_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  const ElemSet& support() const { return support_; }
  const std::vector<int>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// Value at g; g must lie in the support.
  int at(const Elem& g) const;
  std::optional<int> maybe_at(const Elem& g) const;

  bool operator==(const Pattern& other) const {
    return support_ == other.support_ && values_ == other.values_;
  }

  json to_json() const;
  static Pattern from_json(const GroupPtr& g, const AlphabetPtr& a,
                           const json& j);
  std::string brief() const;

 private:
  GroupPtr group_;
  AlphabetPtr alphabet_;
  ElemSet support_;
  std::vector<int> values_;
};

/// gp with support gF and gp(t) = p(g^{-1}t).
Pattern translate(const Elem& g, const Pattern& p);

struct ConcatResult {
  std::optional<Pattern> pattern;      // set iff the concatenation is defined
  std::optional<Elem> conflict_point;  // witness when it is not
};

/// p v q: union support; defined iff p and q agree on the common support.
ConcatResult concat(const Pattern& p, const Pattern& q);

/// p agrees with translate(g,p) on support(p) and g support(p); vacuously
/// true when the intersection is empty.
bool is_g_overlapping(const Pattern& p, const Elem& g);
/// First point of support(p) meet g support(p) where p and gp disagree.
std::optional<Elem> overlap_disagreement(const Pattern& p, const Elem& g);

/// Restriction of p to F; requires F subset of support(p).
Pattern restrict(const Pattern& p, const ElemSet& F);
bool is_subpattern(const Pattern& p, const Pattern& q);

}  // namespace sdtk
