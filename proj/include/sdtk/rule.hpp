#pragma once

#include <functional>
#include <map>

#include "sdtk/subshift.hpp"

namespace sdtk {

/// Finite-memory local rule: output at g is a function of the window
/// (g^{-1}x)|_F, where F is the memory set. Backed either by a dense table
/// indexed in mixed radix over the canonical memory order, or by a
/// memoized procedure when the table would not fit the budget.
class LocalRule {
 public:
  LocalRule() = default;
  /// Dense rule. table[index] with index = sum of digit(f) * |A|^position,
  /// digits listed in canonical memory order, most significant first.
  LocalRule(GroupPtr group, AlphabetPtr in_alpha, AlphabetPtr out_alpha,
            ElemSet memory, std::vector<int> table);
  /// Procedure-backed rule; fn receives window values in canonical memory
  /// order.
  LocalRule(GroupPtr group, AlphabetPtr in_alpha, AlphabetPtr out_alpha,
            ElemSet memory, std::function<int(const std::vector<int>&)> fn);

  const GroupPtr& group() const { return group_; }
  const AlphabetPtr& in_alphabet() const { return in_alpha_; }
  const AlphabetPtr& out_alphabet() const { return out_alpha_; }
  const ElemSet& memory() const { return memory_; }
  bool dense() const { return !table_.empty() || memory_.empty(); }

  /// Output symbol for window values given in canonical memory order.
  int eval(const std::vector<int>& values) const;

  /// Number of table entries a dense representation needs.
  long double table_size() const;
  /// Materializes the dense table (may throw BudgetExceeded).
  std::vector<int> materialize(std::size_t budget = 1u << 20) const;

  json to_json(std::size_t budget = 1u << 20) const;
  static LocalRule from_json(const json& j);

  static LocalRule identity(GroupPtr group, AlphabetPtr alpha);

 private:
  GroupPtr group_;
  AlphabetPtr in_alpha_, out_alpha_;
  ElemSet memory_;
  std::vector<int> table_;
  std::function<int(const std::vector<int>&)> fn_;
  mutable std::map<std::vector<int>, int> memo_;
};

struct RuleAutomorphism {
  LocalRule forward;
  LocalRule inverse;

  json to_json(std::size_t budget = 1u << 20) const;
  static RuleAutomorphism from_json(const json& j);
};

/// Applies the rule to a finite window; the output is defined exactly on
/// {g : g.memory inside support(w)}.
Pattern apply(const LocalRule& rule, const Pattern& w);

/// Rule computing r1 after r2 (first r2, then r1), with memory
/// memory(r1).memory(r2).
LocalRule compose(const LocalRule& r1, const LocalRule& r2,
                  std::size_t budget = 1u << 20);

/// The right shift tau_g: x maps to (h -> x(hg)). Memory {g}.
LocalRule tau(GroupPtr group, AlphabetPtr alpha, const Elem& g);

/// k-th root of tau_h on the alphabet of k-tuples over n symbols (encoded
/// as integers base n, coordinate 1 least significant). Memory {1_G, h}.
RuleAutomorphism slow_shift(GroupPtr group, int n, int k, const Elem& h);

/// The k-tuple alphabet used by slow_shift.
AlphabetPtr tuple_alphabet(int n, int k);

struct RuleComparison {
  bool equal = true;
  std::optional<Pattern> witness;      // language-based comparison
  std::optional<std::vector<int>> witness_values;  // table comparison
};

/// Compares rules on every admissible pattern over the union memory.
RuleComparison equals_on_language(const LocalRule& r1, const LocalRule& r2,
                                  const LanguageOracle& oracle,
                                  std::size_t budget = 1u << 20);

/// Compares rules on every value assignment of the union memory (full-shift
/// table equality); avoids materializing pattern objects.
RuleComparison equals_as_tables(const LocalRule& r1, const LocalRule& r2,
                                std::size_t budget = 1u << 24);

struct EnumerationResult {
  std::vector<RuleAutomorphism> automorphisms;
  std::size_t tables_scanned = 0;
  /// Rules rejected only because no inverse of radius <= inv_radius was
  /// found; their invertibility is undecided at this bound.
  std::size_t inconclusive_rejections = 0;
};

/// All automorphisms of the full shift over the integers with memory inside
/// B(r) and inverse memory inside B(inv_radius), by exhaustive table scan
/// and inverse synthesis.
EnumerationResult enumerate_automorphisms(const GroupPtr& z,
                                          const AlphabetPtr& alpha, int r,
                                          int inv_radius,
                                          std::size_t budget = 1u << 24);

struct CenterTestResult {
  /// Probes that fail to commute, with witnesses. Empty is
  /// consistent-with-central (not a proof); nonempty certifies
  /// non-centrality.
  std::vector<std::pair<std::size_t, Pattern>> failures;
  std::size_t probes_run = 0;
};

CenterTestResult center_test(const RuleAutomorphism& candidate,
                             const std::vector<LocalRule>& probes,
                             const LanguageOracle& oracle,
                             std::size_t budget = 1u << 20);

}  // namespace sdtk
