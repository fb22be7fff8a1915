#pragma once

#include "sdtk/subshift.hpp"

namespace sdtk {

/// Search/verification instance: find patterns on W minus Y that an
/// admissible configuration can repeat only at declared-fix translates.
struct MarkerProblem {
  LanguageOracle oracle;
  ElemSet Y;
  ElemSet W;
  /// Declared Fix(X); defaults to {1_G} when absent in the subshift spec.
  ElemSet fix;
  bool fix_was_declared = false;

  static MarkerProblem make(LanguageOracle oracle, ElemSet Y, ElemSet W);
};

/// Proof object: for every g in WY^{-1} outside fix, a point h of
/// support meet g.support where the pattern and its g-translate disagree.
struct MarkerCertificate {
  Pattern pattern;
  std::vector<std::pair<Elem, Elem>> witnesses;  // (g, h)
  Exactness admissibility = Exactness::Exact;

  json to_json() const;
  /// Re-checks every witness against the pattern.
  bool revalidate(const GroupPtr& g) const;
};

struct MarkerVerifyResult {
  std::optional<MarkerCertificate> certificate;
  /// When verification fails: the first g where the pattern self-overlaps
  /// (including vacuously, when support meet g.support is empty).
  std::optional<Elem> overlapping_g;
};

/// Certificate for p as a marker at (Y,W), or the first failing g.
/// Throws on wrong support or inadmissible p.
MarkerVerifyResult verify_marker(const MarkerProblem& problem,
                                 const Pattern& p,
                                 std::size_t budget = 1u << 20);

enum class SearchStrategy { Lexicographic, Random };

struct SearchOptions {
  SearchStrategy strategy = SearchStrategy::Lexicographic;
  std::uint64_t seed = 0;
  std::size_t trials = 1000;  // random strategy only
  std::size_t budget = 1u << 20;
  int workers = 1;  // lexicographic scan partitions across threads
};

struct MarkerSearchResult {
  std::optional<MarkerCertificate> found;
  /// True when not-found is a proof of nonexistence at (Y,W): the
  /// lexicographic strategy scanned every admissible candidate.
  bool exhaustive = false;
  std::size_t tried = 0;
};

/// First marker in canonical order (lexicographic strategy), or a sampled
/// one (random strategy). Random not-found is inconclusive.
MarkerSearchResult search_marker(const MarkerProblem& problem,
                                 const SearchOptions& opts);

/// Extends a verified (Y,W)-marker p to q on W minus Y' for smaller Y'.
/// Success is guaranteed by marker monotonicity; the re-verification is run
/// anyway and a violation reported as an internal inconsistency.
MarkerVerifyResult complete_marker(const MarkerProblem& problem,
                                   const Pattern& p, const ElemSet& Yp,
                                   const Pattern& q,
                                   std::size_t budget = 1u << 20);

/// Numeric premises guaranteeing a (B(r), B(37r))-marker:
///   (1) |B(38r)| < |L_{B(r-k)}(X)|
///   (2) diam(G) > 38r
///   (3) r > 16k|K^3| + 2k
struct FeasibilityResult {
  bool size_condition = false;
  bool diameter_condition = false;
  bool radius_condition = false;
  bool verdict = false;  // all three
  json details;
};

FeasibilityResult feasibility_conditions(const LanguageOracle& oracle,
                                         const ElemSet& K, int k, int r,
                                         std::size_t budget = 1u << 20);

/// log2 of |B(n)|, computed by formula or sphere-size convolution so that
/// large balls need not be materialized.
long double ball_log2_count(const GroupPtr& g, int n);

/// log2 of |L_F(X)| or a stated lower bound for it.
struct CountEstimate {
  long double log2_count = 0;
  std::string method;       // "formula", "transfer", "enumeration", "growth"
  bool lower_bound = false; // true when only the growth bound was available
};

CountEstimate language_log2_count(const LanguageOracle& oracle,
                                  const ElemSet& F,
                                  const std::optional<ElemSet>& K,
                                  std::size_t budget = 1u << 20);

}  // namespace sdtk
