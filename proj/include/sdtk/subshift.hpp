#pragma once

#include <optional>
#include <vector>

#include "sdtk/pattern.hpp"

namespace sdtk {

enum class SubshiftKind { Full, Sft, Oracle };

/// Declarative description of a subshift: the full shift, an SFT given by
/// forbidden patterns, or an externally declared ("oracle") shift for which
/// only the declared constants are trusted.
struct SubshiftSpec {
  GroupPtr group;
  AlphabetPtr alphabet;
  SubshiftKind kind = SubshiftKind::Full;
  std::vector<Pattern> forbidden;
  std::optional<ElemSet> si_constant;   // K
  std::optional<ElemSet> tmp_constant;  // M
  std::optional<ElemSet> fix;           // declared Fix(X)

  json to_json() const;
  static SubshiftSpec from_json(const json& j);
  /// Human-readable violations of the declared invariants (empty when clean).
  std::vector<std::string> validate() const;
};

struct SubgroupEmbedding;

/// Language queries against a spec, with a coherence margin controlling how
/// far candidate patterns must extend admissibly. For restrictions to a
/// subgroup, queries are routed through the ambient oracle.
struct LanguageOracle {
  SubshiftSpec spec;
  int margin = 1;
  std::shared_ptr<const LanguageOracle> ambient;  // set for restrictions
  std::shared_ptr<const SubgroupEmbedding> embedding;
};

/// Injective homomorphism H -> G determined by images of H's generators.
/// Supported for H of kind Integers, Lattice, or Free.
struct SubgroupEmbedding {
  GroupPtr H;
  GroupPtr G;
  std::vector<Elem> gen_images;  // one per generator of H, positive part

  Elem embed(const Elem& h) const;
  ElemSet embed_set(const ElemSet& F) const;
};

enum class Exactness { Exact, Upper, Inconclusive };

std::string exactness_label(Exactness e);

struct LanguageResult {
  std::vector<Pattern> patterns;  // canonical order
  Exactness exactness = Exactness::Exact;
};

/// Pass/fail outcome of an empirical check, with JSON witness details.
struct CheckResult {
  bool pass = true;
  json details = json::object();
};

/// True iff no translate of a forbidden pattern fits inside w's support with
/// full agreement. Always true for full shifts.
bool locally_admissible(const SubshiftSpec& spec, const Pattern& w);

/// The patterns on F admissible in the subshift. Exact for full shifts and
/// SFTs over the integers (candidates are certified bi-infinitely
/// extendable); an over-approximation labeled Upper otherwise, where
/// candidates need only extend admissibly to F.ball(margin).
LanguageResult language(const LanguageOracle& oracle, const ElemSet& F,
                        std::size_t budget = 1u << 20);

/// |L_F| shortcut that avoids materializing patterns when possible.
std::size_t language_count(const LanguageOracle& oracle, const ElemSet& F,
                           std::size_t budget = 1u << 20);

/// log2 of the number of admissible words on an n-point interval of an
/// integer-group SFT, via transfer-graph path counting (no
/// materialization).
long double z_interval_log2_count(const SubshiftSpec& spec, int n,
                                  std::size_t budget = 1u << 20);

/// |L_{1_G}| <= 1, i.e. the subshift has at most one point.
bool is_trivial_subshift(const LanguageOracle& oracle);

/// Fix(X) = {g : gx = x for all x}. Computed for full shifts and for finite
/// groups (brute force over all points); otherwise the declared value.
ElemSet fix_subgroup(const SubshiftSpec& spec, std::size_t budget = 1u << 20);

/// Exhaustive test of the strong-irreducibility property with constant K:
/// over all support pairs S,T inside test_ball with |S|,|T| <= size_cap and
/// SK disjoint from T, every admissible p on S and q on T concatenate to an
/// admissible pattern on S u T.
CheckResult check_strong_irreducibility(const LanguageOracle& oracle,
                                        const ElemSet& K, int size_cap,
                                        const ElemSet& test_ball,
                                        std::size_t budget = 1u << 20);

/// Exhaustive test of the strong topological Markov property with constant
/// M: for every F inside test_ball with |F| <= size_cap and admissible
/// window pair on FM agreeing on FM minus F, the splice is admissible.
CheckResult check_strong_tmp(const LanguageOracle& oracle, const ElemSet& M,
                             int size_cap, const ElemSet& test_ball,
                             std::size_t budget = 1u << 20);

/// Evaluates |L_F| >= |L_{1_G}|^{|F|/(2|K|)} and reports both sides.
CheckResult language_growth_check(const LanguageOracle& oracle,
                                  const ElemSet& K, const ElemSet& F,
                                  std::size_t budget = 1u << 20);

/// Oracle for X|_H answering via the ambient oracle on embedded supports.
/// Declared constants inside H carry over. Throws when a declared K is not
/// contained in the image of H.
LanguageOracle restrict_subshift(const LanguageOracle& ambient,
                                 const SubgroupEmbedding& emb);

}  // namespace sdtk
