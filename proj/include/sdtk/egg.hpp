#pragma once

#include "sdtk/marker.hpp"
#include "sdtk/rule.hpp"

namespace sdtk {

/// A family of admissible patterns on W sharing one marker ("white") on
/// W minus Y and differing only on Y ("yolks"). Yolk i together with the
/// white is egg i.
struct EggCollection {
  ElemSet Y;
  ElemSet W;
  Pattern white;                // support W minus Y
  std::vector<Pattern> yolks;   // each supported on Y, pairwise distinct
  ElemSet fix;                  // declared Fix(X), default {1_G}

  std::size_t size() const { return yolks.size(); }
  /// white joined with yolk i.
  Pattern egg(std::size_t i) const;
  /// Egg-model alphabet: one symbol per egg plus the trailing star.
  AlphabetPtr model_alphabet() const;
  int star_symbol() const { return static_cast<int>(yolks.size()); }

  json to_json() const;
  static EggCollection from_json(const GroupPtr& g, const AlphabetPtr& a,
                                 const json& j);
};

enum class ExchangeMode { FullShift, StrongTmp, Declared };

/// Checks the marker condition exactly and exchangeability per mode:
/// full-shift collections exchange trivially; strong-tmp mode verifies the
/// TMP collar YM of Y stays inside W (so the shared white pins the collar);
/// declared mode records the assumption.
CheckResult verify_egg_collection(const LanguageOracle& oracle,
                                  const EggCollection& E, ExchangeMode mode,
                                  std::size_t budget = 1u << 20);

/// Maximal collection over a given frame: the white is the first marker in
/// canonical order at (Y,W) and the yolks are all admissible extensions.
EggCollection build_linear_eggs(const LanguageOracle& oracle, const ElemSet& Y,
                                const ElemSet& W,
                                std::size_t budget = 1u << 20);

/// {yolk restricted to F : yolk in E}, deduplicated. Requires F inside Y.
std::vector<Pattern> realizes(const EggCollection& E, const ElemSet& F);

/// Egg-detection factor: symbol at g is the index of the egg occupying gW
/// in the window, star otherwise. Output support is {g : gW inside
/// support(w)} (shrinking support). Verifies the protective-bubble
/// invariant on the detections it reports.
Pattern eta(const EggCollection& E, const Pattern& w);

/// The automorphism permuting yolks in place: every detected egg's yolk is
/// replaced per sigma, all other cells copied.
LocalRule phi_sigma(const EggCollection& E, const std::vector<int>& sigma,
                    std::size_t budget = 1u << 20);

/// Lift of a star-fixing egg-model automorphism phi to the carrier shift:
/// yolk cells of detected eggs are rewritten to the egg phi selects, all
/// other cells copied. Throws when phi moves a star on a consulted window.
LocalRule lift_egg_automorphism(const EggCollection& E, const LocalRule& phi,
                                std::size_t budget = 1u << 20);

}  // namespace sdtk
