#include "sdtk/egg.hpp"

#include <algorithm>
#include <set>

namespace sdtk {

Pattern EggCollection::egg(std::size_t i) const {
  auto r = concat(white, yolks.at(i));
  return *r.pattern;
}

AlphabetPtr EggCollection::model_alphabet() const {
  std::vector<std::string> syms;
  for (std::size_t i = 0; i < yolks.size(); ++i)
    syms.push_back("e" + std::to_string(i));
  syms.push_back("*");
  return std::make_shared<Alphabet>(std::move(syms));
}

json EggCollection::to_json() const {
  json ys = json::array();
  for (const auto& y : yolks) ys.push_back(y.to_json());
  return json{{"Y", set_to_json(Y)},
              {"W", set_to_json(W)},
              {"white", white.to_json()},
              {"yolks", ys},
              {"fix", set_to_json(fix)}};
}

EggCollection EggCollection::from_json(const GroupPtr& g, const AlphabetPtr& a,
                                       const json& j) {
  EggCollection e;
  e.Y = set_from_json(g, j.at("Y"));
  e.W = set_from_json(g, j.at("W"));
  e.white = Pattern::from_json(g, a, j.at("white"));
  for (const auto& yj : j.at("yolks"))
    e.yolks.push_back(Pattern::from_json(g, a, yj));
  e.fix = j.contains("fix") ? set_from_json(g, j.at("fix"))
                            : ElemSet(g, {g->identity()});
  return e;
}

CheckResult verify_egg_collection(const LanguageOracle& oracle,
                                  const EggCollection& E, ExchangeMode mode,
                                  std::size_t budget) {
  CheckResult res;
  json& d = res.details;
  auto fail = [&](const std::string& reason, json witness = nullptr) {
    res.pass = false;
    d["reason"] = reason;
    if (!witness.is_null()) d["witness"] = witness;
  };

  ElemSet white_support = E.W.set_minus(E.Y);
  if (!(E.white.support() == white_support))
    return fail("white support is not W minus Y"), res;
  for (const auto& y : E.yolks)
    if (!(y.support() == E.Y))
      return fail("yolk support is not Y", y.to_json()), res;
  for (std::size_t i = 0; i < E.yolks.size(); ++i)
    for (std::size_t j = i + 1; j < E.yolks.size(); ++j)
      if (E.yolks[i] == E.yolks[j])
        return fail("duplicate yolks", E.yolks[i].to_json()), res;

  MarkerProblem prob;
  prob.oracle = oracle;
  prob.Y = E.Y;
  prob.W = E.W;
  prob.fix = E.fix;
  auto mv = verify_marker(prob, E.white, budget);
  if (!mv.certificate)
    return fail("white is not a marker",
                oracle.spec.group->elem_to_json(*mv.overlapping_g)),
           res;
  d["marker_certificate"] = mv.certificate->to_json();

  auto langW = language(oracle, E.W, budget);
  d["exactness"] = exactness_label(langW.exactness);
  for (std::size_t i = 0; i < E.size(); ++i) {
    Pattern q = E.egg(i);
    bool member = false;
    for (const auto& p : langW.patterns)
      if (p == q) {
        member = true;
        break;
      }
    if (!member) return fail("egg is not admissible", q.to_json()), res;
  }

  switch (mode) {
    case ExchangeMode::FullShift:
      if (oracle.spec.kind != SubshiftKind::Full &&
          !oracle.spec.forbidden.empty())
        return fail("full-shift exchange mode on a non-full subshift"), res;
      d["exchange"] = "full-shift";
      break;
    case ExchangeMode::StrongTmp: {
      if (!oracle.spec.tmp_constant)
        return fail("strong-tmp exchange mode without a declared M"), res;
      ElemSet collar = set_product(E.Y, *oracle.spec.tmp_constant);
      if (!collar.subset_of(E.W))
        return fail("TMP collar YM escapes W", set_to_json(collar)), res;
      d["exchange"] = "strong-tmp collar inside W";
      break;
    }
    case ExchangeMode::Declared:
      d["exchange"] = "declared (assumed, not verified)";
      break;
  }
  if (E.size() <= 1) d["flag"] = "collection has a single egg";
  d["egg_count"] = E.size();
  return res;
}

EggCollection build_linear_eggs(const LanguageOracle& oracle, const ElemSet& Y,
                                const ElemSet& W, std::size_t budget) {
  if (is_trivial_subshift(oracle))
    throw std::invalid_argument("trivial subshift has no marker frame");
  MarkerProblem prob = MarkerProblem::make(oracle, Y, W);
  SearchOptions opts;
  opts.budget = budget;
  auto sr = search_marker(prob, opts);
  if (!sr.found)
    throw std::invalid_argument("no marker at this (Y,W) frame");
  EggCollection E;
  E.Y = Y;
  E.W = W;
  E.white = sr.found->pattern;
  E.fix = prob.fix;
  auto langW = language(oracle, W, budget);
  ElemSet white_support = W.set_minus(Y);
  for (const auto& q : langW.patterns)
    if (restrict(q, white_support) == E.white)
      E.yolks.push_back(restrict(q, Y));
  return E;
}

std::vector<Pattern> realizes(const EggCollection& E, const ElemSet& F) {
  if (!F.subset_of(E.Y))
    throw std::invalid_argument("realization support must lie inside Y");
  std::vector<Pattern> out;
  std::set<std::vector<int>> seen;
  for (const auto& y : E.yolks) {
    Pattern r = restrict(y, F);
    if (seen.insert(r.values()).second) out.push_back(std::move(r));
  }
  return out;
}

namespace {

/// Index of the egg occupying gW in w, or nullopt.
std::optional<std::size_t> detect_egg(const EggCollection& E, const Pattern& w,
                                      const Elem& g) {
  const auto& grp = w.group();
  for (std::size_t i = 0; i < E.size(); ++i) {
    Pattern q = E.egg(i);
    bool match = true;
    for (std::size_t t = 0; t < q.size(); ++t) {
      auto v = w.maybe_at(grp->mul(g, q.support().elems()[t]));
      if (!v || *v != q.values()[t]) {
        match = false;
        break;
      }
    }
    if (match) return i;
  }
  return std::nullopt;
}

}  // namespace

Pattern eta(const EggCollection& E, const Pattern& w) {
  const auto& grp = w.group();
  auto model = E.model_alphabet();
  std::vector<Elem> support;
  std::vector<int> values;
  std::vector<Elem> detected;
  ElemSet candidates = set_product(w.support(), set_inverse(E.W));
  for (const auto& g : candidates.elems()) {
    bool inside = true;
    for (const auto& t : E.W.elems())
      if (!w.support().contains(grp->mul(g, t))) {
        inside = false;
        break;
      }
    if (!inside) continue;
    auto idx = detect_egg(E, w, g);
    support.push_back(g);
    values.push_back(idx ? static_cast<int>(*idx) : E.star_symbol());
    if (idx) detected.push_back(g);
  }
  // Protective bubble: distinct detections (mod fix) keep their frames
  // apart. A violation would contradict the white being a marker.
  for (const auto& g : detected)
    for (const auto& gp : detected) {
      if (E.fix.contains(grp->mul(gp, grp->inv(g)))) continue;
      if (!translate_set(gp, E.Y)
               .set_intersect(translate_set(g, E.W))
               .empty())
        throw std::logic_error("egg detections violate the marker bubble");
    }
  return Pattern(grp, model, ElemSet(grp, std::move(support)),
                 std::move(values));
}

LocalRule phi_sigma(const EggCollection& E, const std::vector<int>& sigma,
                    std::size_t budget) {
  if (sigma.size() != E.size())
    throw std::invalid_argument("permutation arity mismatch");
  {
    std::vector<bool> hit(E.size(), false);
    for (int s : sigma) {
      if (s < 0 || static_cast<std::size_t>(s) >= E.size() ||
          hit[static_cast<std::size_t>(s)])
        throw std::invalid_argument("sigma is not a permutation");
      hit[static_cast<std::size_t>(s)] = true;
    }
  }
  const auto& grp = E.white.group();
  const auto& alpha = E.white.alphabet();
  ElemSet mem = set_product(set_inverse(E.Y), E.W)
                    .set_union(ElemSet(grp, {grp->identity()}));
  // For each yolk cell y0 and egg cell t, where h.t lands in the memory
  // (h = y0^{-1}); plus each egg's full value list in the same cell order.
  std::vector<std::vector<std::size_t>> cell_idx;
  for (const auto& y0 : E.Y.elems()) {
    Elem h = grp->inv(y0);
    std::vector<std::size_t> row;
    for (const auto& t : E.W.elems())
      row.push_back(static_cast<std::size_t>(mem.index_of(grp->mul(h, t))));
    cell_idx.push_back(std::move(row));
  }
  std::vector<std::vector<int>> egg_vals;
  for (std::size_t i = 0; i < E.size(); ++i) {
    Pattern q = E.egg(i);
    std::vector<int> vals;
    for (const auto& t : E.W.elems()) vals.push_back(q.at(t));
    egg_vals.push_back(std::move(vals));
  }
  std::vector<std::vector<int>> sig_yolk_at;  // [egg][yolk cell index]
  for (std::size_t i = 0; i < E.size(); ++i) {
    std::vector<int> vals;
    for (const auto& y0 : E.Y.elems())
      vals.push_back(E.yolks[static_cast<std::size_t>(sigma[i])].at(y0));
    sig_yolk_at.push_back(std::move(vals));
  }
  std::size_t id_idx = static_cast<std::size_t>(mem.index_of(grp->identity()));
  std::size_t eggs = E.size();
  auto fn = [cell_idx, egg_vals, sig_yolk_at, id_idx,
             eggs](const std::vector<int>& v) {
    for (std::size_t yi = 0; yi < cell_idx.size(); ++yi) {
      for (std::size_t i = 0; i < eggs; ++i) {
        bool match = true;
        for (std::size_t t = 0; t < cell_idx[yi].size(); ++t)
          if (v[cell_idx[yi][t]] != egg_vals[i][t]) {
            match = false;
            break;
          }
        if (match) return sig_yolk_at[i][yi];
      }
    }
    return v[id_idx];
  };
  LocalRule rule(grp, alpha, alpha, mem, fn);
  if (rule.table_size() <= static_cast<long double>(budget))
    return LocalRule(grp, alpha, alpha, mem, rule.materialize(budget));
  return rule;
}

LocalRule lift_egg_automorphism(const EggCollection& E, const LocalRule& phi,
                                std::size_t budget) {
  const auto& grp = E.white.group();
  const auto& alpha = E.white.alphabet();
  if (phi.in_alphabet()->size() != E.size() + 1)
    throw std::invalid_argument(
        "egg-model rule alphabet does not match the collection");
  ElemSet Fp = phi.memory().set_union(ElemSet(grp, {grp->identity()}));
  ElemSet mem = set_product(set_inverse(E.Y), set_product(Fp, E.W))
                    .set_union(ElemSet(grp, {grp->identity()}));

  // cell_idx[yolk cell][phi memory cell][egg cell] -> memory position;
  // self_row[yolk cell][egg cell] covers the detection site h itself.
  std::vector<std::vector<std::vector<std::size_t>>> cell_idx;
  std::vector<std::vector<std::size_t>> self_row;
  for (const auto& y0 : E.Y.elems()) {
    Elem h = grp->inv(y0);
    std::vector<std::vector<std::size_t>> per_f;
    for (const auto& f : phi.memory().elems()) {
      Elem hf = grp->mul(h, f);
      std::vector<std::size_t> row;
      for (const auto& t : E.W.elems())
        row.push_back(
            static_cast<std::size_t>(mem.index_of(grp->mul(hf, t))));
      per_f.push_back(std::move(row));
    }
    cell_idx.push_back(std::move(per_f));
    std::vector<std::size_t> row;
    for (const auto& t : E.W.elems())
      row.push_back(static_cast<std::size_t>(mem.index_of(grp->mul(h, t))));
    self_row.push_back(std::move(row));
  }
  std::vector<std::vector<int>> egg_vals;
  for (std::size_t i = 0; i < E.size(); ++i) {
    Pattern q = E.egg(i);
    std::vector<int> vals;
    for (const auto& t : E.W.elems()) vals.push_back(q.at(t));
    egg_vals.push_back(std::move(vals));
  }
  std::vector<std::vector<int>> yolk_at;  // [egg][yolk cell]
  for (std::size_t i = 0; i < E.size(); ++i) {
    std::vector<int> vals;
    for (const auto& y0 : E.Y.elems()) vals.push_back(E.yolks[i].at(y0));
    yolk_at.push_back(std::move(vals));
  }
  // Where the origin's own egg frame sits among phi's memory cells: the
  // phi memory index of 1_G (phi consults eta there as well).
  std::size_t id_idx = static_cast<std::size_t>(mem.index_of(grp->identity()));
  int star = phi.in_alphabet()->index_of("*");
  std::size_t eggs = E.size();
  LocalRule phi_copy = phi;

  auto detect_at = [egg_vals, eggs](const std::vector<int>& v,
                                    const std::vector<std::size_t>& row,
                                    int star) {
    for (std::size_t i = 0; i < eggs; ++i) {
      bool match = true;
      for (std::size_t t = 0; t < row.size(); ++t)
        if (v[row[t]] != egg_vals[i][t]) {
          match = false;
          break;
        }
      if (match) return static_cast<int>(i);
    }
    return star;
  };
  auto fn = [cell_idx, self_row, yolk_at, id_idx, star, phi_copy,
             detect_at](const std::vector<int>& v) {
    for (std::size_t yi = 0; yi < cell_idx.size(); ++yi) {
      // Rewrite only where an egg sits at h = y0^{-1}.
      if (detect_at(v, self_row[yi], star) == star) continue;
      std::vector<int> model_vals;
      model_vals.reserve(cell_idx[yi].size());
      for (const auto& row : cell_idx[yi])
        model_vals.push_back(detect_at(v, row, star));
      int out = phi_copy.eval(model_vals);
      if (out == star)
        throw std::invalid_argument(
            "egg-model rule moved a star on a consulted window");
      return yolk_at[static_cast<std::size_t>(out)][yi];
    }
    return v[id_idx];
  };
  LocalRule rule(grp, alpha, alpha, mem, fn);
  if (rule.table_size() <= static_cast<long double>(budget))
    return LocalRule(grp, alpha, alpha, mem, rule.materialize(budget));
  return rule;
}

}  // namespace sdtk
