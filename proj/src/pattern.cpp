#include "sdtk/pattern.hpp"

#include <algorithm>
#include <sstream>

namespace sdtk {

Alphabet::Alphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("alphabet is empty");
  auto sorted = symbols_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("alphabet has duplicate symbols");
}

std::shared_ptr<const Alphabet> Alphabet::numeric(int n) {
  std::vector<std::string> syms;
  syms.reserve(n);
  for (int i = 0; i < n; ++i) syms.push_back(std::to_string(i));
  return std::make_shared<Alphabet>(std::move(syms));
}

int Alphabet::index_of(const std::string& s) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == s) return static_cast<int>(i);
  throw std::invalid_argument("unknown symbol: " + s);
}

json Alphabet::to_json() const { return json(symbols_); }

std::shared_ptr<const Alphabet> Alphabet::from_json(const json& j) {
  if (j.is_number_integer()) return numeric(j.get<int>());
  std::vector<std::string> syms;
  for (const auto& s : j) syms.push_back(s.get<std::string>());
  return std::make_shared<Alphabet>(std::move(syms));
}

Pattern::Pattern(GroupPtr group, AlphabetPtr alphabet, ElemSet support,
                 std::vector<int> values)
    : group_(std::move(group)),
      alphabet_(std::move(alphabet)),
      support_(std::move(support)),
      values_(std::move(values)) {
  if (support_.size() != values_.size())
    throw std::invalid_argument("pattern support/value size mismatch");
  for (int v : values_)
    if (v < 0 || static_cast<std::size_t>(v) >= alphabet_->size())
      throw std::invalid_argument("pattern value outside alphabet");
}

Pattern Pattern::empty(GroupPtr group, AlphabetPtr alphabet) {
  return Pattern(group, std::move(alphabet), ElemSet(group, {}), {});
}

int Pattern::at(const Elem& g) const {
  auto i = support_.index_of(g);
  if (i < 0) throw std::out_of_range("element outside pattern support");
  return values_[static_cast<std::size_t>(i)];
}

std::optional<int> Pattern::maybe_at(const Elem& g) const {
  auto i = support_.index_of(g);
  if (i < 0) return std::nullopt;
  return values_[static_cast<std::size_t>(i)];
}

json Pattern::to_json() const {
  json sup = json::array();
  json vals = json::array();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    sup.push_back(group_->elem_to_json(support_.elems()[i]));
    vals.push_back(alphabet_->symbol(values_[i]));
  }
  return json{{"support", sup}, {"values", vals}};
}

Pattern Pattern::from_json(const GroupPtr& g, const AlphabetPtr& a,
                           const json& j) {
  const auto& sup = j.at("support");
  const auto& vals = j.at("values");
  if (sup.size() != vals.size())
    throw std::invalid_argument("pattern support/values length mismatch");
  // Keep (point, value) pairs together while sorting into canonical order.
  std::vector<std::pair<Elem, int>> entries;
  entries.reserve(sup.size());
  for (std::size_t i = 0; i < sup.size(); ++i) {
    int v = vals[i].is_string() ? a->index_of(vals[i].get<std::string>())
                                : vals[i].get<int>();
    entries.emplace_back(g->elem_from_json(sup[i]), v);
  }
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      throw std::invalid_argument("pattern support has duplicate point");
  std::vector<Elem> points;
  std::vector<int> values;
  for (auto& [p, v] : entries) {
    points.push_back(std::move(p));
    values.push_back(v);
  }
  return Pattern(g, a, ElemSet(g, std::move(points)), std::move(values));
}

std::string Pattern::brief() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ", ";
    os << group_->format(support_.elems()[i]) << ":"
       << alphabet_->symbol(values_[i]);
  }
  os << "}";
  return os.str();
}

Pattern translate(const Elem& g, const Pattern& p) {
  const auto& grp = p.group();
  std::vector<std::pair<Elem, int>> entries;
  entries.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    entries.emplace_back(grp->mul(g, p.support().elems()[i]), p.values()[i]);
  std::sort(entries.begin(), entries.end());
  std::vector<Elem> points;
  std::vector<int> values;
  for (auto& [pt, v] : entries) {
    points.push_back(std::move(pt));
    values.push_back(v);
  }
  return Pattern(grp, p.alphabet(), ElemSet(grp, std::move(points)),
                 std::move(values));
}

ConcatResult concat(const Pattern& p, const Pattern& q) {
  std::vector<std::pair<Elem, int>> entries;
  entries.reserve(p.size() + q.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    entries.emplace_back(p.support().elems()[i], p.values()[i]);
  for (std::size_t i = 0; i < q.size(); ++i)
    entries.emplace_back(q.support().elems()[i], q.values()[i]);
  std::sort(entries.begin(), entries.end());
  std::vector<Elem> points;
  std::vector<int> values;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i && entries[i].first == entries[i - 1].first) {
      if (entries[i].second != entries[i - 1].second)
        return ConcatResult{std::nullopt, entries[i].first};
      continue;
    }
    points.push_back(entries[i].first);
    values.push_back(entries[i].second);
  }
  return ConcatResult{
      Pattern(p.group(), p.alphabet(), ElemSet(p.group(), std::move(points)),
              std::move(values)),
      std::nullopt};
}

std::optional<Elem> overlap_disagreement(const Pattern& p, const Elem& g) {
  const auto& grp = p.group();
  Elem ginv = grp->inv(g);
  for (const auto& h : p.support().elems()) {
    Elem pre = grp->mul(ginv, h);  // h in g support(p) iff g^{-1}h in support
    auto other = p.maybe_at(pre);
    if (other && *other != p.at(h)) return h;
  }
  return std::nullopt;
}

bool is_g_overlapping(const Pattern& p, const Elem& g) {
  return !overlap_disagreement(p, g).has_value();
}

Pattern restrict(const Pattern& p, const ElemSet& F) {
  std::vector<int> values;
  values.reserve(F.size());
  for (const auto& e : F.elems()) {
    auto v = p.maybe_at(e);
    if (!v) throw std::invalid_argument("restriction outside pattern support");
    values.push_back(*v);
  }
  return Pattern(p.group(), p.alphabet(), F, std::move(values));
}

bool is_subpattern(const Pattern& p, const Pattern& q) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto v = q.maybe_at(p.support().elems()[i]);
    if (!v || *v != p.values()[i]) return false;
  }
  return true;
}

}  // namespace sdtk
