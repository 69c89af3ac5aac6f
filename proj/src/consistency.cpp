#include <algorithm>

#include "semgraph/analysis.hpp"

namespace semgraph {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconsistent: return "inconsistent";
    case Verdict::NotApplicable: return "not-applicable";
    case Verdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

const char* to_string(ConsistencyEngine e) {
  switch (e) {
    case ConsistencyEngine::Auto: return "auto";
    case ConsistencyEngine::Structural: return "structural";
    case ConsistencyEngine::Enumerate: return "enumerate";
  }
  return "auto";
}

ConsistencyEngine engineFromName(const std::string& name) {
  if (name == "auto") return ConsistencyEngine::Auto;
  if (name == "structural") return ConsistencyEngine::Structural;
  if (name == "enumerate") return ConsistencyEngine::Enumerate;
  throw Error("unknown consistency engine '" + name + "'");
}

namespace {

constexpr std::size_t kSampleCap = 64;

// Sub occurrence paired with its image under the component map.
struct Sample {
  LabelSet sub;
  LabelSet image;
  bool operator<(const Sample& o) const { return std::tie(sub, image) < std::tie(o.sub, o.image); }
};

class Structural {
 public:
  // Sound inclusion proof: true means O(e) ⊆ O(f).
  bool incl(const LabelOcc& e, const LabelOcc& f) {
    if (e.kind == OccKind::Empty) return occNullable(f);
    if (e.kind == OccKind::Group) return incl(e.children[0], f);
    if (f.kind == OccKind::Group) return incl(e, f.children[0]);
    if (e == f) return true;
    if (e.kind == OccKind::Disj) return incl(e.children[0], f) && incl(e.children[1], f);
    if (e.kind == OccKind::Optional) return occNullable(f) && incl(e.children[0], f);
    if (e.kind == OccKind::Leaf) return occMember(f, {e.leafValue()});
    if (f.kind == OccKind::Optional && incl(e, f.children[0])) return true;
    if (f.kind == OccKind::Disj && (incl(e, f.children[0]) || incl(e, f.children[1]))) return true;
    if (e.kind == OccKind::Conj) return inclConj(e, f);
    return false;
  }

 private:
  static void flattenConj(const LabelOcc& e, std::vector<const LabelOcc*>& out) {
    if (e.kind == OccKind::Conj) {
      flattenConj(e.children[0], out);
      flattenConj(e.children[1], out);
    } else if (e.kind == OccKind::Group && e.children[0].kind == OccKind::Conj) {
      flattenConj(e.children[0], out);
    } else {
      out.push_back(&e);
    }
  }

  static LabelSet alphabet(const LabelOcc& e) {
    LabelSet s;
    forEachLeaf(e, [&](const std::string& l) { s.insert(l); });
    return s;
  }

  static bool disjoint(const std::vector<LabelSet>& sets) {
    LabelSet seen;
    for (const auto& s : sets) {
      for (const auto& l : s) {
        if (!seen.insert(l).second) return false;
      }
    }
    return true;
  }

  static LabelOcc conjOf(const std::vector<const LabelOcc*>& parts) {
    LabelOcc out = *parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out = LabelOcc::makeConj(std::move(out), *parts[i]);
    return out;
  }

  bool inclConj(const LabelOcc& e, const LabelOcc& f) {
    std::vector<const LabelOcc*> ef, ff;
    flattenConj(e, ef);
    flattenConj(f, ff);
    if (ff.size() < 2) return false;
    std::vector<LabelSet> ea, fa;
    for (const auto* x : ef) ea.push_back(alphabet(*x));
    for (const auto* x : ff) fa.push_back(alphabet(*x));
    if (!disjoint(ea) || !disjoint(fa)) return false;
    std::vector<std::vector<const LabelOcc*>> assigned(ff.size());
    for (std::size_t i = 0; i < ef.size(); ++i) {
      std::optional<std::size_t> home;
      for (std::size_t j = 0; j < ff.size(); ++j) {
        if (std::includes(fa[j].begin(), fa[j].end(), ea[i].begin(), ea[i].end())) home = j;
      }
      if (!home) return false;
      assigned[*home].push_back(ef[i]);
    }
    for (std::size_t j = 0; j < ff.size(); ++j) {
      if (assigned[j].empty()) {
        if (!occNullable(*ff[j])) return false;
      } else if (!incl(conjOf(assigned[j]), *ff[j])) {
        return false;
      }
    }
    return true;
  }
};

// Truncated enumeration of sub occurrences; every sample is a genuine member.
std::vector<Sample> samples(const LabelOcc& e, const std::map<std::string, std::string>& map) {
  switch (e.kind) {
    case OccKind::Empty: return {Sample{}};
    case OccKind::Leaf: {
      Sample s;
      s.sub.insert(e.leafValue());
      auto it = map.find(e.leafValue());
      if (it != map.end()) s.image.insert(it->second);
      return {s};
    }
    case OccKind::Group: return samples(e.children[0], map);
    case OccKind::Optional: {
      auto out = samples(e.children[0], map);
      out.insert(out.begin(), Sample{});
      if (out.size() > kSampleCap) out.resize(kSampleCap);
      return out;
    }
    case OccKind::Disj: {
      auto a = samples(e.children[0], map);
      auto b = samples(e.children[1], map);
      std::vector<Sample> out;
      for (std::size_t i = 0; out.size() < kSampleCap && (i < a.size() || i < b.size()); ++i) {
        if (i < a.size()) out.push_back(a[i]);
        if (i < b.size() && out.size() < kSampleCap) out.push_back(b[i]);
      }
      return out;
    }
    case OccKind::Conj: {
      auto a = samples(e.children[0], map);
      auto b = samples(e.children[1], map);
      std::vector<Sample> out;
      for (std::size_t d = 0; d < a.size() + b.size() && out.size() < kSampleCap; ++d) {
        for (std::size_t i = 0; i <= d && i < a.size() && out.size() < kSampleCap; ++i) {
          std::size_t j = d - i;
          if (j >= b.size()) continue;
          Sample s = a[i];
          s.sub.insert(b[j].sub.begin(), b[j].sub.end());
          s.image.insert(b[j].image.begin(), b[j].image.end());
          out.push_back(std::move(s));
        }
      }
      return out;
    }
  }
  return {};
}

void enumerateSamples(const LabelOcc& e, const std::map<std::string, std::string>& map, std::vector<Sample>& out) {
  for (const auto& occ : occEnumerate(e, SIZE_MAX)) {
    Sample s;
    s.sub = occ;
    for (const auto& l : occ) {
      auto it = map.find(l);
      if (it != map.end()) s.image.insert(it->second);
    }
    out.push_back(std::move(s));
  }
}

ConsistencyReport structural(const LabelOcc& sub, const LabelOcc& super, const std::map<std::string, std::string>& map) {
  ConsistencyReport r;
  r.engine = ConsistencyEngine::Structural;
  LabelOcc image = mapLeaves<std::string>(sub, [&](const std::string& l) {
    auto it = map.find(l);
    return it == map.end() ? std::nullopt : std::optional<std::string>(it->second);
  });
  Structural s;
  if (s.incl(image, super)) {
    r.verdict = Verdict::Consistent;
    r.detail = "image expression is included in the super occurrence expression";
    return r;
  }
  for (const auto& smp : samples(sub, map)) {
    if (!occMember(super, smp.image)) {
      r.verdict = Verdict::Inconsistent;
      r.counterexample = smp.sub;
      r.image = smp.image;
      r.detail = "image of a sub occurrence is not a valid super occurrence";
      return r;
    }
  }
  r.verdict = Verdict::NotApplicable;
  r.detail = "component map does not preserve the operator structure";
  return r;
}

ConsistencyReport enumerative(const LabelOcc& sub, const LabelOcc& super, const std::map<std::string, std::string>& map,
                              std::size_t bound) {
  ConsistencyReport r;
  r.engine = ConsistencyEngine::Enumerate;
  r.bound = bound;
  std::size_t n = leafCount(sub);
  if (n > bound) {
    r.verdict = Verdict::Undetermined;
    r.detail = "undetermined at bound " + std::to_string(bound);
    return r;
  }
  std::vector<Sample> all;
  enumerateSamples(sub, map, all);
  for (const auto& smp : all) {
    if (!occMember(super, smp.image)) {
      r.verdict = Verdict::Inconsistent;
      r.counterexample = smp.sub;
      r.image = smp.image;
      r.detail = "image of a sub occurrence is not a valid super occurrence";
      return r;
    }
  }
  r.verdict = Verdict::Consistent;
  r.detail = "all " + std::to_string(all.size()) + " sub occurrences map to valid super occurrences";
  return r;
}

}  // namespace

ConsistencyReport checkOccConsistency(const LabelOcc& subExpr, const LabelOcc& superExpr,
                                      const std::map<std::string, std::string>& map, ConsistencyEngine engine,
                                      std::size_t leafBound) {
  if (engine == ConsistencyEngine::Enumerate) return enumerative(subExpr, superExpr, map, leafBound);
  ConsistencyReport r = structural(subExpr, superExpr, map);
  if (engine == ConsistencyEngine::Structural || r.verdict != Verdict::NotApplicable) return r;
  return enumerative(subExpr, superExpr, map, leafBound);
}

ConsistencyReport checkOccConsistency(const MeaningLabel& sub, const MeaningLabel& super, const Catalog& catalog,
                                      ConsistencyEngine engine, std::size_t leafBound) {
  const auto& sm = catalog.at(sub);
  const auto& pm = catalog.at(super);
  std::map<std::string, std::string> names;
  for (const auto& [from, to] : catalog.componentMap(sub, super)) {
    const auto* a = sm.componentByLabel(from);
    const auto* b = pm.componentByLabel(to);
    if (a && b) names[a->name] = b->name;
  }
  ConsistencyReport r = checkOccConsistency(sm.occurrence, pm.occurrence, names, engine, leafBound);
  r.sub = sub;
  r.super = super;
  return r;
}

}  // namespace semgraph
