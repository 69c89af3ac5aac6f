#include <algorithm>
#include <functional>
#include <sstream>

#include "semgraph/analysis.hpp"

namespace semgraph {

std::string Obligation::describe() const {
  std::ostringstream os;
  os << context << " requires " << target << " {";
  bool first = true;
  for (const auto& n : occurrence) {
    os << (first ? "" : ", ") << n;
    first = false;
  }
  os << "}";
  return os.str();
}

namespace {

bool relatedTo(const Catalog& cat, const MeaningLabel& k, const MeaningLabel& c) {
  return k == c || cat.equivalent(k, c) || cat.isSubMeaning(k, c);
}

}  // namespace

std::vector<Obligation> computeObligations(const Catalog& cat, const MeaningLabel& owner) {
  std::vector<Obligation> out;
  std::map<MeaningLabel, std::map<std::string, std::vector<MeaningLabel>>> byTarget;
  for (const auto& [c, ext] : cat.componentSpecializations(owner)) {
    auto m = ext.parent();
    if (!m || m->isAncestorOf(c)) continue;
    byTarget[*m][ext.localName()].push_back(c);
  }
  for (const auto& [m, specialized] : byTarget) {
    const auto* mm = cat.find(m);
    if (!mm) continue;
    OccurrenceSet occs;
    try {
      occs = occEnumerate(mm->occurrence);
    } catch (const Error&) {
      continue;
    }
    for (const auto& o : occs) {
      if (o.size() < 2) continue;
      bool allSpecialized = std::all_of(o.begin(), o.end(), [&](const std::string& n) { return specialized.count(n); });
      if (!allSpecialized) continue;
      for (const auto& [k, km] : cat.meanings()) {
        if (!owner.isAncestorOf(k)) continue;
        Obligation ob;
        ob.owner = owner;
        ob.context = k;
        ob.target = m;
        ob.occurrence = o;
        bool ok = true;
        for (const auto& n : o) {
          bool found = false;
          for (const auto& kc : km.components) {
            for (const auto& c : specialized.at(n)) {
              if (!found && relatedTo(cat, kc.label, c)) {
                ob.contextComponent[n] = kc.label;
                ob.specialized[n] = c;
                found = true;
              }
            }
          }
          if (!found) ok = false;
        }
        std::set<MeaningLabel> distinct;
        for (const auto& [n, l] : ob.contextComponent) distinct.insert(l);
        if (ok && distinct.size() == o.size()) out.push_back(std::move(ob));
      }
    }
  }
  return out;
}

std::vector<Obligation> computeAllObligations(const Catalog& cat) {
  std::vector<Obligation> out;
  for (const auto& [l, m] : cat.meanings()) {
    if (!l.isRoot()) continue;
    auto obs = computeObligations(cat, l);
    out.insert(out.end(), obs.begin(), obs.end());
  }
  return out;
}

namespace {

bool sameMeaning(const Catalog& cat, const MeaningLabel& a, const MeaningLabel& b) {
  return a == b || cat.equivalent(a, b);
}

const ResolvedAtom* findAtom(const std::vector<ResolvedAtom>& atoms, const std::function<bool(const ResolvedAtom&)>& p) {
  for (const auto& a : atoms) {
    if (p(a)) return &a;
    if (const auto* inner = findAtom(a.children, p)) return inner;
  }
  return nullptr;
}

}  // namespace

std::optional<std::size_t> coveringRule(const Catalog& cat, const Obligation& ob) {
  for (const auto& rule : cat.complements()) {
    const ResolvedAtom* head = findAtom(rule.head, [&](const ResolvedAtom& a) {
      if (!sameMeaning(cat, a.label, ob.target)) return false;
      for (const auto& n : ob.occurrence) {
        bool has = std::any_of(a.children.begin(), a.children.end(), [&](const ResolvedAtom& c) {
          return c.link == PatternAtom::Link::LinkedIsSub && sameMeaning(cat, c.label, ob.target.child(n));
        });
        if (!has) return false;
      }
      return true;
    });
    if (!head) continue;
    const ResolvedAtom* body = findAtom(rule.body, [&](const ResolvedAtom& a) {
      if (!sameMeaning(cat, a.label, ob.context)) return false;
      for (const auto& n : ob.occurrence) {
        const ResolvedAtom* headChild = nullptr;
        for (const auto& c : head->children) {
          if (c.link == PatternAtom::Link::LinkedIsSub && sameMeaning(cat, c.label, ob.target.child(n))) headChild = &c;
        }
        bool has = std::any_of(a.children.begin(), a.children.end(), [&](const ResolvedAtom& c) {
          return c.var == headChild->linkedVar && sameMeaning(cat, c.label, ob.contextComponent.at(n));
        });
        if (!has) return false;
      }
      return true;
    });
    if (body) return rule.index;
  }
  return std::nullopt;
}

}  // namespace semgraph
