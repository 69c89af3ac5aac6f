#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>

#include "graph_rules.hpp"

namespace semgraph {

using detail::sameMeaning;

bool ValidationReport::ok() const { return errorCount() == 0; }

std::size_t ValidationReport::errorCount() const {
  return std::count_if(items.begin(), items.end(), [](const Violation& v) { return v.severity == Severity::Error; });
}

std::size_t ValidationReport::count(const std::string& rule, Severity severity) const {
  return std::count_if(items.begin(), items.end(),
                       [&](const Violation& v) { return v.rule == rule && v.severity == severity; });
}

std::string ValidationReport::text() const {
  std::ostringstream os;
  for (const auto& v : items) {
    const char* sev = v.severity == Severity::Error ? "ERROR" : v.severity == Severity::Warning ? "WARNING" : "INFO";
    os << sev << ' ' << v.rule << ' ' << v.subject << ": " << v.message << '\n';
  }
  return os.str();
}

namespace detail {

std::vector<Violation> checkObligations(const MeaningGraph& g, const Catalog& cat,
                                        const std::vector<Obligation>& obligations) {
  std::vector<Violation> out;
  for (const auto& ob : obligations) {
    std::vector<std::string> names(ob.occurrence.begin(), ob.occurrence.end());
    std::vector<std::string> targets;
    for (const auto& [id, n] : g.nodes()) {
      if (sameMeaning(cat, n.label, ob.target)) targets.push_back(id);
    }
    for (const auto& [kid, kn] : g.nodes()) {
      if (!sameMeaning(cat, kn.label, ob.context)) continue;
      std::vector<std::vector<std::string>> choices;
      for (const auto& name : names) {
        std::vector<std::string> kids;
        for (const auto& c : g.children(kid)) {
          if (sameMeaning(cat, g.at(c).label, ob.contextComponent.at(name))) kids.push_back(c);
        }
        choices.push_back(kids);
      }
      if (std::any_of(choices.begin(), choices.end(), [](const auto& v) { return v.empty(); })) continue;
      std::vector<std::size_t> idx(names.size(), 0);
      std::size_t guard = 0;
      for (;;) {
        std::vector<std::set<std::string>> ups;
        for (std::size_t i = 0; i < names.size(); ++i) ups.push_back(superClosure(g, choices[i][idx[i]]));
        bool satisfied = std::any_of(targets.begin(), targets.end(), [&](const std::string& t) {
          for (std::size_t i = 0; i < names.size(); ++i) {
            bool has = false;
            for (const auto& c : g.children(t)) {
              if (ups[i].count(c) && sameMeaning(cat, g.at(c).label, ob.target.child(names[i]))) has = true;
            }
            if (!has) return false;
          }
          return true;
        });
        if (!satisfied) {
          std::string subject = kid + " (";
          for (std::size_t i = 0; i < names.size(); ++i) subject += (i ? ", " : "") + choices[i][idx[i]];
          subject += ")";
          out.push_back({Severity::Error, "dangling-component-specialization", subject,
                         "no " + ob.target.str() + " node has super-nodes of these " + ob.context.str() +
                             " components"});
        }
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
        if (i == idx.size() || ++guard > 10000) break;
      }
    }
  }
  return out;
}

namespace {

std::optional<std::string> nodeValue(const MeaningGraph& g, const std::string& id, int depth = 0) {
  const Node& n = g.at(id);
  if (n.value) return n.value;
  if (depth > 8) return std::nullopt;
  if (auto h = g.host(id)) {
    if (auto v = nodeValue(g, *h, depth + 1)) return v;
  }
  for (const auto& s : g.supers(id)) {
    if (auto v = nodeValue(g, s, depth + 1)) return v;
  }
  return std::nullopt;
}

std::optional<double> asNumber(const std::string& s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool compare(const std::string& lhs, DerivedCondition::Op op, const std::string& rhs) {
  auto a = asNumber(lhs), b = asNumber(rhs);
  int c = 0;
  if (a && b) {
    c = *a < *b ? -1 : *a > *b ? 1 : 0;
  } else {
    c = lhs.compare(rhs) < 0 ? -1 : lhs.compare(rhs) > 0 ? 1 : 0;
  }
  switch (op) {
    case DerivedCondition::Op::Eq: return c == 0;
    case DerivedCondition::Op::Ne: return c != 0;
    case DerivedCondition::Op::Lt: return c < 0;
    case DerivedCondition::Op::Le: return c <= 0;
    case DerivedCondition::Op::Gt: return c > 0;
    case DerivedCondition::Op::Ge: return c >= 0;
  }
  return false;
}

}  // namespace

bool derivedHolds(const MeaningGraph& g, const Catalog& cat, const DerivedDecl& d, const std::string& superId) {
  for (const auto& cond : d.conditions) {
    std::vector<std::string> frontier{superId};
    std::string path = cond.path;
    std::size_t start = 0;
    while (start <= path.size()) {
      std::size_t end = path.find('.', start);
      if (end == std::string::npos) end = path.size();
      std::string seg = path.substr(start, end - start);
      std::vector<std::string> next;
      for (const auto& f : frontier) {
        for (const auto& c : g.children(f)) {
          const ComponentInfo* e = cat.componentEntry(g.at(f).label, g.at(c).label);
          if (e && e->name == seg) next.push_back(c);
        }
      }
      frontier = next;
      start = end + 1;
    }
    bool any = std::any_of(frontier.begin(), frontier.end(), [&](const std::string& id) {
      auto v = nodeValue(g, id);
      return v && compare(*v, cond.op, cond.literal);
    });
    if (!any) return false;
  }
  return true;
}

}  // namespace detail

namespace {

class Validator {
 public:
  Validator(const MeaningGraph& g, const Catalog& cat, ValidateOptions opts) : g_(g), cat_(cat), opts_(opts) {}

  ValidationReport run() {
    nodes();
    edges();
    composition();
    specialization();
    references();
    compounds();
    complements();
    auto obs = detail::checkObligations(g_, cat_, computeAllObligations(cat_));
    report_.items.insert(report_.items.end(), obs.begin(), obs.end());
    std::sort(report_.items.begin(), report_.items.end());
    report_.items.erase(std::unique(report_.items.begin(), report_.items.end()), report_.items.end());
    return std::move(report_);
  }

 private:
  void add(Severity s, std::string rule, std::string subject, std::string message) {
    report_.items.push_back({s, std::move(rule), std::move(subject), std::move(message)});
  }
  // Missing parts are tolerated in open graphs.
  void gap(std::string rule, std::string subject, std::string message) {
    add(opts_.open ? Severity::Info : Severity::Error, std::move(rule), std::move(subject), std::move(message));
  }

  bool known(const Node& n) const { return cat_.contains(n.label); }

  void nodes() {
    std::map<MeaningLabel, std::vector<std::string>> byLabel;
    for (const auto& [id, n] : g_.nodes()) {
      if (!known(n)) {
        std::string rule = detail::unknownLabelRule(n.label);
        add(Severity::Error, rule, id,
            rule == "declare-to-use" ? "compound meaning " + n.label.str() + " is not declared"
                                     : "unknown meaning " + n.label.str());
        continue;
      }
      byLabel[n.label].push_back(id);
      if (n.value && id != valueNodeId(n.label, *n.value)) {
        add(Severity::Error, "value-identity", id, "value node id must be " + valueNodeId(n.label, *n.value));
      }
      if (!n.label.isRoot() && cat_.at(n.label).origin != MeaningOrigin::PureReference && g_.parents(id).empty()) {
        gap("orphan-component", id, "component meaning " + n.label.str() + " has no composite parent");
      }
    }
    std::set<MeaningLabel> statics;
    for (const auto& [l, m] : cat_.meanings()) {
      for (const auto& c : m.components) {
        if (c.scope == Scope::Static) statics.insert(c.label);
      }
    }
    for (const auto& l : statics) {
      auto it = byLabel.find(l);
      if (it != byLabel.end() && it->second.size() > 1) {
        add(Severity::Error, "static-sharing", l.str(),
            std::to_string(it->second.size()) + " distinct nodes for a static component");
      }
    }
  }

  void edges() {
    for (const auto& e : g_.edges()) {
      if (!g_.hasNode(e.from) || !g_.hasNode(e.to)) {
        add(Severity::Error, "dangling-edge", std::string(to_string(e.kind)) + " " + e.from + " -> " + e.to,
            "edge endpoint does not exist");
      }
    }
  }

  void composition() {
    for (const auto& [id, n] : g_.nodes()) {
      if (!known(n)) continue;
      const ResolvedMeaning& m = cat_.at(n.label);
      LabelSet names;
      std::map<std::string, int> counts;
      for (const auto& c : g_.children(id)) {
        const Node* cn = g_.node(c);
        if (!cn || !known(*cn)) continue;
        const ComponentInfo* entry = cat_.componentEntry(n.label, cn->label);
        if (!entry) {
          add(Severity::Error, "composition-label", id + " -> " + c,
              cn->label.str() + " is not a component of " + n.label.str());
          continue;
        }
        names.insert(entry->name);
        if (++counts[entry->name] == 2 && !entry->setOf) {
          add(Severity::Error, "multiplicity", id, "more than one '" + entry->name + "' component");
        }
      }
      if (n.value) continue;
      if (!occMember(m.occurrence, names)) {
        std::string shown;
        for (const auto& s : names) shown += (shown.empty() ? "" : ", ") + s;
        if (opts_.open && occExtendable(m.occurrence, names)) {
          add(Severity::Info, "occurrence", id, "incomplete occurrence {" + shown + "}");
        } else {
          add(Severity::Error, "occurrence", id,
              "{" + shown + "} is not a valid occurrence of " + printLabelOcc(m.occurrence));
        }
      }
    }
    for (const auto& [id, n] : g_.nodes()) {
      std::vector<std::string> privates;
      for (const auto& p : g_.parents(id)) {
        const Node* pn = g_.node(p);
        if (!pn || !known(*pn) || !known(n)) continue;
        const ComponentInfo* entry = cat_.componentEntry(pn->label, n.label);
        if (entry && entry->scope == Scope::Private) privates.push_back(p);
      }
      // A sub-node holds the component nodes of its super-nodes.
      bool shared = false;
      for (std::size_t i = 0; i < privates.size() && !shared; ++i) {
        auto up = detail::superClosure(g_, privates[i]);
        for (std::size_t j = i + 1; j < privates.size() && !shared; ++j) {
          shared = !up.count(privates[j]) && !detail::superClosure(g_, privates[j]).count(privates[i]);
        }
      }
      if (shared) add(Severity::Error, "private-sharing", id, "private component has several parents");
    }
    // Cycle detection over composition edges.
    std::map<std::string, int> state;
    std::function<bool(const std::string&)> dfs = [&](const std::string& id) {
      state[id] = 1;
      for (const auto& c : g_.children(id)) {
        if (state[c] == 1) return true;
        if (state[c] == 0 && dfs(c)) return true;
      }
      state[id] = 2;
      return false;
    };
    for (const auto& [id, n] : g_.nodes()) {
      if (state[id] == 0 && dfs(id)) {
        add(Severity::Error, "composition-cycle", id, "composition edges form a cycle");
        break;
      }
    }
  }

  void specialization() {
    for (const auto& e : g_.edges()) {
      if (e.kind != EdgeKind::Specialization) continue;
      const Node* sup = g_.node(e.from);
      const Node* sub = g_.node(e.to);
      if (!sup || !sub || !known(*sup) || !known(*sub)) continue;
      if (!cat_.isSubMeaning(sub->label, sup->label)) {
        add(Severity::Error, "spec-label", e.from + " -> " + e.to,
            sub->label.str() + " is not a sub meaning of " + sup->label.str());
        continue;
      }
      SpecStyle want = cat_.styleBetween(sub->label, sup->label).value_or(SpecStyle::Normal);
      if (e.style != want) {
        add(Severity::Error, "spec-label", e.from + " -> " + e.to,
            std::string("edge style ") + specSymbol(e.style) + " differs from declared " + specSymbol(want));
      }
    }
    for (const auto& [id, n] : g_.nodes()) {
      if (!known(n)) continue;
      std::map<MeaningLabel, int> perLabel;
      for (const auto& s : g_.subs(id)) {
        const Node* sn = g_.node(s);
        if (!sn || !known(*sn)) continue;
        if (cat_.styleBetween(sn->label, n.label).value_or(SpecStyle::Normal) == SpecStyle::Normal) continue;
        if (++perLabel[sn->label] == 2) {
          add(Severity::Error, "style-cardinality", id,
              "more than one restricted sub-node of " + sn->label.str());
        }
      }
      std::vector<std::string> sups = g_.supers(id);
      for (std::size_t i = 0; i < sups.size(); ++i) {
        for (std::size_t j = i + 1; j < sups.size(); ++j) {
          const Node* a = g_.node(sups[i]);
          const Node* b = g_.node(sups[j]);
          if (a && b && known(*a) && known(*b) && sameMeaning(cat_, a->label, b->label)) {
            add(Severity::Warning, "super-types", id,
                "super-nodes " + sups[i] + " and " + sups[j] + " have the same meaning type");
          }
        }
      }
      // Derived nodes need a super-node that satisfies the conditions.
      auto dit = cat_.derived().find(n.label);
      if (dit != cat_.derived().end()) {
        bool ok = false;
        for (const auto& s : sups) {
          const Node* sn = g_.node(s);
          if (sn && sameMeaning(cat_, sn->label, dit->second.super) && detail::derivedHolds(g_, cat_, dit->second, s)) {
            ok = true;
          }
        }
        if (!ok) add(Severity::Error, "derived-condition", id, "no super-node satisfies the derivation conditions");
      }
    }
    for (const auto& e : g_.edges()) {
      if (e.kind != EdgeKind::Equivalence) continue;
      const Node* a = g_.node(e.from);
      const Node* b = g_.node(e.to);
      if (!a || !b || !known(*a) || !known(*b)) continue;
      if (!sameMeaning(cat_, a->label, b->label)) {
        add(Severity::Error, "equivalence-label", e.from + " <=> " + e.to,
            a->label.str() + " and " + b->label.str() + " are not equivalent meanings");
      }
    }
  }

  void references() {
    for (const auto& [id, n] : g_.nodes()) {
      if (!known(n)) continue;
      const ReferenceDecl* decl = cat_.referenceOf(n.label);
      std::vector<std::string> hosts;
      for (const auto& e : g_.outgoing(id)) {
        if (e.kind == EdgeKind::Reference) hosts.push_back(e.to);
      }
      if (!decl) {
        if (!hosts.empty()) add(Severity::Error, "reference-label", id, n.label.str() + " is not a reference meaning");
        continue;
      }
      if (hosts.size() > 1) add(Severity::Error, "reference-multiple", id, "more than one reference edge");
      if (hosts.empty()) gap("reference-missing", id, "reference node has no host");
      for (const auto& h : hosts) {
        const Node* hn = g_.node(h);
        if (!hn || !known(*hn)) continue;
        if (!detail::hostLabelOk(cat_, *decl, hn->label)) {
          add(Severity::Error, "reference-label", id + " --> " + h, hn->label.str() + " cannot host " + n.label.str());
          continue;
        }
        if (decl->scope) {
          auto a = detail::scopeAncestors(g_, cat_, id, *decl->scope);
          auto b = detail::scopeAncestors(g_, cat_, h, *decl->scope);
          bool shared = std::any_of(a.begin(), a.end(), [&](const std::string& x) { return b.count(x) > 0; });
          if (!shared) {
            if (a.empty() || b.empty()) {
              gap("reference-scope", id + " --> " + h, "enclosing " + decl->scope->str() + " instance is missing");
            } else {
              add(Severity::Error, "reference-scope", id + " --> " + h,
                  "host lies outside the enclosing " + decl->scope->str() + " instance");
            }
          }
        }
      }
    }
  }

  void compounds() {
    for (const auto& [id, n] : g_.nodes()) {
      auto it = cat_.compounds().find(n.label);
      if (it == cat_.compounds().end() || it->second.form.op != CompoundOp::Union) continue;
      int members = 0;
      for (const auto& s : g_.subs(id)) {
        const Node* sn = g_.node(s);
        if (!sn) continue;
        for (const auto& op : it->second.operands) {
          if (sameMeaning(cat_, sn->label, op)) ++members;
        }
      }
      if (members == 0) gap("union-arity", id, "union node has no operand sub-node");
      if (members > 1) add(Severity::Error, "union-arity", id, "union node has several operand sub-nodes");
    }
  }

  void complements() {
    for (const auto& rule : cat_.complements()) {
      for (const auto& b : matchPattern(g_, cat_, rule.body)) {
        if (!matchPattern(g_, cat_, rule.head, b).empty()) continue;
        std::string subject = "rule " + std::to_string(rule.index) + " [";
        bool first = true;
        for (const auto& [var, id] : b) {
          subject += (first ? "" : ", ") + ("$" + var + "=" + id);
          first = false;
        }
        subject += "]";
        add(Severity::Error, "complement", subject, "body match has no head match in " + rule.owner.str());
      }
    }
  }

  const MeaningGraph& g_;
  const Catalog& cat_;
  ValidateOptions opts_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate(const MeaningGraph& g, const Catalog& cat, ValidateOptions options) {
  return Validator(g, cat, options).run();
}

}  // namespace semgraph
