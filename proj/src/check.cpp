#include "semgraph/check.hpp"

#include <algorithm>
#include <sstream>

namespace semgraph {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Undetermined: return "UNDETERMINED";
  }
  return "?";
}

bool SchemaCheckReport::failed() const { return count(CheckStatus::Fail) > 0; }

std::size_t SchemaCheckReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [&](const CheckItem& i) { return i.status == s; }));
}

std::string SchemaCheckReport::text() const {
  std::ostringstream os;
  for (const auto& i : items) {
    os << to_string(i.status) << " " << i.kind << " " << i.subject << "\n";
    for (const auto& d : i.details) os << "  " << d << "\n";
  }
  os << items.size() << " checks, " << (failed() ? "failed" : "passed") << "\n";
  return os.str();
}

SchemaCheckReport checkSchema(const Catalog& cat, ConsistencyEngine engine, std::size_t bound) {
  SchemaCheckReport rep;
  for (const auto& d : cat.specializations()) {
    if (d.source == DeclSource::Reference) continue;
    auto r = checkOccConsistency(d.sub, d.super, cat, engine);
    CheckItem item{"consistency", d.sub.str() + " " + to_string(d.style) + " " + d.super.str(), CheckStatus::Pass, {}};
    if (r.verdict == Verdict::Inconsistent) item.status = CheckStatus::Fail;
    if (r.verdict == Verdict::Undetermined) item.status = CheckStatus::Undetermined;
    std::string line = std::string(to_string(r.engine)) + ": " + r.detail;
    item.details.push_back(line);
    if (r.counterexample) {
      std::string shown;
      for (const auto& s : *r.counterexample) shown += (shown.empty() ? "" : ", ") + s;
      item.details.push_back("counterexample {" + shown + "}");
    }
    rep.items.push_back(std::move(item));
  }
  for (const auto& c : checkAllCompleteness(cat, bound)) {
    CheckItem item{"completeness", c.meaning.str(), CheckStatus::Pass, {}};
    if (c.verdict == Completeness::Incomplete) item.status = CheckStatus::Fail;
    if (c.verdict == Completeness::Undetermined) item.status = CheckStatus::Undetermined;
    for (const auto& r : c.obligations) {
      std::string line = std::string(to_string(r.verdict)) + " " + r.obligation.describe();
      if (!r.detail.empty()) line += " (" + r.detail + ")";
      item.details.push_back(line);
    }
    if (c.witness) {
      std::istringstream js(toJson(*c.witness));
      item.details.push_back("witness:");
      for (std::string l; std::getline(js, l);) item.details.push_back("  " + l);
    }
    rep.items.push_back(std::move(item));
  }
  return rep;
}

}  // namespace semgraph
