#include "semgraph/graph.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace semgraph {

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Composition: return "composition";
    case EdgeKind::Equivalence: return "equivalence";
    case EdgeKind::Specialization: return "specialization";
    case EdgeKind::Reference: return "reference";
  }
  return "composition";
}

EdgeKind edgeKindFromName(const std::string& name) {
  if (name == "composition") return EdgeKind::Composition;
  if (name == "equivalence") return EdgeKind::Equivalence;
  if (name == "specialization") return EdgeKind::Specialization;
  if (name == "reference") return EdgeKind::Reference;
  throw Error("unknown edge kind '" + name + "'");
}

const Node* MeaningGraph::node(const std::string& id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const Node& MeaningGraph::at(const std::string& id) const {
  const Node* n = node(id);
  if (!n) throw GraphError("unknown-node", "no node with id '" + id + "'");
  return *n;
}

void MeaningGraph::insertNode(Node n) {
  auto it = nodes_.find(n.id);
  if (it != nodes_.end()) {
    if (it->second == n) return;
    throw GraphError("duplicate-id", "node id '" + n.id + "' already used by " + it->second.label.str());
  }
  std::string id = n.id;
  nodes_.emplace(std::move(id), std::move(n));
}

void MeaningGraph::insertEdge(Edge e) {
  if (e.kind == EdgeKind::Equivalence && e.to < e.from) std::swap(e.from, e.to);
  if (e.kind != EdgeKind::Specialization) e.style = SpecStyle::Normal;
  if (!edges_.insert(e).second) return;
  out_[e.from].insert(e);
  in_[e.to].insert(e);
}

bool MeaningGraph::hasEdge(const Edge& e) const {
  Edge n = e;
  if (n.kind == EdgeKind::Equivalence && n.to < n.from) std::swap(n.from, n.to);
  if (n.kind != EdgeKind::Specialization) n.style = SpecStyle::Normal;
  return edges_.count(n) > 0;
}

void MeaningGraph::removeEdge(const Edge& e) {
  if (edges_.erase(e) == 0) return;
  out_[e.from].erase(e);
  in_[e.to].erase(e);
}

bool MeaningGraph::removeNode(const std::string& id) {
  if (!nodes_.erase(id)) return false;
  std::vector<Edge> incident;
  for (const auto& e : out_[id]) incident.push_back(e);
  for (const auto& e : in_[id]) incident.push_back(e);
  for (const auto& e : incident) removeEdge(e);
  out_.erase(id);
  in_.erase(id);
  return true;
}

std::vector<Edge> MeaningGraph::outgoing(const std::string& id) const {
  auto it = out_.find(id);
  return it == out_.end() ? std::vector<Edge>{} : std::vector<Edge>(it->second.begin(), it->second.end());
}

std::vector<Edge> MeaningGraph::incoming(const std::string& id) const {
  auto it = in_.find(id);
  return it == in_.end() ? std::vector<Edge>{} : std::vector<Edge>(it->second.begin(), it->second.end());
}

namespace {
std::vector<std::string> ends(const std::vector<Edge>& edges, EdgeKind kind, bool to) {
  std::vector<std::string> out;
  for (const auto& e : edges) {
    if (e.kind == kind) out.push_back(to ? e.to : e.from);
  }
  return out;
}
}  // namespace

std::vector<std::string> MeaningGraph::children(const std::string& id) const {
  return ends(outgoing(id), EdgeKind::Composition, true);
}
std::vector<std::string> MeaningGraph::parents(const std::string& id) const {
  return ends(incoming(id), EdgeKind::Composition, false);
}
std::vector<std::string> MeaningGraph::subs(const std::string& id) const {
  return ends(outgoing(id), EdgeKind::Specialization, true);
}
std::vector<std::string> MeaningGraph::supers(const std::string& id) const {
  return ends(incoming(id), EdgeKind::Specialization, false);
}

std::vector<std::string> MeaningGraph::equivalents(const std::string& id) const {
  auto out = ends(outgoing(id), EdgeKind::Equivalence, true);
  auto in = ends(incoming(id), EdgeKind::Equivalence, false);
  out.insert(out.end(), in.begin(), in.end());
  return out;
}

std::optional<std::string> MeaningGraph::host(const std::string& id) const {
  auto hosts = ends(outgoing(id), EdgeKind::Reference, true);
  if (hosts.empty()) return std::nullopt;
  return hosts.front();
}

std::vector<std::string> MeaningGraph::withLabel(const MeaningLabel& l) const {
  std::vector<std::string> out;
  for (const auto& [id, n] : nodes_) {
    if (n.label == l) out.push_back(id);
  }
  return out;
}

std::string valueNodeId(const MeaningLabel& label, const std::string& value) {
  std::string quoted = "'" + value + "'";
  return label.str() == "#String" ? quoted : quoted + ":" + label.str();
}

// -- JSON ------------------------------------------------------------------------

namespace {

using nlohmann::json;

void requireKeys(const json& obj, std::initializer_list<const char*> allowed, const char* what) {
  if (!obj.is_object()) throw Error(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw Error(std::string("unknown key '") + key + "' in " + what);
  }
}

std::string stringField(const json& obj, const char* key, const char* what) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) throw Error(std::string(what) + " requires string field '" + key + "'");
  return it->get<std::string>();
}

}  // namespace

std::string toJson(const MeaningGraph& g) {
  json nodes = json::array();
  for (const auto& [id, n] : g.nodes()) {
    json jn = json::object();
    jn["id"] = id;
    jn["meaning"] = n.label.str();
    if (n.value) jn["value"] = *n.value;
    nodes.push_back(jn);
  }
  json edges = json::array();
  for (const auto& e : g.edges()) {
    json je = json::object();
    je["kind"] = to_string(e.kind);
    je["from"] = e.from;
    je["to"] = e.to;
    if (e.kind == EdgeKind::Specialization) je["style"] = to_string(e.style);
    edges.push_back(je);
  }
  json root = json::object();
  root["nodes"] = nodes;
  root["edges"] = edges;
  return root.dump(2) + "\n";
}

MeaningGraph fromJson(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed graph JSON: ") + e.what());
  }
  requireKeys(root, {"nodes", "edges"}, "graph");
  MeaningGraph g;
  if (root.contains("nodes")) {
    if (!root["nodes"].is_array()) throw Error("'nodes' must be an array");
    for (const auto& jn : root["nodes"]) {
      requireKeys(jn, {"id", "meaning", "value"}, "node");
      Node n;
      n.id = stringField(jn, "id", "node");
      n.label = MeaningLabel::parse(stringField(jn, "meaning", "node"));
      if (jn.contains("value")) n.value = stringField(jn, "value", "node");
      g.insertNode(std::move(n));
    }
  }
  if (root.contains("edges")) {
    if (!root["edges"].is_array()) throw Error("'edges' must be an array");
    for (const auto& je : root["edges"]) {
      requireKeys(je, {"kind", "from", "to", "style"}, "edge");
      Edge e;
      e.kind = edgeKindFromName(stringField(je, "kind", "edge"));
      e.from = stringField(je, "from", "edge");
      e.to = stringField(je, "to", "edge");
      if (je.contains("style")) {
        if (e.kind != EdgeKind::Specialization) throw Error("'style' is only valid on specialization edges");
        std::string name = stringField(je, "style", "edge");
        auto style = specStyleFromName(name);
        if (!style) throw Error("unknown specialization style '" + name + "'");
        e.style = *style;
      }
      g.insertEdge(std::move(e));
    }
  }
  return g;
}

MeaningGraph loadGraph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read graph file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return fromJson(ss.str());
}

void saveGraph(const MeaningGraph& g, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write graph file '" + path + "'");
    out << toJson(g);
    if (!out) throw Error("cannot write graph file '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot replace graph file '" + path + "': " + ec.message());
  }
}

// -- DOT ---------------------------------------------------------------------------

namespace {
std::string dotQuote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string toDot(const MeaningGraph& g) {
  std::ostringstream os;
  os << "digraph semgraph {\n";
  for (const auto& [id, n] : g.nodes()) {
    os << "  " << dotQuote(id) << " [label=" << dotQuote(id + ":" + n.label.str()) << "];\n";
  }
  for (const auto& e : g.edges()) {
    os << "  " << dotQuote(e.from) << " -> " << dotQuote(e.to);
    switch (e.kind) {
      case EdgeKind::Composition: os << " [style=solid]"; break;
      case EdgeKind::Specialization:
        os << " [color=\"black:invis:black\", label=" << dotQuote(specSymbol(e.style)) << "]";
        break;
      case EdgeKind::Equivalence: os << " [dir=both]"; break;
      case EdgeKind::Reference: os << " [style=dashed]"; break;
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace semgraph
