#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "semgraph/check.hpp"
#include "semgraph/compound.hpp"
#include "semgraph/parser.hpp"

namespace fs = std::filesystem;
using namespace semgraph;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Already formatted as `file:line:col: error: message`.
struct Diagnostic : Error {
  using Error::Error;
};

struct Options {
  std::vector<std::string> schemas;
  std::string graph;
  std::string output;
  std::string format = "text";
  std::string engine = "auto";
  std::string meaning;
  std::string statement;
  std::string schemaOut;
  std::string node;
  std::string keep;
  std::string drop;
  int maxRounds = 64;
  std::size_t bound = 8;
  bool force = false;
  bool open = false;
};

std::string readText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeAtomic(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out.flush()) throw IoError("cannot write " + path);
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot write " + path + ": " + ec.message());
  }
}

// Files are parsed one by one so diagnostics carry the right file name.
SourceSchema loadSchemas(const std::vector<std::string>& paths) {
  SourceSchema all;
  for (const auto& p : paths) {
    std::string text = readText(p);
    try {
      SourceSchema s = parseSchema(text);
      all.declarations.insert(all.declarations.end(), s.declarations.begin(), s.declarations.end());
    } catch (const SyntaxError& e) {
      throw Diagnostic(formatDiagnostic(p, e.span(), Severity::Error, e.message()));
    }
  }
  return all;
}

Catalog loadCatalog(const Options& o) { return Catalog::resolve(loadSchemas(o.schemas)); }

MeaningGraph loadInputGraph(const Options& o) {
  if (o.graph.empty()) return MeaningGraph{};
  try {
    return fromJson(readText(o.graph));
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(o.graph + ": " + e.what());
  }
}

void writeGraph(const Options& o, const MeaningGraph& g) { writeAtomic(o.output, toJson(g)); }

int cmdCheck(const Options& o) {
  auto rep = checkSchema(loadCatalog(o), engineFromName(o.engine), o.bound);
  std::cout << rep.text();
  return rep.failed() ? kFail : kOk;
}

int cmdValidate(const Options& o) {
  Catalog cat = loadCatalog(o);
  MeaningGraph g = loadInputGraph(o);
  auto rep = validate(g, cat, ValidateOptions{o.open});
  if (o.format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : rep.items) {
      out.push_back({{"severity", to_string(v.severity)}, {"rule", v.rule}, {"subject", v.subject}, {"message", v.message}});
    }
    writeAtomic(o.output, out.dump(2) + "\n");
  } else {
    writeAtomic(o.output, rep.text());
  }
  return rep.ok() ? kOk : kFail;
}

int cmdChase(const Options& o) {
  Catalog cat = loadCatalog(o);
  auto res = chase(loadInputGraph(o), cat, ChaseOptions{o.maxRounds});
  writeGraph(o, res.graph);
  std::cerr << "chase: " << res.created.size() << " nodes created in " << res.rounds << " rounds\n";
  return kOk;
}

int cmdJoin(const Options& o) {
  Catalog cat = loadCatalog(o);
  MeaningGraph g = loadInputGraph(o);
  auto created = materializeJoin(g, cat, MeaningLabel::parse(o.meaning));
  writeGraph(o, g);
  std::cerr << "join: " << g.withLabel(MeaningLabel::parse(o.meaning)).size() << " join nodes, " << created.size()
            << " nodes created\n";
  return kOk;
}

int cmdIntersect(const Options& o) {
  Catalog cat = loadCatalog(o);
  MeaningGraph g = loadInputGraph(o);
  auto created = materializeIntersection(g, cat, MeaningLabel::parse(o.meaning));
  writeGraph(o, g);
  std::cerr << "intersect: " << created.size() << " nodes created\n";
  return kOk;
}

int cmdSpecialize(const Options& o) {
  Catalog cat = loadCatalog(o);
  MeaningGraph g = loadInputGraph(o);
  SourceSchema stmts = loadSchemas({o.statement});
  if (stmts.declarations.size() != 1) throw ResolutionError(o.statement + ": expected one specialize statement");
  SpecializeResult res;
  try {
    res = applySpecialize(cat, g, stmts.declarations[0], o.bound);
  } catch (const SpecializeRejected& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kFail;
  }
  if (!o.schemaOut.empty()) writeAtomic(o.schemaOut, printSchema(res.catalog.source()));
  writeGraph(o, res.graph);
  std::cerr << "specialize: " << res.created.size() << " nodes created\n";
  return kOk;
}

int cmdMerge(const Options& o) {
  Catalog cat = loadCatalog(o);
  MeaningGraph g = loadInputGraph(o);
  if (o.keep.empty() != o.drop.empty()) throw CLI::ValidationError("--keep and --drop go together");
  if (!o.keep.empty()) {
    mergeEquivalent(g, cat, o.keep, o.drop);
  } else {
    std::cerr << "merge: " << mergeAllEquivalent(g, cat) << " nodes merged\n";
  }
  writeGraph(o, g);
  return kOk;
}

int cmdDelete(const Options& o) {
  Catalog cat = loadCatalog(o);
  MeaningGraph g = loadInputGraph(o);
  auto gone = deleteNode(g, cat, o.node, o.force);
  writeGraph(o, g);
  for (const auto& id : gone) std::cerr << "deleted " << id << "\n";
  return kOk;
}

int cmdExport(const Options& o) {
  MeaningGraph g = loadInputGraph(o);
  if (o.format == "dot") {
    writeAtomic(o.output, toDot(g));
  } else if (o.format == "json") {
    writeGraph(o, g);
  } else {
    throw CLI::ValidationError("export supports --format json or dot");
  }
  return kOk;
}

int cmdCatalog(const Options& o) {
  writeAtomic(o.output, loadCatalog(o).dump());
  return kOk;
}

int cmdPrint(const Options& o) {
  writeAtomic(o.output, printSchema(loadSchemas(o.schemas)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic meaning graph toolkit"};
  app.require_subcommand(1, 1);
  Options o;

  auto schemaOpt = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("-s,--schema", o.schemas, "schema file; repeat to concatenate in order");
    if (required) opt->required();
  };
  auto graphOpt = [&](CLI::App* c) { c->add_option("-g,--graph", o.graph, "graph file (.sgraph.json)")->required(); };
  auto outOpt = [&](CLI::App* c) { c->add_option("-o,--output", o.output, "output file (default stdout)"); };

  std::map<std::string, int (*)(const Options&)> handlers;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    handlers[name] = fn;
    return app.add_subcommand(name, help);
  };

  auto* check = sub("check", "resolve schemas and run consistency and completeness checks", cmdCheck);
  schemaOpt(check, true);
  check->add_option("--engine", o.engine, "consistency engine")->check(CLI::IsMember({"auto", "structural", "enumerate"}));
  check->add_option("--bound", o.bound, "completeness search bound");

  auto* val = sub("validate", "validate a graph against schemas", cmdValidate);
  schemaOpt(val, true);
  graphOpt(val);
  outOpt(val);
  val->add_flag("--open", o.open, "tolerate missing parts of an unfinished graph");
  val->add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json"}));

  auto* ch = sub("chase", "materialize complement constraints", cmdChase);
  schemaOpt(ch, true);
  graphOpt(ch);
  outOpt(ch);
  ch->add_option("--max-rounds", o.maxRounds, "round limit");

  auto* jn = sub("join", "materialize a natural join meaning", cmdJoin);
  schemaOpt(jn, true);
  graphOpt(jn);
  outOpt(jn);
  jn->add_option("-m,--meaning", o.meaning, "join label")->required();

  auto* in = sub("intersect", "materialize an intersection meaning", cmdIntersect);
  schemaOpt(in, true);
  graphOpt(in);
  outOpt(in);
  in->add_option("-m,--meaning", o.meaning, "intersection label")->required();

  auto* sp = sub("specialize", "apply a specialize statement and migrate the graph", cmdSpecialize);
  schemaOpt(sp, true);
  graphOpt(sp);
  outOpt(sp);
  sp->add_option("--statement", o.statement, "file holding one specialize statement")->required();
  sp->add_option("--schema-out", o.schemaOut, "write the extended schema here");
  sp->add_option("--bound", o.bound, "completeness search bound");

  auto* mg = sub("merge", "merge intensively equivalent nodes", cmdMerge);
  schemaOpt(mg, true);
  graphOpt(mg);
  outOpt(mg);
  mg->add_option("--keep", o.keep, "node kept when merging one pair");
  mg->add_option("--drop", o.drop, "node merged away");

  auto* del = sub("delete", "delete a node with its cascade", cmdDelete);
  schemaOpt(del, true);
  graphOpt(del);
  outOpt(del);
  del->add_option("--node", o.node, "node id")->required();
  del->add_flag("--force", o.force, "succeed when the node is missing");

  auto* ex = sub("export", "write a graph as json or dot", cmdExport);
  graphOpt(ex);
  outOpt(ex);
  ex->add_option("--format", o.format, "json or dot")->required();

  auto* ct = sub("catalog", "print the resolved catalog", cmdCatalog);
  schemaOpt(ct, true);
  outOpt(ct);

  auto* pr = sub("print", "print schemas in canonical form", cmdPrint);
  schemaOpt(pr, true);
  outOpt(pr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    return handlers.at(app.get_subcommands().front()->get_name())(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Diagnostic& e) {
    std::cerr << e.what() << "\n";
    return kFail;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.rule() << ": " << e.what() << "\n";
    return kFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
