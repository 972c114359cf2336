// tantra: command-line front end. Data goes to stdout, diagnostics to stderr.
// Exit codes: 0 ok, 1 validation or evaluation failure, 2 usage or parse
// error, 3 I/O failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tantra/dataset.hpp"
#include "tantra/error.hpp"
#include "tantra/export.hpp"
#include "tantra/ingest.hpp"
#include "tantra/metrics.hpp"
#include "tantra/persistence.hpp"
#include "tantra/query.hpp"
#include "tantra/toc.hpp"
#include "tantra/validator.hpp"

namespace {

using namespace tantra;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct CliConfig {
  std::string graph;
  std::string metrics_config;
  std::string policy;
  std::string format = "tsv";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoFailure:
      return kIo;
    case ErrorCode::UnresolvedBinding:
    case ErrorCode::MarkerUnmeasured:
    case ErrorCode::EmptyAspect:
    case ErrorCode::EmptyGroup:
      return kFailed;
    default:
      return kUsage;
  }
}

const std::string& require_graph(const CliConfig& cfg) {
  if (cfg.graph.empty()) throw UsageError("no graph path: pass --graph or set TANTRA_GRAPH");
  return cfg.graph;
}

TantraGraph open_graph(const CliConfig& cfg) { return load(require_graph(cfg)); }

MetricsConfig metrics_config(const CliConfig& cfg) {
  return cfg.metrics_config.empty() ? MetricsConfig::default_config()
                                    : load_metrics_config(cfg.metrics_config);
}

SchemaPolicy schema_policy(const CliConfig& cfg) {
  return cfg.policy.empty() ? SchemaPolicy::default_policy() : load_policy(cfg.policy);
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw UsageError("unsupported --format " + format);
}

// An id, or the unique name of an element of `aspect`.
ElementId resolve_ref(const TantraGraph& g, const std::string& text, Aspect aspect) {
  ElementId id(text);
  if (g.contains(id)) return id;
  if (const Element* e = g.find_by_name(aspect, text)) return e->id();
  throw Error(ErrorCode::UnknownId,
              "no " + std::string(to_string(aspect)) + " element with id or name '" + text + "'");
}

Aspect parse_aspect_arg(const std::string& text) {
  auto a = parse_aspect(text);
  if (!a) throw UsageError("unknown aspect '" + text + "'");
  return *a;
}

int run_init(const CliConfig& cfg, bool demo) {
  TantraGraph g = demo ? build_agri_dataset() : TantraGraph{};
  save(g, require_graph(cfg));
  std::cerr << "wrote " << g.element_count() << " elements to " << cfg.graph << "\n";
  return kOk;
}

int run_validate(const CliConfig& cfg) {
  check_format(cfg.format, {"tsv", "jsonl"});
  const TantraGraph g = open_graph(cfg);
  const ValidationReport report = validate(g, schema_policy(cfg));
  std::cout << (cfg.format == "jsonl" ? report_to_jsonl(report) : report_to_tsv(report));
  if (!report.ok()) std::cerr << report.violations.size() << " violation(s)\n";
  return report.ok() ? kOk : kFailed;
}

int run_query(const CliConfig& cfg, const std::string& text) {
  check_format(cfg.format, {"tsv", "jsonl"});
  const Query q = parse_query(text);
  const TantraGraph g = open_graph(cfg);
  const QueryResult r = execute(g, q);
  std::cout << (cfg.format == "jsonl" ? result_to_jsonl(g, r) : result_to_tsv(g, r));
  std::cerr << r.rows.size() << " row(s)\n";
  return kOk;
}

int run_export(const CliConfig& cfg, const std::string& format, const std::string& query) {
  check_format(format, {"dot", "graphml"});
  std::optional<Query> q;
  if (!query.empty()) q = parse_query(query);
  const TantraGraph g = open_graph(cfg);
  const Selection sel = q ? Selection::of(execute(g, *q)) : Selection::all(g);
  std::cout << (format == "dot" ? export_dot(g, sel) : export_graphml(g, sel));
  return kOk;
}

int run_entropy(const CliConfig& cfg, const std::string& aspect) {
  const TantraGraph g = open_graph(cfg);
  std::vector<std::pair<Aspect, double>> rows;
  if (!aspect.empty()) {
    const Aspect a = parse_aspect_arg(aspect);
    rows.emplace_back(a, reification_entropy(g, a));
  } else {
    for (Aspect a : kAllAspects) {
      if (!g.by_aspect(a).empty()) rows.emplace_back(a, reification_entropy(g, a));
    }
  }
  std::cout << entropy_to_tsv(rows);
  return kOk;
}

int run_separation(const CliConfig& cfg, const std::string& kind, const std::string& from,
                   const std::string& to) {
  auto k = parse_separation_kind(kind);
  if (!k) throw UsageError("unknown separation kind '" + kind + "'");
  const TantraGraph g = open_graph(cfg);
  const auto s = separation_score(g, *k, GroupSelector::parse(from), GroupSelector::parse(to),
                                  metrics_config(cfg));
  std::cout << separation_to_tsv(s);
  return kOk;
}

int run_goals(const CliConfig& cfg, const std::string& file, const std::string& event) {
  const TantraGraph g = open_graph(cfg);
  const auto goals = load_goals(file);
  std::optional<ElementId> at;
  if (!event.empty()) at = resolve_ref(g, event, Aspect::When);
  std::vector<std::pair<const GoalRecord*, std::vector<GoalResult>>> rows;
  for (const auto& goal : goals) rows.emplace_back(&goal, goal_eval(g, goal, at));
  std::cout << goals_to_tsv(rows);
  return kOk;
}

int run_phenomena(const CliConfig& cfg, const std::string& baseline, const std::string& followup) {
  const TantraGraph g = open_graph(cfg);
  const auto rows = phenomena_report(g, resolve_ref(g, baseline, Aspect::When),
                                     resolve_ref(g, followup, Aspect::When), metrics_config(cfg));
  std::cout << phenomena_to_tsv(rows);
  return kOk;
}

int run_toc_register(const CliConfig& cfg, const std::string& file) {
  TantraGraph g = open_graph(cfg);
  const ElementId id = register_intervention(g, load_intervention(file));
  save(g, cfg.graph);
  std::cout << id.str() << "\n";
  return kOk;
}

int run_toc_eval(const CliConfig& cfg, const std::string& id, const std::string& baseline,
                 const std::string& followup) {
  const TantraGraph g = open_graph(cfg);
  const auto rows = evaluate_intervention(g, ElementId(id), resolve_ref(g, baseline, Aspect::When),
                                          resolve_ref(g, followup, Aspect::When));
  std::cout << evaluation_to_tsv(rows);
  return kOk;
}

int run_toc_chain(const CliConfig& cfg, const std::string& id) {
  const TantraGraph g = open_graph(cfg);
  const ChainReport report = backward_chain(g, ElementId(id));
  std::cout << chain_to_tsv(report);
  if (!report.flags.empty()) std::cerr << report.flags.size() << " flag(s)\n";
  return kOk;
}

int run_toc_export(const CliConfig& cfg, const std::string& id) {
  const TantraGraph g = open_graph(cfg);
  std::cout << intervention_to_json(fetch_intervention(g, ElementId(id)));
  return kOk;
}

int run_toc_link(const CliConfig& cfg, const std::string& id, const std::string& assumption,
                 const std::string& evidence) {
  TantraGraph g = open_graph(cfg);
  if (!g.contains(ElementId(evidence))) {
    throw Error(ErrorCode::UnknownId, "no element with id '" + evidence + "'");
  }
  const ElementId edge = link_evidence(g, ElementId(id), assumption, ElementId(evidence));
  save(g, cfg.graph);
  std::cout << edge.str() << "\n";
  return kOk;
}

int run_ingest(const CliConfig& cfg, const std::string& file, const std::string& mapping) {
  TantraGraph g = open_graph(cfg);
  IngestResult r;
  if (mapping.empty()) {
    r = ingest_jsonl(g, file);
  } else {
    r = ingest_csv(g, file, load_mapping(mapping));
  }
  save(g, cfg.graph);
  std::cout << ingest_result_to_tsv(r);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tantra knowledge-graph engine"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI or TOML file supplying option defaults");

  CliConfig cfg;
  if (const char* env = std::getenv("TANTRA_GRAPH")) cfg.graph = env;
  app.add_option("--graph", cfg.graph, "Graph file (JSON lines); default $TANTRA_GRAPH");
  app.add_option("--metrics-config", cfg.metrics_config, "Metrics configuration file");
  app.add_option("--policy", cfg.policy, "Schema policy file");

  std::function<int()> action;

  auto* init = app.add_subcommand("init", "Write an empty graph, or the bundled dataset");
  bool demo = false;
  init->add_flag("--demo", demo, "Write the bundled Indian agricultural dataset");
  init->callback([&] { action = [&] { return run_init(cfg, demo); }; });

  auto* val = app.add_subcommand("validate", "Validate against the schema policy");
  val->add_option("--format", cfg.format, "tsv or jsonl");
  val->callback([&] { action = [&] { return run_validate(cfg); }; });

  auto* query = app.add_subcommand("query", "Run a MATCH query");
  std::string query_text;
  query->add_option("dsl", query_text, "Query text")->required();
  query->add_option("--format", cfg.format, "tsv or jsonl");
  query->callback([&] { action = [&] { return run_query(cfg, query_text); }; });

  auto* exp = app.add_subcommand("export", "Render the graph or a query selection");
  std::string export_format = "dot";
  std::string export_query;
  exp->add_option("--format", export_format, "dot or graphml");
  exp->add_option("--query", export_query, "Export only the nodes a query binds");
  exp->callback([&] { action = [&] { return run_export(cfg, export_format, export_query); }; });

  auto* metrics = app.add_subcommand("metrics", "Entropy, separation, goals, phenomena");
  metrics->require_subcommand(1);
  std::string aspect, kind, from, to, goals_file, event, baseline, followup;
  auto* ent = metrics->add_subcommand("entropy", "Reification entropy per aspect");
  ent->add_option("--aspect", aspect, "One aspect; default every non-empty aspect");
  ent->callback([&] { action = [&] { return run_entropy(cfg, aspect); }; });
  auto* sep = metrics->add_subcommand("separation", "Separation score between two groups");
  sep->add_option("--kind", kind)->required();
  sep->add_option("--from", from, "Group selector A")->required();
  sep->add_option("--to", to, "Group selector B")->required();
  sep->callback([&] { action = [&] { return run_separation(cfg, kind, from, to); }; });
  auto* goals = metrics->add_subcommand("goals", "Evaluate goal records");
  goals->add_option("--file", goals_file)->required();
  goals->add_option("--event", event, "Restrict measures to one event");
  goals->callback([&] { action = [&] { return run_goals(cfg, goals_file, event); }; });
  auto* phen = metrics->add_subcommand("phenomena", "Phenomena markers between two events");
  phen->add_option("--baseline", baseline)->required();
  phen->add_option("--followup", followup)->required();
  phen->callback([&] { action = [&] { return run_phenomena(cfg, baseline, followup); }; });

  auto* toc = app.add_subcommand("toc", "Theory-of-change interventions");
  toc->require_subcommand(1);
  std::string toc_file, toc_id, assumption, evidence;
  auto* reg = toc->add_subcommand("register", "Register an intervention record");
  reg->add_option("--file", toc_file)->required();
  reg->callback([&] { action = [&] { return run_toc_register(cfg, toc_file); }; });
  auto* eval = toc->add_subcommand("eval", "Marker deltas between two events");
  eval->add_option("--id", toc_id)->required();
  eval->add_option("--baseline", baseline)->required();
  eval->add_option("--followup", followup)->required();
  eval->callback([&] { action = [&] { return run_toc_eval(cfg, toc_id, baseline, followup); }; });
  auto* chain = toc->add_subcommand("chain", "Backward chain from outcome to actors");
  chain->add_option("--id", toc_id)->required();
  chain->callback([&] { action = [&] { return run_toc_chain(cfg, toc_id); }; });
  auto* texp = toc->add_subcommand("export", "Print a stored intervention record");
  texp->add_option("--id", toc_id)->required();
  texp->callback([&] { action = [&] { return run_toc_export(cfg, toc_id); }; });
  auto* link = toc->add_subcommand("link", "Attach evidence to an assumption");
  link->add_option("--id", toc_id)->required();
  link->add_option("--assumption", assumption)->required();
  link->add_option("--evidence", evidence, "Evidence element id")->required();
  link->callback(
      [&] { action = [&] { return run_toc_link(cfg, toc_id, assumption, evidence); }; });

  auto* ingest = app.add_subcommand("ingest", "Load CSV (with --mapping) or JSON-lines records");
  std::string ingest_file, mapping;
  ingest->add_option("--file", ingest_file)->required();
  ingest->add_option("--mapping", mapping, "CSV mapping file; omit for JSON lines");
  ingest->callback([&] { action = [&] { return run_ingest(cfg, ingest_file, mapping); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "tantra: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "tantra: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "tantra: " << e.what() << "\n";
    return kIo;
  }
}
