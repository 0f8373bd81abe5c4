#include "sperner/cli/app.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sperner/bounds.hpp"
#include "sperner/cli/tables.hpp"
#include "sperner/cli/witness.hpp"
#include "sperner/constructions.hpp"
#include "sperner/search.hpp"

namespace sperner::cli {

namespace {

using nlohmann::json;

constexpr double kDefaultHeuristicSeconds = 300.0;

// Raised for argument combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string kind;
  std::string path;
  std::string n_text;
  std::string k_text = "2";
  int n = 0;
  int k = 2;
  std::optional<int> m;
  std::vector<std::uint64_t> segments;
  std::optional<int> a;
  std::optional<int> ell;
  std::string mode = "exact";
  std::uint64_t budget_nodes = 0;
  double budget_secs = 0.0;
  std::uint64_t seed = 1;
  int threads = 1;
  std::optional<std::string> target;
  std::string out_path;
  std::string format;
};

int default_threads() {
  const char* env = std::getenv("SPERNER_THREADS");
  if (!env || !*env) return 1;
  int v = 0;
  const auto [end, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), v);
  if (ec != std::errc() || *end != '\0' || v < 1) throw UsageError("SPERNER_THREADS must be a positive integer");
  return v;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw UsageError("failed writing " + path);
}

// Witness to --out with the summary on stdout, or witness on stdout with
// the summary on stderr so the JSON can be piped.
void emit(const Options& o, const Witness& w, const std::string& summary, std::ostream& out, std::ostream& err) {
  if (!o.out_path.empty()) {
    write_file(o.out_path, serialize(w));
    out << summary << "witness: " << o.out_path << '\n';
  } else {
    out << serialize(w);
    err << summary;
  }
}

void emit_text(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty())
    out << text;
  else
    write_file(o.out_path, text);
}

std::string describe_tuple(const FamilyTuple& t) {
  std::ostringstream s;
  s << "sizes:";
  for (const auto& f : t.families) s << ' ' << f.size();
  const auto m = measures(t);
  s << "\nsum: " << m.sum << "\nproduct: " << m.product << '\n';
  return s.str();
}

std::string describe_bound(BoundId id, int n, int k, const BoundOptions& opts = {}) {
  const BoundValue v = eval_bound(id, n, k, opts);
  std::string line = std::string(to_string(id)) + ": " + v.render();
  if (!v.exact) line += " (approx)";
  if (!v.applicable)
    line += " [not applicable: " + v.note + "]";
  else if (!v.note.empty())
    line += " [" + v.note + "]";
  return line + '\n';
}

std::string set_text(SetMask x) {
  std::string s = "{";
  for (int e : elements_of(x)) s += (s.size() > 1 ? "," : "") + std::to_string(e);
  return s + "}";
}

// ---------------------------------------------------------------------------

int cmd_construct(const Options& o, std::ostream& out, std::ostream& err) {
  FamilyTuple t;
  json params = {{"n", o.n}, {"k", o.k}};
  std::ostringstream bounds;
  const bool pair = o.kind == "pair-product" || o.kind == "pair-sum";
  if (pair && o.k != 2) throw UsageError(o.kind + " builds a pair; k must be 2");

  if (o.kind == "pair-product") {
    t = build_pair_product(o.n);
    bounds << describe_bound(BoundId::ProdPairUpper, o.n, 2);
  } else if (o.kind == "pair-sum") {
    t = build_pair_sum(o.n);
    bounds << describe_bound(BoundId::SumPairUpper, o.n, 2);
  } else if (o.kind == "product") {
    ProductParams p = ProductParams::defaults(o.n, o.k);
    if (!o.segments.empty()) p.segments = o.segments;
    t = build_product_tuple(p);
    params["segments"] = p.segments;
    for (BoundId id : {BoundId::PiLowerConstructive, BoundId::PiUpper, BoundId::GerbnerConjUpper})
      bounds << describe_bound(id, o.n, o.k);
  } else if (o.kind == "sum") {
    if (o.a && o.ell) throw UsageError("give at most one of --a and --ell");
    SumParams p = o.a     ? SumParams::with_offset(o.n, o.k, *o.a)
                  : o.ell ? SumParams::with_offset(o.n, o.k, o.n - 2 * *o.ell)
                          : SumParams::automatic(o.n, o.k);
    t = build_sum_tuple(p);
    params["a"] = p.a;
    params["ell"] = p.ell;
    const auto chain = p.antichain();
    bounds << "antichain comparability: " << comparability_number(Family::from_masks(p.n, chain)).count << '\n';
    BoundOptions opts;
    opts.ell = p.ell;
    bounds << describe_bound(BoundId::AntichainComp, o.n, o.k, opts);
    for (BoundId id : {BoundId::SigmaLower, BoundId::SigmaUpper}) bounds << describe_bound(id, o.n, o.k);
  } else {
    ConjectureParams p = ConjectureParams::make(o.n, o.k, o.ell);
    t = build_conjecture_tuple(p);
    params["ell"] = p.ell;
    for (BoundId id : {BoundId::GerbnerConjUpper, BoundId::PiUpper}) bounds << describe_bound(id, o.n, o.k);
  }

  const Witness w = make_witness(t, Provenance{"builder", o.kind, params, std::nullopt});
  emit(o, w, "construct " + o.kind + " n=" + std::to_string(o.n) + " k=" + std::to_string(t.k()) + '\n' +
                 describe_tuple(t) + bounds.str(),
       out, err);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream f(o.path, std::ios::binary);
  if (!f) {
    err << "error: cannot read " << o.path << '\n';
    return kExitUsage;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  Witness w;
  try {
    w = parse_witness(buf.str());
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kExitUsage;
  }

  const CrossSpernerCheck check = is_cross_sperner(w.tuple);
  if (!check.ok) {
    const Violation& v = *check.violation;
    out << "INVALID: family " << v.i + 1 << " member " << set_text(v.a) << " (mask " << v.a
        << ") is comparable to family " << v.j + 1 << " member " << set_text(v.b) << " (mask " << v.b << ")\n";
    return kExitInvalid;
  }
  const TupleMeasures m = measures(w.tuple);
  if (w.stored_measures && (w.stored_measures->sum != m.sum || w.stored_measures->product != m.product)) {
    out << "INVALID: stored measures sum=" << w.stored_measures->sum << " product=" << w.stored_measures->product
        << " but the families give sum=" << m.sum << " product=" << m.product << '\n';
    return kExitInvalid;
  }
  out << "VALID n=" << w.tuple.n << " k=" << w.tuple.k() << '\n' << describe_tuple(w.tuple);
  return kExitOk;
}

// What a heuristic run must reach to count as a success.
std::optional<BigInt> construction_baseline(Measure measure, int n, int k) {
  try {
    if (measure == Measure::Product) return measures(build_product_tuple(ProductParams::defaults(n, k))).product;
    return measures(build_sum_tuple(SumParams::automatic(n, k))).sum;
  } catch (const Error&) {
    return std::nullopt;
  }
}

int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
  SearchConfig cfg;
  cfg.n = o.n;
  cfg.k = o.k;
  cfg.measure = o.kind == "pi" ? Measure::Product : Measure::Sum;
  cfg.mode = o.mode == "exact" ? SearchMode::Exact : SearchMode::Heuristic;
  cfg.budget = {o.budget_nodes, o.budget_secs};
  cfg.seed = o.seed;
  cfg.threads = o.threads;

  std::optional<BigInt> goal;
  if (cfg.mode == SearchMode::Heuristic) {
    if (o.target) {
      if (o.target->empty() || o.target->find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("--target must be a non-negative integer");
      cfg.target = BigInt(*o.target);
    } else {
      cfg.target = reference_value(cfg.measure, o.n, o.k);
    }
    goal = cfg.target ? cfg.target : construction_baseline(cfg.measure, o.n, o.k);
    if (cfg.budget.max_nodes == 0 && cfg.budget.max_seconds <= 0) cfg.budget.max_seconds = kDefaultHeuristicSeconds;
  } else if (o.target) {
    throw UsageError("--target applies to heuristic mode only");
  }

  const SearchResult r = cfg.mode == SearchMode::Exact ? exact_search(cfg) : heuristic_search(cfg);

  std::ostringstream s;
  s << "search " << o.kind << " n=" << o.n << " k=" << o.k << " mode=" << o.mode << '\n';
  s << "value: " << r.value << '\n';
  s << "optimal: " << (r.optimal ? "true" : "false") << '\n';
  if (goal) s << "target: " << *goal << (r.found && r.value >= *goal ? " (met)" : " (not met)") << '\n';
  s << "nodes: " << r.nodes << '\n';
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.3f", r.elapsed_seconds);
  s << "elapsed_seconds: " << secs << '\n';

  const bool success = cfg.mode == SearchMode::Exact ? r.optimal : (goal && r.found && r.value >= *goal);
  if (!r.found) {
    s << "no cross-Sperner " << o.k << "-tuple found\n";
    out << s.str();
    return success ? kExitOk : kExitBudget;
  }
  s << describe_tuple(r.witness);
  json params = {{"n", o.n},       {"k", o.k},
                 {"measure", o.kind}, {"mode", o.mode},
                 {"budget_nodes", o.budget_nodes}, {"budget_secs", cfg.budget.max_seconds},
                 {"threads", o.threads}, {"optimal", r.optimal}};
  std::optional<std::uint64_t> seed;
  if (cfg.mode == SearchMode::Heuristic) seed = o.seed;
  const Witness w = make_witness(r.witness, Provenance{"search", o.kind + "/" + o.mode, params, seed});
  emit(o, w, s.str(), out, err);
  return success ? kExitOk : kExitBudget;
}

int cmd_table(const Options& o, std::ostream& out) {
  const auto [n_lo, n_hi] = parse_range(o.n_text);
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (o.kind == "comp") {
    for (int n = n_lo; n <= n_hi; ++n)
      if (n < 0 || n > kMaxExactGround)
        throw UsageError("comparability tables need 0 <= n <= " + std::to_string(kMaxExactGround));
    std::vector<CompTable> tables;
    for (int n = n_lo; n <= n_hi; ++n) tables.push_back(exact_comp_table(n, o.threads));
    emit_text(o, format == "csv" ? comp_table_csv(tables) : comp_table_json(tables).dump(2) + "\n", out);
    return kExitOk;
  }
  const auto [k_lo, k_hi] = parse_range(o.k_text);
  if (k_lo < 2) throw UsageError("k must be at least 2");
  std::vector<BoundRow> rows;
  for (int n = n_lo; n <= n_hi; ++n)
    for (int k = k_lo; k <= k_hi; ++k) {
      const auto more = bound_rows(bounds_report(n, k, o.m));
      rows.insert(rows.end(), more.begin(), more.end());
    }
  emit_text(o, format == "csv" ? bounds_csv(rows) : bounds_json(rows).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.k < 2) throw UsageError("k must be at least 2");
  const BoundsReport report = bounds_report(o.n, o.k, o.m);
  const auto rows = bound_rows(report);
  const std::string format = o.format.empty() ? "csv" : o.format;
  emit_text(o, format == "csv" ? bounds_csv(rows, true) : bounds_json(rows).dump(2) + "\n", out);
  for (const auto& issue : report.inconsistencies()) err << "warning: " << issue << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  try {
    o.threads = default_threads();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Build, verify and search cross-Sperner families of subsets of [n]", "sperner"};
  app.require_subcommand(1);
  const auto format_check = CLI::IsMember({"json", "csv"});

  auto* construct = app.add_subcommand("construct", "Build an explicit cross-Sperner tuple and write its witness");
  construct->add_option("kind", o.kind, "Construction")
      ->required()
      ->check(CLI::IsMember({"pair-product", "pair-sum", "product", "sum", "conjecture"}));
  construct->add_option("--n", o.n, "Ground set size")->required();
  construct->add_option("--k", o.k, "Number of families")->capture_default_str();
  construct->add_option("--segments", o.segments, "Segment sizes t_1,...,t_k (product)")->delimiter(',');
  construct->add_option("--a", o.a, "Offset a, l = (n - a) / 2 (sum)");
  construct->add_option("--ell", o.ell, "Antichain parameter l (sum, conjecture)");
  construct->add_option("--out", o.out_path, "Witness file (default: stdout)");
  construct->add_option("--format", o.format, "Witness format")->check(CLI::IsMember({"json"}));

  auto* verify = app.add_subcommand("verify", "Check a witness file");
  verify->add_option("path", o.path, "Witness JSON")->required();

  auto* search = app.add_subcommand("search", "Maximize the product (pi) or sum (sigma) of family sizes");
  search->add_option("measure", o.kind, "pi or sigma")->required()->check(CLI::IsMember({"pi", "sigma"}));
  search->add_option("--n", o.n, "Ground set size")->required();
  search->add_option("--k", o.k, "Number of families")->capture_default_str();
  search->add_option("--mode", o.mode, "exact or heuristic")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "heuristic"}));
  search->add_option("--budget-nodes", o.budget_nodes, "Node budget (0 = unlimited)");
  search->add_option("--budget-secs", o.budget_secs, "Wall-clock budget in seconds (0 = unlimited)");
  search->add_option("--seed", o.seed, "Heuristic seed")->capture_default_str();
  search->add_option("--threads", o.threads, "Worker threads (default: SPERNER_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  search->add_option("--target", o.target, "Heuristic stops once this value is reached");
  search->add_option("--out", o.out_path, "Witness file (default: stdout)");
  search->add_option("--format", o.format, "Witness format")->check(CLI::IsMember({"json"}));

  auto* table = app.add_subcommand("table", "Comparability table (comp) or bound grid (bounds) as CSV or JSON");
  table->add_option("kind", o.kind, "comp or bounds")->required()->check(CLI::IsMember({"comp", "bounds"}));
  table->add_option("--n", o.n_text, "n or lo..hi")->required();
  table->add_option("--k", o.k_text, "k or lo..hi (bounds)")->capture_default_str();
  table->add_option("--m", o.m, "m for COMP_LOWER (bounds)");
  table->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  table->add_option("--format", o.format, "csv (default) or json")->check(format_check);
  table->add_option("--out", o.out_path, "Output file (default: stdout)");

  auto* bounds = app.add_subcommand("bounds", "Evaluate every bound at (n, k)");
  bounds->add_option("--n", o.n, "Ground set size")->required();
  bounds->add_option("--k", o.k, "Number of families")->capture_default_str();
  bounds->add_option("--m", o.m, "Family size for COMP_LOWER");
  bounds->add_option("--format", o.format, "csv (default) or json")->check(format_check);
  bounds->add_option("--out", o.out_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (search->parsed()) return cmd_search(o, out, err);
    if (table->parsed()) return cmd_table(o, out);
    return cmd_bounds(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace sperner::cli
