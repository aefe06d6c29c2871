// latwire: generate ordered trees, wire them into Z^2, check embeddings,
// tabulate the volume recurrence, benchmark, and compare against the
// brute-force optimum on small trees.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "latwire/analysis.hpp"
#include "latwire/errors.hpp"
#include "latwire/oracle.hpp"
#include "latwire/rational.hpp"
#include "latwire/render.hpp"
#include "latwire/serialize.hpp"
#include "latwire/tree.hpp"
#include "latwire/wiring.hpp"

#ifndef LATWIRE_VERSION
#define LATWIRE_VERSION "0.0.0"
#endif

namespace {

using namespace latwire;
using nlohmann::ordered_json;

enum Exit : int {
  kOk = 0,
  kInputError = 1,
  kUsageError = 2,
  kValidationFailure = 3,
  kConsistencyFailure = 4,
  kBudgetExceeded = 5,
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Meta {
  std::string command_line;
  std::optional<std::uint64_t> seed;

  ordered_json json() const {
    ordered_json m;
    m["version"] = LATWIRE_VERSION;
    m["command"] = command_line;
    m["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
    return m;
  }

  std::string line() const {
    std::string s = "latwire " LATWIRE_VERSION " | " + command_line + " | seed ";
    return s + (seed ? std::to_string(*seed) : "none");
  }
};

std::string read_input(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::int64_t ceil_seven_thirds(std::int64_t n) { return (7 * n + 2) / 3; }

// Per-sample seed for bench: distinct for every (seed, size, index).
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  std::string family = "random";
  int n = 1;
  std::uint64_t seed = 0;
  std::string output;
};

int run_gen(const GenOptions& o) {
  OrderedTree tree;
  if (o.family == "bn") {
    if (o.n < 0 || o.n > 28) throw CLI::ValidationError("--n", "bn needs 0 <= n <= 28");
    tree = generate_bn(o.n);
  } else if (o.family == "sn") {
    if (o.n < 2 || o.n > 28) throw CLI::ValidationError("--n", "sn needs 2 <= n <= 28");
    tree = generate_sn(o.n);
  } else if (o.family == "path") {
    if (o.n < 1) throw CLI::ValidationError("--n", "path needs n >= 1");
    tree = generate_path(o.n);
  } else {
    if (o.n < 1) throw CLI::ValidationError("--n", "random needs n >= 1");
    tree = random_tree(o.n, o.seed);
  }
  emit(o.output, to_text(tree) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- wire

struct WireOptions {
  std::string input = "-";
  std::string format = "json";
  std::string output;
};

int run_wire(const WireOptions& o, const Meta& meta) {
  const OrderedTree tree = parse_tree(read_input(o.input));
  const GridWiring w = wire(tree);
  std::string out;
  if (o.format == "svg") {
    out = render_svg(w, tree, meta.line());
  } else if (o.format == "text") {
    std::ostringstream s;
    s << "# " << meta.line() << "\n";
    for (std::size_t v = 0; v < w.vertices.size(); ++v)
      s << v << ' ' << w.vertices[v].x << ' ' << w.vertices[v].y << "\n";
    const Box b = bounding_box(w);
    s << "volume " << volume(w) << "\n";
    s << "bbox " << b.min.x << ' ' << b.min.y << ' ' << b.max.x << ' ' << b.max.y << "\n";
    out = s.str();
  } else {
    auto j = embedding_json(w);
    j["meta"] = meta.json();
    out = j.dump() + "\n";
  }
  emit(o.output, out);
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string input = "-";
  int k = 1;
  std::string output;
};

std::string point_text(GridPoint p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

int run_verify(const VerifyOptions& o) {
  EmbeddingDocument doc;
  try {
    doc = parse_embedding(read_input(o.input));
  } catch (const FormatError& e) {
    throw InputError(e.what());
  }
  const auto report = validate_k_wiring(doc.wiring, o.k);
  const auto vol = volume(doc.wiring);
  const Box box = doc.wiring.empty() ? Box{} : bounding_box(doc.wiring);
  std::ostringstream s;
  s << "vertices " << doc.wiring.vertices.size() << "\n";
  s << "edges " << doc.wiring.edges.size() << "\n";
  s << "k " << o.k << "\n";
  s << "k_vertex " << report.k_vertex << "\n";
  s << "k_edge " << report.k_edge << "\n";
  for (const auto& c : report.vertex_collisions) {
    s << "collision " << point_text(c.point);
    for (NodeId v : c.nodes) s << ' ' << v;
    s << "\n";
  }
  for (const auto& ov : report.edge_overloads) {
    s << "overload " << point_text(ov.edge.a) << "-" << point_text(ov.edge.b);
    for (auto i : ov.paths) s << ' ' << doc.wiring.edges[i].from << "->" << doc.wiring.edges[i].to;
    s << "\n";
  }
  for (const auto& e : report.structural_errors) s << "structural " << e << "\n";
  const bool volume_ok = vol == doc.stated_volume;
  const bool bbox_ok = box == doc.stated_bbox;
  s << "volume " << vol << (volume_ok ? "" : " (stated " + std::to_string(doc.stated_volume) + ")") << "\n";
  s << "bbox " << (bbox_ok ? "ok" : "mismatch") << "\n";
  int code = kOk;
  if (!report.valid()) {
    code = kValidationFailure;
  } else if (!volume_ok || !bbox_ok) {
    code = kConsistencyFailure;
  }
  s << (code == kOk ? "valid" : code == kValidationFailure ? "invalid" : "inconsistent") << "\n";
  emit(o.output, s.str());
  return code;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeOptions {
  int n_max = 30;
  std::string format = "text";
  std::string output;
};

int run_analyze(const AnalyzeOptions& o, const Meta& meta) {
  if (o.n_max < 3 || o.n_max > 60) throw CLI::ValidationError("--n-max", "needs 3 <= n-max <= 60");
  const auto table = recurrence_table(o.n_max);
  const Rational limit = Rational(7) / 3;

  struct Row {
    int n;
    std::optional<Rational> sum, closed;
    Rational bound, refined;
  };
  std::vector<Row> rows;
  for (int n = 0; n <= o.n_max; ++n) {
    Row r{n, {}, {}, table.bound[static_cast<std::size_t>(n)], table.refined[static_cast<std::size_t>(n)]};
    if (n >= 3) {
      r.sum = vsn_sum(n);
      r.closed = vsn_closed_form(n);
    }
    rows.push_back(r);
  }
  const Rational gap = limit - table.bound.back();

  std::ostringstream s;
  if (o.format == "json") {
    ordered_json j;
    j["meta"] = meta.json();
    j["limit"] = to_fraction_string(limit);
    auto& arr = j["rows"] = ordered_json::array();
    auto cell = [](const std::optional<Rational>& r) {
      return r ? ordered_json{{"exact", to_fraction_string(*r)}, {"decimal", to_decimal(*r)}} : ordered_json(nullptr);
    };
    for (const auto& r : rows) {
      ordered_json row;
      row["n"] = r.n;
      row["vsn_sum"] = cell(r.sum);
      row["vsn_closed_form"] = cell(r.closed);
      row["discrepancy"] = r.sum ? ordered_json(*r.sum != *r.closed) : ordered_json(nullptr);
      row["v_bound"] = cell(r.bound);
      row["v_refined"] = cell(r.refined);
      arr.push_back(row);
    }
    j["gap_to_limit"] = cell(gap);
    s << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    s << "# " << meta.line() << "\n";
    s << "n,vsn_sum,vsn_sum_dec,vsn_closed_form,vsn_closed_form_dec,discrepancy,v_bound,v_bound_dec,v_refined,"
         "v_refined_dec\n";
    auto pair = [](const std::optional<Rational>& r) {
      return r ? to_fraction_string(*r) + "," + to_decimal(*r) : std::string(",");
    };
    for (const auto& r : rows) {
      s << r.n << ',' << pair(r.sum) << ',' << pair(r.closed) << ','
        << (r.sum ? (*r.sum != *r.closed ? "yes" : "no") : "") << ',' << pair(r.bound) << ',' << pair(r.refined)
        << "\n";
    }
    s << "# gap 7/3 - V(" << o.n_max << ") = " << to_fraction_string(gap) << " = " << to_decimal(gap) << "\n";
  } else {
    s << "# " << meta.line() << "\n";
    auto both = [](const std::optional<Rational>& r) {
      return r ? to_fraction_string(*r) + " (" + to_decimal(*r) + ")" : std::string("-");
    };
    s << std::left << std::setw(4) << "n" << std::setw(28) << "vsn_sum" << std::setw(28) << "vsn_closed_form"
      << std::setw(6) << "diff" << std::setw(44) << "V(n)" << "V(n) refined\n";
    for (const auto& r : rows) {
      s << std::left << std::setw(4) << r.n << std::setw(28) << both(r.sum) << std::setw(28) << both(r.closed)
        << std::setw(6) << (r.sum ? (*r.sum != *r.closed ? "yes" : "no") : "-") << std::setw(44) << both(r.bound)
        << both(r.refined) << "\n";
    }
    s << "gap 7/3 - V(" << o.n_max << ") = " << to_decimal(gap) << "\n";
  }
  emit(o.output, s.str());
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  std::vector<std::int64_t> sizes{10, 100, 1000};
  int samples = 100;
  std::uint64_t seed = 0;
  std::string family = "random";
  bool timing = false;
  std::string output;
};

int run_bench(const BenchOptions& o, const Meta& meta) {
  for (auto n : o.sizes)
    if (n < 1) throw CLI::ValidationError("--sizes", "sizes must be >= 1");
  if (o.samples < 1) throw CLI::ValidationError("--samples", "needs at least one sample");

  std::ostringstream s;
  s << "# " << meta.line() << "\n";
  s << "family,size,samples,max_volume,max_ratio,mean_ratio,max_bbox_area,bound" << (o.timing ? ",wall_ms" : "")
    << "\n";
  int code = kOk;
  for (auto n : o.sizes) {
    std::int64_t max_vol = 0, total_vol = 0, max_area = 0;
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < o.samples; ++i) {
      const auto tree = o.family == "path"
                            ? generate_path(n)
                            : random_tree(n, mix(o.seed ^ mix(static_cast<std::uint64_t>(n) * 1000003ULL + i)));
      const auto w = wire(tree);
      const auto vol = volume(w);
      if (vol > ceil_seven_thirds(n) || !validate_k_wiring(w, 1).valid()) {
        std::cerr << "bound violation: n=" << n << " volume=" << vol << "\n" << to_text(tree) << "\n";
        code = kValidationFailure;
      }
      max_vol = std::max(max_vol, vol);
      total_vol += vol;
      max_area = std::max(max_area, bounding_box(w).area());
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const Rational max_ratio = Rational(max_vol) / n;
    const Rational mean_ratio = Rational(total_vol) / (Rational(n) * o.samples);
    s << o.family << ',' << n << ',' << o.samples << ',' << max_vol << ',' << to_decimal(max_ratio) << ','
      << to_decimal(mean_ratio) << ',' << max_area << ',' << ceil_seven_thirds(n);
    if (o.timing) s << ',' << std::fixed << std::setprecision(3) << ms;
    s << "\n";
  }
  emit(o.output, s.str());
  return code;
}

// ---------------------------------------------------------------- oracle

struct OracleCliOptions {
  int max_n = 5;
  std::uint64_t budget = kDefaultSearchBudget;
  std::int64_t box = 0;
  bool scratch = false;
  std::string format = "text";
  std::string output;
};

int run_oracle(const OracleCliOptions& o, const Meta& meta) {
  if (o.max_n < 1 || o.max_n > kOracleVertexLimit)
    throw CLI::ValidationError("--max-n", "needs 1 <= max-n <= " + std::to_string(kOracleVertexLimit));
  OracleOptions opts;
  opts.budget = o.budget;
  opts.box_half_width = o.box;
  opts.seed_with_construction = !o.scratch;

  struct Row {
    int n;
    std::string tree;
    std::optional<OracleResult> result;
    std::int64_t constructed;
  };
  std::vector<Row> rows;
  bool budget_hit = false, sandwich_broken = false;
  for (int n = 1; n <= o.max_n; ++n)
    for (const auto& t : enumerate_trees(n)) {
      Row r{n, to_text(t), {}, volume(wire(t))};
      try {
        r.result = optimal_wiring(t, opts);
        if (r.result->best_volume < n || r.result->best_volume > r.constructed || r.constructed > ceil_seven_thirds(n))
          sandwich_broken = true;
      } catch (const BudgetError& e) {
        std::cerr << "budget exceeded on " << r.tree << ": " << e.what() << "\n";
        budget_hit = true;
      }
      rows.push_back(std::move(r));
    }

  std::ostringstream s;
  if (o.format == "json") {
    ordered_json j;
    j["meta"] = meta.json();
    auto& arr = j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row;
      row["n"] = r.n;
      row["tree"] = r.tree;
      row["constructed"] = r.constructed;
      row["ceil_7_3_n"] = ceil_seven_thirds(r.n);
      if (r.result) {
        row["optimal"] = r.result->best_volume;
        auto witness = embedding_json(r.result->witness);
        witness["oracle"] = {{"explored", r.result->explored},
                             {"box", r.result->box_half_width},
                             {"budget", r.result->budget}};
        row["witness"] = witness;
      } else {
        row["optimal"] = nullptr;
        row["error"] = "budget exceeded";
      }
      arr.push_back(row);
    }
    s << j.dump(2) << "\n";
  } else {
    const bool csv = o.format == "csv";
    s << "# " << meta.line() << "\n";
    if (csv) {
      s << "n,tree,optimal,constructed,ceil_7_3_n,explored,box\n";
    } else {
      s << std::left << std::setw(4) << "n" << std::setw(18) << "tree" << std::setw(9) << "optimal" << std::setw(13)
        << "constructed" << std::setw(10) << "7/3*n" << "explored\n";
    }
    for (const auto& r : rows) {
      const std::string opt = r.result ? std::to_string(r.result->best_volume) : "budget";
      const std::string explored = r.result ? std::to_string(r.result->explored) : "-";
      if (csv) {
        s << r.n << ',' << r.tree << ',' << opt << ',' << r.constructed << ',' << ceil_seven_thirds(r.n) << ','
          << explored << ',' << (r.result ? std::to_string(r.result->box_half_width) : "") << "\n";
      } else {
        s << std::left << std::setw(4) << r.n << std::setw(18) << r.tree << std::setw(9) << opt << std::setw(13)
          << r.constructed << std::setw(10) << ceil_seven_thirds(r.n) << explored << "\n";
      }
    }
  }
  emit(o.output, s.str());
  if (budget_hit) return kBudgetExceeded;
  return sandwich_broken ? kValidationFailure : kOk;
}

std::string join_command(int argc, char** argv) {
  std::string s = "latwire";
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice wirings of ordered trees of maximum degree 3"};
  app.set_version_flag("--version", LATWIRE_VERSION);
  app.set_config("--config", "", "key=value file mirroring the flags ([command] sections or command.key)");
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Print a tree in parenthesis notation");
  gen_cmd->add_option("--family", gen.family)->check(CLI::IsMember({"bn", "sn", "random", "path"}))->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Size parameter (height for bn/sn, vertices for random/path)")->required();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.output);

  WireOptions wire_opts;
  auto* wire_cmd = app.add_subcommand("wire", "Embed a tree and print the embedding");
  wire_cmd->add_option("--input", wire_opts.input, "Tree file, - for stdin")->capture_default_str();
  wire_cmd->add_option("--format", wire_opts.format)->check(CLI::IsMember({"json", "svg", "text"}))->capture_default_str();
  wire_cmd->add_option("-o,--output", wire_opts.output);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check an embedding file");
  verify_cmd->add_option("--input", verify.input, "Embedding JSON, - for stdin")->capture_default_str();
  verify_cmd->add_option("--k", verify.k)->check(CLI::PositiveNumber)->capture_default_str();
  verify_cmd->add_option("-o,--output", verify.output);

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Tabulate the spiral values and the V(n) recurrence");
  analyze_cmd->add_option("--n-max", analyze.n_max)->capture_default_str();
  analyze_cmd->add_option("--format", analyze.format)->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
  analyze_cmd->add_option("-o,--output", analyze.output);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Wire random trees and report volume ratios as CSV");
  bench_cmd->add_option("--sizes", bench.sizes)->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--samples", bench.samples)->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
  bench_cmd->add_option("--family", bench.family)->check(CLI::IsMember({"random", "path"}))->capture_default_str();
  bench_cmd->add_flag("--timing", bench.timing, "Add a wall-clock column (output is no longer reproducible)");
  bench_cmd->add_option("-o,--output", bench.output);

  OracleCliOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare the construction with the optimum on all small trees");
  oracle_cmd->add_option("--max-n", oracle.max_n)->capture_default_str();
  oracle_cmd->add_option("--budget", oracle.budget, "Search nodes per tree")->capture_default_str();
  oracle_cmd->add_option("--box", oracle.box, "Grid half-width; 0 picks the constructed volume minus one")
      ->capture_default_str();
  oracle_cmd->add_flag("--from-scratch", oracle.scratch, "Search without the constructed wiring as incumbent");
  oracle_cmd->add_option("--format", oracle.format)->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
  oracle_cmd->add_option("-o,--output", oracle.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  Meta meta{join_command(argc, argv), std::nullopt};
  try {
    if (*gen_cmd) return run_gen(gen);
    if (*wire_cmd) return run_wire(wire_opts, meta);
    if (*verify_cmd) return run_verify(verify);
    if (*analyze_cmd) return run_analyze(analyze, meta);
    if (*bench_cmd) {
      meta.seed = bench.seed;
      return run_bench(bench, meta);
    }
    if (*oracle_cmd) return run_oracle(oracle, meta);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DegreeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  }
  return kUsageError;
}
