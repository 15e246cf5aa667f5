#include "f1kit/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "f1kit/blueprint.hpp"
#include "f1kit/error.hpp"
#include "f1kit/genseries.hpp"
#include "f1kit/torif.hpp"
#include "f1kit/treeop.hpp"

namespace f1kit::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kMaxClassN = 200;
constexpr int kMaxD = 20;
constexpr int kMaxOrder = 200;

std::string str(const BigInt& x) { return x.str(); }

int require(const std::optional<int>& v, const char* flag, Command c) {
  if (!v) throw UsageError(to_string(c) + ": missing " + flag);
  return *v;
}

void check_range(int v, int lo, int hi, const char* what) {
  if (v < lo || v > hi) {
    throw std::out_of_range(std::string(what) + " = " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
  }
}

// ---------------------------------------------------------------------------
// Optional on-disk memo tables (F1KIT_CACHE_DIR).

std::optional<std::filesystem::path> cache_dir() {
  const char* dir = std::getenv("F1KIT_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir);
}

std::vector<MotClass> load_cached(const std::filesystem::path& file) {
  std::vector<MotClass> out;
  std::ifstream in(file);
  if (!in) return out;
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvariantError("cache file " + file.string() + " is not valid JSON: " + e.what());
  }
  for (const auto& c : j.at("values")) out.push_back(mot_class_from_json(c));
  return out;
}

void store_cached(const std::filesystem::path& file, const std::vector<MotClass>& values) {
  json j;
  auto arr = json::array();
  for (const auto& v : values) arr.push_back(to_json(v));
  j["values"] = std::move(arr);
  std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, file);
}

template <class Table>
MotClass cached_get(Table& table, const std::string& name, int n) {
  const auto dir = cache_dir();
  std::size_t before = table.values().size();
  if (dir) {
    auto values = load_cached(*dir / name);
    if (!values.empty()) table.seed(std::move(values));
    before = table.values().size();
  }
  MotClass result = table.get(n);
  if (dir && table.values().size() > before) store_cached(*dir / name, table.values());
  return result;
}

MotClass mbar0_cached(int n) {
  Mbar0Table table;
  return cached_get(table, "mbar0.json", n);
}

MotClass tdn_cached(int d, int n) {
  TdnTable table(d);
  return cached_get(table, "tdn_d" + std::to_string(d) + ".json", n);
}

// ---------------------------------------------------------------------------

struct SpaceClass {
  json params = json::object();
  MotClass cls;
};

SpaceClass space_class(const CommandConfig& c) {
  SpaceClass out;
  const std::string& s = c.space;
  out.params["space"] = s;
  if (s == "mbar0") {
    const int n = require(c.n, "--n", c.command);
    check_range(n, 2, kMaxClassN, "n");
    out.params["n"] = n;
    out.cls = mbar0_cached(n);
  } else if (s == "tdn") {
    const int d = require(c.d, "--d", c.command);
    const int n = require(c.n, "--n", c.command);
    check_range(d, 1, kMaxD, "d");
    check_range(n, 1, kMaxClassN, "n");
    out.params["d"] = d;
    out.params["n"] = n;
    out.cls = tdn_cached(d, n);
  } else if (s == "open") {
    const int d = require(c.d, "--d", c.command);
    const int n = require(c.n, "--n", c.command);
    check_range(d, 1, kMaxD, "d");
    check_range(n, 2, kMaxClassN, "n");
    out.params["d"] = d;
    out.params["n"] = n;
    out.cls = open_stratum_class(d, n);
  } else if (s == "proj") {
    const int d = require(c.d, "--d", c.command);
    check_range(d, 0, 1000, "d");
    out.params["d"] = d;
    out.cls = proj_class(d);
  } else {
    throw UsageError(to_string(c.command) + ": --space must be mbar0, tdn, open or proj");
  }
  return out;
}

std::vector<std::string> param_row(const json& params) {
  std::vector<std::string> row;
  row.push_back(params.at("space").get<std::string>());
  row.push_back(params.contains("d") ? std::to_string(params["d"].get<int>()) : "");
  row.push_back(params.contains("n") ? std::to_string(params["n"].get<int>()) : "");
  return row;
}

Document classes_doc(const CommandConfig& c) {
  const auto sc = space_class(c);
  Document doc;
  doc.json = sc.params;
  doc.json["class"] = to_json(sc.cls, c.basis);
  doc.json["effective"] = is_effective_torus_class(sc.cls);
  doc.json["poincare"] = poincare_string(poincare_poly(sc.cls));
  doc.table.columns = {"space", "d", "n", "class"};
  auto row = param_row(sc.params);
  row.push_back(to_string(sc.cls, c.basis));
  doc.table.rows.push_back(std::move(row));
  doc.text.push_back(to_string(sc.cls, c.basis));
  return doc;
}

Document points_doc(const CommandConfig& c) {
  if (!c.m) throw UsageError("points: missing --m");
  if (*c.m < 0) throw std::out_of_range("m must be >= 0");
  const auto sc = space_class(c);
  const BigInt count = count_points(sc.cls, *c.m);
  Document doc;
  doc.json = sc.params;
  doc.json["m"] = str(*c.m);
  doc.json["count"] = str(count);
  doc.table.columns = {"space", "d", "n", "m", "count"};
  auto row = param_row(sc.params);
  row.push_back(str(*c.m));
  row.push_back(str(count));
  doc.table.rows.push_back(std::move(row));
  doc.text.push_back(str(count));
  return doc;
}

Document series_doc(const CommandConfig& c) {
  const int d = require(c.d, "--d", c.command);
  check_range(d, 1, kMaxD, "d");
  check_range(c.order, 1, kMaxOrder, "order");
  const auto s = solve_tdn_ode(d, c.order);
  Document doc;
  doc.json["d"] = d;
  doc.json["series"] = to_json(s, c.basis);
  doc.table.columns = {"n", "class"};
  for (std::size_t n = 1; n <= s.order(); ++n) {
    doc.table.rows.push_back({std::to_string(n), to_string(s.coeff(n), c.basis)});
    doc.text.push_back("c" + std::to_string(n) + " = " + to_string(s.coeff(n), c.basis));
  }
  return doc;
}

Document strata_doc(const CommandConfig& c) {
  const int d = require(c.d, "--d", c.command);
  const int n = require(c.n, "--n", c.command);
  check_range(d, 1, kMaxD, "d");
  check_range(n, 2, 8, "n");
  const auto rows = strata(d, n);
  MotClass sum;
  for (const auto& s : rows) sum += s.open_class;
  const MotClass expected = tdn_cached(d, n);
  if (sum != expected) {
    throw InvariantError("strata sum " + to_string(sum, c.basis) + " differs from [T_{d,n}] " +
                         to_string(expected, c.basis));
  }
  Document doc;
  doc.json["d"] = d;
  doc.json["n"] = n;
  doc.json["count"] = rows.size();
  auto arr = json::array();
  doc.table.columns = {"tree", "vertices", "class"};
  for (const auto& s : rows) {
    const auto shape = s.tree.shape();
    json row;
    row["tree"] = to_string(shape);
    row["vertices"] = s.tree.vertex_count();
    row["class"] = to_json(s.open_class, c.basis);
    arr.push_back(std::move(row));
    doc.table.rows.push_back({to_string(shape), std::to_string(s.tree.vertex_count()), to_string(s.open_class, c.basis)});
    doc.text.push_back(to_string(shape) + "  " + to_string(s.open_class, c.basis));
  }
  doc.json["strata"] = std::move(arr);
  doc.json["sum"] = to_json(sum, c.basis);
  doc.json["verified"] = true;
  doc.text.push_back("strata: " + std::to_string(rows.size()));
  doc.text.push_back("sum: " + to_string(sum, c.basis) + " (= [T_{" + std::to_string(d) + "," + std::to_string(n) +
                     "}])");
  return doc;
}

json parse_json_arg(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": not valid JSON: " + e.what());
  }
}

Document torif_doc(const ConstructibleTorification& ct, Basis basis) {
  Document doc;
  doc.json = to_json(ct, basis);
  doc.table.columns = {"label", "dim", "class"};
  for (const auto& p : ct.pieces()) {
    const auto cls = to_string(eval_class(p.expr), basis);
    doc.table.rows.push_back({p.label, std::to_string(p.expr.dimension()), cls});
    doc.text.push_back(p.label + "  " + cls);
  }
  doc.text.push_back("total: " + to_string(ct.total_class(), basis));
  doc.text.push_back(std::string("f1-constructible: ") + (ct.is_f1_constructible() ? "yes" : "no"));
  return doc;
}

Document torify_doc(const CommandConfig& c) {
  if (c.expr) {
    if (!c.space.empty()) throw UsageError("torify: --expr and --space are exclusive");
    const auto e = torif_expr_from_json(parse_json_arg(*c.expr, "--expr"));
    const auto v = validate(e);
    Document doc;
    doc.json["expr"] = to_json(e);
    doc.json["valid"] = v.ok;
    doc.json["diagnostics"] = v.diagnostics;
    doc.table.columns = {"valid", "dimension", "class"};
    std::string cls;
    if (v.ok) {
      const auto k = eval_class(e);
      doc.json["class"] = to_json(k, c.basis);
      cls = to_string(k, c.basis);
    }
    doc.table.rows.push_back({v.ok ? "true" : "false", std::to_string(e.dimension()), cls});
    doc.text.push_back(std::string("valid: ") + (v.ok ? "yes" : "no"));
    for (const auto& msg : v.diagnostics) doc.text.push_back("  " + msg);
    if (v.ok) doc.text.push_back("class: " + cls);
    return doc;
  }
  if (c.space == "proj") {
    const int d = require(c.d, "--d", c.command);
    check_range(d, 0, 12, "d");
    return torif_doc(torify_proj_space(d), c.basis);
  }
  if (c.space == "open") {
    const int d = require(c.d, "--d", c.command);
    const int n = require(c.n, "--n", c.command);
    check_range(d, 1, 6, "d");
    check_range(n, 2, 12, "n");
    return torif_doc(constructible_open_stratum(d, n), c.basis);
  }
  if (c.space == "tree") {
    if (!c.tree) throw UsageError("torify: --space tree needs --tree");
    const auto shape = tree_shape_from_json(parse_json_arg(*c.tree, "--tree"));
    return torif_doc(torify_tree_curve(RootedTree::from_shape(shape)), c.basis);
  }
  throw UsageError("torify: give --expr or --space proj|open|tree");
}

Document blueprint_doc(const CommandConfig& c) {
  const int n = require(c.n, "--n", c.command);
  check_range(n, 4, 10, "n");
  const int k = c.localize.value_or(0);
  check_range(k, 0, 100, "localize");
  Document doc;
  doc.json["n"] = n;
  doc.json["index_count"] = index_set(n).size();
  doc.json["localize"] = k;
  auto arr = json::array();
  doc.table.columns = {"relation"};
  for (const auto& r0 : plucker_relations(n)) {
    const auto r = localize_relation(r0, static_cast<unsigned>(k));
    arr.push_back(to_json(r));
    doc.table.rows.push_back({to_string(r)});
    doc.text.push_back(to_string(r));
  }
  doc.json["relations"] = std::move(arr);
  return doc;
}

Document crossed_doc(const CommandConfig& c) {
  const int g = require(c.g, "--g", c.command);
  const int n = require(c.n, "--n", c.command);
  check_range(g, 1, 5, "g");
  check_range(n, std::max(4, 2 * g), 10, "n");
  const auto group = centralizer_subgroup(g);
  const auto rels = crossed_relations(plucker_relations(n), group, n);
  Document doc;
  doc.json["g"] = g;
  doc.json["n"] = n;
  doc.json["group_order"] = group.size();
  auto perms = json::array();
  for (const auto& p : group) perms.push_back(p.images());
  doc.json["group"] = std::move(perms);
  auto arr = json::array();
  doc.table.columns = {"perm", "relation"};
  doc.text.push_back("group order: " + std::to_string(group.size()));
  doc.text.push_back("relations: " + std::to_string(rels.size()));
  for (const auto& r : rels) {
    arr.push_back(to_json(r));
    doc.table.rows.push_back({to_string(r.left.perm), to_string(r.left.sum) + " == " + to_string(r.right.sum)});
    doc.text.push_back(to_string(r));
  }
  doc.json["relations"] = std::move(arr);
  return doc;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Classes:
      return "classes";
    case Command::Points:
      return "points";
    case Command::Series:
      return "series";
    case Command::Strata:
      return "strata";
    case Command::Torify:
      return "torify";
    case Command::Blueprint:
      return "blueprint";
    case Command::Crossed:
      return "crossed";
  }
  return "";
}

Document build_document(const CommandConfig& config) {
  switch (config.command) {
    case Command::Classes:
      return classes_doc(config);
    case Command::Points:
      return points_doc(config);
    case Command::Series:
      return series_doc(config);
    case Command::Strata:
      return strata_doc(config);
    case Command::Torify:
      return torify_doc(config);
    case Command::Blueprint:
      return blueprint_doc(config);
    case Command::Crossed:
      return crossed_doc(config);
  }
  throw UsageError("unknown command");
}

RunResult run(const CommandConfig& config) {
  RunResult r;
  try {
    r.output = emit(build_document(config), config.format);
  } catch (const UsageError& e) {
    r = {kUsage, "", std::string("usage error: ") + e.what() + "\n"};
  } catch (const InvariantError& e) {
    r = {kInvariant, "", std::string("invariant violation: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    r = {kRange, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::out_of_range& e) {
    r = {kRange, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    r = {kInvariant, "", std::string("internal error: ") + e.what() + "\n"};
  }
  return r;
}

RunResult main_with_args(const std::vector<std::string>& args) {
  CLI::App app{"Grothendieck classes, point counts, torifications and blueprints of genus-zero moduli spaces",
               "f1kit"};
  app.require_subcommand(1);

  CommandConfig config;
  std::string format = "text";
  std::string basis = "T";
  int d = 0, n = 0, g = 0, localize = 0;
  std::string m, expr, tree;

  struct Sub {
    Command command;
    CLI::App* app;
  };
  std::vector<Sub> subs;
  auto add = [&](Command command, const std::string& help) {
    auto* sub = app.add_subcommand(to_string(command), help);
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--basis", basis, "T or L")->check(CLI::IsMember({"T", "L"}));
    subs.push_back({command, sub});
    return sub;
  };

  auto* classes = add(Command::Classes, "Grothendieck class of a moduli space");
  classes->add_option("--space", config.space, "mbar0, tdn, open or proj")->required();
  classes->add_option("--d", d);
  classes->add_option("--n", n);

  auto* points = add(Command::Points, "F_{1^m}-point count");
  points->add_option("--space", config.space, "mbar0, tdn, open or proj")->required();
  points->add_option("--d", d);
  points->add_option("--n", n);
  points->add_option("--m", m)->required();

  auto* series = add(Command::Series, "Coefficients of the generating series of [T_{d,n}]");
  series->add_option("--d", d)->required();
  series->add_option("--order", config.order);

  auto* strata_cmd = add(Command::Strata, "Stratification of T_{d,n} by stable trees");
  strata_cmd->add_option("--d", d)->required();
  strata_cmd->add_option("--n", n)->required();

  auto* torify = add(Command::Torify, "Constructible torifications");
  torify->add_option("--space", config.space, "proj, open or tree");
  torify->add_option("--d", d);
  torify->add_option("--n", n);
  torify->add_option("--expr", expr, "expression as JSON");
  torify->add_option("--tree", tree, "tree shape as JSON");

  auto* blueprint = add(Command::Blueprint, "Blueprint relations of M̄_{0,n}");
  blueprint->add_option("--n", n)->required();
  blueprint->add_option("--localize", localize, "denominator power of f");

  auto* crossed = add(Command::Crossed, "Crossed-product blueprint for a boundary stratum");
  crossed->add_option("--g", g)->required();
  crossed->add_option("--n", n)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto& s : subs) {
      if (s.app->parsed()) target = s.app;
    }
    return {kOk, target->help(), ""};
  } catch (const CLI::ParseError& e) {
    return {kUsage, "", std::string("usage error: ") + e.what() + "\nRun with --help for usage.\n"};
  }

  for (const auto& s : subs) {
    if (!s.app->parsed()) continue;
    config.command = s.command;
    auto given = [&](const char* flag) {
      const auto* opt = s.app->get_option_no_throw(flag);
      return opt != nullptr && opt->count() > 0;
    };
    if (given("--d")) config.d = d;
    if (given("--n")) config.n = n;
    if (given("--g")) config.g = g;
    if (given("--localize")) config.localize = localize;
    if (given("--expr")) config.expr = expr;
    if (given("--tree")) config.tree = tree;
    if (given("--m")) {
      const bool digits = !m.empty() && m.find_first_not_of("0123456789") == std::string::npos;
      const bool negative = m.size() > 1 && m[0] == '-' && m.find_first_not_of("0123456789", 1) == std::string::npos;
      if (negative) return {kRange, "", "error: m must be >= 0\n"};
      if (!digits) return {kUsage, "", "usage error: --m expects a non-negative integer\n"};
      config.m = BigInt(m);
    }
  }
  config.format = parse_format(format);
  config.basis = parse_basis(basis);
  return run(config);
}

}  // namespace f1kit::cli
