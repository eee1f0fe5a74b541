// gblocks: checks and computations for G-equivariant fusion data and genus-zero G-modular functors.
// Exit codes: 0 pass, 1 check failure or violated invariant, 2 usage, 3 unreadable file.

#include "gblocks/category.hpp"
#include "gblocks/covers.hpp"
#include "gblocks/mf.hpp"
#include "gblocks/msdata.hpp"
#include "gblocks/roundtrip.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <string>

namespace {

using nlohmann::json;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kFile = 3 };

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An input that loads but violates a named invariant.
struct Invalid : std::runtime_error {
  std::string invariant;
  Invalid(std::string inv, const std::string& what) : std::runtime_error(what), invariant(std::move(inv)) {}
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FileError(path + ": " + e.what());
  }
}

struct Args {
  bool as_json = false;
  int bound = 0;  // 0: command default
  int depth = 6;
  int conductor_limit = 1024;
  std::string category, cover, labels, moves;
};

gb::GCategoryData category(const Args& a) {
  auto j = read_json(a.category);
  gb::GCategoryData cat = [&] {
    try {
      return gb::parse_category(j);
    } catch (const gb::CategoryError& e) {
      throw Invalid(e.invariant, e.what());
    } catch (const json::exception& e) {
      throw Invalid("schema", e.what());
    }
  }();
  if (cat.conductor > a.conductor_limit)
    throw Invalid("conductor-limit", "conductor " + std::to_string(cat.conductor) + " exceeds --conductor-limit " +
                                         std::to_string(a.conductor_limit));
  return cat;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const gb::CoverError& e) {
    throw Invalid(e.invariant, e.what());
  } catch (const gb::MfError& e) {
    throw Invalid(e.invariant, e.what());
  } catch (const json::exception& e) {
    throw Invalid("schema", e.what());
  }
}

gb::GluingGraph cover(const gb::GCategoryData& cat, const std::string& path) {
  auto j = read_json(path);
  return guarded([&] { return gb::cover_from_json(cat.group, j); });
}

gb::Labels labeling(const gb::GCategoryData& cat, const gb::GluingGraph& p, const std::string& path) {
  auto j = read_json(path);
  return guarded([&] { return gb::labeling_from_json(cat, p, j); });
}

std::vector<gb::Move> moves(const gb::GCategoryData& cat, const json& j) {
  return guarded([&] {
    const json& list = j.is_object() ? j.at("moves") : j;
    if (!list.is_array()) throw gb::CoverError("schema", "a move script is an array of moves");
    std::vector<gb::Move> out;
    for (auto& m : list) out.push_back(gb::move_from_json(cat.group, m));
    return out;
  });
}

int emit(const Args& a, const gb::Report& r) {
  if (a.as_json) std::cout << r.to_json().dump(2) << "\n";
  else std::cout << r.text();
  return r.pass() ? kPass : kFail;
}

int emit_all(const Args& a, const std::vector<gb::Report>& rs) {
  bool pass = true;
  json j = json::array();
  for (auto& r : rs) {
    pass = pass && r.pass();
    if (a.as_json) j.push_back(r.to_json());
    else std::cout << r.text();
  }
  if (a.as_json) std::cout << json{{"pass", pass}, {"reports", j}}.dump(2) << "\n";
  return pass ? kPass : kFail;
}

int cmd_validate(const Args& a) {
  auto cat = category(a);
  return emit(a, gb::check_category(cat));
}

int cmd_ms_check(const Args& a) {
  auto cat = category(a);
  return emit(a, gb::check_ms_axioms(cat, {a.bound ? a.bound : 4}));
}

int cmd_dim(const Args& a) {
  auto cat = category(a);
  auto p = cover(cat, a.cover);
  auto W = labeling(cat, p, a.labels);
  const gb::Mf mf(cat);
  const auto d = mf.tau_dim(p, W);
  if (a.as_json) std::cout << json{{"dim", d}}.dump(2) << "\n";
  else std::cout << d << "\n";
  return kPass;
}

int cmd_map(const Args& a) {
  auto cat = category(a);
  auto p = cover(cat, a.cover);
  auto W = labeling(cat, p, a.labels);
  auto path = moves(cat, read_json(a.moves));
  const gb::Mf mf(cat);
  auto r = guarded([&] { return mf.path_map(p, W, path); });
  if (a.as_json) {
    json script = json::array();
    for (auto& m : path) script.push_back(gb::move_to_json(cat.group, m));
    std::cout << json{{"moves", script}, {"target", gb::cover_to_json(cat.group, r.target)}, {"matrix", r.m.to_json()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "target " << gb::graph_str(cat.group, r.target) << "\n" << r.m.str() << "\n";
  }
  return kPass;
}

// The fourth file is either a move script (array or {"moves": ...}) or a target cover.
int cmd_paths(const Args& a) {
  auto cat = category(a);
  auto p = cover(cat, a.cover);
  auto W = labeling(cat, p, a.labels);
  const gb::Mf mf(cat);
  const gb::PathOptions opt{a.depth};
  auto target = read_json(a.moves);
  auto r = guarded([&] {
    if (target.is_object() && target.contains("blocks"))
      return gb::check_path_independence(mf, p, W, gb::cover_from_json(cat.group, target), opt);
    return gb::check_path_independence(mf, p, W, moves(cat, target), opt);
  });
  return emit(a, r.report);
}

int cmd_relations(const Args& a) {
  auto cat = category(a);
  return emit_all(a, {gb::check_relations(cat, {a.bound ? a.bound : 3}), gb::check_nondegeneracy(cat)});
}

int cmd_roundtrip(const Args& a) {
  auto cat = category(a);
  return emit(a, gb::roundtrip_check(cat));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gblocks: G-equivariant fusion data, MS data and genus-zero G-modular functors"};
  app.require_subcommand(1, 1);
  Args a;
  app.add_flag("--json", a.as_json, "machine-readable report");
  app.add_option("--conductor-limit", a.conductor_limit, "reject categories with a larger cyclotomic conductor")
      ->check(CLI::PositiveNumber);

  auto cat_arg = [&](CLI::App* s) { s->add_option("category", a.category, "category JSON")->required(); };
  auto cover_args = [&](CLI::App* s) {
    cat_arg(s);
    s->add_option("cover", a.cover, "cover JSON")->required();
    s->add_option("labels", a.labels, "boundary labeling JSON")->required();
  };

  auto* validate = app.add_subcommand("validate", "pentagon, hexagon, G-coherence and twist checks");
  cat_arg(validate);
  auto* ms = app.add_subcommand("ms-check", "Moore-Seiberg axioms on all label tuples up to --bound");
  cat_arg(ms);
  ms->add_option("--bound", a.bound, "labels per axiom instance (default 4)")->check(CLI::PositiveNumber);
  auto* dim = app.add_subcommand("dim", "dimension of the modular functor on a labeled cover");
  cover_args(dim);
  auto* map = app.add_subcommand("map", "matrix of a move script");
  cover_args(map);
  map->add_option("moves", a.moves, "move script JSON")->required();
  auto* paths = app.add_subcommand("paths", "path independence up to --depth moves");
  cover_args(paths);
  paths->add_option("target", a.moves, "move script or target cover JSON")->required();
  paths->add_option("--depth", a.depth, "path length bound (default 6)")->check(CLI::PositiveNumber);
  auto* relations = app.add_subcommand("relations", "relations among moves on small covers");
  cat_arg(relations);
  relations->add_option("--bound", a.bound, "boundary count of generic blocks (default 3)")->check(CLI::PositiveNumber);
  auto* roundtrip = app.add_subcommand("roundtrip", "reconstruct fusion rules, duals, unit and twists");
  cat_arg(roundtrip);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(a);
    if (ms->parsed()) return cmd_ms_check(a);
    if (dim->parsed()) return cmd_dim(a);
    if (map->parsed()) return cmd_map(a);
    if (paths->parsed()) return cmd_paths(a);
    if (relations->parsed()) return cmd_relations(a);
    if (roundtrip->parsed()) return cmd_roundtrip(a);
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFile;
  } catch (const Invalid& e) {
    if (a.as_json) std::cout << json{{"pass", false}, {"invariant", e.invariant}, {"detail", e.what()}}.dump(2) << "\n";
    std::cerr << "invalid input [" << e.invariant << "]: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
