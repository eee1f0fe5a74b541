#include "gblocks/category.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <tuple>

namespace gb {

using nlohmann::json;

int FBlock::row_index(int e) const {
  auto it = std::find(rows.begin(), rows.end(), e);
  return it == rows.end() ? -1 : static_cast<int>(it - rows.begin());
}

int FBlock::col_index(int f) const {
  auto it = std::find(cols.begin(), cols.end(), f);
  return it == cols.end() ? -1 : static_cast<int>(it - cols.begin());
}

int GCategoryData::label(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == name) return i;
  throw CategoryError("unknown-label", std::string(name));
}

void GCategoryData::set_N(int a, int b, int c, int v) {
  if (fusion_.size() != static_cast<std::size_t>(size() * size() * size()))
    fusion_.assign(size() * size() * size(), 0);
  fusion_[(a * size() + b) * size() + c] = v;
}

Cyclotomic GCategoryData::F(int a, int b, int c, int d, int e, int f) const {
  auto it = F_.find(key(a, b, c, d, e, f));
  return it == F_.end() ? Cyclotomic() : it->second;
}

Cyclotomic GCategoryData::R(int a, int b, int c) const {
  auto it = R_.find(key(a, b, c));
  return it == R_.end() ? Cyclotomic() : it->second;
}

Cyclotomic GCategoryData::U(int g, int a, int b, int c) const {
  auto it = U_.find(key(g, a, b, c));
  return it == U_.end() ? Cyclotomic() : it->second;
}

const FBlock& GCategoryData::fblock(int a, int b, int c, int d) const {
  static const FBlock empty;
  auto it = fblocks_.find(key(a, b, c, d));
  return it == fblocks_.end() ? empty : it->second;
}

Cyclotomic GCategoryData::Finv(int a, int b, int c, int d, int f, int e) const {
  const FBlock& blk = fblock(a, b, c, d);
  int i = blk.col_index(f), j = blk.row_index(e);
  if (i < 0 || j < 0 || blk.inv.rows() == 0) return Cyclotomic();  // singular blocks act as zero
  return blk.inv(i, j);
}

void GCategoryData::set_F(int a, int b, int c, int d, int e, int f, Cyclotomic v) {
  F_[key(a, b, c, d, e, f)] = std::move(v);
}
void GCategoryData::set_R(int a, int b, int c, Cyclotomic v) { R_[key(a, b, c)] = std::move(v); }
void GCategoryData::set_U(int g, int a, int b, int c, Cyclotomic v) {
  U_[key(g, a, b, c)] = std::move(v);
}

void GCategoryData::finalize() {
  const int n = size();
  if (fusion_.size() != static_cast<std::size_t>(n * n * n)) fusion_.assign(n * n * n, 0);
  prod_.assign(n * n, {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (N(a, b, c)) prod_[a * n + b].push_back(c);
  fblocks_.clear();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          FBlock blk;
          for (int e : products(a, b))
            if (N(e, c, d)) blk.rows.push_back(e);
          for (int f : products(b, c))
            if (N(a, f, d)) blk.cols.push_back(f);
          if (blk.rows.empty() && blk.cols.empty()) continue;
          blk.m = Matrix(blk.rows.size(), blk.cols.size());
          for (std::size_t i = 0; i < blk.rows.size(); ++i)
            for (std::size_t j = 0; j < blk.cols.size(); ++j)
              blk.m(i, j) = F(a, b, c, d, blk.rows[i], blk.cols[j]);
          try {
            blk.inv = blk.m.inverse();
          } catch (const std::domain_error&) {
            blk.inv = Matrix();
          }
          fblocks_.emplace(key(a, b, c, d), std::move(blk));
        }
}

std::string label_list(const GCategoryData& cat, const std::vector<int>& labels) {
  std::string s = "(";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) s += ",";
    s += cat.labels[labels[i]];
  }
  return s + ")";
}

// ---------------------------------------------------------------- loading

namespace {

Cyclotomic parse_scalar(const json& v, int n, const std::string& where) {
  if (v.is_number_integer()) return Cyclotomic(v.get<long>());
  if (v.is_string()) {
    try {
      return Cyclotomic::parse(v.get<std::string>(), n);
    } catch (const ConductorError&) {
      throw;
    } catch (const std::exception& e) {
      throw CategoryError("non-expressible scalar", where + ": " + e.what());
    }
  }
  throw CategoryError("non-expressible scalar", where + ": " + v.dump());
}

std::vector<std::string> split_any(const std::string& s, const std::string& seps) {
  std::vector<std::string> out(1);
  for (char ch : s) {
    if (seps.find(ch) != std::string::npos)
      out.emplace_back();
    else if (ch != ' ')
      out.back() += ch;
  }
  return out;
}

const json& require(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field))
    throw CategoryError("schema", std::string("missing field \"") + field + "\"");
  return j.at(field);
}

bool F_admissible(const GCategoryData& c, int a, int b, int cc, int d, int e, int f) {
  return c.N(a, b, e) && c.N(e, cc, d) && c.N(b, cc, f) && c.N(a, f, d);
}

// Fills a symbol table: explicit entries plus an optional "*" default for the rest.
using Tuple = std::vector<int>;

template <class Admissible, class Set, class Decode>
void read_symbols(const json& table, const char* name, int nargs, int conductor, Admissible adm,
                  Set set, Decode decode, const std::vector<Tuple>& all,
                  const std::function<std::string(const Tuple&)>& fmt) {
  std::optional<Cyclotomic> dflt;
  std::map<std::vector<int>, Cyclotomic> given;
  if (!table.is_object()) throw CategoryError("schema", std::string(name) + " must be an object");
  for (auto it = table.begin(); it != table.end(); ++it) {
    const std::string where = std::string(name) + "[" + it.key() + "]";
    if (it.key() == "*") {
      dflt = parse_scalar(it.value(), conductor, where);
      continue;
    }
    auto parts = split_any(it.key(), ",;");
    if (static_cast<int>(parts.size()) != nargs)
      throw CategoryError("schema", where + ": expected " + std::to_string(nargs) + " indices");
    std::vector<int> idx = decode(parts, where);
    if (!adm(idx)) throw CategoryError("inadmissible symbol", where);
    given[idx] = parse_scalar(it.value(), conductor, where);
  }
  for (const auto& idx : all) {
    if (!adm(idx)) continue;
    auto it = given.find(idx);
    if (it != given.end())
      set(idx, it->second);
    else if (dflt)
      set(idx, *dflt);
    else
      throw CategoryError("missing symbol", std::string(name) + "[" + fmt(idx) + "]");
  }
}

std::vector<std::vector<int>> all_tuples(const std::vector<int>& radix) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(radix.size(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t k = radix.size();
    while (k > 0) {
      --k;
      if (++cur[k] < radix[k]) break;
      cur[k] = 0;
      if (k == 0) return out;
    }
    if (radix.empty()) return out;
  }
}

}  // namespace

GCategoryData parse_category(const json& j, LoadOptions opt) {
  GCategoryData cat;
  try {
    cat.group = group_parse(require(j, "group"));
  } catch (const GroupError& e) {
    throw CategoryError("group", e.what());
  }
  const FiniteGroup& G = cat.group;
  cat.conductor = require(j, "conductor").get<int>();
  if (cat.conductor < 1) throw CategoryError("schema", "conductor must be positive");
  if (cat.conductor > conductor_limit())
    throw CategoryError("conductor", "conductor " + std::to_string(cat.conductor) +
                                         " exceeds limit " + std::to_string(conductor_limit()));

  const json& jl = require(j, "labels");
  if (!jl.is_array() || jl.empty()) throw CategoryError("schema", "labels must be a nonempty array");
  if (jl.size() > 255 || G.order() > 255) throw CategoryError("schema", "too many labels or group elements");
  for (const auto& l : jl) cat.labels.push_back(require(l, "name").get<std::string>());
  for (int a = 0; a < cat.size(); ++a)
    for (int b = 0; b < a; ++b)
      if (cat.labels[a] == cat.labels[b]) throw CategoryError("schema", "duplicate label " + cat.labels[a]);

  auto group_elem = [&](const json& v, const std::string& where) {
    try {
      if (v.is_number_integer()) {
        int g = v.get<int>();
        if (!G.valid(g)) throw GroupError("index out of range");
        return g;
      }
      return G.index(v.get<std::string>());
    } catch (const std::exception& e) {
      throw CategoryError("schema", where + ": bad group element " + v.dump());
    }
  };

  const int n = cat.size();
  cat.deg.resize(n);
  cat.dual.resize(n);
  cat.action.assign(G.order(), std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    const json& l = jl[a];
    cat.deg[a] = group_elem(require(l, "degree"), cat.labels[a]);
    cat.dual[a] = cat.label(require(l, "dual").get<std::string>());
    for (int g = 0; g < G.order(); ++g) cat.action[g][a] = a;
    if (l.contains("action")) {
      const json& act = l.at("action");
      if (!act.is_object()) throw CategoryError("schema", cat.labels[a] + ": action must be an object");
      for (auto it = act.begin(); it != act.end(); ++it)
        cat.action[group_elem(json(it.key()), cat.labels[a])][a] = cat.label(it.value().get<std::string>());
    }
  }

  for (const auto& t : require(j, "fusion")) {
    if (!t.is_array() || t.size() < 3 || t.size() > 4)
      throw CategoryError("schema", "fusion entries are [a, b, c] or [a, b, c, multiplicity]");
    int a = cat.label(t[0].get<std::string>()), b = cat.label(t[1].get<std::string>()),
        c = cat.label(t[2].get<std::string>());
    int m = t.size() == 4 ? t[3].get<int>() : 1;
    if (m < 0) throw CategoryError("schema", "negative fusion multiplicity");
    if (m > 1)
      throw CategoryError("multiplicity-free", "N_{" + cat.labels[a] + "," + cat.labels[b] + "}^" +
                                                   cat.labels[c] + " = " + std::to_string(m));
    cat.set_N(a, b, c, m);
  }
  cat.finalize();

  if (j.contains("unit")) {
    cat.unit = cat.label(j.at("unit").get<std::string>());
  } else {
    cat.unit = -1;
    for (int u = 0; u < n && cat.unit < 0; ++u) {
      bool ok = true;
      for (int a = 0; a < n && ok; ++a)
        for (int b = 0; b < n && ok; ++b) ok = cat.N(u, a, b) == (a == b) && cat.N(a, u, b) == (a == b);
      if (ok) cat.unit = u;
    }
    if (cat.unit < 0) throw CategoryError("unit-fusion", "no label acts as a unit for the fusion rules");
  }

  auto decode = [&](const std::vector<std::string>& parts, const std::string&) {
    std::vector<int> idx;
    for (const auto& p : parts) idx.push_back(cat.label(p));
    return idx;
  };
  auto decode_u = [&](const std::vector<std::string>& parts, const std::string& where) {
    std::vector<int> idx{group_elem(json(parts[0]), where)};
    for (std::size_t i = 1; i < parts.size(); ++i) idx.push_back(cat.label(parts[i]));
    return idx;
  };

  auto fmt = [&](const Tuple& t) {
    std::string s;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) s += (t.size() == 6 && (k == 3 || k == 4)) || (t.size() == 3 && k == 2) ? ";" : ",";
      s += cat.labels[t[k]];
    }
    return s;
  };
  auto fmt_u = [&](const Tuple& t) {
    return G.name(t[0]) + ";" + cat.labels[t[1]] + "," + cat.labels[t[2]] + ";" + cat.labels[t[3]];
  };

  const auto t6 = all_tuples(std::vector<int>(6, n));
  read_symbols(
      require(j, "F"), "F", 6, cat.conductor,
      [&](const std::vector<int>& i) { return F_admissible(cat, i[0], i[1], i[2], i[3], i[4], i[5]); },
      [&](const std::vector<int>& i, const Cyclotomic& v) { cat.set_F(i[0], i[1], i[2], i[3], i[4], i[5], v); },
      decode, t6, fmt);
  read_symbols(
      require(j, "R"), "R", 3, cat.conductor,
      [&](const std::vector<int>& i) { return cat.N(i[0], i[1], i[2]) != 0; },
      [&](const std::vector<int>& i, const Cyclotomic& v) { cat.set_R(i[0], i[1], i[2], v); }, decode,
      all_tuples({n, n, n}), fmt);
  read_symbols(
      j.contains("U") ? j.at("U") : json{{"*", 1}}, "U", 4, cat.conductor,
      [&](const std::vector<int>& i) { return cat.N(i[1], i[2], i[3]) != 0; },
      [&](const std::vector<int>& i, const Cyclotomic& v) { cat.set_U(i[0], i[1], i[2], i[3], v); },
      decode_u, all_tuples({G.order(), n, n, n}), fmt_u);

  cat.theta.assign(n, Cyclotomic());
  const json& jt = require(j, "theta");
  for (int a = 0; a < n; ++a) {
    if (!jt.contains(cat.labels[a])) throw CategoryError("missing symbol", "theta[" + cat.labels[a] + "]");
    cat.theta[a] = parse_scalar(jt.at(cat.labels[a]), cat.conductor, "theta[" + cat.labels[a] + "]");
  }
  for (auto it = jt.begin(); it != jt.end(); ++it) cat.label(it.key());

  cat.finalize();
  if (opt.check_invariants) validate_invariants(cat);
  return cat;
}

GCategoryData load_category(const std::string& path, LoadOptions opt) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw CategoryError("schema", path + ": " + e.what());
  }
  try {
    return parse_category(j, opt);
  } catch (const json::exception& e) {
    throw CategoryError("schema", e.what());
  }
}

json category_to_json(const GCategoryData& cat) {
  const FiniteGroup& G = cat.group;
  json j;
  j["group"]["table"] = G.table();
  std::vector<std::string> names;
  for (int g = 0; g < G.order(); ++g) names.push_back(G.name(g));
  j["group"]["names"] = names;
  j["conductor"] = cat.conductor;
  j["unit"] = cat.labels[cat.unit];
  const int n = cat.size();
  for (int a = 0; a < n; ++a) {
    json l;
    l["name"] = cat.labels[a];
    l["degree"] = G.name(cat.deg[a]);
    l["dual"] = cat.labels[cat.dual[a]];
    json act = json::object();
    for (int g = 0; g < G.order(); ++g)
      if (cat.act(g, a) != a) act[G.name(g)] = cat.labels[cat.act(g, a)];
    if (!act.empty()) l["action"] = act;
    j["labels"].push_back(l);
  }
  j["fusion"] = json::array();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c : cat.products(a, b)) j["fusion"].push_back({cat.labels[a], cat.labels[b], cat.labels[c]});
  auto nm = [&](int a) { return cat.labels[a]; };
  j["F"] = json::object();
  j["R"] = json::object();
  j["U"] = json::object();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const FBlock& blk = cat.fblock(a, b, c, d);
          for (std::size_t r = 0; r < blk.rows.size(); ++r)
            for (std::size_t s = 0; s < blk.cols.size(); ++s)
              j["F"][nm(a) + "," + nm(b) + "," + nm(c) + ";" + nm(d) + ";" + nm(blk.rows[r]) + "," +
                     nm(blk.cols[s])] = blk.m(r, s).str();
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c : cat.products(a, b)) {
        j["R"][nm(a) + "," + nm(b) + ";" + nm(c)] = cat.R(a, b, c).str();
        for (int g = 0; g < G.order(); ++g)
          j["U"][G.name(g) + ";" + nm(a) + "," + nm(b) + ";" + nm(c)] = cat.U(g, a, b, c).str();
      }
  for (int a = 0; a < n; ++a) j["theta"][nm(a)] = cat.theta[a].str();
  return j;
}

// ---------------------------------------------------------------- invariants

void validate_invariants(const GCategoryData& cat) {
  const FiniteGroup& G = cat.group;
  const int n = cat.size();
  const int e = G.identity(), one = cat.unit;
  auto L = [&](int a) { return cat.labels[a]; };
  auto Nname = [&](int a, int b, int c) { return "N_{" + L(a) + "," + L(b) + "}^" + L(c); };

  if (cat.deg[one] != e) throw CategoryError("unit-degree", "deg(" + L(one) + ") != e");
  for (int a = 0; a < n; ++a) {
    if (cat.dual[cat.dual[a]] != a) throw CategoryError("dual-involution", L(a) + "** != " + L(a));
    if (cat.deg[cat.dual[a]] != G.inv(cat.deg[a]))
      throw CategoryError("dual-grading", "deg(" + L(a) + "*) != deg(" + L(a) + ")^-1");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (cat.N(a, b, c) && G.mul(cat.deg[a], cat.deg[b]) != cat.deg[c])
          throw CategoryError("fusion-grading", Nname(a, b, c) + " != 0 but deg(a)deg(b) != deg(c)");
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (cat.N(one, a, b) != (a == b) || cat.N(a, one, b) != (a == b))
        throw CategoryError("unit-fusion", Nname(one, a, b) + " or " + Nname(a, one, b) + " != delta");
  for (int a = 0; a < n; ++a)
    if (cat.N(a, cat.dual[a], one) != 1) throw CategoryError("dual-pairing", Nname(a, cat.dual[a], one) + " != 1");

  for (int a = 0; a < n; ++a)
    if (cat.act(e, a) != a) throw CategoryError("action-identity", "e." + L(a) + " != " + L(a));
  for (int g = 0; g < G.order(); ++g) {
    std::vector<bool> hit(n, false);
    for (int a = 0; a < n; ++a) hit[cat.act(g, a)] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      throw CategoryError("action-bijection", G.name(g) + " does not permute the labels");
    for (int h = 0; h < G.order(); ++h)
      for (int a = 0; a < n; ++a)
        if (cat.act(G.mul(g, h), a) != cat.act(g, cat.act(h, a)))
          throw CategoryError("action-composition", "(" + G.name(g) + G.name(h) + ")." + L(a));
    for (int a = 0; a < n; ++a)
      if (cat.deg[cat.act(g, a)] != G.conj(g, cat.deg[a]))
        throw CategoryError("action-grading", "deg(" + G.name(g) + "." + L(a) + ") != g deg(a) g^-1");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (cat.N(cat.act(g, a), cat.act(g, b), cat.act(g, c)) != cat.N(a, b, c))
            throw CategoryError("action-fusion", G.name(g) + " moves " + Nname(a, b, c));
  }
  for (int a = 0; a < n; ++a)
    if (cat.act(cat.deg[a], a) != a)
      throw CategoryError("degree-fixed", "deg(" + L(a) + ")." + L(a) + " != " + L(a));

  if (cat.theta[one] != Cyclotomic(1)) throw CategoryError("unit-twist", "theta_" + L(one) + " != 1");
  for (int a = 0; a < n; ++a)
    if (cat.theta[a].is_zero()) throw CategoryError("symbol-nonzero", "theta_" + L(a) + " = 0");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c : cat.products(a, b)) {
        if (cat.R(a, b, c).is_zero())
          throw CategoryError("symbol-nonzero", "R^{" + L(a) + "," + L(b) + "}_" + L(c) + " = 0");
        for (int g = 0; g < G.order(); ++g)
          if (cat.U(g, a, b, c).is_zero())
            throw CategoryError("symbol-nonzero", "U_" + G.name(g) + "(" + L(a) + "," + L(b) + ";" + L(c) + ") = 0");
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const FBlock& blk = cat.fblock(a, b, c, d);
          if (blk.rows.size() != blk.cols.size() || (!blk.rows.empty() && blk.inv.rows() == 0))
            throw CategoryError("F-invertible", "F^{" + L(a) + "," + L(b) + "," + L(c) + "}_" + L(d));
        }
}

long long fusion_dim(const GCategoryData& cat, const std::vector<int>& labels) {
  const int n = cat.size();
  for (int a : labels)
    if (a < 0 || a >= n) throw std::out_of_range("unknown label index " + std::to_string(a));
  if (labels.empty()) return 1;
  std::vector<long long> cur(n, 0);
  cur[labels[0]] = 1;
  for (std::size_t k = 1; k < labels.size(); ++k) {
    std::vector<long long> nxt(n, 0);
    for (int u = 0; u < n; ++u)
      if (cur[u])
        for (int c = 0; c < n; ++c) nxt[c] += cur[u] * cat.N(u, labels[k], c);
    cur = std::move(nxt);
  }
  return cur[cat.unit];
}

// ---------------------------------------------------------------- checkers

namespace {

std::vector<int> digits(std::size_t i, int radix, int len) {
  std::vector<int> d(len);
  for (int k = len - 1; k >= 0; --k) {
    d[k] = static_cast<int>(i % radix);
    i /= radix;
  }
  return d;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Failure scalar_failure(std::string witness, const Cyclotomic& lhs, const Cyclotomic& rhs) {
  return Failure{std::move(witness), {{"lhs", Matrix::scalar(lhs)}, {"rhs", Matrix::scalar(rhs)}}};
}

}  // namespace

Report check_pentagon(const GCategoryData& cat, Exec exec) {
  Report rep;
  rep.title = "pentagon";
  const int n = cat.size();
  auto L = [&](int a) { return cat.labels[a]; };

  auto& pent = rep.add("pentagon");
  run_instances(pent, ipow(n, 5), exec, [&](std::size_t i) {
    auto t = digits(i, n, 5);
    const int a = t[0], b = t[1], c = t[2], d = t[3], e = t[4];
    if (fusion_dim(cat, {a, b, c, d, cat.dual[e]}) == 0) return Outcome::skip();
    // F^{fcd}_e[g,l] F^{abl}_e[f,k] = Σ_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]
    for (int f : cat.products(a, b))
      for (int k : cat.products(c, d))
        for (int g = 0; g < n; ++g)
          for (int l = 0; l < n; ++l) {
            Cyclotomic lhs = cat.F(f, c, d, e, g, l) * cat.F(a, b, l, e, f, k), rhs;
            for (int h : cat.products(b, c)) rhs += cat.F(a, b, c, g, f, h) * cat.F(a, h, d, e, g, k) * cat.F(b, c, d, k, h, l);
            if (lhs != rhs)
              return Outcome::bad(scalar_failure(
                  "(a,b,c,d;e)=" + label_list(cat, t) + " f=" + L(f) + " g=" + L(g) + " k=" + L(k) + " l=" + L(l), lhs, rhs));
          }
    return Outcome::ok();
  });

  auto& inv = rep.add("F invertible");
  run_instances(inv, ipow(n, 4), exec, [&](std::size_t i) {
    auto t = digits(i, n, 4);
    const FBlock& blk = cat.fblock(t[0], t[1], t[2], t[3]);
    if (blk.rows.empty() && blk.cols.empty()) return Outcome::skip();
    if (blk.inv.rows() == 0) return Outcome::bad(Failure{"F^{" + L(t[0]) + "," + L(t[1]) + "," + L(t[2]) + "}_" + L(t[3]) + " singular", {{"F", blk.m}}});
    return Outcome::ok();
  });

  auto& unit = rep.add("unit normalization");
  run_instances(unit, ipow(n, 2), exec, [&](std::size_t i) {
    auto t = digits(i, n, 2);
    const int a = t[0], b = t[1], one = cat.unit;
    bool any = false;
    for (int d : cat.products(a, b)) {
      any = true;
      for (auto [x, y, z] : {std::tuple{one, a, b}, std::tuple{a, one, b}, std::tuple{a, b, one}}) {
        const FBlock& blk = cat.fblock(x, y, z, d);
        if (!blk.m.is_identity())
          return Outcome::bad(Failure{"F^{" + L(x) + "," + L(y) + "," + L(z) + "}_" + L(d) + " != 1", {{"F", blk.m}}});
      }
    }
    return any ? Outcome::ok() : Outcome::skip();
  });
  return rep;
}

Report check_hexagon(const GCategoryData& cat, Exec exec) {
  Report rep;
  rep.title = "hexagon";
  const FiniteGroup& G = cat.group;
  const int n = cat.size();
  auto L = [&](int a) { return cat.labels[a]; };

  // a ∈ C_g braided past b⊗c.
  auto& h1 = rep.add("hexagon");
  run_instances(h1, ipow(n, 4), exec, [&](std::size_t i) {
    auto t = digits(i, n, 4);
    const int a = t[0], b = t[1], c = t[2], d = t[3];
    if (fusion_dim(cat, {a, b, c, cat.dual[d]}) == 0) return Outcome::skip();
    const int g = cat.deg[a], gb = cat.act(g, b), gc = cat.act(g, c);
    for (int f : cat.products(b, c)) {
      if (!cat.N(a, f, d)) continue;
      for (int fp : cat.products(gb, gc)) {
        if (!cat.N(fp, a, d)) continue;
        Cyclotomic lhs = cat.act(g, f) == fp ? cat.R(a, f, d) * cat.U(g, b, c, f) : Cyclotomic(), rhs;
        for (int e : cat.products(a, b))
          for (int k : cat.products(a, c))
            rhs += cat.Finv(a, b, c, d, f, e) * cat.R(a, b, e) * cat.F(gb, a, c, d, e, k) * cat.R(a, c, k) *
                   cat.Finv(gb, gc, a, d, k, fp);
        if (lhs != rhs)
          return Outcome::bad(scalar_failure("(a,b,c;d)=" + label_list(cat, t) + " f=" + L(f) + " f'=" + L(fp), lhs, rhs));
      }
    }
    return Outcome::ok();
  });

  // a⊗b braided past c, with a ∈ C_g, b ∈ C_h; the mirror family.
  auto& h2 = rep.add("hexagon (inverse braiding)");
  run_instances(h2, ipow(n, 4), exec, [&](std::size_t i) {
    auto t = digits(i, n, 4);
    const int a = t[0], b = t[1], c = t[2], d = t[3];
    if (fusion_dim(cat, {a, b, c, cat.dual[d]}) == 0) return Outcome::skip();
    const int g = cat.deg[a], h = cat.deg[b], hc = cat.act(h, c), ghc = cat.act(G.mul(g, h), c);
    for (int e : cat.products(a, b)) {
      if (!cat.N(e, c, d)) continue;
      for (int ep : cat.products(a, b)) {
        if (!cat.N(ghc, ep, d)) continue;
        Cyclotomic lhs = e == ep ? cat.R(e, c, d) : Cyclotomic(), rhs;
        for (int f : cat.products(b, c))
          for (int k : cat.products(a, hc))
            rhs += cat.F(a, b, c, d, e, f) * cat.R(b, c, f) * cat.Finv(a, hc, b, d, f, k) * cat.R(a, hc, k) *
                   cat.F(ghc, a, b, d, k, ep);
        if (lhs != rhs)
          return Outcome::bad(scalar_failure("(a,b,c;d)=" + label_list(cat, t) + " e=" + L(e) + " e'=" + L(ep), lhs, rhs));
      }
    }
    return Outcome::ok();
  });
  return rep;
}

Report check_g_coherence(const GCategoryData& cat, Exec exec) {
  Report rep;
  rep.title = "G-coherence";
  const FiniteGroup& G = cat.group;
  const int n = cat.size(), ng = G.order();
  auto L = [&](int a) { return cat.labels[a]; };
  auto Gn = [&](int g) { return G.name(g); };

  auto& act = rep.add("action structure");
  run_instances(act, ng * ng, exec, [&](std::size_t i) {
    const int g = static_cast<int>(i) / ng, h = static_cast<int>(i) % ng;
    for (int a = 0; a < n; ++a) {
      std::string w = "g=" + Gn(g) + " h=" + Gn(h) + " a=" + L(a) + ": ";
      if (cat.act(G.mul(g, h), a) != cat.act(g, cat.act(h, a))) return Outcome::bad({w + "(gh).a != g.(h.a)", {}});
      if (cat.deg[cat.act(g, a)] != G.conj(g, cat.deg[a])) return Outcome::bad({w + "deg(g.a) != g deg(a) g^-1", {}});
      if (cat.dual[cat.act(g, a)] != cat.act(g, cat.dual[a])) return Outcome::bad({w + "(g.a)* != g.(a*)", {}});
      if (g == G.identity() && cat.act(g, a) != a) return Outcome::bad({w + "e.a != a", {}});
    }
    if (cat.act(g, cat.unit) != cat.unit) return Outcome::bad({"g=" + Gn(g) + ": g.1 != 1 (unit compatibility)", {}});
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (cat.N(cat.act(g, a), cat.act(g, b), cat.act(g, c)) != cat.N(a, b, c))
            return Outcome::bad({"g=" + Gn(g) + ": N not invariant at (" + L(a) + "," + L(b) + ";" + L(c) + ")", {}});
    return Outcome::ok();
  });

  auto& coh = rep.add("U coherence with F");
  run_instances(coh, ng * ipow(n, 4), exec, [&](std::size_t i) {
    const int g = static_cast<int>(i / ipow(n, 4));
    auto t = digits(i % ipow(n, 4), n, 4);
    const int a = t[0], b = t[1], c = t[2], d = t[3];
    if (fusion_dim(cat, {a, b, c, cat.dual[d]}) == 0) return Outcome::skip();
    auto ga = [&](int x) { return cat.act(g, x); };
    for (int e : cat.products(a, b)) {
      if (!cat.N(e, c, d)) continue;
      for (int f : cat.products(b, c)) {
        if (!cat.N(a, f, d)) continue;
        Cyclotomic lhs = cat.U(g, a, b, e) * cat.U(g, e, c, d) * cat.F(ga(a), ga(b), ga(c), ga(d), ga(e), ga(f));
        Cyclotomic rhs = cat.F(a, b, c, d, e, f) * cat.U(g, b, c, f) * cat.U(g, a, f, d);
        if (lhs != rhs)
          return Outcome::bad(scalar_failure("g=" + Gn(g) + " (a,b,c;d)=" + label_list(cat, t) + " e=" + L(e) + " f=" + L(f), lhs, rhs));
      }
    }
    return Outcome::ok();
  });

  auto& comp = rep.add("U composition");
  run_instances(comp, ng * ng, exec, [&](std::size_t i) {
    const int g = static_cast<int>(i) / ng, h = static_cast<int>(i) % ng;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c : cat.products(a, b)) {
          Cyclotomic lhs = cat.U(G.mul(g, h), a, b, c);
          Cyclotomic rhs = cat.U(g, cat.act(h, a), cat.act(h, b), cat.act(h, c)) * cat.U(h, a, b, c);
          if (lhs != rhs)
            return Outcome::bad(scalar_failure("g=" + Gn(g) + " h=" + Gn(h) + " (a,b;c)=" + label_list(cat, {a, b, c}), lhs, rhs));
          if (g == G.identity() && h == G.identity() && lhs != Cyclotomic(1))
            return Outcome::bad(scalar_failure("U_e(" + L(a) + "," + L(b) + ";" + L(c) + ") != 1", lhs, Cyclotomic(1)));
        }
    return Outcome::ok();
  });

  auto& norm = rep.add("U normalization");
  run_instances(norm, ng * n, exec, [&](std::size_t i) {
    const int g = static_cast<int>(i) / n, a = static_cast<int>(i) % n, one = cat.unit;
    for (auto [x, y, z] : {std::tuple{one, a, a}, std::tuple{a, one, a}, std::tuple{a, cat.dual[a], one}}) {
      Cyclotomic u = cat.U(g, x, y, z);
      if (u != Cyclotomic(1))
        return Outcome::bad(scalar_failure("U_" + Gn(g) + "(" + L(x) + "," + L(y) + ";" + L(z) + ")", u, Cyclotomic(1)));
    }
    return Outcome::ok();
  });

  auto& eqv = rep.add("braiding equivariance");
  run_instances(eqv, ng * ipow(n, 2), exec, [&](std::size_t i) {
    const int k = static_cast<int>(i / ipow(n, 2));
    auto t = digits(i % ipow(n, 2), n, 2);
    const int a = t[0], b = t[1], p = cat.deg[a];
    bool any = false;
    for (int c : cat.products(a, b)) {
      any = true;
      // U_k(a,b;c) R^{ka,kb}_{kc} = R^{ab}_c U_k(p.b, a; c)
      Cyclotomic lhs = cat.U(k, a, b, c) * cat.R(cat.act(k, a), cat.act(k, b), cat.act(k, c));
      Cyclotomic rhs = cat.R(a, b, c) * cat.U(k, cat.act(p, b), a, c);
      if (lhs != rhs)
        return Outcome::bad(scalar_failure("k=" + Gn(k) + " (a,b;c)=" + label_list(cat, {a, b, c}), lhs, rhs));
    }
    return any ? Outcome::ok() : Outcome::skip();
  });
  return rep;
}

Report check_twist(const GCategoryData& cat, Exec exec) {
  Report rep;
  rep.title = "twist";
  const FiniteGroup& G = cat.group;
  const int n = cat.size();
  auto L = [&](int a) { return cat.labels[a]; };
  auto th = [&](int a) { return "theta_" + L(a); };

  auto& unit = rep.add("unit twist");
  unit.instances = 1;
  if (cat.theta[cat.unit] != Cyclotomic(1)) unit.fail(scalar_failure(th(cat.unit), cat.theta[cat.unit], Cyclotomic(1)));

  auto& ribbon = rep.add("ribbon");
  run_instances(ribbon, ipow(n, 2), exec, [&](std::size_t i) {
    auto t = digits(i, n, 2);
    const int a = t[0], b = t[1], h = cat.deg[a], g = cat.deg[b];
    bool any = false;
    for (int c : cat.products(a, b)) {
      any = true;
      // U_{hg}(a,b;c) θ_c = θ_a θ_b R^{ab}_c R^{h.b,a}_c
      Cyclotomic lhs = cat.U(G.mul(h, g), a, b, c) * cat.theta[c];
      Cyclotomic rhs = cat.theta[a] * cat.theta[b] * cat.R(a, b, c) * cat.R(cat.act(h, b), a, c);
      if (lhs != rhs) return Outcome::bad(scalar_failure("(a,b;c)=" + label_list(cat, {a, b, c}), lhs, rhs));
    }
    return any ? Outcome::ok() : Outcome::skip();
  });

  auto& dual = rep.add("dual twist");
  run_instances(dual, n, exec, [&](std::size_t i) {
    const int a = static_cast<int>(i), ad = cat.dual[a];
    if (cat.theta[ad] != cat.theta[a]) return Outcome::bad(scalar_failure(th(ad) + " vs " + th(a), cat.theta[ad], cat.theta[a]));
    return Outcome::ok();
  });

  auto& inv = rep.add("action invariance");
  run_instances(inv, G.order() * n, exec, [&](std::size_t i) {
    const int h = static_cast<int>(i) / n, a = static_cast<int>(i) % n, ha = cat.act(h, a);
    if (cat.theta[ha] != cat.theta[a])
      return Outcome::bad(scalar_failure(th(ha) + " vs " + th(a) + " (h=" + G.name(h) + ")", cat.theta[ha], cat.theta[a]));
    if (cat.act(cat.deg[a], a) != a) return Outcome::bad({"deg(" + L(a) + ")." + L(a) + " != " + L(a), {}});
    return Outcome::ok();
  });
  return rep;
}

Report check_category(const GCategoryData& cat, Exec exec) {
  Report rep;
  rep.title = "category";
  rep.merge(check_pentagon(cat, exec));
  rep.merge(check_hexagon(cat, exec));
  rep.merge(check_g_coherence(cat, exec));
  rep.merge(check_twist(cat, exec));
  return rep;
}

}  // namespace gb
