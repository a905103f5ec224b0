#include "cocyc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace cocyc {

namespace {

[[noreturn]] void fail(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* name, const char* doc) {
  if (!j.is_object() || !j.contains(name)) fail(std::string(doc) + ": missing field '" + name + "'");
  return j.at(name);
}

int as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) fail(what + " must be an integer");
  return j.get<int>();
}

template <class T>
T as_scalar(const Json& j, const std::string& what);

template <>
double as_scalar<double>(const Json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return to_double(parse_rational(j.get<std::string>()));
    } catch (const std::exception&) {
    }
  }
  fail(what + " must be a number or a rational string");
}

template <>
Rational as_scalar<Rational>(const Json& j, const std::string& what) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    // a JSON float is read through its decimal text, so 0.25 stays 1/4
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const std::exception&) {
  }
  fail(what + " must be a number or a rational string");
}

std::string cell_name(int i, int j, int g) {
  return "values[" + std::to_string(i) + "][" + std::to_string(j) + "][" + std::to_string(g) + "]";
}

template <class T>
BasicStepKernel<T> read_kernel(const Json& j, bool require_graphon) {
  const char* doc = "graphon";
  GroupSpec group = group_from_json(field(j, "group", doc));
  const Json& pm = field(j, "part_measures", doc);
  if (!pm.is_array() || pm.empty()) fail("graphon: part_measures must be a nonempty array");
  std::vector<T> parts;
  for (std::size_t i = 0; i < pm.size(); ++i) parts.push_back(as_scalar<T>(pm[i], "part_measures[" + std::to_string(i) + "]"));
  const int k = static_cast<int>(parts.size());
  const int q = group.order();
  const Json& vals = field(j, "values", doc);
  if (!vals.is_array() || static_cast<int>(vals.size()) != k) fail("graphon: values must have one row per part");
  std::vector<T> v;
  v.reserve(static_cast<std::size_t>(k) * k * q);
  for (int a = 0; a < k; ++a) {
    if (!vals[a].is_array() || static_cast<int>(vals[a].size()) != k) fail("graphon: values[" + std::to_string(a) + "] must have one entry per part");
    for (int b = 0; b < k; ++b) {
      const Json& cell = vals[a][b];
      if (!cell.is_array() || static_cast<int>(cell.size()) != q)
        fail("graphon: values[" + std::to_string(a) + "][" + std::to_string(b) + "] must have |G| = " + std::to_string(q) + " entries");
      for (int g = 0; g < q; ++g) {
        T x = as_scalar<T>(cell[g], cell_name(a, b, g));
        if (require_graphon && !(x >= 0 && x <= 1)) fail("graphon: range violated: " + cell_name(a, b, g) + " outside [0,1]");
        v.push_back(x);
      }
    }
  }
  try {
    BasicStepKernel<T> w(typename BasicStepKernel<T>::Unchecked{}, group, std::move(parts), std::move(v));
    std::string bad = w.symmetry_violation();
    if (!bad.empty()) fail("graphon: " + bad);
    return w;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    fail(std::string("graphon: ") + e.what());
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    fail("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

Json to_json(const GroupSpec& group) { return Json(group.moduli()); }

GroupSpec group_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("group: expected a nonempty list of moduli such as [2] or [3,3]");
  std::vector<int> moduli;
  for (const auto& m : j) moduli.push_back(as_int(m, "group modulus"));
  try {
    return GroupSpec(moduli);
  } catch (const std::exception& e) {
    fail(std::string("group: ") + e.what());
  }
}

Json to_json(const SymmetricDistribution& nu) {
  Json j = Json::object();
  const GroupSpec& group = nu.group();
  for (int g = 0; g < group.order(); ++g) {
    std::string key = group.key(group.element_at(g));
    if (nu.exact()) j[key] = (*nu.exact())[g].get_str();
    else j[key] = nu.prob(g);
  }
  return j;
}

SymmetricDistribution distribution_from_json(const GroupSpec& group, const Json& j) {
  if (!j.is_object()) fail("distribution: expected an object mapping \"2|1\" keys to probabilities");
  const int q = group.order();
  std::vector<Rational> exact(q);
  std::vector<double> probs(q);
  std::vector<char> seen(q, 0);
  bool all_exact = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int g;
    try {
      g = group.index_of(group.parse_key(it.key()));
    } catch (const std::exception& e) {
      fail(std::string("distribution: ") + e.what());
    }
    if (seen[g]) fail("distribution: duplicate key '" + it.key() + "'");
    seen[g] = 1;
    if (it.value().is_number_float()) all_exact = false;
    probs[g] = as_scalar<double>(it.value(), "distribution['" + it.key() + "']");
    if (all_exact) exact[g] = as_scalar<Rational>(it.value(), "distribution['" + it.key() + "']");
  }
  for (int g = 0; g < q; ++g)
    if (!seen[g]) fail("distribution: missing probability for '" + group.key(group.element_at(g)) + "'");
  try {
    if (all_exact) return SymmetricDistribution(group, exact);
    return SymmetricDistribution(group, probs);
  } catch (const std::exception& e) {
    fail(std::string("distribution: ") + e.what());
  }
}

Json to_json(const Cochain& f) {
  Json edges = Json::array();
  for (int u = 1; u <= f.n(); ++u)
    for (int v = u + 1; v <= f.n(); ++v) edges.push_back({{"u", u}, {"v", v}, {"g", f.value(u, v).residues}});
  return {{"n", f.n()}, {"group", to_json(f.group())}, {"edges", edges}};
}

Cochain cochain_from_json(const Json& j) {
  const char* doc = "cochain";
  const int n = as_int(field(j, "n", doc), "cochain n");
  if (n < 2) fail("cochain: n must be >= 2");
  GroupSpec group = group_from_json(field(j, "group", doc));
  const Json& edges = field(j, "edges", doc);
  if (!edges.is_array()) fail("cochain: edges must be an array");
  std::vector<int> labels(num_edges(n), -1);
  for (const auto& e : edges) {
    int u = as_int(field(e, "u", "cochain edge"), "edge u");
    int v = as_int(field(e, "v", "cochain edge"), "edge v");
    if (u < 1 || v < 1 || u > n || v > n || u == v) fail("cochain: invalid edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    const Json& gj = field(e, "g", "cochain edge");
    GroupElement g;
    if (gj.is_number_integer()) g.residues = {gj.get<int>()};
    else if (gj.is_string()) g = group.parse_key(gj.get<std::string>());
    else if (gj.is_array()) g.residues = gj.get<std::vector<int>>();
    else fail("cochain: edge label must be a residue list");
    if (!group.is_valid(g)) fail("cochain: label on {" + std::to_string(u) + "," + std::to_string(v) + "} is not a group element");
    int idx = group.index_of(g);
    if (u > v) {
      std::swap(u, v);
      idx = group.neg_index(idx);
    }
    int e_idx = edge_index(n, u, v);
    if (labels[e_idx] >= 0) fail("cochain: edge {" + std::to_string(u) + "," + std::to_string(v) + "} given twice");
    labels[e_idx] = idx;
  }
  for (int t = 0; t < num_edges(n); ++t)
    if (labels[t] < 0) {
      Edge e = edge_at(n, t);
      fail("cochain: edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} is missing (K_n is complete)");
    }
  return Cochain(n, group, labels);
}

Json to_json(const StepKernel& w) {
  const int k = w.num_parts();
  Json values = Json::array();
  for (int i = 0; i < k; ++i) {
    Json row = Json::array();
    for (int j = 0; j < k; ++j) {
      Json cell = Json::array();
      for (int g = 0; g < w.order(); ++g) cell.push_back(json_number(w.at(i, j, g)));
      row.push_back(cell);
    }
    values.push_back(row);
  }
  return {{"group", to_json(w.group())}, {"part_measures", w.parts()}, {"values", values}};
}

StepKernel kernel_from_json(const Json& j, bool require_graphon) { return read_kernel<double>(j, require_graphon); }

ExactStepKernel exact_kernel_from_json(const Json& j, bool require_graphon) {
  return read_kernel<Rational>(j, require_graphon);
}

Json to_json(const TwoComplex& x) {
  Json tris = Json::array();
  for (const auto& t : x.triangles()) tris.push_back({t.a, t.b, t.c});
  return {{"n", x.n()}, {"triangles", tris}};
}

TwoComplex complex_from_json(const Json& j) {
  const char* doc = "complex";
  const int n = as_int(field(j, "n", doc), "complex n");
  const Json& tris = field(j, "triangles", doc);
  if (!tris.is_array()) fail("complex: triangles must be an array");
  std::vector<Triangle> faces;
  for (const auto& t : tris) {
    if (!t.is_array() || t.size() != 3) fail("complex: each triangle must be [u,v,w]");
    Triangle tri{as_int(t[0], "vertex"), as_int(t[1], "vertex"), as_int(t[2], "vertex")};
    if (!(tri.a < tri.b && tri.b < tri.c)) fail("complex: triangle vertices must be strictly increasing");
    faces.push_back(tri);
  }
  try {
    return TwoComplex(n, std::move(faces));
  } catch (const std::exception& e) {
    fail(std::string("complex: ") + e.what());
  }
}

Json to_json(const HomologyReport& r) {
  Json divisors = Json::array();
  for (const auto& d : r.elementary_divisors) divisors.push_back(d.get_str());
  Json j = {{"n", r.n}, {"faces", r.faces}, {"rank_d2_Q", r.rank_q}, {"dim_H1_Q", r.dim_H1_q}};
  if (r.p) {
    j["p"] = *r.p;
    j["dim_Z1_p"] = *r.dim_Z1_p;
    j["dim_H1_p"] = *r.dim_H1_p;
  }
  j["elementary_divisors"] = divisors;
  j["torsion_order"] = r.torsion_order.get_str();
  j["mg"] = r.mg;
  j["torsion_bound_holds"] = r.torsion_bound_holds;
  return j;
}

Json to_json(const FkResult& r) {
  Json rounds = Json::array();
  for (std::size_t t = 0; t < r.trace.size(); ++t) {
    const FkRound& x = r.trace[t];
    rounds.push_back({{"round", t + 1},
                      {"slice", x.slice},
                      {"rows", x.rows},
                      {"cols", x.cols},
                      {"violation", json_number(x.violation)},
                      {"energy", json_number(x.energy)},
                      {"parts", x.parts}});
  }
  return {{"eps", r.eps},
          {"scale", json_number(r.scale)},
          {"initial_energy", json_number(r.initial_energy)},
          {"rounds", rounds},
          {"partition", r.partition.blocks},
          {"residual", json_number(r.residual)},
          {"residual_exact", r.residual_exact}};
}

}  // namespace cocyc
