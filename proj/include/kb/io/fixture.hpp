#pragma once

/**
 * @file fixture.hpp
 * @brief Fixture files: named algebras, maps, functors, modules, complexes,
 * windows, triangles, ideals, contraction fixtures and a task list.
 *
 * Sections are read in dependency order, so a name may only refer to entries
 * of earlier sections; complexes may also refer to each other through
 * shift_of and image_of. Every object is re-validated on load.
 */

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "kb/almost/koszul.hpp"
#include "kb/functors/subcat.hpp"
#include "kb/io/codec.hpp"
#include "kb/linalg/fp.hpp"

namespace kb::io {

inline constexpr int kFormatVersion = 1;

struct WindowSpec {
  std::string algebra;
  std::vector<std::string> bases;  // complex names
  std::vector<int> shifts;
};

struct TriangleSpec {
  std::string alpha, beta, gamma;
};

struct IdealSpec {
  std::string window;
  std::vector<std::string> generators;  // map names
};

struct ContractionSpec {
  std::vector<std::string> variables;
  ContractionFixture fixture;
};

template <FieldScalar K>
struct FixtureFile {
  using Scalar = K;
  FieldSpec field;
  std::map<std::string, AlgebraPtr<K>> algebras;
  std::map<std::string, RingMap<K>> ring_maps;
  std::map<std::string, BimoduleFunctor<K>> functors;
  std::map<std::string, Module<K>> modules;
  std::map<std::string, ProjComplex<K>> complexes;
  std::map<std::string, GradedMap<K>> maps;
  std::map<std::string, WindowSpec> windows;
  std::map<std::string, typename FiniteSubcat<K>::Ptr> subcats;  // built from windows
  std::map<std::string, TriangleSpec> triangles;
  std::map<std::string, IdealSpec> ideals;
  std::map<std::string, ContractionSpec> contractions;
  std::vector<json> tasks;

  std::string algebra_name(const AlgebraPtr<K>& r) const {
    for (const auto& [n, a] : algebras)
      if (a == r) return n;
    throw std::logic_error("algebra not registered in the fixture");
  }
  template <class Map>
  const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const std::string& what,
                                          const std::string& path) const {
    auto it = m.find(name);
    if (it == m.end()) throw FixtureError(path, "unknown " + what + " '" + name + "'");
    return it->second;
  }
  const AlgebraPtr<K>& algebra(const std::string& n, const std::string& p) const { return lookup(algebras, n, "algebra", p); }
  const ProjComplex<K>& complex(const std::string& n, const std::string& p) const { return lookup(complexes, n, "complex", p); }
  const GradedMap<K>& map(const std::string& n, const std::string& p) const { return lookup(maps, n, "map", p); }
  const BimoduleFunctor<K>& functor(const std::string& n, const std::string& p) const { return lookup(functors, n, "functor", p); }
  const typename FiniteSubcat<K>::Ptr& subcat(const std::string& n, const std::string& p) const {
    return lookup(subcats, n, "window", p);
  }
};

using AnyFixture = std::variant<FixtureFile<Rational>, FixtureFile<Fp>>;

namespace detail {

inline const json& section(const json& root, const char* name) {
  static const json empty = json::object();
  auto it = root.find(name);
  if (it == root.end()) return empty;
  if (!it->is_object()) throw FixtureError(std::string("/") + name, "section must be an object keyed by name");
  return *it;
}

template <class Fn>
void wrap(const std::string& path, Fn fn) {
  try {
    fn();
  } catch (const FixtureError&) {
    throw;
  } catch (const Error& e) {
    throw FixtureError(path, e.what());
  }
}

inline std::vector<std::string> string_list(const json& j, const std::string& path) {
  get_array(j, path);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(get_string(j[k], path + "/" + std::to_string(k)));
  return out;
}

template <FieldScalar K>
AlgebraPtr<K> decode_algebra(const FieldSpec& f, const json& j, const std::string& path) {
  AlgebraData<K> d;
  d.field = f;
  d.names = string_list(member(j, "basis", path), path + "/basis");
  const std::size_t n = d.names.size();
  std::set<std::string> seen(d.names.begin(), d.names.end());
  if (seen.size() != n) throw FixtureError(path + "/basis", "duplicate basis names");
  auto index = [&](const json& x, const std::string& p) {
    auto name = get_string(x, p);
    auto it = std::find(d.names.begin(), d.names.end(), name);
    if (it == d.names.end()) throw FixtureError(p, "unknown basis element '" + name + "'");
    return static_cast<std::size_t>(it - d.names.begin());
  };
  // a bare algebra object to decode elements against names only
  auto elem = [&](const json& x, const std::string& p) {
    if (!x.is_object()) throw FixtureError(p, "algebra element must be an object keyed by basis name");
    Vec<K> v(n, ScalarTraits<K>::from_int(0, f));
    for (const auto& [name, c] : x.items()) v[index(json(name), p)] = decode_scalar<K>(c, f, p + "/" + name);
    return v;
  };
  d.table.assign(n, std::vector<Vec<K>>(n, Vec<K>(n, ScalarTraits<K>::from_int(0, f))));
  const auto& prods = get_array(member(j, "products", path), path + "/products");
  std::set<std::pair<std::size_t, std::size_t>> defined;
  for (std::size_t k = 0; k < prods.size(); ++k) {
    const std::string pp = path + "/products/" + std::to_string(k);
    if (!prods[k].is_array() || prods[k].size() != 3) throw FixtureError(pp, "product entry must be [left, right, element]");
    auto a = index(prods[k][0], pp + "/0"), b = index(prods[k][1], pp + "/1");
    if (!defined.insert({a, b}).second) throw FixtureError(pp, "product (" + d.names[a] + "," + d.names[b] + ") given twice");
    d.table[a][b] = elem(prods[k][2], pp + "/2");
  }
  const auto& idem = get_array(member(j, "idempotents", path), path + "/idempotents");
  for (std::size_t k = 0; k < idem.size(); ++k) d.idempotents.push_back(elem(idem[k], path + "/idempotents/" + std::to_string(k)));
  if (j.contains("unit")) {
    d.unit = elem(j["unit"], path + "/unit");
  } else {
    d.unit = Vec<K>(n, ScalarTraits<K>::from_int(0, f));
    for (const auto& e : d.idempotents) d.unit = add(d.unit, e);
  }
  d.primitive = j.value("primitive", false);
  AlgebraPtr<K> out;
  wrap(path, [&] { out = Algebra<K>::validate(std::move(d)); });
  return out;
}

template <FieldScalar K>
json encode_algebra(const Algebra<K>& r) {
  json j;
  j["basis"] = r.names();
  j["products"] = json::array();
  for (std::size_t a = 0; a < r.dim(); ++a)
    for (std::size_t b = 0; b < r.dim(); ++b)
      if (!is_zero_vec<K>(r.product(a, b))) j["products"].push_back({r.names()[a], r.names()[b], encode_element(r, r.product(a, b))});
  j["idempotents"] = json::array();
  for (const auto& e : r.idempotents()) j["idempotents"].push_back(encode_element(r, e));
  j["unit"] = encode_element(r, r.unit());
  j["primitive"] = r.primitive_claimed();
  return j;
}

}  // namespace detail

/// Builds the fixture for the field named in the file. Throws FixtureError with a JSON path.
template <FieldScalar K>
FixtureFile<K> decode_fixture(const json& root, const FieldSpec& field) {
  using detail::section;
  using detail::wrap;
  FixtureFile<K> fx;
  fx.field = field;

  for (const auto& [name, j] : section(root, "algebras").items())
    fx.algebras[name] = detail::decode_algebra<K>(field, j, "/algebras/" + name);

  for (const auto& [name, j] : section(root, "quotients").items()) {
    const std::string p = "/quotients/" + name;
    auto r = fx.algebra(get_string(member(j, "algebra", p), p + "/algebra"), p + "/algebra");
    const auto& gens = get_array(member(j, "ideal", p), p + "/ideal");
    std::vector<Vec<K>> vs;
    for (std::size_t k = 0; k < gens.size(); ++k) vs.push_back(decode_element(*r, gens[k], p + "/ideal/" + std::to_string(k)));
    wrap(p, [&] {
      auto q = quotient_algebra(ideal_closure(r, vs));
      if (fx.algebras.count(name)) throw FixtureError(p, "algebra name already used");
      fx.algebras[name] = q.algebra;
      const std::string map_name = j.value("map", name + ".projection");
      fx.ring_maps[map_name] = q.projection;
    });
  }

  for (const auto& [name, j] : section(root, "ring_maps").items()) {
    const std::string p = "/ring_maps/" + name;
    auto s = fx.algebra(get_string(member(j, "source", p), p + "/source"), p + "/source");
    auto t = fx.algebra(get_string(member(j, "target", p), p + "/target"), p + "/target");
    const auto& imgs = member(j, "images", p);
    if (!imgs.is_object()) throw FixtureError(p + "/images", "expected an object keyed by source basis name");
    std::vector<Vec<K>> cols;
    for (std::size_t b = 0; b < s->dim(); ++b) {
      const auto& nm = s->names()[b];
      cols.push_back(imgs.contains(nm) ? decode_element(*t, imgs[nm], p + "/images/" + nm) : t->zero());
    }
    for (const auto& [k, v] : imgs.items())
      if (std::find(s->names().begin(), s->names().end(), k) == s->names().end())
        throw FixtureError(p + "/images/" + k, "unknown source basis element");
    wrap(p, [&] { fx.ring_maps[name] = RingMap<K>::validate(s, t, Matrix<K>::from_columns(t->dim(), cols)); });
  }

  for (const auto& [name, j] : section(root, "functors").items()) {
    const std::string p = "/functors/" + name;
    const std::string kind = get_string(member(j, "kind", p), p + "/kind");
    std::optional<Bimodule<K>> b;
    if (kind == "identity") {
      b = Bimodule<K>::regular(fx.algebra(get_string(member(j, "algebra", p), p + "/algebra"), p + "/algebra"));
    } else if (kind == "induction" || kind == "restriction") {
      const std::string m = get_string(member(j, "map", p), p + "/map");
      const auto& f = fx.lookup(fx.ring_maps, m, "ring map", p + "/map");
      wrap(p, [&] { b = kind == "induction" ? Bimodule<K>::induction(f) : Bimodule<K>::restriction(f); });
    } else if (kind == "bimodule") {
      auto l = fx.algebra(get_string(member(j, "left", p), p + "/left"), p + "/left");
      auto r = fx.algebra(get_string(member(j, "right", p), p + "/right"), p + "/right");
      const std::size_t dim = get_index(member(j, "dim", p), p + "/dim");
      auto actions = [&](const char* key, const Algebra<K>& a) {
        const auto& aj = member(j, key, p);
        std::vector<Matrix<K>> out;
        for (std::size_t q = 0; q < a.dim(); ++q) {
          const std::string ap = p + "/" + key + "/" + a.names()[q];
          out.push_back(decode_matrix<K>(member(aj, a.names()[q], p + "/" + key), dim, dim, field, ap));
        }
        return out;
      };
      auto la = actions("left_action", *l);
      auto ra = actions("right_action", *r);
      wrap(p, [&] { b = Bimodule<K>::validate(l, r, dim, std::move(la), std::move(ra)); });
    } else {
      throw FixtureError(p + "/kind", "unknown functor kind '" + kind + "'");
    }
    std::optional<ProjectivityWitness<K>> w;
    if (j.contains("witness")) {
      const auto& wj = get_array(j["witness"], p + "/witness");
      ProjectivityWitness<K> ww;
      const auto& s = *b->right_algebra();
      for (std::size_t i = 0; i < wj.size(); ++i) {
        const std::string ip = p + "/witness/" + std::to_string(i);
        std::vector<WitnessPart<K>> parts;
        get_array(wj[i], ip);
        for (std::size_t k = 0; k < wj[i].size(); ++k) {
          const std::string kp = ip + "/" + std::to_string(k);
          auto t = get_index(member(wj[i][k], "target", kp), kp + "/target");
          if (t >= s.num_idempotents()) throw FixtureError(kp + "/target", "idempotent index out of range");
          const auto& g = member(wj[i][k], "generator", kp);
          get_array(g, kp + "/generator");
          if (g.size() != b->dim()) throw FixtureError(kp + "/generator", "generator has the wrong length");
          Vec<K> v;
          for (std::size_t c = 0; c < g.size(); ++c) v.push_back(decode_scalar<K>(g[c], field, kp + "/generator/" + std::to_string(c)));
          parts.push_back({t, std::move(v)});
        }
        ww.push_back(std::move(parts));
      }
      w = std::move(ww);
    }
    wrap(p, [&] { fx.functors[name] = BimoduleFunctor<K>::make(*b, std::move(w)); });
  }

  for (const auto& [name, j] : section(root, "modules").items()) {
    const std::string p = "/modules/" + name;
    auto r = fx.algebra(get_string(member(j, "algebra", p), p + "/algebra"), p + "/algebra");
    wrap(p, [&] {
      if (j.contains("projective")) {
        auto i = get_index(j["projective"], p + "/projective");
        if (i >= r->num_idempotents()) throw FixtureError(p + "/projective", "idempotent index out of range");
        fx.modules[name] = indecomposable_projective(r, i);
      } else if (j.value("regular", false)) {
        fx.modules[name] = Module<K>::regular(r);
      } else {
        const std::size_t dim = get_index(member(j, "dim", p), p + "/dim");
        const auto& aj = member(j, "action", p);
        std::vector<Matrix<K>> act;
        for (std::size_t q = 0; q < r->dim(); ++q)
          act.push_back(decode_matrix<K>(member(aj, r->names()[q], p + "/action"), dim, dim, field, p + "/action/" + r->names()[q]));
        fx.modules[name] = Module<K>::validate(r, dim, std::move(act));
      }
    });
  }

  // derived complexes may refer to any other complex; resolve in passes
  {
    const auto& cs = section(root, "complexes");
    std::set<std::string> pending;
    for (const auto& [name, j] : cs.items()) pending.insert(name);
    while (!pending.empty()) {
      bool progress = false;
      for (auto it = pending.begin(); it != pending.end();) {
        const std::string& name = *it;
        const json& j = cs[name];
        const std::string p = "/complexes/" + name;
        const char* ref = j.contains("shift_of") ? "shift_of" : j.contains("image_of") ? "image_of" : nullptr;
        if (ref) {
          const std::string base = get_string(j[ref], p + "/" + ref);
          if (pending.count(base)) {
            ++it;
            continue;
          }
          const auto& x = fx.complex(base, p + "/" + ref);
          if (j.contains("shift_of")) {
            fx.complexes[name] = x.shift(static_cast<int>(get_int(member(j, "by", p), p + "/by")));
          } else {
            const auto& f = fx.functor(get_string(member(j, "functor", p), p + "/functor"), p + "/functor");
            wrap(p, [&] { fx.complexes[name] = f.apply(x); });
          }
        } else {
          auto r = fx.algebra(get_string(member(j, "algebra", p), p + "/algebra"), p + "/algebra");
          fx.complexes[name] = decode_complex_body(r, j, p);
        }
        it = pending.erase(it);
        progress = true;
      }
      if (!progress) throw FixtureError("/complexes/" + *pending.begin(), "cyclic shift_of/image_of references");
    }
  }

  for (const auto& [name, j] : section(root, "maps").items()) {
    const std::string p = "/maps/" + name;
    const auto& src = fx.complex(get_string(member(j, "source", p), p + "/source"), p + "/source");
    const auto& tgt = fx.complex(get_string(member(j, "target", p), p + "/target"), p + "/target");
    if (src.algebra() != tgt.algebra() && !src.empty() && !tgt.empty()) throw FixtureError(p, "source and target live over different algebras");
    GradedMap<K> f;
    wrap(p, [&] { f = decode_map_body(src, tgt, j, p); });
    if (f.degree() == 0 && !is_chain_map(f)) throw FixtureError(p, "degree-0 map is not a chain map");
    fx.maps[name] = std::move(f);
  }

  for (const auto& [name, j] : section(root, "windows").items()) {
    const std::string p = "/windows/" + name;
    WindowSpec w;
    w.algebra = get_string(member(j, "algebra", p), p + "/algebra");
    auto r = fx.algebra(w.algebra, p + "/algebra");
    w.bases = detail::string_list(member(j, "bases", p), p + "/bases");
    if (j.contains("shift")) {
      const long s = get_int(j["shift"], p + "/shift");
      if (s < 0) throw FixtureError(p + "/shift", "window half-width must be nonnegative");
      for (long n = -s; n <= s; ++n) w.shifts.push_back(static_cast<int>(n));
    } else {
      const auto& sj = get_array(member(j, "shifts", p), p + "/shifts");
      for (std::size_t k = 0; k < sj.size(); ++k) w.shifts.push_back(static_cast<int>(get_int(sj[k], p + "/shifts/" + std::to_string(k))));
    }
    std::vector<std::pair<std::string, ProjComplex<K>>> bases;
    for (std::size_t k = 0; k < w.bases.size(); ++k)
      bases.emplace_back(w.bases[k], fx.complex(w.bases[k], p + "/bases/" + std::to_string(k)));
    wrap(p, [&] { fx.subcats[name] = FiniteSubcat<K>::make(r, bases, w.shifts); });
    std::sort(w.shifts.begin(), w.shifts.end());
    w.shifts.erase(std::unique(w.shifts.begin(), w.shifts.end()), w.shifts.end());
    fx.windows[name] = std::move(w);
  }

  for (const auto& [name, j] : section(root, "triangles").items()) {
    const std::string p = "/triangles/" + name;
    TriangleSpec t{get_string(member(j, "alpha", p), p + "/alpha"), get_string(member(j, "beta", p), p + "/beta"),
                   get_string(member(j, "gamma", p), p + "/gamma")};
    Triangle<K> tri{fx.map(t.alpha, p + "/alpha"), fx.map(t.beta, p + "/beta"), fx.map(t.gamma, p + "/gamma")};
    wrap(p, [&] { tri.check(); });
    fx.triangles[name] = std::move(t);
  }

  for (const auto& [name, j] : section(root, "ideals").items()) {
    const std::string p = "/ideals/" + name;
    IdealSpec s{get_string(member(j, "window", p), p + "/window"), detail::string_list(member(j, "generators", p), p + "/generators")};
    const auto& sub = fx.subcat(s.window, p + "/window");
    for (std::size_t k = 0; k < s.generators.size(); ++k) {
      const auto& f = fx.map(s.generators[k], p + "/generators/" + std::to_string(k));
      if (!sub->find(f.source()) || !sub->find(f.target()))
        throw FixtureError(p + "/generators/" + std::to_string(k), "generator endpoints outside the window");
    }
    fx.ideals[name] = std::move(s);
  }

  for (const auto& [name, j] : section(root, "contractions").items()) {
    const std::string p = "/contractions/" + name;
    ContractionSpec c;
    c.variables = detail::string_list(member(j, "variables", p), p + "/variables");
    c.fixture = decode_contraction(j, p);
    fx.contractions[name] = std::move(c);
  }

  if (root.contains("tasks")) {
    const auto& tj = get_array(root["tasks"], "/tasks");
    for (const auto& t : tj) fx.tasks.push_back(t);
  }
  return fx;
}

inline FieldSpec decode_field(const json& root) {
  const auto& f = member(root, "field", "");
  if (f.is_string() && f.get<std::string>() == "Q") return {};
  if (f.is_object() && f.contains("p")) {
    auto p = get_index(f["p"], "/field/p");
    if (!is_prime(p)) throw FixtureError("/field/p", std::to_string(p) + " is not prime");
    return {p};
  }
  throw FixtureError("/field", "field must be \"Q\" or {\"p\": prime}");
}

inline const std::vector<std::string>& task_kinds() {
  static const std::vector<std::string> k = {"check-hepi", "lift-map", "lift-complex", "recognize-triangle", "check-ideal",
                                             "telescope-report", "almost-report", "verify-contraction", "verify-certificate"};
  return k;
}

namespace detail {

struct RefSpec {
  const char* key;
  const char* section;
  bool list;
  bool required;
};

inline const std::vector<RefSpec>& task_refs(const std::string& kind) {
  static const std::map<std::string, std::vector<RefSpec>> table = {
      {"check-hepi", {{"map", "ring_maps", false, true}}},
      {"lift-map",
       {{"functor", "functors", false, true},
        {"source", "complexes", false, true},
        {"target", "complexes", false, true},
        {"alpha", "maps", false, true},
        {"generators", "complexes", true, false},
        {"kernel_window", "windows", false, false}}},
      {"lift-complex",
       {{"functor", "functors", false, true},
        {"target", "complexes", false, true},
        {"generators", "complexes", true, false},
        {"kernel_window", "windows", false, false}}},
      {"recognize-triangle", {{"triangle", "triangles", false, true}}},
      {"check-ideal", {{"ideal", "ideals", false, true}, {"triangles", "triangles", true, false}}},
      {"telescope-report",
       {{"functor", "functors", false, true},
        {"window", "windows", false, true},
        {"triangles", "triangles", true, false},
        {"probes", "maps", true, false}}},
      {"almost-report",
       {{"algebra", "algebras", false, true},
        {"modules", "modules", true, true},
        {"window", "windows", false, false},
        {"compare_cone", "complexes", true, false}}},
      {"verify-contraction", {{"contraction", "contractions", false, true}}},
      {"verify-certificate", {}},
  };
  auto it = table.find(kind);
  if (it == table.end()) throw std::logic_error("no reference table for " + kind);
  return it->second;
}

template <FieldScalar K>
bool has_entry(const FixtureFile<K>& fx, const std::string& section, const std::string& name) {
  if (section == "ring_maps") return fx.ring_maps.count(name) > 0;
  if (section == "functors") return fx.functors.count(name) > 0;
  if (section == "complexes") return fx.complexes.count(name) > 0;
  if (section == "maps") return fx.maps.count(name) > 0;
  if (section == "windows") return fx.windows.count(name) > 0;
  if (section == "triangles") return fx.triangles.count(name) > 0;
  if (section == "ideals") return fx.ideals.count(name) > 0;
  if (section == "algebras") return fx.algebras.count(name) > 0;
  if (section == "modules") return fx.modules.count(name) > 0;
  if (section == "contractions") return fx.contractions.count(name) > 0;
  throw std::logic_error("unknown section " + section);
}

template <FieldScalar K>
void validate_task_list(const FixtureFile<K>& fx) {
  std::set<std::string> ids;
  for (std::size_t t = 0; t < fx.tasks.size(); ++t) {
    const std::string p = "/tasks/" + std::to_string(t);
    const auto& task = fx.tasks[t];
    const std::string id = get_string(member(task, "id", p), p + "/id");
    if (id.empty()) throw FixtureError(p + "/id", "task id must be nonempty");
    if (!ids.insert(id).second) throw FixtureError(p + "/id", "duplicate task id '" + id + "'");
    const std::string kind = get_string(member(task, "kind", p), p + "/kind");
    const auto& kinds = task_kinds();
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) throw FixtureError(p + "/kind", "unknown task kind '" + kind + "'");
    for (const auto& ref : task_refs(kind)) {
      const std::string rp = p + "/" + ref.key;
      if (!task.contains(ref.key)) {
        if (ref.required) throw FixtureError(p, std::string("missing field '") + ref.key + "'");
        continue;
      }
      std::vector<std::string> names =
          ref.list ? string_list(task[ref.key], rp) : std::vector<std::string>{get_string(task[ref.key], rp)};
      for (const auto& n : names)
        if (!has_entry(fx, ref.section, n)) throw FixtureError(rp, "unknown " + std::string(ref.section) + " entry '" + n + "'");
    }
    if (kind == "verify-certificate") {
      const auto& rep = member(task, "report", p);
      const std::string target = get_string(member(rep, "id", p + "/report"), p + "/report/id");
      bool known = false;
      for (const auto& other : fx.tasks) known = known || (other.value("id", "") == target && other.value("kind", "") != "verify-certificate");
      if (!known) throw FixtureError(p + "/report/id", "no task with id '" + target + "' to replay against");
    }
  }
}

}  // namespace detail

inline void validate_tasks(const AnyFixture& fx) {
  std::visit([](const auto& f) { detail::validate_task_list(f); }, fx);
}

/// Parses fixture text. JSON syntax errors carry the byte position and line.
inline AnyFixture parse_fixture(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // locate the line and column of the byte offset
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw FixtureError("line " + std::to_string(line) + ", column " + std::to_string(col), e.what());
  }
  const long version = get_int(member(root, "format_version", ""), "/format_version");
  if (version != kFormatVersion) throw FixtureError("/format_version", "unsupported format version " + std::to_string(version));
  FieldSpec f = decode_field(root);
  AnyFixture out = f.is_rational() ? AnyFixture(decode_fixture<Rational>(root, f)) : AnyFixture(decode_fixture<Fp>(root, f));
  validate_tasks(out);
  return out;
}

inline AnyFixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open fixture file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str());
}

/// Writes every object in explicit form; quotients, shifts and functor shorthands are expanded.
template <FieldScalar K>
json encode_fixture(const FixtureFile<K>& fx) {
  json j;
  j["format_version"] = kFormatVersion;
  j["field"] = fx.field.is_rational() ? json("Q") : json({{"p", fx.field.prime}});
  for (const auto& [n, a] : fx.algebras) j["algebras"][n] = detail::encode_algebra(*a);
  for (const auto& [n, f] : fx.ring_maps) {
    json m{{"source", fx.algebra_name(f.source())}, {"target", fx.algebra_name(f.target())}, {"images", json::object()}};
    for (std::size_t b = 0; b < f.source()->dim(); ++b)
      if (!is_zero_vec<K>(f.image(b))) m["images"][f.source()->names()[b]] = encode_element(*f.target(), f.image(b));
    j["ring_maps"][n] = std::move(m);
  }
  for (const auto& [n, f] : fx.functors) {
    const auto& b = f.bimodule();
    json m{{"kind", "bimodule"}, {"left", fx.algebra_name(b.left_algebra())}, {"right", fx.algebra_name(b.right_algebra())}, {"dim", b.dim()}};
    for (std::size_t q = 0; q < b.left_algebra()->dim(); ++q) m["left_action"][b.left_algebra()->names()[q]] = encode_matrix(b.left_action()[q]);
    for (std::size_t q = 0; q < b.right_algebra()->dim(); ++q)
      m["right_action"][b.right_algebra()->names()[q]] = encode_matrix(b.right_action()[q]);
    m["witness"] = json::array();
    for (const auto& parts : f.witness()) {
      json pj = json::array();
      for (const auto& part : parts) {
        json g = json::array();
        for (const auto& c : part.generator) g.push_back(encode_scalar(c));
        pj.push_back({{"target", part.target_idempotent}, {"generator", g}});
      }
      m["witness"].push_back(std::move(pj));
    }
    j["functors"][n] = std::move(m);
  }
  for (const auto& [n, m] : fx.modules) {
    json mj{{"algebra", fx.algebra_name(m.algebra())}, {"dim", m.dim()}, {"action", json::object()}};
    for (std::size_t q = 0; q < m.algebra()->dim(); ++q) mj["action"][m.algebra()->names()[q]] = encode_matrix(m.action(q));
    j["modules"][n] = std::move(mj);
  }
  for (const auto& [n, x] : fx.complexes) {
    json c = encode_complex_body(x);
    c["algebra"] = fx.algebra_name(x.algebra());
    j["complexes"][n] = std::move(c);
  }
  auto complex_name = [&](const ProjComplex<K>& x) {
    for (const auto& [n, c] : fx.complexes)
      if (c == x && c.algebra() == x.algebra()) return n;
    throw std::logic_error("map endpoint is not a named complex");
  };
  for (const auto& [n, f] : fx.maps) {
    json m = encode_map_body(f);
    m["source"] = complex_name(f.source());
    m["target"] = complex_name(f.target());
    j["maps"][n] = std::move(m);
  }
  for (const auto& [n, w] : fx.windows) j["windows"][n] = {{"algebra", w.algebra}, {"bases", w.bases}, {"shifts", w.shifts}};
  for (const auto& [n, t] : fx.triangles) j["triangles"][n] = {{"alpha", t.alpha}, {"beta", t.beta}, {"gamma", t.gamma}};
  for (const auto& [n, i] : fx.ideals) j["ideals"][n] = {{"window", i.window}, {"generators", i.generators}};
  for (const auto& [n, c] : fx.contractions) j["contractions"][n] = encode_contraction(c.fixture, c.variables);
  j["tasks"] = fx.tasks;
  return j;
}

inline json encode_fixture(const AnyFixture& fx) {
  return std::visit([](const auto& f) { return encode_fixture(f); }, fx);
}

}  // namespace kb::io
