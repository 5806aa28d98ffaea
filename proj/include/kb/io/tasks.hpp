#pragma once

/**
 * @file tasks.hpp
 * @brief Task execution and reports.
 *
 * A task is {"id", "kind", ...parameters}. Reports carry a verdict from a
 * closed vocabulary, evidence as JSON (objects print in sorted key order) and
 * the window the verdict is relative to. Timing is opt-in and lives outside
 * the evidence so the verdict body stays reproducible.
 */

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <thread>

#include "kb/almost/almost.hpp"
#include "kb/derived/resolution.hpp"
#include "kb/ideals/telescope.hpp"
#include "kb/io/fixture.hpp"
#include "kb/lifting/lift.hpp"

namespace kb::io {

inline const std::vector<std::string>& verdict_vocabulary() {
  static const std::vector<std::string> v = {"certified", "refuted", "inconclusive", "found", "not_found",
                                             "exact", "not_exact", "consistent", "inconsistent"};
  return v;
}

struct RunOptions {
  std::optional<std::size_t> max_degree;  // resolution budget for check-hepi
  std::optional<std::size_t> depth;       // lifting depth
  std::optional<int> window;              // lifting shift window and half-width of every subcategory window
  bool timing = false;
  std::size_t workers = 1;
};

/// KB_WORKERS, or 1 when unset or unparsable.
inline std::size_t default_workers() {
  const char* s = std::getenv("KB_WORKERS");
  if (!s) return 1;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  return (end && *end == '\0' && v > 0) ? static_cast<std::size_t>(v) : 1;
}

struct Report {
  std::string id, kind, verdict;
  std::optional<std::string> window;
  json evidence = json::object();
  std::optional<double> timing_ms;

  json to_json() const {
    json j{{"id", id}, {"kind", kind}, {"verdict", verdict}, {"evidence", evidence}};
    j["window"] = window ? json(*window) : json(nullptr);
    if (timing_ms) j["timing_ms"] = *timing_ms;
    return j;
  }
};

inline std::string checked_verdict(const std::string& v) {
  const auto& voc = verdict_vocabulary();
  if (std::find(voc.begin(), voc.end(), v) == voc.end()) throw std::logic_error("verdict outside the vocabulary: " + v);
  return v;
}

// ---- standalone encodings used inside certificates ----

template <FieldScalar K>
json encode_vec(const Vec<K>& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(encode_scalar(x));
  return j;
}

template <FieldScalar K>
Vec<K> decode_vec(const json& j, const FieldSpec& f, const std::string& path) {
  get_array(j, path);
  Vec<K> v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(decode_scalar<K>(j[k], f, path + "/" + std::to_string(k)));
  return v;
}

/// A map with its source and target written out, so it can be read back without context.
template <FieldScalar K>
json encode_standalone_map(const GradedMap<K>& f) {
  json j = encode_map_body(f);
  j["source"] = encode_complex_body(f.source());
  j["target"] = encode_complex_body(f.target());
  return j;
}

template <FieldScalar K>
GradedMap<K> decode_standalone_map(const AlgebraPtr<K>& r, const json& j, const std::string& path) {
  auto src = decode_complex_body(r, member(j, "source", path), path + "/source");
  auto tgt = decode_complex_body(r, member(j, "target", path), path + "/target");
  try {
    return decode_map_body(src, tgt, j, path);
  } catch (const FixtureError&) {
    throw;
  } catch (const Error& e) {
    throw FixtureError(path, e.what());
  }
}

template <FieldScalar K>
json ideal_evidence(const HomIdeal<K>& a) {
  const auto& s = *a.subcat();
  json parts = json::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (a.dim(i, j) > 0)
        parts.push_back({{"source", s.object(i).label()}, {"target", s.object(j).label()}, {"dim", a.dim(i, j)},
                         {"hom_dim", s.hom(i, j).dim()}});
  return {{"total_dim", a.total_dim()}, {"parts", parts}};
}

template <FieldScalar K>
json sigma_evidence(const HomIdeal<K>& a, const SigmaReport<K>& r) {
  json j{{"stable", r.stable}, {"pairs_checked", r.pairs_checked}};
  if (r.witness)
    j["witness"] = {{"source", a.subcat()->object(r.witness->first).label()}, {"target", a.subcat()->object(r.witness->second).label()}};
  return j;
}

template <FieldScalar K>
json saturation_evidence(const HomIdeal<K>& a, const SaturationReport<K>& r, const std::vector<std::string>& names) {
  json j{{"saturated", r.saturated}, {"triangles_used", r.triangles_used}};
  if (r.triangle) {
    j["violation"] = {{"triangle", names.at(*r.triangle)}, {"target", a.subcat()->object(*r.target).label()}, {"phi", encode_vec(*r.phi)}};
  }
  return j;
}

/// Runs single tasks against one fixture; immutable, so one runner serves every worker.
template <FieldScalar K>
class TaskRunner {
 public:
  TaskRunner(const FixtureFile<K>& fx, RunOptions opts) : fx_(fx), opts_(std::move(opts)) {}

  Report run(const json& task, const std::string& path) const {
    const auto start = std::chrono::steady_clock::now();
    Report r;
    r.id = get_string(member(task, "id", path), path + "/id");
    r.kind = get_string(member(task, "kind", path), path + "/kind");
    if (r.kind == "check-hepi") check_hepi(task, path, r);
    else if (r.kind == "lift-map") lift_map(task, path, r);
    else if (r.kind == "lift-complex") lift_cx(task, path, r);
    else if (r.kind == "recognize-triangle") triangle(task, path, r);
    else if (r.kind == "check-ideal") check_ideal(task, path, r);
    else if (r.kind == "telescope-report") telescope(task, path, r);
    else if (r.kind == "almost-report") almost(task, path, r);
    else if (r.kind == "verify-contraction") contraction_task(task, path, r);
    else if (r.kind == "verify-certificate") replay(member(task, "report", path), path + "/report", r);
    else throw FixtureError(path + "/kind", "unknown task kind '" + r.kind + "'");
    r.verdict = checked_verdict(r.verdict);
    if (opts_.timing)
      r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

  /// Replays a previously emitted report against the task of the same id.
  Report replay_report(const json& report) const {
    Report r;
    r.id = get_string(member(report, "id", ""), "/id");
    r.kind = "verify-certificate";
    replay(report, "", r);
    r.verdict = checked_verdict(r.verdict);
    return r;
  }

 private:
  const FixtureFile<K>& fx_;
  RunOptions opts_;

  std::string str(const json& t, const char* key, const std::string& p) const { return get_string(member(t, key, p), p + "/" + key); }

  const json& task_by_id(const std::string& id, const std::string& p) const {
    for (const auto& t : fx_.tasks)
      if (t.value("id", "") == id && t.value("kind", "") != "verify-certificate") return t;
    throw FixtureError(p, "no task with id '" + id + "'");
  }

  typename FiniteSubcat<K>::Ptr window(const std::string& name, const std::string& p) const {
    const auto& s = fx_.subcat(name, p);
    if (!opts_.window) return s;
    const auto& spec = fx_.windows.at(name);
    std::vector<std::pair<std::string, ProjComplex<K>>> bases;
    for (const auto& b : spec.bases) bases.emplace_back(b, fx_.complex(b, p));
    return FiniteSubcat<K>::symmetric(fx_.algebra(spec.algebra, p), bases, *opts_.window);
  }

  std::vector<Triangle<K>> triangles(const json& t, const std::string& p, std::vector<std::string>& names) const {
    std::vector<Triangle<K>> out;
    if (!t.contains("triangles")) return out;
    names = detail::string_list(t["triangles"], p + "/triangles");
    for (const auto& n : names) {
      const auto& spec = fx_.lookup(fx_.triangles, n, "triangle", p + "/triangles");
      out.push_back({fx_.map(spec.alpha, p), fx_.map(spec.beta, p), fx_.map(spec.gamma, p)});
    }
    return out;
  }

  void check_hepi(const json& t, const std::string& p, Report& r) const {
    const auto& f = fx_.lookup(fx_.ring_maps, str(t, "map", p), "ring map", p + "/map");
    std::size_t n_max = t.contains("max_degree") ? get_index(t["max_degree"], p + "/max_degree") : 20;
    if (opts_.max_degree) n_max = *opts_.max_degree;
    auto v = check_homological_epi(f, n_max);
    r.verdict = to_string(v.status);
    r.window = "Tor_i for i <= " + std::to_string(n_max);
    r.evidence = {{"dim_s", v.dim_s},         {"dim_tensor", v.dim_tensor}, {"mult_rank", v.mult_rank},
                  {"mult_iso", v.mult_iso},   {"tor", v.tor},               {"terminated", v.terminated},
                  {"resolution_length", v.resolution_length}, {"n_max", v.n_max}, {"witness", v.witness}};
  }

  SearchBudget<K> budget(const json& t, const std::string& p, const BimoduleFunctor<K>& f, json& ev) const {
    SearchBudget<K> b;
    if (t.contains("depth")) b.depth = get_index(t["depth"], p + "/depth");
    if (opts_.depth) b.depth = *opts_.depth;
    if (t.contains("shift_window")) b.shift_window = static_cast<int>(get_index(t["shift_window"], p + "/shift_window"));
    if (opts_.window) b.shift_window = *opts_.window;
    json names = json::array();
    if (t.contains("generators")) {
      for (const auto& n : detail::string_list(t["generators"], p + "/generators")) {
        b.generators.push_back(fx_.complex(n, p + "/generators"));
        names.push_back(n);
      }
    }
    if (t.contains("kernel_window")) {
      auto s = window(str(t, "kernel_window", p), p + "/kernel_window");
      if (s->algebra() != f.source()) throw FixtureError(p + "/kernel_window", "window is not over the functor's source");
      for (auto i : ker_on_subcat(f, s)) {
        b.generators.push_back(s->object(i).complex);
        names.push_back(s->object(i).label());
      }
    }
    ev["generators"] = names;
    ev["depth"] = b.depth;
    ev["shift_window"] = b.shift_window ? json(*b.shift_window) : json(nullptr);
    return b;
  }

  static std::string budget_window(const SearchBudget<K>& b) {
    std::string w = "depth <= " + std::to_string(b.depth) + ", " + std::to_string(b.generators.size()) + " generators, shifts ";
    w += b.shift_window ? "|n| <= " + std::to_string(*b.shift_window) + " within degree overlap" : "by degree overlap";
    return w;
  }

  json encode_certificate(const LiftCertificate<K>& c, const json& gen_names) const {
    json path = json::array();
    for (const auto& s : c.path)
      path.push_back({{"generator", gen_names.at(s.generator)}, {"shift", s.shift}, {"multiplicity", s.multiplicity}});
    return {{"x_prime", encode_complex_body(c.x_prime)},
            {"pi", encode_standalone_map(c.pi)},
            {"alpha_prime", encode_standalone_map(c.alpha_prime)},
            {"cone_contraction", encode_standalone_map(c.cone_contraction)},
            {"homotopy", encode_standalone_map(c.homotopy)},
            {"path", path},
            {"depth", c.depth()}};
  }

  LiftCertificate<K> decode_certificate(const BimoduleFunctor<K>& f, const json& j, const std::string& p) const {
    LiftCertificate<K> c;
    c.x_prime = decode_complex_body(f.source(), member(j, "x_prime", p), p + "/x_prime");
    c.pi = decode_standalone_map(f.source(), member(j, "pi", p), p + "/pi");
    c.alpha_prime = decode_standalone_map(f.source(), member(j, "alpha_prime", p), p + "/alpha_prime");
    c.cone_contraction = decode_standalone_map(f.target(), member(j, "cone_contraction", p), p + "/cone_contraction");
    c.homotopy = decode_standalone_map(f.target(), member(j, "homotopy", p), p + "/homotopy");
    return c;
  }

  struct LiftMapInputs {
    const BimoduleFunctor<K>* f;
    const ProjComplex<K>* x;
    const ProjComplex<K>* y;
    const GradedMap<K>* alpha;
  };

  LiftMapInputs lift_map_inputs(const json& t, const std::string& p) const {
    LiftMapInputs in{&fx_.functor(str(t, "functor", p), p + "/functor"), &fx_.complex(str(t, "source", p), p + "/source"),
                     &fx_.complex(str(t, "target", p), p + "/target"), &fx_.map(str(t, "alpha", p), p + "/alpha")};
    if (in.x->algebra() != in.f->source() && !in.x->empty()) throw FixtureError(p + "/source", "source is not over the functor's source algebra");
    if (in.y->algebra() != in.f->source() && !in.y->empty()) throw FixtureError(p + "/target", "target is not over the functor's source algebra");
    if (!(in.alpha->source() == in.f->apply(*in.x)) || !(in.alpha->target() == in.f->apply(*in.y)))
      throw FixtureError(p + "/alpha", "alpha must go from F(source) to F(target)");
    return in;
  }

  void lift_map(const json& t, const std::string& p, Report& r) const {
    auto in = lift_map_inputs(t, p);
    json ev;
    auto b = budget(t, p, *in.f, ev);
    auto res = lift_chain_map(*in.f, *in.x, *in.y, *in.alpha, b);
    r.window = budget_window(b);
    ev["nodes"] = res.nodes;
    ev["depth_searched"] = res.depth_searched;
    ev["degenerate"] = res.degenerate;
    if (res.found()) {
      ev["certificate"] = encode_certificate(*res.certificate, ev["generators"]);
      ev["verified"] = verify_lift_certificate(*in.f, *in.x, *in.y, *in.alpha, *res.certificate);
      r.verdict = "found";
    } else {
      ev["note"] = "search exhausted within the budget; existence undecided";
      r.verdict = "not_found";
    }
    r.evidence = std::move(ev);
  }

  std::vector<std::vector<std::size_t>> preimages(const json& t, const std::string& p, const BimoduleFunctor<K>& f) const {
    const auto& pj = get_array(member(t, "preimages", p), p + "/preimages");
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t k = 0; k < pj.size(); ++k)
      out.push_back(decode_term(pj[k], f.source()->num_idempotents(), p + "/preimages/" + std::to_string(k)));
    return out;
  }

  void lift_cx(const json& t, const std::string& p, Report& r) const {
    const auto& f = fx_.functor(str(t, "functor", p), p + "/functor");
    const auto& y = fx_.complex(str(t, "target", p), p + "/target");
    auto pre = preimages(t, p, f);
    json ev;
    auto b = budget(t, p, f, ev);
    LiftComplexResult<K> res;
    try {
      res = lift_complex(f, y, pre, b);
    } catch (const Error& e) {
      throw FixtureError(p, e.what());
    }
    r.window = budget_window(b);
    json stages = json::array();
    for (const auto& s : res.stages)
      stages.push_back({{"found", s.found()}, {"nodes", s.nodes}, {"depth", s.found() ? json(s.certificate->depth()) : json(nullptr)},
                        {"degenerate", s.degenerate}});
    ev["stages"] = stages;
    if (res.found()) {
      ev["x"] = encode_complex_body(*res.x);
      ev["equivalence"] = encode_standalone_map(*res.equivalence);
      ev["cone_contraction"] = encode_standalone_map(*res.cone_contraction);
      ev["verified"] = verify_lift_complex(f, y, res);
      r.verdict = "found";
    } else {
      ev["failing_stage"] = *res.failing_stage;
      ev["note"] = "connecting map did not lift within the budget; existence undecided";
      r.verdict = "not_found";
    }
    r.evidence = std::move(ev);
  }

  Triangle<K> triangle_named(const std::string& name, const std::string& p) const {
    const auto& spec = fx_.lookup(fx_.triangles, name, "triangle", p);
    return {fx_.map(spec.alpha, p), fx_.map(spec.beta, p), fx_.map(spec.gamma, p)};
  }

  void triangle(const json& t, const std::string& p, Report& r) const {
    auto tri = triangle_named(str(t, "triangle", p), p + "/triangle");
    auto v = recognize_triangle(tri);
    json ev{{"reason", to_string(v.reason)}, {"verified", verify_triangle_verdict(tri, v)}};
    if (v.failing_composition >= 0) ev["failing_composition"] = v.failing_composition == 0 ? "beta o alpha" : "gamma o beta";
    if (v.rho) ev["rho"] = encode_standalone_map(*v.rho);
    if (v.h1) ev["h1"] = encode_standalone_map(*v.h1);
    if (v.h2) ev["h2"] = encode_standalone_map(*v.h2);
    if (v.cone_contraction) ev["cone_contraction"] = encode_standalone_map(*v.cone_contraction);
    if (v.separator) ev["separator"] = encode_vec(*v.separator);
    r.verdict = v.exact ? "exact" : "not_exact";
    r.evidence = std::move(ev);
  }

  void check_ideal(const json& t, const std::string& p, Report& r) const {
    const std::string name = str(t, "ideal", p);
    const auto& spec = fx_.lookup(fx_.ideals, name, "ideal", p + "/ideal");
    auto s = window(spec.window, p + "/ideal");
    std::vector<GradedMap<K>> gens;
    for (const auto& g : spec.generators) {
      const auto& m = fx_.map(g, p);
      if (!s->find(m.source()) || !s->find(m.target())) throw FixtureError(p + "/ideal", "generator '" + g + "' lies outside the window");
      gens.push_back(m);
    }
    auto a = generate_ideal<K>(s, gens);
    auto sq = ideal_product(a, a);
    auto sig = sigma_stable(a);
    std::vector<std::string> names;
    auto tris = triangles(t, p, names);
    json ev{{"ideal", ideal_evidence(a)}, {"square_dim", sq.total_dim()}, {"idempotent", sq == a},
            {"two_sided", is_two_sided(a)}, {"sigma", sigma_evidence(a, sig)}};
    bool saturated = true;
    if (!tris.empty()) {
      auto sat = saturation_check(a, tris);
      ev["saturation"] = saturation_evidence(a, sat, names);
      saturated = sat.saturated;
    }
    const bool idem = sq == a;
    r.window = s->description();
    if (!idem || !sig.stable || !saturated) r.verdict = "not_exact";
    else r.verdict = tris.empty() ? "inconclusive" : "exact";
    if (r.verdict == "inconclusive") ev["note"] = "idempotent and stable; saturation not tested without triangles";
    r.evidence = std::move(ev);
  }

  void telescope(const json& t, const std::string& p, Report& r) const {
    const auto& f = fx_.functor(str(t, "functor", p), p + "/functor");
    auto s = window(str(t, "window", p), p + "/window");
    std::vector<std::string> names;
    auto tris = triangles(t, p, names);
    auto rep = telescope_report(f, s, tris);
    json kernel = json::array();
    for (auto i : rep.kernel) kernel.push_back(s->object(i).label());
    json ev{{"ann", ideal_evidence(rep.ann)},       {"kernel", kernel},
            {"generated", ideal_evidence(rep.generated)}, {"consistent", rep.consistent},
            {"ann_idempotent", rep.ann_idempotent}, {"ann_sigma", sigma_evidence(rep.ann, rep.ann_sigma)},
            {"contains_generated", rep.contains_generated}};
    if (rep.ann_saturation) ev["ann_saturation"] = saturation_evidence(rep.ann, *rep.ann_saturation, names);
    if (t.contains("probes")) {
      json probes = json::object();
      for (const auto& n : detail::string_list(t["probes"], p + "/probes")) {
        const auto& m = fx_.map(n, p + "/probes");
        auto i = s->find(m.source()), j = s->find(m.target());
        if (!i || !j) throw FixtureError(p + "/probes", "probe '" + n + "' lies outside the window");
        probes[n] = {{"in_ann", rep.ann.contains(*i, *j, m)}, {"in_generated", rep.generated.contains(*i, *j, m)}};
      }
      ev["probes"] = probes;
    }
    r.window = rep.window;
    r.verdict = rep.consistent ? "consistent" : "inconsistent";
    r.evidence = std::move(ev);
  }

  void almost(const json& t, const std::string& p, Report& r) const {
    auto alg = fx_.algebra(str(t, "algebra", p), p + "/algebra");
    std::optional<Vec<K>> e;
    TwoSidedIdeal<K> a;
    if (t.contains("idempotent")) {
      e = decode_element(*alg, t["idempotent"], p + "/idempotent");
      if (!alg->is_idempotent(*e)) throw FixtureError(p + "/idempotent", "element is not idempotent");
      a = generated_by(alg, *e);
    } else {
      const auto& gj = get_array(member(t, "ideal", p), p + "/ideal");
      std::vector<Vec<K>> gens;
      for (std::size_t k = 0; k < gj.size(); ++k) gens.push_back(decode_element(*alg, gj[k], p + "/ideal/" + std::to_string(k)));
      a = ideal_closure(alg, gens);
    }
    std::vector<NamedModule<K>> mods;
    for (const auto& n : detail::string_list(member(t, "modules", p), p + "/modules")) {
      const auto& m = fx_.lookup(fx_.modules, n, "module", p + "/modules");
      if (m.algebra() != alg) throw FixtureError(p + "/modules", "module '" + n + "' is over another algebra");
      mods.emplace_back(n, m);
    }
    auto serre = serre_adjoint_report(a, mods);
    json rows = json::array();
    for (const auto& row : serre.rows)
      rows.push_back({{"module", row.module}, {"sample", row.sample}, {"hom_quotient", row.hom_quotient}, {"hom_m_to_n", row.hom_m_to_n},
                      {"hom_to_ann", row.hom_to_ann}, {"hom_n_to_m", row.hom_n_to_m}, {"holds", row.holds()}});
    json ev{{"dim_ideal", a.dim()}, {"idempotent", serre.idempotent}, {"adjunctions_hold", serre.adjunctions_hold}, {"rows", rows}};
    bool ok = serre.idempotent && serre.adjunctions_hold;
    if (serre.witness) {
      const auto& w = *serre.witness;
      ev["serre_witness"] = {{"sub_dim", w.sequence.sub.dim()},          {"middle_dim", w.sequence.middle.dim()},
                             {"quotient_dim", w.sequence.quotient.dim()}, {"sub_in_perp", w.sub_in_perp},
                             {"quotient_in_perp", w.quotient_in_perp},    {"middle_in_perp", w.middle_in_perp},
                             {"verified", w.verify(a)}};
    }
    if (e) {
      std::vector<ShortExact<K>> seqs;
      if (t.contains("sequences")) {
        const auto& sj = get_array(t["sequences"], p + "/sequences");
        for (std::size_t k = 0; k < sj.size(); ++k) {
          const std::string sp = p + "/sequences/" + std::to_string(k);
          const auto& m = fx_.lookup(fx_.modules, str(sj[k], "module", sp), "module", sp + "/module");
          const std::string by = str(sj[k], "submodule", sp);
          if (by == "radical") seqs.push_back(short_exact_from(m, product_submodule(m, radical(alg).space)));
          else if (by == "ideal") seqs.push_back(short_exact_from(m, product_submodule(m, a.space)));
          else throw FixtureError(sp + "/submodule", "expected \"radical\" or \"ideal\"");
        }
      }
      auto q = almost_quotient(alg, *e, mods, seqs);
      json crow = json::array();
      for (const auto& row : q.rows)
        crow.push_back({{"module", row.module}, {"dim", row.dim}, {"corner_dim", row.corner_dim}, {"in_perp", row.in_perp}});
      ev["corner"] = {{"corner_dim", q.corner.algebra->dim()}, {"rows", crow},    {"sequences_checked", q.sequences_checked},
                      {"exact", q.exact},                      {"perp_vanishes", q.perp_vanishes}};
      ok = ok && q.exact && q.perp_vanishes;
    }
    if (t.contains("window")) {
      auto s = window(str(t, "window", p), p + "/window");
      r.window = s->description();
      if (!serre.idempotent) {
        ev["derived"] = {{"skipped", "ideal is not idempotent"}};
      } else {
        std::optional<AlmostDerivedReport<K>> d;
        try {
          d = almost_derived_ideal(a, s);
        } catch (const ValidationError& err) {
          ev["derived"] = {{"skipped", err.what()}};
        }
        if (d) {
          json dj{{"dim_a", d->dim_a},
                  {"dim_tensor", d->dim_tensor},
                  {"a_projective", d->a_projective},
                  {"tensor_projective", d->tensor_projective},
                  {"tensor_flat", d->tensor_flat},
                  {"cone", encode_complex_body(d->cone)},
                  {"cone_contractible", d->cone_contractible},
                  {"shift_range", {d->window_lo, d->window_hi}},
                  {"ideal", ideal_evidence(d->ideal)},
                  {"two_sided", d->two_sided},
                  {"idempotent", d->idempotent}};
          if (t.contains("compare_cone")) {
            json cmp = json::object();
            for (const auto& n : detail::string_list(t["compare_cone"], p + "/compare_cone")) {
              auto eq = find_equivalence(d->cone, fx_.complex(n, p + "/compare_cone"));
              cmp[n] = eq.has_value() && verify_contraction(cone(*eq).cone, *equivalence_certificate(*eq));
            }
            dj["cone_equivalent_to"] = cmp;
          }
          ok = ok && d->two_sided && d->idempotent;
          ev["derived"] = std::move(dj);
        }
      }
    }
    r.verdict = ok ? "certified" : "refuted";
    r.evidence = std::move(ev);
  }

  void contraction_task(const json& t, const std::string& p, Report& r) const {
    const std::string name = str(t, "contraction", p);
    const auto& c = fx_.lookup(fx_.contractions, name, "contraction", p + "/contraction");
    ContractionVerdict v;
    try {
      v = verify_contraction(c.fixture);
    } catch (const Error& e) {
      throw FixtureError("/contractions/" + name, e.what());
    }
    r.verdict = v.ok ? "certified" : "refuted";
    r.evidence = {{"variables", c.variables}, {"ranks", c.fixture.ranks}, {"lo", c.fixture.lo}};
    if (!v.ok) {
      r.evidence["failing_degree"] = *v.failing_degree;
      r.evidence["reason"] = v.reason;
    }
  }

  void replay(const json& report, const std::string& p, Report& r) const {
    const std::string id = get_string(member(report, "id", p), p + "/id");
    const auto& task = task_by_id(id, p + "/id");
    const std::string tp = "task '" + id + "'";
    const std::string kind = get_string(member(task, "kind", tp), tp);
    const auto& ev = member(report, "evidence", p);
    const std::string ep = p + "/evidence";
    r.evidence = {{"replayed_kind", kind}};
    if (kind == "lift-map") {
      auto in = lift_map_inputs(task, tp);
      if (!ev.contains("certificate")) {
        r.verdict = "inconclusive";
        r.evidence["note"] = "report carries no certificate";
        return;
      }
      auto c = decode_certificate(*in.f, ev["certificate"], ep + "/certificate");
      r.verdict = verify_lift_certificate(*in.f, *in.x, *in.y, *in.alpha, c) ? "certified" : "refuted";
    } else if (kind == "lift-complex") {
      const auto& f = fx_.functor(str(task, "functor", tp), tp);
      const auto& y = fx_.complex(str(task, "target", tp), tp);
      if (!ev.contains("x")) {
        r.verdict = "inconclusive";
        r.evidence["note"] = "report carries no certificate";
        return;
      }
      LiftComplexResult<K> res;
      res.x = decode_complex_body(f.source(), ev["x"], ep + "/x");
      res.equivalence = decode_standalone_map(f.target(), member(ev, "equivalence", ep), ep + "/equivalence");
      res.cone_contraction = decode_standalone_map(f.target(), member(ev, "cone_contraction", ep), ep + "/cone_contraction");
      r.verdict = verify_lift_complex(f, y, res) ? "certified" : "refuted";
    } else if (kind == "recognize-triangle") {
      auto tri = triangle_named(str(task, "triangle", tp), tp);
      const auto& alg = tri.alpha.source().algebra();
      TriangleVerdict<K> v;
      v.exact = get_string(member(report, "verdict", p), p + "/verdict") == "exact";
      const std::string reason = get_string(member(ev, "reason", ep), ep + "/reason");
      for (auto cand : {TriangleReason::None, TriangleReason::Compositions, TriangleReason::NoComparison, TriangleReason::NotEquivalence})
        if (to_string(cand) == reason) v.reason = cand;
      if (ev.contains("failing_composition")) v.failing_composition = ev["failing_composition"] == "beta o alpha" ? 0 : 1;
      auto opt_map = [&](const char* key) -> std::optional<GradedMap<K>> {
        if (!ev.contains(key)) return std::nullopt;
        return decode_standalone_map(alg, ev[key], ep + "/" + key);
      };
      v.rho = opt_map("rho");
      v.h1 = opt_map("h1");
      v.h2 = opt_map("h2");
      v.cone_contraction = opt_map("cone_contraction");
      if (ev.contains("separator")) v.separator = decode_vec<K>(ev["separator"], fx_.field, ep + "/separator");
      bool ok = false;
      try {
        ok = verify_triangle_verdict(tri, v);
      } catch (const Error&) {
        ok = false;  // certificate data of the wrong shape
      }
      r.verdict = ok ? "certified" : "refuted";
    } else {
      throw FixtureError(p + "/id", "task '" + id + "' of kind " + kind + " carries no replayable certificate");
    }
  }
};

/// Runs the selected tasks on `workers` threads; reports come back in task order.
template <FieldScalar K>
std::vector<Report> run_tasks(const FixtureFile<K>& fx, const RunOptions& opts, const std::function<bool(const json&)>& select) {
  TaskRunner<K> runner(fx, opts);
  std::vector<std::size_t> picked;
  for (std::size_t t = 0; t < fx.tasks.size(); ++t)
    if (!select || select(fx.tasks[t])) picked.push_back(t);
  std::vector<std::optional<Report>> out(picked.size());
  std::vector<std::exception_ptr> errors(picked.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < picked.size();) {
      try {
        out[k] = runner.run(fx.tasks[picked[k]], "/tasks/" + std::to_string(picked[k]));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(opts.workers, picked.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Report> reports;
  for (auto& r : out) reports.push_back(std::move(*r));
  return reports;
}

inline std::vector<Report> run_tasks(const AnyFixture& fx, const RunOptions& opts,
                                     const std::function<bool(const json&)>& select = {}) {
  return std::visit([&](const auto& f) { return run_tasks(f, opts, select); }, fx);
}

/// Replays every report in `reports` that has a certificate-bearing task in the fixture.
inline std::vector<Report> replay_reports(const AnyFixture& fx, const json& reports) {
  get_array(reports, "/");
  return std::visit(
      [&](const auto& f) {
        using K = typename std::decay_t<decltype(f)>::Scalar;
        TaskRunner<K> runner(f, RunOptions{});
        std::vector<Report> out;
        for (const auto& rep : reports) {
          const std::string kind = rep.value("kind", "");
          if (kind == "lift-map" || kind == "lift-complex" || kind == "recognize-triangle") out.push_back(runner.replay_report(rep));
        }
        return out;
      },
      fx);
}

inline json reports_json(const std::vector<Report>& reports) {
  json j = json::array();
  for (const auto& r : reports) j.push_back(r.to_json());
  return j;
}

/// One header line per report, then its evidence fields one per line.
inline std::string reports_text(const std::vector<Report>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << r.id << " [" << r.kind << "] " << r.verdict << "\n";
    if (r.window) os << "  window: " << *r.window << "\n";
    for (const auto& [k, v] : r.evidence.items()) os << "  " << k << ": " << v.dump() << "\n";
    if (r.timing_ms) os << "  timing_ms: " << *r.timing_ms << "\n";
  }
  return os.str();
}

}  // namespace kb::io
