#pragma once

/**
 * @file codec.hpp
 * @brief JSON encodings of scalars, algebra elements, matrices, complexes and maps.
 *
 * Scalars are strings ("3/2"); algebra elements are objects keyed by basis
 * name with zero coefficients omitted; block matrices are row-major lists of
 * elements; complexes carry their lowest degree, idempotent-index terms and
 * differentials. Decoders report the JSON path of the offending value.
 */

#include <json.hpp>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kb/almost/koszul.hpp"
#include "kb/functors/bimodule_functor.hpp"

namespace kb::io {

using nlohmann::json;

/// Fixture content error, tagged with the JSON path of the value that failed.
class FixtureError : public ValidationError {
 public:
  FixtureError(const std::string& path, const std::string& msg) : ValidationError(path + ": " + msg), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw FixtureError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FixtureError(path, "missing field '" + key + "'");
  return *it;
}

inline std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw FixtureError(path, "expected a string");
  return j.get<std::string>();
}

inline long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw FixtureError(path, "expected an integer");
  return j.get<long>();
}

inline std::size_t get_index(const json& j, const std::string& path) {
  long v = get_int(j, path);
  if (v < 0) throw FixtureError(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

inline const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw FixtureError(path, "expected an array");
  return j;
}

template <FieldScalar K>
K decode_scalar(const json& j, const FieldSpec& f, const std::string& path) {
  try {
    if (j.is_number_integer()) return ScalarTraits<K>::from_int(j.get<long>(), f);
    return ScalarTraits<K>::parse(get_string(j, path), f);
  } catch (const FixtureError&) {
    throw;
  } catch (const std::exception& e) {
    throw FixtureError(path, std::string("bad scalar: ") + e.what());
  }
}

template <RingScalar K>
json encode_scalar(const K& x) {
  return x.str();
}

/// {"e11": "1", "e12": "-2"} over the named basis.
template <FieldScalar K>
Vec<K> decode_element(const Algebra<K>& r, const json& j, const std::string& path) {
  if (!j.is_object()) throw FixtureError(path, "algebra element must be an object keyed by basis name");
  Vec<K> v = r.zero();
  for (const auto& [name, c] : j.items()) {
    auto it = std::find(r.names().begin(), r.names().end(), name);
    if (it == r.names().end()) throw FixtureError(path, "unknown basis element '" + name + "'");
    v[static_cast<std::size_t>(it - r.names().begin())] = decode_scalar<K>(c, r.field(), path + "/" + name);
  }
  return v;
}

template <FieldScalar K>
json encode_element(const Algebra<K>& r, const Vec<K>& v) {
  json j = json::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) j[r.names()[i]] = encode_scalar(v[i]);
  return j;
}

/// Row-major list of rows of scalars.
template <FieldScalar K>
Matrix<K> decode_matrix(const json& j, std::size_t rows, std::size_t cols, const FieldSpec& f, const std::string& path) {
  get_array(j, path);
  if (j.size() != rows) throw FixtureError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  Matrix<K> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = path + "/" + std::to_string(i);
    get_array(j[i], rp);
    if (j[i].size() != cols) throw FixtureError(rp, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = decode_scalar<K>(j[i][c], f, rp + "/" + std::to_string(c));
  }
  return m;
}

template <RingScalar K>
json encode_matrix(const Matrix<K>& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(encode_scalar(m(i, c)));
    j.push_back(std::move(row));
  }
  return j;
}

template <FieldScalar K>
BlockMatrix<K> decode_block(const AlgebraPtr<K>& r, const json& j, const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols, const std::string& path) {
  get_array(j, path);
  if (j.size() != rows.size()) throw FixtureError(path, "expected " + std::to_string(rows.size()) + " block rows");
  BlockMatrix<K> m(r, rows, cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = path + "/" + std::to_string(i);
    get_array(j[i], rp);
    if (j[i].size() != cols.size()) throw FixtureError(rp, "expected " + std::to_string(cols.size()) + " block entries");
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::string ep = rp + "/" + std::to_string(c);
      Vec<K> x = decode_element(*r, j[i][c], ep);
      // entries x in e_row R e_col act by left multiplication
      if (r->mul(r->idempotent(rows[i]), x, r->idempotent(cols[c])) != x)
        throw FixtureError(ep, "entry does not lie in e_" + std::to_string(rows[i]) + " R e_" + std::to_string(cols[c]));
      m.at(i, c) = std::move(x);
    }
  }
  return m;
}

template <FieldScalar K>
json encode_block(const BlockMatrix<K>& m) {
  const auto& r = *m.algebra();
  json j = json::array();
  for (std::size_t i = 0; i < m.num_rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.num_cols(); ++c) row.push_back(encode_element(r, m(i, c)));
    j.push_back(std::move(row));
  }
  return j;
}

inline std::vector<std::size_t> decode_term(const json& j, std::size_t num_idempotents, const std::string& path) {
  get_array(j, path);
  std::vector<std::size_t> t;
  for (std::size_t k = 0; k < j.size(); ++k) {
    auto i = get_index(j[k], path + "/" + std::to_string(k));
    if (i >= num_idempotents) throw FixtureError(path + "/" + std::to_string(k), "idempotent index out of range");
    t.push_back(i);
  }
  return t;
}

/// {"lo": n, "terms": [[i, ...], ...], "differentials": [block, ...]} over a known algebra.
template <FieldScalar K>
ProjComplex<K> decode_complex_body(const AlgebraPtr<K>& r, const json& j, const std::string& path) {
  const int lo = static_cast<int>(get_int(member(j, "lo", path), path + "/lo"));
  const auto& terms_j = get_array(member(j, "terms", path), path + "/terms");
  std::vector<std::vector<std::size_t>> terms;
  for (std::size_t k = 0; k < terms_j.size(); ++k)
    terms.push_back(decode_term(terms_j[k], r->num_idempotents(), path + "/terms/" + std::to_string(k)));
  std::vector<BlockMatrix<K>> diffs;
  if (terms.size() > 1) {
    const auto& dj = get_array(member(j, "differentials", path), path + "/differentials");
    if (dj.size() + 1 != terms.size()) throw FixtureError(path + "/differentials", "need one differential between consecutive terms");
    for (std::size_t k = 0; k < dj.size(); ++k)
      diffs.push_back(decode_block(r, dj[k], terms[k + 1], terms[k], path + "/differentials/" + std::to_string(k)));
  }
  try {
    return ProjComplex<K>::make(r, lo, std::move(terms), std::move(diffs));
  } catch (const Error& e) {
    throw FixtureError(path, e.what());
  }
}

template <FieldScalar K>
json encode_complex_body(const ProjComplex<K>& x) {
  json j;
  j["lo"] = x.empty() ? 0 : x.lo();
  j["terms"] = json::array();
  j["differentials"] = json::array();
  if (x.empty()) return j;
  for (int n = x.lo(); n <= x.hi(); ++n) j["terms"].push_back(x.term(n));
  for (int n = x.lo(); n < x.hi(); ++n) j["differentials"].push_back(encode_block(x.d(n)));
  return j;
}

/// {"degree": k, "components": {"n": block}} with source and target from context; omitted components are zero.
template <FieldScalar K>
GradedMap<K> decode_map_body(const ProjComplex<K>& src, const ProjComplex<K>& tgt, const json& j, const std::string& path) {
  const int degree = j.contains("degree") ? static_cast<int>(get_int(j["degree"], path + "/degree")) : 0;
  auto f = GradedMap<K>::zero(src, tgt, degree);
  if (!j.contains("components")) return f;
  const auto& comps = j["components"];
  if (!comps.is_object()) throw FixtureError(path + "/components", "expected an object keyed by degree");
  for (const auto& [key, block] : comps.items()) {
    const std::string cp = path + "/components/" + key;
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw FixtureError(cp, "component key must be an integer degree");
    }
    if (src.empty() || n < src.lo() || n > src.hi()) throw FixtureError(cp, "degree outside the source complex");
    f.set(n, decode_block(src.algebra(), block, tgt.term(n + degree), src.term(n), cp));
  }
  return f;
}

template <FieldScalar K>
json encode_map_body(const GradedMap<K>& f) {
  json j;
  j["degree"] = f.degree();
  j["components"] = json::object();
  const auto& x = f.source();
  if (x.empty()) return j;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    auto c = f.component(n);
    bool zero = true;
    for (std::size_t a = 0; a < c.num_rows() && zero; ++a)
      for (std::size_t b = 0; b < c.num_cols() && zero; ++b) zero = is_zero_vec<K>(c(a, b));
    if (!zero) j["components"][std::to_string(n)] = encode_block(c);
  }
  return j;
}

/// [{"exp": [1, 0], "coef": "2"}, ...]; the empty list is zero.
inline Laurent decode_laurent(const json& j, std::size_t variables, const std::string& path) {
  get_array(j, path);
  Laurent p;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string tp = path + "/" + std::to_string(k);
    const auto& ej = get_array(member(j[k], "exp", tp), tp + "/exp");
    if (ej.size() > variables) throw FixtureError(tp + "/exp", "more exponents than declared variables");
    Laurent::Exponent e;
    for (std::size_t v = 0; v < ej.size(); ++v) e.push_back(static_cast<int>(get_int(ej[v], tp + "/exp/" + std::to_string(v))));
    p += Laurent(std::move(e), decode_scalar<Rational>(member(j[k], "coef", tp), FieldSpec{}, tp + "/coef"));
  }
  return p;
}

inline json encode_laurent(const Laurent& p) {
  json j = json::array();
  for (const auto& [e, c] : p.terms()) j.push_back({{"exp", e}, {"coef", c.str()}});
  return j;
}

inline Matrix<Laurent> decode_laurent_matrix(const json& j, std::size_t rows, std::size_t cols, std::size_t variables,
                                             const std::string& path) {
  get_array(j, path);
  if (j.size() != rows) throw FixtureError(path, "expected " + std::to_string(rows) + " rows");
  Matrix<Laurent> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = path + "/" + std::to_string(i);
    get_array(j[i], rp);
    if (j[i].size() != cols) throw FixtureError(rp, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = decode_laurent(j[i][c], variables, rp + "/" + std::to_string(c));
  }
  return m;
}

inline json encode_laurent_matrix(const Matrix<Laurent>& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(encode_laurent(m(i, c)));
    j.push_back(std::move(row));
  }
  return j;
}

inline ContractionFixture decode_contraction(const json& j, const std::string& path) {
  ContractionFixture f;
  const auto& vars = get_array(member(j, "variables", path), path + "/variables");
  f.variables = vars.size();
  f.lo = static_cast<int>(get_int(member(j, "lo", path), path + "/lo"));
  const auto& ranks = get_array(member(j, "ranks", path), path + "/ranks");
  for (std::size_t k = 0; k < ranks.size(); ++k) f.ranks.push_back(get_index(ranks[k], path + "/ranks/" + std::to_string(k)));
  const auto& d = get_array(member(j, "d", path), path + "/d");
  const auto& h = get_array(member(j, "h", path), path + "/h");
  if (d.size() + 1 != f.ranks.size() && !(f.ranks.empty() && d.empty())) throw FixtureError(path + "/d", "need one matrix between consecutive terms");
  if (h.size() != f.ranks.size()) throw FixtureError(path + "/h", "need one homotopy matrix per term");
  for (std::size_t k = 0; k < d.size(); ++k)
    f.d.push_back(decode_laurent_matrix(d[k], f.ranks[k + 1], f.ranks[k], f.variables, path + "/d/" + std::to_string(k)));
  for (std::size_t k = 0; k < h.size(); ++k)
    f.h.push_back(decode_laurent_matrix(h[k], k == 0 ? 0 : f.ranks[k - 1], f.ranks[k], f.variables, path + "/h/" + std::to_string(k)));
  return f;
}

inline json encode_contraction(const ContractionFixture& f, const std::vector<std::string>& variables) {
  json j;
  j["variables"] = variables;
  j["lo"] = f.lo;
  j["ranks"] = f.ranks;
  j["d"] = json::array();
  j["h"] = json::array();
  for (const auto& m : f.d) j["d"].push_back(encode_laurent_matrix(m));
  for (const auto& m : f.h) j["h"].push_back(encode_laurent_matrix(m));
  return j;
}

}  // namespace kb::io
