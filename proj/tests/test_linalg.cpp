#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "kb/linalg/fp.hpp"
#include "kb/linalg/laurent.hpp"
#include "kb/linalg/rational.hpp"
#include "kb/linalg/solve.hpp"

using namespace kb;

namespace {

Fp f(long v, std::uint64_t p) { return Fp(v, p); }

Matrix<Fp> random_fp(std::mt19937& rng, std::size_t r, std::size_t c, std::uint64_t p) {
  std::uniform_int_distribution<long> d(0, static_cast<long>(p) - 1);
  Matrix<Fp> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f(d(rng), p);
  return m;
}

// All vectors of F_p^n, enumerated as base-p digit strings.
std::vector<Vec<Fp>> all_vectors(std::size_t n, std::uint64_t p) {
  std::vector<Vec<Fp>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    Vec<Fp> v;
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      v.push_back(f(static_cast<long>(c % p), p));
      c /= p;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<long> key(const Vec<Fp>& v) {
  std::vector<long> k;
  for (const auto& x : v) k.push_back(x.value());
  return k;
}

// Set of all F_p-linear combinations of `gens`, by enumeration.
std::set<std::vector<long>> span_set(const std::vector<Vec<Fp>>& gens, std::size_t n, std::uint64_t p) {
  std::set<std::vector<long>> out;
  for (const auto& coeffs : all_vectors(gens.size(), p)) {
    Vec<Fp> v(n, f(0, p));
    for (std::size_t i = 0; i < gens.size(); ++i) axpy<Fp>(v, coeffs[i], gens[i]);
    out.insert(key(v));
  }
  return out;
}

std::size_t log_p(std::size_t size, std::uint64_t p) {
  std::size_t d = 0;
  while (size > 1) {
    size /= p;
    ++d;
  }
  return d;
}

}  // namespace

static_assert(FieldScalar<Rational>);
static_assert(FieldScalar<Fp>);
static_assert(RingScalar<Laurent>);
static_assert(!FieldScalar<Laurent>, "Laurent polynomials must not reach the solver");

TEST_CASE("rational canonical form") {
  Rational a(2, -4);
  CHECK(a.str() == "-1/2");
  CHECK(Rational::parse("6/4").str() == "3/2");
  CHECK((Rational(1, 3) + Rational(2, 3)).is_one());
  CHECK_THROWS_AS(Rational::parse("1/0"), ValidationError);
}

TEST_CASE("prime field values stay in range") {
  CHECK(f(-1, 7).value() == 6);
  CHECK(f(15, 7).value() == 1);
  CHECK((f(3, 7) * f(5, 7)).value() == 1);
  CHECK((f(3, 7).inverse()).value() == 5);
  CHECK(Fp::parse("1/2", 7).value() == 4);
  CHECK_THROWS_AS(Fp::parse("1/7", 7), ValidationError);
}

TEST_CASE("solve: identity and scalar inverse") {
  auto id = Matrix<Rational>::identity(3);
  auto b = Matrix<Rational>::from_columns(3, {{Rational(1), Rational(-2), Rational(5, 3)}});
  auto r = solve(id, b);
  REQUIRE(r.solution);
  CHECK(*r.solution == b);
  CHECK(r.kernel.dim() == 0);

  auto r2 = solve(Matrix<Rational>(1, 1, {Rational(2)}), Matrix<Rational>(1, 1, {Rational(1)}));
  REQUIRE(r2.solution);
  CHECK((*r2.solution)(0, 0) == Rational(1, 2));
}

TEST_CASE("solve: shape mismatch") {
  CHECK_THROWS_AS(solve(Matrix<Rational>(2, 2), Matrix<Rational>(3, 1)), ShapeError);
}

TEST_CASE("solve: rank-2 3x5 over F_7 against brute-force kernel count") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    // rank 2 by construction: rows 0,1 random, row 2 a combination
    Matrix<Fp> a = random_fp(rng, 3, 5, 7);
    while (rank(Matrix<Fp>::from_rows(5, {a.row_vec(0), a.row_vec(1)})) < 2) a = random_fp(rng, 3, 5, 7);
    for (std::size_t j = 0; j < 5; ++j) a(2, j) = f(3, 7) * a(0, j) + f(5, 7) * a(1, j);
    Vec<Fp> x0;
    for (int j = 0; j < 5; ++j) x0.push_back(f(j * j + trial, 7));
    Vec<Fp> b = a.apply(x0);

    auto res = solve(a, Matrix<Fp>::from_columns(3, {b}));
    REQUIRE(res.solution);
    CHECK(a * *res.solution == Matrix<Fp>::from_columns(3, {b}));
    CHECK(res.kernel.dim() == 3);

    std::size_t count = 0;
    for (const auto& x : all_vectors(5, 7))
      if (is_zero_vec<Fp>(a.apply(x))) ++count;
    CHECK(count == 343);
    for (const auto& k : res.kernel.basis_vectors()) CHECK(is_zero_vec<Fp>(a.apply(k)));
  }
}

TEST_CASE("solve: inconsistent system has no solution") {
  Matrix<Rational> a(2, 1, {Rational(1), Rational(1)});
  Matrix<Rational> b(2, 1, {Rational(1), Rational(2)});
  CHECK_FALSE(solve(a, b).solution);
}

TEST_CASE("subspace: trivial identities") {
  auto v = Subspace<Rational>::span(3, {{Rational(1), Rational(2), Rational(0)}, {Rational(0), Rational(1), Rational(1)}});
  CHECK(sum(v, Subspace<Rational>(3)) == v);
  CHECK(intersect(v, v) == v);
  CHECK_THROWS_AS(sum(v, Subspace<Rational>(4)), ShapeError);
}

TEST_CASE("subspace: modular law on F_5^6 against exhaustive enumeration") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> k(0, 3);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Vec<Fp>> gv, gw;
    int kv = k(rng), kw = k(rng);
    for (int i = 0; i < kv; ++i) gv.push_back(random_fp(rng, 1, 6, 5).row_vec(0));
    for (int i = 0; i < kw; ++i) gw.push_back(random_fp(rng, 1, 6, 5).row_vec(0));
    if (trial == 0 && !gv.empty()) gw.push_back(gv[0]);  // force a nonzero intersection once
    auto v = Subspace<Fp>::span(6, gv), w = Subspace<Fp>::span(6, gw);
    auto s = sum(v, w), i = intersect(v, w);
    CHECK(s.dim() + i.dim() == v.dim() + w.dim());

    auto sv = span_set(gv, 6, 5), sw = span_set(gw, 6, 5);
    std::vector<Vec<Fp>> gall = gv;
    gall.insert(gall.end(), gw.begin(), gw.end());
    std::size_t common = 0;
    for (const auto& x : sv) common += sw.count(x);
    CHECK(v.dim() == log_p(sv.size(), 5));
    CHECK(s.dim() == log_p(span_set(gall, 6, 5).size(), 5));
    CHECK(i.dim() == log_p(common, 5));
  }
}

TEST_CASE("subspace: canonical form is independent of the spanning set") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix<Fp> g = random_fp(rng, 3, 6, 13);
    Matrix<Fp> change = random_fp(rng, 4, 3, 13);
    auto a = Subspace<Fp>::span(g);
    auto b = Subspace<Fp>::span(change * g);
    // b is contained in a; equal exactly when the change has full rank on g's row space
    if (rank(change * g) == a.dim()) {
      CHECK(a == b);
      CHECK(a.basis() == b.basis());
    } else {
      CHECK(b.is_subspace_of(a));
      CHECK_FALSE(a == b);
    }
  }
}

TEST_CASE("subspace: membership, coordinates and quotient basis") {
  auto v = Subspace<Rational>::whole(3);
  auto w = Subspace<Rational>::span(3, {{Rational(1), Rational(1), Rational(0)}});
  auto q = quotient_basis(v, w);
  CHECK(q.size() == 2);
  auto all = w.basis_vectors();
  all.insert(all.end(), q.begin(), q.end());
  CHECK(Subspace<Rational>::span(3, all).dim() == 3);
  CHECK(w.contains({Rational(2), Rational(2), Rational(0)}));
  CHECK_FALSE(w.coords({Rational(1), Rational(0), Rational(0)}));
  CHECK_THROWS_AS(quotient_basis(w, v), ValidationError);
}

TEST_CASE("dense and sparse elimination agree") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> sparse(0, 9);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix<Rational> m(6, 9);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 9; ++j)
        if (sparse(rng) < 2) m(i, j) = Rational(sparse(rng) - 4, 1 + sparse(rng));
    auto d = detail::rref_dense(m);
    auto s = detail::rref_sparse(m);
    CHECK(d.pivots == s.pivots);
    CHECK(d.rows == s.rows);
  }
  auto& t = LinalgConfig::sparse_density_threshold();
  const double old = t.load();
  Matrix<Rational> m(2, 3, {Rational(1), Rational(0), Rational(2), Rational(0), Rational(3), Rational(0)});
  t.store(0.0);
  auto a = rref(m);
  t.store(1.1);
  auto b = rref(m);
  t.store(old);
  CHECK(a.rows == b.rows);
}

TEST_CASE("Laurent arithmetic is associative and unital") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3), n(1, 3);
  auto rnd = [&] {
    Laurent p;
    int terms = n(rng);
    for (int i = 0; i < terms; ++i) p.add_term({e(rng), e(rng)}, Rational(c(rng)));
    return p;
  };
  for (int trial = 0; trial < 50; ++trial) {
    Laurent a = rnd(), b = rnd(), d = rnd();
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * Laurent(1) == a);
    CHECK(a - a == Laurent(0));
    Laurent sum = a * b + d;
    for (const auto& [exp, coeff] : sum.terms()) CHECK_FALSE(coeff.is_zero());
  }
  Laurent x = Laurent::monomial(0, 1), xinv = Laurent::monomial(0, -1);
  CHECK(x * xinv == Laurent(1));
}
