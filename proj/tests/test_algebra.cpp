#include <catch_amalgamated.hpp>

#include "common.hpp"

using namespace kb;
using namespace kbt;
using Q = Rational;

namespace {

// Every element of an algebra over F_p, as coefficient vectors.
std::vector<Vec<Fp>> elements(const Algebra<Fp>& r) {
  const auto p = r.field().prime;
  std::vector<Vec<Fp>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < r.dim(); ++i) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    Vec<Fp> v;
    std::size_t c = code;
    for (std::size_t i = 0; i < r.dim(); ++i, c /= p) v.push_back(Fp(static_cast<long>(c % p), p));
    out.push_back(std::move(v));
  }
  return out;
}

bool nilpotent(const Algebra<Fp>& r, const Vec<Fp>& x) {
  Vec<Fp> pw = x;
  for (std::size_t k = 0; k <= r.dim(); ++k) pw = r.mul(pw, x);
  return is_zero_vec<Fp>(pw);
}

// Brute-force Jacobson radical: x with y x nilpotent for every y.
std::size_t brute_radical_size(const Algebra<Fp>& r) {
  auto all = elements(r);
  std::size_t count = 0;
  for (const auto& x : all) {
    bool ok = true;
    for (const auto& y : all)
      if (!nilpotent(r, r.mul(y, x))) {
        ok = false;
        break;
      }
    count += ok;
  }
  return count;
}

std::size_t pow_size(std::uint64_t p, std::size_t d) {
  std::size_t s = 1;
  while (d--) s *= p;
  return s;
}

}  // namespace

TEST_CASE("validate_algebra accepts the standard fixtures") {
  CHECK(kxk<Q>()->dim() == 2);
  auto r = ut2<Q>();
  CHECK(r->dim() == 3);
  CHECK(r->names()[1] == "e12");
  CHECK(r->corner(0, 1).dim() == 1);
  CHECK(r->corner(1, 0).dim() == 0);
  CHECK(r->right_ideal(0).dim() == 2);
  CHECK(r->right_ideal(1).dim() == 1);
}

TEST_CASE("validate_algebra reports a non-associative triple") {
  // 1 unit; p p = p, p q = q, q q = p, q p = 0
  AlgebraData<Q> d;
  d.names = {"1", "p", "q"};
  d.table.assign(3, std::vector<Vec<Q>>(3, Vec<Q>(3, Q(0))));
  for (int i = 0; i < 3; ++i) {
    d.table[0][i][i] = Q(1);
    d.table[i][0][i] = Q(1);
  }
  d.table[1][1][1] = Q(1);
  d.table[1][2][2] = Q(1);
  d.table[2][2][1] = Q(1);
  d.unit = {Q(1), Q(0), Q(0)};
  d.idempotents = {d.unit};
  try {
    Algebra<Q>::validate(d);
    FAIL("accepted a non-associative table");
  } catch (const AlgebraError& e) {
    REQUIRE(e.kind() == AlgebraError::Kind::NonAssociative);
    REQUIRE(e.witness().size() == 3);
    auto [i, j, l] = std::tuple{e.witness()[0], e.witness()[1], e.witness()[2]};
    auto b = [&](std::size_t k) {
      Vec<Q> v(3, Q(0));
      v[k] = Q(1);
      return v;
    };
    auto mul = [&](const Vec<Q>& x, const Vec<Q>& y) {
      Vec<Q> out(3, Q(0));
      for (int s = 0; s < 3; ++s)
        for (int t = 0; t < 3; ++t)
          if (!(x[s] * y[t]).is_zero()) out = add(out, scale(x[s] * y[t], d.table[s][t]));
      return out;
    };
    CHECK(mul(mul(b(i), b(j)), b(l)) != mul(b(i), mul(b(j), b(l))));
  }
}

TEST_CASE("validate_algebra rejects unit and idempotent failures") {
  AlgebraData<Q> d = ut2<Q>()->data();
  d.unit = {Q(1), Q(0), Q(0)};
  CHECK_THROWS_AS(Algebra<Q>::validate(d), AlgebraError);
  d = ut2<Q>()->data();
  d.idempotents = {{Q(1), Q(0), Q(0)}, {Q(1), Q(0), Q(1)}};
  CHECK_THROWS_AS(Algebra<Q>::validate(d), AlgebraError);
  d = ut2<Q>()->data();
  d.table[0].pop_back();
  CHECK_THROWS_AS(Algebra<Q>::validate(d), AlgebraError);
}

TEST_CASE("radical agrees with brute force over F_5") {
  FieldSpec f5{5};
  for (auto r : {ut2<Fp>(f5), kxk<Fp>(f5), dual_numbers<Fp>(f5)}) {
    auto rad = radical(r);
    CHECK(pow_size(5, rad.dim()) == brute_radical_size(*r));
  }
}

TEST_CASE("radical over Q of the fixture algebras") {
  CHECK(radical(kxk<Q>()).dim() == 0);
  auto r = ut2<Q>();
  CHECK(radical(r).space == Subspace<Q>::span(3, {{Q(0), Q(1), Q(0)}}));
  auto dn = dual_numbers<Q>();
  CHECK(radical(dn).space == Subspace<Q>::span(2, {{Q(0), Q(1)}}));
  CHECK_THROWS_AS(radical(ut2<Fp>({3})), CharacteristicError);
}

TEST_CASE("radical quotient is semisimple") {
  for (auto r : {ut2<Q>(), kxk<Q>(), dual_numbers<Q>()}) {
    auto rad = radical(r);
    if (rad.dim() == 0) continue;
    auto q = quotient_algebra(rad);
    CHECK(radical(q.algebra).dim() == 0);
    CHECK(nilpotency_index(rad) >= 2);
  }
}

TEST_CASE("ideal operations on UT2") {
  auto r = ut2<Q>();
  auto rad = radical(r);
  CHECK(ideal_square(rad).dim() == 0);
  CHECK_FALSE(is_idempotent(rad));
  auto a = generated_by(r, r->idempotent(0));
  CHECK(a.space == Subspace<Q>::span(3, {{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}}));
  CHECK(is_idempotent(a));
  CHECK(is_idempotent(whole_ideal(r)));
  CHECK_THROWS_AS(generated_by(r, Vec<Q>{Q(0), Q(1), Q(0)}), ValidationError);
  CHECK_THROWS_AS(make_ideal(r, Subspace<Q>::span(3, {{Q(1), Q(0), Q(0)}})), ValidationError);
}

TEST_CASE("generated_by an idempotent is idempotent") {
  auto r = ut2<Q>();
  for (long c = -3; c <= 3; ++c) {
    for (const auto& e : {Vec<Q>{Q(1), Q(c), Q(0)}, Vec<Q>{Q(0), Q(c), Q(1)}, r->unit()}) {
      REQUIRE(r->is_idempotent(e));
      CHECK(is_idempotent(generated_by(r, e)));
    }
  }
}

TEST_CASE("quotient algebra keeps non-pivot basis names") {
  auto g = corner_quotient(ut2<Q>());
  CHECK(g.algebra->dim() == 1);
  CHECK(g.algebra->names() == std::vector<std::string>{"e11"});
  CHECK(g.kept_idempotents == std::vector<std::size_t>{0});
}

TEST_CASE("module_tensor with the regular bimodule is the identity") {
  auto r = ut2<Q>();
  auto reg = Bimodule<Q>::regular(r);
  for (const auto& m : {Module<Q>::regular(r), indecomposable_projective(r, 0), ut2_simple(r, 1), ut2_simple(r, 2)}) {
    auto t = module_tensor(m, reg);
    REQUIRE(t.dim() == m.dim());
    // m (x) r -> m r
    std::vector<Vec<Q>> cols;
    for (std::size_t k = 0; k < t.dim(); ++k) {
      auto [i, j] = t.representative(k);
      cols.push_back(m.act(m.basis_vector(i), r->basis_element(j)));
    }
    Matrix<Q> phi = Matrix<Q>::from_columns(m.dim(), cols);
    CHECK(rank(phi) == m.dim());
    CHECK(is_module_map(t.module, m, phi));
  }
}

TEST_CASE("P (x) N equals eN for P = eR") {
  auto r = ut2<Q>();
  auto a = generated_by(r, r->idempotent(0));
  auto ba = Bimodule<Q>::of_ideal(a);
  // a is e11 R as a right module
  auto t = module_tensor(ba.right_module(), ba);
  CHECK(t.dim() == 2);
  std::size_t e_a = image(ba.left_matrix(r->idempotent(0))).dim();
  CHECK(t.dim() == e_a);
}

TEST_CASE("A tensor over k x k for the diagonal map") {
  auto b = kxk<Q>();
  auto a = ut2<Q>();
  auto f = diag_map(b, a);
  auto t = module_tensor(Bimodule<Q>::restriction(f).right_module(), Bimodule<Q>::induction(f));
  CHECK(t.dim() == 4);
  // oracle: sum over the idempotents eps_i of k x k of dim(A f(eps_i)) * dim(f(eps_i) A)
  std::size_t oracle = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    Vec<Q> e = f(b->idempotent(i));
    oracle += image(a->right_mult(e)).dim() * image(a->left_mult(e)).dim();
  }
  CHECK(oracle == 4);
}

TEST_CASE("module_tensor is right exact on 0 -> S2 -> P1 -> S1 -> 0") {
  auto r = ut2<Q>();
  auto p1 = indecomposable_projective(r, 0);
  auto rad = radical(r);
  auto seq = short_exact_from(p1, product_submodule(p1, rad.space));
  REQUIRE(seq.verify());
  auto g = corner_quotient(r);
  auto a = generated_by(r, r->idempotent(0));
  std::vector<Bimodule<Q>> bims = {Bimodule<Q>::regular(r), Bimodule<Q>::induction(g.projection), Bimodule<Q>::of_ideal(a)};
  auto b = kxk<Q>();
  bims.push_back(Bimodule<Q>::restriction(diag_map(b, r)));
  for (const auto& bm : bims) {
    auto ta = module_tensor(seq.sub, bm), tb = module_tensor(seq.middle, bm), tc = module_tensor(seq.quotient, bm);
    auto i = tensor_map(ta, tb, seq.inclusion);
    auto p = tensor_map(tb, tc, seq.projection);
    CHECK(rank(p) == tc.dim());
    CHECK((p * i).is_zero());
    CHECK(rank(i) + tc.dim() == tb.dim());  // im i = ker p
  }
}

TEST_CASE("bimodule validation rejects non-commuting actions") {
  auto r = ut2<Q>();
  auto reg = Bimodule<Q>::regular(r);
  auto l = reg.left_action();
  auto rr = reg.left_action();  // left multiplication used as a right action
  CHECK_THROWS_AS(Bimodule<Q>::validate(r, r, 3, l, rr), ValidationError);
}

TEST_CASE("hom dimensions between UT2 modules") {
  auto r = ut2<Q>();
  auto p1 = indecomposable_projective(r, 0), p2 = indecomposable_projective(r, 1);
  CHECK(hom_dim(p2, p1) == 1);
  CHECK(hom_dim(p1, p2) == 0);
  CHECK(hom_dim(p1, p1) == 1);
  CHECK(hom_dim(ut2_simple(r, 1), ut2_simple(r, 2)) == 0);
  for (const auto& v : hom_modules(p2, p1).basis_vectors()) CHECK(is_module_map(p2, p1, Matrix<Q>(p1.dim(), p2.dim(), v)));
}

TEST_CASE("projective covers") {
  auto r = ut2<Q>();
  auto rad = radical(r);
  auto s1 = ut2_simple(r, 1), s2 = ut2_simple(r, 2);
  auto c = projective_cover(s1, rad);
  CHECK(c.layout.summands() == std::vector<std::size_t>{0});
  CHECK(c.map.cols() == 2);
  CHECK_FALSE(is_projective(s1, rad));
  CHECK(is_projective(s2, rad));
  CHECK(is_projective(Module<Q>::regular(r), rad));
  CHECK(top_multiplicities(Module<Q>::regular(r), rad) == std::vector<std::size_t>{1, 1});
  auto dn = dual_numbers<Q>();
  auto k = Module<Q>::validate(dn, 1, {Matrix<Q>(1, 1, {Q(1)}), Matrix<Q>(1, 1, {Q(0)})});
  CHECK_FALSE(is_projective(k, radical(dn)));
}

TEST_CASE("corner algebra of UT2 at e11") {
  auto r = ut2<Q>();
  auto c = corner_algebra(r, r->idempotent(0));
  CHECK(c.algebra->dim() == 1);
  CHECK(apply_corner(c, indecomposable_projective(r, 0)).dim() == 1);
  CHECK(apply_corner(c, indecomposable_projective(r, 1)).dim() == 0);
  CHECK(apply_corner(c, ut2_simple(r, 1)).dim() == 1);
  CHECK(apply_corner(c, ut2_simple(r, 2)).dim() == 0);
  auto whole = corner_algebra(r, r->unit());
  CHECK(whole.algebra->dim() == 3);
}
