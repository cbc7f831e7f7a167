#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "descenso/generators.hpp"
#include "descenso/linalg.hpp"
#include "descenso/rng.hpp"

using namespace descenso;

namespace {
Matrix mat(size_t r, size_t c, std::vector<long> v) {
    std::vector<Rational> e(v.begin(), v.end());
    return Matrix(r, c, std::move(e));
}
}  // namespace

TEST_CASE("rational arithmetic and canonical form") {
    Rational a(1, 2), b(1, 3);
    CHECK((a + b).str() == "5/6");
    CHECK((a * b).str() == "1/6");
    CHECK((a - a).is_zero());
    CHECK(Rational(2, 4).str() == "1/2");
    CHECK(Rational(-2, 4).str() == "-1/2");
    CHECK(Rational(2, -4).str() == "-1/2");
    CHECK(Rational(7).str() == "7");
    CHECK(Rational::parse("5/6") == a + b);
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK(Rational::parse("4/6") == Rational(2, 3));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("x"));
    CHECK_THROWS(Rational(1, 0));
    CHECK(Rational(3, 7).inverse() == Rational(7, 3));
}

TEST_CASE("decompose: identity, zero, rank-one") {
    auto d = decompose(Matrix::identity(3));
    CHECK(d.rank == 3);
    CHECK(d.kernel.dim() == 0);
    CHECK(d.image.dim() == 3);

    d = decompose(Matrix(2, 4));
    CHECK(d.rank == 0);
    CHECK(d.kernel.dim() == 4);
    CHECK(d.image.dim() == 0);

    // [[1,2],[2,4]] has rank 1; kernel spanned by (-2,1)
    d = decompose(mat(2, 2, {1, 2, 2, 4}));
    CHECK(d.rank == 1);
    CHECK(d.kernel.dim() == 1);
    CHECK(d.image.dim() == 1);
    QVector k = d.kernel.basis.column_vec(0);
    CHECK(k[0] + Rational(2) * k[1] == Rational(0));
}

TEST_CASE("solve") {
    QVector b{Rational(3), Rational(-1)};
    auto x = solve(Matrix::identity(2), b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    CHECK_FALSE(solve(Matrix(2, 2), b).has_value());

    auto y = solve(mat(1, 1, {2}), {Rational(1)});
    REQUIRE(y.has_value());
    CHECK((*y)[0] == Rational(1, 2));

    CHECK_THROWS(solve(Matrix::identity(2), QVector{Rational(1)}));
}

TEST_CASE("subspace algebra") {
    Subspace full = Subspace::full(2);
    CHECK(intersect(full, full).dim() == 2);

    Subspace e1{2, mat(2, 1, {1, 0})};
    Subspace e2{2, mat(2, 1, {0, 1})};
    CHECK(intersect(e1, e2).dim() == 0);

    // preimage of 0 under [[1,0],[0,0]] is span(e2)
    Subspace pre = preimage(mat(2, 2, {1, 0, 0, 0}), Subspace::zero(2));
    CHECK(pre.dim() == 1);
    CHECK(subspace_contains(pre, {Rational(0), Rational(1)}));

    Matrix q = quotient_projection(e1);
    CHECK(q.rows() == 1);
    CHECK(rank(q) == 1);
    CHECK((q * e1.basis).is_zero());
}

TEST_CASE("rank-nullity and exactness of solve on random instances") {
    Rng rng(42);
    for (int t = 0; t < 50; ++t) {
        size_t r = rng.below(7), c = rng.below(7);
        Matrix m = random_matrix(rng, r, c, 3);
        auto d = decompose(m);
        CHECK(d.rank + d.kernel.dim() == c);
        CHECK(d.image.dim() == d.rank);
        for (size_t j = 0; j < d.kernel.dim(); ++j)
            CHECK((m * d.kernel.basis.column(j)).is_zero());
        // solving M x = M v reproduces M v exactly
        if (c > 0) {
            Matrix v = random_matrix(rng, c, 1, 3);
            QVector b = (m * v).column_vec(0);
            auto x = solve(m, b);
            REQUIRE(x.has_value());
            CHECK(m.apply(*x) == b);
        }
    }
}

TEST_CASE("intersection is contained in both terms and maximal on random instances") {
    Rng rng(7);
    for (int t = 0; t < 40; ++t) {
        size_t n = 1 + rng.below(6);
        Subspace a = Subspace::span(random_matrix(rng, n, rng.below(n + 1), 2));
        Subspace b = Subspace::span(random_matrix(rng, n, rng.below(n + 1), 2));
        Subspace i = intersect(a, b);
        CHECK(subspace_leq(i, a));
        CHECK(subspace_leq(i, b));
        // any random vector lying in both lies in the intersection
        if (a.dim() > 0) {
            Matrix coeff = random_matrix(rng, a.dim(), 1, 2);
            QVector v = (a.basis * coeff).column_vec(0);
            if (subspace_contains(b, v)) CHECK(subspace_contains(i, v));
        }
        CHECK(i.dim() + subspace_sum(a, b).dim() == a.dim() + b.dim());
    }
}

TEST_CASE("quotient projection has full row rank onto a complement") {
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        size_t n = 1 + rng.below(6);
        Subspace a = Subspace::span(random_matrix(rng, n, rng.below(n + 1), 2));
        Matrix q = quotient_projection(a);
        CHECK(q.rows() == n - a.dim());
        CHECK(rank(q) == q.rows());
        CHECK((q * a.basis).is_zero());
    }
}
