#include <doctest.h>

#include "support.hpp"

using namespace fdsum;
using testsupport::Rng;

static IntMatrix make_mat(std::size_t r, std::size_t c, std::initializer_list<long> entries) {
    IntMatrix m(r, c);
    auto it = entries.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Integer(*it++);
    return m;
}

TEST_CASE("determinant basics") {
    CHECK(determinant(IntMatrix::identity(3)) == 1);
    CHECK(determinant(make_mat(2, 2, {2, 0, 0, 3})) == 6);
    CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), NotSquare);
}

TEST_CASE("determinant of the congruence basis for (4,3,5;7) is +-7, brute-forced") {
    IntVector a{4, 3, 5};
    Integer b(7);
    IntMatrix basis = congruence_lattice_basis(a, b);
    CHECK(abs_of(determinant(basis)) == 7);
    // |det B| must equal the index of the congruence sublattice: count solutions
    // of <a, m> = 0 mod 7 in [0,7)^3: index = 7^3 / #solutions.
    long solutions = 0;
    for (long x = 0; x < 7; ++x)
        for (long y = 0; y < 7; ++y)
            for (long z = 0; z < 7; ++z)
                if ((4 * x + 3 * y + 5 * z) % 7 == 0) ++solutions;
    CHECK(solutions == 49);
    CHECK(343 / solutions == 7);
}

TEST_CASE("determinant equals cofactor expansion on random matrices") {
    Rng rng(201);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = (it % 2) ? 3 : 4;
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = Integer(rng.range(-9, 9));
        CHECK(determinant(m) == testsupport::cofactor_determinant(m));
    }
}

TEST_CASE("inverse_rational") {
    CHECK(inverse_rational(IntMatrix::identity(3)) == RatMatrix::identity(3));
    RatMatrix d = inverse_rational(make_mat(2, 2, {2, 0, 0, 5}));
    CHECK(d(0, 0) == Rational(1, 2));
    CHECK(d(1, 1) == Rational(1, 5));
    CHECK(d(0, 1) == Rational(0));
    CHECK_THROWS_AS(inverse_rational(make_mat(2, 2, {1, 2, 2, 4})), Singular);

    // random unimodular built from elementary column operations -> integer inverse
    Rng rng(202);
    for (int it = 0; it < 20; ++it) {
        IntMatrix m = IntMatrix::identity(4);
        for (int step = 0; step < 12; ++step) {
            std::size_t i = static_cast<std::size_t>(rng.range(0, 3));
            std::size_t j = static_cast<std::size_t>(rng.range(0, 3));
            if (i == j) continue;
            Integer f(rng.range(-3, 3));
            for (std::size_t r = 0; r < 4; ++r) m(r, i) += f * m(r, j);
        }
        CHECK(abs_of(determinant(m)) == 1);
        RatMatrix inv = inverse_rational(m);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(inv(i, j).is_integer());
    }
}

TEST_CASE("lll_reduce worked examples") {
    auto r = lll_reduce(IntMatrix::identity(3));
    CHECK(r.reduced == IntMatrix::identity(3));
    CHECK(r.transform == IntMatrix::identity(3));

    // {(1,0),(1,1)} is already Lovasz-reduced up to size-reduction
    auto r2 = lll_reduce(make_mat(2, 2, {1, 1, 0, 1}));
    bool size_reduced = false, lovasz = false;
    testsupport::check_lll_conditions(r2.reduced, size_reduced, lovasz);
    CHECK(size_reduced);
    CHECK(lovasz);
    CHECK(abs_of(determinant(r2.transform)) == 1);
    CHECK(mat_mul(make_mat(2, 2, {1, 1, 0, 1}), r2.transform) == r2.reduced);

    auto r3 = lll_reduce(make_mat(2, 2, {1, 1, 1, 2}));
    testsupport::check_lll_conditions(r3.reduced, size_reduced, lovasz);
    CHECK(size_reduced);
    CHECK(lovasz);
    CHECK(abs_of(determinant(r3.transform)) == 1);
    CHECK(mat_mul(make_mat(2, 2, {1, 1, 1, 2}), r3.transform) == r3.reduced);

    CHECK_THROWS_AS(lll_reduce(make_mat(2, 2, {1, 2, 2, 4})), DependentColumns);
}

TEST_CASE("lll_reduce conditions hold on random bases (exact rational oracle)") {
    Rng rng(203);
    for (int it = 0; it < 40; ++it) {
        std::size_t n = static_cast<std::size_t>(rng.range(2, 5));
        IntMatrix m(n, n);
        do {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m(i, j) = Integer(rng.range(-30, 30));
        } while (determinant(m) == 0);
        auto r = lll_reduce(m);
        CHECK(mat_mul(m, r.transform) == r.reduced);
        CHECK(abs_of(determinant(r.transform)) == 1);
        bool size_reduced = false, lovasz = false;
        testsupport::check_lll_conditions(r.reduced, size_reduced, lovasz);
        CHECK(size_reduced);
        CHECK(lovasz);
        // same lattice: |det| preserved
        CHECK(abs_of(determinant(r.reduced)) == abs_of(determinant(m)));
    }
}

TEST_CASE("short_nonneg_combination on the worked examples") {
    // U = diag(1,2), index 2
    auto sc = short_nonneg_combination(make_mat(2, 2, {1, 0, 0, 2}), 2);
    RatVector back = mat_vec(to_rational(make_mat(2, 2, {1, 0, 0, 2})), sc.alpha);
    for (std::size_t i = 0; i < 2; ++i) CHECK(back[i] == Rational(sc.w[i]));
    for (const auto& x : sc.alpha) CHECK(abs_of(x) < Rational(1));

    // U = columns {(1,0),(1,4)}, index 4: brute-force all w in [-4,4]^2 for the
    // attainable minimum of max|alpha| and check the result attains it.
    IntMatrix u = make_mat(2, 2, {1, 1, 0, 4});
    auto sc2 = short_nonneg_combination(u, 4);
    RatMatrix inv = inverse_rational(u);
    Rational best_max;
    bool first = true;
    for (long x = -4; x <= 4; ++x)
        for (long y = -4; y <= 4; ++y) {
            if (x == 0 && y == 0) continue;
            RatVector w{Rational(Integer(x)), Rational(Integer(y))};
            RatVector alpha = mat_vec(inv, w);
            Rational mx;
            for (const auto& c : alpha)
                if (abs_of(c) > mx) mx = abs_of(c);
            if (first || mx < best_max) {
                best_max = mx;
                first = false;
            }
        }
    Rational got_max;
    for (const auto& c : sc2.alpha)
        if (abs_of(c) > got_max) got_max = abs_of(c);
    CHECK(got_max == best_max);
    CHECK(got_max < Rational(1));
    CHECK(got_max <= Rational(1, 2)); // Minkowski bound 4^(-1/2)
}

TEST_CASE("short_nonneg_combination rejects unimodular input") {
    // |det| = 1 violates the precondition; callers never reach this state
    CHECK_THROWS_AS(short_nonneg_combination(IntMatrix::identity(2), 1), Error);
}

TEST_CASE("short_nonneg_combination contract on random matrices") {
    Rng rng(204);
    for (int it = 0; it < 30; ++it) {
        std::size_t n = static_cast<std::size_t>(rng.range(2, 4));
        IntMatrix u(n, n);
        Integer det;
        do {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) u(i, j) = Integer(rng.range(-12, 12));
            det = determinant(u);
        } while (abs_of(det) < 2 || abs_of(det) > 600);
        auto sc = short_nonneg_combination(u, abs_of(det));
        bool nonzero = false;
        for (const auto& x : sc.w) nonzero = nonzero || x != 0;
        CHECK(nonzero);
        bool has_positive = false;
        for (const auto& x : sc.alpha) has_positive = has_positive || x.sign() > 0;
        CHECK(has_positive);
    }
}

TEST_CASE("congruence_lattice_basis") {
    IntMatrix b1 = congruence_lattice_basis({1}, 2);
    CHECK(b1(0, 0) == 2);

    IntMatrix b2 = congruence_lattice_basis({4, 3, 5}, 7);
    CHECK(abs_of(determinant(b2)) == 7);
    IntVector a{4, 3, 5};
    for (std::size_t j = 0; j < 3; ++j) {
        Integer s;
        for (std::size_t i = 0; i < 3; ++i) s += a[i] * b2(i, j);
        CHECK(mod_floor(s, 7) == 0);
    }

    IntMatrix b3 = congruence_lattice_basis({1, 1}, 3);
    CHECK(b3 == make_mat(2, 2, {3, -1, 0, 1}));

    CHECK_THROWS_AS(congruence_lattice_basis({2}, 4), NotCoprime);
    CHECK_THROWS_AS(congruence_lattice_basis({}, 5), BadDimension);
}

TEST_CASE("congruence_lattice_basis columns satisfy the congruence (randomized)") {
    Rng rng(205);
    for (int it = 0; it < 40; ++it) {
        Integer b(rng.range(2, 500));
        std::size_t d = static_cast<std::size_t>(rng.range(1, 4));
        IntVector a;
        for (std::size_t j = 0; j < d; ++j) {
            Integer x(rng.range(1, 10000));
            if (gcd_of(x, b) != 1) {
                a.clear();
                break;
            }
            a.push_back(x);
        }
        if (a.size() != d) continue;
        IntMatrix basis = congruence_lattice_basis(a, b);
        CHECK(abs_of(determinant(basis)) == b);
        for (std::size_t j = 0; j < d; ++j) {
            Integer s;
            for (std::size_t i = 0; i < d; ++i) s += a[i] * basis(i, j);
            CHECK(mod_floor(s, b) == 0);
        }
    }
}

TEST_CASE("orthogonal_normal is orthogonal to its input") {
    Rng rng(206);
    for (int it = 0; it < 30; ++it) {
        std::size_t dim = static_cast<std::size_t>(rng.range(2, 4));
        std::vector<IntVector> vecs(dim - 1, IntVector(dim));
        for (auto& v : vecs)
            for (auto& x : v) x = Integer(rng.range(-8, 8));
        IntVector nu = orthogonal_normal(vecs);
        bool zero = true;
        for (const auto& x : nu) zero = zero && x == 0;
        if (zero) continue; // dependent sample
        for (const auto& v : vecs) CHECK(dot(nu, v) == 0);
    }
}
