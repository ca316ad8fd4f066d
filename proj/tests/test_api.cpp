#include <doctest.h>

#include "support.hpp"

using namespace fdsum;
using testsupport::Rng;

TEST_CASE("validate accepts the golden instance and names violations") {
    FDInstance ok = validate(4, {4, 3, 5}, 7);
    CHECK(ok.d() == 3);

    CHECK_THROWS_WITH_AS(validate(0, {2}, 4), doctest::Contains("gcd"), InvalidInstance);
    try {
        validate(0, {2}, 4);
    } catch (const InvalidInstance& e) {
        CHECK(e.condition == "not_coprime(1)");
    }
    try {
        validate(5, {}, 7);
    } catch (const InvalidInstance& e) {
        CHECK(e.condition == "empty_a");
    }
    try {
        validate(5, {1}, 1);
    } catch (const InvalidInstance& e) {
        CHECK(e.condition == "b_must_exceed_one");
    }
    try {
        validate(5, {3, 0}, 7);
    } catch (const InvalidInstance& e) {
        CHECK(e.condition == "non_positive_a(2)");
    }
}

TEST_CASE("compute worked examples") {
    FDInstance golden = validate(4, {4, 3, 5}, 7);
    FDResult r = compute(golden, Method::barvinok);
    CHECK(*r.value == Rational(1, 7));
    CHECK(r.unimodular_cones > 0);
    CHECK(r.elapsed_ms >= 0.0);

    // periodicity: n = 11 = 4 mod 7
    FDResult r2 = compute(validate(11, {4, 3, 5}, 7), Method::barvinok);
    CHECK(*r2.value == Rational(1, 7));

    // composite b, cross-method
    FDInstance inst = validate(3, {2, 5}, 9);
    CHECK(*compute(inst, Method::barvinok).value == *compute(inst, Method::cyclotomic).value);
}

TEST_CASE("decomposition dump is returned on request and is canonical") {
    ComputeOptions opts;
    opts.keep_decomposition = true;
    FDResult r = compute(validate(4, {4, 3, 5}, 7), Method::barvinok, opts);
    REQUIRE(r.decomposition.has_value());
    CHECK(r.decomposition->terms.size() ==
          static_cast<std::size_t>(r.unimodular_cones) + 1);
    for (std::size_t i = 1; i < r.decomposition->terms.size(); ++i)
        CHECK(compare_terms(r.decomposition->terms[i - 1], r.decomposition->terms[i]) <= 0);
}

TEST_CASE("method agreement on random instances (b <= 120)") {
    Rng rng(801);
    int done = 0;
    for (int it = 0; it < 300 && done < 30; ++it) {
        FDInstance inst = testsupport::random_instance(rng, 3, 120, 10000);
        Rational via_cone = *compute(inst, Method::barvinok).value;
        Rational via_field = *compute(inst, Method::cyclotomic).value;
        CHECK(via_cone == via_field);
        ++done;
    }
    CHECK(done == 30);
}

TEST_CASE("periodicity, permutation symmetry, and a mod b reduction") {
    Rng rng(802);
    int done = 0;
    for (int it = 0; it < 200 && done < 12; ++it) {
        FDInstance inst = testsupport::random_instance(rng, 3, 90, 10000);
        Rational base = *compute(inst, Method::barvinok).value;

        FDInstance shifted{inst.n + inst.b, inst.a, inst.b};
        CHECK(*compute(shifted, Method::barvinok).value == base);
        CHECK(*compute(shifted, Method::cyclotomic).value == base);

        IntVector perm = inst.a;
        std::rotate(perm.begin(), perm.begin() + (perm.size() > 1 ? 1 : 0), perm.end());
        FDInstance permuted{inst.n, perm, inst.b};
        CHECK(*compute(permuted, Method::barvinok).value == base);

        IntVector reduced(inst.d());
        for (std::size_t j = 0; j < inst.d(); ++j) reduced[j] = mod_floor(inst.a[j], inst.b);
        FDInstance red{inst.n, reduced, inst.b};
        CHECK(*compute(red, Method::barvinok).value == base);
        CHECK(*compute(red, Method::cyclotomic).value == base);
        ++done;
    }
    CHECK(done == 12);
}

TEST_CASE("float method fills approx, not value") {
    FDResult r = compute(validate(4, {4, 3, 5}, 7), Method::floating);
    CHECK(!r.value.has_value());
    REQUIRE(r.approx.has_value());
    CHECK(std::abs(*r.approx - 1.0 / 7.0) < 1e-9);
}

TEST_CASE("compute validates the raw instance") {
    FDInstance bogus{0, {2}, 4};
    CHECK_THROWS_AS(compute(bogus, Method::barvinok), InvalidInstance);
}
