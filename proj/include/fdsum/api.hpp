#pragma once

// Pipeline orchestration: validation, method dispatch, timing, result metadata.

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdsum/barvinok.hpp"
#include "fdsum/cone.hpp"
#include "fdsum/errors.hpp"
#include "fdsum/limit.hpp"
#include "fdsum/numeric.hpp"
#include "fdsum/oracle.hpp"
#include "fdsum/srf.hpp"

namespace fdsum {

enum class Method { barvinok, cyclotomic, floating };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::barvinok: return "barvinok";
        case Method::cyclotomic: return "cyclotomic";
        case Method::floating: return "float";
    }
    return "?";
}

struct FDResult {
    FDInstance instance;
    Method method = Method::barvinok;
    std::optional<Rational> value;  // exact methods
    std::optional<double> approx;   // float method
    long long unimodular_cones = 0; // barvinok only
    double elapsed_ms = 0.0;
    double build_ms = 0.0;      // cone construction        (barvinok)
    double decompose_ms = 0.0;  // unimodular decomposition (barvinok)
    double specialize_ms = 0.0; // term emission + limit    (barvinok)
    std::optional<SRF> decomposition; // on request
};

inline FDInstance validate(const Integer& n, const IntVector& a, const Integer& b) {
    if (b < 2)
        throw InvalidInstance("b_must_exceed_one", "b must be >= 2 (got " + b.get_str() + ")");
    if (a.empty())
        throw InvalidInstance("empty_a", "a must contain at least one entry");
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] < 1)
            throw InvalidInstance("non_positive_a(" + std::to_string(j + 1) + ")",
                                  "a_" + std::to_string(j + 1) + " must be >= 1 (got " +
                                      a[j].get_str() + ")");
        if (gcd_of(a[j], b) != 1)
            throw InvalidInstance("not_coprime(" + std::to_string(j + 1) + ")",
                                  "gcd(a_" + std::to_string(j + 1) + " = " + a[j].get_str() +
                                      ", b = " + b.get_str() + ") != 1");
    }
    return FDInstance{n, a, b};
}

struct ComputeOptions {
    bool keep_decomposition = false;
    Integer cyclo_bound = Integer(100000);
};

// The full short rational function whose limit at 1 is s_n: one term per
// unimodular cone plus the -1/b correction term.
inline std::pair<SRF, long long> pipeline_srf(const FDInstance& inst) {
    auto [cone, emap] = build_cone(inst);
    DecompositionResult dec = decompose_unimodular(cone);
    SRF f;
    f.dimension = inst.d() + 1;
    f.terms.reserve(dec.cones.size() + 1);
    for (const auto& c : dec.cones) f.terms.push_back(unimodular_term(c, emap));
    f.terms.push_back(correction_term(inst));
    canonicalize(f);
    return {std::move(f), dec.cones_emitted};
}

inline FDResult compute(const FDInstance& inst, Method method, const ComputeOptions& opts = {}) {
    validate(inst.n, inst.a, inst.b);
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::time_point from, clock::time_point to) {
        return std::chrono::duration<double, std::milli>(to - from).count();
    };
    FDResult res;
    res.instance = inst;
    res.method = method;
    auto start = clock::now();
    switch (method) {
        case Method::barvinok: {
            auto [cone, emap] = build_cone(inst);
            auto built = clock::now();
            DecompositionResult dec = decompose_unimodular(cone);
            auto decomposed = clock::now();
            SRF f;
            f.dimension = inst.d() + 1;
            f.terms.reserve(dec.cones.size() + 1);
            for (const auto& c : dec.cones) f.terms.push_back(unimodular_term(c, emap));
            f.terms.push_back(correction_term(inst));
            canonicalize(f);
            res.value = limit_at_one(f, 0); // slack coordinate pinned to z_0 = 1
            res.unimodular_cones = dec.cones_emitted;
            auto done = clock::now();
            res.build_ms = ms(start, built);
            res.decompose_ms = ms(built, decomposed);
            res.specialize_ms = ms(decomposed, done);
            if (opts.keep_decomposition) res.decomposition = std::move(f);
            break;
        }
        case Method::cyclotomic:
            res.value = cyclo_eval(inst, opts.cyclo_bound);
            break;
        case Method::floating:
            res.approx = float_eval(inst);
            break;
    }
    res.elapsed_ms = ms(start, clock::now());
    return res;
}

} // namespace fdsum
