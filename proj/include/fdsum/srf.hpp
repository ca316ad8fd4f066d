#pragma once

// Short-rational-function algebra: signed terms coeff * z^w / prod_j (1 - z^b_j),
// the 1/b correction term of the limit formula, exact evaluation at rational
// points, and the canonical text dump.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "fdsum/cone.hpp"
#include "fdsum/errors.hpp"
#include "fdsum/lattice.hpp"
#include "fdsum/numeric.hpp"

namespace fdsum {

struct SRFTerm {
    int sign = 1;                      // +1 or -1
    Rational coeff = Rational(1);      // positive part of the coefficient
    IntVector numer_exp;               // dimension d+1
    std::vector<IntVector> denom_exps; // each dimension d+1, nonzero; may be empty
};

struct SRF {
    std::size_t dimension = 0;
    std::vector<SRFTerm> terms;
};

inline int compare_terms(const SRFTerm& a, const SRFTerm& b) {
    if (a.denom_exps.size() != b.denom_exps.size())
        return a.denom_exps.size() < b.denom_exps.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.denom_exps.size(); ++i) {
        int c = compare_lex(a.denom_exps[i], b.denom_exps[i]);
        if (c) return c;
    }
    int c = compare_lex(a.numer_exp, b.numer_exp);
    if (c) return c;
    if (a.sign != b.sign) return a.sign < b.sign ? -1 : 1;
    if (a.coeff != b.coeff) return a.coeff < b.coeff ? -1 : 1;
    return 0;
}

// Canonical form: denominator factors of each term sorted, then terms sorted.
inline void canonicalize(SRF& f) {
    for (auto& t : f.terms)
        std::sort(t.denom_exps.begin(), t.denom_exps.end(),
                  [](const IntVector& x, const IntVector& y) { return compare_lex(x, y) < 0; });
    std::sort(f.terms.begin(), f.terms.end(),
              [](const SRFTerm& x, const SRFTerm& y) { return compare_terms(x, y) < 0; });
}

// The subtrahend -(1/b) / ((1-z_1)...(1-z_d)), embedded in dimension d+1
// (coordinate 0 unused).
inline SRFTerm correction_term(const FDInstance& inst) {
    const std::size_t d = inst.d();
    check<Error>(d >= 1, "correction_term: d must be >= 1");
    SRFTerm t;
    t.sign = -1;
    t.coeff = Rational(Integer(1), inst.b);
    t.numer_exp.assign(d + 1, Integer(0));
    for (std::size_t j = 1; j <= d; ++j) {
        IntVector e(d + 1);
        e[j] = 1;
        t.denom_exps.push_back(std::move(e));
    }
    return t;
}

// point^v for an integer exponent vector; negative exponents require nonzero
// coordinates.
inline Rational monomial_at(const IntVector& v, const RatVector& point) {
    internal_check(v.size() == point.size(), "monomial_at: dimension mismatch");
    Rational r(1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        check<PoleAtPoint>(!(point[i].is_zero() && v[i] < 0),
                           "monomial_at: zero coordinate with negative exponent");
        r *= rat_pow(point[i], v[i]);
    }
    return r;
}

inline Rational eval_term_at(const SRFTerm& t, const RatVector& point) {
    Rational value = Rational(t.sign) * t.coeff * monomial_at(t.numer_exp, point);
    for (const auto& be : t.denom_exps) {
        Rational factor = Rational(1) - monomial_at(be, point);
        if (factor.is_zero()) throw PoleAtPoint("eval_term_at: denominator vanishes");
        value /= factor;
    }
    return value;
}

// Exact value sum_i sign_i * coeff_i * point^numer_i / prod (1 - point^b_ij).
inline Rational eval_at(const SRF& f, const RatVector& point) {
    check<Error>(point.size() == f.dimension, "eval_at: dimension mismatch");
    Rational s;
    for (const auto& t : f.terms) s += eval_term_at(t, point);
    return s;
}

inline std::string format_vector(const IntVector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + "]";
}

// One term per line: `SIGN*COEFF * z^[v] / (1 - z^[b1])(1 - z^[b2])...`,
// the sign folded into the leading rational.
inline std::string dump_term(const SRFTerm& t) {
    Rational c = Rational(t.sign) * t.coeff;
    std::string s = (c.sign() >= 0 ? "+" : "") + c.str() + " * z^" + format_vector(t.numer_exp);
    if (!t.denom_exps.empty()) {
        s += " / ";
        for (const auto& be : t.denom_exps) s += "(1 - z^" + format_vector(be) + ")";
    }
    return s;
}

inline std::string dump(const SRF& f) {
    std::string s;
    for (const auto& t : f.terms) {
        s += dump_term(t);
        s += "\n";
    }
    return s;
}

} // namespace fdsum
