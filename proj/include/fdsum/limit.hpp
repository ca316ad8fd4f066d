#pragma once

// Limit of an SRF as all variables tend to 1, via the one-parameter substitution
// z_j = (1+t)^(c_j) with a generic integer direction c and exact truncated
// Laurent-series arithmetic in t. A coordinate may be pinned to c_j = 0, which
// sends that variable to exactly 1 (used for the slack variable z_0).

#include <cstddef>
#include <optional>
#include <vector>

#include "fdsum/errors.hpp"
#include "fdsum/numeric.hpp"
#include "fdsum/srf.hpp"

namespace fdsum {

// Truncated Laurent series: coeffs[i] is the coefficient of t^(valuation + i).
// Coefficients below the valuation are exactly zero; above the window, unknown.
struct LaurentSeries {
    int valuation = 0;
    std::vector<Rational> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    int top() const { return valuation + static_cast<int>(coeffs.size()) - 1; }
    Rational at(int k) const {
        if (k < valuation || k > top()) return Rational();
        return coeffs[static_cast<std::size_t>(k - valuation)];
    }
    // Strip leading zeros so the leading coefficient is nonzero (or the series
    // is identically zero within the window).
    void normalize() {
        std::size_t lead = 0;
        while (lead < coeffs.size() && coeffs[lead].is_zero()) ++lead;
        if (lead) {
            coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(lead));
            valuation += static_cast<int>(lead);
        }
        if (coeffs.empty()) valuation = 0;
    }
};

inline LaurentSeries series_constant(const Rational& a, int window_len) {
    LaurentSeries s;
    s.valuation = 0;
    s.coeffs.assign(static_cast<std::size_t>(window_len), Rational());
    if (!s.coeffs.empty()) s.coeffs[0] = a;
    return s;
}

// Truncated binomial series of (1+t)^N, exact coefficients up to t^order.
inline LaurentSeries binom_series(const Integer& n, int order) {
    check<Error>(order >= 0, "binom_series: order must be >= 0");
    LaurentSeries s;
    s.valuation = 0;
    s.coeffs.resize(static_cast<std::size_t>(order) + 1);
    s.coeffs[0] = Rational(1);
    for (int k = 1; k <= order; ++k)
        s.coeffs[static_cast<std::size_t>(k)] =
            s.coeffs[static_cast<std::size_t>(k - 1)] * Rational(n - (k - 1), Integer(k));
    return s;
}

// Product, exact on the window of length `len` from the sum of valuations
// (both factors must carry at least `len` known coefficients).
inline LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b, int len) {
    if (a.is_zero() || b.is_zero()) return LaurentSeries{};
    internal_check(static_cast<int>(a.coeffs.size()) >= len &&
                       static_cast<int>(b.coeffs.size()) >= len,
                   "series_mul: window too short");
    LaurentSeries r;
    r.valuation = a.valuation + b.valuation;
    r.coeffs.assign(static_cast<std::size_t>(len), Rational());
    for (int i = 0; i < len; ++i) {
        if (a.coeffs[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; i + j < len; ++j)
            r.coeffs[static_cast<std::size_t>(i + j)] +=
                a.coeffs[static_cast<std::size_t>(i)] * b.coeffs[static_cast<std::size_t>(j)];
    }
    return r;
}

// Reciprocal of a series with nonzero leading coefficient; result carries `len`
// known coefficients from valuation -a.valuation.
inline LaurentSeries series_inverse(const LaurentSeries& a, int len) {
    internal_check(!a.is_zero() && !a.coeffs[0].is_zero() &&
                       static_cast<int>(a.coeffs.size()) >= len,
                   "series_inverse: bad input window");
    LaurentSeries r;
    r.valuation = -a.valuation;
    r.coeffs.assign(static_cast<std::size_t>(len), Rational());
    Rational lead_inv = Rational(1) / a.coeffs[0];
    r.coeffs[0] = lead_inv;
    for (int k = 1; k < len; ++k) {
        Rational acc;
        for (int i = 1; i <= k; ++i)
            acc += a.coeffs[static_cast<std::size_t>(i)] *
                   r.coeffs[static_cast<std::size_t>(k - i)];
        r.coeffs[static_cast<std::size_t>(k)] = -acc * lead_inv;
    }
    return r;
}

// Sum on the window [min valuation, cap_top]; both inputs must be exact up to
// cap_top (their windows reach it).
inline LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b, int cap_top) {
    LaurentSeries r;
    if (a.is_zero() && b.is_zero()) return r;
    internal_check((a.is_zero() || a.top() >= cap_top) && (b.is_zero() || b.top() >= cap_top),
                   "series_add: summand window does not reach the cap");
    int lo = a.is_zero() ? b.valuation
                         : (b.is_zero() ? a.valuation : std::min(a.valuation, b.valuation));
    lo = std::min(lo, cap_top);
    r.valuation = lo;
    r.coeffs.resize(static_cast<std::size_t>(cap_top - lo) + 1);
    for (int k = lo; k <= cap_top; ++k)
        r.coeffs[static_cast<std::size_t>(k - lo)] = a.at(k) + b.at(k);
    r.normalize();
    return r;
}

struct Direction {
    IntVector c;
};

namespace detail {

inline std::vector<long> first_primes(std::size_t count) {
    std::vector<long> p;
    long n = 2;
    while (p.size() < count) {
        bool prime = true;
        for (long q : p) {
            if (q * q > n) break;
            if (n % q == 0) { prime = false; break; }
        }
        if (prime) p.push_back(n);
        ++n;
    }
    return p;
}

} // namespace detail

// Deterministic search for an integer direction with <c, beta> != 0 for every
// denominator exponent beta of f: try c = (1, r, r^2, ...) for successive
// primes r; a coordinate pinned to zero is skipped by the power pattern (it
// sends that variable to exactly 1). `skip` returns the (skip+1)-th valid
// direction. Terminates because each beta excludes at most dim-1 values of r.
inline Direction generic_direction(const SRF& f, std::optional<std::size_t> zero_coord = {},
                                   int skip = 0) {
    const std::size_t dim = f.dimension;
    for (const auto& t : f.terms)
        for (const auto& be : t.denom_exps) {
            bool zero = true;
            for (const auto& x : be) zero = zero && x == 0;
            internal_check(!zero, "generic_direction: zero denominator exponent");
        }
    std::size_t free_coords = dim - (zero_coord && *zero_coord < dim ? 1 : 0);
    const auto primes = detail::first_primes(256);
    for (long r : primes) {
        IntVector c(dim);
        // powers 1, r, r^2, ... over the unpinned coordinates; with a single
        // unpinned coordinate use r itself so successive candidates differ
        Integer power(free_coords == 1 ? r : 1);
        for (std::size_t i = 0; i < dim; ++i) {
            if (zero_coord && *zero_coord == i) continue;
            c[i] = power;
            power *= r;
        }
        bool valid = true;
        for (const auto& t : f.terms) {
            for (const auto& be : t.denom_exps)
                if (dot(c, be) == 0) { valid = false; break; }
            if (!valid) break;
        }
        if (valid && skip-- == 0) return {std::move(c)};
    }
    throw Error("generic_direction: no valid direction found");
}

// Series of sign*coeff*(1+t)^<c,numer> / prod_j (1 - (1+t)^<c,beta_j>), exact
// on the window [valuation, valuation + #denominators] (which contains t^0).
inline LaurentSeries term_series(const SRFTerm& term, const Direction& dir) {
    const int nden = static_cast<int>(term.denom_exps.size());
    const int len = nden + 1;
    LaurentSeries s = series_constant(Rational(term.sign) * term.coeff, len);
    s = series_mul(s, binom_series(dot(dir.c, term.numer_exp), len - 1), len);
    for (const auto& be : term.denom_exps) {
        Integer m = dot(dir.c, be);
        internal_check(m != 0, "term_series: direction hits a denominator");
        // 1 - (1+t)^m: valuation exactly 1, leading coefficient -m.
        LaurentSeries f = binom_series(m, len + 1);
        for (auto& x : f.coeffs) x = -x;
        f.coeffs[0] += Rational(1);
        f.normalize();
        internal_check(f.valuation == 1 && f.coeffs[0] == Rational(Integer(-m)),
                       "term_series: denominator factor has wrong valuation");
        s = series_mul(s, series_inverse(f, len), len);
    }
    // exact down to the valuation and at least up to t^0
    internal_check(s.is_zero() || s.top() >= 0, "term_series: window does not reach t^0");
    return s;
}

// Sum the term series along a caller-chosen direction and read the constant
// coefficient; all coefficients of t^-D..t^-1 must vanish exactly (internal
// cancellation certificate).
inline Rational limit_at_one_with(const SRF& f, const Direction& dir) {
    LaurentSeries sum;
    for (const auto& t : f.terms) sum = series_add(sum, term_series(t, dir), 0);
    for (int k = sum.valuation; k < 0 && k <= sum.top(); ++k)
        if (!sum.at(k).is_zero())
            throw CancellationFailure("limit_at_one: nonzero coefficient at t^" +
                                      std::to_string(k));
    return sum.at(0);
}

inline Rational limit_at_one(const SRF& f, std::optional<std::size_t> zero_coord = {}) {
    return limit_at_one_with(f, generic_direction(f, zero_coord));
}

} // namespace fdsum
