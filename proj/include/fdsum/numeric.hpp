#pragma once

// Exact arithmetic: arbitrary-precision integers and rationals (backed by GMP),
// univariate polynomials over Q, cyclotomic polynomials.

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "fdsum/errors.hpp"

namespace fdsum {

using Integer = mpz_class;

inline int sign_of(const Integer& x) { return mpz_sgn(x.get_mpz_t()); }

inline Integer abs_of(const Integer& x) {
    Integer r;
    mpz_abs(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// x mod m reduced into [0, m-1]; m > 0.
inline Integer mod_floor(const Integer& x, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

struct XgcdResult {
    Integer g, u, v; // g = gcd(x,y) >= 0, u*x + v*y = g
};

inline XgcdResult gcd_ext(const Integer& x, const Integer& y) {
    XgcdResult r;
    mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(),
               x.get_mpz_t(), y.get_mpz_t());
    return r;
}

inline Integer gcd_of(const Integer& x, const Integer& y) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
}

// Inverse of x modulo m, in [1, m-1]. Requires m >= 2 and gcd(x, m) = 1.
inline Integer mod_inverse(const Integer& x, const Integer& m) {
    check<Error>(m >= 2, "mod_inverse: modulus must be >= 2");
    Integer r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotCoprime("mod_inverse: gcd(" + x.get_str() + ", " + m.get_str() + ") != 1");
    return r; // in [1, m-1]: mpz_invert reduces into [0, m) and 0 is never an inverse for m >= 2
}

// Rational in lowest terms with positive denominator; normalized on every construction.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(n) {}
    Rational(const Integer& n) : q_(n) {}
    Rational(const Integer& num, const Integer& den) {
        check<Error>(den != 0, "Rational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    double to_double() const { return q_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        check<Error>(!o.is_zero(), "Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    Integer floor() const {
        Integer r;
        mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }
    Integer ceil() const {
        Integer r;
        mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }

    // "3/4", integers as "3".
    std::string str() const {
        if (is_integer()) return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }
    // "3/1" even for integers.
    std::string str_fraction() const { return num().get_str() + "/" + den().get_str(); }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

inline Rational abs_of(const Rational& x) { return x.sign() < 0 ? -x : x; }

// x^e for integer e (negative allowed when x != 0).
inline Rational rat_pow(const Rational& x, const Integer& e) {
    check<Error>(mpz_fits_slong_p(e.get_mpz_t()), "rat_pow: exponent too large");
    long ee = mpz_get_si(e.get_mpz_t());
    if (ee == 0) return Rational(1);
    bool neg = ee < 0;
    unsigned long mag = neg ? static_cast<unsigned long>(-(ee + 1)) + 1ul : static_cast<unsigned long>(ee);
    check<Error>(!(neg && x.is_zero()), "rat_pow: zero to negative power");
    Rational r(int_pow(x.num(), mag), int_pow(x.den(), mag));
    if (neg) r = Rational(1) / r;
    return r;
}

// Dense univariate polynomial over Q; coeffs[i] is the coefficient of x^i,
// no trailing zeros. degree() of the zero polynomial is -1 (sentinel).
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RatPoly constant(const Rational& a) { return RatPoly(std::vector<Rational>{a}); }
    static RatPoly monomial(std::size_t k, const Rational& a = Rational(1)) {
        std::vector<Rational> c(k + 1);
        c[k] = a;
        return RatPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& operator[](std::size_t i) const {
        static const Rational zero;
        return i < c_.size() ? c_[i] : zero;
    }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational leading() const { return c_.empty() ? Rational() : c_.back(); }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
        return RatPoly(std::move(c));
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
        return RatPoly(std::move(c));
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return RatPoly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        }
        return RatPoly(std::move(c));
    }
    friend RatPoly operator*(const Rational& a, const RatPoly& p) {
        std::vector<Rational> c(p.c_);
        for (auto& x : c) x *= a;
        return RatPoly(std::move(c));
    }
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

    Rational eval(const Rational& x) const {
        Rational r;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

// f = q*g + r with deg r < deg g. Throws on zero divisor.
inline std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& f, const RatPoly& g) {
    if (g.is_zero()) throw DivisionByZeroPoly("poly_divmod: division by zero polynomial");
    if (f.degree() < g.degree()) return {RatPoly(), f};
    std::vector<Rational> r(f.coeffs());
    std::vector<Rational> q(static_cast<std::size_t>(f.degree() - g.degree()) + 1);
    const Rational lg = g.leading();
    const int dg = g.degree();
    for (int i = f.degree(); i >= dg; --i) {
        std::size_t ui = static_cast<std::size_t>(i);
        if (r[ui].is_zero()) continue;
        Rational coef = r[ui] / lg;
        q[static_cast<std::size_t>(i - dg)] = coef;
        for (int j = 0; j <= dg; ++j)
            r[static_cast<std::size_t>(i - dg + j)] -= coef * g[static_cast<std::size_t>(j)];
    }
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

struct PolyXgcd {
    RatPoly gcd, u, v; // u*f + v*g = gcd; gcd monic (or zero if both inputs zero)
};

inline PolyXgcd poly_ext_gcd(const RatPoly& f, const RatPoly& g) {
    RatPoly r0 = f, r1 = g;
    RatPoly u0 = RatPoly::constant(Rational(1)), u1;
    RatPoly v0, v1 = RatPoly::constant(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        RatPoly u2 = u0 - q * u1;
        RatPoly v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) return {RatPoly(), RatPoly(), RatPoly()};
    Rational lc = Rational(1) / r0.leading();
    return {lc * r0, lc * u0, lc * v0};
}

inline std::vector<long> divisors_of(long b) {
    std::vector<long> small, large;
    for (long i = 1; static_cast<long long>(i) * i <= b; ++i) {
        if (b % i) continue;
        small.push_back(i);
        if (i != b / i) large.push_back(b / i);
    }
    for (std::size_t i = large.size(); i-- > 0;) small.push_back(large[i]);
    return small;
}

// Phi_b(x), computed by dividing x^b - 1 by Phi_m for all proper divisors m of b.
// Integer coefficients, degree phi(b).
inline RatPoly cyclotomic(const Integer& b) {
    check<Error>(b >= 1, "cyclotomic: b must be >= 1");
    check<BoundExceeded>(mpz_fits_slong_p(b.get_mpz_t()) && b <= 1000000,
                         "cyclotomic: b too large");
    long n = mpz_get_si(b.get_mpz_t());
    std::vector<RatPoly> phi; // phi[i] = Phi_{divs[i]}
    auto divs = divisors_of(n);
    phi.reserve(divs.size());
    for (std::size_t i = 0; i < divs.size(); ++i) {
        long m = divs[i];
        RatPoly xm1 = RatPoly::monomial(static_cast<std::size_t>(m)) -
                      RatPoly::constant(Rational(1));
        RatPoly p = xm1;
        for (std::size_t j = 0; j < i; ++j) {
            if (m % divs[j]) continue;
            auto [q, r] = poly_divmod(p, phi[j]);
            internal_check(r.is_zero(), "cyclotomic: non-exact division");
            p = std::move(q);
        }
        phi.push_back(std::move(p));
    }
    return phi.back();
}

// Euler's totient, by the product formula.
inline long totient(long n) {
    long r = n;
    for (long p = 2; static_cast<long long>(p) * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

} // namespace fdsum
