#pragma once

// Two independent reference evaluators of the defining root-of-unity sum
// s_n(a;b) = (1/b) sum_{k=1}^{b-1} xi^{kn} / prod_j (1 - xi^{k a_j}):
// exact arithmetic in Q[x]/(Phi_b), and double-precision complex summation.

#include <complex>
#include <cstdint>
#include <vector>

#include "fdsum/cone.hpp"
#include "fdsum/errors.hpp"
#include "fdsum/numeric.hpp"

namespace fdsum {

// Element of Q[x]/(Phi_b): a RatPoly representative of degree < phi(b).
struct CycloElement {
    RatPoly poly;

    friend bool operator==(const CycloElement& a, const CycloElement& b) {
        return a.poly == b.poly;
    }
};

// Q[x]/(Phi_b); a field, since Phi_b is irreducible over Q.
class CycloField {
public:
    explicit CycloField(const Integer& b) : b_(b), phi_(cyclotomic(b)) {}

    const Integer& b() const { return b_; }
    const RatPoly& modulus() const { return phi_; }

    CycloElement reduce(const RatPoly& p) const { return {poly_divmod(p, phi_).second}; }
    CycloElement mul(const CycloElement& a, const CycloElement& b) const {
        return reduce(a.poly * b.poly);
    }

    // Class of x^k (k reduced mod b).
    CycloElement root_power(const Integer& k) const {
        Integer r = mod_floor(k, b_);
        check<Error>(mpz_fits_ulong_p(r.get_mpz_t()), "root_power: exponent too large");
        return reduce(RatPoly::monomial(mpz_get_ui(r.get_mpz_t())));
    }

    // Field inverse via the extended Euclidean algorithm.
    CycloElement inv(const CycloElement& a) const {
        CycloElement r = reduce(a.poly);
        check<Error>(!r.poly.is_zero(), "CycloField::inv: zero element");
        PolyXgcd x = poly_ext_gcd(r.poly, phi_);
        internal_check(x.gcd.degree() == 0, "CycloField::inv: gcd not constant");
        return reduce(x.u); // gcd is monic, hence exactly 1
    }

private:
    Integer b_;
    RatPoly phi_;
};

namespace detail {

// Cyclic convolution mod x^b - 1.
template <class T>
std::vector<T> cyclic_conv(const std::vector<T>& u, const std::vector<T>& v) {
    const std::size_t b = u.size();
    std::vector<T> r(b, T(0));
    for (std::size_t i = 0; i < b; ++i) {
        if (u[i] == T(0)) continue;
        const T ui = u[i];
        std::size_t k = i;
        for (std::size_t j = 0; j < b; ++j) {
            r[k] += ui * v[j];
            if (++k == b) k = 0;
        }
    }
    return r;
}

// Preimage of b * inv(1 - x^m) in Z[x]/(x^b - 1): g_m = sum_t (b-1-t) x^(mt mod b).
// Certified by (1 - x^m) g_m = b - g * (1 + x^g + ... + x^(b-g)) with g = gcd(m,b),
// whose class mod Phi_b is b.
template <class T>
std::vector<T> geometric_inverse_preimage(long b, long m) {
    internal_check(m > 0 && m < b, "geometric_inverse_preimage: b must not divide m");
    std::vector<T> g(static_cast<std::size_t>(b), T(0));
    long pos = 0;
    for (long t = 0; t < b; ++t) {
        g[static_cast<std::size_t>(pos)] += T(b - 1 - t);
        pos += m;
        if (pos >= b) pos -= b;
    }
    return g;
}

inline Integer coeff_to_integer(long long x) { return Integer(static_cast<long>(x)); }
inline Integer coeff_to_integer(const Integer& x) { return x; }
inline Integer coeff_to_integer(__int128 x) {
    bool neg = x < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x)
                              : static_cast<unsigned __int128>(x);
    Integer r(static_cast<unsigned long>(u >> 64));
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
    r += Integer(static_cast<unsigned long>(u & 0xffffffffffffffffull));
    return neg ? Integer(-r) : r;
}

template <class T>
Rational cyclo_eval_sum(long b, long n_red, const std::vector<long>& a_red, const Integer& big_b) {
    const std::size_t ub = static_cast<std::size_t>(b);
    const std::size_t d = a_red.size();
    std::vector<T> acc(ub, T(0));
    std::vector<T> term;
    for (long k = 1; k < b; ++k) {
        term = geometric_inverse_preimage<T>(b, static_cast<long>((static_cast<long long>(k) * a_red[0]) % b));
        for (std::size_t j = 1; j < d; ++j) {
            std::vector<T> gj = geometric_inverse_preimage<T>(
                b, static_cast<long>((static_cast<long long>(k) * a_red[j]) % b));
            term = cyclic_conv(term, gj);
        }
        long shift = static_cast<long>((static_cast<long long>(k) * n_red) % b);
        for (long i = 0; i < b; ++i) {
            long t = i + shift;
            if (t >= b) t -= b;
            acc[static_cast<std::size_t>(t)] += term[static_cast<std::size_t>(i)];
        }
    }
    // Reduce mod Phi_b; the class must be the rational constant b^(d+1) * s_n.
    std::vector<Rational> coeffs(ub);
    for (std::size_t i = 0; i < ub; ++i) coeffs[i] = Rational(coeff_to_integer(acc[i]));
    RatPoly rem = poly_divmod(RatPoly(std::move(coeffs)), cyclotomic(big_b)).second;
    if (rem.degree() > 0)
        throw NonRationalResult("cyclo_eval: result not rational (degree " +
                                std::to_string(rem.degree()) + ")");
    return rem[0] / Rational(int_pow(big_b, static_cast<unsigned long>(d) + 1));
}

} // namespace detail

// Exact value of the defining sum, computed in Q[x]/(Phi_b). The per-factor
// inverses are the closed-form geometric preimages above; the whole k-sum is
// accumulated with integer cyclic convolutions mod x^b - 1 and reduced mod
// Phi_b once at the end, where the result must have degree 0.
inline Rational cyclo_eval(const FDInstance& inst, const Integer& bound = Integer(100000)) {
    check<BoundExceeded>(inst.b <= bound,
                         "cyclo_eval: b exceeds the practical bound " + bound.get_str());
    check<BoundExceeded>(mpz_fits_slong_p(inst.b.get_mpz_t()) != 0, "cyclo_eval: b too large");
    check<Error>(inst.b >= 2 && !inst.a.empty(), "cyclo_eval: invalid instance");
    for (std::size_t j = 0; j < inst.a.size(); ++j)
        if (gcd_of(inst.a[j], inst.b) != 1)
            throw NotCoprime("cyclo_eval: gcd(a_" + std::to_string(j + 1) + ", b) != 1");

    long b = mpz_get_si(inst.b.get_mpz_t());
    long n_red = mpz_get_si(inst.n_mod_b().get_mpz_t());
    std::vector<long> a_red(inst.d());
    for (std::size_t j = 0; j < inst.d(); ++j)
        a_red[j] = mpz_get_si(mod_floor(inst.a[j], inst.b).get_mpz_t());

    // Entry bound b^(2d) picks the narrowest safe coefficient type.
    double bits = 2.0 * static_cast<double>(inst.d() + 1) * std::log2(static_cast<double>(b));
    if (bits < 62)
        return detail::cyclo_eval_sum<long long>(b, n_red, a_red, inst.b);
    if (bits < 125)
        return detail::cyclo_eval_sum<__int128>(b, n_red, a_red, inst.b);
    return detail::cyclo_eval_sum<Integer>(b, n_red, a_red, inst.b);
}

// Double-precision complex summation of the defining sum; the imaginary part
// must be numerically negligible.
inline double float_eval(const FDInstance& inst, const Integer& bound = Integer(10000000)) {
    check<BoundExceeded>(inst.b <= bound, "float_eval: b exceeds the practical bound");
    check<BoundExceeded>(mpz_fits_slong_p(inst.b.get_mpz_t()) != 0, "float_eval: b too large");
    check<Error>(inst.b >= 2 && !inst.a.empty(), "float_eval: invalid instance");
    for (std::size_t j = 0; j < inst.a.size(); ++j)
        if (gcd_of(inst.a[j], inst.b) != 1)
            throw NotCoprime("float_eval: gcd(a_" + std::to_string(j + 1) + ", b) != 1");

    const long b = mpz_get_si(inst.b.get_mpz_t());
    const long n_red = mpz_get_si(inst.n_mod_b().get_mpz_t());
    std::vector<long> a_red(inst.d());
    for (std::size_t j = 0; j < inst.d(); ++j)
        a_red[j] = mpz_get_si(mod_floor(inst.a[j], inst.b).get_mpz_t());

    const double tau = 6.283185307179586476925286766559;
    std::complex<double> sum(0.0, 0.0);
    for (long k = 1; k < b; ++k) {
        double angle = tau * static_cast<double>((static_cast<long long>(k) * n_red) % b) /
                       static_cast<double>(b);
        std::complex<double> term(std::cos(angle), std::sin(angle));
        for (std::size_t j = 0; j < inst.d(); ++j) {
            long e = static_cast<long>((static_cast<long long>(k) * a_red[j]) % b);
            double phi = tau * static_cast<double>(e) / static_cast<double>(b);
            term /= std::complex<double>(1.0 - std::cos(phi), -std::sin(phi));
        }
        sum += term;
    }
    sum /= static_cast<double>(b);
    check<ImaginaryResidual>(std::abs(sum.imag()) < 1e-6 * (1.0 + std::abs(sum.real())),
                             "float_eval: imaginary residual too large");
    return sum.real();
}

} // namespace fdsum
