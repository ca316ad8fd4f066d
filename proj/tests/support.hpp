#pragma once

// Shared helpers for the test suites: a deterministic RNG, random instance and
// cone generators, and independent brute-force oracles (cofactor determinants,
// rational Gram-Schmidt, signed box counting).

#include <fdsum/fdsum.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace testsupport {

using namespace fdsum;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        s_ ^= s_ << 13;
        s_ ^= s_ >> 7;
        s_ ^= s_ << 17;
        return s_;
    }
    // uniform in [lo, hi]
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t s_;
};

// Random valid instance with d in [1, dmax], b in [2, bmax], a_j in [1, amax].
inline FDInstance random_instance(Rng& rng, int dmax, long bmax, long amax) {
    for (;;) {
        Integer b(rng.range(2, bmax));
        std::size_t d = static_cast<std::size_t>(rng.range(1, dmax));
        IntVector a;
        bool ok = true;
        for (std::size_t j = 0; j < d; ++j) {
            Integer x(rng.range(1, amax));
            if (gcd_of(x, b) != 1) {
                ok = false;
                break;
            }
            a.push_back(x);
        }
        if (!ok) continue;
        Integer n(rng.range(-mpz_get_si(b.get_mpz_t()), 2 * mpz_get_si(b.get_mpz_t())));
        return FDInstance{n, a, b};
    }
}

// Independent determinant oracle: cofactor expansion along the first row.
inline Integer cofactor_determinant(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Integer(1);
    if (n == 1) return m(0, 0);
    Integer acc(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        Integer term = m(0, j) * cofactor_determinant(minor);
        acc += (j % 2 == 0) ? term : Integer(-term);
    }
    return acc;
}

// Exact rational Gram-Schmidt check of the LLL output conditions
// (size-reduction |mu_ij| <= 1/2 and Lovasz with delta = 3/4).
inline void check_lll_conditions(const IntMatrix& basis, bool& size_reduced, bool& lovasz) {
    const std::size_t n = basis.cols();
    std::vector<RatVector> star(n);
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
    RatVector norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        RatVector v(basis.rows());
        for (std::size_t r = 0; r < basis.rows(); ++r) v[r] = Rational(basis(r, i));
        for (std::size_t j = 0; j < i; ++j) {
            Rational num;
            for (std::size_t r = 0; r < basis.rows(); ++r)
                num += Rational(basis(r, i)) * star[j][r];
            mu[i][j] = num / norms[j];
            for (std::size_t r = 0; r < basis.rows(); ++r) v[r] -= mu[i][j] * star[j][r];
        }
        star[i] = v;
        Rational nn;
        for (const auto& x : v) nn += x * x;
        norms[i] = nn;
    }
    size_reduced = true;
    lovasz = true;
    const Rational half(1, 2), delta(3, 4);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (abs_of(mu[i][j]) > half) size_reduced = false;
    for (std::size_t i = 1; i < n; ++i)
        if (norms[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1]) lovasz = false;
}

// Random full-dimensional simplicial cone with primitive generator columns,
// entries in [-entry, entry], 2 <= |det| <= max_index (or 1 if allow_unimodular),
// apex numerators in [-20, 20] and denominators in [1, denmax].
inline SimplicialCone random_cone(Rng& rng, std::size_t dim, long entry, long max_index,
                                  long denmax, bool allow_unimodular = false) {
    for (;;) {
        IntMatrix g(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                g(i, j) = Integer(rng.range(-entry, entry));
        Integer det = determinant(g);
        if (det == 0) continue;
        IntMatrix p(dim, dim);
        bool bad = false;
        for (std::size_t j = 0; j < dim && !bad; ++j) {
            IntVector c = g.col(j);
            bool zero = true;
            for (const auto& x : c) zero = zero && x == 0;
            if (zero) { bad = true; break; }
            p.set_col(j, primitive(c));
        }
        if (bad) continue;
        Integer idx = abs_of(determinant(p));
        if (idx > max_index || (idx == 1 && !allow_unimodular) || idx == 0) continue;
        SimplicialCone cone;
        cone.generators = p;
        cone.sign = 1;
        cone.apex.resize(dim);
        for (std::size_t i = 0; i < dim; ++i)
            cone.apex[i] = Rational(rng.range(-20, 20), rng.range(1, denmax));
        return cone;
    }
}

// int64 membership tester for a fixed cone: p in cone <=> S*adj(G)*(p - apex) >= 0
// componentwise, turned into integer thresholds ceil(row . apex).
struct FastMembership {
    std::vector<std::vector<long long>> rows;
    std::vector<long long> thresholds;
    std::size_t dim = 0;
    bool valid = false;

    static std::optional<FastMembership> build(const SimplicialCone& cone) {
        FastMembership fm;
        fm.dim = cone.dim();
        Integer det = determinant(cone.generators);
        if (det == 0) return std::nullopt;
        RatMatrix inv = inverse_rational(cone.generators);
        // rows = det-scaled inverse (integer), sign-adjusted so >= comparisons hold
        Integer scale = abs_of(det);
        fm.rows.assign(fm.dim, std::vector<long long>(fm.dim, 0));
        fm.thresholds.assign(fm.dim, 0);
        for (std::size_t i = 0; i < fm.dim; ++i) {
            Rational thr;
            for (std::size_t j = 0; j < fm.dim; ++j) {
                Rational e = inv(i, j) * Rational(scale);
                internal_check(e.is_integer(), "FastMembership: non-integral scaled inverse");
                if (!mpz_fits_slong_p(e.num().get_mpz_t())) return std::nullopt;
                fm.rows[i][j] = mpz_get_si(e.num().get_mpz_t());
                thr += e * cone.apex[j];
            }
            Integer c = thr.ceil();
            if (!mpz_fits_slong_p(c.get_mpz_t())) return std::nullopt;
            fm.thresholds[i] = mpz_get_si(c.get_mpz_t());
        }
        fm.valid = true;
        return fm;
    }

    bool contains(const std::vector<long long>& p) const {
        for (std::size_t i = 0; i < dim; ++i) {
            long long acc = 0;
            for (std::size_t j = 0; j < dim; ++j) acc += rows[i][j] * p[j];
            if (acc < thresholds[i]) return false;
        }
        return true;
    }
};

// Signed box count: for every lattice point in the cube of half-width `half`
// around round(apex), compare the signed membership count of the decomposition
// against the 0/1 indicator of the original closed cone. Returns the number of
// mismatching points.
inline long box_count_mismatches(const SimplicialCone& original,
                                 const std::vector<SimplicialCone>& decomposition,
                                 long half) {
    const std::size_t dim = original.dim();
    auto orig = FastMembership::build(original);
    internal_check(orig.has_value(), "box_count: original cone does not fit int64");
    std::vector<FastMembership> parts;
    std::vector<int> signs;
    for (const auto& c : decomposition) {
        auto fm = FastMembership::build(c);
        internal_check(fm.has_value(), "box_count: decomposition cone does not fit int64");
        parts.push_back(std::move(*fm));
        signs.push_back(c.sign);
    }
    std::vector<long long> center(dim), p(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Integer c = (original.apex[i] + Rational(1, 2)).floor();
        center[i] = mpz_fits_slong_p(c.get_mpz_t()) ? mpz_get_si(c.get_mpz_t()) : 0;
    }
    std::vector<long> offset(dim, -half);
    long mismatches = 0;
    for (;;) {
        for (std::size_t i = 0; i < dim; ++i) p[i] = center[i] + offset[i];
        int count = 0;
        for (std::size_t k = 0; k < parts.size(); ++k)
            if (parts[k].contains(p)) count += signs[k];
        int indicator = orig->contains(p) ? 1 : 0;
        if (count != indicator) ++mismatches;
        std::size_t i = 0;
        while (i < dim && offset[i] == half) offset[i++] = -half;
        if (i == dim) break;
        ++offset[i];
    }
    return mismatches;
}

// Independently derived five-term rational form of the constant term Q_z for
// s_4 with denominator order (1-l^4 z1)(1-l^5 z2)(1-l^3 z3) and b = 7, i.e.
// variable order a = (4,5,3). Used as a cross-check oracle; Q_z is not
// symmetric in the z variables even though s_n is symmetric in a.
inline Rational reference_qz_453(const Rational& z1, const Rational& z2, const Rational& z3) {
    auto pw = [](const Rational& z, unsigned long e) { return rat_pow(z, Integer(static_cast<long>(e))); };
    Rational one(1);
    Rational t1 = pw(z1, 9) / ((pw(z1, 3) - z2) * (z1 * z3 - one) * (pw(z1, 7) - one));
    Rational t2 = z3 / ((z1 * z3 - one) * (z2 * pw(z3, 3) - one) * (pw(z3, 7) - one));
    Rational t3 = pw(z1, 3) * pw(z2, 2) /
                  ((z1 * z3 - one) * (z1 * pw(z2, 2) - one) * (pw(z1, 3) - z2));
    Rational t4 = pw(z2, 2) * z3 /
                  ((z1 * z3 - one) * (pw(z2, 2) - z3) * (z2 * pw(z3, 3) - one));
    Rational t5 = pw(z2, 4) /
                  ((z1 * pw(z2, 2) - one) * (pw(z2, 2) - z3) * (pw(z2, 7) - one));
    return t1 - t2 - t3 - t4 + t5;
}

} // namespace testsupport
