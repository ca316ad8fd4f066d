#pragma once

// From an instance (n, a, b), construct the full-dimensional simplicial cone in
// R^d whose lattice points enumerate the slack-variable generating function, and
// the affine exponent map back to the z_0..z_d variables.
//
// The source cone lives in R^(d+1): vertex v = (-n/b, 0, ..., 0)^t, generators
// the columns of H = [ -a_1 ... -a_d ; b*I_d ]. Its lattice points are v + H*t
// with t = (1/b)(B*s + m0), s in Z^d, where B is a basis of the congruence
// lattice {m : <a,m> = 0 mod b} and m0 a particular solution of <a,m> = -n mod b.
// In s-coordinates the region t >= 0 is the simplicial cone with apex -B^-1*m0
// and generators the primitive columns of B^-1; the exponent of z at s is
// x0 + M*s with x0 = v + (1/b)H*m0 and M = (1/b)H*B, both integral.

#include <cstddef>
#include <utility>
#include <vector>

#include "fdsum/errors.hpp"
#include "fdsum/lattice.hpp"
#include "fdsum/numeric.hpp"

namespace fdsum {

struct FDInstance {
    Integer n;
    IntVector a; // length d >= 1, entries >= 1, each coprime to b
    Integer b;   // >= 2

    std::size_t d() const { return a.size(); }
    Integer n_mod_b() const { return mod_floor(n, b); }
};

struct SimplicialCone {
    RatVector apex;       // dimension D
    IntMatrix generators; // D x D, nonsingular, primitive columns
    int sign = 1;         // +1 or -1

    std::size_t dim() const { return generators.rows(); }
};

struct ExponentMap {
    IntVector x0;     // dimension d+1
    IntMatrix linear; // (d+1) x d, full column rank
};

// Vertex v of the source cone in R^(d+1).
inline RatVector source_vertex(const FDInstance& inst) {
    RatVector v(inst.d() + 1);
    v[0] = Rational(-inst.n_mod_b(), inst.b);
    return v;
}

// Generator matrix H of the source cone: top row -a_j, then b*I_d.
inline IntMatrix source_generators(const FDInstance& inst) {
    const std::size_t d = inst.d();
    IntMatrix h(d + 1, d);
    for (std::size_t j = 0; j < d; ++j) {
        h(0, j) = -inst.a[j];
        h(j + 1, j) = inst.b;
    }
    return h;
}

// m0 with <a, m0> = -n (mod b), entries in [0, b-1], only the first entry
// nonzero: m0 = ((-n * a_1^-1) mod b) * e_1.
inline IntVector particular_solution(const IntVector& a, const Integer& b, const Integer& n) {
    if (a.empty()) throw BadDimension("particular_solution: empty a");
    if (gcd_of(a[0], b) != 1)
        throw NotCoprime("particular_solution: gcd(a_1, b) != 1");
    IntVector m0(a.size());
    m0[0] = mod_floor(-n * mod_inverse(a[0], b), b);
    return m0;
}

inline std::pair<SimplicialCone, ExponentMap> build_cone(const FDInstance& inst) {
    const std::size_t d = inst.d();
    if (d == 0) throw BadDimension("build_cone: d must be >= 1");
    const Integer& b = inst.b;
    const Integer n = inst.n_mod_b();

    IntMatrix basis = congruence_lattice_basis(inst.a, b); // throws NotCoprime
    IntVector m0 = particular_solution(inst.a, b, n);

    RatMatrix basis_inv = inverse_rational(basis);

    SimplicialCone cone;
    cone.sign = 1;
    cone.apex.assign(d, Rational());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            cone.apex[i] -= basis_inv(i, j) * Rational(m0[j]);
    cone.generators = IntMatrix(d, d);
    for (std::size_t j = 0; j < d; ++j)
        cone.generators.set_col(j, primitive(basis_inv.col(j)));

    ExponentMap emap;
    IntMatrix h = source_generators(inst);
    // x0 = v + (1/b) H m0, integral by choice of m0.
    IntVector hm0 = mat_vec(h, m0);
    emap.x0.assign(d + 1, Integer(0));
    {
        Integer top = -n + hm0[0];
        Integer q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), b.get_mpz_t());
        internal_check(r == 0, "build_cone: x0 not integral");
        emap.x0[0] = q;
    }
    for (std::size_t i = 1; i <= d; ++i) {
        Integer q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), hm0[i].get_mpz_t(), b.get_mpz_t());
        internal_check(r == 0, "build_cone: x0 not integral");
        emap.x0[i] = q;
    }
    // M = (1/b) H B, integral because every column of B satisfies the congruence.
    IntMatrix hb = mat_mul(h, basis);
    emap.linear = IntMatrix(d + 1, d);
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Integer q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), hb(i, j).get_mpz_t(), b.get_mpz_t());
            internal_check(r == 0, "build_cone: M not integral");
            emap.linear(i, j) = q;
        }
    return {std::move(cone), std::move(emap)};
}

} // namespace fdsum
