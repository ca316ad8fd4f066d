#pragma once

// Signed decomposition of a full-dimensional simplicial cone into unimodular
// cones, and emission of each unimodular cone's generating-function term.
//
// The recursion replaces one generator at a time by the short vector found by
// short_nonneg_combination, with the child sign multiplied by sign(alpha_j);
// every child's index |alpha_j| * index is strictly smaller. The recursion acts
// on generators only; the apex rides along. Lower-dimensional pieces of the
// exchange identity are discarded: before emitting, the apex is moved by
// -sum(delta_j g_j) with delta small enough that the closed cone keeps exactly
// the same lattice points, and generic enough (verified exactly) that no
// hyperplane spanned by D-1 vectors of any recursion node passes through a
// lattice point. On such an apex the signed identity over closed cones holds
// pointwise on Z^D, which is what the box-count tests certify.

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fdsum/cone.hpp"
#include "fdsum/errors.hpp"
#include "fdsum/lattice.hpp"
#include "fdsum/numeric.hpp"
#include "fdsum/srf.hpp"

namespace fdsum {

// Dual cone: generators are the primitive columns of (G^-1)^T; the apex plays
// no role during dual-side work and is preserved unchanged, as is the sign.
// dualize(dualize(c)) has the same generator set as c up to column order and
// positive scaling.
inline SimplicialCone dualize(const SimplicialCone& cone) {
    const std::size_t dim = cone.dim();
    RatMatrix inv = inverse_rational(cone.generators); // throws Singular
    SimplicialCone dual;
    dual.apex = cone.apex;
    dual.sign = cone.sign;
    dual.generators = IntMatrix(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        RatVector row(dim);
        for (std::size_t i = 0; i < dim; ++i) row[i] = inv(j, i);
        dual.generators.set_col(j, primitive(row));
    }
    return dual;
}

struct DecompositionResult {
    std::vector<SimplicialCone> cones; // all unimodular, canonical order
    long long cones_emitted = 0;
    long long split_steps = 0; // short-vector steps taken (diagnostic)
    int max_depth = 0;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t xorshift64(std::uint64_t& s) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
}

inline IntVector canonical_normal(IntVector nu) {
    nu = primitive(std::move(nu));
    for (const auto& x : nu) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : nu) y = -y;
        break;
    }
    return nu;
}

struct VecLess {
    bool operator()(const IntVector& a, const IntVector& b) const {
        return compare_lex(a, b) < 0;
    }
};

} // namespace detail

inline DecompositionResult decompose_unimodular(const SimplicialCone& cone) {
    const std::size_t dim = cone.dim();
    internal_check(dim >= 1 && cone.generators.cols() == dim, "decompose: bad cone shape");
    for (std::size_t j = 0; j < dim; ++j) {
        Integer g(0);
        for (std::size_t i = 0; i < dim; ++i) g = gcd_of(g, cone.generators(i, j));
        internal_check(g == 1, "decompose: generator column not primitive");
    }

    DecompositionResult result;
    Integer root_index = abs_of(determinant(cone.generators));
    if (root_index == 0) throw Singular("decompose_unimodular: singular generators");
    if (root_index == 1) {
        result.cones.push_back(cone);
        result.cones_emitted = 1;
        return result;
    }

    struct Node {
        IntMatrix gens;
        int sign;
        int depth;
    };
    std::vector<Node> stack;
    stack.push_back({cone.generators, cone.sign, 0});
    std::vector<std::pair<IntMatrix, int>> leaves;
    std::set<IntVector, detail::VecLess> normals;

    auto add_facet_normals = [&](const std::vector<IntVector>& vecs) {
        // all (dim-1)-subsets of vecs; dependent subsets yield the zero vector
        // and are skipped (their faces lie inside other collected hyperplanes).
        if (dim == 1) return;
        const std::size_t m = vecs.size();
        std::vector<std::size_t> idx(dim - 1);
        for (std::size_t i = 0; i < dim - 1; ++i) idx[i] = i;
        for (;;) {
            std::vector<IntVector> sub;
            sub.reserve(dim - 1);
            for (std::size_t i : idx) sub.push_back(vecs[i]);
            IntVector nu = orthogonal_normal(sub);
            bool zero = true;
            for (const auto& x : nu) zero = zero && x == 0;
            if (!zero) normals.insert(detail::canonical_normal(std::move(nu)));
            std::size_t i = dim - 1;
            while (i-- > 0) {
                if (idx[i] + (dim - 1 - i) < m) {
                    ++idx[i];
                    for (std::size_t k = i + 1; k < dim - 1; ++k) idx[k] = idx[k - 1] + 1;
                    break;
                }
                if (i == 0) return;
            }
        }
    };

    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        if (node.depth > result.max_depth) result.max_depth = node.depth;
        Integer index = abs_of(determinant(node.gens));
        internal_check(index != 0, "decompose: singular intermediate cone");
        if (index == 1) {
            leaves.emplace_back(std::move(node.gens), node.sign);
            continue;
        }
        ShortCombination sc = short_nonneg_combination(node.gens, index);
        ++result.split_steps;

        std::vector<IntVector> node_vecs;
        node_vecs.reserve(dim + 1);
        for (std::size_t j = 0; j < dim; ++j) node_vecs.push_back(node.gens.col(j));
        node_vecs.push_back(sc.w);
        add_facet_normals(node_vecs);

        for (std::size_t j = 0; j < dim; ++j) {
            if (sc.alpha[j].is_zero()) continue;
            Node child;
            child.gens = node.gens;
            child.gens.set_col(j, sc.w);
            child.sign = sc.alpha[j].sign() > 0 ? node.sign : -node.sign;
            child.depth = node.depth + 1;
            // Child index must fall strictly: |alpha_j| * index < index.
            Integer child_index = abs_of(determinant(child.gens));
            internal_check(child_index < index, "decompose: child index did not decrease");
            internal_check(child_index == abs_of(sc.alpha[j].num()) * index / sc.alpha[j].den(),
                           "decompose: child index mismatch");
            stack.push_back(std::move(child));
        }
    }

    // Apex shift: delta_j in (0, gap_j) keeps the lattice points of the root
    // cone unchanged; genericity (<nu, apex> not integral for every collected
    // facet normal) is verified exactly and re-drawn on failure.
    RatMatrix root_inv = inverse_rational(cone.generators);
    RatVector alpha_star = mat_vec(root_inv, cone.apex);
    RatVector gaps(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        Rational scaled = alpha_star[j] * Rational(root_index);
        Rational frac = scaled - Rational(scaled.floor());
        gaps[j] = frac.is_zero() ? Rational(Integer(1), root_index)
                                 : frac / Rational(root_index);
    }

    std::uint64_t seed = 0xcbf29ce484222325ull;
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i)
            seed = detail::fnv1a(cone.generators(i, j).get_str(), seed);
    for (const auto& x : cone.apex) seed = detail::fnv1a(x.str_fraction(), seed);
    if (seed == 0) seed = 1;

    RatVector apex_shifted;
    const Integer two32 = Integer(1) << 32;
    bool ok = false;
    for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
        RatVector delta(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            std::uint64_t u = (detail::xorshift64(seed) & 0xffffffffull) | 1ull;
            delta[j] = gaps[j] * Rational(Integer(static_cast<unsigned long>(u)), two32);
        }
        apex_shifted = cone.apex;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                apex_shifted[i] -= Rational(cone.generators(i, j)) * delta[j];
        ok = true;
        for (const auto& nu : normals) {
            Rational ip;
            for (std::size_t i = 0; i < dim; ++i) ip += Rational(nu[i]) * apex_shifted[i];
            if (ip.is_integer()) {
                ok = false;
                break;
            }
        }
    }
    internal_check(ok, "decompose: could not find a generic apex shift");

    result.cones.reserve(leaves.size());
    for (auto& [gens, sign] : leaves) {
        SimplicialCone c;
        c.generators = std::move(gens);
        c.sign = sign;
        c.apex = apex_shifted;
        result.cones.push_back(std::move(c));
    }
    std::sort(result.cones.begin(), result.cones.end(),
              [](const SimplicialCone& x, const SimplicialCone& y) {
                  int c = compare_lex(x.generators, y.generators);
                  if (c) return c < 0;
                  return x.sign < y.sign;
              });
    result.cones_emitted = static_cast<long long>(result.cones.size());
    return result;
}

// Closed-cone membership: p is in apex + cone(generators) iff all generator
// coordinates of p - apex are nonnegative.
inline bool cone_contains(const SimplicialCone& cone, const IntVector& p) {
    RatMatrix inv = inverse_rational(cone.generators);
    RatVector diff(cone.dim());
    for (std::size_t i = 0; i < cone.dim(); ++i) diff[i] = Rational(p[i]) - cone.apex[i];
    RatVector coords = mat_vec(inv, diff);
    for (const auto& c : coords)
        if (c.sign() < 0) return false;
    return true;
}

// Generating-function term of a shifted closed unimodular cone, pushed through
// the exponent map: the fundamental lattice point is w = sum_j ceil(alpha_j) g_j
// where alpha is the apex in generator coordinates.
inline SRFTerm unimodular_term(const SimplicialCone& cone, const ExponentMap& emap) {
    const std::size_t dim = cone.dim();
    RatMatrix inv = inverse_rational(cone.generators);
    RatVector alpha = mat_vec(inv, cone.apex);
    IntVector w(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        Integer c = alpha[j].ceil();
        if (c == 0) continue;
        for (std::size_t i = 0; i < dim; ++i) w[i] += c * cone.generators(i, j);
    }
    SRFTerm term;
    term.sign = cone.sign;
    term.coeff = Rational(1);
    IntVector mw = mat_vec(emap.linear, w);
    term.numer_exp.resize(mw.size());
    for (std::size_t i = 0; i < mw.size(); ++i) term.numer_exp[i] = emap.x0[i] + mw[i];
    for (std::size_t j = 0; j < dim; ++j) {
        IntVector mg = mat_vec(emap.linear, cone.generators.col(j));
        bool zero = true;
        for (const auto& x : mg) zero = zero && x == 0;
        if (zero)
            throw DegenerateDenominator("unimodular_term: M*g_j = 0 (exponent map bug)");
        term.denom_exps.push_back(std::move(mg));
    }
    return term;
}

} // namespace fdsum
