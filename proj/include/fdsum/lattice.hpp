#pragma once

// Exact integer/rational linear algebra for small dimensions: determinants,
// inverses, LLL reduction (integer de Weger variant, delta = 3/4), the short
// nonnegative-combination search driving Barvinok decomposition, and the
// congruence-lattice basis {m : <a,m> = 0 mod b}.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "fdsum/errors.hpp"
#include "fdsum/numeric.hpp"

namespace fdsum {

template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_col(std::size_t j, const std::vector<T>& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;
using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <class T>
inline Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
    internal_check(a.cols() == b.rows(), "mat_mul: shape mismatch");
    Matrix<T> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == T(0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                r(i, j) += aik * b(k, j);
        }
    return r;
}

template <class T>
inline std::vector<T> mat_vec(const Matrix<T>& a, const std::vector<T>& v) {
    internal_check(a.cols() == v.size(), "mat_vec: shape mismatch");
    std::vector<T> r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r[i] += a(i, j) * v[j];
    return r;
}

template <class T>
inline Matrix<T> transpose(const Matrix<T>& a) {
    Matrix<T> r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(j, i) = a(i, j);
    return r;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
    internal_check(a.size() == b.size(), "dot: size mismatch");
    Integer s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rational(m(i, j));
    return r;
}

inline RatVector to_rational(const IntVector& v) {
    RatVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
    return r;
}

// Lexicographic comparison of matrices (row-major entries); used for canonical sorting.
inline int compare_lex(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
    if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            int c = cmp(a(i, j), b(i, j));
            if (c) return c < 0 ? -1 : 1;
        }
    return 0;
}

inline int compare_lex(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c) return c < 0 ? -1 : 1;
    }
    return 0;
}

// Exact determinant via fraction-free (Bareiss) elimination with row pivoting.
inline Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return Integer(1);
    IntMatrix a = m;
    Integer prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return Integer(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = std::move(t);
            }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Integer(-a(n - 1, n - 1));
}

// Exact inverse; verifies M * M^-1 = I before returning.
inline RatMatrix inverse_rational(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("inverse_rational: matrix not square");
    const std::size_t n = m.rows();
    RatMatrix a = to_rational(m);
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a(piv, k).is_zero()) ++piv;
        if (piv == n) throw Singular("inverse_rational: singular matrix");
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        Rational p = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= p;
            inv(k, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k).is_zero()) continue;
            Rational f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    RatMatrix prod = mat_mul(to_rational(m), inv);
    internal_check(prod == RatMatrix::identity(n), "inverse_rational: M*M^-1 != I");
    return inv;
}

struct LLLResult {
    IntMatrix reduced;   // = basis * transform
    IntMatrix transform; // unimodular
};

// LLL reduction of the columns of `basis` with delta = 3/4, in exact integer
// arithmetic (de Weger/Cohen variant: Gram-Schmidt tracked through the integer
// quantities d_i and lambda_{i,j} = d_j * mu_{i,j}).
inline LLLResult lll_reduce(const IntMatrix& basis) {
    const std::size_t n = basis.cols();
    IntMatrix b = basis;
    IntMatrix t = IntMatrix::identity(n);
    if (n <= 1) {
        if (n == 1) {
            bool zero = true;
            for (std::size_t i = 0; i < b.rows(); ++i)
                if (b(i, 0) != 0) zero = false;
            if (zero) throw DependentColumns("lll_reduce: zero column");
        }
        return {b, t};
    }

    std::vector<IntVector> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = b.col(j);

    // dd[i] = Gram determinant of the first i columns (dd[0] = 1).
    std::vector<Integer> dd(n + 1);
    dd[0] = 1;
    std::vector<std::vector<Integer>> lam(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Integer u = dot(cols[i], cols[j]);
            for (std::size_t k = 0; k < j; ++k) {
                Integer t2 = dd[k + 1] * u - lam[i][k] * lam[j][k];
                mpz_divexact(t2.get_mpz_t(), t2.get_mpz_t(), dd[k].get_mpz_t());
                u = std::move(t2);
            }
            if (j < i)
                lam[i][j] = std::move(u);
            else {
                if (u == 0) throw DependentColumns("lll_reduce: dependent columns");
                dd[i + 1] = std::move(u);
            }
        }

    std::vector<IntVector> tc(n);
    for (std::size_t j = 0; j < n; ++j) tc[j] = t.col(j);

    auto red = [&](std::size_t k, std::size_t l) {
        Integer two_lam = 2 * lam[k][l];
        if (abs_of(two_lam) <= dd[l + 1]) return;
        // q = nearest integer to lam[k][l] / dd[l+1]
        Integer q;
        Integer num = two_lam + dd[l + 1];
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), Integer(2 * dd[l + 1]).get_mpz_t());
        for (std::size_t i = 0; i < cols[k].size(); ++i) cols[k][i] -= q * cols[l][i];
        for (std::size_t i = 0; i < n; ++i) tc[k][i] -= q * tc[l][i];
        lam[k][l] -= q * dd[l + 1];
        for (std::size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };

    auto swap_step = [&](std::size_t k) {
        std::swap(cols[k], cols[k - 1]);
        std::swap(tc[k], tc[k - 1]);
        for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        Integer lamk = lam[k][k - 1];
        Integer bnew = dd[k - 1] * dd[k + 1] + lamk * lamk;
        mpz_divexact(bnew.get_mpz_t(), bnew.get_mpz_t(), dd[k].get_mpz_t());
        for (std::size_t i = k + 1; i < n; ++i) {
            Integer ti = lam[i][k];
            Integer x = dd[k + 1] * lam[i][k - 1] - lamk * ti;
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), dd[k].get_mpz_t());
            lam[i][k] = std::move(x);
            Integer y = bnew * ti + lamk * lam[i][k];
            mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), dd[k + 1].get_mpz_t());
            lam[i][k - 1] = std::move(y);
        }
        dd[k] = std::move(bnew);
    };

    std::size_t k = 1;
    while (k < n) {
        red(k, k - 1);
        // Lovasz with delta = 3/4: swap when 4*d[k+1]*d[k-1] < 3*d[k]^2 - 4*lam^2.
        if (4 * dd[k + 1] * dd[k - 1] < 3 * dd[k] * dd[k] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
            swap_step(k);
            k = k > 1 ? k - 1 : 1;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        b.set_col(j, cols[j]);
        t.set_col(j, tc[j]);
    }
    internal_check(abs_of(determinant(t)) == 1, "lll_reduce: transform not unimodular");
    return {b, t};
}

// Scale an integer vector to its primitive representative (divide by the gcd of
// the entries; direction preserved). Zero vectors are rejected.
inline IntVector primitive(IntVector v) {
    Integer g(0);
    for (const auto& x : v) g = gcd_of(g, x);
    internal_check(g != 0, "primitive: zero vector");
    if (g != 1)
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return v;
}

// Scale a rational vector by the positive factor that makes it a primitive
// integer vector.
inline IntVector primitive(const RatVector& v) {
    Integer l(1);
    for (const auto& x : v) {
        Integer d = x.den();
        l = l / gcd_of(l, d) * d;
    }
    IntVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i].num() * (l / v[i].den());
    return primitive(std::move(w));
}

struct ShortCombination {
    IntVector w;     // nonzero integer vector, primitive, first nonzero entry > 0
    RatVector alpha; // U * alpha = w, max |alpha_j| < 1
};

namespace detail {

// Integer vector spanned by the reduced-basis combination c; key for candidate
// selection: (max |v_i|, number of nonzeros, lexicographic |v|).
struct ShortCandidate {
    Integer maxabs;
    int nonzeros = 0;
    IntVector v;
    std::vector<long> c;
    bool better_than(const ShortCandidate& o) const {
        int mc = cmp(maxabs, o.maxabs);
        if (mc != 0) return mc < 0;
        if (nonzeros != o.nonzeros) return nonzeros < o.nonzeros;
        for (std::size_t i = 0; i < v.size(); ++i) {
            int c2 = cmp(abs_of(v[i]), abs_of(o.v[i]));
            if (c2) return c2 < 0;
        }
        return false;
    }
};

inline bool scan_box(const IntMatrix& reduced, long radius, ShortCandidate& best, bool& found) {
    const std::size_t dim = reduced.cols();
    std::vector<long> c(dim, -radius);
    bool progressed = false;
    for (;;) {
        // skip all-zero and non-canonical (first nonzero must be positive)
        long first = 0;
        for (std::size_t i = 0; i < dim; ++i)
            if (c[i] != 0) { first = c[i]; break; }
        if (first > 0) {
            IntVector v(reduced.rows());
            for (std::size_t j = 0; j < dim; ++j) {
                if (c[j] == 0) continue;
                for (std::size_t i = 0; i < reduced.rows(); ++i)
                    v[i] += c[j] * reduced(i, j);
            }
            ShortCandidate cand;
            cand.maxabs = 0;
            for (const auto& x : v) {
                Integer a = abs_of(x);
                if (a != 0) ++cand.nonzeros;
                if (a > cand.maxabs) cand.maxabs = a;
            }
            if (cand.nonzeros > 0) {
                cand.v = std::move(v);
                cand.c = c;
                if (!found || cand.better_than(best)) {
                    best = std::move(cand);
                    found = true;
                    progressed = true;
                }
            }
        }
        std::size_t i = 0;
        while (i < dim && c[i] == radius) c[i++] = -radius;
        if (i == dim) break;
        ++c[i];
    }
    return progressed;
}

} // namespace detail

// Find a nonzero integer w with alpha = U^-1 w, max_j |alpha_j| < 1 and alpha as
// flat as possible. Strategy: LLL-reduce A = index * U^-1 (its columns span the
// lattice {index * U^-1 y : y integer}), scan combinations of the reduced basis
// over the coefficient box [-2,2]^D, widen the box if necessary (Minkowski's
// bound max|alpha| <= index^(-1/D) guarantees termination).
inline ShortCombination short_nonneg_combination(const IntMatrix& u, const Integer& index) {
    if (u.rows() != u.cols()) throw NotSquare("short_nonneg_combination: not square");
    const std::size_t dim = u.rows();
    check<Error>(index >= 2, "short_nonneg_combination: index must be >= 2");
    internal_check(abs_of(determinant(u)) == index, "short_nonneg_combination: wrong index");

    RatMatrix inv = inverse_rational(u);
    IntMatrix a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            Rational e = inv(i, j) * Rational(index);
            internal_check(e.is_integer(), "short_nonneg_combination: index*U^-1 not integral");
            a(i, j) = e.num();
        }

    LLLResult lll = lll_reduce(a);
    detail::ShortCandidate best;
    bool found = false;
    detail::scan_box(lll.reduced, 2, best, found);
    long radius = 2;
    while (!found || best.maxabs >= index) {
        ++radius;
        internal_check(radius <= 64, "short_nonneg_combination: search radius exploded");
        detail::scan_box(lll.reduced, radius, best, found);
    }

    // w = transform * c; v = A*w = index * U^-1 * w.
    IntVector w(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        if (best.c[j] == 0) continue;
        for (std::size_t i = 0; i < dim; ++i)
            w[i] += best.c[j] * lll.transform(i, j);
    }
    Integer g(0);
    for (const auto& x : w) g = gcd_of(g, x);
    internal_check(g > 0, "short_nonneg_combination: zero w");
    RatVector alpha(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (g != 1) mpz_divexact(w[i].get_mpz_t(), w[i].get_mpz_t(), g.get_mpz_t());
        alpha[i] = Rational(best.v[i], g * index);
    }
    // The exchange identity behind the decomposition needs at least one
    // positive coordinate; w and -w are otherwise interchangeable.
    bool has_positive = false;
    for (const auto& x : alpha) has_positive = has_positive || x.sign() > 0;
    if (!has_positive)
        for (std::size_t j = 0; j < dim; ++j) {
            w[j] = -w[j];
            alpha[j] = -alpha[j];
        }

    // Contract checks, on in every build.
    RatVector back = mat_vec(to_rational(u), alpha);
    for (std::size_t i = 0; i < dim; ++i) {
        internal_check(back[i] == Rational(w[i]), "short_nonneg_combination: U*alpha != w");
        internal_check(abs_of(alpha[i]) < Rational(1), "short_nonneg_combination: |alpha| >= 1");
    }
    return {std::move(w), std::move(alpha)};
}

// Basis (columns) of the congruence lattice {m in Z^d : sum_j a_j m_j = 0 mod b}:
// first column b*e_1, column j >= 2 is e_j - ((a_j * a_1^-1) mod b) * e_1.
// |det| = b.
inline IntMatrix congruence_lattice_basis(const IntVector& a, const Integer& b) {
    check<Error>(b >= 2, "congruence_lattice_basis: b must be >= 2");
    if (a.empty()) throw BadDimension("congruence_lattice_basis: empty a");
    for (std::size_t j = 0; j < a.size(); ++j)
        if (gcd_of(a[j], b) != 1)
            throw NotCoprime("congruence_lattice_basis: gcd(a_" + std::to_string(j + 1) +
                             ", b) != 1");
    const std::size_t d = a.size();
    IntMatrix basis(d, d);
    basis(0, 0) = b;
    if (d > 1) {
        Integer a1_inv = mod_inverse(a[0], b);
        for (std::size_t j = 1; j < d; ++j) {
            basis(0, j) = -mod_floor(a[j] * a1_inv, b);
            basis(j, j) = 1;
        }
    }
    return basis;
}

// Integer normal of the span of dim-1 vectors in Z^dim (generalized cross
// product); returns the zero vector when the input is linearly dependent.
inline IntVector orthogonal_normal(const std::vector<IntVector>& vecs) {
    internal_check(!vecs.empty(), "orthogonal_normal: no vectors");
    const std::size_t dim = vecs[0].size();
    internal_check(vecs.size() + 1 == dim, "orthogonal_normal: need dim-1 vectors");
    IntVector nu(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        IntMatrix minor(dim - 1, dim - 1);
        for (std::size_t r = 0; r < dim - 1; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < dim; ++c) {
                if (c == i) continue;
                minor(r, cc++) = vecs[r][c];
            }
        }
        Integer det = determinant(minor);
        nu[i] = (i % 2 == 0) ? det : Integer(-det);
    }
    return nu;
}

} // namespace fdsum
