#pragma once

// Exact integer and rational linear algebra shared by every module.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mirrorkit {

using Int = std::int64_t;
using Vec = std::vector<Int>;
using BigInt = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;
using QVec = std::vector<Q>;
using QMatrix = std::vector<QVec>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violates an operation's documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Malformed document or value.
class ParseError : public Error {
public:
    using Error::Error;
};

// Derived structure is not what the construction requires.
class StructuralError : public Error {
public:
    using Error::Error;
};

inline Int gcd_of(const Vec& v) {
    Int g = 0;
    for (Int x : v) g = std::gcd(g, x);
    return g;
}

inline bool is_primitive(const Vec& v) { return gcd_of(v) == 1; }

inline Vec primitive(Vec v) {
    Int g = gcd_of(v);
    if (g == 0) throw PreconditionError("primitive: zero vector");
    for (Int& x : v) x /= g;
    return v;
}

inline bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

inline Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(const Vec& a, Int c) {
    Vec r(a);
    for (Int& x : r) x *= c;
    return r;
}

inline Vec neg(const Vec& a) { return scale(a, -1); }

// Bareiss determinant; intermediate products in 128 bits.
inline Int det(std::vector<Vec> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    __int128 prev = 1;
    int sign = 1;
    std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return static_cast<Int>(sign * a[n - 1][n - 1]);
}

// Generalized cross product: a vector orthogonal to the d-1 rows of a (d-1) x d matrix.
inline Vec cofactor_normal(const std::vector<Vec>& rows, std::size_t d) {
    Vec out(d);
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Vec> minor;
        for (const Vec& r : rows) {
            Vec m;
            for (std::size_t j = 0; j < d; ++j)
                if (j != k) m.push_back(r[j]);
            minor.push_back(m);
        }
        Int v = det(minor);
        out[k] = (k % 2 == 0) ? v : -v;
    }
    return out;
}

inline QMatrix to_q(const std::vector<Vec>& m) {
    QMatrix r;
    for (const Vec& row : m) {
        QVec q;
        for (Int x : row) q.emplace_back(x);
        r.push_back(q);
    }
    return r;
}

inline QVec to_q(const Vec& v) {
    QVec q;
    for (Int x : v) q.emplace_back(x);
    return q;
}

// Rank via fraction-free elimination: rows are cleared of denominators, then Bareiss over BigInt.
inline int rank(const QMatrix& m) {
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    std::vector<std::vector<BigInt>> a;
    for (const QVec& row : m) {
        BigInt l = 1;
        for (const Q& x : row) {
            BigInt d = boost::multiprecision::denominator(x);
            l = l / boost::multiprecision::gcd(l, d) * d;
        }
        std::vector<BigInt> r;
        for (const Q& x : row) r.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
        a.push_back(std::move(r));
    }
    std::size_t rowi = 0;
    BigInt prev = 1;
    for (std::size_t c = 0; c < cols && rowi < a.size(); ++c) {
        std::size_t p = rowi;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[rowi]);
        for (std::size_t i = rowi + 1; i < a.size(); ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[i][j] * a[rowi][c] - a[i][c] * a[rowi][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[rowi][c];
        ++rowi;
    }
    return static_cast<int>(rowi);
}

inline int rank(const std::vector<Vec>& m) { return rank(to_q(m)); }

struct Rref {
    QMatrix m;
    std::vector<std::size_t> pivots;
};

inline Rref rref(QMatrix m, std::size_t cols) {
    Rref out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        Q inv = 1 / m[r][c];
        for (std::size_t j = c; j < m[r].size(); ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Q f = m[i][c];
            for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.m = std::move(m);
    return out;
}

// Some solution of A x = b, or nullopt if inconsistent.
inline std::optional<QVec> solve(const QMatrix& a, const QVec& b, std::size_t cols) {
    QMatrix aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    Rref r = rref(aug, cols + 1);
    for (std::size_t p : r.pivots)
        if (p == cols) return std::nullopt;
    QVec x(cols, Q(0));
    for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.m[i][cols];
    return x;
}

inline Vec clear_denominators(const QVec& v) {
    BigInt l = 1;
    for (const Q& x : v) {
        BigInt d = boost::multiprecision::denominator(x);
        l = l / boost::multiprecision::gcd(l, d) * d;
    }
    std::vector<BigInt> ints;
    BigInt g = 0;
    for (const Q& x : v) {
        BigInt t = boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x));
        ints.push_back(t);
        g = boost::multiprecision::gcd(g, t);
    }
    Vec out;
    for (BigInt& t : ints) {
        if (g != 0) t /= g;
        out.push_back(t.convert_to<Int>());
    }
    return out;
}

// Rational nullspace of the rows, each basis vector scaled to a primitive integer vector.
inline std::vector<Vec> integer_nullspace(const std::vector<Vec>& rows, std::size_t cols) {
    Rref r = rref(to_q(rows), cols);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(cols, Q(0));
        v[f] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.m[i][f];
        basis.push_back(clear_denominators(v));
    }
    return basis;
}

inline bool is_integral(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Q& x) { return boost::multiprecision::denominator(x) == 1; });
}

inline Vec to_int(const QVec& v) {
    Vec out;
    for (const Q& x : v) {
        if (boost::multiprecision::denominator(x) != 1) throw StructuralError("to_int: non-integral entry");
        out.push_back(boost::multiprecision::numerator(x).convert_to<Int>());
    }
    return out;
}

inline QMatrix matmul(const QMatrix& a, const QMatrix& b, std::size_t inner, std::size_t bcols) {
    QMatrix c(a.size(), QVec(bcols, Q(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < bcols; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline QMatrix transpose(const QMatrix& a, std::size_t cols) {
    QMatrix t(cols, QVec(a.size(), Q(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
    return t;
}

inline QMatrix identity_q(std::size_t n) {
    QMatrix m(n, QVec(n, Q(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline std::optional<QMatrix> inverse(const QMatrix& a) {
    const std::size_t n = a.size();
    QMatrix aug = a;
    for (std::size_t i = 0; i < n; ++i) {
        aug[i].resize(2 * n, Q(0));
        aug[i][n + i] = 1;
    }
    Rref r = rref(aug, n);
    if (r.pivots.size() != n) return std::nullopt;
    QMatrix inv(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = r.m[i][n + j];
    return inv;
}

inline bool all_zero(const QMatrix& m) {
    for (const QVec& r : m)
        for (const Q& x : r)
            if (x != 0) return false;
    return true;
}

inline Int floor_q(const Q& q) {
    BigInt n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
    BigInt f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return f.convert_to<Int>();
}

inline Int ceil_q(const Q& q) { return -floor_q(-q); }

inline std::string to_string(const Q& q) { return q.str(); }

inline Q parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Q(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        return Q(num, den);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("not a rational number: '" + s + "'");
    }
}

// Column reduction E*U = [H | 0] with U unimodular; the trailing columns of U span ker E over Z.
struct LatticeSplit {
    std::vector<Vec> u;          // n x n, columns are the new basis
    std::vector<Vec> u_inverse;  // n x n
    std::size_t rank = 0;
};

inline LatticeSplit lattice_split(std::vector<Vec> e, std::size_t n) {
    std::vector<Vec> u(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (Vec& row : e) std::swap(row[a], row[b]);
        for (Vec& row : u) std::swap(row[a], row[b]);
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, Int q) {
        for (Vec& row : e) row[dst] -= q * row[src];
        for (Vec& row : u) row[dst] -= q * row[src];
    };
    std::size_t col = 0;
    for (std::size_t r = 0; r < e.size() && col < n; ++r) {
        while (true) {
            std::size_t best = n;
            for (std::size_t j = col; j < n; ++j)
                if (e[r][j] != 0 && (best == n || std::llabs(e[r][j]) < std::llabs(e[r][best]))) best = j;
            if (best == n) break;
            if (best != col) col_swap(best, col);
            bool done = true;
            for (std::size_t j = col + 1; j < n; ++j) {
                if (e[r][j] == 0) continue;
                col_axpy(j, col, e[r][j] / e[r][col]);
                if (e[r][j] != 0) done = false;
            }
            if (done) break;
        }
        bool pivot = e[r][col] != 0;
        if (pivot) ++col;
    }
    LatticeSplit out;
    out.rank = col;
    out.u = u;
    auto inv = inverse(to_q(u));
    for (const QVec& row : *inv) out.u_inverse.push_back(to_int(row));
    return out;
}

// Row Hermite normal form under left multiplication by GL(Z); canonical for the row lattice.
inline std::vector<Vec> hermite_rows(std::vector<Vec> a) {
    if (a.empty()) return a;
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        while (true) {
            std::size_t best = a.size();
            for (std::size_t i = r; i < a.size(); ++i)
                if (a[i][c] != 0 && (best == a.size() || std::llabs(a[i][c]) < std::llabs(a[best][c]))) best = i;
            if (best == a.size()) break;
            std::swap(a[r], a[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < a.size(); ++i) {
                if (a[i][c] == 0) continue;
                Int q = a[i][c] / a[r][c];
                for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
                if (a[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r >= a.size() || a[r][c] == 0) continue;
        if (a[r][c] < 0)
            for (Int& x : a[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Int q = a[i][c] / a[r][c];
            if (a[i][c] - q * a[r][c] < 0) --q;
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        }
        ++r;
    }
    return a;
}

template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        f(idx);
        if (k == 0) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace mirrorkit
