#include "vosper/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace vosper {

std::int64_t gcd_vec(const std::vector<std::int64_t>& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, std::llabs(x));
    return g;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    __int128 acc = 1;
    __int128 b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) acc = acc * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::int64_t>(acc);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    a = ((a % p) + p) % p;
    if (a == 0) throw std::invalid_argument("mod_inverse of zero");
    return mod_pow(a, p - 2, p);
}

std::int64_t IntegerMatrix::det() const {
    // Bareiss fraction-free elimination, exact in __int128
    std::vector<std::vector<__int128>> m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        m[i].assign(rows[i].begin(), rows[i].end());
    const std::size_t nd = m.size();
    __int128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < nd; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < nd && m[piv][k] == 0) ++piv;
            if (piv == nd) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < nd; ++i)
            for (std::size_t j = k + 1; j < nd; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * static_cast<std::int64_t>(m[nd - 1][nd - 1]);
}

std::vector<std::int64_t> bounded_bezout(const std::vector<std::int64_t>& b, std::int64_t target,
                                         std::int64_t K) {
    const std::size_t m = b.size();
    if (m == 0) throw std::invalid_argument("bounded_bezout: empty vector");
    if (gcd_vec(b) != 1) throw std::invalid_argument("bounded_bezout: vector not coprime");
    for (auto bj : b)
        if (std::llabs(bj) > K) throw std::invalid_argument("bounded_bezout: |b_j| exceeds K");
    if (std::llabs(target) > K) throw std::invalid_argument("bounded_bezout: |target| exceeds K");

    if (m == 1) {
        // b1 = +-1
        return {target * b[0]};
    }
    if (m == 2) {
        if (std::llabs(b[0]) == 1) return {target * b[0], 0};
        if (std::llabs(b[1]) == 1) return {0, target * b[1]};
        // wlog |b0| > |b1|; scan k with (target - k*b1) divisible by b0
        bool swapped = std::llabs(b[0]) < std::llabs(b[1]);
        std::int64_t b0 = swapped ? b[1] : b[0];
        std::int64_t b1 = swapped ? b[0] : b[1];
        for (std::int64_t k = -K; k <= K; ++k) {
            std::int64_t rem = target - k * b1;
            if (rem % b0 == 0) {
                std::int64_t c0 = rem / b0;
                if (std::llabs(c0) <= K) {
                    if (swapped) return {k, c0};
                    return {c0, k};
                }
            }
        }
        throw std::logic_error("bounded_bezout: no representation found (impossible)");
    }
    // m > 2: split off the last coordinate through g = gcd of the prefix
    std::vector<std::int64_t> prefix(b.begin(), b.end() - 1);
    std::int64_t g = gcd_vec(prefix);
    if (g == 0) {
        // prefix entirely zero, so b_m = +-1 carries the whole target
        std::vector<std::int64_t> c(m, 0);
        c.back() = target * b.back();
        return c;
    }
    auto two = bounded_bezout({g, b.back()}, target, K); // g*b' + b_m*c_m = target
    for (auto& x : prefix) x /= g;
    auto head = bounded_bezout(prefix, two[0], K);
    head.push_back(two[1]);
    return head;
}

namespace {

// completion for a vector with every coordinate nonzero
std::vector<std::vector<std::int64_t>> complete_nonzero(const std::vector<std::int64_t>& a) {
    const std::size_t m = a.size();
    if (m == 1) return {{a[0]}};
    std::vector<std::int64_t> prefix(a.begin(), a.end() - 1);
    auto B = complete_nonzero(prefix);
    std::int64_t g_prev = gcd_vec(prefix);
    std::int64_t g_all = std::gcd(g_prev, std::llabs(a.back()));

    std::vector<std::vector<std::int64_t>> rows;
    rows.push_back(a);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        auto row = B[i];
        row.push_back(0);
        rows.push_back(std::move(row));
    }
    // last row: solve sum_{j<m} a_j c_j = -a_m * g_prev / g_all via bounded Bezout
    std::int64_t K = 0;
    for (auto x : a) K = std::max<std::int64_t>(K, std::llabs(x));
    std::vector<std::int64_t> coprime(prefix);
    for (auto& x : coprime) x /= g_prev;
    auto c = bounded_bezout(coprime, -a.back() / g_all, K);
    c.push_back(g_prev / g_all);
    rows.push_back(std::move(c));
    return rows;
}

} // namespace

IntegerMatrix complete_matrix(const std::vector<std::int64_t>& a) {
    const auto d = static_cast<std::int64_t>(a.size());
    if (d == 0 || std::all_of(a.begin(), a.end(), [](std::int64_t x) { return x == 0; }))
        throw std::invalid_argument("complete_matrix: zero vector");

    // zero coordinates are completed by standard basis rows
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != 0) nz.push_back(j);
    std::vector<std::int64_t> compact;
    for (auto j : nz) compact.push_back(a[j]);
    auto core = complete_nonzero(compact);

    IntegerMatrix A;
    A.d = d;
    A.rows.assign(static_cast<std::size_t>(d), std::vector<std::int64_t>(a.size(), 0));
    A.rows[0] = a;
    std::size_t next = 1;
    for (std::size_t i = 1; i < core.size(); ++i, ++next)
        for (std::size_t jj = 0; jj < nz.size(); ++jj)
            A.rows[next][nz[jj]] = core[i][jj];
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] == 0) A.rows[next++][j] = 1;

    std::int64_t expected = 0;
    for (auto x : a) expected += x * x;
    expected /= gcd_vec(a);
    std::int64_t det = A.det();
    if (d >= 2 && det == -expected) {
        for (auto& x : A.rows[1]) x = -x;
        det = -det;
    }
    if (d >= 2 && det != expected)
        throw std::logic_error("complete_matrix: determinant mismatch (implementation bug)");
    return A;
}

namespace {

// canonical sign: first nonzero entry positive (k and -k are the same relation)
RelationVector canonical_relation(std::vector<std::int64_t> k, std::int64_t K) {
    for (auto x : k) {
        if (x > 0) break;
        if (x < 0) {
            for (auto& y : k) y = -y;
            break;
        }
    }
    return RelationVector{std::move(k), K};
}

} // namespace

std::optional<RelationVector> find_relation(const TorusHom& phi, std::int64_t K, bool allow_mitm,
                                            const Caps& caps) {
    if (K < 1) throw std::invalid_argument("find_relation: K must be >= 1");
    const auto d = phi.d();
    const std::int64_t p = phi.p;
    double box = std::pow(2.0 * static_cast<double>(K) - 1.0, static_cast<double>(d));

    if (box <= static_cast<double>(caps.relation_box_cap)) {
        std::vector<std::int64_t> k(static_cast<std::size_t>(d), -(K - 1));
        while (true) {
            bool zero = std::all_of(k.begin(), k.end(), [](std::int64_t x) { return x == 0; });
            if (!zero) {
                __int128 s = 0;
                for (std::int64_t j = 0; j < d; ++j)
                    s += static_cast<__int128>(k[static_cast<std::size_t>(j)]) *
                         phi.freqs[static_cast<std::size_t>(j)];
                if (static_cast<std::int64_t>(((s % p) + p) % p) == 0)
                    return canonical_relation(k, K);
            }
            std::size_t j = 0;
            for (; j < k.size(); ++j) {
                if (k[j] < K - 1) {
                    ++k[j];
                    for (std::size_t i = 0; i < j; ++i) k[i] = -(K - 1);
                    break;
                }
            }
            if (j == k.size()) break;
        }
        return std::nullopt;
    }

    if (!allow_mitm) throw CapExceeded("find_relation: box exceeds cap and meet-in-the-middle disabled");

    // meet in the middle: hash partial sums of the first half of the coordinates
    const std::int64_t half = d / 2;
    std::unordered_map<std::int64_t, std::vector<std::int64_t>> table;
    std::vector<std::int64_t> ka(static_cast<std::size_t>(half), -(K - 1));
    while (true) {
        std::int64_t s = 0;
        for (std::int64_t j = 0; j < half; ++j)
            s = (s + (ka[static_cast<std::size_t>(j)] % p) * (phi.freqs[static_cast<std::size_t>(j)] % p)) % p;
        s = ((s % p) + p) % p;
        table.try_emplace(s, ka);
        std::size_t j = 0;
        for (; j < ka.size(); ++j) {
            if (ka[j] < K - 1) {
                ++ka[j];
                for (std::size_t i = 0; i < j; ++i) ka[i] = -(K - 1);
                break;
            }
        }
        if (j == ka.size()) break;
    }
    std::vector<std::int64_t> kb(static_cast<std::size_t>(d - half), -(K - 1));
    while (true) {
        std::int64_t s = 0;
        for (std::int64_t j = half; j < d; ++j)
            s = (s + (kb[static_cast<std::size_t>(j - half)] % p) * (phi.freqs[static_cast<std::size_t>(j)] % p)) % p;
        s = ((s % p) + p) % p;
        auto it = table.find((p - s) % p);
        if (it != table.end()) {
            std::vector<std::int64_t> k = it->second;
            k.insert(k.end(), kb.begin(), kb.end());
            if (!std::all_of(k.begin(), k.end(), [](std::int64_t x) { return x == 0; }))
                return canonical_relation(std::move(k), K);
            // the all-zero combination: look for a nonzero first half summing to 0
        }
        std::size_t j = 0;
        for (; j < kb.size(); ++j) {
            if (kb[j] < K - 1) {
                ++kb[j];
                for (std::size_t i = 0; i < j; ++i) kb[i] = 0 - (K - 1);
                break;
            }
        }
        if (j == kb.size()) break;
    }
    return std::nullopt;
}

DimensionReduction reduce_dimension(const TorusHom& phi, const TrigPolynomial& F,
                                    const RelationVector& relation) {
    const auto d = phi.d();
    const std::int64_t p = phi.p;
    if (d < 2) throw std::invalid_argument("reduce_dimension: requires d >= 2");
    if (F.d() != d) throw std::invalid_argument("reduce_dimension: dimension mismatch");
    if (static_cast<std::int64_t>(relation.k.size()) != d)
        throw std::invalid_argument("reduce_dimension: relation has wrong length");
    if (p <= relation.bound)
        throw std::invalid_argument("reduce_dimension: p <= K is rejected (p must exceed the independence bound)");

    // validate the relation
    __int128 s = 0;
    for (std::int64_t j = 0; j < d; ++j)
        s += static_cast<__int128>(relation.k[static_cast<std::size_t>(j)]) *
             phi.freqs[static_cast<std::size_t>(j)];
    if (static_cast<std::int64_t>(((s % p) + p) % p) != 0)
        throw std::invalid_argument("reduce_dimension: relation does not annihilate phi");

    std::vector<std::int64_t> a = relation.k;
    std::int64_t g = gcd_vec(a);
    if (g == 0) throw std::invalid_argument("reduce_dimension: zero relation");
    for (auto& x : a) x /= g;

    IntegerMatrix A = complete_matrix(a);
    std::int64_t det = A.det();
    if (((det % p) + p) % p == 0)
        throw std::invalid_argument("reduce_dimension: p divides det of the completion (degenerate)");

    // solve A^T c = r (mod p); c_1 must vanish, and phi' takes the rest
    std::vector<std::vector<std::int64_t>> aug(static_cast<std::size_t>(d),
                                               std::vector<std::int64_t>(static_cast<std::size_t>(d + 1)));
    for (std::int64_t i = 0; i < d; ++i) {
        for (std::int64_t j = 0; j < d; ++j) {
            std::int64_t v = A.rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] % p;
            aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (v + p) % p;
        }
        aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] =
            ((phi.freqs[static_cast<std::size_t>(i)] % p) + p) % p;
    }
    for (std::int64_t col = 0; col < d; ++col) {
        std::int64_t piv = col;
        while (piv < d && aug[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)] == 0) ++piv;
        if (piv == d) throw std::logic_error("reduce_dimension: singular system mod p");
        std::swap(aug[static_cast<std::size_t>(col)], aug[static_cast<std::size_t>(piv)]);
        std::int64_t inv = mod_inverse(aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)], p);
        for (std::int64_t j = col; j <= d; ++j)
            aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] =
                static_cast<std::int64_t>(static_cast<__int128>(aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)]) * inv % p);
        for (std::int64_t i = 0; i < d; ++i) {
            if (i == col) continue;
            std::int64_t f = aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (std::int64_t j = col; j <= d; ++j) {
                __int128 v = aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                             static_cast<__int128>(f) * aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
                aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    static_cast<std::int64_t>(((v % p) + p) % p);
            }
        }
    }
    if (aug[0][static_cast<std::size_t>(d)] != 0)
        throw std::logic_error("reduce_dimension: relation coordinate of phi did not vanish");

    TorusHom reduced;
    reduced.p = p;
    for (std::int64_t i = 1; i < d; ++i)
        reduced.freqs.push_back(aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)]);

    // compose F with the parametrization t = sum_{i>=2} s_i * row_i(A):
    // e(k.t) = e((A_sub k).s) with (A_sub k)_i = sum_j A_ij k_j
    std::map<std::vector<std::int64_t>, cplx> coeffs;
    for (const auto& [k, c] : F.coeffs()) {
        std::vector<std::int64_t> m(static_cast<std::size_t>(d - 1), 0);
        for (std::int64_t i = 1; i < d; ++i) {
            std::int64_t acc = 0;
            for (std::int64_t j = 0; j < d; ++j)
                acc += A.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                       k[static_cast<std::size_t>(j)];
            m[static_cast<std::size_t>(i - 1)] = acc;
        }
        coeffs[m] += c;
    }
    TrigPolynomial reduced_F(d - 1, std::move(coeffs));

    // the defining identity, checked exhaustively
    auto lhs = reduced_F.eval_orbit(reduced);
    auto rhs = F.eval_orbit(phi);
    for (std::int64_t x = 0; x < p; ++x)
        if (std::abs(lhs[static_cast<std::size_t>(x)] - rhs[static_cast<std::size_t>(x)]) > tol().pointwise)
            throw std::logic_error("reduce_dimension: composed function mismatch at x=" + std::to_string(x));

    double lipschitz = reduced_F.lipschitz_bound();
    return DimensionReduction{std::move(reduced), std::move(reduced_F), lipschitz, std::move(A)};
}

} // namespace vosper
