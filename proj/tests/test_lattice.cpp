#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "vosper/lattice.hpp"

using namespace vosper;

namespace {

std::int64_t dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

// membership of v in the row span of A over Z, via Cramer divisibility
bool in_row_span(const IntegerMatrix& A, const std::vector<std::int64_t>& v) {
    std::int64_t det = A.det();
    const std::size_t d = A.rows.size();
    // solve x * A = v by Cramer: x_i = det(A with row i replaced by v) / det
    for (std::size_t i = 0; i < d; ++i) {
        IntegerMatrix B = A;
        B.rows[i] = v;
        if (B.det() % det != 0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("one-dimensional completion is the vector itself") {
    auto A = complete_matrix({1});
    CHECK(A.rows == std::vector<std::vector<std::int64_t>>{{1}});
    CHECK(A.det() == 1);
    CHECK(std::llabs(complete_matrix({-3}).det()) == 3);
}

TEST_CASE("completion of (3,4)") {
    auto A = complete_matrix({3, 4});
    CHECK(A.rows[0] == std::vector<std::int64_t>{3, 4});
    CHECK(A.det() == 25);
    CHECK(dot(A.rows[0], A.rows[1]) == 0);
    for (const auto& row : A.rows)
        for (auto x : row) CHECK(std::llabs(x) <= 4);
}

TEST_CASE("completion of (2,4) has determinant 10") {
    auto A = complete_matrix({2, 4});
    CHECK(A.det() == 10);
    CHECK(dot(A.rows[0], A.rows[1]) == 0);
    for (const auto& row : A.rows)
        for (auto x : row) CHECK(std::llabs(x) <= 4);
}

TEST_CASE("completion handles zero coordinates and dimension three") {
    for (auto a : std::vector<std::vector<std::int64_t>>{{0, 3, 0}, {2, 0, 5}, {1, 2, 3}, {-4, 2, 2}}) {
        auto A = complete_matrix(a);
        std::int64_t sq = 0;
        for (auto x : a) sq += x * x;
        CHECK(A.det() == sq / gcd_vec(a));
        CHECK(A.rows[0] == a);
        for (std::size_t i = 1; i < A.rows.size(); ++i) CHECK(dot(a, A.rows[i]) == 0);
    }
}

TEST_CASE("completion rejects the zero vector") {
    CHECK_THROWS_AS(complete_matrix({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(complete_matrix({}), std::invalid_argument);
}

TEST_CASE("row span of the completion has index |det| (coset count)") {
    for (auto a : std::vector<std::vector<std::int64_t>>{{3, 4}, {2, 4}, {1, 2, 3}}) {
        auto A = complete_matrix(a);
        std::int64_t det = std::llabs(A.det());
        // count lattice points of a large box falling in the row span; the
        // span has index det, so membership frequency must be 1/det
        const std::int64_t R = (a.size() == 2) ? 30 : 6;
        std::int64_t members = 0, total = 0;
        std::vector<std::int64_t> v(a.size(), -R);
        while (true) {
            ++total;
            if (in_row_span(A, v)) ++members;
            std::size_t j = 0;
            for (; j < v.size(); ++j) {
                if (v[j] < R) {
                    ++v[j];
                    for (std::size_t i = 0; i < j; ++i) v[i] = -R;
                    break;
                }
            }
            if (j == v.size()) break;
        }
        // boxes are index-aligned only asymptotically; allow a boundary margin
        double freq = static_cast<double>(members) / static_cast<double>(total);
        CHECK(std::abs(freq - 1.0 / static_cast<double>(det)) < 0.5 / static_cast<double>(det));
    }
}

TEST_CASE("bezout base case with a unit coefficient") {
    CHECK(bounded_bezout({1}, 7, 7) == std::vector<std::int64_t>{7});
    CHECK(bounded_bezout({-1}, 5, 5) == std::vector<std::int64_t>{-5});
}

TEST_CASE("bezout for (2,3) hitting 1 within bound 3") {
    auto c = bounded_bezout({2, 3}, 1, 3);
    CHECK(dot({2, 3}, c) == 1);
    for (auto x : c) CHECK(std::llabs(x) <= 3);
}

TEST_CASE("bezout for (5,7) hitting 2 within bound 7") {
    auto c = bounded_bezout({5, 7}, 2, 7);
    CHECK(dot({5, 7}, c) == 2);
    for (auto x : c) CHECK(std::llabs(x) <= 7);
}

TEST_CASE("bezout rejects bad inputs") {
    CHECK_THROWS_AS(bounded_bezout({2, 4}, 1, 4), std::invalid_argument);  // not coprime
    CHECK_THROWS_AS(bounded_bezout({2, 9}, 1, 4), std::invalid_argument);  // |b_j| > K
    CHECK_THROWS_AS(bounded_bezout({2, 3}, 9, 3), std::invalid_argument);  // |target| > K
    CHECK_THROWS_AS(bounded_bezout({}, 0, 1), std::invalid_argument);
}

TEST_CASE("trivial frequency admits the unit relation") {
    TorusHom phi{11, {0}};
    auto rel = find_relation(phi, 2);
    REQUIRE(rel.has_value());
    CHECK(rel->k == std::vector<std::int64_t>{1});
}

TEST_CASE("relation (1,2) for frequencies (1,3) mod 7") {
    TorusHom phi{7, {1, 3}};
    auto rel = find_relation(phi, 3);
    REQUIRE(rel.has_value());
    CHECK(rel->k == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("frequencies (1,2) mod 7 are 2-independent") {
    TorusHom phi{7, {1, 2}};
    CHECK(!find_relation(phi, 2).has_value());
}

TEST_CASE("box scan and meet-in-the-middle agree") {
    std::mt19937_64 rng(13);
    Caps tiny = default_caps();
    tiny.relation_box_cap = 10; // force the hashing path
    for (int rep = 0; rep < 100; ++rep) {
        std::int64_t p = (rep % 2 == 0) ? 101 : 257;
        std::int64_t d = 1 + static_cast<std::int64_t>(rng() % 3);
        std::int64_t K = 2 + static_cast<std::int64_t>(rng() % 4);
        TorusHom phi{p, {}};
        for (std::int64_t j = 0; j < d; ++j)
            phi.freqs.push_back(1 + static_cast<std::int64_t>(rng() % (p - 1)));
        auto scan = find_relation(phi, K);
        auto mitm = find_relation(phi, K, true, tiny);
        CHECK(scan.has_value() == mitm.has_value());
        if (mitm) {
            std::int64_t s = 0;
            for (std::int64_t j = 0; j < d; ++j)
                s += mitm->k[static_cast<std::size_t>(j)] * phi.freqs[static_cast<std::size_t>(j)];
            CHECK(((s % p) + p) % p == 0);
            for (auto x : mitm->k) CHECK(std::llabs(x) < K);
        }
    }
}

TEST_CASE("relation search without fallback reports the cap") {
    Caps tiny = default_caps();
    tiny.relation_box_cap = 10;
    TorusHom phi{101, {1, 5, 9}};
    CHECK_THROWS_AS(find_relation(phi, 5, false, tiny), CapExceeded);
}

TEST_CASE("dimension reduction preserves the composed function, (1,3) mod 7") {
    TorusHom phi{7, {1, 3}};
    auto rel = find_relation(phi, 3);
    REQUIRE(rel.has_value());
    auto F = fejer_kernel(2, 3);
    auto red = reduce_dimension(phi, F, *rel);
    CHECK(red.phi.d() == 1);
    auto before = F.eval_orbit(phi);
    auto after = red.F.eval_orbit(red.phi);
    for (std::int64_t x = 0; x < 7; ++x)
        CHECK(std::abs(before[static_cast<std::size_t>(x)] - after[static_cast<std::size_t>(x)]) <
              1e-10);
    // pointwise equality forces equal means
    double m1 = 0, m2 = 0;
    for (std::int64_t x = 0; x < 7; ++x) {
        m1 += before[static_cast<std::size_t>(x)];
        m2 += after[static_cast<std::size_t>(x)];
    }
    CHECK(std::abs(m1 - m2) < 1e-9);
}

TEST_CASE("dimension reduction of a constant stays constant") {
    TorusHom phi{7, {1, 3}};
    auto rel = find_relation(phi, 3);
    REQUIRE(rel.has_value());
    TrigPolynomial F(2, {{{0, 0}, cplx(0.25, 0.0)}});
    auto red = reduce_dimension(phi, F, *rel);
    auto vals = red.F.eval_orbit(red.phi);
    for (double v : vals) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("dimension reduction honors the Lipschitz budget dKM") {
    std::mt19937_64 rng(14);
    int reduced = 0;
    while (reduced < 30) {
        std::int64_t p = 101;
        std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 2);
        std::int64_t K = 4 + static_cast<std::int64_t>(rng() % 4);
        TorusHom phi{p, {}};
        for (std::int64_t j = 0; j < d; ++j)
            phi.freqs.push_back(1 + static_cast<std::int64_t>(rng() % (p - 1)));
        auto rel = find_relation(phi, K);
        if (!rel) continue;
        auto F = fejer_kernel(d, 3);
        std::optional<DimensionReduction> red;
        try {
            red = reduce_dimension(phi, F, *rel);
        } catch (const std::invalid_argument&) {
            continue; // degenerate instance (e.g. p divides the completion det)
        }
        double M = F.lipschitz_bound();
        CHECK(red->lipschitz <= static_cast<double>(d) * static_cast<double>(K) * M + 1e-9);
        auto before = F.eval_orbit(phi);
        auto after = red->F.eval_orbit(red->phi);
        for (std::size_t x = 0; x < before.size(); ++x)
            CHECK(std::abs(before[x] - after[x]) < 1e-10);
        ++reduced;
    }
}

TEST_CASE("dimension reduction rejects small moduli") {
    TorusHom phi{3, {1, 2}};
    auto rel = find_relation(phi, 4);
    REQUIRE(rel.has_value());
    auto F = fejer_kernel(2, 2);
    CHECK_THROWS_AS(reduce_dimension(phi, F, *rel), std::invalid_argument);
}

TEST_CASE("dimension reduction rejects an invalid relation") {
    TorusHom phi{101, {1, 3}};
    auto F = fejer_kernel(2, 2);
    CHECK_THROWS_AS(reduce_dimension(phi, F, RelationVector{{1, 1}, 5}), std::invalid_argument);
}

TEST_CASE("modular helpers") {
    CHECK(mod_pow(2, 10, 1009) == 1024 % 1009);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK((mod_inverse(10, 101) * 10) % 101 == 1);
    CHECK_THROWS_AS(mod_inverse(0, 7), std::invalid_argument);
    CHECK(gcd_vec({0, 0}) == 0);
    CHECK(gcd_vec({-4, 6}) == 2);
}
