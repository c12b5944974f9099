#include "support.hpp"

#include <doctest.h>

#include <numeric>

using namespace paramod;

namespace {

i64 mod(i64 a, i64 m) { return ((a % m) + m) % m; }

/* values depend only on (4nm - r^2, r mod 2m), so elliptic shifts act trivially */
JacobiExpansion elliptic_random(int k, i64 m, i64 nmax, std::mt19937_64 & rng)
{
    std::map<std::pair<i64, i64>, Scalar> pick;
    std::uniform_int_distribution<int> u(-9, 9);
    JacobiExpansion f;
    f.k = k;
    f.m = m;
    f.nmax = nmax;
    for (i64 n = 0; n <= nmax; ++n)
        for (i64 r = -2 * nmax * m; r <= 2 * nmax * m; ++r) {
            if (r * r > 4 * n * m)
                continue;
            auto key = std::make_pair(4 * n * m - r * r, mod(r, 2 * m));
            auto it = pick.find(key);
            if (it == pick.end())
                it = pick.emplace(key, Scalar(u(rng))).first;
            f.put(n, r, it->second);
        }
    return f;
}

JacobiExpansion plain_random(int k, i64 m, i64 nmax, std::mt19937_64 & rng)
{
    std::uniform_int_distribution<int> u(-9, 9);
    JacobiExpansion f;
    f.k = k;
    f.m = m;
    f.nmax = nmax;
    for (i64 n = 0; n <= nmax; ++n)
        for (i64 r = -2 * nmax * m; r <= 2 * nmax * m; ++r)
            if (r * r <= 4 * n * m)
                f.put(n, r, Scalar(u(rng)));
    return f;
}

/* V_l by the divisor sum over d | gcd(n, r, l) */
Val v_divisor_sum(JacobiExpansion const & f, i64 l, i64 n, i64 r)
{
    i64 g = std::gcd(std::gcd(n, std::abs(r)), l);
    Val s = Scalar(0);
    for (i64 d = 1; d <= g && s; ++d)
        if (g % d == 0)
            s = vadd(s, vmul(Scalar(rpow(d, f.k - 1)), f.get(n * l / (d * d), r / d)));
    return s;
}

bool elliptic_invariant(JacobiExpansion const & f)
{
    for (auto const & [key, v] : f.table) {
        auto [n, r] = key;
        for (i64 lam : {-1, 1}) {
            i64 n2 = n + lam * r + f.m * lam * lam, r2 = r + 2 * f.m * lam;
            Val w = f.get(n2, r2);
            if (w && *w != v)
                return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("u_p")
{
    JacobiExpansion f;
    f.k = 6;
    f.m = 1;
    f.nmax = 2;
    f.put(1, 1, Scalar(3));
    f.put(2, -2, Scalar(5));
    JacobiExpansion g = u_p(f, 2);
    CHECK(g.m == 4);
    CHECK(*g.get(1, 2) == Scalar(3));
    CHECK(*g.get(2, -4) == Scalar(5));
    CHECK(*g.get(1, 1) == Scalar(0));
    CHECK(*g.get(2, 2) == Scalar(0));
}

TEST_CASE("v_p against the divisor sum")
{
    std::mt19937_64 rng(21);
    for (i64 p : {2, 3}) {
        JacobiExpansion f = plain_random(7, 2, 12, rng);
        JacobiExpansion g = v_p(f, p);
        CHECK(g.m == 2 * p);
        CHECK(g.nmax == 12 / p);
        for (i64 n = 0; n <= g.nmax; ++n)
            for (i64 r = -20; r <= 20; ++r)
                if (r * r <= 4 * n * g.m)
                    REQUIRE(g.get(n, r) == v_divisor_sum(f, p, n, r));
    }
}

TEST_CASE("V_2 V_3 = V_3 V_2 = V_6")
{
    std::mt19937_64 rng(22);
    JacobiExpansion f = plain_random(5, 1, 36, rng);
    JacobiExpansion a = v_p(v_p(f, 2), 3), b = v_p(v_p(f, 3), 2);
    CHECK(a.m == 6);
    for (i64 n = 0; n <= 6; ++n)
        for (i64 r = -12; r <= 12; ++r)
            if (r * r <= 24 * n) {
                REQUIRE(a.get(n, r) == b.get(n, r));
                REQUIRE(a.get(n, r) == v_divisor_sum(f, 6, n, r));
            }
}

TEST_CASE("l_csq undoes u_c up to c^(2-k)")
{
    std::mt19937_64 rng(23);
    for (i64 c : {2, 3}) {
        int k = 6;
        JacobiExpansion g = elliptic_random(k, 2, 8, rng);
        JacobiExpansion back = l_csq(u_p(g, c), c);
        CHECK(back.m == 2);
        Scalar w(rpow(c, 2 - k));
        std::size_t seen = 0;
        for (auto const & [key, v] : g.table) {
            Val b = back.get(key.first, key.second);
            if (!b)
                continue;
            ++seen;
            REQUIRE(*b == w * v);
        }
        CHECK(seen > 20);
        CHECK(elliptic_invariant(l_csq(elliptic_random(k, 2 * c * c, 6, rng), c)));
    }
    JacobiExpansion f;
    f.k = 4;
    f.m = 6;
    CHECK_THROWS_AS(l_csq(f, 2), std::domain_error);
}

TEST_CASE("l_csq at a single coefficient")
{
    // m = 4 = 1 * 2^2, k = 5: c'(n,r) = 2^-4 sum_{a=0,1} c(n - a r_a - a^2, 2 r_a), r_a = r - 2a
    JacobiExpansion f;
    f.k = 5;
    f.m = 4;
    f.nmax = 3;
    f.put(1, 2, Scalar(16));
    f.put(1, -2, Scalar(48));
    JacobiExpansion g = l_csq(f, 2);
    CHECK(*g.get(1, 1) == Scalar(4));  // c(1,2) + c(1,-2)
    CHECK(*g.get(1, -1) == Scalar(3)); // c(1,-2) + c(3,-6)
    CHECK(*g.get(1, 0) == Scalar(0));
    CHECK(*g.get(1, 2) == Scalar(0));
    CHECK(*g.get(0, 1) == Scalar(0));
}

TEST_CASE("lprime_p")
{
    JacobiExpansion z;
    z.k = 7;
    z.m = 4;
    z.nmax = 10;
    JacobiExpansion g = lprime_p(z, 2);
    CHECK(g.m == 2);
    CHECK(g.table.size() > 0);
    for (auto const & [key, v] : g.table)
        CHECK(v.is_zero());

    std::mt19937_64 rng(24);
    for (i64 p : {2, 3}) {
        JacobiExpansion f = elliptic_random(7, 2 * p, 12, rng);
        JacobiExpansion h = lprime_p(f, p);
        CHECK(h.m == 2);
        CHECK(elliptic_invariant(h));
        // brute force: p^(3-k) c(np, rp) + p sum over a mod p with p | n_a
        for (i64 n = 0; n <= h.nmax; ++n)
            for (i64 r = -8; r <= 8; ++r) {
                if (r * r > 8 * n)
                    continue;
                Val want = vmul(Scalar(rpow(p, 3 - 7)), f.get(n * p, r * p));
                for (i64 a = 0; a < p; ++a) {
                    i64 ra = r - 4 * a, na = n - a * ra - 2 * a * a;
                    if (na >= 0 && na % p == 0)
                        want = vadd(want, vmul(Scalar(p), f.get(na / p, ra)));
                }
                REQUIRE(h.get(n, r) == want);
            }
    }
    CHECK_THROWS_AS(lprime_p(z, 3), std::domain_error);
}

TEST_CASE("Fourier-Jacobi coefficients of the weight 7 fixture")
{
    FourierExpansion F = read_expansion(ptest::fixture_dir() + "/F-7-16-2.csv");
    JacobiExpansion f = fj_decompose(F, 352, 2);
    CHECK(*f.get(2, -53) == Scalar(1));
    CHECK(*f.get(2, 53) == Scalar(-1));
    // index not divisible by the support modulus
    JacobiExpansion z = fj_decompose(F, 4, 3);
    CHECK(z.table.empty());
    CHECK(*z.get(2, 1) == Scalar(0));
    CHECK(fj_decompose(F, 0, 3).table.empty());
    CHECK_THROWS(fj_decompose(F, -16, 3));
}

TEST_CASE("recompose inverts decompose")
{
    std::mt19937_64 rng(25);
    FourierExpansion F = ptest::random_expansion(8, 6, 200, rng);
    std::vector<std::pair<i64, JacobiExpansion>> parts;
    for (i64 m = 4; m <= 24; m += 4)
        parts.emplace_back(m, fj_decompose(F, m, 6));
    FourierExpansion G = fj_recompose(parts, 8, 6);
    CHECK(G.size() > 0);
    for (auto const & [m, f] : parts)
        for (auto const & [key, v] : f.table) {
            QuadIndex S{key.first, key.second, m};
            if (S.positive_definite())
                CHECK(G.lookup(S).value == v);
        }
    JacobiExpansion bad;
    bad.k = 6;
    bad.m = 2;
    bad.put(1, 1, Scalar(1));
    CHECK_THROWS(fj_recompose({{2, bad}}, 8, 6));
}

TEST_CASE("Jacobi serialization round trip")
{
    std::mt19937_64 rng(26);
    JacobiExpansion f = plain_random(5, 3, 4, rng);
    f.dense = false;
    JacobiExpansion g = deserialize_jacobi(serialize_jacobi(f));
    CHECK(g.k == 5);
    CHECK(g.m == 3);
    CHECK(g.nmax == 4);
    CHECK_FALSE(g.dense);
    CHECK(g.table == f.table);
}

TEST_CASE("bridges on random expansions")
{
    std::mt19937_64 rng(27);
    for (auto [N, D] : {std::pair<i64, i64>{4, 400}, {8, 600}}) {
        Source f = memoize(source_of(ptest::random_expansion(N, 6, D, rng)));
        for (auto const & b : ptest::bridge_names()) {
            if (b == "sigma" && vp(N, 2) < 2)
                continue;
            ptest::Tally t = ptest::check_bridge(b, f, 2, 2);
            INFO(b, " N=", N, " ", t.first_bad);
            CHECK(t.ok());
            CHECK(t.checked > 0);
        }
    }
}
