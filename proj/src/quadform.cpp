#include "paramod/quadform.hpp"

#include <cctype>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace paramod {

namespace {

i64 narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("quadform: 64-bit overflow");
    return static_cast<i64>(v);
}

i64 floordiv(i64 a, i64 b)
{
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

i64 isqrt(i64 n)
{
    if (n < 0)
        return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<i128>(r) * r > n)
        --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

Mat2 const J{1, 0, 0, -1};

} // namespace

i64 QuadIndex::disc4() const
{
    return narrow(static_cast<i128>(4) * a * c - static_cast<i128>(b) * b);
}

i64 disc4(QuadIndex const & S) { return S.disc4(); }

bool QuadIndex::positive_definite() const { return a > 0 && disc4() > 0; }

std::string QuadIndex::str() const
{
    std::ostringstream o;
    o << '(' << a << ',' << b << ',' << c << ')';
    return o.str();
}

Mat2 Mat2::operator*(Mat2 const & o) const
{
    return {narrow(static_cast<i128>(a) * o.a + static_cast<i128>(b) * o.c),
            narrow(static_cast<i128>(a) * o.b + static_cast<i128>(b) * o.d),
            narrow(static_cast<i128>(c) * o.a + static_cast<i128>(d) * o.c),
            narrow(static_cast<i128>(c) * o.b + static_cast<i128>(d) * o.d)};
}

Mat2 Mat2::inv() const
{
    i64 D = det();
    if (D != 1 && D != -1)
        throw std::domain_error("Mat2::inv: not unimodular");
    return {d * D, -b * D, -c * D, a * D};
}

std::string Mat2::str() const
{
    std::ostringstream o;
    o << '[' << a << ',' << b << ';' << c << ',' << d << ']';
    return o.str();
}

QuadIndex act(Mat2 const & g, QuadIndex const & S)
{
    auto Q = [&](i128 x, i128 y) { return S.a * x * x + S.b * x * y + S.c * y * y; };
    i128 b = 2 * static_cast<i128>(S.a) * g.a * g.c +
             static_cast<i128>(S.b) * (static_cast<i128>(g.a) * g.d + static_cast<i128>(g.b) * g.c) +
             2 * static_cast<i128>(S.c) * g.b * g.d;
    return {narrow(Q(g.a, g.b)), narrow(b), narrow(Q(g.c, g.d))};
}

i64 vp(i64 n, i64 p)
{
    if (n == 0)
        throw std::domain_error("vp: zero");
    if (p < 2)
        throw std::domain_error("vp: bad prime");
    i64 e = 0;
    n = n < 0 ? -n : n;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

bool is_prime(i64 n)
{
    if (n < 2)
        return false;
    for (i64 q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

i64 n_s(i64 N)
{
    if (N < 1)
        throw std::domain_error("n_s: level must be positive");
    i64 rad = 1, m = N;
    for (i64 q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            rad *= q;
            while (m % q == 0)
                m /= q;
        }
    }
    if (m > 1)
        rad *= m;
    return N / rad;
}

bool in_index_set(QuadIndex const & S, i64 N, IndexSet set)
{
    if (!S.positive_definite())
        return false;
    i64 M = set == IndexSet::A ? N : n_s(N);
    return S.c % M == 0;
}

std::vector<QuadIndex> y_set(i64 d)
{
    if (d <= 0)
        throw std::domain_error("y_set: discriminant must be positive");
    std::vector<QuadIndex> out;
    for (i64 a = 1; 3 * a * a <= d; ++a)
        for (i64 b = -a; b <= a; ++b) {
            if ((d + b * b) % (4 * a) != 0)
                continue;
            i64 c = (d + b * b) / (4 * a);
            if (c >= a)
                out.push_back({a, b, c});
        }
    return out;
}

Reduction reduce(QuadIndex const & S)
{
    if (!S.positive_definite())
        throw std::domain_error("reduce: form is not positive definite " + S.str());
    QuadIndex f = S;
    Mat2 g = Mat2::identity();
    Mat2 const swap{0, 1, -1, 0};
    for (;;) {
        if (f.b <= -f.a || f.b > f.a) {
            i64 t = floordiv(f.a - f.b, 2 * f.a);
            Mat2 h{1, 0, t, 1};
            f = act(h, f);
            g = h * g;
        }
        if (f.a > f.c) {
            f = act(swap, f);
            g = swap * g;
            continue;
        }
        if (f.a == f.c && f.b < 0) {
            f = act(swap, f);
            g = swap * g;
        }
        break;
    }
    return {f, g};
}

Reduction reduce_gl(QuadIndex const & S)
{
    Reduction r1 = reduce(S);
    Reduction r2 = reduce(act(J, S));
    r2.g = r2.g * J;
    return r2.form < r1.form ? r2 : r1;
}

std::vector<std::pair<i64, i64>> represent(QuadIndex const & S, i64 n)
{
    if (!S.positive_definite())
        throw std::domain_error("represent: form is not positive definite");
    std::vector<std::pair<i64, i64>> out;
    if (n < 0)
        return out;
    i64 d = S.disc4();
    i64 Y = isqrt(narrow(static_cast<i128>(4) * S.a * n / d));
    for (i64 y = -Y; y <= Y; ++y) {
        i128 D = static_cast<i128>(4) * S.a * n - static_cast<i128>(d) * y * y;
        if (D < 0)
            continue;
        i64 s = isqrt(narrow(D));
        if (static_cast<i128>(s) * s != D)
            continue;
        for (int sg : {1, -1}) {
            if (sg == -1 && s == 0)
                break;
            i128 num = -static_cast<i128>(S.b) * y + sg * s;
            if (num % (2 * S.a) == 0)
                out.push_back({narrow(num / (2 * S.a)), y});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Mat2> automorphisms(QuadIndex const & R, bool allow_neg)
{
    std::vector<Mat2> out;
    auto rows1 = represent(R, R.a);
    auto rows2 = represent(R, R.c);
    for (auto [p, q] : rows1)
        for (auto [r, s] : rows2) {
            Mat2 u{p, q, r, s};
            i64 D = u.det();
            if (D != 1 && !(allow_neg && D == -1))
                continue;
            if (act(u, R) == R)
                out.push_back(u);
        }
    std::sort(out.begin(), out.end());
    return out;
}

CongruenceGroup CongruenceGroup::custom(i64 bmod, i64 cmod, i64 admod, bool pm, std::string name)
{
    if (bmod < 1 || cmod < 1 || admod < 1)
        throw std::invalid_argument("CongruenceGroup: moduli must be positive");
    CongruenceGroup G;
    G.kind_ = Kind::Custom;
    G.bmod_ = bmod;
    G.cmod_ = cmod;
    G.admod_ = admod;
    G.pm_ = pm;
    G.level_ = std::lcm(std::lcm(bmod, cmod), admod);
    G.name_ = std::move(name);
    return G;
}

CongruenceGroup CongruenceGroup::sl2z()
{
    auto G = custom(1, 1, 1, false, "SL2Z");
    G.kind_ = Kind::SL2Z;
    return G;
}

CongruenceGroup CongruenceGroup::gamma0(i64 N)
{
    auto G = custom(1, N, 1, false, "Gamma0(" + std::to_string(N) + ")");
    G.kind_ = Kind::Gamma0;
    return G;
}

CongruenceGroup CongruenceGroup::gamma0pm(i64 N)
{
    auto G = custom(1, N, 1, true, "Gamma0(" + std::to_string(N) + ")+-");
    G.kind_ = Kind::Gamma0pm;
    return G;
}

CongruenceGroup CongruenceGroup::g1()
{
    auto G = custom(4, 4, 4, false, "G1");
    G.kind_ = Kind::G1;
    return G;
}

CongruenceGroup CongruenceGroup::g2()
{
    auto G = custom(2, 16, 2, false, "G2");
    G.kind_ = Kind::G2;
    return G;
}

CongruenceGroup CongruenceGroup::g3()
{
    auto G = custom(4, 8, 4, false, "G3");
    G.kind_ = Kind::G3;
    return G;
}

CongruenceGroup CongruenceGroup::principal(i64 N)
{
    auto G = custom(N, N, N, false, "Gamma(" + std::to_string(N) + ")");
    G.principal_ = N;
    G.kind_ = Kind::Gamma;
    return G;
}

CongruenceGroup CongruenceGroup::parse(std::string const & text)
{
    std::string name = text, arg;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        name = text.substr(0, colon);
        arg = text.substr(colon + 1);
    }
    for (auto & ch : name)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    auto level = [&] {
        if (arg.empty())
            throw std::invalid_argument("group " + name + " needs a level, e.g. " + name + ":16");
        return static_cast<i64>(std::stoll(arg));
    };
    if (name == "sl2z")
        return sl2z();
    if (name == "g1")
        return g1();
    if (name == "g2")
        return g2();
    if (name == "g3")
        return g3();
    if (name == "gamma0")
        return gamma0(level());
    if (name == "gamma0pm")
        return gamma0pm(level());
    if (name == "gamma")
        return principal(level());
    throw std::invalid_argument("unknown group '" + text + "' (SL2Z, G1, G2, G3, gamma0:N, gamma0pm:N, gamma:N)");
}

std::string CongruenceGroup::name() const { return name_; }

bool CongruenceGroup::contains_sl(Mat2 const & g) const
{
    if (g.det() != 1)
        return false;
    if (mod(g.b, bmod_) || mod(g.c, cmod_) || mod(g.a - g.d, admod_))
        return false;
    if (principal_ > 1 && mod(g.a - 1, principal_))
        return false;
    return true;
}

bool CongruenceGroup::contains(Mat2 const & g) const
{
    i64 D = g.det();
    if (D == 1)
        return contains_sl(g);
    if (D == -1 && pm_)
        return contains_sl(J * g);
    return false;
}

std::vector<Mat2> const & CongruenceGroup::coset_reps() const
{
    if (reps_)
        return *reps_;
    auto reps = std::make_shared<std::vector<Mat2>>();
    reps->push_back(Mat2::identity());
    std::vector<Mat2> inverses{Mat2::identity()};
    Mat2 const gens[2] = {{0, -1, 1, 0}, {1, 1, 0, 1}};
    for (std::size_t i = 0; i < reps->size(); ++i) {
        for (auto const & s : gens) {
            Mat2 m = (*reps)[i] * s;
            bool found = false;
            for (auto const & ri : inverses)
                if (contains_sl(m * ri)) {
                    found = true;
                    break;
                }
            if (!found) {
                reps->push_back(m);
                inverses.push_back(m.inv());
            }
        }
    }
    reps_ = reps;
    return *reps_;
}

std::size_t CongruenceGroup::coset_of(Mat2 const & m) const
{
    auto const & reps = coset_reps();
    for (std::size_t j = 0; j < reps.size(); ++j)
        if (contains(m * reps[j].inv()))
            return j;
    throw std::logic_error("coset_of: no coset for " + m.str());
}

std::vector<Mat2> coset_reps(CongruenceGroup const & G) { return G.coset_reps(); }

namespace {

Reduction reduce_for(QuadIndex const & S, CongruenceGroup const & G)
{
    return G.allows_negative() ? reduce_gl(S) : reduce(S);
}

} // namespace

OrbitKey orbit_key(QuadIndex const & S, CongruenceGroup const & G)
{
    Reduction rd = reduce_for(S, G);
    QuadIndex const & R = rd.form;
    Mat2 m = rd.g.inv();
    auto const & reps = G.coset_reps();
    std::optional<OrbitKey> best;
    for (auto const & u : automorphisms(R, G.allows_negative())) {
        Mat2 mu = m * u;
        std::size_t j = G.coset_of(mu);
        QuadIndex T = act(reps[j], R);
        if (!best || T < best->key)
            best = OrbitKey{T, mu * reps[j].inv()};
    }
    return *best;
}

bool has_negative_stabilizer(QuadIndex const & S, CongruenceGroup const & G)
{
    if (!G.allows_negative())
        return false;
    Reduction rd = reduce_gl(S);
    Mat2 m = rd.g.inv();
    for (auto const & u : automorphisms(rd.form, true))
        if (u.det() == -1 && G.contains(m * u * rd.g))
            return true;
    return false;
}

std::optional<Mat2> equivalent(QuadIndex const & S1, QuadIndex const & S2,
                               CongruenceGroup const & G)
{
    if (!S1.positive_definite() || !S2.positive_definite())
        throw std::domain_error("equivalent: forms must be positive definite");
    if (S1.disc4() != S2.disc4())
        return std::nullopt;
    Reduction r1 = reduce_for(S1, G), r2 = reduce_for(S2, G);
    if (r1.form != r2.form)
        return std::nullopt;
    Mat2 back = r2.g.inv();
    for (auto const & u : automorphisms(r1.form, G.allows_negative())) {
        Mat2 g = back * u * r1.g;
        if (G.contains(g))
            return g;
    }
    return std::nullopt;
}

std::vector<QuadIndex> orbit_reps(CongruenceGroup const & G, i64 N, i64 d, IndexSet set)
{
    std::map<QuadIndex, QuadIndex> best;
    for (auto const & y : y_set(d))
        for (auto const & r : G.coset_reps()) {
            QuadIndex T = act(r, y);
            if (!in_index_set(T, N, set))
                continue;
            QuadIndex k = orbit_key(T, G).key;
            auto it = best.find(k);
            if (it == best.end())
                best.emplace(k, T);
            else if (T < it->second)
                it->second = T;
        }
    std::vector<QuadIndex> out;
    for (auto const & [k, v] : best)
        out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace paramod
