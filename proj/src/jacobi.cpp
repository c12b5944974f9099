#include "paramod/jacobi.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace paramod {

namespace {

i64 isqrt(i64 n)
{
    if (n <= 0)
        return 0;
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

JacobiExpansion build(int k, i64 m, i64 nmax, std::function<Val(i64, i64)> const & fn)
{
    JacobiExpansion out;
    out.k = k;
    out.m = m;
    out.nmax = nmax;
    bool unknown = false;
    for (i64 n = 0; n <= nmax; ++n) {
        i64 R = isqrt(4 * n * m);
        for (i64 r = -R; r <= R; ++r) {
            Val v = fn(n, r);
            if (!v) {
                unknown = true;
                continue;
            }
            out.table.emplace(std::make_pair(n, r), *v);
        }
    }
    out.dense = !unknown;
    return out;
}

i64 floordiv(i64 a, i64 b)
{
    i64 q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0)))
        --q;
    return q;
}

} // namespace

Val JacobiExpansion::get(i64 n, i64 r) const
{
    if (n < 0 || static_cast<i128>(r) * r > static_cast<i128>(4) * n * m)
        return Scalar(0);
    if (n > nmax)
        return std::nullopt;
    auto it = table.find({n, r});
    if (it != table.end())
        return it->second;
    if (dense)
        return Scalar(0);
    return std::nullopt;
}

void JacobiExpansion::put(i64 n, i64 r, Scalar v)
{
    if (n < 0 || r * r > 4 * n * m)
        throw std::invalid_argument("JacobiExpansion: (" + std::to_string(n) + "," + std::to_string(r) +
                                    ") violates r^2 <= 4nm");
    table[{n, r}] = std::move(v);
    if (n > nmax)
        nmax = n;
}

JacobiExpansion u_p(JacobiExpansion const & f, i64 p)
{
    return build(f.k, f.m * p * p, f.nmax, [&](i64 n, i64 r) -> Val {
        if (r % p)
            return Scalar(0);
        return f.get(n, r / p);
    });
}

JacobiExpansion v_p(JacobiExpansion const & f, i64 p)
{
    Scalar c = Scalar(rpow(p, f.k - 1));
    return build(f.k, f.m * p, floordiv(f.nmax, p), [&](i64 n, i64 r) -> Val {
        Val v = f.get(n * p, r);
        if (n % p == 0 && r % p == 0)
            v = vadd(v, vmul(c, f.get(n / p, r / p)));
        return v;
    });
}

JacobiExpansion l_csq(JacobiExpansion const & f, i64 c)
{
    if (c < 1 || f.m % (c * c))
        throw std::domain_error("l_csq: index " + std::to_string(f.m) + " is not divisible by " +
                                std::to_string(c * c));
    i64 m = f.m / (c * c);
    Scalar w = Scalar(rpow(c, 1 - f.k));
    return build(f.k, m, f.nmax, [&](i64 n, i64 r) -> Val {
        Val s = Scalar(0);
        for (i64 a = 0; a < c && s; ++a) {
            i64 ra = r - 2 * m * a;
            i64 na = n - a * ra - m * a * a;
            if (na < 0)
                continue;
            s = vadd(s, f.get(na, ra * c));
        }
        return vmul(w, s);
    });
}

JacobiExpansion lprime_p(JacobiExpansion const & f, i64 p)
{
    if (p < 1 || f.m % p)
        throw std::domain_error("lprime_p: index " + std::to_string(f.m) + " is not divisible by " +
                                std::to_string(p));
    i64 m = f.m / p;
    Scalar w = Scalar(rpow(p, 3 - f.k));
    return build(f.k, m, floordiv(f.nmax, p), [&](i64 n, i64 r) -> Val {
        Val s = Scalar(0);
        for (i64 a = 0; a < p && s; ++a) {
            i64 ra = r - 2 * a * m;
            i64 t = n - a * ra - m * a * a;
            if (t < 0 || t % p)
                continue;
            s = vadd(s, f.get(t / p, ra));
        }
        s = vmul(Scalar(p), s);
        return vadd(s, vmul(w, f.get(n * p, r * p)));
    });
}

JacobiExpansion jscale(JacobiExpansion f, Scalar const & s)
{
    for (auto & [key, v] : f.table)
        v = s * v;
    return f;
}

JacobiExpansion fj_decompose(Source const & F, i64 m, i64 nmax)
{
    if (m < 0)
        throw std::invalid_argument("fj_decompose: negative index");
    if (m == 0 || m % n_s(F.N)) {
        JacobiExpansion z;
        z.k = F.k;
        z.m = m;
        z.nmax = nmax;
        return z;
    }
    return build(F.k, m, nmax, [&](i64 n, i64 r) { return F(RIndex(n, r, m)); });
}

JacobiExpansion fj_decompose(FourierExpansion const & F, i64 m, i64 nmax)
{
    return fj_decompose(source_of(F), m, nmax);
}

FourierExpansion fj_recompose(std::vector<std::pair<i64, JacobiExpansion>> const & parts, i64 N, int k,
                              Space space)
{
    FourierExpansion F(N, k, space, 1);
    i64 maxd = 0;
    for (auto const & [m, f] : parts) {
        if (f.m != m)
            throw std::invalid_argument("fj_recompose: index label does not match expansion");
        for (auto const & [key, v] : f.table) {
            QuadIndex S{key.first, key.second, m};
            if (!S.positive_definite())
                continue;
            if (!F.in_support(S)) {
                if (!v.is_zero())
                    throw std::invalid_argument("fj_recompose: nonzero coefficient outside the support at " +
                                                S.str());
                continue;
            }
            F.set(S, v);
            maxd = std::max(maxd, S.disc4());
        }
    }
    F.set_bound(maxd + 1);
    return F;
}

std::string serialize_jacobi(JacobiExpansion const & f)
{
    std::ostringstream o;
    o << "# weight=" << f.k << "\n# index=" << f.m << "\n# nmax=" << f.nmax << "\n# dense=" << (f.dense ? 1 : 0)
      << "\n";
    for (auto const & [key, v] : f.table)
        o << key.first << ',' << key.second << ',' << v.str() << "\n";
    return o.str();
}

JacobiExpansion deserialize_jacobi(std::string const & text)
{
    JacobiExpansion f;
    f.dense = true;
    bool have_k = false, have_m = false, have_nmax = false;
    std::istringstream in(text);
    std::string line;
    std::size_t ln = 0;
    i64 maxn = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        line = line.substr(b);
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq == std::string::npos)
                continue;
            std::string key = line.substr(1, eq - 1), val = line.substr(eq + 1);
            key.erase(0, key.find_first_not_of(' '));
            key.erase(key.find_last_not_of(' ') + 1);
            try {
                if (key == "weight")
                    f.k = std::stoi(val), have_k = true;
                else if (key == "index")
                    f.m = std::stoll(val), have_m = true;
                else if (key == "nmax")
                    f.nmax = std::stoll(val), have_nmax = true;
                else if (key == "dense")
                    f.dense = std::stoi(val) != 0;
            } catch (std::exception const &) {
                throw ParseError("line " + std::to_string(ln) + ": bad header value '" + val + "'");
            }
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() != 3)
            throw ParseError("line " + std::to_string(ln) + ": expected n,r,value");
        try {
            i64 n = std::stoll(fields[0]), r = std::stoll(fields[1]);
            if (!have_m)
                throw ParseError("line " + std::to_string(ln) + ": row before '# index=' header");
            f.put(n, r, Scalar::parse(fields[2]));
            maxn = std::max(maxn, n);
        } catch (ParseError const &) {
            throw;
        } catch (std::exception const & e) {
            throw ParseError("line " + std::to_string(ln) + ": " + e.what());
        }
    }
    if (!have_k || !have_m)
        throw ParseError("missing '# weight=' or '# index=' header");
    if (!have_nmax)
        f.nmax = maxn;
    return f;
}

} // namespace paramod
