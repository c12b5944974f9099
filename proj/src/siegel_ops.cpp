#include "paramod/siegel_ops.hpp"

#include <map>
#include <stdexcept>

namespace paramod {

namespace {

void check_prime(i64 p)
{
    if (!is_prime(p))
        throw std::invalid_argument("operator: p = " + std::to_string(p) + " is not prime");
}

void need_vp(i64 N, i64 p, i64 e, char const * op)
{
    if (vp(N, p) < e)
        throw std::domain_error(std::string(op) + ": needs v_p(N) >= " + std::to_string(e) + ", got N = " +
                                std::to_string(N) + ", p = " + std::to_string(p));
}

Scalar pk(i64 p, i64 e) { return Scalar(rpow(p, e)); }

i64 shrink(i64 D, i64 f) { return D <= 0 ? 0 : (D - 1) / f + 1; }

bool divides(i64 d, i64 n) { return n % d == 0; }

} // namespace

Val vadd(Val const & a, Val const & b)
{
    if (!a || !b)
        return std::nullopt;
    return *a + *b;
}

Val vmul(Scalar const & s, Val const & a)
{
    if (!a)
        return std::nullopt;
    return s * *a;
}

Source source_of(FourierExpansion const & F)
{
    auto Fp = std::make_shared<FourierExpansion const>(F);
    return {F.level(), F.weight(), F.bound(), [Fp](RIndex const & S) { return Fp->lookup(S).val(); }};
}

Source memoize(Source const & s)
{
    auto memo = std::make_shared<std::map<RIndex, Val>>();
    Coeff f = s.fn;
    Source r = s;
    r.fn = [memo, f](RIndex const & S) {
        auto it = memo->find(S);
        if (it != memo->end())
            return it->second;
        Val v = f(S);
        memo->emplace(S, v);
        return v;
    };
    return r;
}

std::string op_name(OpKind op)
{
    switch (op) {
    case OpKind::Tau: return "tau";
    case OpKind::Theta: return "theta";
    case OpKind::Eta: return "eta";
    case OpKind::Sigma: return "sigma";
    case OpKind::T01s: return "t01s";
    case OpKind::T10s: return "t10s";
    }
    return "?";
}

OpKind parse_op(std::string const & name)
{
    for (OpKind op : {OpKind::Tau, OpKind::Theta, OpKind::Eta, OpKind::Sigma, OpKind::T01s, OpKind::T10s})
        if (op_name(op) == name)
            return op;
    throw std::invalid_argument("unknown operator '" + name + "' (expected tau, theta, eta, sigma, t01s, t10s)");
}

i64 op_level(OpKind op, i64 N, i64 p)
{
    switch (op) {
    case OpKind::Tau:
    case OpKind::Theta: return N * p;
    case OpKind::Eta: return N * p * p;
    case OpKind::Sigma: return N / p;
    case OpKind::T01s:
    case OpKind::T10s: return N;
    }
    return N;
}

namespace hecke {

bool in_B(RIndex const & S, i64 M)
{
    return S.integral() && S.positive_definite() && S.c % n_s(M) == 0;
}

Coeff T(Coeff a, i64 p)
{
    return [a, p](RIndex const & S) {
        Val s = Scalar(0);
        for (i64 x = 0; x < p && s; ++x)
            s = vadd(s, a(S.bracket_lower(x, 1, p)));
        return s;
    };
}

Coeff T2(Coeff a, i64 p) { return T(T(std::move(a), p), p); }

Coeff delta_plus(Coeff a, i64 t)
{
    return [a, t](RIndex const & S) { return a(S.times(t, 1)); };
}

Coeff delta_minus(Coeff a, i64 t)
{
    return [a, t](RIndex const & S) { return a(S.times(1, t)); };
}

Coeff nabla(Coeff a, i64 t)
{
    return [a, t](RIndex const & S) {
        return a(RIndex(S.a * t * t, S.b * t, S.c, S.den * t * t));
    };
}

Coeff char_mul(Coeff a, i64 M)
{
    return [a, M](RIndex const & S) { return in_B(S, M) ? a(S) : Val(Scalar(0)); };
}

Coeff scale(Coeff a, Scalar s)
{
    return [a, s](RIndex const & S) { return vmul(s, a(S)); };
}

Coeff add(Coeff a, Coeff b)
{
    return [a, b](RIndex const & S) {
        Val x = a(S);
        if (!x)
            return x;
        return vadd(x, b(S));
    };
}

} // namespace hecke

Source tau(Source const & F, i64 p)
{
    check_prime(p);
    i64 M = F.N * p;
    Coeff a = F.fn;
    return {M, F.k, F.D, [a, M](RIndex const & S) -> Val {
                if (!hecke::in_B(S, M))
                    return Scalar(0);
                return a(S);
            }};
}

Source theta(Source const & F, i64 p)
{
    check_prime(p);
    i64 M = F.N * p, Ns = n_s(F.N);
    int k = F.k;
    Coeff a = F.fn;
    Scalar c1 = pk(p, k), c2 = Scalar(p);
    return {M, k, F.D, [=](RIndex const & R) -> Val {
                if (!hecke::in_B(R, M))
                    return Scalar(0);
                QuadIndex S = R.quad();
                Val v = Scalar(0);
                if (divides(Ns * p, S.c)) {
                    if (divides(p, S.a) && divides(p, S.b))
                        v = vadd(v, vmul(c1, a(RIndex(S).times(1, p))));
                    if (v)
                        v = vadd(v, vmul(c2, a(RIndex(S.a * p, S.b, S.c / p))));
                }
                return v;
            }};
}

Source eta(Source const & F, i64 p)
{
    check_prime(p);
    i64 M = F.N * p * p;
    Coeff a = F.fn;
    Scalar c = pk(p, F.k);
    return {M, F.k, F.D * p * p, [=](RIndex const & R) -> Val {
                if (!hecke::in_B(R, M))
                    return Scalar(0);
                QuadIndex S = R.quad();
                if (!divides(p, S.b) || !divides(p * p, S.c))
                    return Scalar(0);
                return vmul(c, a(RIndex(S.a, S.b / p, S.c / (p * p))));
            }};
}

Source sigma(Source const & F, i64 p)
{
    check_prime(p);
    need_vp(F.N, p, 2, "sigma");
    i64 M = F.N / p;
    Coeff a = F.fn;
    Scalar c = pk(p, -F.k - 1);
    return {M, F.k, shrink(F.D, p * p), [=](RIndex const & R) -> Val {
                if (!hecke::in_B(R, M))
                    return Scalar(0);
                Val s = Scalar(0);
                for (i64 x = 0; x < p && s; ++x)
                    s = vadd(s, a(R.bracket_lower(x, 1, p)));
                return vmul(c, s);
            }};
}

Source t01s(Source const & F, i64 p)
{
    check_prime(p);
    need_vp(F.N, p, 1, "t01s");
    i64 M = F.N;
    Coeff a = F.fn;
    Scalar c1 = pk(p, 3 - F.k), c2 = Scalar(p);
    return {M, F.k, shrink(F.D, p * p), [=](RIndex const & R) -> Val {
                if (!hecke::in_B(R, M))
                    return Scalar(0);
                QuadIndex S = R.quad();
                Val v = vmul(c1, a(RIndex(S.a * p, S.b * p, S.c * p)));
                for (i64 y = 0; y < p && v; ++y) {
                    i64 t = S.a + S.b * y + S.c * y * y;
                    if (divides(p, t))
                        v = vadd(v, vmul(c2, a(RIndex(t / p, S.b + 2 * S.c * y, p * S.c))));
                }
                return v;
            }};
}

Source t10s(Source const & F, i64 p)
{
    check_prime(p);
    need_vp(F.N, p, 1, "t10s");
    i64 M = F.N;
    Coeff a = F.fn;
    Scalar c = pk(p, 3 - F.k);
    return {M, F.k, shrink(F.D, p * p), [=](RIndex const & R) -> Val {
                if (!hecke::in_B(R, M))
                    return Scalar(0);
                Val s = Scalar(0);
                for (i64 x = 0; x < p && s; ++x)
                    s = vadd(s, a(R.bracket_lower(x, 1, p)));
                return vmul(c, s);
            }};
}

Source apply_op(OpKind op, Source const & F, i64 p)
{
    switch (op) {
    case OpKind::Tau: return tau(F, p);
    case OpKind::Theta: return theta(F, p);
    case OpKind::Eta: return eta(F, p);
    case OpKind::Sigma: return sigma(F, p);
    case OpKind::T01s: return t01s(F, p);
    case OpKind::T10s: return t10s(F, p);
    }
    throw std::logic_error("apply_op");
}

using namespace hecke;

Source tau_abstract(Source const & F, i64 p)
{
    check_prime(p);
    return {F.N * p, F.k, F.D, char_mul(F.fn, F.N * p)};
}

Source theta_abstract(Source const & F, i64 p)
{
    check_prime(p);
    i64 X = vp(F.N, p) == 0 ? F.N * p * p : F.N * p;
    Coeff t1 = scale(delta_minus(F.fn, p), pk(p, F.k));
    Coeff t2 = scale(char_mul(delta_plus(nabla(F.fn, p), p), X), Scalar(p));
    return {F.N * p, F.k, F.D, add(t1, t2)};
}

Source eta_abstract(Source const & F, i64 p)
{
    check_prime(p);
    return {F.N * p * p, F.k, F.D * p * p, scale(nabla(F.fn, p), pk(p, F.k))};
}

Source sigma_abstract(Source const & F, i64 p)
{
    check_prime(p);
    need_vp(F.N, p, 2, "sigma");
    i64 M = F.N / p;
    return {M, F.k, shrink(F.D, p * p), scale(char_mul(T(F.fn, p), M), pk(p, -F.k - 1))};
}

Source t01s_abstract(Source const & F, i64 p)
{
    check_prime(p);
    need_vp(F.N, p, 1, "t01s");
    Coeff t1 = scale(char_mul(delta_plus(F.fn, p), F.N), pk(p, 3 - F.k));
    Coeff t2 = scale(char_mul(T(delta_minus(F.fn, p), p), F.N), Scalar(p));
    return {F.N, F.k, shrink(F.D, p * p), add(t1, t2)};
}

Source t10s_abstract(Source const & F, i64 p)
{
    check_prime(p);
    need_vp(F.N, p, 1, "t10s");
    return {F.N, F.k, shrink(F.D, p * p), scale(char_mul(T(F.fn, p), F.N), pk(p, 3 - F.k))};
}

Source apply_op_abstract(OpKind op, Source const & F, i64 p)
{
    switch (op) {
    case OpKind::Tau: return tau_abstract(F, p);
    case OpKind::Theta: return theta_abstract(F, p);
    case OpKind::Eta: return eta_abstract(F, p);
    case OpKind::Sigma: return sigma_abstract(F, p);
    case OpKind::T01s: return t01s_abstract(F, p);
    case OpKind::T10s: return t10s_abstract(F, p);
    }
    throw std::logic_error("apply_op_abstract");
}

Source sigma2_abstract(Source const & F, i64 p)
{
    check_prime(p);
    need_vp(F.N, p, 3, "sigma^2");
    i64 M = F.N / (p * p);
    return {M, F.k, shrink(F.D, p * p * p * p), scale(char_mul(T2(F.fn, p), M), pk(p, -2 * F.k - 2))};
}

Source t10s_sigma_abstract(Source const & F, i64 p)
{
    check_prime(p);
    need_vp(F.N, p, 2, "t10s sigma");
    i64 M = F.N / p;
    return {M, F.k, shrink(F.D, p * p * p * p), scale(char_mul(T2(F.fn, p), M), pk(p, 2 - 2 * F.k))};
}

Source t01s_sigma_abstract(Source const & F, i64 p)
{
    check_prime(p);
    need_vp(F.N, p, 2, "t01s sigma");
    i64 M = F.N / p;
    Coeff t1 = scale(char_mul(T(delta_plus(F.fn, p), p), M), pk(p, 2 - 2 * F.k));
    Coeff t2 = scale(char_mul(T2(delta_minus(F.fn, p), p), M), pk(p, -F.k));
    return {M, F.k, shrink(F.D, p * p * p * p), add(t1, t2)};
}

Source t01s_squared_abstract(Source const & F, i64 p)
{
    check_prime(p);
    need_vp(F.N, p, 1, "t01s^2");
    i64 N = F.N;
    Coeff a = F.fn;
    Coeff s = scale(delta_plus(a, p * p), pk(p, 6 - 2 * F.k));
    s = add(s, scale(T(a, p), pk(p, 4 - F.k)));
    // the indicator is shifted, the coefficient is not
    Coeff shifted = [a, N, p](RIndex const & S) { return in_B(S.times(1, p), N) ? a(S) : Val(Scalar(0)); };
    s = add(s, scale(T(shifted, p), pk(p, 4 - F.k)));
    s = add(s, scale(T2(delta_minus(a, p * p), p), Scalar(p * p)));
    return {N, F.k, shrink(F.D, p * p * p * p), char_mul(s, N)};
}

Source add(Source const & a, Source const & b)
{
    if (a.N != b.N || a.k != b.k)
        throw std::invalid_argument("add: level or weight mismatch");
    return {a.N, a.k, std::min(a.D, b.D), hecke::add(a.fn, b.fn)};
}

Source sub(Source const & a, Source const & b) { return add(a, scale(b, Scalar(-1))); }

Source scale(Source const & a, Scalar const & s) { return {a.N, a.k, a.D, hecke::scale(a.fn, s)}; }

std::vector<QuadIndex> orbit_points(i64 N, i64 D)
{
    std::vector<QuadIndex> out;
    for (i64 d = 3; d < D; ++d) {
        if (d % 4 == 1 || d % 4 == 2)
            continue;
        auto keys = orbit_keys(N, d, IndexSet::B);
        out.insert(out.end(), keys.begin(), keys.end());
    }
    return out;
}

FourierExpansion materialize(Source const & s)
{
    FourierExpansion F(s.N, s.k, Space::StableKlingen, s.D);
    for (auto const & S : orbit_points(s.N, s.D)) {
        Val v = s(S);
        if (v)
            F.set(S, *v);
    }
    return F;
}

FourierExpansion apply(FourierExpansion const & F, OpKind op, i64 p)
{
    FourierExpansion out = materialize(apply_op(op, source_of(F), p));
    out.set_field(F.field());
    return out;
}

Comparison compare(Source const & a, Source const & b, std::vector<QuadIndex> const & points)
{
    Comparison c;
    for (auto const & S : points) {
        Val x = a(S);
        if (!x) {
            ++c.skipped;
            continue;
        }
        Val y = b(S);
        if (!y) {
            ++c.skipped;
            continue;
        }
        ++c.checked;
        if (*x != *y)
            c.mismatches.push_back({S, *x, *y});
    }
    return c;
}

} // namespace paramod
