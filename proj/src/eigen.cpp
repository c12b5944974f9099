#include "paramod/eigen.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

namespace paramod {

namespace {

Scalar pw(i64 p, i64 e) { return Scalar(rpow(p, e)); }

bool divides(i64 m, i64 x) { return x % m == 0; }

i64 qval(QuadIndex const & S, i64 x) { return S.a + S.b * x + S.c * x * x; }

Term term(std::string label, RIndex idx, Scalar w) { return {std::move(label), idx, std::move(w), std::nullopt}; }

void need_level(i64 N, i64 p, i64 need, char const * what)
{
    if (!is_prime(p))
        throw std::domain_error(std::string(what) + ": p = " + std::to_string(p) + " is not prime");
    if (vp(N, p) < need)
        throw std::domain_error(std::string(what) + ": needs v_p(N) >= " + std::to_string(need) + ", got N = " +
                                std::to_string(N) + ", p = " + std::to_string(p));
}

/* discriminants d with d p^(2e) < D that can occur for positive definite indices */
std::vector<i64> discs_below(i64 D, i64 p, int e)
{
    i64 f = 1;
    for (int i = 0; i < 2 * e; ++i)
        f *= p;
    std::vector<i64> out;
    for (i64 d = 3; d * f < D; ++d)
        if (d % 4 == 0 || d % 4 == 3)
            out.push_back(d);
    return out;
}

Witness solve(IdentityForm const & f)
{
    Witness w;
    w.identity = f.id;
    w.S = f.S;
    if (!f.computable()) {
        w.outcome = "skipped";
        return w;
    }
    Scalar a = f.factor_sum(), r = f.rest_sum();
    if (!a.is_zero()) {
        w.outcome = "value";
        w.value = r / a;
    } else
        w.outcome = r.is_zero() ? "zero" : "contradiction";
    return w;
}

/* record w and fold its value into the running extraction */
void absorb(Extraction & ex, Witness const & w, char const * what)
{
    ex.evaluated.push_back(w);
    if (w.outcome != "value")
        return;
    if (!ex.value) {
        ex.value = w.value;
        ex.source = w;
    } else if (*ex.value != *w.value)
        throw DataIntegrityError(std::string(what) + ": witness " + w.S.str() + " gives " + w.value->str() +
                                 " but " + ex.source->S.str() + " gave " + ex.value->str());
}

std::vector<std::pair<i64, QuadIndex>> stored_keys(FourierExpansion const & F)
{
    std::vector<std::pair<i64, QuadIndex>> keys;
    for (auto const & [S, v] : F.table())
        if (divides(F.level(), S.c))
            keys.emplace_back(S.disc4(), S);
    std::sort(keys.begin(), keys.end());
    return keys;
}

} // namespace

bool IdentityForm::computable() const
{
    for (auto const * side : {&factor, &rest})
        for (auto const & t : *side)
            if (!t.value)
                return false;
    return true;
}

std::vector<RIndex> IdentityForm::missing() const
{
    std::vector<RIndex> out;
    for (auto const * side : {&factor, &rest})
        for (auto const & t : *side)
            if (!t.value)
                out.push_back(t.index);
    return out;
}

Scalar IdentityForm::factor_sum() const
{
    Scalar s(0);
    for (auto const & t : factor)
        s += t.weight * t.value.value();
    return s;
}

Scalar IdentityForm::rest_sum() const
{
    Scalar s(0);
    for (auto const & t : rest)
        s += t.weight * t.value.value();
    return s;
}

void IdentityForm::fill(Coeff const & a)
{
    for (auto * side : {&factor, &rest})
        for (auto & t : *side)
            t.value = a(t.index);
}

IdentityForm identity_form(int id, QuadIndex const & S, i64 p, int k, i64 v)
{
    IdentityForm f;
    f.id = id;
    f.S = S;
    f.p = p;
    f.k = k;
    RIndex R(S);
    i64 p2 = p * p;
    auto A = [&](i64 x) { return R.bracket_lower(x, 1, p); };
    switch (id) {
    case kSigma2Sum:
        for (i64 z = 0; z < p2; ++z)
            f.rest.push_back(term("A" + std::to_string(z), R.bracket_lower(z, 1, p2), Scalar(1)));
        break;
    case kMu:
        f.factor.push_back(term("a(S)", R, Scalar(1)));
        for (i64 x = 0; x < p; ++x)
            f.rest.push_back(term("A" + std::to_string(x), A(x), pw(p, 3 - k)));
        if (divides(p, S.b))
            for (i64 x = 0; x < p; ++x)
                f.rest.push_back(term("B" + std::to_string(x), R.bracket_lower(x, p, 1), -Scalar(p)));
        break;
    case kLambda:
        for (i64 x = 0; x < p; ++x)
            f.factor.push_back(term("A" + std::to_string(x), A(x), Scalar(1)));
        for (i64 x = 0; x < p; ++x)
            f.rest.push_back(term("B" + std::to_string(x), A(x).times(p, 1), pw(p, 3 - k)));
        for (i64 z = 0; z < p2; ++z)
            if (divides(p, qval(S, z)))
                f.rest.push_back(term("C" + std::to_string(z), R.bracket_lower(z, 1, p2).times(1, p), Scalar(p)));
        break;
    case kEpsilon:
        for (i64 y = 0; y < p2; ++y)
            f.rest.push_back(term("Y" + std::to_string(y), R.bracket_lower(y, 1, p2), Scalar(1)));
        if (v == 2)
            for (i64 x = 0; x < p; ++x)
                f.factor.push_back(term("A" + std::to_string(x), A(x), pw(p, k - 2)));
        break;
    case kVanish:
        for (i64 x = 0; x < p; ++x)
            f.rest.push_back(term("A" + std::to_string(x), A(x), Scalar(1)));
        break;
    case kLambdaNonEigen:
        f.factor.push_back(term("a(pS)", R.times(p, 1), pw(p, 3 - k)));
        for (i64 x = 0; x < p; ++x)
            if (divides(p, S.a + S.b * x))
                f.factor.push_back(term("A" + std::to_string(x), A(x).times(1, p), Scalar(p)));
        f.rest.push_back(term("a(S)", R, Scalar(p * p2)));
        f.rest.push_back(term("a(p2S)", R.times(p2, 1), pw(p, 6 - 2 * k)));
        for (i64 y = 0; y < p; ++y)
            if (divides(p, S.a + S.b * y))
                f.rest.push_back(term("B" + std::to_string(y), A(y), pw(p, 4 - k)));
        for (i64 z = 0; z < p2; ++z)
            if (divides(p2, qval(S, z)))
                f.rest.push_back(term("C" + std::to_string(z), R.bracket_lower(z, 1, p2).times(1, p2), Scalar(p2)));
        break;
    case kLambdaEigen:
        f.factor.push_back(term("a(S)", R, Scalar(1)));
        f.rest.push_back(term("a(pS)", R.times(p, 1), Scalar(1 + p) * pw(p, 2 - k)));
        for (i64 x = 0; x < p; ++x)
            if (divides(p, S.a + S.b * x))
                f.rest.push_back(term("A" + std::to_string(x), A(x).times(1, p), Scalar(1 + p)));
        break;
    default:
        throw std::invalid_argument("identity_form: unknown identity " + std::to_string(id));
    }
    return f;
}

i64 identity_level(int id, i64 p, i64 N)
{
    switch (id) {
    case kSigma2Sum:
        return N / (p * p);
    case kMu:
        return N * p;
    case kLambda:
    case kEpsilon:
    case kVanish:
        return N / p;
    case kLambdaNonEigen:
    case kLambdaEigen:
        return N;
    default:
        throw std::invalid_argument("identity_level: unknown identity " + std::to_string(id));
    }
}

CongruenceGroup identity_group(int id, i64 p, i64 N)
{
    i64 p2 = p * p;
    std::string tag = "(" + std::to_string(p) + "," + std::to_string(N) + ")";
    switch (id) {
    case kSigma2Sum:
        return CongruenceGroup::custom(p2, std::lcm(p2, N / p2), p2, false, "H1" + tag);
    case kMu:
    case kVanish:
    case kLambdaEigen:
        return CongruenceGroup::custom(p, std::lcm(p2, N), p, false, "Hb" + tag);
    case kLambda:
    case kEpsilon:
    case kLambdaNonEigen:
        return CongruenceGroup::custom(p2, std::lcm(p2, N / p), p2, false, "Hc" + tag);
    default:
        throw std::invalid_argument("identity_group: unknown identity " + std::to_string(id));
    }
}

int identity_disc_exponent(int id)
{
    static int const e[] = {0, 2, 1, 2, 2, 1, 2, 1};
    if (id < 1 || id > 7)
        throw std::invalid_argument("identity_disc_exponent: unknown identity " + std::to_string(id));
    return e[id];
}

std::vector<QuadIndex> identity_reps(int id, i64 p, i64 N, i64 d)
{
    static std::map<std::tuple<int, i64, i64>, CongruenceGroup> groups;
    static std::mutex mu;
    CongruenceGroup const * G;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(id, p, N);
        auto it = groups.find(key);
        if (it == groups.end())
            it = groups.emplace(key, identity_group(id, p, N)).first;
        G = &it->second;
    }
    return orbit_reps(*G, identity_level(id, p, N), d, IndexSet::B);
}

std::string tri_name(Tri t)
{
    switch (t) {
    case Tri::Yes:
        return "true";
    case Tri::No:
        return "false";
    default:
        return "undetermined";
    }
}

std::string global_genericity_name(GlobalGenericity g)
{
    switch (g) {
    case GlobalGenericity::Generic:
        return "Generic";
    case GlobalGenericity::NonGeneric:
        return "NonGeneric";
    default:
        return "Undetermined";
    }
}

std::string status_name(VerdictStatus s)
{
    switch (s) {
    case VerdictStatus::Pass:
        return "Pass";
    case VerdictStatus::Fail:
        return "Fail";
    default:
        return "Skipped";
    }
}

Extraction extract_mu(FourierExpansion const & F, i64 p)
{
    i64 N = F.level();
    need_level(N, p, 2, "extract_mu");
    Source a = memoize(source_of(F));
    auto const & G = identity_group(kMu, p, N);
    std::vector<Mat2> moves;
    for (auto const & r : G.coset_reps())
        if (divides(N, r.c)) {
            moves.push_back(r);
            moves.push_back(Mat2{1, 0, 0, -1} * r);
        }
    Extraction ex;
    for (auto const & [d, K] : stored_keys(F)) {
        (void)d;
        std::set<QuadIndex> seen;
        for (auto const & g : moves) {
            QuadIndex S = act(g, K);
            if (!seen.insert(S).second)
                continue;
            IdentityForm f = identity_form(kMu, S, p, F.weight());
            f.fill(a.fn);
            Witness w = solve(f);
            if (w.outcome == "contradiction")
                throw DataIntegrityError("extract_mu: a(S) = 0 but the right side is " + f.rest_sum().str() +
                                         " at " + S.str());
            absorb(ex, w, "extract_mu");
        }
    }
    return ex;
}

LambdaExtraction extract_lambda(FourierExpansion const & F, i64 p, Scalar const & mu)
{
    i64 N = F.level();
    int k = F.weight();
    need_level(N, p, 2, "extract_lambda");
    Source a = memoize(source_of(F));
    LambdaExtraction ex;
    auto run = [&](int id, Extraction & into, bool contradictions_fatal) {
        for (i64 d : discs_below(F.bound(), p, identity_disc_exponent(id)))
            for (auto const & S : identity_reps(id, p, N, d)) {
                IdentityForm f = identity_form(id, S, p, k);
                f.fill(a.fn);
                Witness w = solve(f);
                if (w.outcome == "contradiction" && contradictions_fatal)
                    throw DataIntegrityError("extract_lambda: identity " + std::to_string(id) +
                                             " has a vanishing left side and nonzero right side at " + S.str());
                absorb(into, w, "extract_lambda");
            }
    };
    if (!mu.is_zero()) {
        run(kLambda, ex, true);
        return ex;
    }

    /* mu = 0: is F an eigenvector of T01s? */
    std::optional<Scalar> ratio;
    std::optional<Witness> ratio_source;
    bool nonzero_c = false, contradiction = false;
    for (i64 d : discs_below(F.bound(), p, identity_disc_exponent(kLambdaEigen)))
        for (auto const & S : identity_reps(kLambdaEigen, p, N, d)) {
            IdentityForm f = identity_form(kLambdaEigen, S, p, k);
            f.fill(a.fn);
            Witness w = solve(f);
            ex.evaluated.push_back(w);
            if (w.outcome == "skipped")
                continue;
            if (!f.rest_sum().is_zero())
                nonzero_c = true;
            if (w.outcome == "contradiction")
                contradiction = true;
            else if (w.outcome == "value") {
                if (!ratio) {
                    ratio = w.value;
                    ratio_source = w;
                } else if (*ratio != *w.value)
                    contradiction = true;
            }
        }
    if (contradiction)
        ex.t01_eigenvector = Tri::No;
    else if (nonzero_c)
        ex.t01_eigenvector = Tri::Yes;

    if (ex.t01_eigenvector == Tri::Yes) {
        ex.value = ratio;
        ex.source = ratio_source;
    } else if (ex.t01_eigenvector == Tri::No)
        run(kLambdaNonEigen, ex, true);
    return ex;
}

Extraction extract_epsilon(FourierExpansion const & F, i64 p, Scalar const & mu)
{
    i64 N = F.level();
    need_level(N, p, 2, "extract_epsilon");
    Extraction ex;
    if (vp(N, p) != 2 || mu.is_zero())
        return ex;
    Source a = memoize(source_of(F));
    for (i64 d : discs_below(F.bound(), p, identity_disc_exponent(kEpsilon)))
        for (auto const & S : identity_reps(kEpsilon, p, N, d)) {
            IdentityForm f = identity_form(kEpsilon, S, p, F.weight(), 2);
            f.fill(a.fn);
            Witness w = solve(f);
            if (w.outcome == "contradiction")
                throw DataIntegrityError("extract_epsilon: vanishing sum against nonzero sum at " + S.str());
            if (w.outcome == "value" && *w.value != Scalar(1) && *w.value != Scalar(-1))
                throw DataIntegrityError("extract_epsilon: ratio " + w.value->str() + " at " + S.str() +
                                         " is not a sign");
            absorb(ex, w, "extract_epsilon");
        }
    return ex;
}

EigenReport eigen_report(FourierExpansion const & F, i64 p)
{
    EigenReport r;
    r.p = p;
    r.N = F.level();
    r.k = F.weight();
    i64 v = vp(r.N, p);
    auto keep = [&](Extraction const & ex) {
        r.witnesses.insert(r.witnesses.end(), ex.evaluated.begin(), ex.evaluated.end());
    };
    Extraction mu = extract_mu(F, p);
    keep(mu);
    r.mu = mu.value;
    r.mu_source = mu.source;
    if (!r.mu)
        return r;
    LambdaExtraction la = extract_lambda(F, p, *r.mu);
    keep(la);
    r.lambda = la.value;
    r.lambda_source = la.source;
    r.t01_eigenvector = la.t01_eigenvector;
    if (!r.mu->is_zero()) {
        Extraction ep = extract_epsilon(F, p, *r.mu);
        keep(ep);
        if (ep.value) {
            r.epsilon = ep.value->rational() > 0 ? 1 : -1;
            r.epsilon_source = ep.source;
        }
    }

    LocalProfile prof;
    prof.q = p;
    prof.N_pi = v;
    prof.mu = *r.mu;
    prof.epsilon = r.epsilon;
    Scalar q(p);
    if (r.mu->is_zero()) {
        if (r.t01_eigenvector == Tri::Undetermined)
            return r;
        prof.lambda = r.lambda.value_or(Scalar(0));
        auto c = classify(prof, r.t01_eigenvector == Tri::Yes);
        r.genericity = c.generic == Genericity::NonGeneric ? GlobalGenericity::NonGeneric : GlobalGenericity::Generic;
        return r;
    }
    if (!r.lambda) {
        /* lambda only matters in the N_pi = 2, mu = q - q^2 corner */
        if (v != 2 || *r.mu != q - q * q)
            r.genericity = GlobalGenericity::Generic;
        return r;
    }
    prof.lambda = *r.lambda;
    auto c = classify(prof, std::nullopt);
    r.genericity = c.generic == Genericity::NonGeneric ? GlobalGenericity::NonGeneric : GlobalGenericity::Generic;
    return r;
}

IdentityVerdict judge(IdentityForm const & f, std::optional<Scalar> const & eigenvalue)
{
    IdentityVerdict v;
    v.id = f.id;
    v.S = f.S;
    if (!f.computable()) {
        v.missing = f.missing();
        return v;
    }
    bool eig_side = !f.factor.empty();
    if (eig_side && !eigenvalue)
        return v;
    v.lhs = eig_side ? *eigenvalue * f.factor_sum() : f.rest_sum();
    v.rhs = eig_side ? f.rest_sum() : Scalar(0);
    v.status = v.lhs == v.rhs ? VerdictStatus::Pass : VerdictStatus::Fail;
    return v;
}

namespace {

void compare_sources(int id, Source const & lhs, Source const & rhs, std::vector<QuadIndex> const & points,
                     std::vector<IdentityVerdict> & out)
{
    for (auto const & S : points) {
        IdentityVerdict v;
        v.id = id;
        v.S = S;
        Val x = lhs(S), y = rhs(S);
        if (!x || !y) {
            v.missing.push_back(RIndex(S));
        } else {
            v.lhs = *x;
            v.rhs = *y;
            v.status = *x == *y ? VerdictStatus::Pass : VerdictStatus::Fail;
        }
        out.push_back(std::move(v));
    }
}

} // namespace

std::vector<IdentityVerdict> verify_identities(FourierExpansion const & F, i64 p, EigenReport const & rep)
{
    i64 N = F.level();
    need_level(N, p, 2, "verify_identities");
    i64 v = vp(N, p);
    int k = F.weight();
    Source a = memoize(source_of(F));
    std::vector<IdentityVerdict> out;

    auto run = [&](int id, std::optional<Scalar> eig, i64 vv) {
        for (i64 d : discs_below(F.bound(), p, identity_disc_exponent(id)))
            for (auto const & S : identity_reps(id, p, N, d)) {
                IdentityForm f = identity_form(id, S, p, k, vv);
                f.fill(a.fn);
                out.push_back(judge(f, eig));
            }
    };

    if (v >= 3)
        run(kSigma2Sum, std::nullopt, v);
    if (rep.mu) {
        run(kMu, rep.mu, v);
        if (!rep.mu->is_zero()) {
            if (rep.lambda)
                run(kLambda, rep.lambda, v);
            if (v > 2)
                run(kEpsilon, std::nullopt, v);
            else if (rep.epsilon)
                run(kEpsilon, Scalar(*rep.epsilon), v);
        } else {
            run(kVanish, std::nullopt, v);
            if (rep.lambda && rep.t01_eigenvector == Tri::No)
                run(kLambdaNonEigen, rep.lambda, v);
            if (rep.lambda && rep.t01_eigenvector == Tri::Yes)
                run(kLambdaEigen, rep.lambda, v);
        }

        Source s = sigma(a, p);
        Source rhs = sub(scale(tau(tau(s, p), p), pw(p, 4)), scale(eta(s, p), pw(p, 2)));
        Source lhs = scale(a, *rep.mu);
        lhs.N = N * p;
        compare_sources(kMuRelation, lhs, rhs, orbit_points(N * p, std::min(rhs.D, F.bound())), out);

        /* B(N) form of the vanishing-sum equivalence */
        Coeff sum = hecke::T(a.fn, p);
        auto pts = orbit_points(N, (F.bound() - 1) / (p * p) + 1);
        if (rep.mu->is_zero()) {
            for (auto const & S : pts) {
                IdentityVerdict vd;
                vd.id = kEquivBN;
                vd.S = S;
                Val x = sum(RIndex(S));
                if (!x)
                    vd.missing.push_back(RIndex(S));
                else {
                    vd.lhs = *x;
                    vd.status = x->is_zero() ? VerdictStatus::Pass : VerdictStatus::Fail;
                }
                out.push_back(std::move(vd));
            }
        } else {
            IdentityVerdict vd;
            vd.id = kEquivBN;
            for (auto const & S : pts) {
                Val x = sum(RIndex(S));
                if (x && !x->is_zero()) {
                    vd.S = S;
                    vd.lhs = *x;
                    vd.status = VerdictStatus::Pass;
                    break;
                }
            }
            out.push_back(std::move(vd));
        }
    }
    if (v >= 3) {
        Source s2 = sigma(sigma(a, p), p);
        Source zero{s2.N, k, s2.D, [](RIndex const &) -> Val { return Scalar(0); }};
        compare_sources(kSigmaSquared, s2, zero, orbit_points(s2.N, s2.D), out);
    }
    return out;
}

std::vector<IdentityVerdict> verify_identities(FourierExpansion const & F, i64 p)
{
    return verify_identities(F, p, eigen_report(F, p));
}

LFactor spin_lfactor(i64 p, int k, Scalar const & lambda, Scalar const & mu)
{
    LFactor L;
    L.p = p;
    L.k = k;
    L.lambda = lambda;
    L.mu = mu;
    L.D = {Scalar(1), -pw(p, k - 3) * lambda, pw(p, 2 * k - 5) * (mu + Scalar(p * p))};
    return L;
}

LFactor spin_lfactor_eigen(i64 p, int k, Scalar const & lambda)
{
    LFactor L;
    L.p = p;
    L.k = k;
    L.lambda = lambda;
    L.mu = Scalar(0);
    L.eigen_case = true;
    L.D = {Scalar(1), -pw(p, k - 2) * lambda / Scalar(1 + p)};
    return L;
}

SPoly lfactor_numerator(LFactor const & L, std::vector<Val> const & series)
{
    std::size_t m = L.D.size() - 1;
    SPoly N;
    for (std::size_t t = 0; t <= m && t < series.size(); ++t) {
        Scalar c(0);
        for (std::size_t j = 0; j <= t; ++j) {
            if (!series[t - j])
                return N;
            c += L.D[j] * *series[t - j];
        }
        N.push_back(c);
    }
    return N;
}

std::vector<IdentityVerdict> radial_check(std::vector<Val> const & series, LFactor const & L, QuadIndex const & S)
{
    std::size_t m = L.D.size() - 1;
    SPoly N = lfactor_numerator(L, series);
    std::vector<IdentityVerdict> out;
    i64 scale = 1;
    for (std::size_t t = 0; t < series.size(); ++t, scale *= L.p) {
        IdentityVerdict v;
        v.id = kRadial;
        v.S = QuadIndex{S.a * scale, S.b * scale, S.c * scale};
        Scalar c(0);
        for (std::size_t j = 0; j <= std::min(t, m); ++j) {
            Val const & x = series[t - j];
            if (!x) {
                i64 back = 1;
                for (std::size_t i = 0; i < t - j; ++i)
                    back *= L.p;
                v.missing.push_back(RIndex(S.a * back, S.b * back, S.c * back));
                continue;
            }
            c += L.D[j] * *x;
        }
        if (v.missing.empty() && (t > m || t < N.size())) {
            v.lhs = c;
            v.rhs = t <= m ? N[t] : Scalar(0);
            v.status = v.lhs == v.rhs ? VerdictStatus::Pass : VerdictStatus::Fail;
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<IdentityVerdict> radial_check(FourierExpansion const & F, QuadIndex const & S, LFactor const & L,
                                          int tmax)
{
    if (!in_index_set(S, F.level(), IndexSet::B))
        throw std::invalid_argument("radial_check: " + S.str() + " is not in B(" + std::to_string(F.level()) + ")+");
    std::vector<Val> series;
    i64 f = 1;
    for (int t = 0; t <= tmax; ++t, f *= L.p)
        series.push_back(F.lookup(QuadIndex{S.a * f, S.b * f, S.c * f}).val());
    return radial_check(series, L, S);
}

} // namespace paramod
