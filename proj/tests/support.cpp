#include "support.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace ptest {

std::string fixture_dir()
{
    if (char const * s = std::getenv("PARAMOD_FIXTURES"))
        return s;
#ifdef PARAMOD_FIXTURE_DIR
    return PARAMOD_FIXTURE_DIR;
#else
    return "fixtures";
#endif
}

FourierExpansion random_expansion(i64 N, int k, i64 D, std::mt19937_64 & rng, int range, Space space)
{
    FourierExpansion F(N, k, space, D);
    std::uniform_int_distribution<int> u(-range, range);
    for (auto const & S : orbit_points(N, D)) {
        if (!F.in_support(S))
            continue;
        if (k % 2 && canonical(S, N).negative_stabilizer) {
            F.set(S, Scalar(0));
            continue;
        }
        F.set(S, Scalar(u(rng)));
    }
    return F;
}

void Tally::merge(Tally const & o)
{
    checked += o.checked;
    skipped += o.skipped;
    bad += o.bad;
    if (first_bad.empty())
        first_bad = o.first_bad;
}

Tally check_equal(Source const & a, Source const & b, i64 cap)
{
    if (a.N != b.N)
        throw std::logic_error("check_equal: levels differ");
    Comparison c = compare(memoize(a), memoize(b), orbit_points(a.N, std::min({a.D, b.D, cap})));
    Tally t;
    t.checked = c.checked;
    t.skipped = c.skipped;
    t.bad = c.mismatches.size();
    if (!c.ok()) {
        auto const & m = c.mismatches.front();
        t.first_bad = m.S.str() + ": " + m.lhs.str() + " != " + m.rhs.str();
    }
    return t;
}

std::vector<Relation> const & relations()
{
    static std::vector<Relation> const r = [] {
        auto P = [](i64 p, int e) { return Scalar(rpow(p, e)); };
        std::vector<Relation> v;
        v.push_back({"theta tau = tau theta", 0, [](Source const & f, i64 p) {
                         return std::make_pair(theta(tau(f, p), p), tau(theta(f, p), p));
                     }});
        v.push_back({"T01s T10s = T10s T01s", 1, [](Source const & f, i64 p) {
                         return std::make_pair(t01s(t10s(f, p), p), t10s(t01s(f, p), p));
                     }});
        v.push_back({"T01s = p^2 sigma theta", 1, [P](Source const & f, i64 p) {
                         return std::make_pair(t01s(f, p), scale(sigma(theta(f, p), p), P(p, 2)));
                     }});
        v.push_back({"T10s = p^4 sigma tau", 1, [P](Source const & f, i64 p) {
                         return std::make_pair(t10s(f, p), scale(sigma(tau(f, p), p), P(p, 4)));
                     }});
        v.push_back({"T10s = p^4 tau sigma", 2, [P](Source const & f, i64 p) {
                         return std::make_pair(t10s(f, p), scale(tau(sigma(f, p), p), P(p, 4)));
                     }});
        v.push_back({"T01s tau = tau T01s", 0, [](Source const & f, i64 p) {
                         return std::make_pair(t01s(tau(f, p), p), tau(t01s(f, p), p));
                     }});
        v.push_back({"T10s tau = tau T10s", 0, [](Source const & f, i64 p) {
                         return std::make_pair(t10s(tau(f, p), p), tau(t10s(f, p), p));
                     }});
        v.push_back({"T10s theta = p^2 T01s tau", 0, [P](Source const & f, i64 p) {
                         return std::make_pair(t10s(theta(f, p), p), scale(t01s(tau(f, p), p), P(p, 2)));
                     }});
        v.push_back({"T01s theta = theta T01s + p^3 tau - p^3 eta sigma", 2, [P](Source const & f, i64 p) {
                         Source rhs = sub(add(theta(t01s(f, p), p), scale(tau(f, p), P(p, 3))),
                                          scale(eta(sigma(f, p), p), P(p, 3)));
                         return std::make_pair(t01s(theta(f, p), p), rhs);
                     }});
        return v;
    }();
    return r;
}

bool op_applicable(OpKind op, i64 v)
{
    if (op == OpKind::Sigma)
        return v >= 2;
    if (op == OpKind::T01s || op == OpKind::T10s)
        return v >= 1;
    return true;
}

Tally check_abstract(Source const & f, i64 p, OpKind op, i64 cap)
{
    return check_equal(apply_op(op, f, p), apply_op_abstract(op, f, p), cap);
}

namespace {

Tally compare_jacobi(Source const & lhs, i64 m, JacobiExpansion const & rhs, i64 nmax)
{
    Tally t;
    for (i64 n = 0; n <= nmax; ++n) {
        i64 R = static_cast<i64>(std::sqrt(4.0 * static_cast<double>(n * m))) + 1;
        for (i64 r = -R; r <= R; ++r) {
            if (r * r > 4 * n * m)
                continue;
            Val a = lhs(RIndex(n, r, m));
            Val b = rhs.get(n, r);
            if (!a || !b) {
                ++t.skipped;
                continue;
            }
            ++t.checked;
            if (*a != *b) {
                if (!t.bad)
                    t.first_bad = "m=" + std::to_string(m) + " (n,r)=(" + std::to_string(n) + "," + std::to_string(r) +
                                  "): " + a->str() + " != " + b->str();
                ++t.bad;
            }
        }
    }
    return t;
}

} // namespace

std::vector<std::string> const & bridge_names()
{
    static std::vector<std::string> const n = {"sigma", "t10s", "t01s", "eta", "theta", "tau"};
    return n;
}

Tally check_bridge(std::string const & name, Source const & f, i64 p, i64 nmax)
{
    i64 N = f.N;
    Tally t;
    if (name == "sigma" || name == "t10s" || name == "t01s") {
        Source g = memoize(name == "sigma" ? sigma(f, p) : name == "t10s" ? t10s(f, p) : t01s(f, p));
        i64 Ns = n_s(g.N);
        for (i64 m = Ns; m <= 2 * N; m += Ns) {
            JacobiExpansion rhs;
            if (name == "sigma")
                rhs = jscale(l_csq(fj_decompose(f, m * p * p, nmax), p), Scalar(rpow(p, -2)));
            else if (name == "t10s")
                rhs = jscale(l_csq(fj_decompose(f, m * p * p, nmax), p), Scalar(p * p));
            else
                rhs = lprime_p(fj_decompose(f, m * p, nmax * p), p);
            t.merge(compare_jacobi(g, m, rhs, nmax));
        }
    } else if (name == "eta") {
        Source g = memoize(eta(f, p));
        for (i64 m : {N * p * p, 2 * N * p * p})
            t.merge(compare_jacobi(g, m, jscale(u_p(fj_decompose(f, m / (p * p), nmax), p), Scalar(rpow(p, f.k))),
                                   nmax));
    } else if (name == "theta") {
        Source g = memoize(theta(f, p));
        for (i64 m : {N * p, 2 * N * p})
            t.merge(compare_jacobi(g, m, jscale(v_p(fj_decompose(f, m / p, nmax * p), p), Scalar(p)), nmax));
    } else if (name == "tau") {
        Source g = memoize(tau(f, p));
        i64 Ns = n_s(N);
        i64 pv = 1;
        for (i64 i = 0; i < vp(N, p); ++i)
            pv *= p;
        for (i64 m = Ns; m <= 2 * N; m += Ns) {
            JacobiExpansion rhs = fj_decompose(f, m, nmax);
            if (m % pv) {
                rhs.table.clear();
                rhs.dense = true;
            }
            t.merge(compare_jacobi(g, m, rhs, nmax));
        }
    } else {
        throw std::invalid_argument("unknown bridge " + name);
    }
    return t;
}

std::vector<RowOutcome> check_printed_tables(std::string const & json_path, std::string const & dir)
{
    using nlohmann::json;
    std::ifstream in(json_path);
    if (!in)
        throw std::runtime_error("cannot open " + json_path);
    json doc = json::parse(in);
    i64 p = doc["p"];
    std::map<std::string, FourierExpansion> forms;
    for (auto const & [name, meta] : doc["forms"].items()) {
        int k = meta["weight"];
        i64 N = meta["level"];
        forms[name] = read_expansion(dir + "/F-" + std::to_string(k) + "-" + std::to_string(N) + "-2.csv");
    }
    std::vector<RowOutcome> out;
    for (auto const & t : doc["tables"]) {
        std::string fname = t["form"];
        FourierExpansion const & F = forms.at(fname);
        Source src = source_of(F);
        int id = t["identity"];
        for (auto const & r : t["rows"]) {
            RowOutcome o;
            o.table = t["name"];
            o.form = fname;
            o.S = {r["S"][0], r["S"][1], r["S"][2]};
            o.printed = r["result"];
            IdentityForm f = identity_form(id, o.S, p, F.weight(), vp(F.level(), p));
            f.fill(src.fn);
            bool terms_ok = true;
            for (auto const & [label, v] : r["terms"].items()) {
                if (v.is_null())
                    continue;
                Scalar printed = Scalar::parse(v.get<std::string>());
                Term const * hit = nullptr;
                for (auto const * side : {&f.factor, &f.rest})
                    for (auto const & tm : *side)
                        if (tm.label == label)
                            hit = &tm;
                if (hit && !hit->value) {
                    terms_ok = false;
                    o.detail += label + " not computable; ";
                    continue;
                }
                Scalar got = hit ? *hit->value : Scalar(0);
                if (got != printed) {
                    terms_ok = false;
                    o.detail += label + "=" + got.str() + " printed " + printed.str() + "; ";
                }
            }
            if (!f.computable()) {
                o.computed = "skipped";
            } else if (f.factor.empty()) {
                o.computed = f.rest_sum().str();
            } else {
                Scalar a = f.factor_sum(), b = f.rest_sum();
                if (a.is_zero())
                    o.computed = b.is_zero() ? (id == kLambdaEigen ? "0=0" : "*") : "contradiction";
                else
                    o.computed = (b / a).str();
            }
            o.ok = terms_ok && o.computed == o.printed;
            out.push_back(std::move(o));
        }
    }
    return out;
}

std::vector<Val> radial_series(LFactor const & L, std::vector<Scalar> const & seeds, int tmax)
{
    std::vector<Scalar> a = seeds;
    while (static_cast<int>(a.size()) <= tmax) {
        std::size_t t = a.size();
        Scalar next(0);
        for (std::size_t j = 1; j < L.D.size() && j <= t; ++j)
            next -= L.D[j] * a[t - j];
        a.push_back(next);
    }
    a.resize(tmax + 1);
    return {a.begin(), a.end()};
}

bool radial_pass(std::vector<Val> const & series, LFactor const & L)
{
    for (auto const & v : radial_check(series, L))
        if (v.status != VerdictStatus::Pass)
            return false;
    return true;
}

} // namespace ptest
