#include "paramod/eigen.hpp"
#include "paramod/jacobi.hpp"
#include "paramod/localrep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using namespace paramod;
using nlohmann::json;

namespace {

QuadIndex parse_S(std::string const & s)
{
    std::vector<std::string> f = split_fields(s);
    if (f.size() != 3)
        throw std::invalid_argument("expected a,b,c with b = 2*beta, got '" + s + "'");
    return {std::stoll(f[0]), std::stoll(f[1]), std::stoll(f[2])};
}

json jS(QuadIndex const & S) { return json::array({S.a, S.b, S.c}); }

json jM(Mat2 const & g) { return json::array({json::array({g.a, g.b}), json::array({g.c, g.d})}); }

json jR(RIndex const & R)
{
    if (R.integral())
        return json::array({R.a, R.b, R.c});
    return {{"index", json::array({R.a, R.b, R.c})}, {"den", R.den}};
}

std::string digest(std::vector<std::string> const & parts)
{
    std::uint64_t h = 1469598103934665603ull;
    for (auto const & s : parts) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    }
    std::ostringstream o;
    o << std::hex << h;
    return o.str();
}

std::string slurp(std::string const & path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream o;
    o << in.rdbuf();
    return o.str();
}

json witness_json(std::optional<Witness> const & w)
{
    if (!w)
        return nullptr;
    json j = {{"identity", w->identity}, {"S", jS(w->S)}, {"outcome", w->outcome}};
    j["value"] = w->value ? json(w->value->str()) : json(nullptr);
    return j;
}

json tri_json(Tri t)
{
    if (t == Tri::Undetermined)
        return nullptr;
    return t == Tri::Yes;
}

json verdict_json(IdentityVerdict const & v)
{
    json j = {{"identity", v.id}, {"S", jS(v.S)}, {"status", status_name(v.status)}};
    if (v.status == VerdictStatus::Fail) {
        j["lhs"] = v.lhs.str();
        j["rhs"] = v.rhs.str();
    }
    if (v.status == VerdictStatus::Skipped) {
        json m = json::array();
        for (auto const & r : v.missing)
            m.push_back(jR(r));
        j["missing"] = m;
    }
    return j;
}

json poly_json(SPoly const & P)
{
    json j = json::array();
    for (auto const & c : P)
        j.push_back(c.str());
    return j;
}

int workers()
{
    if (char const * s = std::getenv("PARAMOD_WORKERS")) {
        int w = std::atoi(s);
        if (w > 0)
            return w;
    }
    return 1;
}

struct Ctx
{
    std::string out = "json";
    std::string command;
    std::vector<std::string> inputs;
};

void emit(Ctx const & ctx, json results, std::string const & text, json warnings = json::object())
{
    if (ctx.out == "text") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << '\n';
        return;
    }
    json r = {{"command", ctx.command}, {"inputs_digest", digest(ctx.inputs)}};
    for (auto & [k, v] : results.items())
        r[k] = v;
    r["warnings"] = warnings;
    std::cout << r.dump(2) << '\n';
}

int tally(std::vector<IdentityVerdict> const & vs, json & summary)
{
    int pass = 0, fail = 0, skip = 0;
    for (auto const & v : vs) {
        if (v.status == VerdictStatus::Pass)
            ++pass;
        else if (v.status == VerdictStatus::Fail)
            ++fail;
        else
            ++skip;
    }
    summary = {{"pass", pass}, {"fail", fail}, {"skipped", skip}};
    return fail;
}

LFactor lfactor_of(EigenReport const & r)
{
    if (!r.mu || !r.lambda)
        throw std::runtime_error("eigenvalues could not be determined from the data");
    if (r.mu->is_zero() && r.t01_eigenvector == Tri::Yes)
        return spin_lfactor_eigen(r.p, r.k, *r.lambda);
    return spin_lfactor(r.p, r.k, *r.lambda, *r.mu);
}

json lfactor_json(LFactor const & L)
{
    return {{"p", L.p}, {"k", L.k}, {"lambda", L.lambda.str()}, {"mu", L.mu.str()},
            {"eigen_case", L.eigen_case}, {"D", poly_json(L.D)}, {"D_text", spoly_str(L.D)}};
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Fourier-coefficient algebra of paramodular and stable Klingen Siegel forms"};
    app.require_subcommand(1);
    Ctx ctx;
    app.add_option("--out", ctx.out, "json or text")->check(CLI::IsMember({"json", "text"}));

    std::string S_text, T_text, group = "SL2Z", file, op, outfile, space, set = "A";
    i64 p = 2, d = 0, N = 1, m = 0, nmax = 10, dmax = 0;
    int k = 0, tmax = 8;
    bool doubled = false, eigen_case = false;
    std::optional<i64> bound;
    std::string lambda_s, mu_s;
    std::optional<int> eps;
    std::optional<std::string> t01;
    i64 q = 2, Npi = 2;

    auto * c_reduce = app.add_subcommand("reduce", "SL(2,Z)-reduce a positive definite form");
    c_reduce->add_option("--S", S_text, "a,b,c with b = 2*beta")->required();

    auto * c_ydset = app.add_subcommand("ydset", "forms with 4ac - b^2 = d, 0 < a <= c, |b| <= a");
    c_ydset->add_option("d", d)->required();

    auto * c_orbits = app.add_subcommand("orbits", "orbit representatives of an index set under a group");
    c_orbits->add_option("--group", group, "SL2Z, G1, G2, G3, gamma0:N, gamma0pm:N, gamma:N");
    c_orbits->add_option("--N", N, "level of the index set")->required();
    c_orbits->add_option("--d", d, "single discriminant");
    c_orbits->add_option("--dmax", dmax, "all discriminants below this bound");
    c_orbits->add_option("--set", set, "A or B")->check(CLI::IsMember({"A", "B"}));
    bool count_only = false;
    c_orbits->add_flag("--count", count_only, "print counts only");
    bool cosets = false;
    c_orbits->add_flag("--cosets", cosets, "also report the coset count of the group");

    auto * c_equiv = app.add_subcommand("equiv", "test equivalence of two forms under a group");
    c_equiv->add_option("--S", S_text)->required();
    c_equiv->add_option("--T", T_text)->required();
    c_equiv->add_option("--group", group);

    auto * c_ingest = app.add_subcommand("ingest", "validate and canonicalize a coefficient file");
    c_ingest->add_option("file", file)->required()->check(CLI::ExistingFile);
    c_ingest->add_flag("--doubled", doubled, "rows list (2 alpha, 2 beta, 2 gamma)");
    c_ingest->add_option("--bound", bound);
    c_ingest->add_option("-o,--output", outfile);

    auto * c_apply = app.add_subcommand("apply", "apply an upper-block operator");
    c_apply->add_option("--op", op, "tau, theta, eta, sigma, t01s, t10s")->required();
    c_apply->add_option("--p", p)->required();
    c_apply->add_option("file", file)->required()->check(CLI::ExistingFile);
    c_apply->add_option("-o,--output", outfile);
    c_apply->add_option("--space", space, "read the input as paramodular or stableklingen");

    auto * c_fj = app.add_subcommand("fj", "Fourier-Jacobi coefficient of a given index");
    c_fj->add_option("--m", m)->required();
    c_fj->add_option("--nmax", nmax);
    c_fj->add_option("file", file)->required()->check(CLI::ExistingFile);
    c_fj->add_option("--space", space);

    auto * c_eigen = app.add_subcommand("eigen", "extract lambda_p, mu_p, epsilon_p");
    c_eigen->add_option("--p", p)->required();
    c_eigen->add_option("file", file)->required()->check(CLI::ExistingFile);

    auto * c_verify = app.add_subcommand("verify", "evaluate the coefficient identities");
    c_verify->add_option("--p", p)->required();
    c_verify->add_option("file", file)->required()->check(CLI::ExistingFile);
    bool show_all = false;
    c_verify->add_flag("--all", show_all, "list Pass and Skipped verdicts too");

    auto * c_lfactor = app.add_subcommand("lfactor", "spin L-factor denominator at p");
    c_lfactor->add_option("--p", p)->required();
    c_lfactor->add_option("--k", k);
    c_lfactor->add_option("--lambda", lambda_s);
    c_lfactor->add_option("--mu", mu_s);
    c_lfactor->add_flag("--eigen", eigen_case, "T01s eigenvector case (mu = 0)");
    c_lfactor->add_option("file", file, "derive the eigenvalues from a coefficient file")->check(CLI::ExistingFile);

    auto * c_rec = app.add_subcommand("recurrence", "check the radial recurrence along p^t S");
    c_rec->add_option("--p", p)->required();
    c_rec->add_option("--S", S_text)->required();
    c_rec->add_option("--tmax", tmax);
    c_rec->add_option("file", file)->required()->check(CLI::ExistingFile);

    auto * c_classify = app.add_subcommand("classify", "category and genericity of a local profile");
    c_classify->add_option("--q", q)->required();
    c_classify->add_option("--N", Npi)->required();
    c_classify->add_option("--lambda", lambda_s)->required();
    c_classify->add_option("--mu", mu_s)->required();
    c_classify->add_option("--epsilon", eps)->check(CLI::IsMember({-1, 1}));
    c_classify->add_option("--t01-eigen", t01)->check(CLI::IsMember({"true", "false"}));

    CLI11_PARSE(app, argc, argv);

    CLI::App * sub = app.get_subcommands().front();
    ctx.command = sub->get_name();
    for (int i = 1; i < argc; ++i)
        ctx.inputs.push_back(argv[i]);

    auto load = [&](std::string const & path) {
        ctx.inputs.push_back(slurp(path));
        FourierExpansion F = read_expansion(path);
        if (!space.empty() && parse_space(space) != F.space()) {
            FourierExpansion G(F.level(), F.weight(), parse_space(space), F.bound(), F.field());
            for (auto const & [S, v] : F.table())
                G.set(S, v);
            return G;
        }
        return F;
    };

    try {
        if (sub == c_reduce) {
            QuadIndex S = parse_S(S_text);
            Reduction r = reduce(S);
            emit(ctx, {{"S", jS(S)}, {"disc4", S.disc4()}, {"form", jS(r.form)}, {"g", jM(r.g)}},
                 r.form.str() + "  g=" + r.g.str());
        } else if (sub == c_ydset) {
            json list = json::array();
            std::string text;
            for (auto const & S : y_set(d)) {
                list.push_back(jS(S));
                text += S.str() + "\n";
            }
            emit(ctx, {{"d", d}, {"forms", list}}, text);
        } else if (sub == c_orbits) {
            CongruenceGroup G = CongruenceGroup::parse(group);
            IndexSet is = set == "A" ? IndexSet::A : IndexSet::B;
            std::vector<i64> ds;
            if (dmax > 0) {
                for (i64 e = 1; e < dmax; ++e)
                    if (e % 4 == 0 || e % 4 == 3)
                        ds.push_back(e);
            } else if (d > 0) {
                ds.push_back(d);
            } else {
                throw std::invalid_argument("orbits needs --d or --dmax");
            }
            G.coset_reps();
            std::vector<std::vector<QuadIndex>> found(ds.size());
            int w = std::min<int>(workers(), static_cast<int>(ds.size()));
            std::vector<std::future<void>> jobs;
            for (int t = 0; t < w; ++t)
                jobs.push_back(std::async(std::launch::async, [&, t] {
                    for (std::size_t i = t; i < ds.size(); i += w)
                        found[i] = orbit_reps(G, N, ds[i], is);
                }));
            for (auto & j : jobs)
                j.get();
            json per = json::object();
            std::size_t total = 0;
            std::string text;
            for (std::size_t i = 0; i < ds.size(); ++i) {
                total += found[i].size();
                if (count_only) {
                    per[std::to_string(ds[i])] = found[i].size();
                } else {
                    json l = json::array();
                    for (auto const & S : found[i]) {
                        l.push_back(jS(S));
                        text += std::to_string(ds[i]) + " " + S.str() + "\n";
                    }
                    per[std::to_string(ds[i])] = l;
                }
            }
            text += "total " + std::to_string(total) + "\n";
            json res = {{"group", G.name()}, {"N", N}, {"set", set}, {"total", total}, {"orbits", per}};
            if (cosets)
                res["index"] = G.coset_reps().size();
            emit(ctx, res, text);
        } else if (sub == c_equiv) {
            CongruenceGroup G = CongruenceGroup::parse(group);
            QuadIndex S = parse_S(S_text), T = parse_S(T_text);
            auto g = equivalent(S, T, G);
            json res = {{"group", G.name()}, {"S", jS(S)}, {"T", jS(T)}, {"equivalent", g.has_value()}};
            res["witness"] = g ? jM(*g) : json(nullptr);
            if (g)
                res["det"] = g->det();
            emit(ctx, res, g ? "equivalent g=" + g->str() : "not equivalent");
        } else if (sub == c_ingest) {
            ctx.inputs.push_back(slurp(file));
            IngestOptions opt;
            opt.doubled_entries = doubled;
            opt.bound = bound;
            FourierExpansion F = read_expansion(file, opt);
            if (!outfile.empty())
                write_expansion(F, outfile);
            emit(ctx,
                 {{"level", F.level()}, {"weight", F.weight()}, {"space", space_name(F.space())},
                  {"bound", F.bound()}, {"orbits", F.size()}},
                 serialize(F));
        } else if (sub == c_apply) {
            FourierExpansion F = load(file);
            OpKind kind = parse_op(op);
            FourierExpansion G = apply(F, kind, p);
            if (!outfile.empty())
                write_expansion(G, outfile);
            emit(ctx,
                 {{"op", op_name(kind)}, {"p", p}, {"level", G.level()}, {"weight", G.weight()},
                  {"bound", G.bound()}, {"orbits", G.size()}, {"expansion", serialize(G)}},
                 serialize(G));
        } else if (sub == c_fj) {
            FourierExpansion F = load(file);
            JacobiExpansion f = fj_decompose(F, m, nmax);
            json rows = json::array();
            for (auto const & [nr, v] : f.table)
                rows.push_back({nr.first, nr.second, v.str()});
            emit(ctx, {{"weight", f.k}, {"index", f.m}, {"nmax", f.nmax}, {"coefficients", rows}},
                 serialize_jacobi(f));
        } else if (sub == c_eigen) {
            FourierExpansion F = load(file);
            EigenReport r = eigen_report(F, p);
            json res = {{"p", r.p}, {"N", r.N}, {"k", r.k}};
            res["mu"] = r.mu ? json(r.mu->str()) : json(nullptr);
            res["lambda"] = r.lambda ? json(r.lambda->str()) : json(nullptr);
            res["epsilon"] = r.epsilon ? json(*r.epsilon) : json(nullptr);
            res["category"] = r.mu ? json(r.mu->is_zero() ? 2 : 1) : json(nullptr);
            res["t01_eigenvector"] = tri_json(r.t01_eigenvector);
            res["genericity"] = global_genericity_name(r.genericity);
            res["mu_source"] = witness_json(r.mu_source);
            res["lambda_source"] = witness_json(r.lambda_source);
            res["epsilon_source"] = witness_json(r.epsilon_source);
            int skipped = 0;
            for (auto const & w : r.witnesses)
                skipped += w.outcome == "skipped";
            res["witnesses_evaluated"] = r.witnesses.size();
            std::ostringstream t;
            t << "mu=" << res["mu"].dump() << " lambda=" << res["lambda"].dump()
              << " epsilon=" << res["epsilon"].dump() << " t01_eigenvector=" << tri_name(r.t01_eigenvector)
              << " genericity=" << global_genericity_name(r.genericity);
            emit(ctx, res, t.str(), {{"skipped_witnesses", skipped}});
        } else if (sub == c_verify) {
            FourierExpansion F = load(file);
            auto vs = verify_identities(F, p);
            json summary;
            int fails = tally(vs, summary);
            json list = json::array();
            std::string text;
            for (auto const & v : vs)
                if (show_all || v.status == VerdictStatus::Fail) {
                    list.push_back(verdict_json(v));
                    text += std::to_string(v.id) + " " + v.S.str() + " " + status_name(v.status) + "\n";
                }
            text += summary.dump() + "\n";
            emit(ctx, {{"summary", summary}, {"verdicts", list}}, text,
                 {{"skipped", summary["skipped"]}});
            return fails ? 1 : 0;
        } else if (sub == c_lfactor) {
            LFactor L;
            if (!file.empty()) {
                FourierExpansion F = load(file);
                L = lfactor_of(eigen_report(F, p));
            } else {
                if (k <= 0 || lambda_s.empty() || (mu_s.empty() && !eigen_case))
                    throw std::invalid_argument("lfactor needs a file or --k, --lambda and --mu (or --eigen)");
                L = eigen_case ? spin_lfactor_eigen(p, k, Scalar::parse(lambda_s))
                               : spin_lfactor(p, k, Scalar::parse(lambda_s), Scalar::parse(mu_s));
            }
            emit(ctx, lfactor_json(L), "D(X) = " + spoly_str(L.D));
        } else if (sub == c_rec) {
            FourierExpansion F = load(file);
            LFactor L = lfactor_of(eigen_report(F, p));
            auto vs = radial_check(F, parse_S(S_text), L, tmax);
            json summary;
            int fails = tally(vs, summary);
            json list = json::array();
            std::string text;
            for (std::size_t t = 0; t < vs.size(); ++t) {
                json j = verdict_json(vs[t]);
                j["t"] = t;
                if (vs[t].status != VerdictStatus::Skipped) {
                    j["lhs"] = vs[t].lhs.str();
                    j["rhs"] = vs[t].rhs.str();
                }
                list.push_back(j);
                text += "t=" + std::to_string(t) + " " + vs[t].S.str() + " " + status_name(vs[t].status) + "\n";
            }
            emit(ctx, {{"lfactor", lfactor_json(L)}, {"summary", summary}, {"verdicts", list}}, text,
                 {{"skipped", summary["skipped"]}});
            return fails ? 1 : 0;
        } else if (sub == c_classify) {
            LocalProfile prof;
            prof.q = q;
            prof.N_pi = Npi;
            prof.lambda = Scalar::parse(lambda_s);
            prof.mu = Scalar::parse(mu_s);
            prof.epsilon = eps;
            std::optional<bool> flag;
            if (t01)
                flag = *t01 == "true";
            ClassOutcome c = classify(prof, flag);
            json rows = c.rows;
            emit(ctx,
                 {{"category", category_name(c.category)}, {"generic", genericity_name(c.generic)},
                  {"rows", rows}},
                 category_name(c.category) + " " + genericity_name(c.generic));
        }
    } catch (DataIntegrityError const & e) {
        std::cerr << "data integrity error: " << e.what() << "\n";
        return 3;
    } catch (std::exception const & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
