#include "paramod/eigen.hpp"
#include "paramod/jacobi.hpp"
#include "paramod/localrep.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace paramod;

namespace {

using Triple = std::tuple<i64, i64, i64>;

QuadIndex qi(Triple const & t) { return {std::get<0>(t), std::get<1>(t), std::get<2>(t)}; }
Triple tr(QuadIndex const & S) { return {S.a, S.b, S.c}; }
std::array<std::array<i64, 2>, 2> mat(Mat2 const & g) { return {{{g.a, g.b}, {g.c, g.d}}}; }

py::object opt_str(std::optional<Scalar> const & s)
{
    if (!s)
        return py::none();
    return py::str(s->str());
}

py::dict witness(std::optional<Witness> const & w)
{
    py::dict d;
    if (w) {
        d["identity"] = w->identity;
        d["S"] = tr(w->S);
        d["outcome"] = w->outcome;
        d["value"] = opt_str(w->value);
    }
    return d;
}

py::dict verdict(IdentityVerdict const & v)
{
    py::dict d;
    d["identity"] = v.id;
    d["S"] = tr(v.S);
    d["status"] = status_name(v.status);
    d["lhs"] = v.lhs.str();
    d["rhs"] = v.rhs.str();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact Fourier-coefficient algebra of paramodular and stable Klingen Siegel forms";

    m.def("disc4", [](Triple const & S) { return disc4(qi(S)); });
    m.def("y_set", [](i64 d) {
        std::vector<Triple> out;
        for (auto const & S : y_set(d))
            out.push_back(tr(S));
        return out;
    });
    m.def("reduce", [](Triple const & S) {
        Reduction r = reduce(qi(S));
        return std::make_pair(tr(r.form), mat(r.g));
    });
    m.def("coset_count", [](std::string const & group) { return CongruenceGroup::parse(group).coset_reps().size(); });
    m.def("orbit_reps", [](std::string const & group, i64 N, i64 d, std::string const & set) {
        std::vector<Triple> out;
        for (auto const & S : orbit_reps(CongruenceGroup::parse(group), N, d, set == "B" ? IndexSet::B : IndexSet::A))
            out.push_back(tr(S));
        return out;
    }, py::arg("group"), py::arg("N"), py::arg("d"), py::arg("set") = "A");
    m.def("equivalent", [](Triple const & S1, Triple const & S2, std::string const & group) -> py::object {
        auto g = equivalent(qi(S1), qi(S2), CongruenceGroup::parse(group));
        if (!g)
            return py::none();
        return py::cast(mat(*g));
    }, py::arg("S1"), py::arg("S2"), py::arg("group") = "SL2Z");

    m.def("scalar", [](std::string const & s) { return Scalar::parse(s).str(); },
          "normalize the textual form of an exact scalar");

    py::class_<FourierExpansion>(m, "FourierExpansion")
        .def_static("read", [](std::string const & path) { return read_expansion(path); })
        .def_static("parse", [](std::string const & text) { return deserialize(text); })
        .def_property_readonly("level", &FourierExpansion::level)
        .def_property_readonly("weight", &FourierExpansion::weight)
        .def_property_readonly("bound", &FourierExpansion::bound)
        .def_property_readonly("space", [](FourierExpansion const & F) { return space_name(F.space()); })
        .def("__len__", &FourierExpansion::size)
        .def("lookup", [](FourierExpansion const & F, Triple const & S) -> py::object {
            Lookup l = F.lookup(qi(S));
            if (l.status == Lookup::Status::Unknown)
                return py::none();
            return py::str(l.value.str());
        }, "coefficient as text, '0' outside the support, None when the data does not determine it")
        .def("serialize", [](FourierExpansion const & F) { return serialize(F); })
        .def("apply", [](FourierExpansion const & F, std::string const & op, i64 p) {
            return apply(F, parse_op(op), p);
        });

    m.def("eigen_report", [](FourierExpansion const & F, i64 p) {
        EigenReport r = eigen_report(F, p);
        py::dict d;
        d["p"] = r.p;
        d["mu"] = opt_str(r.mu);
        d["lambda"] = opt_str(r.lambda);
        d["epsilon"] = r.epsilon ? py::cast(*r.epsilon) : py::none();
        d["t01_eigenvector"] = r.t01_eigenvector == Tri::Undetermined ? py::none()
                                                                       : py::cast(r.t01_eigenvector == Tri::Yes);
        d["genericity"] = global_genericity_name(r.genericity);
        d["mu_source"] = witness(r.mu_source);
        d["lambda_source"] = witness(r.lambda_source);
        return d;
    });
    m.def("verify_identities", [](FourierExpansion const & F, i64 p) {
        py::list out;
        for (auto const & v : verify_identities(F, p))
            out.append(verdict(v));
        return out;
    });
    m.def("spin_lfactor", [](i64 p, int k, std::string const & lambda, std::string const & mu) {
        std::vector<std::string> out;
        for (auto const & c : spin_lfactor(p, k, Scalar::parse(lambda), Scalar::parse(mu)).D)
            out.push_back(c.str());
        return out;
    });
    m.def("radial_check", [](std::vector<std::string> const & series, i64 p, int k, std::string const & lambda,
                             std::string const & mu, bool eigen_case) {
        LFactor L = eigen_case ? spin_lfactor_eigen(p, k, Scalar::parse(lambda))
                               : spin_lfactor(p, k, Scalar::parse(lambda), Scalar::parse(mu));
        std::vector<Val> vals;
        for (auto const & s : series)
            vals.push_back(Scalar::parse(s));
        std::vector<std::string> out;
        for (auto const & v : radial_check(vals, L))
            out.push_back(status_name(v.status));
        return out;
    }, py::arg("series"), py::arg("p"), py::arg("k"), py::arg("lambda_"), py::arg("mu") = "0",
       py::arg("eigen_case") = false);
    m.def("classify", [](i64 q, i64 N_pi, std::string const & lambda, std::string const & mu,
                         std::optional<int> epsilon, std::optional<bool> t01_eigen) {
        LocalProfile prof;
        prof.q = q;
        prof.N_pi = N_pi;
        prof.lambda = Scalar::parse(lambda);
        prof.mu = Scalar::parse(mu);
        prof.epsilon = epsilon;
        ClassOutcome c = classify(prof, t01_eigen);
        py::dict d;
        d["category"] = category_name(c.category);
        d["generic"] = genericity_name(c.generic);
        d["rows"] = c.rows;
        return d;
    }, py::arg("q"), py::arg("N_pi"), py::arg("lambda_"), py::arg("mu"), py::arg("epsilon") = py::none(),
       py::arg("t01_eigen") = py::none());
    m.def("dim_vs", [](std::string const & key, std::map<std::string, i64> const & params, i64 n) {
        return dim_vs(key, params, n);
    }, py::arg("key"), py::arg("params"), py::arg("n"));
}
