#ifndef PARAMOD_TEST_SUPPORT_HPP
#define PARAMOD_TEST_SUPPORT_HPP

#include "paramod/eigen.hpp"
#include "paramod/jacobi.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace ptest {

using namespace paramod;

std::string fixture_dir();

/* uniform random values on the Gamma_0(N)+- orbits of B(N)+ with disc4 < D,
   zero where a det -1 stabilizer forces it at odd k */
FourierExpansion random_expansion(i64 N, int k, i64 D, std::mt19937_64 & rng, int range = 9,
                                  Space space = Space::StableKlingen);

struct Tally
{
    std::size_t checked = 0, skipped = 0, bad = 0;
    std::string first_bad;

    void merge(Tally const & o);
    bool ok() const { return bad == 0; }
};

/* compares a and b on orbit points of their common level below min(a.D, b.D, cap) */
Tally check_equal(Source const & a, Source const & b, i64 cap = 1ll << 40);

struct Relation
{
    std::string name;
    int min_v; // required v_p(N)
    std::function<std::pair<Source, Source>(Source const &, i64)> sides;
};

/* the nine operator relations */
std::vector<Relation> const & relations();

/* direct vs abstract formulation of each applicable operator */
Tally check_abstract(Source const & f, i64 p, OpKind op, i64 cap);
bool op_applicable(OpKind op, i64 v);

/* bridge name: sigma, t10s, t01s, eta, theta, tau */
Tally check_bridge(std::string const & name, Source const & f, i64 p, i64 nmax);
std::vector<std::string> const & bridge_names();

struct RowOutcome
{
    std::string table;
    std::string form;
    QuadIndex S;
    std::string printed, computed;
    bool ok = false;
    std::string detail;
};

std::vector<RowOutcome> check_printed_tables(std::string const & json_path, std::string const & dir);

/* a(p^t S) for t <= tmax from seeds a(S), ..., with D(X) sum a(p^t S) X^t of degree < seeds.size() */
std::vector<Val> radial_series(LFactor const & L, std::vector<Scalar> const & seeds, int tmax);
bool radial_pass(std::vector<Val> const & series, LFactor const & L);

} // namespace ptest

#endif
