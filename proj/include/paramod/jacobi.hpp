#ifndef PARAMOD_JACOBI_HPP
#define PARAMOD_JACOBI_HPP

#include "paramod/siegel_ops.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace paramod {

/*
 * Fourier coefficients c(n,r) of a Jacobi form of weight k and index m,
 * stored for n <= nmax. In dense mode a missing entry below the bound is 0;
 * otherwise it is unknown.
 */
struct JacobiExpansion
{
    int k = 1;
    i64 m = 0;
    i64 nmax = 0;
    bool dense = true;
    std::map<std::pair<i64, i64>, Scalar> table;

    Val get(i64 n, i64 r) const;
    void put(i64 n, i64 r, Scalar v);
};

/* index m -> m p^2: c'(n,r) = c(n,r/p) */
JacobiExpansion u_p(JacobiExpansion const & f, i64 p);
/* index m -> m p: c'(n,r) = c(np,r) + p^(k-1) c(n/p,r/p) */
JacobiExpansion v_p(JacobiExpansion const & f, i64 p);
/* index m c^2 -> m */
JacobiExpansion l_csq(JacobiExpansion const & f, i64 c);
/* index m p -> m */
JacobiExpansion lprime_p(JacobiExpansion const & f, i64 p);
JacobiExpansion jscale(JacobiExpansion f, Scalar const & s);

/* c_m(n,r) = a(n,r,m) for n <= nmax, omitting values the data does not determine */
JacobiExpansion fj_decompose(Source const & F, i64 m, i64 nmax);
JacobiExpansion fj_decompose(FourierExpansion const & F, i64 m, i64 nmax);
FourierExpansion fj_recompose(std::vector<std::pair<i64, JacobiExpansion>> const & parts, i64 N, int k,
                              Space space = Space::StableKlingen);

std::string serialize_jacobi(JacobiExpansion const & f);
JacobiExpansion deserialize_jacobi(std::string const & text);

} // namespace paramod

#endif /* PARAMOD_JACOBI_HPP */
