#ifndef PARAMOD_SIEGEL_OPS_HPP
#define PARAMOD_SIEGEL_OPS_HPP

#include "paramod/fourier.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace paramod {

/* a coefficient function on rational indices */
using Coeff = std::function<Val(RIndex const &)>;

/*
 * Lazy hat-extension of a stable Klingen expansion of level N and weight k.
 * D bounds the discriminants at which values may be requested when the
 * source is materialized.
 */
struct Source
{
    i64 N = 1;
    int k = 1;
    i64 D = 1;
    Coeff fn;

    Val operator()(RIndex const & S) const { return fn(S); }
    Val operator()(QuadIndex const & S) const { return fn(RIndex(S)); }
};

Source source_of(FourierExpansion const & F);
Source memoize(Source const & s);

enum class OpKind { Tau, Theta, Eta, Sigma, T01s, T10s };

std::string op_name(OpKind op);
OpKind parse_op(std::string const & name);
/* output level of the operator applied at level N */
i64 op_level(OpKind op, i64 N, i64 p);

/* direct coefficient formulas */
Source tau(Source const & F, i64 p);
Source theta(Source const & F, i64 p);
Source eta(Source const & F, i64 p);
Source sigma(Source const & F, i64 p);
Source t01s(Source const & F, i64 p);
Source t10s(Source const & F, i64 p);
Source apply_op(OpKind op, Source const & F, i64 p);

namespace hecke {

/* (a|T(p))(S) = sum over x mod p of a(S[(1,0;x,p)]) */
Coeff T(Coeff a, i64 p);
/* (a|T(p)^2) = (a|T(p))|T(p) */
Coeff T2(Coeff a, i64 p);
Coeff delta_plus(Coeff a, i64 t);
Coeff delta_minus(Coeff a, i64 t);
Coeff nabla(Coeff a, i64 t);
/* multiply by the indicator of B(M)+ */
Coeff char_mul(Coeff a, i64 M);
Coeff scale(Coeff a, Scalar s);
Coeff add(Coeff a, Coeff b);
bool in_B(RIndex const & S, i64 M);

} // namespace hecke

/* Hecke-ring formulations of the six operators */
Source tau_abstract(Source const & F, i64 p);
Source theta_abstract(Source const & F, i64 p);
Source eta_abstract(Source const & F, i64 p);
Source sigma_abstract(Source const & F, i64 p);
Source t01s_abstract(Source const & F, i64 p);
Source t10s_abstract(Source const & F, i64 p);
Source apply_op_abstract(OpKind op, Source const & F, i64 p);

/* composite formulas */
Source sigma2_abstract(Source const & F, i64 p);
Source t10s_sigma_abstract(Source const & F, i64 p);
/* these two need paramodular input */
Source t01s_sigma_abstract(Source const & F, i64 p);
Source t01s_squared_abstract(Source const & F, i64 p);

Source add(Source const & a, Source const & b);
Source sub(Source const & a, Source const & b);
Source scale(Source const & a, Scalar const & s);

/* evaluate on every Gamma_0(N)+- orbit of B(N)+ with disc4 < D; Unknown values are omitted */
FourierExpansion materialize(Source const & s);
FourierExpansion apply(FourierExpansion const & F, OpKind op, i64 p);

struct Mismatch
{
    QuadIndex S;
    Scalar lhs, rhs;
};

struct Comparison
{
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::vector<Mismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
};

Comparison compare(Source const & a, Source const & b, std::vector<QuadIndex> const & points);
/* orbit keys of B(N)+ with disc4 < D */
std::vector<QuadIndex> orbit_points(i64 N, i64 D);

Val vadd(Val const & a, Val const & b);
Val vmul(Scalar const & s, Val const & a);

} // namespace paramod

#endif /* PARAMOD_SIEGEL_OPS_HPP */
