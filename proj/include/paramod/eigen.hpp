#ifndef PARAMOD_EIGEN_HPP
#define PARAMOD_EIGEN_HPP

#include "paramod/localrep.hpp"
#include "paramod/siegel_ops.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace paramod {

struct DataIntegrityError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/*
 * Identity ids: 1 sigma^2 sum, 2 mu, 3 lambda (mu != 0), 4 epsilon,
 * 5 vanishing sum (mu = 0), 6 lambda (mu = 0, not an eigenvector),
 * 7 lambda (mu = 0, eigenvector). 8 and 9 are the operator relations
 * mu F = p^4 tau^2 sigma F - p^2 eta sigma F and sigma^2 F = 0, and 10 is the
 * B(N) form of the vanishing-sum equivalence. 11 is one coefficient of the
 * radial L-factor identity.
 */
enum IdentityId { kSigma2Sum = 1, kMu, kLambda, kEpsilon, kVanish, kLambdaNonEigen, kLambdaEigen,
                  kMuRelation, kSigmaSquared, kEquivBN, kRadial };

struct Term
{
    std::string label;
    RIndex index;
    Scalar weight;
    Val value;
};

/* eigenvalue * sum(factor) = sum(rest); with no factor side, sum(rest) = 0 */
struct IdentityForm
{
    int id = 0;
    QuadIndex S;
    i64 p = 2;
    int k = 1;
    std::vector<Term> factor;
    std::vector<Term> rest;

    void fill(Coeff const & a);
    bool computable() const;
    std::vector<RIndex> missing() const;
    Scalar factor_sum() const;
    Scalar rest_sum() const;
};

/* v is v_p(N), needed only by identity 4 */
IdentityForm identity_form(int id, QuadIndex const & S, i64 p, int k, i64 v = 2);

/* index-set level and symmetry group of the representative set X_i */
i64 identity_level(int id, i64 p, i64 N);
CongruenceGroup identity_group(int id, i64 p, i64 N);
/* exponent e with every index of identity i at S having disc4 <= disc4(S) p^(2e) */
int identity_disc_exponent(int id);
std::vector<QuadIndex> identity_reps(int id, i64 p, i64 N, i64 d);

enum class Tri { Yes, No, Undetermined };
enum class GlobalGenericity { Generic, NonGeneric, Undetermined };

std::string tri_name(Tri t);
std::string global_genericity_name(GlobalGenericity g);

struct Witness
{
    int identity = 0;
    QuadIndex S;
    /* "value", "zero" (both sides vanish), "contradiction", "skipped" */
    std::string outcome;
    std::optional<Scalar> value;
};

struct Extraction
{
    std::optional<Scalar> value;
    std::optional<Witness> source;
    std::vector<Witness> evaluated;
};

struct LambdaExtraction : Extraction
{
    Tri t01_eigenvector = Tri::Undetermined;
};

Extraction extract_mu(FourierExpansion const & F, i64 p);
LambdaExtraction extract_lambda(FourierExpansion const & F, i64 p, Scalar const & mu);
/* nullopt value unless v_p(N) = 2 and mu != 0 */
Extraction extract_epsilon(FourierExpansion const & F, i64 p, Scalar const & mu);

struct EigenReport
{
    i64 p = 2, N = 1;
    int k = 1;
    std::optional<Scalar> mu, lambda;
    std::optional<int> epsilon;
    std::optional<Witness> mu_source, lambda_source, epsilon_source;
    Tri t01_eigenvector = Tri::Undetermined;
    GlobalGenericity genericity = GlobalGenericity::Undetermined;
    std::vector<Witness> witnesses;
};

EigenReport eigen_report(FourierExpansion const & F, i64 p);

enum class VerdictStatus { Pass, Fail, Skipped };

std::string status_name(VerdictStatus s);

struct IdentityVerdict
{
    int id = 0;
    QuadIndex S;
    VerdictStatus status = VerdictStatus::Skipped;
    Scalar lhs, rhs;
    std::vector<RIndex> missing;
};

/* a verdict for one filled identity form given the eigenvalue (ignored by 1 and 5) */
IdentityVerdict judge(IdentityForm const & f, std::optional<Scalar> const & eigenvalue);

std::vector<IdentityVerdict> verify_identities(FourierExpansion const & F, i64 p, EigenReport const & report);
std::vector<IdentityVerdict> verify_identities(FourierExpansion const & F, i64 p);

struct LFactor
{
    i64 p = 2;
    int k = 1;
    Scalar lambda, mu;
    /* eigenvector case: D3(X) = 1 - p^(k-2) (1+p)^(-1) lambda X */
    bool eigen_case = false;
    SPoly D;
};

LFactor spin_lfactor(i64 p, int k, Scalar const & lambda, Scalar const & mu);
LFactor spin_lfactor_eigen(i64 p, int k, Scalar const & lambda);

/* N(X,S) truncated to the degree of D, from the series a(p^t S) */
SPoly lfactor_numerator(LFactor const & L, std::vector<Val> const & series);

/*
 * Checks D(X) sum a(p^t S) X^t = N(X,S) coefficientwise; a verdict per t,
 * with S in each verdict set to p^t S.
 */
std::vector<IdentityVerdict> radial_check(std::vector<Val> const & series, LFactor const & L,
                                          QuadIndex const & S = {});
std::vector<IdentityVerdict> radial_check(FourierExpansion const & F, QuadIndex const & S,
                                          LFactor const & L, int tmax);

} // namespace paramod

#endif /* PARAMOD_EIGEN_HPP */
