#ifndef PARAMOD_LOCALREP_HPP
#define PARAMOD_LOCALREP_HPP

#include "paramod/scalars.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace paramod {

/* polynomial in X, constant term first */
using SPoly = std::vector<Scalar>;

SPoly poly_trim(SPoly p);
std::string spoly_str(SPoly const & p);
bool poly_equal(SPoly const & a, SPoly const & b);

using Env = std::map<std::string, Scalar>;

/* arithmetic expression over named scalars and the indeterminate X */
class Expr
{
  public:
    struct Node;

    static Expr parse(std::string const & text);
    SPoly eval_poly(Env const & env) const;
    Scalar eval(Env const & env) const;
    std::set<std::string> variables() const;
    std::string const & text() const { return text_; }

  private:
    std::shared_ptr<Node const> root_;
    std::string text_;
};

enum class Category { Cat1, Cat2 };
enum class Genericity { Generic, NonGeneric, NeedsEigenFlag };

std::string category_name(Category c);
std::string genericity_name(Genericity g);

struct LocalProfile
{
    std::int64_t q = 2;
    std::int64_t N_pi = 2;
    Scalar lambda, mu;
    std::optional<int> epsilon;
};

struct ClassOutcome
{
    Category category = Category::Cat2;
    Genericity generic = Genericity::Generic;
    /* eigenvalue-table rows whose level and eigenvalues agree with the profile */
    std::vector<std::string> rows;
};

ClassOutcome classify(LocalProfile const & prof, std::optional<bool> t01_eigen);

struct EigenRow
{
    std::string type, inducing;
    /* numeric rows carry parseable expressions; the others keep the printed text */
    bool numeric;
    std::string N_pi, epsilon, lambda, mu;
    int category; // 0: not paramodular
    std::string comment;
};

struct DimRow
{
    std::string key, type, inducing;
    std::string N_pi, N_s, dim, Nbar, dimbar; // Nbar empty when the table prints a dash
    int category;
    bool generic;
    std::string comment;
};

struct CharpolyRow
{
    std::string type;
    std::string t01_inducing, t10_inducing, t01_eigen, t10_eigen;
};

std::vector<EigenRow> const & eigenvalue_table();
std::vector<DimRow> const & dimension_table();
std::vector<CharpolyRow> const & charpoly_table();

/* every row key appears exactly once and every numeric expression parses */
void check_tables();

enum class Which { T01s, T10s };

/* params supplies a (and n is the level exponent); 0 below N_{pi,s} */
std::int64_t dim_vs(std::string const & key, std::map<std::string, std::int64_t> const & params, std::int64_t n);
std::int64_t dimbar_vs(std::string const & key, std::map<std::string, std::int64_t> const & params, std::int64_t n);
std::int64_t n_s_of(std::string const & key, std::map<std::string, std::int64_t> const & params);

SPoly charpoly_vs1(std::string const & type, LocalProfile const & prof, Which which);
SPoly charpoly_inducing(std::string const & type, Env const & data, Which which);

/* lambda, mu, epsilon of an eigenvalue-table row evaluated at inducing data */
LocalProfile profile_from_row(std::string const & type, Env const & data);

} // namespace paramod

#endif /* PARAMOD_LOCALREP_HPP */
