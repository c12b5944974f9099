#ifndef PARAMOD_FOURIER_HPP
#define PARAMOD_FOURIER_HPP

#include "paramod/quadform.hpp"
#include "paramod/scalars.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace paramod {

enum class Space { Paramodular, StableKlingen };

std::string space_name(Space s);
Space parse_space(std::string const & s);

/* the rational index (a/den, b/den, c/den); b is doubled as in QuadIndex */
struct RIndex
{
    i64 a = 0, b = 0, c = 0, den = 1;

    RIndex() = default;
    RIndex(i64 a_, i64 b_, i64 c_, i64 den_ = 1);
    RIndex(QuadIndex const & S) : RIndex(S.a, S.b, S.c, 1) {}

    bool integral() const { return den == 1; }
    QuadIndex quad() const;
    bool positive_definite() const;

    /* S[(1,0;x,p)] with x = xn/xd */
    RIndex bracket_lower(i64 xn, i64 xd, i64 p) const;
    RIndex times(i64 num, i64 den) const;

    auto operator<=>(RIndex const &) const = default;
    std::string str() const;
};

/* optional value: nullopt means the coefficient is not determined by the data */
using Val = std::optional<Scalar>;

struct Lookup
{
    enum class Status { Known, StructuralZero, Unknown };
    Status status = Status::Unknown;
    Scalar value;

    static Lookup known(Scalar v) { return {Status::Known, std::move(v)}; }
    static Lookup zero() { return {Status::StructuralZero, Scalar(0)}; }
    static Lookup unknown() { return {Status::Unknown, Scalar(0)}; }

    Val val() const { return status == Status::Unknown ? Val{} : Val{value}; }
};

/* Gamma_0(N)+- canonical key of S; det is the determinant of h with h.key = S */
struct Canonical
{
    QuadIndex key;
    int det = 1;
    bool negative_stabilizer = false;
};

Canonical canonical(QuadIndex const & S, i64 N);

class FourierExpansion
{
  public:
    FourierExpansion(i64 N = 1, int k = 1, Space space = Space::StableKlingen, i64 bound = 1,
                     std::shared_ptr<IntPoly const> field = nullptr);

    i64 level() const { return N_; }
    int weight() const { return k_; }
    Space space() const { return space_; }
    i64 bound() const { return D_; }
    void set_bound(i64 D) { D_ = D; }
    std::shared_ptr<IntPoly const> const & field() const { return field_; }
    void set_field(std::shared_ptr<IntPoly const> f) { field_ = std::move(f); }

    /* N for paramodular data, N_s for stable Klingen data */
    i64 support_modulus() const;
    bool in_support(QuadIndex const & S) const;

    Lookup lookup(QuadIndex const & S) const;
    Lookup lookup(RIndex const & S) const;

    /* store a(S) = v; throws std::runtime_error on a conflicting value */
    void set(QuadIndex const & S, Scalar const & v);

    std::map<QuadIndex, Scalar> const & table() const { return table_; }
    std::size_t size() const { return table_.size(); }

  private:
    i64 N_;
    int k_;
    Space space_;
    i64 D_;
    std::shared_ptr<IntPoly const> field_;
    std::map<QuadIndex, Scalar> table_;
};

struct Row
{
    QuadIndex S;
    Scalar value;
    std::optional<i64> d;
    std::size_t line = 0;
};

struct IngestOptions
{
    /* rows give (2 alpha, 2 beta, 2 gamma) instead of (alpha, 2 beta, gamma) */
    bool doubled_entries = false;
    /* explicit bound; otherwise one more than the largest stored disc4 */
    std::optional<i64> bound;
    std::shared_ptr<IntPoly const> field;
};

FourierExpansion ingest(std::vector<Row> const & rows, i64 N, int k, Space space,
                        IngestOptions const & opt = {});

std::string serialize(FourierExpansion const & F);
FourierExpansion deserialize(std::string const & text, IngestOptions const & opt = {});
FourierExpansion read_expansion(std::string const & path, IngestOptions const & opt = {});
void write_expansion(FourierExpansion const & F, std::string const & path);

/* canonical Gamma_0(N)+- keys of the index set B(N)+ (or A(N)+) with disc4 = d */
std::vector<QuadIndex> orbit_keys(i64 N, i64 d, IndexSet set = IndexSet::B);

/* split a CSV line, keeping bracketed field elements intact */
std::vector<std::string> split_fields(std::string const & line);

struct ParseError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

} // namespace paramod

#endif /* PARAMOD_FOURIER_HPP */
