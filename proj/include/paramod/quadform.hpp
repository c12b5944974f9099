#ifndef PARAMOD_QUADFORM_HPP
#define PARAMOD_QUADFORM_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace paramod {

using i64 = std::int64_t;
using i128 = __int128;

/* The half-integral matrix [a, b/2; b/2, c]; b is stored doubled. */
struct QuadIndex
{
    i64 a = 0, b = 0, c = 0;

    auto operator<=>(QuadIndex const &) const = default;

    i64 disc4() const;
    bool positive_definite() const;
    std::string str() const;
};

i64 disc4(QuadIndex const & S);

/* integer 2x2 matrix [a b; c d] */
struct Mat2
{
    i64 a = 1, b = 0, c = 0, d = 1;

    auto operator<=>(Mat2 const &) const = default;

    i64 det() const { return a * d - b * c; }
    Mat2 operator*(Mat2 const & o) const;
    /* inverse of a unimodular matrix */
    Mat2 inv() const;
    Mat2 transpose() const { return {a, c, b, d}; }
    std::string str() const;

    static Mat2 identity() { return {}; }
};

/* g.S = g S g^T */
QuadIndex act(Mat2 const & g, QuadIndex const & S);

/* S[A] = A^T S A */
inline QuadIndex bracket(QuadIndex const & S, Mat2 const & A)
{
    return act(A.transpose(), S);
}

i64 n_s(i64 N);
i64 vp(i64 n, i64 p);
bool is_prime(i64 n);

enum class IndexSet { A, B };

/* membership of a positive definite index in A(N)+ or B(N)+ */
bool in_index_set(QuadIndex const & S, i64 N, IndexSet set);

std::vector<QuadIndex> y_set(i64 d);

struct Reduction
{
    QuadIndex form;
    Mat2 g;
};

/* SL(2,Z) reduction with the canonical tie-break; g.S = form */
Reduction reduce(QuadIndex const & S);

/* GL(2,Z) variant: the smaller of the reductions of S and its mirror */
Reduction reduce_gl(QuadIndex const & S);

/* all (x,y) with a x^2 + b x y + c y^2 = n, for a positive definite form */
std::vector<std::pair<i64, i64>> represent(QuadIndex const & S, i64 n);

/* all g in GL(2,Z) (or SL(2,Z)) with g.R = R */
std::vector<Mat2> automorphisms(QuadIndex const & R, bool allow_neg);

class CongruenceGroup
{
  public:
    enum class Kind { SL2Z, Gamma0, Gamma0pm, G1, G2, G3, Gamma, Custom };

    /* b = 0 mod bmod, c = 0 mod cmod, a = d mod admod, and for principal
       groups a = d = 1 mod principal */
    static CongruenceGroup sl2z();
    static CongruenceGroup gamma0(i64 N);
    static CongruenceGroup gamma0pm(i64 N);
    static CongruenceGroup g1();
    static CongruenceGroup g2();
    static CongruenceGroup g3();
    static CongruenceGroup principal(i64 N);
    static CongruenceGroup custom(i64 bmod, i64 cmod, i64 admod, bool pm,
                                  std::string name = "");
    /* SL2Z, G1, G2, G3, gamma0:N, gamma0pm:N, gamma:N */
    static CongruenceGroup parse(std::string const & text);

    bool contains(Mat2 const & g) const;
    bool allows_negative() const { return pm_; }
    Kind kind() const { return kind_; }
    i64 level() const { return level_; }
    std::string name() const;

    /* right coset representatives of G in SL(2,Z), computed once */
    std::vector<Mat2> const & coset_reps() const;
    /* index j with m r_j^{-1} in G (m may have determinant -1 for pm groups) */
    std::size_t coset_of(Mat2 const & m) const;

  private:
    Kind kind_ = Kind::SL2Z;
    i64 bmod_ = 1, cmod_ = 1, admod_ = 1, principal_ = 1, level_ = 1;
    bool pm_ = false;
    std::string name_;
    mutable std::shared_ptr<std::vector<Mat2>> reps_;

    bool contains_sl(Mat2 const & g) const;
};

std::vector<Mat2> coset_reps(CongruenceGroup const & G);

/* canonical element of the G-orbit of S together with h in G, h.key = S */
struct OrbitKey
{
    QuadIndex key;
    Mat2 h;
};

OrbitKey orbit_key(QuadIndex const & S, CongruenceGroup const & G);

/* true when some element of G with determinant -1 fixes S */
bool has_negative_stabilizer(QuadIndex const & S, CongruenceGroup const & G);

std::optional<Mat2> equivalent(QuadIndex const & S1, QuadIndex const & S2,
                               CongruenceGroup const & G);

/* G-orbit representatives of the index set of level N and discriminant d,
   taking the lexicographically least candidate of each orbit */
std::vector<QuadIndex> orbit_reps(CongruenceGroup const & G, i64 N, i64 d,
                                  IndexSet set = IndexSet::A);

} // namespace paramod

template <> struct std::hash<paramod::QuadIndex>
{
    std::size_t operator()(paramod::QuadIndex const & S) const noexcept
    {
        std::size_t h = std::hash<paramod::i64>{}(S.a);
        h = h * 1000003u ^ std::hash<paramod::i64>{}(S.b);
        h = h * 1000003u ^ std::hash<paramod::i64>{}(S.c);
        return h;
    }
};

#endif /* PARAMOD_QUADFORM_HPP */
