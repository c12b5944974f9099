#ifndef PARAMOD_SCALARS_HPP
#define PARAMOD_SCALARS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace paramod {

/* monic integer polynomial, coefficients from the constant term upwards */
using IntPoly = std::vector<mpz_class>;

IntPoly parse_poly(std::string const & text);
std::string poly_str(IntPoly const & f);

/*
 * Exact scalar: a rational number, or an element of Q[x]/(f) for a monic
 * integer polynomial f stored as a coefficient vector in the power basis.
 */
class Scalar
{
  public:
    Scalar();
    Scalar(long v);
    Scalar(int v) : Scalar(static_cast<long>(v)) {}
    Scalar(long long v) : Scalar(static_cast<long>(v)) {}
    Scalar(mpq_class v);

    static Scalar field(std::vector<mpq_class> coeffs, std::shared_ptr<IntPoly const> modulus);
    /* the class of x in Q[x]/(f) */
    static Scalar generator(std::shared_ptr<IntPoly const> modulus);

    bool is_rational() const { return !mod_; }
    bool is_zero() const;
    /* rational value; throws if this is a field element with non-constant part */
    mpq_class rational() const;
    std::vector<mpq_class> const & coeffs() const { return c_; }
    std::shared_ptr<IntPoly const> const & modulus() const { return mod_; }

    Scalar operator-() const;
    Scalar & operator+=(Scalar const & o);
    Scalar & operator-=(Scalar const & o);
    Scalar & operator*=(Scalar const & o);
    Scalar & operator/=(Scalar const & o);

    friend Scalar operator+(Scalar a, Scalar const & b) { return a += b; }
    friend Scalar operator-(Scalar a, Scalar const & b) { return a -= b; }
    friend Scalar operator*(Scalar a, Scalar const & b) { return a *= b; }
    friend Scalar operator/(Scalar a, Scalar const & b) { return a /= b; }
    friend bool operator==(Scalar const & a, Scalar const & b);
    friend bool operator!=(Scalar const & a, Scalar const & b) { return !(a == b); }

    Scalar inv() const;
    std::string str() const;
    static Scalar parse(std::string const & text);

  private:
    std::vector<mpq_class> c_;
    std::shared_ptr<IntPoly const> mod_;

    void reduce_poly(std::vector<mpq_class> & v) const;
    void align(Scalar const & o);
};

/* s * p^e for any integer e */
Scalar scale(Scalar const & s, std::int64_t p, std::int64_t e);
mpq_class rpow(std::int64_t p, std::int64_t e);
Scalar pow(Scalar const & s, unsigned e);

} // namespace paramod

#endif /* PARAMOD_SCALARS_HPP */
