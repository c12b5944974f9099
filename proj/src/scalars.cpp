#include "paramod/scalars.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace paramod {

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly & v)
{
    while (!v.empty() && v.back() == 0)
        v.pop_back();
}

QPoly qmul(QPoly const & a, QPoly const & b)
{
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

QPoly qsub(QPoly a, QPoly const & b)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    trim(a);
    return a;
}

/* a = q*b + r */
void qdivmod(QPoly a, QPoly const & b, QPoly & q, QPoly & r)
{
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size() && !a.empty()) {
        std::size_t s = a.size() - b.size();
        mpq_class f = a.back() / b.back();
        q[s] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[s + i] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    r = a;
}

QPoly to_q(IntPoly const & f)
{
    QPoly r;
    for (auto const & c : f)
        r.emplace_back(c);
    return r;
}

std::string coeff_token(mpq_class const & v)
{
    mpq_class c = v;
    c.canonicalize();
    return c.get_str();
}

bool same_modulus(std::shared_ptr<IntPoly const> const & a, std::shared_ptr<IntPoly const> const & b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

} // namespace

IntPoly parse_poly(std::string const & text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty())
        throw std::invalid_argument("parse_poly: empty polynomial");
    std::vector<mpz_class> coeffs;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        std::string num;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            num += s[i++];
        if (i < s.size() && s[i] == '*')
            ++i;
        std::size_t deg = 0;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    e += s[i++];
                if (e.empty())
                    throw std::invalid_argument("parse_poly: missing exponent in '" + text + "'");
                deg = std::stoul(e);
            }
        } else if (num.empty()) {
            throw std::invalid_argument("parse_poly: bad term in '" + text + "'");
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-')
            throw std::invalid_argument("parse_poly: unexpected '" + std::string(1, s[i]) + "' in '" + text + "'");
        mpz_class c = num.empty() ? mpz_class(1) : mpz_class(num);
        if (coeffs.size() <= deg)
            coeffs.resize(deg + 1, 0);
        coeffs[deg] += sign * c;
    }
    while (!coeffs.empty() && coeffs.back() == 0)
        coeffs.pop_back();
    if (coeffs.size() < 2 || coeffs.back() != 1)
        throw std::invalid_argument("parse_poly: polynomial must be monic of degree >= 1: '" + text + "'");
    return coeffs;
}

std::string poly_str(IntPoly const & f)
{
    std::ostringstream o;
    bool first = true;
    for (std::size_t i = f.size(); i-- > 0;) {
        mpz_class c = f[i];
        if (c == 0)
            continue;
        if (c < 0)
            o << '-';
        else if (!first)
            o << '+';
        mpz_class a = abs(c);
        if (i == 0 || a != 1)
            o << a.get_str();
        if (i > 0) {
            if (a != 1)
                o << '*';
            o << 'x';
            if (i > 1)
                o << '^' << i;
        }
        first = false;
    }
    if (first)
        o << '0';
    return o.str();
}

Scalar::Scalar() : c_{mpq_class(0)} {}

Scalar::Scalar(long v) : c_{mpq_class(v)} {}

Scalar::Scalar(mpq_class v) : c_{std::move(v)} { c_[0].canonicalize(); }

Scalar Scalar::field(std::vector<mpq_class> coeffs, std::shared_ptr<IntPoly const> modulus)
{
    if (!modulus || modulus->size() < 2 || modulus->back() != 1)
        throw std::domain_error("Scalar::field: modulus must be monic of degree >= 1");
    Scalar s;
    s.mod_ = std::move(modulus);
    for (auto & c : coeffs)
        c.canonicalize();
    s.c_ = std::move(coeffs);
    s.reduce_poly(s.c_);
    return s;
}

Scalar Scalar::generator(std::shared_ptr<IntPoly const> modulus)
{
    return field({0, 1}, std::move(modulus));
}

void Scalar::reduce_poly(std::vector<mpq_class> & v) const
{
    if (!mod_) {
        if (v.empty())
            v.push_back(0);
        return;
    }
    std::size_t n = mod_->size() - 1;
    for (std::size_t i = v.size(); i-- > n;) {
        mpq_class t = v[i];
        if (t != 0)
            for (std::size_t j = 0; j < n; ++j)
                v[i - n + j] -= t * mpq_class((*mod_)[j]);
    }
    v.resize(n, 0);
}

void Scalar::align(Scalar const & o)
{
    if (same_modulus(mod_, o.mod_))
        return;
    if (!mod_ && o.mod_) {
        mod_ = o.mod_;
        reduce_poly(c_);
        return;
    }
    if (mod_ && !o.mod_)
        return;
    throw std::domain_error("Scalar: operands have different moduli");
}

bool Scalar::is_zero() const
{
    for (auto const & c : c_)
        if (c != 0)
            return false;
    return true;
}

mpq_class Scalar::rational() const
{
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0)
            throw std::domain_error("Scalar::rational: not a rational value: " + str());
    return c_.empty() ? mpq_class(0) : c_[0];
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    for (auto & c : r.c_)
        c = -c;
    return r;
}

Scalar & Scalar::operator+=(Scalar const & o)
{
    align(o);
    if (o.mod_ || c_.size() >= o.c_.size()) {
        if (c_.size() < o.c_.size())
            c_.resize(o.c_.size(), 0);
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
    } else {
        c_[0] += o.c_[0];
    }
    return *this;
}

Scalar & Scalar::operator-=(Scalar const & o) { return *this += -o; }

Scalar & Scalar::operator*=(Scalar const & o)
{
    align(o);
    if (!mod_) {
        c_[0] *= o.c_[0];
        return *this;
    }
    std::vector<mpq_class> r(c_.size() + o.c_.size(), 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] += c_[i] * o.c_[j];
    reduce_poly(r);
    c_ = std::move(r);
    return *this;
}

Scalar Scalar::inv() const
{
    if (is_zero())
        throw std::domain_error("Scalar::inv: division by zero");
    if (!mod_)
        return Scalar(mpq_class(1) / c_[0]);
    /* extended Euclid: find u with u*a = 1 mod f */
    QPoly f = to_q(*mod_), a = c_;
    trim(a);
    QPoly r0 = f, r1 = a, s0, s1{1};
    while (!r1.empty() && r1.size() > 1) {
        QPoly q, r;
        qdivmod(r0, r1, q, r);
        QPoly s2 = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty())
        throw std::domain_error("Scalar::inv: element is a zero divisor modulo " + poly_str(*mod_));
    for (auto & c : s1)
        c /= r1[0];
    return field(s1, mod_);
}

Scalar & Scalar::operator/=(Scalar const & o)
{
    align(o);
    return *this *= o.inv();
}

bool operator==(Scalar const & a, Scalar const & b)
{
    if (!same_modulus(a.mod_, b.mod_) && a.mod_ && b.mod_)
        throw std::domain_error("Scalar: comparing values with different moduli");
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t i = 0; i < n; ++i) {
        mpq_class x = i < a.c_.size() ? a.c_[i] : mpq_class(0);
        mpq_class y = i < b.c_.size() ? b.c_[i] : mpq_class(0);
        if (x != y)
            return false;
    }
    return true;
}

std::string Scalar::str() const
{
    if (!mod_)
        return coeff_token(c_[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i)
            s += ',';
        s += coeff_token(c_[i]);
    }
    return s + "]@" + poly_str(*mod_);
}

Scalar Scalar::parse(std::string const & text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty())
        throw std::invalid_argument("Scalar::parse: empty value");
    auto parse_q = [&](std::string const & t) {
        mpq_class q;
        if (t.empty() || q.set_str(t, 10) != 0)
            throw std::invalid_argument("Scalar::parse: bad rational '" + t + "'");
        if (q.get_den() == 0)
            throw std::invalid_argument("Scalar::parse: zero denominator in '" + t + "'");
        q.canonicalize();
        return q;
    };
    if (s[0] != '[') {
        if (s[0] == '+')
            s.erase(0, 1);
        return Scalar(parse_q(s));
    }
    auto close = s.find(']');
    if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != '@')
        throw std::invalid_argument("Scalar::parse: expected '[c0,...]@poly', got '" + text + "'");
    std::vector<mpq_class> coeffs;
    std::string body = s.substr(1, close - 1);
    std::size_t start = 0;
    while (start <= body.size()) {
        auto comma = body.find(',', start);
        std::string tok = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        coeffs.push_back(parse_q(tok));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    auto f = std::make_shared<IntPoly const>(parse_poly(s.substr(close + 2)));
    if (coeffs.size() > f->size() - 1)
        throw std::invalid_argument("Scalar::parse: too many coefficients for modulus in '" + text + "'");
    return field(std::move(coeffs), f);
}

mpq_class rpow(std::int64_t p, std::int64_t e)
{
    if (p == 0)
        throw std::domain_error("rpow: zero base");
    mpz_class b = p, r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    mpq_class q = e < 0 ? mpq_class(1) / mpq_class(r) : mpq_class(r);
    q.canonicalize();
    return q;
}

Scalar scale(Scalar const & s, std::int64_t p, std::int64_t e) { return s * Scalar(rpow(p, e)); }

Scalar pow(Scalar const & s, unsigned e)
{
    Scalar r(1), b = s;
    while (e) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

} // namespace paramod
