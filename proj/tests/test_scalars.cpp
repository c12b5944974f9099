#include "paramod/scalars.hpp"

#include <doctest.h>

#include <random>

using namespace paramod;

namespace {

std::shared_ptr<IntPoly const> poly(std::string const & s) { return std::make_shared<IntPoly const>(parse_poly(s)); }

Scalar rnd_q(std::mt19937_64 & rng)
{
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
    return Scalar(mpq_class(num(rng), den(rng)));
}

Scalar rnd_field(std::mt19937_64 & rng, std::shared_ptr<IntPoly const> const & f)
{
    std::vector<mpq_class> c;
    for (std::size_t i = 0; i + 1 < f->size(); ++i)
        c.push_back(rnd_q(rng).rational());
    return Scalar::field(c, f);
}

} // namespace

TEST_CASE("rational arithmetic and scaling")
{
    CHECK(scale(Scalar(512), 2, 3 - 10) == Scalar(4));
    CHECK(scale(Scalar(768) + Scalar(-256), 2, -7) == Scalar(4));
    Scalar x(mpq_class(-7, 3));
    CHECK((x + -x).is_zero());
    CHECK(x * x.inv() == Scalar(1));
    CHECK(Scalar(mpq_class(6, 4)).str() == "3/2");
    CHECK(Scalar::parse("-10/4") == Scalar(mpq_class(-5, 2)));
    CHECK(Scalar::parse("+3") == Scalar(3));
    CHECK(rpow(2, -3) == mpq_class(1, 8));
    CHECK(pow(Scalar(-2), 5) == Scalar(-32));
    CHECK_THROWS(Scalar(0).inv());
    CHECK_THROWS(Scalar::parse("1/0"));
    CHECK_THROWS(Scalar::parse(""));
    CHECK_THROWS(Scalar::parse("abc"));
}

TEST_CASE("field elements")
{
    auto f = poly("x^2-2");
    Scalar a = Scalar::generator(f);
    CHECK(a * a == Scalar::field({mpq_class(2), mpq_class(0)}, f));
    CHECK((a * a).rational() == 2);
    CHECK((a + -a).is_zero());
    Scalar b = Scalar(1) + a;
    CHECK(b * b.inv() == Scalar(1));
    CHECK(b.str() == "[1,1]@x^2-2");
    CHECK(Scalar::parse(b.str()) == b);
    CHECK_THROWS(a.rational());

    auto g = poly("x^2+1");
    CHECK_THROWS_AS(a + Scalar::generator(g), std::domain_error);
    CHECK_THROWS(parse_poly("2x^2+1"));

    // x^2 - 1 is reducible: x - 1 is a zero divisor
    auto h = poly("x^2-1");
    CHECK_THROWS(( Scalar::generator(h) - Scalar(1)).inv());
}

TEST_CASE("rational scalars mix with field elements")
{
    auto f = poly("x^3-x-1");
    Scalar a = Scalar::generator(f);
    Scalar r = a * Scalar(mpq_class(2, 3)) + Scalar(5);
    CHECK(r - Scalar(5) == Scalar(mpq_class(2, 3)) * a);
    CHECK(a * a * a == a + Scalar(1));
}

TEST_CASE("ring axioms on random operands")
{
    std::mt19937_64 rng(11);
    auto f = poly("x^3-3x+1");
    for (int t = 0; t < 300; ++t) {
        bool fld = t % 2;
        auto pick = [&] { return fld ? rnd_field(rng, f) : rnd_q(rng); };
        Scalar x = pick(), y = pick(), z = pick();
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK(x - x == Scalar(0));
        if (!y.is_zero())
            CHECK((x / y) * y == x);
    }
}

TEST_CASE("scaling law")
{
    std::mt19937_64 rng(5);
    auto f = poly("x^2-5");
    std::uniform_int_distribution<int> e(-12, 12);
    for (int t = 0; t < 200; ++t) {
        Scalar s = t % 2 ? rnd_field(rng, f) : rnd_q(rng);
        for (std::int64_t p : {2, 3, 7}) {
            int e1 = e(rng), e2 = e(rng);
            CHECK(scale(scale(s, p, e1), p, e2) == scale(s, p, e1 + e2));
        }
    }
}
