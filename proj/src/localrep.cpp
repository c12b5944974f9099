#include "paramod/localrep.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace paramod {

SPoly poly_trim(SPoly p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
    return p;
}

std::string spoly_str(SPoly const & p0)
{
    SPoly p = poly_trim(p0);
    if (p.empty())
        return "0";
    std::string out;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i].is_zero())
            continue;
        std::string c = p[i].str();
        if (!out.empty())
            out += " + ";
        if (i == 0)
            out += c;
        else {
            if (c != "1")
                out += "(" + c + ")*";
            out += i == 1 ? "X" : "X^" + std::to_string(i);
        }
    }
    return out;
}

bool poly_equal(SPoly const & a, SPoly const & b)
{
    SPoly x = poly_trim(a), y = poly_trim(b);
    if (x.size() != y.size())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i])
            return false;
    return true;
}

namespace {

SPoly padd(SPoly a, SPoly const & b)
{
    if (a.size() < b.size())
        a.resize(b.size(), Scalar(0));
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] += b[i];
    return poly_trim(a);
}

SPoly pneg(SPoly a)
{
    for (auto & c : a)
        c = -c;
    return a;
}

SPoly pmul(SPoly const & a, SPoly const & b)
{
    if (a.empty() || b.empty())
        return {};
    SPoly r(a.size() + b.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return poly_trim(r);
}

Scalar constant_of(SPoly const & p, std::string const & what)
{
    SPoly t = poly_trim(p);
    if (t.size() > 1)
        throw std::domain_error(what + ": expression depends on X");
    return t.empty() ? Scalar(0) : t[0];
}

} // namespace

struct Expr::Node
{
    enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow } kind;
    mpq_class num;
    std::string name;
    long exponent = 0;
    std::shared_ptr<Node const> l, r;
};

namespace {

using NodeP = std::shared_ptr<Expr::Node const>;

class Parser
{
  public:
    explicit Parser(std::string const & s) : s_(s) {}

    NodeP run()
    {
        NodeP e = expr();
        skip();
        if (i_ != s_.size())
            fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return e;
    }

  private:
    std::string const & s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(std::string const & m) const
    {
        throw std::invalid_argument("expression '" + s_ + "' at " + std::to_string(i_) + ": " + m);
    }

    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    static NodeP bin(Expr::Node::Kind k, NodeP a, NodeP b)
    {
        auto n = std::make_shared<Expr::Node>();
        n->kind = k;
        n->l = std::move(a);
        n->r = std::move(b);
        return n;
    }

    NodeP expr()
    {
        NodeP e = term();
        for (;;) {
            if (eat('+'))
                e = bin(Expr::Node::Add, e, term());
            else if (eat('-'))
                e = bin(Expr::Node::Sub, e, term());
            else
                return e;
        }
    }

    NodeP term()
    {
        NodeP e = unary();
        for (;;) {
            if (eat('*'))
                e = bin(Expr::Node::Mul, e, unary());
            else if (eat('/'))
                e = bin(Expr::Node::Div, e, unary());
            else
                return e;
        }
    }

    NodeP unary()
    {
        if (eat('-')) {
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Node::Neg;
            n->l = unary();
            return n;
        }
        if (eat('+'))
            return unary();
        return power();
    }

    NodeP power()
    {
        NodeP base = atom();
        if (!eat('^'))
            return base;
        skip();
        bool neg = false;
        if (i_ < s_.size() && s_[i_] == '-')
            neg = true, ++i_;
        std::size_t st = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        if (st == i_)
            fail("integer exponent expected");
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Pow;
        n->l = base;
        n->exponent = std::stol(s_.substr(st, i_ - st)) * (neg ? -1 : 1);
        return n;
    }

    NodeP atom()
    {
        skip();
        if (i_ >= s_.size())
            fail("unexpected end");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            NodeP e = expr();
            if (!eat(')'))
                fail("')' expected");
            return e;
        }
        auto n = std::make_shared<Expr::Node>();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                ++i_;
            n->kind = Expr::Node::Num;
            n->num = mpq_class(s_.substr(st, i_ - st));
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t st = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                ++i_;
            n->kind = Expr::Node::Var;
            n->name = s_.substr(st, i_ - st);
            return n;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

SPoly eval_node(Expr::Node const & n, Env const & env)
{
    using K = Expr::Node;
    switch (n.kind) {
    case K::Num:
        return poly_trim({Scalar(n.num)});
    case K::Var: {
        if (n.name == "X")
            return {Scalar(0), Scalar(1)};
        auto it = env.find(n.name);
        if (it == env.end())
            throw std::invalid_argument("unbound variable '" + n.name + "'");
        return poly_trim({it->second});
    }
    case K::Neg:
        return pneg(eval_node(*n.l, env));
    case K::Add:
        return padd(eval_node(*n.l, env), eval_node(*n.r, env));
    case K::Sub:
        return padd(eval_node(*n.l, env), pneg(eval_node(*n.r, env)));
    case K::Mul:
        return pmul(eval_node(*n.l, env), eval_node(*n.r, env));
    case K::Div: {
        Scalar d = constant_of(eval_node(*n.r, env), "division");
        if (d.is_zero())
            throw std::domain_error("division by zero in expression");
        Scalar di = d.inv();
        SPoly a = eval_node(*n.l, env);
        for (auto & c : a)
            c *= di;
        return a;
    }
    case K::Pow: {
        SPoly b = eval_node(*n.l, env);
        long e = n.exponent;
        if (e < 0) {
            Scalar c = constant_of(b, "negative power");
            if (c.is_zero())
                throw std::domain_error("zero to a negative power");
            b = {c.inv()};
            e = -e;
        }
        SPoly r = {Scalar(1)};
        for (long i = 0; i < e; ++i)
            r = pmul(r, b);
        return r;
    }
    }
    return {};
}

void collect_vars(Expr::Node const & n, std::set<std::string> & out)
{
    if (n.kind == Expr::Node::Var && n.name != "X")
        out.insert(n.name);
    if (n.l)
        collect_vars(*n.l, out);
    if (n.r)
        collect_vars(*n.r, out);
}

} // namespace

Expr Expr::parse(std::string const & text)
{
    Expr e;
    e.root_ = Parser(text).run();
    e.text_ = text;
    return e;
}

SPoly Expr::eval_poly(Env const & env) const { return eval_node(*root_, env); }

Scalar Expr::eval(Env const & env) const { return constant_of(eval_poly(env), "expression '" + text_ + "'"); }

std::set<std::string> Expr::variables() const
{
    std::set<std::string> v;
    collect_vars(*root_, v);
    return v;
}

std::string category_name(Category c) { return c == Category::Cat1 ? "Cat1" : "Cat2"; }

std::string genericity_name(Genericity g)
{
    switch (g) {
    case Genericity::Generic:
        return "Generic";
    case Genericity::NonGeneric:
        return "NonGeneric";
    default:
        return "NeedsEigenFlag";
    }
}

/*
 * Variables: q, rq = q^(1/2), s = sigma(w), chi, chi1, chi2, xi = value at
 * the uniformizer. Non-numeric rows keep the printed entries as text.
 */
std::vector<EigenRow> const & eigenvalue_table()
{
    static std::vector<EigenRow> const rows = {
        {"I", "chi1,chi2,sigma unr.", true, "0", "1", "q*rq*s*(1+chi1+chi2+chi1*chi2)",
         "q^2*(chi1+chi2+1/chi1+1/chi2+1-1/q^2)", 2, ""},
        {"I", "chi1,chi2 ram., sigma unr.", false, "a(chi1)+a(chi2)", "chi1(-1)", "q^(3/2)(s+1/s)", "0", 2, ""},
        {"I", "chi_i sigma unr., sigma ram.", false, "2a(sigma)", "chi1(-1)",
         "q^(3/2)((chi1 sigma)(w)+(chi2 sigma)(w))", "0", 2, ""},
        {"I", "chi_i sigma ram., sigma ram.", false, "a(chi1 sigma)+a(chi2 sigma)+2a(sigma)", "chi1(-1)", "0",
         "-q^2", 1, ""},
        {"IIa", "sigma,chi unr.", true, "1", "-chi*s", "q*rq*(s+1/s)+(q+1)*s*chi", "q*rq*(chi+1/chi)", 2, ""},
        {"IIa", "sigma ram., chi sigma unr.", false, "2a(sigma)+1", "-sigma(-1)(chi sigma)(w)", "q(chi sigma)(w)",
         "-q^2", 1, ""},
        {"IIa", "sigma unr., chi sigma ram.", false, "2a(sigma chi)", "chi(-1)", "q^(3/2)(s+1/s)", "0", 2, ""},
        {"IIa", "sigma, chi sigma ram.", false, "2a(chi sigma)+2a(sigma)", "chi(-1)", "0", "-q^2", 1, ""},
        {"IIb", "chi sigma unr., sigma unr.", true, "0", "1", "q*rq*(s+1/s)+q*(q+1)*s*chi",
         "q*rq*(q+1)*(chi+1/chi)+q^2-1", 2, "SK"},
        {"IIb", "chi sigma unr., sigma ram.", false, "2a(sigma)", "chi(-1)", "q(q+1)(sigma chi)(w)", "0", 2, "SK"},
        {"IIb", "chi sigma ram.", false, "", "", "", "", 0, "SK"},
        {"IIIa", "sigma unr.", true, "2", "1", "q*(s+1/s)", "-q^2+q", 1, ""},
        {"IIIa", "sigma ram.", false, "4a(sigma)", "1", "0", "-q^2", 1, ""},
        {"IIIb", "sigma unr.", true, "0", "1", "q*(q+1)*s*(1+chi)", "q^2*(chi+1/chi+q+1)+q-1", 2, ""},
        {"IIIb", "sigma ram.", false, "", "", "", "", 0, ""},
        {"IVa", "sigma unr.", true, "3", "-s", "s", "-q^2", 1, ""},
        {"IVa", "sigma ram.", false, "4a(sigma)", "1", "0", "-q^2", 1, ""},
        {"IVb", "sigma unr.", true, "2", "1", "s*(1+q^2)", "-q^2+q", 1, "non-unit."},
        {"IVb", "sigma ram.", false, "", "", "", "", 0, "non-unit."},
        {"IVc", "sigma unr.", true, "1", "-s", "s*(q^3+q+2)", "q^3+1", 2, "non-unit."},
        {"IVc", "sigma ram.", false, "", "", "", "", 0, "non-unit."},
        {"IVd", "sigma unr.", true, "0", "1", "s*(q+1)*(q^2+1)", "q*(q+1)*(q^2+1)", 2, "one-dim."},
        {"IVd", "sigma ram.", false, "", "", "", "", 0, "one-dim."},
        {"Va", "sigma, xi unr.", true, "2", "-1", "0", "-q^2-q", 1, ""},
        {"Va", "sigma unr., xi ram.", false, "2a(xi)+1", "-sigma(w)xi(-1)", "sigma(w)q", "-q^2", 1, ""},
        {"Va", "sigma ram., sigma xi unr.", false, "2a(sigma)+1", "-sigma(-1)(xi sigma)(w)", "(xi sigma)(w)q",
         "-q^2", 1, ""},
        {"Va", "sigma, sigma xi ram.", false, "2a(xi sigma)+2a(sigma)", "xi(-1)", "0", "-q^2", 1, ""},
        {"Vb", "sigma, xi unr.", true, "1", "s", "s*(q^2-1)", "-q^2-q", 2, "SK"},
        {"Vb", "sigma unr., xi ram.", false, "2a(xi)", "xi(-1)", "sigma(w)(q^2+q)", "0", 2, "SK"},
        {"Vb", "sigma ram., sigma xi unr.", false, "", "", "", "", 0, "SK"},
        {"Vb", "sigma, sigma xi ram.", false, "", "", "", "", 0, "SK"},
        {"Vc", "sigma, xi unr.", true, "1", "-s", "-s*(q^2-1)", "-q^2-q", 2, "SK"},
        {"Vc", "sigma unr., xi ram.", false, "", "", "", "", 0, "SK"},
        {"Vc", "sigma ram., sigma xi unr.", false, "2a(sigma)", "xi(-1)", "(xi sigma)(w)(q^2+q)", "0", 2, "SK"},
        {"Vc", "sigma, sigma xi ram.", false, "", "", "", "", 0, "SK"},
        {"Vd", "sigma, xi unr.", true, "0", "1", "0", "-(q+1)*(q^2+1)", 2, ""},
        {"Vd", "sigma or xi ram.", false, "", "", "", "", 0, ""},
        {"VIa", "sigma unr.", true, "2", "1", "2*q*s", "-q^2+q", 1, ""},
        {"VIa", "sigma ram.", false, "4a(sigma)", "1", "0", "-q^2", 1, ""},
        {"VIb", "sigma unr.", false, "", "", "", "", 0, ""},
        {"VIb", "sigma ram.", false, "", "", "", "", 0, ""},
        {"VIc", "sigma unr.", true, "1", "-s", "s*(q+1)^2", "q*(q+1)", 2, "SK"},
        {"VIc", "sigma ram.", false, "", "", "", "", 0, "SK"},
        {"VId", "sigma unr.", true, "0", "1", "2*q*(q+1)*s", "(q+1)*(q^2+2*q-1)", 2, ""},
        {"VId", "sigma ram.", false, "", "", "", "", 0, ""},
        {"VII", "", false, "2a(pi)", "chi(-1)", "0", "-q^2", 1, ""},
        {"VIIIa", "", false, "2a(pi)", "1", "0", "-q^2", 1, ""},
        {"VIIIb", "", false, "", "", "", "", 0, ""},
        {"IXa", "", false, "2a(pi)", "xi(-1)", "0", "-q^2", 1, ""},
        {"IXb", "", false, "", "", "", "", 0, ""},
        {"X", "sigma unr.", false, "a(pi)", "eps(1/2,sigma pi)", "q^(3/2)(s+1/s)", "0", 2, ""},
        {"X", "sigma ram.", false, "a(sigma pi)+2a(sigma)", "sigma(-1)eps(1/2,sigma pi)", "0", "-q^2", 1, ""},
        {"XIa", "sigma unr.", false, "a(sigma pi)+1", "-sigma(w)eps(1/2,sigma pi)", "q sigma(w)", "-q^2", 1, ""},
        {"XIa", "sigma ram.", false, "a(sigma pi)+2a(sigma)", "sigma(-1)eps(1/2,sigma pi)", "0", "-q^2", 1, ""},
        {"XIb", "sigma unr.", false, "a(pi)", "eps(1/2,sigma pi)", "(q^2+q)sigma(w)", "0", 2, "SK"},
        {"XIb", "sigma ram.", false, "", "", "", "", 0, "SK"},
        {"s.c.", "generic", false, "N >= 4", "eps", "0", "-q^2", 1, ""},
        {"s.c.", "non-generic", false, "", "", "", "", 0, ""},
    };
    return rows;
}

/* for ramified rows the conductor exponent N_pi is the parameter a */
std::vector<DimRow> const & dimension_table()
{
    static std::string const c1 = "(n-a+2)*(n-a+3)/2", c1b = "n-a+2";
    static std::string const c2 = "(n-a+1)*(n-a+4)/2", c2b = "n-a+1";
    static std::vector<DimRow> const rows = {
        {"I", "I", "chi1,chi2,sigma unr.", "0", "0", "(n^2+5*n+2)/2", "1", "n", 2, true, ""},
        {"I/chi-ram", "I", "chi1,chi2 ram., sigma unr.", "a", "a", c2, "a", c2b, 2, true, ""},
        {"I/sigma-ram", "I", "chi_i sigma unr., sigma ram.", "a", "a", c2, "a", c2b, 2, true, ""},
        {"I/all-ram", "I", "chi_i sigma ram., sigma ram.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"IIa", "IIa", "sigma,chi unr.", "1", "1", "n*(n+3)/2", "1", "n", 2, true, ""},
        {"IIa/sigma-ram", "IIa", "sigma ram., chi sigma unr.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"IIa/chisigma-ram", "IIa", "sigma unr., chi sigma ram.", "a", "a", c2, "a", c2b, 2, true, ""},
        {"IIa/both-ram", "IIa", "sigma, chi sigma ram.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"IIb", "IIb", "chi sigma unr., sigma unr.", "0", "0", "n+1", "", "0", 2, false, "SK"},
        {"IIb/sigma-ram", "IIb", "chi sigma unr., sigma ram.", "a", "a", "n-a+1", "", "0", 2, false, "SK"},
        {"IIIa", "IIIa", "sigma unr.", "2", "1", "n*(n+1)/2", "1", "n", 1, true, ""},
        {"IIIa/sigma-ram", "IIIa", "sigma ram.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"IIIb", "IIIb", "sigma unr.", "0", "0", "2*n+1", "", "0", 2, false, ""},
        {"IVa", "IVa", "sigma unr.", "3", "2", "(n-1)*n/2", "2", "n-1", 1, true, ""},
        {"IVa/sigma-ram", "IVa", "sigma ram.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"IVb", "IVb", "sigma unr.", "2", "1", "n", "1", "1", 1, false, "non-unit."},
        {"IVc", "IVc", "sigma unr.", "1", "1", "2*n", "1", "1", 2, false, "non-unit."},
        {"IVd", "IVd", "sigma unr.", "0", "0", "1", "", "0", 2, false, "one-dim."},
        {"Va", "Va", "sigma, xi unr.", "2", "1", "n*(n+1)/2", "1", "n", 1, true, ""},
        {"Va/xi-ram", "Va", "sigma unr., xi ram.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"Va/sigma-ram", "Va", "sigma ram., sigma xi unr.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"Va/both-ram", "Va", "sigma, sigma xi ram.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"Vb", "Vb", "sigma, xi unr.", "1", "1", "n", "", "0", 2, false, "SK"},
        {"Vb/xi-ram", "Vb", "sigma unr., xi ram.", "a", "a", "n-a+1", "", "0", 2, false, "SK"},
        {"Vc", "Vc", "sigma, xi unr.", "1", "1", "n", "", "0", 2, false, "SK"},
        {"Vc/sigma-ram", "Vc", "sigma ram., sigma xi unr.", "a", "a", "n-a+1", "", "0", 2, false, "SK"},
        {"Vd", "Vd", "sigma, xi unr.", "0", "0", "1", "", "0", 2, false, ""},
        {"VIa", "VIa", "sigma unr.", "2", "1", "n*(n+1)/2", "1", "n", 1, true, ""},
        {"VIa/sigma-ram", "VIa", "sigma ram.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"VIc", "VIc", "sigma unr.", "1", "1", "n", "", "0", 2, false, "SK"},
        {"VId", "VId", "sigma unr.", "0", "0", "n+1", "", "0", 2, false, ""},
        {"VII", "VII", "", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"VIIIa", "VIIIa", "", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"IXa", "IXa", "", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"X", "X", "sigma unr.", "a", "a", c2, "a", c2b, 2, true, ""},
        {"X/sigma-ram", "X", "sigma ram.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"XIa", "XIa", "sigma unr.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"XIa/sigma-ram", "XIa", "sigma ram.", "a", "a-1", c1, "a-1", c1b, 1, true, ""},
        {"XIb", "XIb", "sigma unr.", "a", "a", "n-a+1", "", "0", 2, false, "SK"},
        {"s.c.", "s.c.", "generic", "a", "a-1", c1, "a-1", c1b, 1, true, "a >= 4"},
    };
    return rows;
}

/* eigen-form polynomials use lambda, mu, eps, q */
std::vector<CharpolyRow> const & charpoly_table()
{
    static std::vector<CharpolyRow> const rows = {
        {"I",
         "(X-chi1*(1+chi2)*s*q*rq)*(X-chi2*(1+chi1)*s*q*rq)*(X-(1+chi1)*s*q*rq)*(X-(1+chi2)*s*q*rq)",
         "(X-chi1*q^2)*(X-chi2*q^2)*(X-q^2/chi2)*(X-q^2/chi1)",
         "X^4-2*lambda*X^3+(lambda^2+q*mu+3*q^3+q)*X^2-q*lambda*(mu+3*q^2+1)*X+q^3*lambda^2",
         "X^4-(mu-q^2+1)*X^3+(q*lambda^2-2*q^2*mu-2*q^2)*X^2-q^4*(mu-q^2+1)*X+q^8"},
        {"IIa", "X^2-(2*chi*s*q+(s+1/s)*q*rq)*X+q^2+q^3+(chi+1/chi)*q^2*rq", "X^2-(chi+1/chi)*q*rq*X+q^3",
         "X^2+((q-1)*eps-lambda)*X+q*(q^2+q+mu)", "X^2-mu*X+q^3"},
        {"IIb", "X^2-(2*chi*s*q^2+(s+1/s)*q*rq)*X+q^3+q^4+(chi+1/chi)*q^3*rq", "X^2-(chi+1/chi)*q^2*rq*X+q^5",
         "X^2-lambda*(mu+1+q^2+2*q^3)/(mu+1+q+q^2+q^3)*X+q^2*mu/(q+1)+q^2*(q^2+1)",
         "X^2-q*(mu/(q+1)-q+1)*X+q^5"},
        {"IIIa", "X-q*(s+1/s)", "X-q", "X-lambda", "X-q"},
        {"IIIb",
         "X^3-(s+1/s)*q*(1+2*q)*X^2+(1+3*q+(chi+1/chi)*q)*q^2*(q+1)*X-(s+1/s)*q^4*(q+1)^2",
         "X^3-((chi+1/chi)*q^2+q^3)*X^2+((chi+1/chi)*q^5+q^4)*X-q^7",
         "X^3-lambda*(1+q/(1+q))*X^2+(1+2*q^2-q^3+mu)*q*(q+1)*X-lambda*q^3*(q+1)",
         "X^3-(mu+1-q-q^2)*X^2+q^3*(mu+1-q^2-q^3)*X-q^7"},
        {"IVb", "X-s*(1+q^2)", "X-q", "X-lambda", "X-q"},
        {"IVc", "X^2-s*(1+2*q+q^3)*X+q*(1+q)*(1+q^2)", "X^2-(1+q^3)*X+q^3",
         "X^2-lambda*(1+2*q+q^3)/(2+q+q^3)*X+q*(1+q)*(1+q^2)", "X^2-(1+q^3)*X+q^3"},
        {"IVd", "X-s*(q^2+q^3)", "X-q^4", "X-lambda*q^2/(q^2+1)", "X-q^4"},
        {"Va", "X", "X+q", "X", "X+q"},
        {"Vb", "X-s*(q^2-q)", "X+q^2", "X-lambda*q/(q+1)", "X+q^2"},
        {"Vc", "X+s*(q^2-q)", "X+q^2", "X-lambda*q/(q+1)", "X+q^2"},
        {"Vd", "X", "X+q^3", "X", "X+q^3"},
        {"VIa", "X-2*q*s", "X-q", "X-lambda", "X-q"},
        {"VIc", "X-s*(q^2+q)", "X-q^2", "X-lambda*q/(q+1)", "X-q^2"},
        {"VId", "X^2-s*(q+3*q^2)*X+2*q^3*(q+1)", "(X-q^2)*(X-q^3)", "X^2-lambda/2*(1+2*q/(1+q))*X+2*q^3*(q+1)",
         "(X-q^2)*(X-q^3)"},
    };
    return rows;
}

void check_tables()
{
    std::set<std::string> seen;
    for (auto const & r : eigenvalue_table()) {
        std::string key = r.type + " | " + r.inducing;
        if (!seen.insert(key).second)
            throw std::logic_error("eigenvalue table: duplicate row " + key);
        if (r.numeric)
            for (auto const * f : {&r.N_pi, &r.epsilon, &r.lambda, &r.mu})
                Expr::parse(*f);
    }
    seen.clear();
    for (auto const & r : dimension_table()) {
        if (!seen.insert(r.key).second)
            throw std::logic_error("dimension table: duplicate row " + r.key);
        for (auto const * f : {&r.N_pi, &r.N_s, &r.dim, &r.dimbar})
            Expr::parse(*f);
        if (!r.Nbar.empty())
            Expr::parse(r.Nbar);
    }
    seen.clear();
    for (auto const & r : charpoly_table()) {
        if (!seen.insert(r.type).second)
            throw std::logic_error("charpoly table: duplicate row " + r.type);
        for (auto const * f : {&r.t01_inducing, &r.t10_inducing, &r.t01_eigen, &r.t10_eigen})
            Expr::parse(*f);
    }
}

namespace {

DimRow const & dim_row(std::string const & key)
{
    for (auto const & r : dimension_table())
        if (r.key == key)
            return r;
    throw std::invalid_argument("unknown dimension-table key '" + key + "'");
}

CharpolyRow const & cp_row(std::string const & type)
{
    for (auto const & r : charpoly_table())
        if (r.type == type)
            return r;
    throw std::invalid_argument("type '" + type + "' has no characteristic-polynomial entry");
}

std::int64_t int_eval(std::string const & text, Env const & env)
{
    mpq_class v = Expr::parse(text).eval(env).rational();
    if (v.get_den() != 1)
        throw std::domain_error("'" + text + "' is not integral here");
    return v.get_num().get_si();
}

Env dim_env(DimRow const & r, std::map<std::string, std::int64_t> const & params, std::int64_t n)
{
    Env env;
    env["n"] = Scalar(static_cast<long>(n));
    bool needs_a = r.N_pi == "a";
    if (needs_a) {
        auto it = params.find("a");
        if (it == params.end())
            throw std::invalid_argument("row " + r.key + " needs parameter a");
        if (it->second < 1 || (r.key == "s.c." && it->second < 4))
            throw std::invalid_argument("row " + r.key + ": parameter a out of range");
        env["a"] = Scalar(static_cast<long>(it->second));
    }
    return env;
}

} // namespace

std::int64_t n_s_of(std::string const & key, std::map<std::string, std::int64_t> const & params)
{
    DimRow const & r = dim_row(key);
    return int_eval(r.N_s, dim_env(r, params, 0));
}

std::int64_t dim_vs(std::string const & key, std::map<std::string, std::int64_t> const & params, std::int64_t n)
{
    DimRow const & r = dim_row(key);
    Env env = dim_env(r, params, n);
    if (n < int_eval(r.N_s, env))
        return 0;
    return int_eval(r.dim, env);
}

std::int64_t dimbar_vs(std::string const & key, std::map<std::string, std::int64_t> const & params, std::int64_t n)
{
    DimRow const & r = dim_row(key);
    Env env = dim_env(r, params, n);
    if (n < int_eval(r.N_s, env))
        return 0;
    if (!r.Nbar.empty() && n < int_eval(r.Nbar, env))
        return 0;
    return int_eval(r.dimbar, env);
}

SPoly charpoly_vs1(std::string const & type, LocalProfile const & prof, Which which)
{
    CharpolyRow const & r = cp_row(type);
    Env env;
    env["q"] = Scalar(static_cast<long>(prof.q));
    env["lambda"] = prof.lambda;
    env["mu"] = prof.mu;
    if (prof.epsilon)
        env["eps"] = Scalar(*prof.epsilon);
    Expr e = Expr::parse(which == Which::T01s ? r.t01_eigen : r.t10_eigen);
    if (e.variables().count("eps") && !prof.epsilon)
        throw std::invalid_argument("type " + type + " needs epsilon");
    return e.eval_poly(env);
}

SPoly charpoly_inducing(std::string const & type, Env const & data, Which which)
{
    CharpolyRow const & r = cp_row(type);
    return Expr::parse(which == Which::T01s ? r.t01_inducing : r.t10_inducing).eval_poly(data);
}

LocalProfile profile_from_row(std::string const & type, Env const & data)
{
    for (auto const & r : eigenvalue_table()) {
        if (r.type != type || !r.numeric)
            continue;
        LocalProfile p;
        auto qi = data.find("q");
        if (qi == data.end())
            throw std::invalid_argument("profile_from_row: q missing");
        p.q = qi->second.rational().get_num().get_si();
        p.N_pi = int_eval(r.N_pi, data);
        p.lambda = Expr::parse(r.lambda).eval(data);
        p.mu = Expr::parse(r.mu).eval(data);
        Scalar e = Expr::parse(r.epsilon).eval(data);
        if (e == Scalar(1))
            p.epsilon = 1;
        else if (e == Scalar(-1))
            p.epsilon = -1;
        else
            throw std::domain_error("profile_from_row: epsilon " + e.str() + " is not a sign");
        return p;
    }
    throw std::invalid_argument("no unramified eigenvalue row for type '" + type + "'");
}

ClassOutcome classify(LocalProfile const & prof, std::optional<bool> t01_eigen)
{
    if (prof.N_pi < 2)
        throw std::out_of_range("classify: the category criterion needs N_pi >= 2, got " +
                                std::to_string(prof.N_pi));
    Scalar q(static_cast<long>(prof.q));
    ClassOutcome out;
    bool mu0 = prof.mu.is_zero();
    out.category = mu0 ? Category::Cat2 : Category::Cat1;
    Scalar ivb_lambda = Scalar(1) + q * q;
    if (mu0 && t01_eigen && *t01_eigen)
        out.generic = Genericity::NonGeneric;
    else if (prof.N_pi == 2 && prof.mu == q - q * q && (prof.lambda == ivb_lambda || prof.lambda == -ivb_lambda))
        out.generic = Genericity::NonGeneric;
    else if (mu0 && !t01_eigen)
        out.generic = Genericity::NeedsEigenFlag;
    else
        out.generic = Genericity::Generic;

    Env env{{"q", q}};
    auto fixed = [](Expr const & e) {
        auto v = e.variables();
        return v.empty() || (v.size() == 1 && v.count("q"));
    };
    for (auto const & r : eigenvalue_table()) {
        if (!r.numeric || r.category == 0)
            continue;
        if (int_eval(r.N_pi, env) != prof.N_pi)
            continue;
        if ((r.category == 1) != !mu0)
            continue;
        Expr mu = Expr::parse(r.mu), la = Expr::parse(r.lambda), ep = Expr::parse(r.epsilon);
        if (fixed(mu) && mu.eval(env) != prof.mu)
            continue;
        if (fixed(la) && la.eval(env) != prof.lambda)
            continue;
        if (prof.epsilon && fixed(ep) && ep.eval(env) != Scalar(*prof.epsilon))
            continue;
        out.rows.push_back(r.type + " (" + r.inducing + ")");
    }
    return out;
}

} // namespace paramod
