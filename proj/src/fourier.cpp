#include "paramod/fourier.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <tuple>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace paramod {

namespace {

i64 narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("RIndex: 64-bit overflow");
    return static_cast<i64>(v);
}

i64 gcd4(i64 a, i64 b, i64 c, i64 d)
{
    return std::gcd(std::gcd(a, b), std::gcd(c, d));
}

struct PairHash
{
    std::size_t operator()(std::pair<i64, QuadIndex> const & k) const noexcept
    {
        return std::hash<QuadIndex>{}(k.second) * 31u ^ std::hash<i64>{}(k.first);
    }
};

std::mutex cache_mutex;

CongruenceGroup const & gamma0pm_cached(i64 N)
{
    static std::map<i64, CongruenceGroup> groups;
    auto it = groups.find(N);
    if (it == groups.end()) {
        it = groups.emplace(N, CongruenceGroup::gamma0pm(N)).first;
        it->second.coset_reps();
    }
    return it->second;
}

std::string trim(std::string const & s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

i64 parse_int(std::string const & s, std::size_t line, char const * what)
{
    try {
        std::size_t pos = 0;
        long long v = std::stoll(trim(s), &pos);
        if (pos != trim(s).size())
            throw std::invalid_argument("");
        return v;
    } catch (std::exception const &) {
        throw ParseError("line " + std::to_string(line) + ": bad " + what + " '" + trim(s) + "'");
    }
}

} // namespace

std::string space_name(Space s)
{
    return s == Space::Paramodular ? "paramodular" : "stable_klingen";
}

Space parse_space(std::string const & s)
{
    std::string t = trim(s);
    if (t == "paramodular" || t == "K")
        return Space::Paramodular;
    if (t == "stable_klingen" || t == "stable-klingen" || t == "Ks")
        return Space::StableKlingen;
    throw std::invalid_argument("unknown space '" + s + "' (expected paramodular or stable_klingen)");
}

RIndex::RIndex(i64 a_, i64 b_, i64 c_, i64 den_) : a(a_), b(b_), c(c_), den(den_)
{
    if (den == 0)
        throw std::domain_error("RIndex: zero denominator");
    if (den < 0) {
        a = -a;
        b = -b;
        c = -c;
        den = -den;
    }
    i64 g = gcd4(a, b, c, den);
    if (g > 1) {
        a /= g;
        b /= g;
        c /= g;
        den /= g;
    }
}

QuadIndex RIndex::quad() const
{
    if (den != 1)
        throw std::domain_error("RIndex::quad: index is not integral: " + str());
    return {a, b, c};
}

bool RIndex::positive_definite() const
{
    return a > 0 && static_cast<i128>(4) * a * c - static_cast<i128>(b) * b > 0;
}

RIndex RIndex::bracket_lower(i64 xn, i64 xd, i64 p) const
{
    i128 x = xn, y = xd;
    i128 na = a * y * y + b * x * y + c * x * x;
    i128 nb = static_cast<i128>(p) * (b * y + 2 * c * x) * y;
    i128 nc = static_cast<i128>(p) * p * c * y * y;
    return RIndex(narrow(na), narrow(nb), narrow(nc), narrow(den * y * y));
}

RIndex RIndex::times(i64 num, i64 d) const
{
    return RIndex(narrow(static_cast<i128>(a) * num), narrow(static_cast<i128>(b) * num),
                  narrow(static_cast<i128>(c) * num), narrow(static_cast<i128>(den) * d));
}

std::string RIndex::str() const
{
    if (den == 1)
        return QuadIndex{a, b, c}.str();
    std::ostringstream o;
    o << '(' << a << ',' << b << ',' << c << ")/" << den;
    return o.str();
}

Canonical canonical(QuadIndex const & S, i64 N)
{
    static std::unordered_map<std::pair<i64, QuadIndex>, Canonical, PairHash> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({N, S});
    if (it != cache.end())
        return it->second;
    auto const & G = gamma0pm_cached(N);
    OrbitKey ok = orbit_key(S, G);
    Canonical c{ok.key, static_cast<int>(ok.h.det()), false};
    c.negative_stabilizer = has_negative_stabilizer(ok.key, G);
    if (cache.size() > 4000000)
        cache.clear();
    cache.emplace(std::make_pair(N, S), c);
    return c;
}

std::vector<QuadIndex> orbit_keys(i64 N, i64 d, IndexSet set)
{
    static std::map<std::tuple<i64, i64, bool>, std::vector<QuadIndex>> done;
    std::vector<QuadIndex> reps;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = done.find({N, d, set == IndexSet::A});
        if (it != done.end())
            return it->second;
        reps = orbit_reps(gamma0pm_cached(N), N, d, set);
    }
    std::vector<QuadIndex> keys;
    for (auto const & S : reps)
        keys.push_back(canonical(S, N).key);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::lock_guard<std::mutex> lock(cache_mutex);
    done.emplace(std::make_tuple(N, d, set == IndexSet::A), keys);
    return keys;
}

FourierExpansion::FourierExpansion(i64 N, int k, Space space, i64 bound, std::shared_ptr<IntPoly const> field)
    : N_(N), k_(k), space_(space), D_(bound), field_(std::move(field))
{
    if (N < 1)
        throw std::invalid_argument("FourierExpansion: level must be positive");
    if (k < 1)
        throw std::invalid_argument("FourierExpansion: weight must be positive");
}

i64 FourierExpansion::support_modulus() const
{
    return space_ == Space::Paramodular ? N_ : n_s(N_);
}

bool FourierExpansion::in_support(QuadIndex const & S) const
{
    return S.positive_definite() && S.c % support_modulus() == 0;
}

Lookup FourierExpansion::lookup(QuadIndex const & S) const
{
    if (!in_support(S))
        return Lookup::zero();
    if (S.disc4() >= D_)
        return Lookup::unknown();
    Canonical c = canonical(S, N_);
    auto it = table_.find(c.key);
    if (it != table_.end())
        return Lookup::known((c.det == -1 && k_ % 2) ? -it->second : it->second);
    if (c.negative_stabilizer && k_ % 2)
        return Lookup::known(Scalar(0));
    return Lookup::unknown();
}

Lookup FourierExpansion::lookup(RIndex const & S) const
{
    if (!S.integral())
        return Lookup::zero();
    return lookup(S.quad());
}

void FourierExpansion::set(QuadIndex const & S, Scalar const & v)
{
    if (!in_support(S))
        throw std::invalid_argument("index " + S.str() + " is outside " +
                                    std::string(space_ == Space::Paramodular ? "A(" : "B(") +
                                    std::to_string(N_) + ")+");
    Canonical c = canonical(S, N_);
    Scalar stored = (c.det == -1 && k_ % 2) ? -v : v;
    if (c.negative_stabilizer && k_ % 2 && !stored.is_zero())
        throw std::runtime_error("conflict: " + S.str() + " is fixed by a determinant -1 element, so its "
                                 "coefficient must vanish in odd weight, got " + v.str());
    auto it = table_.find(c.key);
    if (it != table_.end()) {
        if (it->second != stored)
            throw std::runtime_error("conflict: " + S.str() + " has value " + v.str() +
                                     " but the equivalent index " + c.key.str() + " has value " +
                                     it->second.str());
        return;
    }
    table_.emplace(c.key, stored);
}

FourierExpansion ingest(std::vector<Row> const & rows, i64 N, int k, Space space, IngestOptions const & opt)
{
    FourierExpansion F(N, k, space, 1, opt.field);
    i64 maxd = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto const & r = rows[i];
        std::size_t ln = r.line ? r.line : i + 1;
        QuadIndex S = r.S;
        if (opt.doubled_entries) {
            if (S.a % 2 || S.c % 2)
                throw std::invalid_argument("row " + std::to_string(ln) + ": doubled entries must have even "
                                            "first and last entries");
            S.a /= 2;
            S.c /= 2;
        }
        if (r.d && S.positive_definite() && S.disc4() != *r.d)
            throw std::invalid_argument("row " + std::to_string(ln) + ": disc4 of " + S.str() + " is " +
                                        std::to_string(S.disc4()) + ", the d column says " +
                                        std::to_string(*r.d));
        if (!F.in_support(S))
            throw std::invalid_argument("row " + std::to_string(ln) + ": index " + S.str() + " is outside " +
                                        (space == Space::Paramodular ? "A(" : "B(") + std::to_string(N) +
                                        ")+");
        try {
            F.set(S, r.value);
        } catch (std::runtime_error const & e) {
            throw std::runtime_error("row " + std::to_string(ln) + ": " + e.what());
        }
        maxd = std::max(maxd, S.disc4());
    }
    F.set_bound(opt.bound ? *opt.bound : maxd + 1);
    return F;
}

std::vector<std::string> split_fields(std::string const & line)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : line) {
        if (ch == '[')
            ++depth;
        else if (ch == ']')
            --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::string serialize(FourierExpansion const & F)
{
    std::ostringstream o;
    o << "# level=" << F.level() << "\n";
    o << "# weight=" << F.weight() << "\n";
    o << "# space=" << space_name(F.space()) << "\n";
    o << "# bound=" << F.bound() << "\n";
    if (F.field())
        o << "# fieldpoly=" << poly_str(*F.field()) << "\n";
    std::vector<std::pair<QuadIndex, Scalar>> rows(F.table().begin(), F.table().end());
    std::stable_sort(rows.begin(), rows.end(), [](auto const & x, auto const & y) {
        return std::make_pair(x.first.disc4(), x.first) < std::make_pair(y.first.disc4(), y.first);
    });
    for (auto const & [S, v] : rows)
        o << S.a << ',' << S.b << ',' << S.c << ',' << v.str() << "\n";
    return o.str();
}

FourierExpansion deserialize(std::string const & text, IngestOptions const & opt_in)
{
    IngestOptions opt = opt_in;
    std::optional<i64> N;
    std::optional<int> k;
    Space space = Space::Paramodular;
    std::vector<Row> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        std::string t = trim(line);
        if (t.empty())
            continue;
        if (t[0] == '#') {
            std::string h = trim(t.substr(1));
            auto eq = h.find('=');
            if (eq == std::string::npos)
                continue;
            std::string key = trim(h.substr(0, eq)), val = trim(h.substr(eq + 1));
            if (key == "level")
                N = parse_int(val, ln, "level");
            else if (key == "weight")
                k = static_cast<int>(parse_int(val, ln, "weight"));
            else if (key == "space") {
                try {
                    space = parse_space(val);
                } catch (std::exception const & e) {
                    throw ParseError("line " + std::to_string(ln) + ": " + e.what());
                }
            } else if (key == "bound")
                opt.bound = parse_int(val, ln, "bound");
            else if (key == "fieldpoly") {
                try {
                    opt.field = std::make_shared<IntPoly const>(parse_poly(val));
                } catch (std::exception const & e) {
                    throw ParseError("line " + std::to_string(ln) + ": " + e.what());
                }
            } else if (key == "doubled")
                opt.doubled_entries = val == "1" || val == "true";
            continue;
        }
        auto f = split_fields(t);
        if (f.size() != 4 && f.size() != 5)
            throw ParseError("line " + std::to_string(ln) + ": expected a,b,c,value or a,b,c,d,value");
        Row r;
        r.line = ln;
        r.S = {parse_int(f[0], ln, "a"), parse_int(f[1], ln, "b"), parse_int(f[2], ln, "c")};
        if (f.size() == 5)
            r.d = parse_int(f[3], ln, "d");
        try {
            r.value = Scalar::parse(f.back());
        } catch (std::exception const & e) {
            throw ParseError("line " + std::to_string(ln) + ": " + e.what());
        }
        if (!r.value.is_rational()) {
            if (!opt.field)
                throw ParseError("line " + std::to_string(ln) + ": field element without a fieldpoly header");
            if (*r.value.modulus() != *opt.field)
                throw ParseError("line " + std::to_string(ln) + ": field element modulus differs from fieldpoly");
            r.value = Scalar::field(r.value.coeffs(), opt.field);
        }
        rows.push_back(std::move(r));
    }
    if (!N)
        throw ParseError("missing '# level=' header");
    if (!k)
        throw ParseError("missing '# weight=' header");
    return ingest(rows, *N, *k, space, opt);
}

FourierExpansion read_expansion(std::string const & path, IngestOptions const & opt)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return deserialize(ss.str(), opt);
}

void write_expansion(FourierExpansion const & F, std::string const & path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << serialize(F);
}

} // namespace paramod
