#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>

using namespace paramod;

namespace {

std::vector<Mat2> gamma0pm_small(i64 N, i64 B)
{
    std::vector<Mat2> out;
    for (i64 c = -B; c <= B; ++c) {
        if (c % N)
            continue;
        for (i64 a = -B; a <= B; ++a)
            for (i64 b = -B; b <= B; ++b)
                for (i64 d = -B; d <= B; ++d) {
                    i64 det = a * d - b * c;
                    if (det == 1 || det == -1)
                        out.push_back({a, b, c, d});
                }
    }
    return out;
}

std::vector<Row> f7_table_rows()
{
    std::ifstream in(ptest::fixture_dir() + "/identity_tables.json");
    auto doc = nlohmann::json::parse(in);
    std::vector<Row> rows;
    for (auto const & c : doc["coefficients"]["F7"]) {
        Row r;
        r.S = {c["S"][0], c["S"][1], c["S"][2]};
        r.value = Scalar::parse(c["value"].get<std::string>());
        r.d = c["d"].get<i64>();
        r.line = rows.size() + 1;
        rows.push_back(r);
    }
    return rows;
}

} // namespace

TEST_CASE("lookup on the weight 7 fixture")
{
    FourierExpansion F = read_expansion(ptest::fixture_dir() + "/F-7-16-2.csv");
    CHECK(F.level() == 16);
    CHECK(F.weight() == 7);
    Lookup l = F.lookup(QuadIndex{2, -53, 352});
    CHECK(l.status == Lookup::Status::Known);
    CHECK(l.value == Scalar(1));
    // det -1 image picks up (-1)^7
    Lookup m = F.lookup(act({1, 0, 0, -1}, {2, -53, 352}));
    CHECK(m.status == Lookup::Status::Known);
    CHECK(m.value == Scalar(-1));
    CHECK(F.lookup(QuadIndex{1, 1, 3}).status == Lookup::Status::StructuralZero);
    CHECK(F.lookup(RIndex(1, 1, 16, 2)).status == Lookup::Status::StructuralZero);
    CHECK(F.lookup(QuadIndex{1, 0, 0}).status == Lookup::Status::StructuralZero);
    CHECK(F.lookup(QuadIndex{1, 1, 8}).status == Lookup::Status::StructuralZero);
    CHECK(F.lookup(QuadIndex{100, 1, 1600}).status == Lookup::Status::Unknown);
}

TEST_CASE("ingest the printed coefficient table")
{
    auto rows = f7_table_rows();
    REQUIRE(rows.size() == 10);
    FourierExpansion F = ingest(rows, 16, 7, Space::Paramodular);
    CHECK(F.size() == 10);
    CHECK(F.bound() == 29);
    for (auto const & r : rows)
        CHECK(F.lookup(r.S).value == r.value);

    FourierExpansion E = ingest({}, 16, 7, Space::Paramodular);
    CHECK(E.bound() == 1);
    CHECK(E.lookup(QuadIndex{2, -53, 352}).status == Lookup::Status::Unknown);
    CHECK(E.lookup(QuadIndex{1, 1, 3}).status == Lookup::Status::StructuralZero);

    auto twice = std::vector<Row>{rows[0], rows[0]};
    CHECK(ingest(twice, 16, 7, Space::Paramodular).size() == 1);
}

TEST_CASE("ingest rejects bad rows")
{
    Row bad{{1, 1, 3}, Scalar(1), std::nullopt, 4};
    try {
        ingest({bad}, 16, 7, Space::Paramodular);
        FAIL("accepted an index outside A(16)");
    } catch (std::exception const & e) {
        CHECK(std::string(e.what()).find("4") != std::string::npos);
    }
    Row r1{{2, -53, 352}, Scalar(1), std::nullopt, 1};
    Row r2{act({1, 0, 16, 1}, {2, -53, 352}), Scalar(2), std::nullopt, 2};
    CHECK_THROWS(ingest({r1, r2}, 16, 7, Space::Paramodular));
    // det -1 equivalent row must carry the opposite sign at odd weight
    Row r3{act({1, 0, 0, -1}, {2, -53, 352}), Scalar(-1), std::nullopt, 3};
    CHECK(ingest({r1, r3}, 16, 7, Space::Paramodular).size() == 1);
    Row r4{act({1, 0, 0, -1}, {2, -53, 352}), Scalar(1), std::nullopt, 3};
    CHECK_THROWS(ingest({r1, r4}, 16, 7, Space::Paramodular));
    Row wrong_d{{2, -53, 352}, Scalar(1), 8, 1};
    CHECK_THROWS(ingest({wrong_d}, 16, 7, Space::Paramodular));
}

TEST_CASE("doubled entries")
{
    IngestOptions opt;
    opt.doubled_entries = true;
    FourierExpansion F = ingest({{{4, -53, 704}, Scalar(1), 7, 1}}, 16, 7, Space::Paramodular, opt);
    CHECK(F.lookup(QuadIndex{2, -53, 352}).value == Scalar(1));
    CHECK_THROWS(ingest({{{3, -53, 704}, Scalar(1), std::nullopt, 1}}, 16, 7, Space::Paramodular, opt));
}

TEST_CASE("serialize round trip and parsing")
{
    FourierExpansion F = read_expansion(ptest::fixture_dir() + "/F-10-16-2.csv");
    FourierExpansion G = deserialize(serialize(F));
    CHECK(G.table() == F.table());
    CHECK(G.level() == F.level());
    CHECK(G.weight() == F.weight());
    CHECK(G.space() == F.space());
    CHECK(G.bound() == F.bound());

    FourierExpansion H = deserialize("# level=16\n# weight=7\n2,-53,352,1\n");
    CHECK(H.level() == 16);
    CHECK(H.weight() == 7);
    CHECK(H.lookup(QuadIndex{2, -53, 352}).value == Scalar(1));

    FourierExpansion K = deserialize("# level=4\n# weight=6\n# fieldpoly=x^2-2\n1,1,4,[1,1]@x^2-2\n");
    CHECK(K.field());
    CHECK(deserialize(serialize(K)).table() == K.table());

    CHECK_THROWS_AS(deserialize("# level=16\n2,-53,352,1\n"), ParseError);
    try {
        deserialize("# level=16\n# weight=7\n2,-53,352,1\n2,-53\n");
        FAIL("accepted a short row");
    } catch (ParseError const & e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("sign rule under Gamma_0(N)+-")
{
    auto gs = gamma0pm_small(16, 20);
    REQUIRE(gs.size() > 100);
    std::mt19937_64 rng(17);
    for (auto name : {"F-7-16-2.csv", "F-10-16-2.csv"}) {
        FourierExpansion F = read_expansion(ptest::fixture_dir() + "/" + name);
        int k = F.weight();
        for (auto const & [S, v] : F.table()) {
            for (int t = 0; t < 25; ++t) {
                Mat2 g = gs[std::uniform_int_distribution<std::size_t>(0, gs.size() - 1)(rng)];
                Lookup l = F.lookup(act(g, S));
                REQUIRE(l.status == Lookup::Status::Known);
                Scalar want = (g.det() < 0 && k % 2) ? -v : v;
                REQUIRE(l.value == want);
            }
        }
    }
}

TEST_CASE("lookup is never Known at or above the bound")
{
    std::mt19937_64 rng(3);
    FourierExpansion F = ptest::random_expansion(8, 6, 60, rng);
    for (i64 d = 60; d < 90; ++d)
        for (auto const & S : orbit_points(8, d + 1))
            if (S.disc4() >= 60)
                REQUIRE(F.lookup(S).status != Lookup::Status::Known);
    for (auto const & S : orbit_points(8, 60))
        REQUIRE(F.lookup(S).status == Lookup::Status::Known);
}

TEST_CASE("paramodular data viewed at stable Klingen level")
{
    std::mt19937_64 rng(9);
    FourierExpansion F = ptest::random_expansion(16, 8, 120, rng, 9, Space::Paramodular);
    std::size_t zeros = 0;
    for (auto const & S : orbit_points(16, 120)) {
        Lookup l = F.lookup(S);
        if (!in_index_set(S, 16, IndexSet::A)) {
            REQUIRE(l.status == Lookup::Status::StructuralZero);
            ++zeros;
        } else {
            REQUIRE(l.status == Lookup::Status::Known);
        }
    }
    CHECK(zeros > 0);
}

TEST_CASE("stored keys are canonical and pairwise inequivalent")
{
    FourierExpansion F = read_expansion(ptest::fixture_dir() + "/F-7-16-2.csv");
    auto G = CongruenceGroup::gamma0pm(16);
    std::vector<QuadIndex> keys;
    for (auto const & [S, v] : F.table()) {
        CHECK(canonical(S, 16).key == S);
        CHECK(in_index_set(S, 16, IndexSet::A));
        keys.push_back(S);
    }
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = i + 1; j < keys.size(); ++j)
            if (keys[i].disc4() == keys[j].disc4())
                CHECK_FALSE(equivalent(keys[i], keys[j], G));
}
