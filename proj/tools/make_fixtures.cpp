// Builds the coefficient fixtures F-<k>-16-2.csv from the printed identity tables.
#include "paramod/eigen.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace paramod;
using nlohmann::json;

int main(int argc, char ** argv)
{
    if (argc != 3) {
        std::cerr << "usage: make_fixtures <identity_tables.json> <outdir>\n";
        return 2;
    }
    std::ifstream in(argv[1]);
    json doc = json::parse(in);
    i64 p = doc["p"];
    int status = 0;
    for (auto const & [name, meta] : doc["forms"].items()) {
        i64 N = meta["level"];
        int k = meta["weight"];
        FourierExpansion F(N, k, Space::Paramodular, meta["bound"]);
        auto put = [&](RIndex const & R, std::string const & v, std::string const & where) {
            Scalar x = Scalar::parse(v);
            if (!R.integral() || !R.positive_definite() || !F.in_support(R.quad())) {
                if (!x.is_zero()) {
                    std::cerr << where << ": " << R.str() << " is outside A(" << N << ")+ but printed " << v << "\n";
                    status = 1;
                }
                return;
            }
            try {
                F.set(R.quad(), x);
            } catch (std::exception const & e) {
                std::cerr << where << ": " << e.what() << "\n";
                status = 1;
            }
        };
        for (auto const & c : doc["coefficients"][name]) {
            auto S = c["S"];
            put(RIndex(S[0], S[1], S[2]), c["value"], name + " coefficient table");
        }
        for (auto const & t : doc["tables"]) {
            if (t["form"] != name)
                continue;
            for (auto const & r : t["rows"]) {
                QuadIndex S{r["S"][0], r["S"][1], r["S"][2]};
                IdentityForm f = identity_form(t["identity"], S, p, k, vp(N, p));
                std::string where = t["name"].get<std::string>() + " " + name + " " + S.str();
                for (auto const & [label, v] : r["terms"].items()) {
                    if (v.is_null())
                        continue;
                    Term const * hit = nullptr;
                    for (auto const * side : {&f.factor, &f.rest})
                        for (auto const & tm : *side)
                            if (tm.label == label)
                                hit = &tm;
                    if (!hit) {
                        if (!Scalar::parse(v).is_zero()) {
                            std::cerr << where << ": printed term " << label << " is not part of the identity\n";
                            status = 1;
                        }
                        continue;
                    }
                    put(hit->index, v, where + " " + label);
                }
            }
        }
        std::string path = std::string(argv[2]) + "/F-" + std::to_string(k) + "-" + std::to_string(N) + "-2.csv";
        write_expansion(F, path);
        std::cout << path << ": " << F.size() << " orbits\n";
    }
    return status;
}
