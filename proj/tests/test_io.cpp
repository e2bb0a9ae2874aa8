#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "vosper/io.hpp"

using namespace vosper;
using nlohmann::json;

namespace {

std::string tmp_path(const std::string& name) {
    return std::string("io_test_") + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("progression generator produces the interval") {
    auto rec = generate_set("ap", json{{"p", 1009}, {"start", 0}, {"diff", 1}, {"len", 50}}, 0);
    CHECK(rec.set.p == 1009);
    CHECK(rec.set.size() == 50);
    for (std::int64_t x = 0; x < 50; ++x) CHECK(rec.set.contains(x));
    CHECK(rec.provenance.at("generator") == "ap");
}

TEST_CASE("noisy generator is reproducible per seed") {
    json params{{"p", 1009}, {"start", 0}, {"diff", 1}, {"len", 50}, {"outliers", 2}};
    auto a = generate_set("ap-plus-noise", params, 7);
    auto b = generate_set("ap-plus-noise", params, 7);
    auto c = generate_set("ap-plus-noise", params, 8);
    CHECK(a.set.members == b.set.members);
    CHECK(a.set.size() == 52);
    CHECK(a.set.members != c.set.members); // different seed, different outliers
}

TEST_CASE("random generator hits the requested size deterministically") {
    json params{{"p", 401}, {"size", 60}};
    auto a = generate_set("random", params, 3);
    auto b = generate_set("random", params, 3);
    CHECK(a.set.size() == 60);
    CHECK(a.set.members == b.set.members);
}

TEST_CASE("union generator merges two progressions") {
    json params{{"p", 101},   {"start1", 0}, {"diff1", 1}, {"len1", 10},
                {"start2", 50}, {"diff2", 2}, {"len2", 5}};
    auto rec = generate_set("union-two-aps", params, 0);
    CHECK(rec.set.size() == 15);
    CHECK(rec.set.contains(58));
}

TEST_CASE("bohr-sample generator equals the direct scan") {
    json params{{"p", 101}, {"freqs", {1}}, {"radius", 0.1}};
    auto rec = generate_set("bohr-sample", params, 0);
    auto direct = bohr_set(TorusHom{101, {1}}, 0.1);
    CHECK(rec.set.members == direct.members);
}

TEST_CASE("unknown generator kinds and missing parameters are rejected") {
    CHECK_THROWS_AS(generate_set("mystery", json{{"p", 11}}, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_set("ap", json{{"start", 0}, {"diff", 1}, {"len", 3}}, 0),
                    std::invalid_argument);
}

TEST_CASE("set records round-trip through disk") {
    auto rec = generate_set("ap-plus-noise",
                            json{{"p", 401}, {"start", 3}, {"diff", 2}, {"len", 20}, {"outliers", 1}},
                            11);
    auto path = tmp_path("roundtrip.json");
    save_set(rec, path);
    auto back = load_set(path);
    CHECK(back.set.p == rec.set.p);
    CHECK(back.set.members == rec.set.members);
    CHECK(back.provenance == rec.provenance);
    std::remove(path.c_str());
}

TEST_CASE("saving the same record twice is byte-identical") {
    auto rec = generate_set("ap", json{{"p", 101}, {"start", 0}, {"diff", 3}, {"len", 7}}, 5);
    auto p1 = tmp_path("dump1.json");
    auto p2 = tmp_path("dump2.json");
    save_set(rec, p1);
    save_set(rec, p2);
    CHECK(slurp(p1) == slurp(p2));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("corrupt input reports the byte offset") {
    auto path = tmp_path("corrupt.json");
    {
        std::ofstream out(path);
        out << "{\"p\": 101, \"members\": [0, 1, }";
    }
    try {
        load_set(path);
        FAIL("expected a parse failure");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("saved records embed version, config and payload") {
    auto path = tmp_path("record.json");
    save_record(json{{"answer", 42}}, json{{"seed", "9"}}, path);
    auto back = load_record(path);
    CHECK(back.at("version") == kToolVersion);
    CHECK(back.at("config").at("seed") == "9");
    CHECK(back.at("payload").at("answer") == 42);
    CHECK(back.contains("timestamp"));
    std::remove(path.c_str());
}

TEST_CASE("ledger serialization tags log-space quantities") {
    auto L = parameter_ledger(0.05, 0.2, 0.1, 0.1, 3.0);
    auto j = ledger_to_json(L);
    CHECK(j.contains("log2:t0"));
    CHECK(j.contains("log2:F(M0)"));
    CHECK(j.at("lambda").get<double>() == L.lambda);
}

TEST_CASE("decomposition serialization carries both forms") {
    auto f = DensityFunction::indicator(401, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    auto growth = GrowthFunction::affine(2.0, 14.0);
    auto baby = baby_arl(f, 0.4, growth);
    auto jb = decomposition_to_json(baby);
    CHECK(jb.at("form") == "partition");
    CHECK(jb.at("f_str").at("re").size() == 401);

    auto torus = intermediate_arl(f, 0.4, growth);
    auto jt = decomposition_to_json(torus);
    CHECK(jt.at("form") == "torus");
    CHECK(jt.at("phi").at("p") == 401);
}

TEST_CASE("verification reports serialize with all inequality rows") {
    auto A = ArithmeticProgression{0, 1, 40}.as_set(401);
    auto rep = verify_theorem(A, 0.002, 0.1, 0.1);
    auto j = report_to_json(rep);
    CHECK(j.at("status") == rep.status);
    CHECK(j.at("inequalities").size() == rep.inequalities.size());
}
