#include "fdqe/cli.hpp"

#include "fdqe/json_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace fdqe;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream file(path);
    file << content;
    return path;
}

std::vector<nlohmann::json> parse_ndjson(const std::string& text) {
    std::vector<nlohmann::json> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) rows.push_back(nlohmann::json::parse(line));
    }
    return rows;
}

}  // namespace

TEST_CASE("check prints a verdict") {
    auto yes = run({"check", "2", "--lang", "base"});
    CHECK(yes.code == 0);
    CHECK(yes.out.find("QE: yes") != std::string::npos);

    auto no = run({"check", "3,2", "--lang", "min"});
    CHECK(no.code == 0);
    CHECK(no.out.find("QE: no") != std::string::npos);
    CHECK(no.out.find("certificate subalgebra:") != std::string::npos);
}

TEST_CASE("check emits valid JSON with a certificate") {
    auto r = run({"check", "3,2", "--lang", "min", "--json"});
    REQUIRE(r.code == 0);
    auto rows = parse_ndjson(r.out);
    REQUIRE(rows.size() == 1);
    const auto& v = rows[0];
    CHECK(v["algebra"] == nlohmann::json({3, 2}));
    CHECK(v["language"] == "min");
    CHECK(v["qe"] == false);
    CHECK(v.contains("certificate"));
    CHECK(v["certificate"]["e1"] != v["certificate"]["e2"]);
    CHECK(v["stats"]["candidates"].get<int>() > 0);
}

TEST_CASE("json output is byte-identical across runs") {
    for (auto args : {std::vector<std::string>{"check", "2,2", "--lang", "sim", "--json"},
                      {"sweep", "--bound", "4", "--lang", "min", "--json"},
                      {"embeddings", "2,1,1,1", "3,2", "--lang", "min", "--json"}}) {
        auto first = run(args);
        auto second = run(args);
        CHECK(first.code == 0);
        CHECK(first.out == second.out);
    }
}

TEST_CASE("check agrees with the corresponding sweep row") {
    for (const char* lang : {"base", "min", "sim", "star"}) {
        auto sweep_rows = parse_ndjson(run({"sweep", "--bound", "4", "--lang", lang, "--json"}).out);
        for (const auto& row : sweep_rows) {
            std::string algebra;
            for (std::size_t i = 0; i < row["algebra"].size(); ++i) {
                if (i > 0) algebra += ',';
                algebra += std::to_string(row["algebra"][i].get<int>());
            }
            auto check_rows = parse_ndjson(run({"check", algebra, "--lang", lang, "--json"}).out);
            REQUIRE(check_rows.size() == 1);
            CHECK(check_rows[0] == row);
        }
    }
}

TEST_CASE("embeddings enumerates and writes dot files") {
    auto dir = std::filesystem::temp_directory_path() / "fdqe_dot_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto base = (dir / "out.dot").string();

    auto r = run({"embeddings", "1,1", "2,1", "--lang", "sim", "--dot", base});
    CHECK(r.code == 0);
    CHECK(r.out.find("count: 4") != std::string::npos);
    for (int i = 1; i <= 4; ++i) {
        auto path = dir / ("out_" + std::to_string(i) + ".dot");
        REQUIRE(std::filesystem::exists(path));
        std::ifstream in(path);
        std::string first_line;
        std::getline(in, first_line);
        CHECK(first_line == "digraph bratteli {");
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("render emits dot for a matrix file") {
    auto path = temp_file("fdqe_matrix.json",
                          R"({"source": [1,1], "target": [1,2], "entries": [[0,2],[1,0]]})");
    auto r = run({"render", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("digraph bratteli {") == 0);
    CHECK(r.out.find("C1 -> A1") != std::string::npos);

    auto dashed = run({"render", path.string(), "--dashed"});
    CHECK(dashed.out.find("style=dashed") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("predicates evaluates rho_min and rho_sim from files") {
    auto id2 = temp_file("fdqe_id2.json",
                         R"({"algebra": [2], "blocks": [[[[1,0],[0,0]],[[0,0],[1,0]]]]})");
    auto r = run({"predicates", "--algebra", "2", "--op", "rho-min", "--input", id2.string(),
                  "--json"});
    REQUIRE(r.code == 0);
    auto value = nlohmann::json::parse(r.out);
    CHECK(value["predicate"] == "rho_min");
    CHECK(value["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));

    auto x = temp_file("fdqe_x.json", R"({"algebra": [1,1], "blocks": [[[[1,0]]],[[[0,0]]]]})");
    auto y = temp_file("fdqe_y.json", R"({"algebra": [1,1], "blocks": [[[[0,0]]],[[[1,0]]]]})");
    auto sim = run({"predicates", "--algebra", "1,1", "--op", "rho-sim", "--input", x.string(),
                    "--input2", y.string(), "--json"});
    REQUIRE(sim.code == 0);
    auto bounds = nlohmann::json::parse(sim.out);
    CHECK(bounds["lower"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(bounds["upper"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));

    auto missing = run({"predicates", "--algebra", "1,1", "--op", "rho-sim", "--input", x.string()});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("error:") != std::string::npos);

    std::filesystem::remove(id2);
    std::filesystem::remove(x);
    std::filesystem::remove(y);
}

TEST_CASE("predicates validates the element against the algebra") {
    auto id2 = temp_file("fdqe_id2b.json",
                         R"({"algebra": [2], "blocks": [[[[1,0],[0,0]],[[0,0],[1,0]]]]})");
    auto r = run({"predicates", "--algebra", "3", "--op", "rho-min", "--input", id2.string()});
    CHECK(r.code == 1);
    std::filesystem::remove(id2);
}

TEST_CASE("preserve probes an embedding from a matrix file") {
    auto path = temp_file("fdqe_double.json", R"({"source": [1], "target": [2], "entries": [[2]]})");
    auto r = run({"preserve", "1", "2", "--matrix", path.string(), "--predicate", "rho-min",
                  "--samples", "5", "--json"});
    REQUIRE(r.code == 0);
    auto report = nlohmann::json::parse(r.out);
    CHECK(report["max_discrepancy"].get<double>() >= 1.0 - 1e-6);
    CHECK(report["samples"] == 5);

    auto mismatch = run({"preserve", "1,1", "2", "--matrix", path.string(), "--predicate",
                         "rho-min"});
    CHECK(mismatch.code == 1);
    std::filesystem::remove(path);
}

TEST_CASE("malformed inputs exit with code one") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"check"}).code == 1);
    CHECK(run({"check", "1,x"}).code == 1);
    CHECK(run({"check", "2", "--lang", "wat"}).code == 1);
    CHECK(run({"sweep", "--bound", "zero"}).code == 1);
    CHECK(run({"sweep", "--bound", "0"}).code == 1);
    CHECK(run({"render", "/nonexistent/fdqe.json"}).code == 1);
    CHECK(run({"predicates", "--algebra", "2", "--op", "trace", "--input", "nope.json"}).code == 1);
}

TEST_CASE("fuzzed malformed command lines always exit with code one") {
    std::vector<std::string> bad_heads = {"--bogus", "frobnicate", "1,x,", "check2", ",,", "-3"};
    std::vector<std::string> tokens = {"check",  "sweep", "2",      "--lang", "min",   "3,2",
                                       "--json", "--dot", "--seed", "7",      "--bound"};
    std::mt19937_64 engine(99);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::string> args;
        args.push_back(bad_heads[engine() % bad_heads.size()]);
        int extra = static_cast<int>(engine() % 5);
        for (int i = 0; i < extra; ++i) args.push_back(tokens[engine() % tokens.size()]);
        auto r = run(args);
        CHECK(r.code == 1);
        CHECK(!r.err.empty());
    }
}

TEST_CASE("element json round trip") {
    auto algebra = BlockSizes::canonical({2, 1});
    Element x = Element::zero(algebra);
    x.blocks[0](0, 1) = std::complex<double>(0.25, -1.5);
    x.blocks[1](0, 0) = std::complex<double>(-3.0, 0.125);
    auto j = to_json(x, algebra);
    BlockSizes parsed_algebra = algebra;
    Element back = element_from_json(j, &parsed_algebra);
    CHECK(parsed_algebra == algebra);
    for (std::size_t i = 0; i < x.blocks.size(); ++i) CHECK(back.blocks[i] == x.blocks[i]);

    CHECK_THROWS_AS(element_from_json(nlohmann::json{{"algebra", {2}}}), ValidationError);
    CHECK_THROWS_AS(element_from_json(nlohmann::json::parse(
                        R"({"algebra": [2], "blocks": [[[[1,0]],[[0,0]]]]})")),
                    ValidationError);
}

TEST_CASE("element json accepts non-canonical block orders") {
    auto j = nlohmann::json::parse(
        R"({"algebra": [1, 2], "blocks": [[[[5,0]]], [[[1,0],[0,0]],[[0,0],[2,0]]]]})");
    BlockSizes algebra = BlockSizes::canonical({1});
    Element x = element_from_json(j, &algebra);
    CHECK(algebra.sizes() == std::vector<int>{2, 1});
    CHECK(x.blocks[0](0, 0) == std::complex<double>(1.0, 0.0));
    CHECK(x.blocks[0](1, 1) == std::complex<double>(2.0, 0.0));
    CHECK(x.blocks[1](0, 0) == std::complex<double>(5.0, 0.0));
}

TEST_CASE("matrix json round trip canonicalizes raw orders") {
    auto j = nlohmann::json::parse(R"({"source": [1,1], "target": [1,2], "entries": [[0,2],[1,0]]})");
    auto e = matrix_from_json(j);
    CHECK(e.source.sizes() == std::vector<int>{1, 1});
    CHECK(e.target.sizes() == std::vector<int>{2, 1});
    CHECK(e.entries == std::vector<std::vector<int>>{{2, 0}, {0, 1}});

    auto back = matrix_from_json(to_json(e));
    CHECK(back == e);

    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"({"source": [1]})")),
                    ValidationError);
}
