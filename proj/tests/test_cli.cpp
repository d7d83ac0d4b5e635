#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <hyperroots/cli.hpp>

using namespace hyperroots;

namespace
{

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fixture(const std::string &name)
{
    return slurp(std::filesystem::path(HYPERROOTS_FIXTURES) / name);
}

errc parse_code(const std::string &text)
{
    try {
        parse_family(text);
    } catch (const error &e) {
        return e.code();
    }
    FAIL("document was accepted: " << text);
    return errc::invalid_argument;
}

json run_json(const std::string &cmd, const std::string &text, RunConfig cfg, int expect_exit)
{
    const auto res = run_command(cmd, text, cfg);
    INFO(res.output);
    CHECK(res.exit_code == expect_exit);
    return json::parse(res.output);
}

} // namespace

TEST_CASE("parse_family: minimal polynomial document")
{
    const auto doc = parse_family(R"({"kind": "polynomial_family", "variables": ["x1", "x2"], "degree": 2,
        "coefficients": {"a2": [{"exponents": [2, 0], "num": -1, "den": 1},
                                {"exponents": [0, 2], "num": -1, "den": 1}]}})");
    const Series x = Series::variable(2, 0), y = Series::variable(2, 1);
    CHECK(doc.family() == MonicFamily(2, {Series(2), -(x * x + y * y)}));
    CHECK(doc.family().to_string(doc.variables) == "z^2 + (-x1^2 - x2^2)");
}

TEST_CASE("parse_family: errors")
{
    const std::string head = R"({"kind": "polynomial_family", "variables": ["x"], "degree": 2, "coefficients": )";
    CHECK(parse_code(head + R"({"a2": [{"exponents": [1], "num": 1, "den": 1}, {"exponents": [1], "num": 2, "den": 1}]}})")
          == errc::schema_error);
    CHECK(parse_code(head + R"({"a2": [{"exponents": [1], "num": 1, "den": 0}]}})") == errc::schema_error);
    CHECK(parse_code(head + R"({"a2": [{"exponents": [1], "num": 1, "den": -3}]}})") == errc::schema_error);
    CHECK(parse_code(head + R"({"a2": [{"exponents": [1, 0], "num": 1, "den": 1}]}})") == errc::schema_error);
    CHECK(parse_code(head + R"({"a3": []}})") == errc::schema_error);
    CHECK(parse_code(head + R"({"a2": [{"exponents": [1], "num": 1.5, "den": 1}]}})") == errc::parse_error);
    CHECK(parse_code(head + R"({"a2": [{"exponents": [1], "den": 1}]}})") == errc::parse_error);
    CHECK(parse_code(head + "{") == errc::parse_error);
    CHECK(parse_code(R"({"kind": "tensor", "variables": ["x"]})") == errc::schema_error);

    try {
        parse_family("{\n  \"kind\": \"polynomial_family\",\n  \"variables\": [\"x\"],,\n}");
        FAIL("accepted");
    } catch (const error &e) {
        CHECK(e.code() == errc::parse_error);
        CHECK(e.detail().find("line 3") != std::string::npos);
    }
    try {
        parse_family(head + R"({"a1": [{"exponents": [1], "num": "x", "den": 1}]}})");
        FAIL("accepted");
    } catch (const error &e) {
        CHECK(e.code() == errc::parse_error);
        CHECK(e.detail().find("/coefficients/a1/0/num") != std::string::npos);
    }
}

TEST_CASE("parse_family: matrix symmetry tags")
{
    const std::string asym = R"({"kind": "matrix_family", "variables": ["x"], "size": 2, "symmetry": "symmetric",
        "entries": [[[], [{"exponents": [1], "num": 1, "den": 1}]], [[], []]]})";
    CHECK(parse_code(asym) == errc::schema_error);
    const std::string ragged = R"({"kind": "matrix_family", "variables": ["x"], "size": 2, "symmetry": "symmetric",
        "entries": [[[], []], [[]]]})";
    CHECK(parse_code(ragged) == errc::schema_error);
    const auto doc = parse_family(fixture("uncontrolled.json"));
    CHECK(doc.matrix().tag() == symmetry::symmetric);
    CHECK(doc.matrix().size() == 2);
}

TEST_CASE("round trip on every fixture")
{
    int n = 0;
    for (const auto &entry : std::filesystem::directory_iterator(HYPERROOTS_FIXTURES)) {
        if (entry.path().extension() != ".json") {
            continue;
        }
        INFO(entry.path());
        const auto doc = parse_family(slurp(entry.path()));
        const auto again = parse_family(serialize_family(doc).dump());
        CHECK(again == doc);
        CHECK(serialize_family(again) == serialize_family(doc));
        ++n;
    }
    CHECK(n >= 9);
}

TEST_CASE("big rationals survive the round trip")
{
    FamilyDocument doc;
    doc.variables = {"t"};
    doc.dimension = 1;
    doc.coefficients = {Series::monomial(1, Monomial{3}, make_rat(mpz_class("123456789012345678901234567890"), mpz_class(7)))};
    CHECK(parse_family(serialize_family(doc).dump()) == doc);
}

TEST_CASE("command examples")
{
    RunConfig cfg;
    auto d = run_json("discriminants", fixture("cubic_three_roots.json"), cfg, 0);
    std::vector<std::string> ds;
    for (const auto &e : d["discriminants"]) {
        ds.push_back(e["value"]["text"]);
    }
    CHECK(ds == std::vector<std::string>{"4", "6", "3"});

    auto dd = run_json("discriminants", fixture("double_root.json"), cfg, 0);
    CHECK(dd["discriminants"][1]["value"]["text"] == "18");
    CHECK(dd["distinct_roots"] == 2);

    cfg.order = 8;
    auto r = run_json("rellich", fixture("shifted_pair.json"), cfg, 0);
    REQUIRE(r["branches"].size() == 2);
    CHECK(r["branches"][0]["text"] == "x - x^2 + O(9)");
    CHECK(r["branches"][1]["text"] == "x + x^2 + O(9)");
    CHECK(r["residual_zero"] == true);

    auto v = run_json("rellich", fixture("not_hyperbolic.json"), cfg, 1);
    CHECK(v["error"]["code"] == "HYPERBOLICITY_VIOLATION");

    auto u = run_json("diag", fixture("uncontrolled.json"), cfg, 1);
    CHECK(u["status"] == "error");
    CHECK(u["error"]["code"] == "NOT_WELL_ORDERED");

    cfg.chart_from = 1;
    cfg.chart_to = 2;
    auto ub = run_json("diag", fixture("uncontrolled.json"), cfg, 0);
    CHECK(ub["check"]["eigen"] == true);
    CHECK(ub["check"]["orthonormal"] == true);
    cfg.chart_from = cfg.chart_to = 0;

    auto ns = run_json("diag", fixture("nonsymdiag.json"), cfg, 1);
    CHECK(ns["error"]["code"] == "UNSUPPORTED_FAMILY");

    auto cb = run_json("canonical", fixture("rotation_block.json"), cfg, 0);
    CHECK(cb["lambdas"][0]["text"] == "x^2 + y^2 + O(9)");

    auto sp = run_json("split2d", fixture("circle.json"), cfg, 0);
    CHECK(sp["exponent"] == 1);
    CHECK(sp["residual_zero"] == true);
    for (const auto &b : sp["boundary_derivative"]["branches"]) {
        CHECK(b["terms"].empty());
    }
}

TEST_CASE("exit codes and input errors")
{
    RunConfig cfg;
    CHECK(run_json("frobnicate", fixture("circle.json"), cfg, 2)["error"]["code"] == "UNKNOWN_COMMAND");
    CHECK(run_json("rellich", "{", cfg, 2)["error"]["code"] == "PARSE_ERROR");
    CHECK(run_json("diag", fixture("circle.json"), cfg, 2)["error"]["code"] == "INVALID_ARGUMENT");
    cfg.order = 0;
    CHECK(run_json("rellich", fixture("circle.json"), cfg, 2)["error"]["code"] == "INVALID_ARGUMENT");
    cfg.order = 16;
    cfg.tol = 0;
    CHECK(run_json("lipschitz", fixture("circle.json"), cfg, 2)["error"]["code"] == "INVALID_ARGUMENT");
    CHECK_THROWS_AS(parse_region("1,0,0,1"), error);
    CHECK(parse_region("-1,1,0,2").x2_max == 2);
}

TEST_CASE("lipschitz scan and csv")
{
    RunConfig cfg;
    auto l = run_json("lipschitz", fixture("circle.json"), cfg, 0);
    REQUIRE(l["sup_quotients"].size() == 3);
    for (double q : l["sup_quotients"]) {
        CHECK(std::abs(q - 1.0) < 1e-3);
    }
    cfg.format = "csv";
    cfg.grid = 3;
    cfg.levels = 1;
    const auto res = run_command("lipschitz", fixture("circle.json"), cfg);
    CHECK(res.exit_code == 0);
    std::istringstream in(res.output);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x1,x2,lambda_1,lambda_2");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    CHECK(rows == 9);
}

TEST_CASE("randomized commands are deterministic given the seed")
{
    RunConfig cfg;
    cfg.count = 40;
    cfg.size = 5;
    const auto a = run_command("lidskii", "", cfg);
    const auto b = run_command("lidskii", "", cfg);
    CHECK(a.output == b.output);
    auto j = json::parse(a.output);
    CHECK(j["in_hull"] == 40);
    CHECK(j["weyl"] == 40);
    cfg.count = 10;
    auto f = run_json("lidskii", fixture("uncontrolled.json"), cfg, 0);
    CHECK(f["source"] == "family");
    CHECK(f["in_hull"] == 10);
}
