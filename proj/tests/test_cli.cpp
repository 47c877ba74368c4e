#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <weier/cli/parse.hpp>
#include <weier/cli/run.hpp>

#include "oracles.hpp"

using namespace weier;

namespace
{

const char *cubic_text = "x^3-y^3+2*x*y+x-2*y+1";

errc code_of(std::string_view text)
{
    try {
        parse_poly(text);
    } catch (const error &e) {
        return e.code();
    }
    return errc::internal;
}

std::size_t syntax_position(std::string_view text)
{
    try {
        parse_poly(text);
    } catch (const syntax_error &e) {
        return e.position();
    }
    return std::string::npos;
}

Request request(const std::string &cmd, const std::string &curve)
{
    Request rq;
    rq.command = cmd;
    rq.curve = curve;
    rq.json = true;
    rq.digits = 20;
    return rq;
}

struct Proc {
    int status = -1;
    std::string out;
};

Proc run_binary(const std::string &args)
{
    Proc p;
    const std::string cmd = std::string(WEIER_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return p;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        p.out.append(buf.data(), n);
    }
    const int st = pclose(pipe);
    p.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return p;
}

} // namespace

TEST(Parser, Fixtures)
{
    const BPoly cubic = parse_poly(cubic_text);
    EXPECT_EQ(cubic.total_degree(), 3);
    EXPECT_EQ(cubic.coeff({0, 3}), -1);
    EXPECT_EQ(cubic.coeff({1, 1}), 2);
    EXPECT_EQ(parse_poly("x^2+y^2-1"), parse_poly("(x)^2 + y*y - 1"));
    EXPECT_EQ(parse_poly("-(x-1/2)^2"), parse_poly("-x^2+x-1/4"));
    EXPECT_EQ(parse_poly("3/6*x"), parse_poly("1/2*x"));
    EXPECT_EQ(parse_poly("x^0"), BPoly(Rational(1)));
    EXPECT_TRUE(parse_poly("x-x").is_zero());
}

TEST(Parser, Errors)
{
    EXPECT_EQ(code_of("x^3-y^3+2xy"), errc::syntax_error);
    EXPECT_EQ(syntax_position("x^3-y^3+2xy"), 9u);
    EXPECT_EQ(code_of("2 x"), errc::syntax_error);
    EXPECT_EQ(code_of("x(y+1)"), errc::syntax_error);
    EXPECT_EQ(code_of("xy"), errc::syntax_error);
    EXPECT_EQ(code_of("z+1"), errc::unknown_variable);
    EXPECT_EQ(code_of("sqrt(2)"), errc::unknown_variable);
    EXPECT_EQ(code_of("0.5*x"), errc::syntax_error);
    EXPECT_EQ(code_of(""), errc::syntax_error);
    EXPECT_EQ(code_of("(x+1"), errc::syntax_error);
    EXPECT_EQ(code_of("x^-1"), errc::syntax_error);
    EXPECT_EQ(code_of("x^1001"), errc::syntax_error);
    EXPECT_EQ(code_of("1/0"), errc::syntax_error);
    EXPECT_EQ(code_of("x+*y"), errc::syntax_error);
}

TEST(Parser, RoundTripsThroughPrinter)
{
    oracle::Gen g(314);
    for (int it = 0; it < 100; ++it) {
        BPoly p = g.bpoly(static_cast<int>(g.integer(1, 5)), 20);
        // rational coefficients too
        p = p * BPoly(g.rational(7, 9));
        if (p.is_zero()) {
            continue;
        }
        const std::string text = to_string(p);
        EXPECT_EQ(parse_poly(text), p) << text;
        EXPECT_EQ(to_string(parse_poly(text)), text);
    }
}

TEST(Abscissa, Literals)
{
    EXPECT_EQ(parse_abscissa(" 1/2 "), Rational(1, 2));
    EXPECT_EQ(parse_abscissa("-3"), Rational(-3));
    try {
        parse_abscissa("sqrt(2)");
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::irrational_abscissa);
    }
    try {
        parse_abscissa("0.5");
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::syntax_error);
    }
}

TEST(Run, GenusAndSmooth)
{
    auto o = run(request("genus", cubic_text));
    EXPECT_EQ(o.exit_code, 0);
    EXPECT_EQ(o.doc["schema"], "weier/1");
    EXPECT_EQ(o.doc["result"]["genus"], 1);

    o = run(request("smooth", "y^2-x^3"));
    EXPECT_EQ(o.exit_code, 0);
    EXPECT_EQ(o.doc["result"]["smooth"], false);

    o = run(request("genus", "y^2-x^3"));
    EXPECT_EQ(o.exit_code, static_cast<int>(errc::not_smooth));
    EXPECT_EQ(o.doc["error"]["name"], "NotSmooth");

    auto rq = request("genus", "y^2-x^3");
    rq.assume_smooth = true;
    EXPECT_EQ(run(rq).exit_code, 0);
}

TEST(Run, ThirdKindAllPass)
{
    auto rq = request("third-kind", cubic_text);
    rq.x1 = "0";
    rq.x2 = "1";
    const auto o = run(rq);
    ASSERT_EQ(o.exit_code, 0) << o.doc.dump();
    const auto &r = o.doc["result"];
    EXPECT_EQ(r["naive_system"]["equations"], 6);
    EXPECT_EQ(r["naive_system"]["unknowns"], 6);
    EXPECT_EQ(r["symmetrized_system"]["matrix"], "rational");
    EXPECT_EQ(r["symmetrized_system"]["nullspace_dimension"], 1);
    EXPECT_TRUE(r["all_pass"].get<bool>());
    EXPECT_EQ(o.doc["input"]["x1"], "0");
    EXPECT_FALSE(o.doc.contains("timings_ms"));
    rq.timings = true;
    EXPECT_TRUE(run(rq).doc.contains("timings_ms"));
}

TEST(Run, DeterministicOutput)
{
    auto rq = request("verify", cubic_text);
    rq.x1 = "0";
    rq.x2 = "1";
    rq.root2 = 2;
    EXPECT_EQ(render(run(rq), true), render(run(rq), true));
    auto hq = request("haupt", cubic_text);
    hq.x1 = "0";
    hq.x2 = "1";
    hq.xp = "3";
    hq.a = {"2"};
    EXPECT_EQ(render(run(hq), true), render(run(hq), true));
    EXPECT_EQ(render(run(hq), false), render(run(hq), false));
}

TEST(Run, VerifyCorruptionFails)
{
    auto rq = request("verify", cubic_text);
    rq.x1 = "0";
    rq.x2 = "1";
    rq.corrupt_e0 = true;
    const auto o = run(rq);
    EXPECT_EQ(o.exit_code, static_cast<int>(errc::verification_failed));
    bool pinpointed = false;
    for (const auto &v : o.doc["result"]["verification"]) {
        if (!v["pass"].get<bool>() && v["check"].get<std::string>().find("residue at x=") == 0) {
            pinpointed = true;
        }
    }
    EXPECT_TRUE(pinpointed);
}

TEST(Run, ErrorCodesAreDistinct)
{
    auto tangent = request("third-kind", "x^2+y^2-1");
    tangent.x1 = "0";
    tangent.x2 = "1";
    auto same = request("third-kind", "x^2+y^2-1");
    same.x1 = "1/2";
    same.x2 = "1/2";
    same.root2 = 1;
    auto off = request("third-kind", "x^2+y^2-1");
    off.x1 = "0";
    off.x2 = "1/2";
    off.y2 = "1";
    const int a = run(tangent).exit_code, b = run(same).exit_code, c = run(off).exit_code;
    EXPECT_EQ(a, static_cast<int>(errc::multiple_roots));
    EXPECT_EQ(b, static_cast<int>(errc::same_abscissa));
    EXPECT_EQ(c, static_cast<int>(errc::point_not_on_curve));

    auto bad = request("genus", "x^3-y^3+2xy");
    EXPECT_EQ(run(bad).exit_code, static_cast<int>(errc::syntax_error));
    auto irr = request("third-kind", cubic_text);
    irr.x1 = "sqrt(2)";
    irr.x2 = "1";
    EXPECT_EQ(run(irr).exit_code, static_cast<int>(errc::irrational_abscissa));
}

TEST(Binary, ExitCodes)
{
    EXPECT_EQ(run_binary("genus -f 'x^3-y^3+2*x*y+x-2*y+1'").status, 0);
    EXPECT_EQ(run_binary("").status, 2);
    EXPECT_EQ(run_binary("third-kind -f 'x^2+y^2-1'").status, 2);
    EXPECT_EQ(run_binary("third-kind -f 'x^2+y^2-1' --x1 0 --x2 1").status, 17);
    EXPECT_EQ(run_binary("third-kind -f 'x^2+y^2-1' --x1 0 --x2 0").status, 20);
    EXPECT_EQ(run_binary("third-kind -f 'x^2+y^2-1' --x1 0 --x2 1/2 --y2 1").status, 21);
    EXPECT_EQ(run_binary("genus -f 'y^2-x^3'").status, 16);
    EXPECT_EQ(run_binary("verify -f 'x^3-y^3+2*x*y+x-2*y+1' --x1 0 --x2 1 --corrupt-e0").status, 29);
    EXPECT_EQ(run_binary("verify -f 'x^2+y^2-1' --x1 0 --x2 1/2").status, 0);
}

TEST(Binary, JsonMatchesLibrary)
{
    const Proc p = run_binary("haupt -f 'x^3-y^3+2*x*y+x-2*y+1' --x1 0 --x2 1 --xp 3 --a 2 --digits 50 --json");
    ASSERT_EQ(p.status, 0);
    const Json doc = Json::parse(p.out);
    EXPECT_EQ(doc["schema"], "weier/1");
    auto rq = request("haupt", cubic_text);
    rq.x1 = "0";
    rq.x2 = "1";
    rq.xp = "3";
    rq.a = {"2"};
    rq.digits = 50;
    EXPECT_EQ(render(run(rq), true), p.out);
}
