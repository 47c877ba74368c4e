#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <weier/cli/run.hpp>

namespace
{

void add_common(CLI::App *sub, weier::Request &rq)
{
    sub->add_option("-f,--curve", rq.curve, "curve polynomial in x, y, e.g. \"x^2+y^2-1\"")->required();
    sub->add_option("--digits", rq.digits, "decimal digits in output")->check(CLI::Range(1, 10000));
    sub->add_flag("--json", rq.json, "structured output");
    sub->add_flag("--assume-smooth", rq.assume_smooth, "skip the smoothness check");
    sub->add_flag("--timings", rq.timings, "report wall time per stage");
}

void add_points(CLI::App *sub, weier::Request &rq, bool haupt)
{
    sub->add_option("--x1", rq.x1, "abscissa of P1 (rational)")->required();
    sub->add_option("--x2", rq.x2, "abscissa of P2 (rational)")->required();
    sub->add_option("--root1", rq.root1, "root index of P1 in canonical order");
    sub->add_option("--root2", rq.root2, "root index of P2 in canonical order");
    sub->add_option("--y1", rq.y1, "rational ordinate of P1 instead of --root1");
    sub->add_option("--y2", rq.y2, "rational ordinate of P2 instead of --root2");
    sub->add_option("--series-order", rq.series_order, "series order for residue checks")->check(CLI::Range(1, 64));
    if (haupt) {
        sub->add_option("--xp", rq.xp, "abscissa of P'")->required();
        sub->add_option("--rootp", rq.rootp, "root index of P'");
        sub->add_option("--yp", rq.yp, "rational ordinate of P'");
        sub->add_option("--a", rq.a, "abscissas of the poles a_i (repeat genus times)");
        sub->add_option("--roota", rq.roota, "root indices of the a_i");
        sub->add_option("--b", rq.b, "rational ordinates of the a_i");
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"weier: Abelian differentials on smooth plane curves over Q"};
    app.require_subcommand(1);
    weier::Request rq;

    add_common(app.add_subcommand("genus", "degree and genus"), rq);
    add_common(app.add_subcommand("smooth", "exact smoothness test"), rq);
    add_common(app.add_subcommand("first-kind", "basis of first-kind differentials"), rq);
    auto *third = app.add_subcommand("third-kind", "differential of the third kind with poles P1, P2");
    add_common(third, rq);
    add_points(third, rq, false);
    auto *haupt = app.add_subcommand("haupt", "fundamental function at P1");
    add_common(haupt, rq);
    add_points(haupt, rq, true);
    auto *verify = app.add_subcommand("verify", "run all verification checks");
    add_common(verify, rq);
    add_points(verify, rq, false);
    verify->add_flag("--corrupt-e0", rq.corrupt_e0)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    rq.command = app.get_subcommands().front()->get_name();

    const weier::Outcome out = weier::run(rq);
    if (rq.json) {
        std::cout << weier::render(out, true);
    } else if (out.doc.contains("error")) {
        const auto &e = out.doc["error"];
        std::cerr << "error: " << e["name"].get<std::string>() << ": " << e["message"].get<std::string>() << "\n";
    } else {
        std::cout << weier::render(out, false);
    }
    return out.exit_code;
}
