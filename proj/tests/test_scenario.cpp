#include <doctest.h>

#include "stackcoh/errors.hpp"
#include "stackcoh/scenario.hpp"

using namespace stackcoh;

namespace {

ErrorKind parse_error_kind(const std::string& text)
{
    try {
        parse_scenario(text, "t");
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

const char* hkr_mu3 = R"(
# forced HKR differential
[scenario]
task = hkr-force
p = 3

[group]
name = mu_p

[window]
deg_max = 4

[abutment]
dims = 0:3
n_min = -2
n_max = 1
)";

}  // namespace

TEST_SUITE("scenario")
{
TEST_CASE("parsing")
{
    auto s = parse_scenario(hkr_mu3, "hkr");
    CHECK(s.task == "hkr-force");
    CHECK(s.p == 3);
    CHECK(s.name == "hkr");
    CHECK(s.window().deg_max == 4);
    CHECK(s.get("abutment", "dims", "") == "0:3");

    CHECK(parse_error_kind("[scenario]\ntask = ext\n") == ErrorKind::Parse);                // p missing
    CHECK(parse_error_kind("[scenario]\ntask = nope\np = 3\n") == ErrorKind::Parse);
    CHECK(parse_error_kind("[scenario]\ntask = ext\np = 4\n") == ErrorKind::Precondition);
    CHECK(parse_error_kind("[scenario]\ntask = ext\np = 3\n[window]\ndeg_max = 2\n") == ErrorKind::Parse);
    CHECK(parse_error_kind("[scenario]\ntask = pgl-omega1\np = 3\n[colour]\n") == ErrorKind::Parse);
    CHECK(parse_error_kind("[scenario]\ntask = pgl-omega1\np = 3\nfoo = 1\n") == ErrorKind::Parse);
    CHECK(parse_error_kind("[scenario]\ntask pgl-omega1\n") == ErrorKind::Parse);
    CHECK(parse_error_kind("p = 3\n") == ErrorKind::Parse);
    CHECK(parse_error_kind("[scenario]\ntask = pgl-omega1\np = 3\n[options]\nn = x\n") == ErrorKind::Parse);
}

TEST_CASE("forced HKR scenario")
{
    auto rep = run_scenario(parse_scenario(hkr_mu3, "hkr"));
    CHECK(rep["result"]["unique"] == true);
    REQUIRE(rep["search"].size() == 1);
    CHECK(rep["search"][0]["assignments"][0] == "d_3(d) = c^3");
    CHECK(rep["search"][0]["e_infinity"]["0"] == 3);
    CHECK(rep["search"][0]["e_infinity"]["1"] == 0);
}

TEST_CASE("Ext scenario at p = 2")
{
    auto rep = run_scenario(parse_scenario(R"(
[scenario]
task = ext
p = 2
[algebra]
factors = s^2
weights = -1
[window]
deg_max = 6
[options]
oracle_deg = 4
)",
                                           "ext"));
    for (const auto& c : rep["grades"])
        CHECK(c["dim"] == 1);
    CHECK(rep["grades"].size() == 7);
    CHECK(rep["result"]["squares"]["alpha"] == "nonzero");
    CHECK(rep["result"]["oracle"]["agrees"] == true);
}

TEST_CASE("crystalline scenario")
{
    auto rep = run_scenario(parse_scenario(R"(
[scenario]
task = crys-bg
p = 3
[group]
name = mu_p x mu_p
[window]
deg_max = 5
[options]
m = 3
)",
                                           "crys"));
    CHECK(rep["result"]["groups"][3]["exponents"] == json::array({1}));
    CHECK(rep["result"]["mod_p_consistent"] == true);
}

TEST_CASE("reports are deterministic and diffable")
{
    auto s = parse_scenario(hkr_mu3, "hkr");
    auto a = render_report(run_scenario(s));
    CHECK(a == render_report(run_scenario(s)));
    CHECK(a.back() == '\n');

    auto got = json::parse(a);
    CHECK(diff_reports(got, got).empty());
    auto bad = got;
    bad["grades"][0]["dim"] = 99;
    auto d = diff_reports(got, bad);
    REQUIRE(d.size() == 1);
    CHECK(d[0].find("cell (deg=") == 0);
    bad = got;
    bad["result"]["unique"] = false;
    d = diff_reports(got, bad);
    REQUIRE(d.size() == 1);
    CHECK(d[0].find("/result/unique") == 0);

    auto csv = render_csv(got);
    CHECK(csv.rfind("deg,wedge,weight,dim,indeterminate,labels\n", 0) == 0);
}

TEST_CASE("errors map onto exit codes")
{
    std::string text = hkr_mu3;
    text.replace(text.find("0:3"), 3, "0:7");
    auto s = parse_scenario(text, "bad");
    CHECK_THROWS_AS(run_scenario(s), Error);
    auto rep = run_scenario_captured(s);
    CHECK(rep["error"]["exit_code"] == 5);
    CHECK(exit_code(ErrorKind::Parse) == 2);
    CHECK(exit_code(ErrorKind::Precondition) == 3);
    CHECK(exit_code(ErrorKind::Resource) == 4);

    auto tiny = parse_scenario(R"(
[scenario]
task = hh
p = 5
[algebra]
factors = t^5
[window]
deg_max = 6
)",
                               "tiny");
    try {
        run_scenario(tiny, Budgets{100, 100});
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resource);
    }
}

TEST_CASE("algebra selection")
{
    auto s = parse_scenario("[scenario]\ntask = hh\np = 3\n[algebra]\nfactors = t^3, s^2\nweights = 1, 2\n[window]\ndeg_max = 1\n",
                            "a");
    auto a = scenario_algebra(s);
    CHECK(a.dim() == 6);
    auto h = parse_scenario("[scenario]\ntask = hh\np = 3\n[algebra]\nhopf = dual_alpha_p\n[window]\ndeg_max = 1\n", "h");
    CHECK(scenario_algebra(h).dim() == 3);
    CHECK(parse_error_kind("[scenario]\ntask = hh\np = 3\n[algebra]\nhopf = mu_p\nfactors = t^2\n[window]\ndeg_max = 1\n") ==
          ErrorKind::Parse);
}
}
