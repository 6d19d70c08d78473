// stackcoh: run scenario files and replay the regression fixtures.

#include "stackcoh/errors.hpp"
#include "stackcoh/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace stackcoh;

namespace {

int cmd_run(const std::string& path, const std::string& out_dir, std::optional<std::size_t> cells,
            std::optional<std::size_t> branches)
{
    auto start = std::chrono::steady_clock::now();
    auto sc = load_scenario(path);
    auto report = run_scenario(sc, budgets_for(sc, cells, branches));
    fs::create_directories(out_dir);
    auto json_path = fs::path(out_dir) / (sc.name + ".json");
    write_atomically(json_path, render_report(report));
    std::cout << json_path.string() << "\n";
    if (sc.get_bool("output", "csv", false)) {
        auto csv_path = fs::path(out_dir) / (sc.name + ".csv");
        write_atomically(csv_path, render_csv(report));
        std::cout << csv_path.string() << "\n";
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cerr << sc.name << ": " << ms.count() << " ms\n";
    return 0;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_regress(const std::string& scen_dir, const std::string& fix_dir, bool update)
{
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(scen_dir))
        if (e.path().extension() == ".scn")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "no scenarios in " << scen_dir << "\n";
        return 1;
    }
    fs::create_directories(fix_dir);

    std::size_t passed = 0, failed = 0;
    for (const auto& f : files) {
        auto start = std::chrono::steady_clock::now();
        auto stem = f.stem().string();
        std::string text;
        try {
            auto sc = load_scenario(f);
            text = render_report(run_scenario_captured(sc, budgets_for(sc)));
        } catch (const Error& e) {
            std::cout << "FAIL " << stem << ": " << e.what() << "\n";
            ++failed;
            continue;
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        std::cerr << stem << ": " << ms.count() << " ms\n";
        auto fixture = fs::path(fix_dir) / (stem + ".json");
        if (update) {
            write_atomically(fixture, text);
            std::cout << "WROTE " << stem << "\n";
            ++passed;
            continue;
        }
        if (!fs::exists(fixture)) {
            std::cout << "FAIL " << stem << ": no fixture " << fixture.string() << "\n";
            ++failed;
            continue;
        }
        auto want = slurp(fixture);
        if (want == text) {
            std::cout << "PASS " << stem << "\n";
            ++passed;
            continue;
        }
        ++failed;
        std::cout << "FAIL " << stem << "\n";
        try {
            auto diffs = diff_reports(json::parse(text), json::parse(want));
            if (diffs.empty())
                diffs.push_back("formatting differs");
            for (const auto& d : diffs)
                std::cout << "  " << d << "\n";
        } catch (const json::exception& e) {
            std::cout << "  fixture is not valid JSON: " << e.what() << "\n";
        }
    }
    std::cout << passed << " passed, " << failed << " failed\n";
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact cohomology of classifying stacks of finite group schemes"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run one scenario and write its report");
    std::string scenario, out_dir = ".";
    std::optional<std::size_t> cells, branches;
    run->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--budget-cells", cells, "Largest chain group the engines may build");
    run->add_option("--budget-branches", branches, "Branch budget of the differential search");

    auto* reg = app.add_subcommand("regress", "Replay scenarios and diff against fixtures");
    std::string scen_dir, fix_dir;
    bool update = false;
    reg->add_option("--scenarios", scen_dir, "Scenario directory")->required()->check(CLI::ExistingDirectory);
    reg->add_option("--fixtures", fix_dir, "Fixture directory")->required();
    reg->add_flag("--update", update, "Rewrite the fixtures instead of comparing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*run)
            return cmd_run(scenario, out_dir, cells, branches);
        return cmd_regress(scen_dir, fix_dir, update);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
