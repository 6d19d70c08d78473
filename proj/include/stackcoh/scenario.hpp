#pragma once

// Scenario files and JSON reports.
//
// A scenario is line-oriented text: `[section]` headers, `key = value`
// lines, `#` comments.  Sections: scenario (task, p), group, algebra,
// window, options, abutment, budget, output.  Reports are JSON with the
// top-level keys scenario, window, grades, rings, search and result.

#include "stackcoh/algebra.hpp"
#include "stackcoh/graded.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stackcoh {

using json = nlohmann::json;

struct Scenario {
    std::string name;
    std::string task;
    std::uint32_t p = 2;
    std::map<std::string, std::map<std::string, std::string>> sections;

    bool has(const std::string& sec, const std::string& key) const;
    std::string get(const std::string& sec, const std::string& key, const std::string& fallback) const;
    /// Throws Parse when the key is missing.
    std::string need(const std::string& sec, const std::string& key) const;
    int get_int(const std::string& sec, const std::string& key, int fallback) const;
    int need_int(const std::string& sec, const std::string& key) const;
    bool get_bool(const std::string& sec, const std::string& key, bool fallback) const;
    Window window() const;
};

const std::vector<std::string>& scenario_tasks();

/// Throws Parse on malformed lines, unknown sections or keys, unknown tasks
/// and missing task-specific fields; Precondition when p is not prime.
Scenario parse_scenario(const std::string& text, const std::string& default_name);
Scenario load_scenario(const std::filesystem::path& path);

struct Budgets {
    std::size_t cells = 1000000;
    std::size_t branches = 100000;
};

/// Defaults, then the scenario's [budget] section, then explicit overrides.
Budgets budgets_for(const Scenario& s, std::optional<std::size_t> cells = std::nullopt,
                    std::optional<std::size_t> branches = std::nullopt);

/// The algebra selected by [algebra]: `hopf = mu_p | alpha_p | dual_mu_p |
/// dual_alpha_p`, or `factors = t^3, s^2` with `weights = 1, -1`.
PresentedAlgebra scenario_algebra(const Scenario& s);

/// Runs the task; library errors propagate.
json run_scenario(const Scenario& s, const Budgets& b = {});
/// Like run_scenario, but an Error becomes an `error` object in the report.
json run_scenario_captured(const Scenario& s, const Budgets& b = {});

json grades_json(const GradedSpace& g);
/// Pretty-printed with sorted keys and a trailing newline.
std::string render_report(const json& report);
std::string render_csv(const json& report);

/// Differences between a report and its fixture; grade cells are named by
/// (deg, wedge, weight), everything else by JSON pointer.
std::vector<std::string> diff_reports(const json& got, const json& want);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace stackcoh
