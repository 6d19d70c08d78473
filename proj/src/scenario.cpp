#include "stackcoh/scenario.hpp"

#include "stackcoh/errors.hpp"
#include "stackcoh/ext.hpp"
#include "stackcoh/hochschild.hpp"
#include "stackcoh/spectral.hpp"
#include "stackcoh/stack.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace stackcoh {

namespace {

const std::map<std::string, std::set<std::string>>& schema()
{
    static const std::map<std::string, std::set<std::string>> s = {
        {"scenario", {"task", "p", "name"}},
        {"group", {"name"}},
        {"algebra", {"hopf", "factors", "weights"}},
        {"window", {"deg_min", "deg_max", "weight_max"}},
        {"options", {"resolution", "oracle_deg", "method", "representatives", "variant", "columns", "m", "page", "n"}},
        {"abutment", {"dims", "n_min", "n_max", "weight_divisor", "odd_classes", "torsion_free"}},
        {"budget", {"cells", "branches"}},
        {"output", {"name", "csv"}},
    };
    return s;
}

// task -> required (section, key)
const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& required()
{
    static const std::map<std::string, std::vector<std::pair<std::string, std::string>>> r = {
        {"ext", {{"window", "deg_max"}}},
        {"hh", {{"window", "deg_max"}}},
        {"cyclic", {{"window", "deg_max"}, {"options", "variant"}, {"options", "columns"}}},
        {"hodge-bg", {{"group", "name"}, {"window", "deg_max"}}},
        {"derham-bg", {{"group", "name"}, {"window", "deg_max"}}},
        {"crys-bg", {{"group", "name"}, {"window", "deg_max"}}},
        {"tp-account", {{"group", "name"}, {"window", "deg_max"}}},
        {"hkr-force", {{"group", "name"}, {"window", "deg_max"}}},
        {"tate", {{"window", "deg_max"}}},
        {"pgl-omega1", {{"options", "n"}}},
    };
    return r;
}

bool needs_algebra(const std::string& task)
{
    return task == "ext" || task == "hh" || task == "cyclic" || task == "tate";
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!trim(item).empty())
            out.push_back(trim(item));
    return out;
}

int to_int(const std::string& v, const std::string& what)
{
    try {
        std::size_t used = 0;
        int x = std::stoi(v, &used);
        if (used == v.size())
            return x;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::Parse, what + ": expected an integer, got '" + v + "'");
}

json generator_json(const Generator& g)
{
    return json{{"name", g.name}, {"s", g.s}, {"t", g.t}, {"weight", g.weight}, {"kind", to_string(g.kind)}};
}

json rings_json(const std::vector<Generator>& gens)
{
    json out = json::array();
    for (const auto& g : gens)
        out.push_back(generator_json(g));
    return out;
}

json window_json(const Window& w)
{
    json out{{"deg_min", w.deg_min}, {"deg_max", w.deg_max}};
    out["weight_max"] = w.weight_max ? json(*w.weight_max) : json(nullptr);
    return out;
}

json page_window_json(const PageWindow& w)
{
    json out{{"n_min", w.n_min}, {"n_max", w.n_max}, {"s_min", w.s_min}, {"s_max", w.s_max},
             {"laurent_bound", w.laurent_bound}};
    out["weight_max"] = w.weight_max ? json(*w.weight_max) : json(nullptr);
    return out;
}

json degree_map(const std::map<int, std::size_t>& m)
{
    json out = json::object();
    for (const auto& [k, v] : m)
        out[std::to_string(k)] = v;
    return out;
}

GroupScheme scenario_group(const Scenario& s)
{
    return GroupScheme::parse(s.p, s.need("group", "name"));
}

// ---------------------------------------------------------------- tasks

json run_ext(const Scenario& s, const Budgets& b, json& rep)
{
    auto a = scenario_algebra(s);
    auto w = s.window();
    auto method_name = s.get("options", "resolution", "auto");
    ResolutionMethod method = ResolutionMethod::Auto;
    if (method_name == "minimal")
        method = ResolutionMethod::Minimal;
    else if (method_name == "periodic")
        method = ResolutionMethod::Periodic;
    else if (method_name != "auto")
        fail(ErrorKind::Parse, "options.resolution: unknown method '" + method_name + "'");

    auto ring = ext_ring(a, w.deg_max, method);
    // a single truncated factor has the generators α (degree 1) and β (degree 2)
    bool single = s.has("algebra", "factors") && split_list(s.get("algebra", "factors", "")).size() == 1;
    ring.find_generators(single ? std::vector<std::string>{"alpha", "beta"} : std::vector<std::string>{});
    rep["grades"] = grades_json(ring.table());
    rep["rings"] = rings_json(ring.generator_list());

    json result{{"free_on_generators", ring.free_on_generators()}};
    json squares = json::object();
    for (const auto& g : ring.generators()) {
        if (2 * g.deg > w.deg_max)
            continue;
        auto sq = ring.product(g.deg, g.cls, g.deg, g.cls);
        bool zero = std::all_of(sq.begin(), sq.end(), [](Entry e) { return e == 0; });
        squares[g.name] = zero ? "zero" : "nonzero";
    }
    result["squares"] = squares;
    if (s.has("options", "oracle_deg")) {
        int od = s.get_int("options", "oracle_deg", 0);
        auto oracle = bar_ext_dims(a, od, b.cells);
        bool agree = true;
        auto table = ring.table();
        for (int n = 0; n <= std::min(od, w.deg_max); ++n) {
            std::set<int> weights;
            for (const auto& [k, c] : table.cells())
                if (k.deg == n)
                    weights.insert(k.weight);
            for (const auto& [k, c] : oracle.cells())
                if (k.deg == n)
                    weights.insert(k.weight);
            for (int wt : weights)
                agree = agree && table.dim({n, 0, wt}) == oracle.dim({n, 0, wt});
        }
        result["oracle"] = json{{"method", "bar"}, {"through_degree", od}, {"agrees", agree}};
    }
    return result;
}

json run_hh(const Scenario& s, const Budgets& b, json& rep)
{
    auto w = s.window();
    auto method = s.get("options", "method", "bar");
    HHResult r;
    if (method == "bar") {
        r = hochschild_bar(scenario_algebra(s), w, s.get_bool("options", "representatives", false), b.cells);
    } else if (method == "small") {
        auto f = split_list(s.need("algebra", "factors"));
        if (f.size() != 1 || f[0].find('^') == std::string::npos)
            fail(ErrorKind::Parse, "options.method = small needs a single factor t^n");
        auto n = to_int(trim(f[0].substr(f[0].find('^') + 1)), "algebra.factors");
        auto ws = split_list(s.get("algebra", "weights", "1"));
        r = hochschild_small(s.p, static_cast<std::size_t>(n), to_int(ws.at(0), "algebra.weights"), w);
    } else {
        fail(ErrorKind::Parse, "options.method: unknown method '" + method + "'");
    }
    rep["grades"] = grades_json(r.table);
    return json{{"method", method}, {"dims", degree_map(r.dims())}};
}

json run_cyclic(const Scenario& s, const Budgets& b, json& rep)
{
    auto v = s.need("options", "variant");
    CyclicVariant variant;
    if (v == "negative")
        variant = CyclicVariant::Negative;
    else if (v == "periodic")
        variant = CyclicVariant::Periodic;
    else
        fail(ErrorKind::Parse, "options.variant: expected negative or periodic, got '" + v + "'");
    auto g = cyclic_window(scenario_algebra(s), variant, s.window(), s.need_int("options", "columns"), b.cells);
    rep["grades"] = grades_json(g);
    return json{{"variant", v}, {"columns", s.need_int("options", "columns")}, {"dims", degree_map(g.dims_by_degree())}};
}

json run_hodge(const Scenario& s, json& rep)
{
    auto h = hodge_BG(scenario_group(s), s.window().deg_max);
    rep["grades"] = grades_json(h.table);
    rep["rings"] = rings_json(h.gens);
    return json{{"presentation", h.presentation()}, {"relations", h.relations},
                {"divided_power_window", h.divided_power_window}};
}

json run_derham(const Scenario& s, json& rep)
{
    auto r = derham_BG(scenario_group(s), s.window().deg_max);
    rep["grades"] = grades_json(r.table);
    rep["rings"] = rings_json(r.ring);
    return json{{"route", r.route}, {"differentials", r.differentials}, {"dims", degree_map(r.table.dims_by_degree())}};
}

json run_crys(const Scenario& s, json& rep)
{
    auto g = scenario_group(s);
    auto c = crys_BG(g, s.get_int("options", "m", 3), s.window().deg_max);
    GradedSpace t(Window{0, s.window().deg_max, std::nullopt});
    json groups = json::array();
    for (const auto& [n, m] : c.groups) {
        if (!m.zero())
            t.add({n, 0, 0}, m.mod_p_dim(), {m.to_string()});
        groups.push_back(json{{"deg", n}, {"module", m.to_string()}, {"exponents", m.exponents}});
    }
    rep["grades"] = grades_json(t);
    auto dr = derham_BG(g, s.window().deg_max).table.dims_by_degree();
    auto mismatch = crys_mod_p_mismatch(c, dr);
    return json{{"m", c.m}, {"m_stable", c.m_stable}, {"groups", groups},
                {"mod_p_consistent", !mismatch.has_value()}};
}

json run_tp(const Scenario& s, json& rep)
{
    TPAbutment ab{s.get_bool("abutment", "odd_classes", false), s.get_bool("abutment", "torsion_free", true)};
    auto r = tp_accounting(scenario_group(s), s.window().deg_max, s.get_int("options", "m", 3), ab);
    rep["grades"] = grades_json(r.e2);
    json out{{"degenerate", r.degenerate}, {"odd_degrees", r.odd_degrees}, {"reason", r.reason}};
    out["split"] = r.split ? json(*r.split) : json(nullptr);
    return out;
}

ForcedScenario forced_page(const Scenario& s)
{
    auto g = scenario_group(s);
    auto page = s.get("options", "page", "hkr");
    int top = s.window().deg_max;
    auto single_alpha = [&]() {
        if (g.factors.size() != 1 || g.factors[0] != GroupFactor::Alpha)
            fail(ErrorKind::Unsupported, "page '" + page + "' is implemented for alpha_p only");
    };
    if (page == "hkr")
        return hkr_scenario(g, top);
    if (page == "hodge-de-rham") {
        single_alpha();
        return hodge_de_rham_scenario(g.p, top);
    }
    if (page == "conjugate") {
        single_alpha();
        return conjugate_scenario(g.p, top);
    }
    if (page == "derham-hp")
        return derham_hp_scenario(g, top);
    fail(ErrorKind::Parse, "options.page: unknown page '" + page + "'");
}

json run_forced(const Scenario& s, const Budgets& b, json& rep)
{
    auto sc = forced_page(s);
    if (s.has("abutment", "dims")) {
        AbutmentSpec ab;
        for (const auto& item : split_list(s.get("abutment", "dims", ""))) {
            auto colon = item.find(':');
            if (colon == std::string::npos)
                fail(ErrorKind::Parse, "abutment.dims: expected deg:dim, got '" + item + "'");
            ab.dims[to_int(trim(item.substr(0, colon)), "abutment.dims")] =
                static_cast<std::size_t>(to_int(trim(item.substr(colon + 1)), "abutment.dims"));
        }
        ab.n_min = s.get_int("abutment", "n_min", ab.dims.empty() ? 0 : ab.dims.begin()->first);
        ab.n_max = s.get_int("abutment", "n_max", ab.dims.empty() ? 0 : ab.dims.rbegin()->first);
        ab.weight_divisor = s.get_int("abutment", "weight_divisor", 0);
        sc.abutment = ab;
    }
    const auto& pg = sc.page;
    json result{{"page", s.get("options", "page", "hkr")}, {"r_start", pg.r}, {"r_max", sc.r_max},
                {"page_window", page_window_json(pg.window)},
                {"permanent", std::vector<std::string>(pg.permanent.begin(), pg.permanent.end())}};
    rep["rings"] = rings_json(pg.gens);

    json cands = json::object();
    bool any = false;
    for (int r = pg.r; r <= sc.r_max; ++r) {
        json list = json::array();
        for (const auto& c : admissible_differentials(pg, r))
            list.push_back("d_" + std::to_string(r) + "(" + c.source + ") = " + c.target_label);
        any = any || !list.empty();
        cands[std::to_string(r)] = list;
    }
    result["candidates"] = cands;

    if (sc.abutment.dims.empty()) {
        // nothing to match: the verdict rests on the candidate list alone
        result["degenerate"] = !any;
        rep["search"] = json::array();
        return result;
    }
    result["abutment"] = json{{"dims", degree_map(sc.abutment.dims)}, {"n_min", sc.abutment.n_min},
                              {"n_max", sc.abutment.n_max}, {"weight_divisor", sc.abutment.weight_divisor}};
    auto sr = forced_search(pg, sc.abutment, sc.r_max, b.branches);
    json search = json::array();
    for (const auto& pt : sr.patterns) {
        json assigns = json::array();
        for (const auto& a : pt.assignments)
            assigns.push_back(Pattern{{a}, {}}.describe(pg));
        search.push_back(json{{"assignments", assigns}, {"e_infinity", degree_map(pt.e_infinity)}});
    }
    rep["search"] = search;
    result["unique"] = sr.unique;
    result["stats"] = json{{"branches", sr.stats.branches},
                           {"pruned_dimension", sr.stats.pruned_dimension},
                           {"pruned_square", sr.stats.pruned_square},
                           {"pruned_redundant", sr.stats.pruned_redundant}};
    if (sr.unique) {
        auto full = pg;
        for (const auto& a : sr.patterns[0].assignments)
            full.differentials.push_back(a);
        auto e = expand_page(full, sc.r_max);
        rep["grades"] = grades_json(e.verified_page(sc.r_max + 1));
        result["grades_are"] = "E_infinity on the verified rows, (deg, wedge) = (s, t)";
    }
    return result;
}

json run_tate(const Scenario& s, const Budgets& b, json& rep)
{
    auto w = s.window();
    HochschildComplex c(scenario_algebra(s), w.deg_max + 2, w.weight_max, b.cells);
    auto t = tate_page(c, w);
    rep["grades"] = grades_json(t.e2);
    json d2 = json::array();
    for (const auto& [k, m] : t.d2)
        d2.push_back(json{{"deg", k.first}, {"weight", k.second}, {"rank", rank(m)}});
    return json{{"degenerate", t.degenerate}, {"d2", d2}, {"e3", grades_json(t.e3)}};
}

json run_pgl(const Scenario& s, json& rep)
{
    int n = s.need_int("options", "n");
    require(n >= 2, "options.n must be at least 2");
    auto g = pgl_omega1(static_cast<std::uint32_t>(n), s.p);
    rep["grades"] = grades_json(g);
    return json{{"n", n}, {"dims", degree_map(g.dims_by_degree())}};
}

}  // namespace

// ---------------------------------------------------------------- Scenario

bool Scenario::has(const std::string& sec, const std::string& key) const
{
    auto it = sections.find(sec);
    return it != sections.end() && it->second.count(key);
}

std::string Scenario::get(const std::string& sec, const std::string& key, const std::string& fallback) const
{
    return has(sec, key) ? sections.at(sec).at(key) : fallback;
}

std::string Scenario::need(const std::string& sec, const std::string& key) const
{
    if (!has(sec, key))
        fail(ErrorKind::Parse, "missing " + sec + "." + key + " (task " + task + ")");
    return sections.at(sec).at(key);
}

int Scenario::get_int(const std::string& sec, const std::string& key, int fallback) const
{
    return has(sec, key) ? to_int(get(sec, key, ""), sec + "." + key) : fallback;
}

int Scenario::need_int(const std::string& sec, const std::string& key) const
{
    return to_int(need(sec, key), sec + "." + key);
}

bool Scenario::get_bool(const std::string& sec, const std::string& key, bool fallback) const
{
    if (!has(sec, key))
        return fallback;
    auto v = get(sec, key, "");
    if (v == "true" || v == "yes" || v == "1")
        return true;
    if (v == "false" || v == "no" || v == "0")
        return false;
    fail(ErrorKind::Parse, sec + "." + key + ": expected a boolean, got '" + v + "'");
}

Window Scenario::window() const
{
    Window w{get_int("window", "deg_min", 0), get_int("window", "deg_max", 0), std::nullopt};
    if (has("window", "weight_max"))
        w.weight_max = get_int("window", "weight_max", 0);
    require(w.deg_min <= w.deg_max, "window.deg_min exceeds window.deg_max");
    return w;
}

const std::vector<std::string>& scenario_tasks()
{
    static const std::vector<std::string> t = {"ext",        "hh",        "cyclic", "hodge-bg", "derham-bg",
                                               "crys-bg",    "tp-account", "hkr-force", "tate", "pgl-omega1"};
    return t;
}

Scenario parse_scenario(const std::string& text, const std::string& default_name)
{
    Scenario s;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto line = trim(raw.substr(0, raw.find('#')));
        if (line.empty())
            continue;
        auto where = "line " + std::to_string(lineno) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(ErrorKind::Parse, where + "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!schema().count(section))
                fail(ErrorKind::Parse, where + "unknown section [" + section + "]");
            if (s.sections.count(section))
                fail(ErrorKind::Parse, where + "duplicate section [" + section + "]");
            s.sections[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::Parse, where + "expected key = value");
        if (section.empty())
            fail(ErrorKind::Parse, where + "key outside of a section");
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (!schema().at(section).count(key))
            fail(ErrorKind::Parse, where + "unknown key '" + key + "' in [" + section + "]");
        if (s.sections[section].count(key))
            fail(ErrorKind::Parse, where + "duplicate key '" + key + "'");
        static const std::set<std::string> integers = {"p",          "deg_min", "deg_max", "weight_max", "oracle_deg",
                                                       "columns",    "m",       "n",       "n_min",      "n_max",
                                                       "weight_divisor", "cells", "branches"};
        if (integers.count(key))
            to_int(value, where + section + "." + key);
        s.sections[section][key] = value;
    }

    s.task = s.need("scenario", "task");
    if (!required().count(s.task))
        fail(ErrorKind::Parse, "unknown task '" + s.task + "'");
    int p = s.need_int("scenario", "p");
    require(p > 1 && p < 256 && is_prime(static_cast<std::uint32_t>(p)), "p = " + std::to_string(p) + " is not a prime below 256");
    s.p = static_cast<std::uint32_t>(p);
    for (const auto& [sec, key] : required().at(s.task))
        s.need(sec, key);
    if (needs_algebra(s.task) && s.has("algebra", "hopf") == s.has("algebra", "factors"))
        fail(ErrorKind::Parse, "task " + s.task + " needs exactly one of algebra.hopf and algebra.factors");
    s.name = s.get("output", "name", s.get("scenario", "name", default_name));
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Parse, "cannot read scenario " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.stem().string());
}

Budgets budgets_for(const Scenario& s, std::optional<std::size_t> cells, std::optional<std::size_t> branches)
{
    Budgets b;
    if (s.has("budget", "cells"))
        b.cells = static_cast<std::size_t>(s.get_int("budget", "cells", 0));
    if (s.has("budget", "branches"))
        b.branches = static_cast<std::size_t>(s.get_int("budget", "branches", 0));
    if (cells)
        b.cells = *cells;
    if (branches)
        b.branches = *branches;
    return b;
}

PresentedAlgebra scenario_algebra(const Scenario& s)
{
    if (s.has("algebra", "hopf")) {
        auto h = s.get("algebra", "hopf", "");
        if (h == "mu_p")
            return mu_p(s.p).algebra;
        if (h == "alpha_p")
            return alpha_p(s.p).algebra;
        if (h == "dual_mu_p")
            return cartier_dual(mu_p(s.p)).algebra;
        if (h == "dual_alpha_p")
            return cartier_dual(alpha_p(s.p, "s")).algebra;
        fail(ErrorKind::Parse, "algebra.hopf: unknown Hopf algebra '" + h + "'");
    }
    auto factors = split_list(s.need("algebra", "factors"));
    auto weights = split_list(s.get("algebra", "weights", ""));
    if (factors.empty())
        fail(ErrorKind::Parse, "algebra.factors is empty");
    if (!weights.empty() && weights.size() != factors.size())
        fail(ErrorKind::Parse, "algebra.weights must list one weight per factor");
    std::optional<PresentedAlgebra> acc;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto caret = factors[i].find('^');
        if (caret == std::string::npos || caret == 0)
            fail(ErrorKind::Parse, "algebra.factors: expected var^n, got '" + factors[i] + "'");
        auto var = trim(factors[i].substr(0, caret));
        int n = to_int(trim(factors[i].substr(caret + 1)), "algebra.factors");
        require(n >= 1, "truncation exponent must be positive");
        int w = weights.empty() ? 1 : to_int(weights[i], "algebra.weights");
        auto t = truncated_poly(s.p, static_cast<std::size_t>(n), w, var);
        acc = acc ? tensor(*acc, t) : t;
    }
    return *acc;
}

json grades_json(const GradedSpace& g)
{
    json out = json::array();
    for (const auto& [k, c] : g.cells())
        out.push_back(json{{"deg", k.deg}, {"wedge", k.wedge}, {"weight", k.weight}, {"dim", c.dim},
                           {"labels", c.labels}, {"indeterminate", c.indeterminate}});
    return out;
}

json run_scenario(const Scenario& s, const Budgets& b)
{
    json echo = json::object();
    for (const auto& [sec, kv] : s.sections)
        for (const auto& [k, v] : kv)
            echo[sec][k] = v;
    json rep{{"scenario", echo}, {"grades", json::array()}, {"rings", json::array()}, {"search", json::array()}};
    rep["window"] = s.has("window", "deg_max") ? window_json(s.window()) : json(nullptr);

    json result;
    const auto& t = s.task;
    if (t == "ext")
        result = run_ext(s, b, rep);
    else if (t == "hh")
        result = run_hh(s, b, rep);
    else if (t == "cyclic")
        result = run_cyclic(s, b, rep);
    else if (t == "hodge-bg")
        result = run_hodge(s, rep);
    else if (t == "derham-bg")
        result = run_derham(s, rep);
    else if (t == "crys-bg")
        result = run_crys(s, rep);
    else if (t == "tp-account")
        result = run_tp(s, rep);
    else if (t == "hkr-force")
        result = run_forced(s, b, rep);
    else if (t == "tate")
        result = run_tate(s, b, rep);
    else
        result = run_pgl(s, rep);
    rep["result"] = result;
    return rep;
}

json run_scenario_captured(const Scenario& s, const Budgets& b)
{
    try {
        return run_scenario(s, b);
    } catch (const Error& e) {
        json echo = json::object();
        for (const auto& [sec, kv] : s.sections)
            for (const auto& [k, v] : kv)
                echo[sec][k] = v;
        return json{{"scenario", echo},
                    {"error", json{{"kind", to_string(e.kind())}, {"exit_code", exit_code(e.kind())},
                                   {"message", e.what()}}}};
    }
}

std::string render_report(const json& report)
{
    return report.dump(2) + "\n";
}

std::string render_csv(const json& report)
{
    std::string out = "deg,wedge,weight,dim,indeterminate,labels\n";
    if (!report.contains("grades"))
        return out;
    for (const auto& c : report["grades"]) {
        std::string labels;
        for (const auto& l : c["labels"])
            labels += (labels.empty() ? "" : ";") + l.get<std::string>();
        out += std::to_string(c["deg"].get<int>()) + "," + std::to_string(c["wedge"].get<int>()) + "," +
               std::to_string(c["weight"].get<int>()) + "," + std::to_string(c["dim"].get<std::size_t>()) + "," +
               (c["indeterminate"].get<bool>() ? "1" : "0") + ",\"" + labels + "\"\n";
    }
    return out;
}

std::vector<std::string> diff_reports(const json& got, const json& want)
{
    std::vector<std::string> out;
    using Key = std::tuple<int, int, int>;
    auto cells = [](const json& r) {
        std::map<Key, json> m;
        if (r.contains("grades") && r["grades"].is_array())
            for (const auto& c : r["grades"])
                m[{c.value("deg", 0), c.value("wedge", 0), c.value("weight", 0)}] = c;
        return m;
    };
    auto name = [](const Key& k) {
        return "cell (deg=" + std::to_string(std::get<0>(k)) + ", wedge=" + std::to_string(std::get<1>(k)) +
               ", weight=" + std::to_string(std::get<2>(k)) + ")";
    };
    auto g = cells(got), w = cells(want);
    std::set<Key> keys;
    for (const auto& [k, v] : g)
        keys.insert(k);
    for (const auto& [k, v] : w)
        keys.insert(k);
    for (const auto& k : keys) {
        auto gi = g.find(k), wi = w.find(k);
        if (gi == g.end())
            out.push_back(name(k) + ": missing, fixture has dim " + wi->second["dim"].dump());
        else if (wi == w.end())
            out.push_back(name(k) + ": dim " + gi->second["dim"].dump() + ", absent from fixture");
        else if (gi->second != wi->second)
            out.push_back(name(k) + ": got " + gi->second.dump() + ", fixture " + wi->second.dump());
    }

    auto rest_g = got, rest_w = want;
    rest_g.erase("grades");
    rest_w.erase("grades");
    for (const auto& op : json::diff(rest_w, rest_g)) {
        auto path = op["path"].get<std::string>();
        json::json_pointer ptr(path);
        auto before = rest_w.contains(ptr) ? rest_w.at(ptr).dump() : std::string("absent");
        auto after = rest_g.contains(ptr) ? rest_g.at(ptr).dump() : std::string("absent");
        out.push_back(path + ": got " + after + ", fixture " + before);
    }
    return out;
}

void write_atomically(const std::filesystem::path& path, const std::string& contents)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            fail(ErrorKind::Precondition, "cannot write " + tmp.string());
        out << contents;
        if (!out)
            fail(ErrorKind::Precondition, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace stackcoh
