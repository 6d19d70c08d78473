#include "stackcoh/monomial.hpp"

#include "stackcoh/errors.hpp"

#include <algorithm>
#include <climits>

namespace stackcoh {

const char* to_string(GenKind k)
{
    switch (k) {
    case GenKind::Exterior: return "exterior";
    case GenKind::Polynomial: return "polynomial";
    case GenKind::Laurent: return "laurent";
    }
    return "?";
}

MonomialInfo monomial_info(const std::vector<Generator>& gens, const Exponents& e)
{
    MonomialInfo m;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        m.s += e[i] * gens[i].s;
        m.t += e[i] * gens[i].t;
        m.weight += e[i] * gens[i].weight;
    }
    return m;
}

std::string monomial_label(const std::vector<Generator>& gens, const Exponents& e)
{
    std::string out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += gens[i].name;
        if (e[i] != 1)
            out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

void check_parity(const std::vector<Generator>& gens, bool allow_odd_polynomial)
{
    for (const auto& g : gens) {
        if (g.kind == GenKind::Exterior && !g.odd())
            fail(ErrorKind::Precondition, "exterior generator " + g.name + " has even parity");
        if (g.kind != GenKind::Exterior && g.odd() && !allow_odd_polynomial)
            fail(ErrorKind::Precondition, "generator " + g.name + " has odd parity but is not exterior");
    }
}

namespace {

int exponent_bound(const std::vector<Generator>& gens, std::size_t i, int n_max, int s_max)
{
    const Generator& g = gens[i];
    if (g.kind == GenKind::Laurent)
        fail(ErrorKind::Precondition, "Laurent generator " + g.name + " cannot be enumerated directly");
    if (g.s < 0)
        fail(ErrorKind::Precondition, "generator " + g.name + " has negative filtration degree");
    int bound = INT_MAX;
    if (g.kind == GenKind::Exterior)
        bound = 1;
    if (g.truncation > 0)
        bound = std::min(bound, g.truncation - 1);
    if (g.s > 0)
        bound = std::min(bound, std::max(0, s_max) / g.s);
    if (bound != INT_MAX)
        return bound;
    if (g.total() <= 0)
        fail(ErrorKind::Precondition, "generator " + g.name + " is not bounded by the window");
    // Lowest total degree the other generators can contribute.
    long low = 0;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (j == i || gens[j].total() >= 0)
            continue;
        const Generator& h = gens[j];
        int hb = h.kind == GenKind::Exterior ? 1 : (h.s > 0 ? std::max(0, s_max) / h.s : -1);
        if (h.truncation > 0)
            hb = hb < 0 ? h.truncation - 1 : std::min(hb, h.truncation - 1);
        if (hb < 0)
            fail(ErrorKind::Precondition, "generator " + h.name + " is not bounded by the window");
        low += long(hb) * h.total();
    }
    return static_cast<int>(std::max(0L, (n_max - low) / g.total()));
}

}  // namespace

std::vector<Exponents> enumerate_monomials(const std::vector<Generator>& gens, int n_min, int n_max,
                                           int s_min, int s_max, const int* weight_max)
{
    std::vector<int> bound(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        bound[i] = exponent_bound(gens, i, n_max, s_max);
    std::vector<Exponents> out;
    Exponents e(gens.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int s) {
        if (i == gens.size()) {
            auto m = monomial_info(gens, e);
            int n = m.s + m.t;
            if (n < n_min || n > n_max || m.s < s_min || m.s > s_max)
                return;
            if (weight_max && m.weight > *weight_max)
                return;
            out.push_back(e);
            return;
        }
        for (int k = 0; k <= bound[i]; ++k) {
            int s2 = s + k * gens[i].s;
            if (s2 > s_max)
                break;
            e[i] = k;
            rec(i + 1, s2);
        }
        e[i] = 0;
    };
    rec(0, 0);
    std::sort(out.begin(), out.end(), [&](const Exponents& a, const Exponents& b) {
        auto ma = monomial_info(gens, a), mb = monomial_info(gens, b);
        if (ma.s + ma.t != mb.s + mb.t)
            return ma.s + ma.t < mb.s + mb.t;
        if (ma.s != mb.s)
            return ma.s < mb.s;
        if (ma.weight != mb.weight)
            return ma.weight < mb.weight;
        return a > b;
    });
    return out;
}

std::map<std::pair<int, int>, std::size_t> monomial_counts(const std::vector<Generator>& gens, int n_min, int n_max,
                                                           int s_max)
{
    std::map<std::pair<int, int>, std::size_t> out;
    for (const auto& e : enumerate_monomials(gens, n_min, n_max, 0, s_max)) {
        auto m = monomial_info(gens, e);
        ++out[{m.s + m.t, m.weight}];
    }
    return out;
}

}  // namespace stackcoh
