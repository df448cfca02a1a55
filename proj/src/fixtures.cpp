#include "wres/fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <regex>

#include <json.hpp>

#ifndef WRES_FIXTURE_DIR
#define WRES_FIXTURE_DIR "fixtures"
#endif

namespace wres {

using nlohmann::json;

namespace {

json read_json(const std::filesystem::path &file) {
    std::ifstream in(file);
    if (!in) throw FixtureMissing("fixture not found: " + file.string());
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw FixtureError(file.string() + ": " + e.what());
    }
}

Q parse_q(const json &v) {
    Q q(v.is_string() ? v.get<std::string>() : std::to_string(v.get<long>()));
    q.canonicalize();
    return q;
}

int parse_bound(const json &v, int dim) {
    if (v.is_number_integer()) return v.get<int>();
    const auto s = v.get<std::string>();
    if (s == "n") return dim;
    if (s == "n-1") return dim - 1;
    throw FixtureError("bad summation bound: " + s);
}

Scalar parse_coefficient(const json &list) {
    Scalar s;
    for (const auto &c : list) {
        Q q = parse_q(c.at("num")) / parse_q(c.at("den"));
        q.canonicalize();
        s += Scalar::monomial(Monomial::pi_pow(c.at("pi_power").get<int>()), GaussQ(q));
    }
    return s;
}

// Sum over every binding of the entry's summation indices.
Scalar expand_entry(const json &e, int dim) {
    std::vector<std::tuple<std::string, int, int>> ranges;
    if (e.contains("sums"))
        for (const auto &[k, v] : e.at("sums").items())
            ranges.emplace_back(k, parse_bound(v.at(0), dim), parse_bound(v.at(1), dim));
    const Scalar coef = parse_coefficient(e.at("coefficient"));
    ScalarAcc acc;
    std::map<std::string, int> binding;
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (depth == ranges.size()) {
            for (const auto &t : e.at("terms")) {
                Scalar prod(GaussQ(parse_q(t.value("mult", json("1")))));
                for (const auto &a : t.at("monomial")) prod = prod * expand_atom_template(a.get<std::string>(), dim, binding);
                acc.add(prod * coef);
            }
            return;
        }
        const auto &[name, lo, hi] = ranges[depth];
        for (int v = lo; v <= hi; ++v) {
            binding[name] = v;
            rec(depth + 1);
        }
        binding.erase(name);
    };
    rec(0);
    return acc.to_scalar();
}

}  // namespace

std::filesystem::path default_fixture_dir() {
    if (const char *env = std::getenv("WRES_FIXTURES"); env && *env) return env;
    return WRES_FIXTURE_DIR;
}

Scalar expand_atom_template(const std::string &tmpl, int dim, const std::map<std::string, int> &binding) {
    static const std::regex index_re(R"(\[([A-Za-z]+)\])");
    std::string s;
    auto begin = std::sregex_iterator(tmpl.begin(), tmpl.end(), index_re);
    std::size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const std::string name = (*it)[1];
        int v;
        if (name == "n")
            v = dim;
        else if (auto b = binding.find(name); b != binding.end())
            v = b->second;
        else
            throw FixtureError("unbound index '" + name + "' in " + tmpl);
        s += tmpl.substr(last, it->position() - last) + "[" + std::to_string(v) + "]";
        last = it->position() + it->length();
    }
    s += tmpl.substr(last);
    if (s.rfind("gJ[", 0) == 0) {
        int p, a, b;
        if (std::sscanf(s.c_str(), "gJ[%d][%d][%d]", &p, &a, &b) != 3) throw FixtureError("bad pairing: " + s);
        Scalar out;
        for (int h = 1; h <= dim; ++h) out += Scalar::atom(atom::a(h, p)) * Scalar::atom(atom::nabj(a, b, h));
        return out;
    }
    try {
        return Scalar::atom(atom::parse(s));
    } catch (const std::invalid_argument &e) {
        throw FixtureError(e.what());
    }
}

BoundaryFixture load_boundary_fixture(const std::filesystem::path &file) {
    const json j = read_json(file);
    BoundaryFixture f;
    try {
        f.display = j.at("display").get<std::string>();
        f.dim = j.at("dimension").get<int>();
        f.trace_factor = j.at("trace_factor").get<long>();
        f.volume_factor = j.at("volume_factor").get<std::string>();
        f.table.dim = f.dim;
        f.table.label = f.display;
        if (f.trace_factor != f.table.trace_factor()) throw FixtureError(file.string() + ": trace factor mismatch");
        for (const auto &e : j.at("entries")) {
            const Scalar expanded = expand_entry(e, f.dim);
            for (const auto &[m, c] : expanded.terms()) {
                Monomial key = m;
                key.pi = 0;
                Scalar v = Scalar::monomial(Monomial::pi_pow(m.pi), c);
                auto it = f.table.entries.find(key);
                if (it == f.table.entries.end()) {
                    f.table.entries.emplace(key, v);
                } else {
                    it->second += v;
                    if (it->second.is_zero()) f.table.entries.erase(it);
                }
            }
        }
    } catch (const json::exception &e) {
        throw FixtureError(file.string() + ": " + e.what());
    }
    return f;
}

InteriorFixture load_interior_fixture(const std::filesystem::path &file) {
    const json j = read_json(file);
    InteriorFixture f;
    try {
        f.display = j.at("display").get<std::string>();
        f.dim = j.at("dimension").get<int>();
        f.overall = parse_coefficient(json::array({j.at("overall")}));
        for (const auto &e : j.at("entries")) f.bracket += expand_entry(e, f.dim);
    } catch (const json::exception &e) {
        throw FixtureError(file.string() + ": " + e.what());
    }
    return f;
}

}  // namespace wres
