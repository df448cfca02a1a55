#include "wres/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "wres/fixtures.hpp"
#include "wres/interior_engine.hpp"
#include "wres/report.hpp"

namespace wres {

using nlohmann::json;

namespace {

const std::vector<std::string> kAllCases{"a1", "a2", "a3", "b", "c"};

std::vector<std::string> selected_cases(const RunConfig &cfg) {
    if (std::find(cfg.cases.begin(), cfg.cases.end(), "all") != cfg.cases.end()) return kAllCases;
    std::vector<std::string> out;
    for (const auto &c : kAllCases)
        if (std::find(cfg.cases.begin(), cfg.cases.end(), c) != cfg.cases.end()) out.push_back(c);
    return out;
}

Cx<double> eval(const Scalar &s, const NumericAssignment &a) {
    return scalar_eval_numeric<double>(s, a.as<double>(), real_pi<double>());
}

json cx_json(const Cx<double> &z) { return {{"re", format_double(z.re)}, {"im", format_double(z.im)}}; }

std::string cx_text(const Cx<double> &z) { return format_double(z.re) + (z.im < 0 ? " - " : " + ") + format_double(std::abs(z.im)) + "i"; }

bool agrees(const Cx<double> &ref, const Cx<double> &v) { return oracle_agrees(ref.re, ref.im, v.re, v.im); }

json scalar_entries(const Scalar &s) {
    json out = json::array();
    for (const auto &[m, c] : s.terms()) {
        Monomial atoms = m;
        atoms.pi = 0;
        out.push_back({{"monomial", monomial_atoms(atoms)},
                       {"coefficient", coefficient_to_json(Scalar::monomial(Monomial::pi_pow(m.pi), c))}});
    }
    return out;
}

std::string scalar_markdown(const Scalar &s) {
    std::ostringstream os;
    os << "| monomial | coefficient |\n|---|---|\n";
    for (const auto &[m, c] : s.terms()) {
        Monomial atoms = m;
        atoms.pi = 0;
        os << "| " << (atoms.n ? atoms.to_string() : "1") << " | "
           << Scalar::monomial(Monomial::pi_pow(m.pi), c).to_string() << " |\n";
    }
    return os.str();
}

int report_error(std::ostream &err, const std::string &msg, int code) {
    err << "error: " << msg << "\n";
    return code;
}

bool usage_ok(const RunConfig &cfg, std::ostream &err, bool need_seeds = false) {
    try {
        validate(cfg);
        if (need_seeds && cfg.seeds.empty()) throw std::invalid_argument("oracle needs --seeds");
        return true;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return false;
    }
}

}  // namespace

unsigned default_precision() {
    if (const char *env = std::getenv("WRES_PRECISION"); env && *env) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 16 && v <= 1000) return static_cast<unsigned>(v);
    }
    return 16;
}

void validate(const RunConfig &cfg) {
    if (cfg.dimension != 4 && cfg.dimension != 6)
        throw std::invalid_argument("dimension must be 4 or 6, got " + std::to_string(cfg.dimension));
    if (cfg.target != "boundary" && cfg.target != "interior" && cfg.target != "both")
        throw std::invalid_argument("target must be boundary, interior or both");
    if (cfg.format != "json" && cfg.format != "markdown") throw std::invalid_argument("format must be json or markdown");
    if (cfg.cases.empty()) throw std::invalid_argument("no cases selected");
    for (const auto &c : cfg.cases)
        if (c != "all" && std::find(kAllCases.begin(), kAllCases.end(), c) == kAllCases.end())
            throw std::invalid_argument("unknown case: " + c);
    if (cfg.precision < 16) throw std::invalid_argument("precision must be at least 16 digits");
}

SymbolicRun::SymbolicRun(int n) : dim(n), engine(std::make_unique<BoundaryEngine>(n)), cases(enumerate_cases(n)) {
    for (const auto &c : cases) raw.emplace(c.label, engine->case_raw(c));
}

CoefficientTable SymbolicRun::table(const std::vector<std::string> &labels, const std::string &name) const {
    CoefficientTable t;
    t.dim = dim;
    t.label = name;
    for (const auto &l : labels) t += CoefficientTable::from_raw(raw.at(l), dim, l);
    return t;
}

Cx<double> cached_oracle(const SymbolicRun &run, const std::string &label, std::uint64_t seed,
                         const OracleOptions &opt, OracleCache *cache) {
    const auto key = std::make_tuple(run.dim, label, seed);
    if (cache)
        if (auto it = cache->find(key); it != cache->end()) return it->second;
    const auto spec = std::find_if(run.cases.begin(), run.cases.end(), [&](const CaseSpec &c) { return c.label == label; });
    if (spec == run.cases.end()) throw std::invalid_argument("unknown case: " + label);
    const NumericAssignment a = make_assignment(run.dim, seed);
    Cx<double> v;
    if (opt.digits <= 16) {
        v = oracle_case<double>(*spec, run.dim, a, opt);
    } else {
        set_big_digits(opt.digits);
        Cx<BigFloat> b = oracle_case<BigFloat>(*spec, run.dim, a, opt);
        v = Cx<double>(to_double(b.re), to_double(b.im));
    }
    if (cache) cache->emplace(key, v);
    return v;
}

int VerifyResult::exit_code() const {
    for (const auto &d : displays)
        if (!d.ok()) return kMismatch;
    if (cancellation_checked && !cancellation_holds) return kMismatch;
    if (!interior.match) return kMismatch;
    return kPass;
}

json VerifyResult::to_json() const {
    json ds = json::array();
    for (const auto &d : displays) {
        json adj = json::array();
        for (const auto &a : d.adjudication)
            adj.push_back({{"seed", a.seed},
                           {"engine", cx_json(a.engine)},
                           {"oracle", cx_json(a.oracle)},
                           {"stored", cx_json(a.fixture)},
                           {"engine_confirmed", a.engine_confirmed},
                           {"stored_agrees", a.fixture_agrees}});
        ds.push_back({{"display", d.display},
                      {"cases", d.cases},
                      {"status", d.status},
                      {"matches", d.matches},
                      {"mismatches", d.mismatches},
                      {"only_computed", d.only_computed},
                      {"only_stored", d.only_expected},
                      {"sample", d.sample},
                      {"adjudication", adj}});
    }
    json out{{"dimension", dim}, {"displays", ds}};
    if (cancellation_checked) out["cancellation_b_plus_c"] = cancellation_holds;
    out["interior"] = {{"display", interior.display}, {"match", interior.match}, {"differing_terms", interior.differing_terms}};
    out["exit_code"] = exit_code();
    return out;
}

std::string VerifyResult::to_markdown() const {
    std::ostringstream os;
    os << "# Verification, dimension " << dim << "\n\n";
    os << "| display | cases | status | matches | mismatches | only computed | only stored |\n|---|---|---|---|---|---|---|\n";
    for (const auto &d : displays) {
        std::string cs;
        for (const auto &c : d.cases) cs += (cs.empty() ? "" : " ") + c;
        os << "| " << d.display << " | " << cs << " | " << d.status << " | " << d.matches << " | " << d.mismatches
           << " | " << d.only_computed << " | " << d.only_expected << " |\n";
    }
    os << "\n";
    for (const auto &d : displays) {
        if (d.adjudication.empty()) continue;
        os << "## " << d.display << ": " << d.status << "\n\n";
        for (const auto &m : d.sample) os << "- differs: " << m << "\n";
        os << "\n| seed | engine | oracle | stored | engine confirmed | stored agrees |\n|---|---|---|---|---|---|\n";
        for (const auto &a : d.adjudication)
            os << "| " << a.seed << " | " << cx_text(a.engine) << " | " << cx_text(a.oracle) << " | " << cx_text(a.fixture)
               << " | " << (a.engine_confirmed ? "yes" : "no") << " | " << (a.fixture_agrees ? "yes" : "no") << " |\n";
        os << "\n";
    }
    if (cancellation_checked)
        os << (cancellation_holds ? "case b + case c = 0 confirmed\n" : "case b + case c = 0 FAILED\n");
    os << "interior " << interior.display << ": " << (interior.match ? "match" : "mismatch") << "\n";
    os << "exit code " << exit_code() << "\n";
    return os.str();
}

InteriorDisplay interior_display(int n) {
    const WresInterior w = wres_without_boundary(n);
    const long tr = 1L << n;
    return {w.prefactor * GaussQ(Q(tr, 4)), apply_j_isometry(w.integrand) * GaussQ(Q(4, tr))};
}

VerifyResult run_verify(const SymbolicRun &run, const std::vector<std::uint64_t> &seeds,
                        const std::filesystem::path &fixture_dir, const OracleOptions &opt, OracleCache *cache) {
    VerifyResult r;
    r.dim = run.dim;
    const std::string pre = "dim" + std::to_string(run.dim) + "-";
    const std::vector<std::pair<std::string, std::vector<std::string>>> displays{
        {"case-a", {"a1", "a2", "a3"}}, {"case-b", {"b"}}, {"case-c", {"c"}}, {"total", kAllCases}};
    for (const auto &[name, labels] : displays) {
        const BoundaryFixture fx = load_boundary_fixture(fixture_dir / (pre + name + ".json"));
        if (fx.dim != run.dim) throw FixtureError(fx.display + ": dimension mismatch");
        const CoefficientTable computed = run.table(labels, pre + name);
        const TableDiff diff = compare_tables(computed, fx.table);
        DisplayCheck d;
        d.display = pre + name;
        d.cases = labels;
        d.matches = diff.matches;
        d.mismatches = diff.mismatches.size();
        d.only_computed = diff.only_computed.size();
        d.only_expected = diff.only_expected.size();
        for (const auto &m : diff.mismatches)
            if (d.sample.size() < 5)
                d.sample.push_back(m.mono.to_string() + ": computed " + m.computed.to_string() + ", stored " +
                                   m.expected.to_string());
        for (const auto &[m, c] : diff.only_computed)
            if (d.sample.size() < 8) d.sample.push_back(m.to_string() + ": computed " + c.to_string() + ", stored 0");
        for (const auto &[m, c] : diff.only_expected)
            if (d.sample.size() < 10) d.sample.push_back(m.to_string() + ": computed 0, stored " + c.to_string());
        if (diff.empty()) {
            d.status = "match";
        } else {
            const Scalar stored_raw = fx.table.to_raw();
            bool engine_ok = !seeds.empty(), stored_ok = true;
            for (auto seed : seeds) {
                const NumericAssignment a = make_assignment(run.dim, seed);
                Adjudication adj;
                adj.seed = seed;
                for (const auto &l : labels) {
                    adj.engine += eval(run.raw.at(l), a);
                    adj.oracle += cached_oracle(run, l, seed, opt, cache);
                }
                adj.fixture = eval(stored_raw, a);
                adj.engine_confirmed = agrees(adj.engine, adj.oracle);
                adj.fixture_agrees = agrees(adj.fixture, adj.oracle);
                engine_ok = engine_ok && adj.engine_confirmed;
                stored_ok = stored_ok && adj.fixture_agrees;
                d.adjudication.push_back(adj);
            }
            d.status = !engine_ok ? "unconfirmed" : stored_ok ? "equivalent" : "documented-discrepancy";
        }
        r.displays.push_back(std::move(d));
    }
    if (run.dim == 4) {
        r.cancellation_checked = true;
        r.cancellation_holds = run.table({"b", "c"}, "b+c").empty();
    }
    const InteriorFixture ix = load_interior_fixture(fixture_dir / (pre + "interior.json"));
    const InteriorDisplay id = interior_display(run.dim);
    const Scalar delta = id.display_prefactor * id.bracket - ix.assembled();
    r.interior.display = ix.display;
    r.interior.match = delta.is_zero();
    r.interior.differing_terms = delta.size();
    return r;
}

int cmd_compute(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (!usage_ok(cfg, err)) return kUsage;
    try {
        const int n = cfg.dimension;
        json doc{{"dimension", n}};
        std::ostringstream md;
        md << "# Results, dimension " << n << "\n\n";
        if (cfg.target != "interior") {
            SymbolicRun run(n);
            const auto cases = selected_cases(cfg);
            std::vector<std::pair<std::string, std::vector<std::string>>> tables;
            for (const auto &c : cases) tables.push_back({"case-" + c, {c}});
            const bool all_a = std::count_if(cases.begin(), cases.end(), [](const std::string &c) { return c[0] == 'a'; }) == 3;
            if (all_a) tables.push_back({"case-a", {"a1", "a2", "a3"}});
            if (cases.size() == kAllCases.size()) tables.push_back({"total", kAllCases});
            json arr = json::array();
            for (const auto &[name, labels] : tables) {
                const CoefficientTable t = run.table(labels, name);
                if (!t.is_real()) throw std::logic_error(name + ": non-real coefficient in a finalized table");
                const std::string display = "dim" + std::to_string(n) + "-" + name;
                arr.push_back(table_to_json(t, display));
                md << table_to_markdown(t, display);
            }
            doc["boundary"] = std::move(arr);
        }
        if (cfg.target != "boundary") {
            const WresInterior w = wres_without_boundary(n);
            const InteriorDisplay id = interior_display(n);
            const std::string display = "dim" + std::to_string(n) + "-interior";
            doc["interior"] = {{"display", display},
                               {"prefactor", coefficient_to_json(w.prefactor)},
                               {"trace_factor", 1L << n},
                               {"integrand", scalar_entries(w.integrand)},
                               {"display_prefactor", coefficient_to_json(id.display_prefactor)},
                               {"bracket", scalar_entries(id.bracket)}};
            md << "### " << display << "\n\nprefactor " << w.prefactor.to_string() << ", trace factor " << (1L << n)
               << "\n\nintegrand (trace of -s/6 + E)\n\n"
               << scalar_markdown(w.integrand) << "\ndisplayed as " << id.display_prefactor.to_string() << " times\n\n"
               << scalar_markdown(id.bracket) << "\n";
        }
        if (cfg.format == "json")
            out << doc.dump(1) << "\n";
        else
            out << md.str();
        return kPass;
    } catch (const std::exception &e) {
        return report_error(err, e.what(), kInternal);
    }
}

int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (!usage_ok(cfg, err)) return kUsage;
    try {
        const std::filesystem::path dir = cfg.fixture_dir.empty() ? default_fixture_dir() : cfg.fixture_dir;
        const std::vector<std::uint64_t> seeds = cfg.seeds.empty() ? std::vector<std::uint64_t>{1, 2, 3} : cfg.seeds;
        OracleOptions opt;
        opt.digits = cfg.precision;
        SymbolicRun run(cfg.dimension);
        OracleCache cache;
        const VerifyResult r = run_verify(run, seeds, dir, opt, &cache);
        if (cfg.format == "json")
            out << r.to_json().dump(1) << "\n";
        else
            out << r.to_markdown();
        return r.exit_code();
    } catch (const FixtureMissing &e) {
        return report_error(err, e.what(), kMissingFixture);
    } catch (const std::exception &e) {
        return report_error(err, e.what(), kInternal);
    }
}

int cmd_oracle(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (!usage_ok(cfg, err, true)) return kUsage;
    try {
        OracleOptions opt;
        opt.digits = cfg.precision;
        SymbolicRun run(cfg.dimension);
        json recs = json::array();
        std::ostringstream md;
        md << "# Oracle, dimension " << cfg.dimension << "\n\n| case | seed | symbolic | numeric | rel err | verdict |\n"
           << "|---|---|---|---|---|---|\n";
        bool all = true;
        for (const auto &label : selected_cases(cfg))
            for (auto seed : cfg.seeds) {
                const auto spec = std::find_if(run.cases.begin(), run.cases.end(),
                                               [&](const CaseSpec &c) { return c.label == label; });
                const VerificationRecord v = verify_case(run.raw.at(label), run.dim, *spec, seed, opt);
                all = all && v.pass;
                const Cx<double> s(v.symbolic_re, v.symbolic_im), num(v.numeric_re, v.numeric_im);
                recs.push_back({{"case", label},
                                {"dimension", v.dim},
                                {"seed", seed},
                                {"symbolic", cx_json(s)},
                                {"numeric", cx_json(num)},
                                {"rel_err", format_double(v.rel_err)},
                                {"verdict", v.pass ? "pass" : "fail"}});
                md << "| " << label << " | " << seed << " | " << cx_text(s) << " | " << cx_text(num) << " | "
                   << format_double(v.rel_err) << " | " << (v.pass ? "pass" : "fail") << " |\n";
            }
        if (cfg.format == "json")
            out << recs.dump(1) << "\n";
        else
            out << md.str();
        return all ? kPass : kMismatch;
    } catch (const std::exception &e) {
        return report_error(err, e.what(), kInternal);
    }
}

}  // namespace wres
