#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "wres/boundary_engine.hpp"
#include "wres/numeric_oracle.hpp"

namespace wres {

enum ExitCode : int { kPass = 0, kMismatch = 1, kUsage = 2, kInternal = 3, kMissingFixture = 4 };

struct RunConfig {
    int dimension = 4;
    std::string target = "both";            // boundary | interior | both
    std::vector<std::string> cases{"all"};  // a1 a2 a3 b c all
    std::string format = "markdown";        // json | markdown
    std::vector<std::uint64_t> seeds;       // empty: oracle off
    unsigned precision = 16;
    std::filesystem::path fixture_dir;
};

// $WRES_PRECISION if set and valid, else 16 (machine doubles).
unsigned default_precision();

// Throws std::invalid_argument for anything outside the contract.
void validate(const RunConfig &cfg);

// Symbolic results for one dimension, computed once and shared by commands.
struct SymbolicRun {
    int dim = 4;
    std::unique_ptr<BoundaryEngine> engine;
    std::vector<CaseSpec> cases;
    std::map<std::string, Scalar> raw;  // by case label
    explicit SymbolicRun(int n);
    CoefficientTable table(const std::vector<std::string> &labels, const std::string &name) const;
};

// Oracle values keyed by (dimension, case label, seed).
using OracleCache = std::map<std::tuple<int, std::string, std::uint64_t>, Cx<double>>;

Cx<double> cached_oracle(const SymbolicRun &run, const std::string &label, std::uint64_t seed,
                         const OracleOptions &opt, OracleCache *cache);

struct Adjudication {
    std::uint64_t seed = 0;
    Cx<double> engine, oracle, fixture;
    bool engine_confirmed = false;  // oracle agrees with the engine
    bool fixture_agrees = false;    // oracle agrees with the stored table
};

struct DisplayCheck {
    std::string display;
    std::vector<std::string> cases;
    std::size_t matches = 0, mismatches = 0, only_computed = 0, only_expected = 0;
    std::vector<std::string> sample;  // first few differing monomials
    std::string status;               // match | equivalent | documented-discrepancy | unconfirmed
    std::vector<Adjudication> adjudication;
    bool ok() const { return status != "unconfirmed"; }
};

struct InteriorCheck {
    std::string display;
    bool match = false;
    std::size_t differing_terms = 0;
};

struct VerifyResult {
    int dim = 4;
    std::vector<DisplayCheck> displays;
    bool cancellation_checked = false, cancellation_holds = false;
    InteriorCheck interior;
    int exit_code() const;
    nlohmann::json to_json() const;
    std::string to_markdown() const;
};

// Compares every stored display of the dimension; mismatches are adjudicated by the oracle.
// Throws FixtureMissing / FixtureError.
VerifyResult run_verify(const SymbolicRun &run, const std::vector<std::uint64_t> &seeds,
                        const std::filesystem::path &fixture_dir, const OracleOptions &opt,
                        OracleCache *cache = nullptr);

// Displayed interior form: prefactor * tr[id] / 4 over the bracket with the J-isometry applied.
struct InteriorDisplay {
    Scalar display_prefactor;
    Scalar bracket;
};
InteriorDisplay interior_display(int n);

int cmd_compute(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_oracle(const RunConfig &cfg, std::ostream &out, std::ostream &err);

}  // namespace wres
