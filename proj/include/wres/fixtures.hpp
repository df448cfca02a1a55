#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "wres/boundary_engine.hpp"
#include "wres/scalar.hpp"

namespace wres {

struct FixtureMissing : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Stored boundary table, expanded to concrete atoms and normalized like CoefficientTable.
struct BoundaryFixture {
    std::string display;
    int dim = 4;
    long trace_factor = 16;
    std::string volume_factor;
    CoefficientTable table;
};

// Stored interior display: overall * bracket.
struct InteriorFixture {
    std::string display;
    int dim = 4;
    Scalar overall;
    Scalar bracket;
    Scalar assembled() const { return overall * bracket; }
};

// $WRES_FIXTURES if set, else the directory configured at build time.
std::filesystem::path default_fixture_dir();

BoundaryFixture load_boundary_fixture(const std::filesystem::path &file);
InteriorFixture load_interior_fixture(const std::filesystem::path &file);

// Expands one atom template after index substitution, e.g. "a[l][i]" with l=2, i=3.
// gJ[p][a][b] stands for g(J dx_p, (nabla_{e_a} J) e_b) = sum_h a[h][p] nabj[a][b][h].
Scalar expand_atom_template(const std::string &tmpl, int dim, const std::map<std::string, int> &binding);

}  // namespace wres
