#pragma once

#include <string>

#include <json.hpp>

#include "wres/boundary_engine.hpp"
#include "wres/scalar.hpp"

namespace wres {

// [{num, den, pi_power}] plus {im_num, im_den} when the coefficient is not real.
nlohmann::json coefficient_to_json(const Scalar &s);
std::string coefficient_to_text(const Scalar &s);

// {display, dimension, trace_factor, volume_factor, entries: [{monomial, coefficient}]}, sorted by monomial.
nlohmann::json table_to_json(const CoefficientTable &t, const std::string &display);
std::string table_to_markdown(const CoefficientTable &t, const std::string &display);

// Atom strings of a monomial, in canonical order.
std::vector<std::string> monomial_atoms(const Monomial &m);

// Fixed formatting so reports are byte-stable.
std::string format_double(double v);

}  // namespace wres
