#include "wres/report.hpp"

#include <cstdio>
#include <sstream>

namespace wres {

using nlohmann::json;

std::vector<std::string> monomial_atoms(const Monomial &m) {
    std::vector<std::string> out;
    for (int k = 0; k < m.n; ++k) out.push_back(atom::to_string(m.at[k]));
    return out;
}

json coefficient_to_json(const Scalar &s) {
    json out = json::array();
    for (const auto &[m, c] : s.terms()) {
        if (m.n != 0) throw std::invalid_argument("coefficient carries atoms");
        json e{{"num", c.re.get_num().get_str()}, {"den", c.re.get_den().get_str()}, {"pi_power", int(m.pi)}};
        if (!c.is_real()) {
            e["im_num"] = c.im.get_num().get_str();
            e["im_den"] = c.im.get_den().get_str();
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::string coefficient_to_text(const Scalar &s) { return s.to_string(); }

json table_to_json(const CoefficientTable &t, const std::string &display) {
    json entries = json::array();
    for (const auto &[m, c] : t.entries)
        entries.push_back({{"monomial", monomial_atoms(m)}, {"coefficient", coefficient_to_json(c)}});
    return {{"display", display},
            {"dimension", t.dim},
            {"trace_factor", t.trace_factor()},
            {"volume_factor", t.volume().to_string()},
            {"entries", std::move(entries)}};
}

std::string table_to_markdown(const CoefficientTable &t, const std::string &display) {
    std::ostringstream os;
    os << "### " << display << "\n\n";
    os << "dimension " << t.dim << ", trace factor " << t.trace_factor() << ", volume factor "
       << t.volume().to_string() << ", " << t.entries.size() << " entries\n\n";
    os << "| monomial | coefficient |\n|---|---|\n";
    for (const auto &[m, c] : t.entries) os << "| " << m.to_string() << " | " << c.to_string() << " |\n";
    os << "\n";
    return os.str();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

}  // namespace wres
