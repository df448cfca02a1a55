#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wres/clifford_frame.hpp"
#include "wres/scalar.hpp"

namespace wres {

// c(u) or cbar(u) for a vector symbol u. Bit 15 marks cbar.
using Letter = std::uint16_t;

inline Letter letter_c(VecId v) { return v; }
inline Letter letter_cbar(VecId v) { return static_cast<Letter>(v | 0x8000u); }
inline bool letter_is_bar(Letter l) { return (l & 0x8000u) != 0; }
inline VecId letter_vec(Letter l) { return static_cast<VecId>(l & 0x0FFFu); }
std::string letter_name(Letter l);

using AbstractWord = std::vector<Letter>;
std::string word_name(const AbstractWord &w);

// Frame component g(u, e_h) as a scalar; nullopt for opaque symbols.
std::optional<Scalar> vec_component(VecId u, int h, int n);

// g(u, v): Kronecker delta, a single component atom, or a GPair atom.
Scalar pair_value(VecId u, VecId v, int n);

Scalar wick_trace(const AbstractWord &w, int n);

// Replace GPair atoms whose arguments both have frame components by sum_h u_h v_h.
Scalar expand_gpairs(const Scalar &s, int n);

// Expansion of a word into the frame algebra (fails on opaque symbols).
CliffordElement word_to_frame(const AbstractWord &w, int n);

}  // namespace wres
