#pragma once

#include <iosfwd>
#include <string>

#include "yeastloc/state_vector.hpp"

namespace yeastloc {

inline constexpr int kAsciiBarWidth = 50;
inline constexpr int kSvgWidth = 500;
inline constexpr int kSvgHeight = 200;

// Five rows, one per compartment: label, '#' bar of round(p * 50), probability
// to three decimals, '*' on the argmax row.
void render_ascii_chart(std::ostream& out, const Probabilities& p);

// Standalone 500x200 SVG with one labeled rect per compartment.
void render_svg_chart(std::ostream& out, const Probabilities& p, const std::string& title);

}  // namespace yeastloc
