#include "yeastloc/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace yeastloc {

namespace {

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

void render_ascii_chart(std::ostream& out, const Probabilities& p) {
    const Compartment best = argmax_compartment(p);
    char prob[32];
    for (Compartment c : kAllCompartments) {
        const double x = p[index_of(c)];
        const int len = std::clamp(static_cast<int>(std::lround(x * kAsciiBarWidth)), 0, kAsciiBarWidth);
        std::snprintf(prob, sizeof prob, "%.3f", x);
        out << to_char(c) << " |" << std::string(static_cast<std::size_t>(len), '#')
            << std::string(static_cast<std::size_t>(kAsciiBarWidth - len), ' ') << "| " << prob;
        if (c == best) out << " *";
        out << '\n';
    }
}

void render_svg_chart(std::ostream& out, const Probabilities& p, const std::string& title) {
    // Title band on top, then five rows; compartment letters sit in the left
    // gutter and probabilities follow each bar.
    constexpr int kTop = 25;
    constexpr int kRow = 32;
    constexpr int kBarHeight = 24;
    constexpr int kLeft = 40;
    constexpr int kMaxBar = kSvgWidth - kLeft - 60;
    const Compartment best = argmax_compartment(p);
    char buf[256];

    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                  kSvgWidth, kSvgHeight, kSvgWidth, kSvgHeight);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n" << buf;
    out << "  <rect x=\"0\" y=\"0\" width=\"" << kSvgWidth << "\" height=\"" << kSvgHeight << "\" fill=\"white\"/>\n";
    out << "  <text x=\"" << kSvgWidth / 2 << "\" y=\"16\" font-family=\"sans-serif\" font-size=\"13\" "
        << "text-anchor=\"middle\">" << escape_xml(title) << "</text>\n";
    for (Compartment c : kAllCompartments) {
        const std::size_t i = index_of(c);
        const int y = kTop + static_cast<int>(i) * kRow;
        const double width = std::clamp(p[i], 0.0, 1.0) * kMaxBar;
        std::snprintf(buf, sizeof buf,
                      "  <text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"14\" "
                      "text-anchor=\"end\">%c</text>\n",
                      kLeft - 8, y + 17, to_char(c));
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "  <rect x=\"%d\" y=\"%d\" width=\"%.2f\" height=\"%d\" fill=\"%s\"><title>%s</title></rect>\n",
                      kLeft, y, width, kBarHeight, c == best ? "#c0392b" : "#2e86c1",
                      std::string(long_name(c)).c_str());
        out << buf;
        std::snprintf(buf, sizeof buf,
                      "  <text x=\"%.2f\" y=\"%d\" font-family=\"monospace\" font-size=\"12\">%.3f%s</text>\n",
                      kLeft + width + 4.0, y + 17, p[i], c == best ? " *" : "");
        out << buf;
    }
    out << "</svg>\n";
}

}  // namespace yeastloc
