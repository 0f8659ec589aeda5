#pragma once

#include <string>

namespace weyl::detail {

/// Canonical plain-text rendering shared by noncommutative elements and
/// commutative polynomials. Terms must iterate leading-first (graded-lex
/// descending); the output re-parses to the same element.
///
/// A leading negative term keeps an explicit coefficient ("-1*x1^2") because
/// in the expression grammar a bare leading minus binds to the base, not to
/// the whole power.
template <class Map, class Ring, class Namer>
std::string render_terms(const Map& terms, const Ring& ring, Namer namer) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [idx, coeff] : terms) {
        std::string mon;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] == 0) continue;
            if (!mon.empty()) mon += "*";
            mon += namer(i);
            if (idx[i] > 1) mon += "^" + std::to_string(idx[i]);
        }
        const bool neg = ring.is_negative(coeff);
        const std::string mag = ring.to_string(neg ? ring.neg(coeff) : coeff);
        if (first) {
            if (mon.empty()) {
                out += (neg ? "-" : "") + mag;
            } else if (neg) {
                out += "-" + mag + "*" + mon;
            } else {
                out += (mag == "1") ? mon : mag + "*" + mon;
            }
            first = false;
        } else {
            out += neg ? " - " : " + ";
            if (mon.empty()) {
                out += mag;
            } else {
                out += (mag == "1") ? mon : mag + "*" + mon;
            }
        }
    }
    return out;
}

}  // namespace weyl::detail
