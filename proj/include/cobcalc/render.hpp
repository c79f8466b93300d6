#pragma once

// Plain-text rendering. Negative-weight variables (the b's) form the
// coefficient ring; everything else is a "main" variable. Terms are grouped
// by main monomial:
//   2t + 2b1 t^2 + (6b2-4b1^2) t^3

#include "cobcalc/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace cobcalc {

namespace detail {

inline std::string scalar_prefix(const Scalar& c, bool has_monomial)
{
    if (!has_monomial) {
        return c.get_str();
    }
    if (c == 1) {
        return "";
    }
    if (c == -1) {
        return "-";
    }
    if (is_integer(c)) {
        return c.get_str();
    }
    return "(" + c.get_str() + ")";
}

// Compact form used inside coefficients: "6b2-4b1^2".
inline std::string render_compact(const Ring& ring, const std::vector<Series::Term>& terms)
{
    if (terms.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& [m, c] : terms) {
        std::string mono = m.is_one() ? "" : describe_monomial(ring, m);
        // compact form drops the spaces between factors
        std::string joined;
        for (char ch : mono) {
            if (ch != ' ') {
                joined += ch;
            }
        }
        std::string piece = scalar_prefix(c, !joined.empty()) + joined;
        if (!out.empty() && piece.front() != '-') {
            out += '+';
        }
        out += piece;
    }
    return out;
}

} // namespace detail

inline std::string to_text(const Series& f)
{
    const Ring& R = *f.ring();
    if (f.is_zero()) {
        return "0";
    }
    std::map<Monomial, std::vector<Series::Term>> groups;
    for (const auto& [m, c] : f.terms()) {
        Monomial main;
        Monomial coef;
        for (std::size_t i = 0; i < R.size(); ++i) {
            if (m[i] == 0) {
                continue;
            }
            if (R.var(i).weight < 0) {
                coef.set(i, m[i]);
            } else {
                main.set(i, m[i]);
            }
        }
        groups[main].emplace_back(coef, c);
    }
    std::string out;
    for (auto& [main, coefs] : groups) {
        std::string mono = main.is_one() ? "" : describe_monomial(R, main);
        bool negative = false;
        std::string body;
        if (coefs.size() == 1 && coefs.front().first.is_one()) {
            Scalar c = coefs.front().second;
            negative = c < 0;
            body = detail::scalar_prefix(negative ? Scalar(-c) : c, !mono.empty()) + mono;
        } else if (coefs.size() == 1) {
            Scalar c = coefs.front().second;
            negative = c < 0;
            std::vector<Series::Term> one{{coefs.front().first, negative ? Scalar(-c) : c}};
            body = detail::render_compact(R, one);
            if (!mono.empty()) {
                body += ' ' + mono;
            }
        } else {
            body = detail::render_compact(R, coefs);
            if (!mono.empty()) {
                body = '(' + body + ") " + mono;
            } else if (groups.size() > 1) {
                body = '(' + body + ')';
            }
        }
        if (out.empty()) {
            out = negative ? "-" + body : body;
        } else {
            out += negative ? " - " : " + ";
            out += body;
        }
    }
    return out;
}

} // namespace cobcalc
