#pragma once

// JSON form of series:
// {"vars":[{"name":"t","weight":1,"laurent_floor":-16}],"trunc_plus":8,
//  "trunc_minus":8,"terms":[{"exp":[...],"num":"...","den":"..."}]}
// Terms appear in canonical order. "max_exp" is emitted only for capped
// variables and "laurent_floor" is null for power-series variables.

#include "cobcalc/series.hpp"

#include <json.hpp>

namespace cobcalc {

using Json = nlohmann::ordered_json;

inline Json to_json(const Ring& ring)
{
    Json vars = Json::array();
    for (const auto& v : ring.vars()) {
        Json j;
        j["name"] = v.name;
        j["weight"] = v.weight;
        j["laurent_floor"] = v.laurent_floor ? Json(*v.laurent_floor) : Json(nullptr);
        if (v.max_exp) {
            j["max_exp"] = *v.max_exp;
        }
        vars.push_back(std::move(j));
    }
    return vars;
}

inline Json to_json(const Series& f)
{
    const Ring& R = *f.ring();
    Json j;
    j["vars"] = to_json(R);
    j["trunc_plus"] = R.trunc_plus();
    j["trunc_minus"] = R.trunc_minus();
    Json terms = Json::array();
    for (const auto& [m, c] : f.terms()) {
        Json exp = Json::array();
        for (std::size_t i = 0; i < R.size(); ++i) {
            exp.push_back(m[i]);
        }
        terms.push_back({{"exp", exp}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    }
    j["terms"] = std::move(terms);
    return j;
}

inline RingPtr ring_from_json(const Json& j)
{
    std::vector<Variable> vars;
    for (const auto& v : j.at("vars")) {
        Variable var;
        var.name = v.at("name").get<std::string>();
        var.weight = v.at("weight").get<int>();
        if (v.contains("laurent_floor") && !v.at("laurent_floor").is_null()) {
            var.laurent_floor = v.at("laurent_floor").get<int>();
        }
        if (v.contains("max_exp")) {
            var.max_exp = v.at("max_exp").get<int>();
        }
        vars.push_back(std::move(var));
    }
    return make_ring(std::move(vars), j.at("trunc_plus").get<int>(), j.at("trunc_minus").get<int>());
}

// Reads a series; when `ring` is given the JSON table must match it.
inline Series series_from_json(const Json& j, RingPtr ring = nullptr)
{
    RingPtr parsed = ring_from_json(j);
    if (ring && !same_ring(ring, parsed)) {
        throw SeriesError("series JSON does not match the expected variable table");
    }
    if (!ring) {
        ring = parsed;
    }
    std::vector<Series::Term> terms;
    for (const auto& t : j.at("terms")) {
        const auto& exp = t.at("exp");
        if (exp.size() != ring->size()) {
            throw SeriesError("exponent vector length mismatch");
        }
        Monomial m;
        for (std::size_t i = 0; i < exp.size(); ++i) {
            m.set(i, exp[i].get<int>());
        }
        terms.emplace_back(m, parse_scalar(t.at("num").get<std::string>(), t.value("den", std::string("1"))));
    }
    return Series::from_terms(ring, std::move(terms));
}

} // namespace cobcalc
