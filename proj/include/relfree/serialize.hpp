#pragma once

#include "relfree/autos.hpp"
#include "relfree/magnus.hpp"
#include "relfree/nilpotent.hpp"
#include "relfree/ring.hpp"

#include <json.hpp>

namespace relfree {

inline nlohmann::json to_json(const QuotientDescriptor& q) {
    nlohmann::json j{{"family", ""}, {"rank", q.rank}};
    switch (q.family) {
        case Family::free_group: j["family"] = "free"; break;
        case Family::abelian: j["family"] = "abelian"; break;
        case Family::metabelian: j["family"] = "metabelian"; break;
        case Family::nilpotent:
            j["family"] = "nilpotent";
            j["class"] = q.param;
            break;
        case Family::solvable:
            j["family"] = "solvable";
            j["length"] = q.param;
            break;
    }
    return j;
}

inline nlohmann::json to_json(const RingElement& u, const Alphabet& alphabet) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : u.terms())
        terms.push_back({{"coeff", c.str()}, {"key", u.group().display(k, alphabet)}});
    return {{"group", to_json(u.group().descriptor())}, {"terms", terms}};
}

inline nlohmann::json to_json(const ModuleVector& v, const Alphabet& alphabet) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& [g, c] : v.coords())
        coords.push_back({alphabet.name(g), to_json(c, alphabet)});
    return {{"quotient", to_json(v.quotient().descriptor())}, {"coords", coords}};
}

inline nlohmann::json to_json(const NilpotentNF& nf, const Alphabet& alphabet) {
    const HallBasis& basis = HallBasis::get(nf.rank(), nf.cls());
    nlohmann::json exps = nlohmann::json::array();
    for (const Syllable& s : nf.entries())
        exps.push_back({basis.text(s.gen, alphabet), s.exp.str()});
    return {{"class", nf.cls()}, {"exponents", exps}};
}

inline nlohmann::json to_json(const Endomorphism& e, const Alphabet& alphabet) {
    nlohmann::json images = nlohmann::json::array();
    for (const Word& w : e.images()) images.push_back(to_text(w, alphabet));
    return {{"rank", e.rank()}, {"images", images}, {"variety", to_json(e.variety())}};
}

inline nlohmann::json to_json(const HomWord& w, const Alphabet& alphabet) {
    nlohmann::json args = nlohmann::json::array();
    for (const Word& a : w.args) args.push_back(to_text(a, alphabet));
    return {{"term", to_text(w.term)}, {"args", args}};
}

}  // namespace relfree
