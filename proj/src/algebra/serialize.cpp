#include "p4d/serialize.hpp"

namespace p4d {

Json to_json(const Polynomial& p) {
    Json out = Json::array();
    for (const auto& t : p.terms()) {
        Json exps = Json::object();
        for (std::size_t i = 0; i < kVarCount; ++i)
            if (t.mono.exp[i]) exps[std::string(var_name(var_at(i)))] = unsigned{t.mono.exp[i]};
        out.push_back({{"coeff", t.coeff.get_str()}, {"exps", std::move(exps)}});
    }
    return out;
}

Json to_json(const RationalFunction& f) { return {{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

Polynomial polynomial_from_json(const Json& j) {
    if (!j.is_array()) throw Error("polynomial JSON must be an array of terms");
    std::vector<Term> terms;
    for (const auto& t : j) {
        Term term;
        term.coeff = mpq_class(t.at("coeff").get<std::string>());
        term.coeff.canonicalize();
        for (const auto& [name, e] : t.at("exps").items()) {
            auto v = var_from_name(name);
            if (!v) throw Error("unknown variable '" + name + "' in polynomial JSON");
            term.mono = term.mono * Monomial::of(*v, e.get<unsigned>());
        }
        terms.push_back(std::move(term));
    }
    return Polynomial::from_terms(std::move(terms));
}

RationalFunction rational_from_json(const Json& j) {
    return {polynomial_from_json(j.at("num")), polynomial_from_json(j.at("den"))};
}

}  // namespace p4d
