#include "p4d/weyl.hpp"

#include <algorithm>
#include <numeric>

namespace p4d {

namespace {

std::vector<BirationalMap> power(const std::vector<BirationalMap>& base, int n) {
    std::vector<BirationalMap> out;
    for (int i = 0; i < n; ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
}

Report make_report(const std::string& check, const std::string& family, CheckMode mode) {
    Report r;
    r.check = check;
    r.family = family;
    r.mode = mode;
    return r;
}

}  // namespace

IntMatrix coxeter_matrix(const IntMatrix& a) {
    const std::size_t n = a.size();
    IntMatrix m(n, std::vector<int>(n, 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            switch (a[i][j] * a[j][i]) {
                case 0: m[i][j] = 2; break;
                case 1: m[i][j] = 3; break;
                case 2: m[i][j] = 4; break;
                case 3: m[i][j] = 6; break;
                default: throw NonAffineAction("a_ij * a_ji = " + std::to_string(a[i][j] * a[j][i]) + " has no finite m_ij");
            }
        }
    return m;
}

CoxeterPresentation derive_cartan(const GeneratorSet& set) {
    CoxeterPresentation p;
    const auto& s = set.reflections;
    const std::size_t n = s.size();
    p.cartan.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        p.labels.push_back(s[i].label);
        if (s[i].params.size() != n) throw NonAffineAction(s[i].label + " does not act on one parameter per node");
        const Var ai = s[i].params[i];
        for (std::size_t j = 0; j < n; ++j) {
            const Var aj = s[i].params[j];
            const RationalFunction d = s[i].param_images[j] - RationalFunction::variable(aj);
            const RationalFunction c = differentiate(d, ai);
            const bool reflection_form = c.is_polynomial() && c.num().is_constant() &&
                                         equals(d, c * RationalFunction::variable(ai)) &&
                                         c.num().constant_value().get_den() == 1;
            if (!reflection_form)
                throw NonAffineAction(s[i].label + " sends " + std::string(var_name(aj)) + " to " +
                                      to_string(s[i].param_images[j]));
            p.cartan[j][i] = -static_cast<int>(c.num().constant_value().get_num().get_si());
        }
        if (p.cartan[i][i] != 2) throw NonAffineAction(s[i].label + " does not negate its own root");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((p.cartan[i][j] == 0) != (p.cartan[j][i] == 0))
                throw NonAffineAction("asymmetric zero pattern at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    p.coxeter_m = coxeter_matrix(p.cartan);
    return p;
}

CoxeterPresentation derive_cartan(Family family) { return derive_cartan(generator_set(family)); }

IntMatrix standard_cartan(Family family) {
    auto blank = [](std::size_t n) {
        IntMatrix a(n, std::vector<int>(n, 0));
        for (std::size_t i = 0; i < n; ++i) a[i][i] = 2;
        return a;
    };
    auto bond = [](IntMatrix& a, int i, int j, int aij = -1, int aji = -1) {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    IntMatrix a;
    switch (family) {
        case Family::D4:
            a = blank(5);
            for (int i : {0, 1, 3, 4}) bond(a, i, 2);
            break;
        case Family::B4First:
        case Family::B4Second:
            // alpha_4 short
            a = blank(5);
            bond(a, 0, 2);
            bond(a, 1, 2);
            bond(a, 2, 3);
            bond(a, 4, 3, -2, -1);
            break;
        case Family::D52:
            // alpha_0 and alpha_4 short
            a = blank(5);
            bond(a, 0, 1, -2, -1);
            bond(a, 1, 2);
            bond(a, 2, 3);
            bond(a, 4, 3, -2, -1);
            break;
        case Family::D51:
            a = blank(6);
            bond(a, 0, 2);
            bond(a, 1, 2);
            bond(a, 2, 3);
            bond(a, 4, 3);
            bond(a, 5, 3);
            break;
        default:
            throw UnknownFamily("no affine type for " + family_name(family));
    }
    return a;
}

std::vector<int> match_standard(const CoxeterPresentation& p, Family family) {
    const IntMatrix k = standard_cartan(family);
    const std::size_t n = k.size();
    if (p.cartan.size() != n) return {};
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) ok = p.cartan[j][i] == k[perm[i]][perm[j]];
        if (ok) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {};
}

std::vector<BirationalMap> parse_word(const GeneratorSet& set, const std::string& text) {
    std::vector<std::string> labels = set.labels();
    std::sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<BirationalMap> word;
    std::string token;
    auto flush = [&] {
        std::size_t pos = 0;
        while (pos < token.size()) {
            auto it = std::find_if(labels.begin(), labels.end(),
                                   [&](const std::string& l) { return token.compare(pos, l.size(), l) == 0; });
            if (it == labels.end())
                throw UnknownLabel("cannot read '" + token.substr(pos) + "' as a generator of " + set.name);
            word.push_back(set.get(*it));
            pos += it->size();
        }
        token.clear();
    };
    for (char c : text) {
        if (c == ' ' || c == ',' || c == '*' || c == '.' || c == '\t') flush();
        else token += c;
    }
    flush();
    if (word.empty()) throw UnknownLabel("empty word");
    return word;
}

RationalPoint apply_word(const std::vector<BirationalMap>& word, const RationalPoint& point) {
    RationalPoint p = point;
    for (const auto& g : word) p = p4d::apply(g, p);
    return p;
}

Report verify_word_is_identity(const std::vector<BirationalMap>& word, const ParameterVector& params,
                               const std::string& check, const std::string& family, CheckMode mode) {
    Stopwatch clock;
    Report r = make_report(check, family, mode);
    std::string witness;
    bool ok = true;
    if (mode.exact) {
        if (word.size() <= 2) {
            const auto& g = word.front();
            ok = maps_equal(compose_word(word), identity_map(g.vars, g.params, g.time), params, &witness);
        } else {
            // g_m o ... o g_1 == g_{m+1} o ... o g_{2m} for involutive letters.
            const std::size_t m = word.size() / 2;
            std::vector<BirationalMap> first(word.begin(), word.begin() + m);
            std::vector<BirationalMap> second(word.rbegin(), word.rend() - m);
            ok = maps_equal(compose_word(first), compose_word(second), params, &witness);
        }
    } else {
        PointSampler sampler(seed_for(mode.seed, check));
        std::vector<Var> free = word.front().vars;
        free.push_back(word.front().time);
        int done = 0, attempts = 0;
        while (ok && done < mode.samples) {
            if (++attempts > mode.samples + 64) {
                ok = false;
                witness = "too many singular sample points";
                break;
            }
            RationalPoint p = sampler.point(free, params);
            try {
                RationalPoint q = apply_word(word, p);
                for (const auto& [v, value] : p) {
                    auto it = q.find(v);
                    if (it == q.end() || it->second != value) {
                        ok = false;
                        witness = std::string(var_name(v)) + " is not fixed at sample " + std::to_string(done);
                        break;
                    }
                }
                ++done;
            } catch (const DenominatorZeroAtPoint&) {
            }
        }
    }
    r.status = ok ? Status::pass : Status::fail;
    if (!ok) r.witness = witness;
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

std::vector<Report> verify_coxeter_relations(const GeneratorSet& set, CheckMode mode) {
    const CoxeterPresentation p = derive_cartan(set);
    const auto& s = set.reflections;
    std::vector<Report> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.push_back(verify_word_is_identity({s[i], s[i]}, set.params, "coxeter/" + set.name + "/" + s[i].label + "^2",
                                              set.name, mode));
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const int m = p.coxeter_m[i][j];
            const std::string name =
                "coxeter/" + set.name + "/(" + s[i].label + " " + s[j].label + ")^" + std::to_string(m);
            out.push_back(verify_word_is_identity(power({s[i], s[j]}, m), set.params, name, set.name, mode));
        }
    }
    return out;
}

std::vector<Report> verify_coxeter_relations(Family family, CheckMode mode) {
    return verify_coxeter_relations(generator_set(family), mode);
}

std::vector<Report> verify_extended_relations(Family family) {
    const GeneratorSet set = generator_set(family);
    const std::string fam = set.name;
    const CheckMode exact = CheckMode::exact_mode();
    std::vector<Report> out;

    if (family == Family::D4) {
        Stopwatch clock;
        Report r = make_report("extended/" + fam + "/pi4 = pi2 pi3 pi2", fam, exact);
        std::string witness;
        const bool ok =
            maps_equal(compose_word({set.get("pi2"), set.get("pi3"), set.get("pi2")}), set.get("pi4"), set.params, &witness);
        r.status = ok ? Status::pass : Status::fail;
        if (!ok) r.witness = witness;
        r.elapsed_ms = clock.elapsed_ms();
        out.push_back(r);
    }

    for (const auto& pi : set.automorphisms) {
        Stopwatch clock;
        Report r = make_report("extended/" + fam + "/" + pi.label + "^" + std::to_string(pi.order), fam, exact);
        std::string witness;
        const bool ok = pi.order > 0 && maps_equal(compose_word(power({pi}, pi.order)),
                                                   identity_map(pi.vars, pi.params, pi.time), set.params, &witness);
        r.status = ok ? Status::pass : Status::fail;
        if (!ok) r.witness = pi.order > 0 ? witness : "no declared order";
        r.elapsed_ms = clock.elapsed_ms();
        out.push_back(r);

        for (std::size_t j = 0; j < set.reflections.size(); ++j) {
            Stopwatch conj_clock;
            // pi sends alpha_j to alpha_sigma(j); then pi s_j pi = s_sigma(j).
            std::optional<std::size_t> k;
            for (std::size_t c = 0; c < pi.params.size(); ++c)
                if (equals(pi.param_images[j], RationalFunction::variable(pi.params[c]))) k = c;
            const auto& sj = set.reflections[j];
            Report cr = make_report("extended/" + fam + "/" + pi.label + " " + sj.label + " " + pi.label + " = " +
                                        (k ? set.reflections[*k].label : std::string("?")),
                                    fam, exact);
            if (!k) {
                cr.status = Status::fail;
                cr.witness = pi.label + " does not permute the parameters";
            } else {
                std::string w;
                const bool same = maps_equal(compose_word({pi, sj, pi}), set.reflections[*k], set.params, &w);
                cr.status = same ? Status::pass : Status::fail;
                if (!same) cr.witness = w;
            }
            cr.elapsed_ms = conj_clock.elapsed_ms();
            out.push_back(cr);
        }
    }
    return out;
}

std::vector<BirationalMap> translation_word(int k) {
    static const char* words[] = {"s3 s0 s2 s4 s1 s2 pi4", "s4 s1 s2 s3 s0 s2 pi4", "s3 s2 s0 s1 s2 s3 pi1 pi2",
                                  "s4 s3 s2 s1 s0 s2 pi1 pi2"};
    if (k < 1 || k > 4) throw Error("translation index must be 1..4");
    return parse_word(generator_set(Family::D4), words[k - 1]);
}

BirationalMap translation_operator(int k) {
    BirationalMap m = compose_word(translation_word(k));
    m.label = "T" + std::to_string(k);
    return m;
}

std::array<mpq_class, 5> expected_shift(int k) {
    switch (k) {
        case 1: return {1, 0, -1, 1, 0};
        case 2: return {0, 1, -1, 0, 1};
        case 3: return {0, 0, 0, 1, -1};
        case 4: return {0, 0, -1, 1, 1};
    }
    throw Error("translation index must be 1..4");
}

BirationalMap parameter_part(const BirationalMap& map) {
    BirationalMap m = map;
    m.vars.clear();
    m.images.clear();
    return m;
}

std::vector<Report> verify_translation_shifts() {
    const ParameterVector params = make_hamiltonian(Family::D4).params;
    const CheckMode exact = CheckMode::exact_mode();
    std::vector<BirationalMap> t(5);
    for (int k = 1; k <= 4; ++k) {
        std::vector<BirationalMap> word;
        for (const auto& g : translation_word(k)) word.push_back(parameter_part(g));
        t[k] = compose_word(word);
        t[k].label = "T" + std::to_string(k);
    }

    // Image minus identity, reduced on the hyperplane, must equal n * shift.
    auto shift_report = [&](int k, int n) {
        Stopwatch clock;
        const std::string name =
            "translations/T" + std::to_string(k) + (n > 1 ? "^" + std::to_string(n) : "") + " shift";
        Report r = make_report(name, "d4", exact);
        const BirationalMap m = compose_word(power({t[k]}, n));
        const auto shift = expected_shift(k);
        r.status = Status::pass;
        for (std::size_t j = 0; j < 5; ++j) {
            const RationalFunction d = params.reduce(m.param_images[j] - RationalFunction::variable(m.params[j]));
            if (!equals(d, RationalFunction(shift[j] * n))) {
                r.status = Status::fail;
                r.witness = std::string(var_name(m.params[j])) + " moves by " + to_string(d);
                break;
            }
        }
        r.elapsed_ms = clock.elapsed_ms();
        return r;
    };

    std::vector<Report> out;
    for (int k = 1; k <= 4; ++k) {
        out.push_back(shift_report(k, 1));
        out.push_back(shift_report(k, 2));
        out.push_back(shift_report(k, 3));

        Report w = make_report("translations/T" + std::to_string(k) + " preserves normalization", "d4", exact);
        mpq_class total = 0;
        const auto shift = expected_shift(k);
        for (std::size_t j = 0; j < 5; ++j) total += params.constraint->coeffs[j] * shift[j];
        w.status = total == 0 ? Status::pass : Status::fail;
        if (total != 0) w.witness = "weighted sum " + total.get_str();
        out.push_back(w);
    }
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            Stopwatch clock;
            Report r = make_report("translations/T" + std::to_string(i) + " T" + std::to_string(j) + " = T" +
                                       std::to_string(j) + " T" + std::to_string(i),
                                   "d4", exact);
            std::string witness;
            const bool ok = maps_equal(compose(t[j], t[i]), compose(t[i], t[j]), params, &witness);
            r.status = ok ? Status::pass : Status::fail;
            if (!ok) r.witness = witness;
            r.elapsed_ms = clock.elapsed_ms();
            out.push_back(r);
        }
    return out;
}

Json to_json(const CoxeterPresentation& p) { return Json{{"labels", p.labels}, {"cartan", p.cartan}, {"coxeter_m", p.coxeter_m}}; }

}  // namespace p4d
