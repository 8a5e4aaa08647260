#include "p4d/algebra.hpp"

#include <algorithm>
#include <random>

namespace p4d {

namespace {

// Non-monomial factors that recur in the denominators of the catalog maps.
// Monomial factors (t, x, y, z, w, eps, ...) are cancelled separately.
const std::vector<Polynomial>& factor_catalog() {
    static const std::vector<Polynomial> factors = [] {
        const auto v = Polynomial::variable;
        return std::vector<Polynomial>{
            v(Var::y) - 1,
            v(Var::w) - v(Var::t),
            v(Var::x) - v(Var::z),
            v(Var::x) * v(Var::z) - 1,
            v(Var::y) + v(Var::t),
            v(Var::z) - 1,
        };
    }();
    return factors;
}

const std::array<std::uint64_t, kVarCount>& residues() {
    static const std::array<std::uint64_t, kVarCount> table = [] {
        std::mt19937_64 rng(0x5eed1234abcdull);
        std::array<std::uint64_t, kVarCount> r{};
        for (auto& x : r) x = rng() % ((std::uint64_t{1} << 61) - 1);
        return r;
    }();
    return table;
}

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void RationalFunction::normalize() {
    if (den_.is_zero()) throw DenominatorVanishes("denominator is the zero polynomial");
    if (num_.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    const mpq_class cn = num_.content();
    const mpq_class cd = den_.content();
    num_ = num_.scaled(1 / cn);
    den_ = den_.scaled(1 / cd);
    const mpq_class scale = cn / cd;

    Monomial g = Monomial::gcd(num_.monomial_content(), den_.monomial_content());
    if (!g.is_one()) {
        num_ = *exact_divide(num_, Polynomial::monomial(g, 1));
        den_ = *exact_divide(den_, Polynomial::monomial(g, 1));
    }

    if (!den_.is_constant()) {
        if (auto q = exact_divide(num_, den_)) {
            num_ = std::move(*q);
            den_ = Polynomial(1);
        } else {
            for (const auto& f : factor_catalog()) {
                while (true) {
                    auto dq = exact_divide(den_, f);
                    if (!dq) break;
                    auto nq = exact_divide(num_, f);
                    if (!nq) break;
                    den_ = std::move(*dq);
                    num_ = std::move(*nq);
                }
            }
            const mpq_class c2 = den_.content();
            if (c2 != 1) {
                den_ = den_.scaled(1 / c2);
                num_ = num_.scaled(1 / c2);
            }
        }
    }
    num_ = num_.scaled(scale);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    if (b.den_.is_constant()) return {a.num_ + b.num_.scaled(1 / b.den_.constant_value()) * a.den_, a.den_};
    if (a.den_.is_constant()) return {b.num_ + a.num_.scaled(1 / a.den_.constant_value()) * b.den_, b.den_};
    if (auto q = exact_divide(a.den_, b.den_)) return {a.num_ + b.num_ * *q, a.den_};
    if (auto q = exact_divide(b.den_, a.den_)) return {b.num_ + a.num_ * *q, b.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Polynomial an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    if (!bd.is_constant()) {
        if (auto q = exact_divide(an, bd)) {
            an = std::move(*q);
            bd = Polynomial(1);
        }
    }
    if (!ad.is_constant()) {
        if (auto q = exact_divide(bn, ad)) {
            bn = std::move(*q);
            ad = Polynomial(1);
        }
    }
    return {an * bn, ad * bd};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DenominatorVanishes("division by zero");
    RationalFunction inv;
    inv.num_ = b.den_;
    inv.den_ = b.num_;
    inv.normalize();
    return a * inv;
}

RationalFunction RationalFunction::pow(int e) const {
    if (e < 0) return RationalFunction(1) / pow(-e);
    RationalFunction r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    return r;  // powers of a normalized pair stay normalized up to content
}

std::vector<Var> RationalFunction::variables() const {
    auto a = num_.variables();
    auto b = den_.variables();
    std::vector<Var> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

RationalFunction differentiate(const RationalFunction& f, Var v) {
    if (!f.depends_on(v)) return {};
    if (!f.den().depends_on(v)) return {f.num().derivative(v), f.den()};
    return {f.num().derivative(v) * f.den() - f.num() * f.den().derivative(v), f.den() * f.den()};
}

namespace {

struct Image {
    Polynomial num, den;
    bool polynomial;
    std::vector<Polynomial> num_pow{Polynomial(1)}, den_pow{Polynomial(1)};

    const Polynomial& np(unsigned k) {
        while (num_pow.size() <= k) num_pow.push_back(num_pow.back() * num);
        return num_pow[k];
    }
    const Polynomial& dp(unsigned k) {
        while (den_pow.size() <= k) den_pow.push_back(den_pow.back() * den);
        return den_pow[k];
    }
};

// Numerator of P(images) over the common denominator prod den_v^deg_v(P).
Polynomial substitute_numerator(const Polynomial& poly, std::array<Image*, kVarCount>& images) {
    std::array<unsigned, kVarCount> maxdeg{};
    for (std::size_t i = 0; i < kVarCount; ++i)
        if (images[i]) maxdeg[i] = poly.degree(var_at(i));

    Polynomial total;
    for (const auto& t : poly.terms()) {
        Monomial rest = t.mono;
        Polynomial acc = Polynomial::monomial(Monomial{}, t.coeff);
        for (std::size_t i = 0; i < kVarCount; ++i) {
            if (!images[i]) continue;
            unsigned e = t.mono.exp[i];
            rest.exp[i] = 0;
            rest.deg = static_cast<std::uint16_t>(rest.deg - e);
            if (e) acc = acc * images[i]->np(e);
            if (!images[i]->polynomial && maxdeg[i] > e) acc = acc * images[i]->dp(maxdeg[i] - e);
        }
        total += acc.times_monomial(rest);
    }
    return total;
}

}  // namespace

RationalFunction substitute(const RationalFunction& f, const Assignment& assignment) {
    std::vector<Image> storage;
    storage.reserve(assignment.size());
    std::array<Image*, kVarCount> images{};
    for (const auto& [v, img] : assignment) {
        if (!f.depends_on(v)) continue;
        storage.push_back(Image{img.num(), img.den(), img.is_polynomial()});
        Image& im = storage.back();
        if (im.polynomial && !(im.den == Polynomial(1))) {
            im.num = im.num.scaled(1 / im.den.constant_value());
            im.den = Polynomial(1);
        }
        images[index(v)] = &im;
    }
    if (storage.empty()) return f;

    Polynomial num = substitute_numerator(f.num(), images);
    Polynomial den = substitute_numerator(f.den(), images);
    if (den.is_zero()) throw DenominatorVanishes("substitution makes the denominator vanish");
    for (std::size_t i = 0; i < kVarCount; ++i) {
        Image* im = images[i];
        if (!im || im->polynomial) continue;
        int d = static_cast<int>(f.den().degree(var_at(i))) - static_cast<int>(f.num().degree(var_at(i)));
        if (d > 0) num = num * im->dp(static_cast<unsigned>(d));
        if (d < 0) den = den * im->dp(static_cast<unsigned>(-d));
    }
    return {std::move(num), std::move(den)};
}

Polynomial substitute_poly(const Polynomial& f, const std::map<Var, Polynomial>& assignment) {
    std::vector<Image> storage;
    storage.reserve(assignment.size());
    std::array<Image*, kVarCount> images{};
    for (const auto& [v, img] : assignment) {
        if (!f.depends_on(v)) continue;
        storage.push_back(Image{img, Polynomial(1), true});
        images[index(v)] = &storage.back();
    }
    if (storage.empty()) return f;
    return substitute_numerator(f, images);
}

bool equals(const RationalFunction& f, const RationalFunction& g) {
    if (f.same_form(g)) return true;
    try {
        const auto& r = residues();
        std::uint64_t lhs = mulmod(f.num().evaluate_mod(r), g.den().evaluate_mod(r));
        std::uint64_t rhs = mulmod(g.num().evaluate_mod(r), f.den().evaluate_mod(r));
        if (lhs != rhs) return false;
    } catch (const Error&) {
        // a coefficient denominator hit the prime; fall through to the exact test
    }
    return f.num() * g.den() == g.num() * f.den();
}

mpq_class eval(const RationalFunction& f, const RationalPoint& point) {
    mpq_class d = f.den().evaluate(point);
    if (sgn(d) == 0) throw DenominatorZeroAtPoint("denominator vanishes at the evaluation point");
    return f.num().evaluate(point) / d;
}

RationalFunction specialize(const RationalFunction& f, const RationalPoint& point) {
    Polynomial d = f.den().specialize(point);
    if (d.is_zero()) throw DenominatorZeroAtPoint("denominator vanishes at the specialization point");
    return {f.num().specialize(point), std::move(d)};
}

}  // namespace p4d
