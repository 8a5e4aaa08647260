#include "p4d/algebra.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>

namespace p4d {

namespace {

constexpr std::array<std::string_view, kVarCount> kNames = {
    "x", "y", "z", "w", "t", "eps", "q", "p",
    "a0", "a1", "a2", "a3", "a4",
    "b0", "b1", "b2", "b3", "b4", "b5",
    "A0", "A1", "A2", "A3", "A4",
    "g0", "g1", "g2",
    "v1", "v2", "v3",
};

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, b);
        b = mulmod(b, b);
        e >>= 1;
    }
    return r;
}

bool term_greater(const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; }

}  // namespace

std::string_view var_name(Var v) { return kNames[index(v)]; }

std::optional<Var> var_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kVarCount; ++i)
        if (kNames[i] == name) return var_at(i);
    return std::nullopt;
}

bool is_phase(Var v) {
    switch (v) {
        case Var::x: case Var::y: case Var::z: case Var::w: case Var::q: case Var::p:
            return true;
        default:
            return false;
    }
}

bool is_parameter(Var v) { return index(v) >= index(Var::a0); }

std::optional<char> parameter_family(Var v) {
    if (!is_parameter(v)) return std::nullopt;
    return kNames[index(v)][0];
}

// --- Monomial ---------------------------------------------------------------

Monomial Monomial::of(Var v, unsigned e) {
    if (e > 255) throw Error("exponent overflow");
    Monomial m;
    m.exp[index(v)] = static_cast<std::uint8_t>(e);
    m.deg = static_cast<std::uint16_t>(e);
    return m;
}

bool Monomial::divides(const Monomial& other) const {
    if (deg > other.deg) return false;
    for (std::size_t i = 0; i < kVarCount; ++i)
        if (exp[i] > other.exp[i]) return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kVarCount; ++i) {
        unsigned e = unsigned{a.exp[i]} + b.exp[i];
        if (e > 255) throw Error("exponent overflow");
        m.exp[i] = static_cast<std::uint8_t>(e);
    }
    m.deg = static_cast<std::uint16_t>(a.deg + b.deg);
    return m;
}

Monomial operator/(const Monomial& b, const Monomial& a) {
    Monomial m;
    for (std::size_t i = 0; i < kVarCount; ++i) m.exp[i] = static_cast<std::uint8_t>(b.exp[i] - a.exp[i]);
    m.deg = static_cast<std::uint16_t>(b.deg - a.deg);
    return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial m;
    unsigned d = 0;
    for (std::size_t i = 0; i < kVarCount; ++i) {
        m.exp[i] = std::min(a.exp[i], b.exp[i]);
        d += m.exp[i];
    }
    m.deg = static_cast<std::uint16_t>(d);
    return m;
}

int compare(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    for (std::size_t i = kVarCount; i-- > 0;)
        if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? -1 : 1;
    return 0;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : m.exp) {
        h ^= e;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

// --- Polynomial -------------------------------------------------------------

Polynomial::Polynomial(long c) {
    if (c != 0) terms_.push_back({Monomial{}, mpq_class(c)});
}

Polynomial::Polynomial(const mpq_class& c) {
    if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(Var v) { return monomial(Monomial::of(v), 1); }

Polynomial Polynomial::monomial(const Monomial& m, const mpq_class& c) {
    Polynomial p;
    if (sgn(c) != 0) p.terms_.push_back({m, c});
    return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_greater);
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff += t.coeff;
        } else {
            if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
    return Polynomial(std::move(out));
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

mpq_class Polynomial::constant_value() const {
    if (!is_constant()) throw Error("constant_value of a non-constant polynomial");
    return terms_.empty() ? mpq_class(0) : terms_[0].coeff;
}

unsigned Polynomial::degree(Var v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exp[index(v)]);
    return d;
}

unsigned Polynomial::total_degree() const {
    return terms_.empty() ? 0 : terms_.front().mono.deg;
}

unsigned Polynomial::total_degree(const std::function<bool(Var)>& counted) const {
    unsigned best = 0;
    for (const auto& t : terms_) {
        unsigned d = 0;
        for (std::size_t i = 0; i < kVarCount; ++i)
            if (t.mono.exp[i] && counted(var_at(i))) d += t.mono.exp[i];
        best = std::max(best, d);
    }
    return best;
}

bool Polynomial::depends_on_any(const std::function<bool(Var)>& pred) const {
    for (std::size_t i = 0; i < kVarCount; ++i)
        if (pred(var_at(i)) && depends_on(var_at(i))) return true;
    return false;
}

std::vector<Var> Polynomial::variables() const {
    std::array<bool, kVarCount> seen{};
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < kVarCount; ++i)
            if (t.mono.exp[i]) seen[i] = true;
    std::vector<Var> out;
    for (std::size_t i = 0; i < kVarCount; ++i)
        if (seen[i]) out.push_back(var_at(i));
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = compare(a[i].mono, b[j].mono);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back({b[j].mono, subtract ? mpq_class(-b[j].coeff) : b[j].coeff});
            ++j;
        } else {
            mpq_class s = subtract ? mpq_class(a[i].coeff - b[j].coeff) : mpq_class(a[i].coeff + b[j].coeff);
            if (sgn(s) != 0) out.push_back({a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back({b[j].mono, subtract ? mpq_class(-b[j].coeff) : b[j].coeff});
    return out;
}

// Common denominator of all coefficients.
mpz_class coefficient_lcm(const std::vector<Term>& terms) {
    mpz_class l = 1;
    for (const auto& t : terms) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    return l;
}

}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Polynomial(merge(a.terms_, b.terms_, false));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) return a;
    return Polynomial(merge(a.terms_, b.terms_, true));
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
    if (sgn(c) == 0) return {};
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m) const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.mono = t.mono * m;
    return r;  // multiplying by a monomial preserves grlex order
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1) return b.times_monomial(a.leading().mono).scaled(a.leading().coeff);
    if (b.size() == 1) return a.times_monomial(b.leading().mono).scaled(b.leading().coeff);

    // Integer accumulation: a = A/da, b = B/db.
    const mpz_class da = coefficient_lcm(a.terms_);
    const mpz_class db = coefficient_lcm(b.terms_);
    std::vector<mpz_class> ai(a.size()), bi(b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        ai[i] = a.terms_[i].coeff.get_num() * (da / a.terms_[i].coeff.get_den());
    for (std::size_t j = 0; j < b.size(); ++j)
        bi[j] = b.terms_[j].coeff.get_num() * (db / b.terms_[j].coeff.get_den());

    std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    mpz_class prod;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            Monomial m = a.terms_[i].mono * b.terms_[j].mono;
            mpz_mul(prod.get_mpz_t(), ai[i].get_mpz_t(), bi[j].get_mpz_t());
            auto [it, inserted] = acc.try_emplace(m);
            it->second += prod;
        }
    }
    const mpz_class dd = da * db;
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc) {
        if (sgn(c) == 0) continue;
        mpq_class q(c, dd);
        q.canonicalize();
        out.push_back({m, std::move(q)});
    }
    std::sort(out.begin(), out.end(), term_greater);
    return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

Polynomial Polynomial::derivative(Var v) const {
    std::vector<Term> out;
    const auto k = index(v);
    for (const auto& t : terms_) {
        unsigned e = t.mono.exp[k];
        if (e == 0) continue;
        Monomial m = t.mono;
        m.exp[k] = static_cast<std::uint8_t>(e - 1);
        m.deg = static_cast<std::uint16_t>(m.deg - 1);
        out.push_back({m, t.coeff * e});
    }
    return from_terms(std::move(out));
}

mpq_class Polynomial::content() const {
    if (terms_.empty()) return 1;
    mpz_class g = 0, l = 1;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    mpq_class c(g, l);
    c.canonicalize();
    if (sgn(leading().coeff) < 0) c = -c;
    return c;
}

Monomial Polynomial::monomial_content() const {
    if (terms_.empty()) return {};
    Monomial g = terms_.front().mono;
    for (const auto& t : terms_) {
        g = Monomial::gcd(g, t.mono);
        if (g.is_one()) break;
    }
    return g;
}

mpq_class Polynomial::evaluate(const RationalPoint& point) const {
    std::array<const mpq_class*, kVarCount> val{};
    for (const auto& [v, q] : point) val[index(v)] = &q;
    mpq_class sum = 0, term, pw;
    for (const auto& t : terms_) {
        term = t.coeff;
        for (std::size_t i = 0; i < kVarCount; ++i) {
            if (!t.mono.exp[i]) continue;
            if (!val[i]) throw Error("evaluate: variable '" + std::string(kNames[i]) + "' is not assigned");
            mpz_pow_ui(pw.get_num_mpz_t(), val[i]->get_num_mpz_t(), t.mono.exp[i]);
            mpz_pow_ui(pw.get_den_mpz_t(), val[i]->get_den_mpz_t(), t.mono.exp[i]);
            term *= pw;
        }
        sum += term;
    }
    return sum;
}

Polynomial Polynomial::specialize(const RationalPoint& point) const {
    std::array<const mpq_class*, kVarCount> val{};
    for (const auto& [v, q] : point) val[index(v)] = &q;
    std::vector<Term> out;
    out.reserve(terms_.size());
    mpq_class pw;
    for (const auto& t : terms_) {
        Term nt = t;
        for (std::size_t i = 0; i < kVarCount; ++i) {
            if (!t.mono.exp[i] || !val[i]) continue;
            mpz_pow_ui(pw.get_num_mpz_t(), val[i]->get_num_mpz_t(), t.mono.exp[i]);
            mpz_pow_ui(pw.get_den_mpz_t(), val[i]->get_den_mpz_t(), t.mono.exp[i]);
            nt.coeff *= pw;
            nt.mono.deg = static_cast<std::uint16_t>(nt.mono.deg - nt.mono.exp[i]);
            nt.mono.exp[i] = 0;
        }
        out.push_back(std::move(nt));
    }
    return from_terms(std::move(out));
}

std::uint64_t Polynomial::evaluate_mod(std::span<const std::uint64_t> residues) const {
    std::uint64_t sum = 0;
    for (const auto& t : terms_) {
        std::uint64_t den = mpz_fdiv_ui(t.coeff.get_den_mpz_t(), kPrime);
        if (den == 0) throw Error("modular evaluation: coefficient denominator divisible by the prime");
        std::uint64_t v = mulmod(mpz_fdiv_ui(t.coeff.get_num_mpz_t(), kPrime), powmod(den, kPrime - 2));
        for (std::size_t i = 0; i < kVarCount; ++i)
            if (t.mono.exp[i]) v = mulmod(v, powmod(residues[i], t.mono.exp[i]));
        sum = (sum + v) % kPrime;
    }
    return sum;
}

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error("exact_divide: division by the zero polynomial");
    if (a.is_zero()) return Polynomial{};
    if (b.is_constant()) return a.scaled(1 / b.constant_value());
    for (std::size_t i = 0; i < kVarCount; ++i)
        if (b.degree(var_at(i)) > a.degree(var_at(i))) return std::nullopt;

    const Term& lb = b.leading();
    if (b.size() == 1) {
        std::vector<Term> out;
        out.reserve(a.size());
        for (const auto& t : a.terms()) {
            if (!lb.mono.divides(t.mono)) return std::nullopt;
            out.push_back({t.mono / lb.mono, t.coeff / lb.coeff});
        }
        return Polynomial::from_terms(std::move(out));
    }

    std::vector<Term> quotient;
    Polynomial rem = a;
    while (!rem.is_zero()) {
        const Term& lr = rem.leading();
        if (!lb.mono.divides(lr.mono)) return std::nullopt;
        Monomial m = lr.mono / lb.mono;
        mpq_class c = lr.coeff / lb.coeff;
        rem = rem - b.times_monomial(m).scaled(c);
        quotient.push_back({m, std::move(c)});
    }
    return Polynomial::from_terms(std::move(quotient));
}

}  // namespace p4d
