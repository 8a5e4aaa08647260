#pragma once

// Exact sparse multivariate polynomials and rational functions over Q.
//
// Every symbol the project needs (phase variables, time, the confluence
// parameter and all parameter families) lives in one fixed registry, so a
// monomial is a dense byte array of exponents and comparisons are cheap.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace p4d {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DenominatorVanishes : public Error {
public:
    using Error::Error;
};

class DenominatorZeroAtPoint : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Global variable order (ascending significance for the lex tie-break):
// x < y < z < w < t < eps < q < p < parameters.
enum class Var : std::uint8_t {
    x, y, z, w, t, eps, q, p,
    a0, a1, a2, a3, a4,
    b0, b1, b2, b3, b4, b5,
    A0, A1, A2, A3, A4,
    g0, g1, g2,
    v1, v2, v3,
};

inline constexpr std::size_t kVarCount = 30;

std::string_view var_name(Var v);
std::optional<Var> var_from_name(std::string_view name);
inline std::size_t index(Var v) { return static_cast<std::size_t>(v); }
inline Var var_at(std::size_t i) { return static_cast<Var>(i); }

bool is_phase(Var v);
bool is_parameter(Var v);

/// The parameter family of a symbol: a, b, A, g or v; nullopt otherwise.
std::optional<char> parameter_family(Var v);

// ---------------------------------------------------------------------------

struct Monomial {
    std::array<std::uint8_t, kVarCount> exp{};
    std::uint16_t deg = 0;

    static Monomial of(Var v, unsigned e = 1);

    unsigned operator[](Var v) const { return exp[index(v)]; }
    bool is_one() const { return deg == 0; }
    bool divides(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Requires divides(a, b) order: b / a.
    friend Monomial operator/(const Monomial& b, const Monomial& a);
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.exp == b.exp;
    }

    static Monomial gcd(const Monomial& a, const Monomial& b);
};

/// Graded lexicographic comparison: negative if a < b.
int compare(const Monomial& a, const Monomial& b);

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

struct Term {
    Monomial mono;
    mpq_class coeff;
};

using RationalPoint = std::map<Var, mpq_class>;

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(long c);  // NOLINT: integer constants read naturally
    Polynomial(const mpq_class& c);  // NOLINT

    static Polynomial variable(Var v);
    static Polynomial monomial(const Monomial& m, const mpq_class& c);
    /// Terms in any order; zero coefficients dropped, duplicates summed.
    static Polynomial from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Valid only for constant polynomials.
    mpq_class constant_value() const;
    const Term& leading() const { return terms_.front(); }

    unsigned degree(Var v) const;
    unsigned total_degree() const;
    unsigned total_degree(const std::function<bool(Var)>& counted) const;
    bool depends_on(Var v) const { return degree(v) > 0; }
    bool depends_on_any(const std::function<bool(Var)>& pred) const;
    std::vector<Var> variables() const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }
    Polynomial scaled(const mpq_class& c) const;
    Polynomial times_monomial(const Monomial& m) const;
    Polynomial pow(unsigned e) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);

    Polynomial derivative(Var v) const;

    /// Rational content: the result is c with (*this / c) an integer
    /// polynomial whose coefficients have gcd 1 and positive leading coeff.
    mpq_class content() const;
    Monomial monomial_content() const;

    mpq_class evaluate(const RationalPoint& point) const;
    /// Substitute rationals for some variables; others stay symbolic.
    Polynomial specialize(const RationalPoint& point) const;
    std::uint64_t evaluate_mod(std::span<const std::uint64_t> residues) const;

private:
    explicit Polynomial(std::vector<Term> sorted) : terms_(std::move(sorted)) {}
    std::vector<Term> terms_;  // strictly descending in grlex order
};

/// Multivariate division with grlex order. Returns the quotient when b
/// divides a exactly, nullopt otherwise.
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);

// ---------------------------------------------------------------------------

class RationalFunction;
using Assignment = std::map<Var, RationalFunction>;

class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT
    RationalFunction(const mpq_class& c) : num_(c), den_(1) {}  // NOLINT
    RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT
    /// Throws DenominatorVanishes for a zero denominator.
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction variable(Var v) { return {Polynomial::variable(v)}; }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
    RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
    RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
    RationalFunction pow(int e) const;

    /// Structural equality of the stored canonical form.
    bool same_form(const RationalFunction& other) const {
        return num_ == other.num_ && den_ == other.den_;
    }

    std::vector<Var> variables() const;
    bool depends_on(Var v) const { return num_.depends_on(v) || den_.depends_on(v); }

private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
};

RationalFunction differentiate(const RationalFunction& f, Var v);

/// Simultaneous substitution; unassigned variables stay fixed.
RationalFunction substitute(const RationalFunction& f, const Assignment& assignment);
Polynomial substitute_poly(const Polynomial& f, const std::map<Var, Polynomial>& assignment);

/// Reduction-independent exact equality via cross-multiplication.
bool equals(const RationalFunction& f, const RationalFunction& g);

/// Throws DenominatorZeroAtPoint when the denominator vanishes.
mpq_class eval(const RationalFunction& f, const RationalPoint& point);

RationalFunction specialize(const RationalFunction& f, const RationalPoint& point);

// Text form: integers, rationals, variables by name, + - * / ^ and parens.
RationalFunction parse(std::string_view text);
std::string to_string(const Polynomial& p);
std::string to_string(const RationalFunction& f);
std::string to_string(const mpq_class& q);

/// Shorthand for transcribing formulas in code.
inline RationalFunction operator""_rf(const char* text, std::size_t n) {
    return parse(std::string_view(text, n));
}

}  // namespace p4d
