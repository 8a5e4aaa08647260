#include "p4d/algebra.hpp"

#include <cctype>
#include <sstream>

namespace p4d {

std::string to_string(const mpq_class& q) { return q.get_str(); }

namespace {

void append_monomial(std::ostringstream& os, const Monomial& m) {
    bool first = true;
    for (std::size_t i = 0; i < kVarCount; ++i) {
        if (!m.exp[i]) continue;
        if (!first) os << '*';
        first = false;
        os << var_name(var_at(i));
        if (m.exp[i] > 1) os << '^' << unsigned{m.exp[i]};
    }
}

bool is_bare_power(const Polynomial& p) {
    if (p.size() != 1 || p.leading().coeff != 1) return false;
    int vars = 0;
    for (auto e : p.leading().mono.exp) vars += e ? 1 : 0;
    return vars == 1;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    RationalFunction parse_all() {
        RationalFunction r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RationalFunction expr() {
        RationalFunction acc = term();
        while (true) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else return acc;
        }
    }

    RationalFunction term() {
        RationalFunction acc = unary();
        while (true) {
            if (eat('*')) acc = acc * unary();
            else if (eat('/')) acc = acc / unary();
            else return acc;
        }
    }

    RationalFunction unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    RationalFunction power() {
        RationalFunction base = primary();
        if (eat('^')) {
            bool paren = eat('(');
            bool neg = eat('-');
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected an integer exponent");
            int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
            if (paren && !eat(')')) fail("expected ')'");
            return base.pow(neg ? -e : e);
        }
        return base;
    }

    RationalFunction primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (eat('(')) {
            RationalFunction r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RationalFunction(mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            auto name = s_.substr(start, pos_ - start);
            auto v = var_from_name(name);
            if (!v) fail("unknown symbol '" + std::string(name) + "'");
            return RationalFunction::variable(*v);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        mpq_class c = t.coeff;
        if (first) {
            if (sgn(c) < 0) os << '-';
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        c = abs(c);
        if (t.mono.is_one()) {
            os << c.get_str();
        } else {
            if (c != 1) os << c.get_str() << '*';
            append_monomial(os, t.mono);
        }
    }
    return os.str();
}

std::string to_string(const RationalFunction& f) {
    if (f.den() == Polynomial(1)) return to_string(f.num());
    std::string num = to_string(f.num());
    if (f.num().size() > 1) num = "(" + num + ")";
    std::string den = to_string(f.den());
    if (!is_bare_power(f.den())) den = "(" + den + ")";
    return num + "/" + den;
}

RationalFunction parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace p4d
