#pragma once
// Expression evaluation in the tautological ring. Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '.') factor)*
//   factor := INT | 'w' '[' INT ']' | 'theta' | 'c'
//           | 'F(' expr ')' | 'E(' expr ')' | '(' expr ')'
// '*' is the Pontryagin product and '.' the intersection product; theta is
// w[g-1] and c is w[1]. Bare integers act as scalars; a whole expression
// evaluating to a scalar means that multiple of the fundamental class.

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>

#include "taut_ring.hpp"

namespace pdcalc {

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& what, size_t at)
        : std::runtime_error(what + " at position " + std::to_string(at)), pos(at) {}
};

namespace detail {

// a scalar until it meets a class; scalars scale, classes multiply
struct EvalValue {
    bool is_scalar = true;
    Int scalar = 0;
    TautClass cls;

    static EvalValue number(Int v) { return {true, std::move(v), {}}; }
    static EvalValue of(TautClass c) { return {false, 0, std::move(c)}; }
};

class ExprParser {
  public:
    ExprParser(const std::string& src, int g, Int mod)
        : src_(src), g_(g), mod_(std::move(mod)) {
        if (g < 1) throw std::domain_error("eval_expression: genus must be positive");
    }

    TautClass run() {
        EvalValue v = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        if (v.is_scalar) return v.scalar * taut_unit_cup(g_, mod_);
        return v.cls;
    }

  private:
    const std::string& src_;
    int g_;
    Int mod_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace((unsigned char)src_[pos_])) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Int parse_int() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) ++pos_;
        if (pos_ == start) fail("expected an integer");
        return Int(src_.substr(start, pos_ - start));
    }

    std::string parse_word() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha((unsigned char)src_[pos_])) ++pos_;
        return src_.substr(start, pos_ - start);
    }

    EvalValue parse_expr() {
        EvalValue lhs = parse_term();
        for (;;) {
            skip_ws();
            char op = peek();
            if (op != '+' && op != '-') return lhs;
            size_t at = pos_;
            ++pos_;
            EvalValue rhs = parse_term();
            if (lhs.is_scalar != rhs.is_scalar)
                throw ParseError("cannot add a number to a class", at);
            if (lhs.is_scalar) {
                if (op == '+')
                    lhs.scalar += rhs.scalar;
                else
                    lhs.scalar -= rhs.scalar;
            } else {
                lhs.cls = op == '+' ? lhs.cls + rhs.cls : lhs.cls - rhs.cls;
            }
        }
    }

    EvalValue parse_term() {
        EvalValue lhs = parse_factor();
        for (;;) {
            skip_ws();
            char op = peek();
            if (op != '*' && op != '.') return lhs;
            ++pos_;
            EvalValue rhs = parse_factor();
            if (lhs.is_scalar && rhs.is_scalar) {
                lhs.scalar *= rhs.scalar;
            } else if (lhs.is_scalar) {
                rhs.cls = lhs.scalar * rhs.cls;
                lhs = std::move(rhs);
            } else if (rhs.is_scalar) {
                lhs.cls = rhs.scalar * lhs.cls;
            } else {
                lhs.cls = op == '*' ? taut_star(lhs.cls, rhs.cls) : taut_cup(lhs.cls, rhs.cls);
            }
        }
    }

    EvalValue parse_factor() {
        skip_ws();
        if (pos_ >= src_.size()) fail("expected a factor");
        char ch = src_[pos_];
        if (std::isdigit((unsigned char)ch)) return EvalValue::number(parse_int());
        if (ch == '(') {
            ++pos_;
            EvalValue v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        size_t at = pos_;
        std::string word = parse_word();
        if (word == "w") {
            if (!eat('[')) fail("expected '[' after w");
            size_t idx_at = pos_;
            Int idx = parse_int();
            if (!eat(']')) fail("expected ']'");
            if (idx > g_)
                throw ParseError("w[" + idx.str() + "] exceeds genus " + std::to_string(g_),
                                 idx_at);
            return EvalValue::of(TautClass::w(g_, (int)idx, mod_));
        }
        if (word == "theta") return EvalValue::of(taut_theta(g_, mod_));
        if (word == "c") return EvalValue::of(taut_minimal(g_, mod_));
        if (word == "F" || word == "E") {
            if (!eat('(')) fail("expected '(' after " + word);
            EvalValue v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            if (v.is_scalar) throw ParseError(word + " needs a class argument", at);
            return EvalValue::of(word == "F" ? taut_fourier(v.cls) : taut_star_exp(v.cls));
        }
        if (word.empty()) fail(std::string("unexpected character '") + ch + "'");
        throw ParseError("unknown name '" + word + "'", at);
    }
};

} // namespace detail

inline TautClass eval_expression(const std::string& src, int genus, Int mod = 0) {
    return detail::ExprParser(src, genus, std::move(mod)).run();
}

} // namespace pdcalc
