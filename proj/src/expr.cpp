#include "infoloss/expr.hpp"
#include "infoloss/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

namespace infoloss {

namespace {

using Fn = std::function<double(double)>;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Fn parse() {
        Fn f = sum();
        skip_ws();
        if (pos_ != s_.size())
            throw InvalidInputError("expression: trailing input at position " +
                                    std::to_string(pos_));
        return f;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Fn sum() {
        Fn left = product();
        for (;;) {
            if (eat('+')) {
                Fn right = product();
                left = [left, right](double x) { return left(x) + right(x); };
            } else if (eat('-')) {
                Fn right = product();
                left = [left, right](double x) { return left(x) - right(x); };
            } else {
                return left;
            }
        }
    }

    Fn product() {
        Fn left = unary();
        for (;;) {
            if (eat('*')) {
                Fn right = unary();
                left = [left, right](double x) { return left(x) * right(x); };
            } else if (eat('/')) {
                Fn right = unary();
                left = [left, right](double x) { return left(x) / right(x); };
            } else {
                return left;
            }
        }
    }

    Fn unary() {
        if (eat('-')) {
            Fn f = unary();
            return [f](double x) { return -f(x); };
        }
        (void)eat('+');
        return power();
    }

    Fn power() {
        Fn base = atom();
        if (eat('^')) {
            Fn exp = unary(); // right associative, unary binds the exponent sign
            return [base, exp](double x) { return std::pow(base(x), exp(x)); };
        }
        return base;
    }

    Fn atom() {
        skip_ws();
        if (eat('(')) {
            Fn f = sum();
            if (!eat(')')) throw InvalidInputError("expression: expected ')'");
            return f;
        }
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw InvalidInputError("expression: unexpected character '" + std::string(1, c) + "'");
    }

    Fn number() {
        skip_ws();
        const char* start = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(start, &end);
        if (end == start) throw InvalidInputError("expression: bad number literal");
        pos_ += static_cast<std::size_t>(end - start);
        return [v](double) { return v; };
    }

    Fn identifier() {
        skip_ws();
        std::size_t begin = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        const std::string name = s_.substr(begin, pos_ - begin);
        if (name == "x") return [](double x) { return x; };
        if (name == "pi") return [](double) { return M_PI; };
        if (name == "e") return [](double) { return M_E; };

        static const std::map<std::string, double (*)(double)> fns = {
            {"sin", std::sin},   {"cos", std::cos},   {"tan", std::tan},
            {"exp", std::exp},   {"log", std::log},   {"sqrt", std::sqrt},
            {"abs", std::fabs},  {"cbrt", std::cbrt}, {"tanh", std::tanh},
        };
        const auto it = fns.find(name);
        if (it == fns.end())
            throw InvalidInputError("expression: unknown identifier '" + name + "'");
        if (!eat('(')) throw InvalidInputError("expression: expected '(' after " + name);
        Fn arg = sum();
        if (!eat(')')) throw InvalidInputError("expression: expected ')'");
        double (*fp)(double) = it->second;
        return [fp, arg](double x) { return fp(arg(x)); };
    }
};

} // namespace

std::function<double(double)> compile_expression(const std::string& text) {
    Parser p(text);
    return p.parse();
}

} // namespace infoloss
