#include "polyprog/cli/parser.hpp"

#include <algorithm>
#include <cctype>

namespace polyprog {

ParseError::ParseError(ParseErrorKind k, std::size_t pos, const std::string& msg)
    : std::invalid_argument("column " + std::to_string(pos + 1) + ": " + msg), kind(k), position(pos)
{
}

namespace {

constexpr long kMaxExponent = 64;

class Parser {
public:
    Parser(const std::string& text, char var) : text_(text), var_(var) {}

    std::size_t pos() const { return pos_; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ParseErrorKind::syntax, pos_, msg); }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end()
    {
        skip();
        return pos_ >= text_.size();
    }
    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what)
    {
        if (!accept(c)) fail(std::string("expected ") + what);
    }
    char peek()
    {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Integer integer()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return Integer(text_.substr(start, pos_ - start));
    }

    long small_integer(long max, const char* what)
    {
        const std::size_t start = pos_;
        const Integer z = integer();
        if (z > max) {
            pos_ = start;
            fail(std::string(what) + " larger than " + std::to_string(max));
        }
        return z.get_si();
    }

    UniPoly poly()
    {
        UniPoly acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    UniPoly term()
    {
        UniPoly acc = unary();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                accept('*');
                acc = acc * unary();
            } else if (c == '/') {
                accept('/');
                const std::size_t at = pos_;
                const Integer d = integer();
                if (d == 0) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc *= Rational(1) / Rational(d);
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == var_ || c == 'C' || c == '(') {
                acc = acc * unary();
            } else {
                return acc;
            }
        }
    }

    UniPoly unary()
    {
        if (accept('-')) return -unary();
        return power();
    }

    UniPoly power()
    {
        const UniPoly base = atom();
        if (!accept('^')) return base;
        const long e = small_integer(kMaxExponent, "exponent");
        UniPoly out = UniPoly::constant(1);
        for (long k = 0; k < e; ++k) out = out * base;
        return out;
    }

    UniPoly atom()
    {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return UniPoly::constant(Rational(integer()));
        if (c == var_) {
            ++pos_;
            return UniPoly::monomial(1);
        }
        if (c == 'C') {
            ++pos_;
            expect('(', "'(' after C");
            if (!accept(var_)) fail(std::string("expected '") + var_ + "' as the first argument of C");
            expect(',', "','");
            const long k = small_integer(kMaxExponent, "binomial index");
            expect(')', "')'");
            return UniPoly::binomial(static_cast<std::size_t>(k));
        }
        if (c == '(') {
            ++pos_;
            UniPoly p = poly();
            expect(')', "')'");
            return p;
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected '") + c + "'");
    }

private:
    const std::string& text_;
    char var_;
    std::size_t pos_ = 0;
};

// Smallest y >= 0 with p(y) not an integer; p is integer valued once p(0..deg) are integers.
std::optional<std::pair<long, Rational>> integrality_witness(const UniPoly& p)
{
    const std::size_t d = p.degree().value_or(0);
    for (std::size_t y = 0; y <= d; ++y) {
        const Rational v = p(Rational(static_cast<long>(y)));
        if (!is_integer(v)) return std::make_pair(static_cast<long>(y), v);
    }
    return std::nullopt;
}

}  // namespace

UniPoly parse_polynomial(const std::string& text, char var)
{
    Parser p(text, var);
    if (p.at_end()) p.fail("empty polynomial");
    UniPoly out = p.poly();
    if (!p.at_end()) p.fail("unexpected trailing input");
    return out;
}

ProgressionExpr parse_progression(const std::string& text)
{
    Parser p(text, 'y');
    if (p.at_end()) p.fail("empty progression");
    p.expect('x', "'x' as the first term");
    std::vector<UniPoly> polys;
    while (!p.at_end()) {
        p.expect(',', "','");
        p.skip();
        const std::size_t start = p.pos();
        p.expect('x', "a term of the form x + P(y)");
        UniPoly poly;
        if (p.accept('+'))
            poly = p.poly();
        else if (p.peek() == '-')
            poly = p.poly();  // "x-y+y^2" is x + (-y+y^2)
        else
            p.fail("expected '+' or '-' after x");
        const char next = p.peek();
        if (next != ',' && next != '\0') p.fail(std::string("unexpected '") + next + "'");

        const auto term_text = [&] { return text.substr(start, p.pos() - start); };
        if (poly.is_zero()) {
            throw ParseError(ParseErrorKind::zero, start, "term '" + term_text() + "' repeats x");
        }
        if (poly.coeff(0) != 0)
            throw ParseError(ParseErrorKind::constant_term, start,
                             "term '" + term_text() + "' has nonzero constant term " + to_string(poly.coeff(0)));
        if (const auto w = integrality_witness(poly)) {
            ParseError e(ParseErrorKind::non_integral, start,
                         "term '" + term_text() + "' is not integral: P(" + std::to_string(w->first) + ") = " +
                             to_string(w->second));
            e.witness = w;
            throw e;
        }
        const auto dup = std::find(polys.begin(), polys.end(), poly);
        if (dup != polys.end())
            throw ParseError(ParseErrorKind::duplicate, start,
                             "term '" + term_text() + "' duplicates term " +
                                 std::to_string(dup - polys.begin() + 1));
        polys.push_back(std::move(poly));
    }
    ProgressionExpr out{text, Progression(polys), {}};
    out.canonical = render_canonical(out.progression);
    return out;
}

std::string render_canonical(const Progression& prog)
{
    std::vector<UniPoly> polys = prog.polys();
    std::stable_sort(polys.begin(), polys.end(),
                     [](const UniPoly& a, const UniPoly& b) { return a.degree() < b.degree(); });
    return Progression(std::move(polys)).to_string();
}

}  // namespace polyprog
