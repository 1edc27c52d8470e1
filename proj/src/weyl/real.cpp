#include "polyprog/weyl/real.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

namespace polyprog {

namespace {

constexpr mpfr_prec_t kPrecision = 320;

Turn low_128_bits(const Integer& z)
{
    Integer r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), z.get_mpz_t(), 128);
    Turn out = 0;
    for (int limb = 1; limb >= 0; --limb) {
        Integer part;
        mpz_tdiv_q_2exp(part.get_mpz_t(), r.get_mpz_t(), 64 * static_cast<unsigned>(limb));
        mpz_fdiv_r_2exp(part.get_mpz_t(), part.get_mpz_t(), 64);
        out = (out << 64) | static_cast<Turn>(mpz_get_ui(part.get_mpz_t()));
    }
    return out;
}

class Mpfr {
public:
    Mpfr() { mpfr_init2(v_, kPrecision); mpfr_set_ui(v_, 0, MPFR_RNDN); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

void catalog_value(const std::string& name, mpfr_ptr out)
{
    if (name == "sqrt2") mpfr_sqrt_ui(out, 2, MPFR_RNDN);
    else if (name == "sqrt3") mpfr_sqrt_ui(out, 3, MPFR_RNDN);
    else if (name == "sqrt5") mpfr_sqrt_ui(out, 5, MPFR_RNDN);
    else if (name == "sqrt7") mpfr_sqrt_ui(out, 7, MPFR_RNDN);
    else if (name == "golden") {
        mpfr_sqrt_ui(out, 5, MPFR_RNDN);
        mpfr_add_ui(out, out, 1, MPFR_RNDN);
        mpfr_div_ui(out, out, 2, MPFR_RNDN);
    } else if (name == "e") {
        mpfr_set_ui(out, 1, MPFR_RNDN);
        mpfr_exp(out, out, MPFR_RNDN);
    } else if (name == "pi") mpfr_const_pi(out, MPFR_RNDN);
    else throw std::invalid_argument("unknown constant '" + name + "'");
}

void add_rational(mpfr_ptr acc, const Rational& q)
{
    Mpfr tmp;
    mpfr_set_q(tmp.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_add(acc, acc, tmp.get(), MPFR_RNDN);
}

}  // namespace

Turn turn_from_rational(const Rational& q)
{
    Integer scaled = q.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 128);
    mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
    return low_128_bits(scaled);
}

double turn_to_double(Turn t) { return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(t >> 64)), -64); }

double turn_to_signed(Turn t)
{
    const double d = turn_to_double(t);
    return d >= 0.5 ? d - 1.0 : d;
}

double wrap_distance(Turn a, Turn b) { return std::abs(turn_to_signed(a - b)); }

Turn turn_times(const Integer& n, Turn t) { return low_128_bits(n) * t; }

Turn binomial_mod_2_128(long long n, unsigned k)
{
    if (n >= 0) {
        if (static_cast<unsigned long long>(n) < k) return 0;
        Turn c = 1;
        bool exact = true;
        for (unsigned j = 1; j <= k && exact; ++j) {
            Turn next;
            exact = !__builtin_mul_overflow(c, static_cast<Turn>(n - j + 1), &next);
            c = next / j;
        }
        if (exact) return c;
    }
    Integer z;
    const Integer nz(static_cast<long>(n));
    mpz_bin_ui(z.get_mpz_t(), nz.get_mpz_t(), k);
    return low_128_bits(z);
}

const std::vector<std::string>& catalog_symbols()
{
    static const std::vector<std::string> names{"sqrt2", "sqrt3", "sqrt5", "sqrt7", "golden", "e", "pi"};
    return names;
}

RealExpr::RealExpr(const Rational& q) : constant_(q) {}

RealExpr RealExpr::parse(const std::string& text)
{
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("real expression \"" + text + "\", column " + std::to_string(pos + 1) + ": " + what);
    };
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto integer = [&] {
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        return Integer(text.substr(start, pos - start));
    };

    RealExpr out;
    std::map<std::string, Rational> acc;
    bool first = true;
    skip();
    if (pos == text.size()) fail("empty expression");
    while (pos < text.size()) {
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        Rational coeff = sign;
        std::string symbol;
        bool expect_factor = true;
        while (expect_factor) {
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                coeff *= Rational(integer());
            } else if (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
                const std::size_t start = pos;
                while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
                const std::string name = text.substr(start, pos - start);
                const auto& cat = catalog_symbols();
                if (std::find(cat.begin(), cat.end(), name) == cat.end()) {
                    pos = start;
                    fail("unknown constant '" + name + "'");
                }
                if (!symbol.empty()) fail("products of constants are not supported");
                symbol = name;
            } else {
                fail("expected a number or a constant");
            }
            skip();
            expect_factor = false;
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip();
                expect_factor = true;
            } else if (pos < text.size() && text[pos] == '/') {
                ++pos;
                skip();
                if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected an integer divisor");
                const Integer d = integer();
                if (d == 0) fail("division by zero");
                coeff /= Rational(d);
                skip();
                if (pos < text.size() && text[pos] == '*') {
                    ++pos;
                    skip();
                    expect_factor = true;
                }
            }
        }
        if (symbol.empty())
            out.constant_ += coeff;
        else
            acc[symbol] += coeff;
    }
    for (auto& [name, c] : acc)
        if (c != 0) out.terms_.emplace_back(name, c);
    return out;
}

namespace {

void evaluate(const Rational& constant, const std::vector<std::pair<std::string, Rational>>& terms, mpfr_ptr out)
{
    mpfr_set_ui(out, 0, MPFR_RNDN);
    add_rational(out, constant);
    for (const auto& [name, c] : terms) {
        Mpfr k, q;
        catalog_value(name, k.get());
        mpfr_set_q(q.get(), c.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(k.get(), k.get(), q.get(), MPFR_RNDN);
        mpfr_add(out, out, k.get(), MPFR_RNDN);
    }
}

}  // namespace

Turn RealExpr::turn() const
{
    if (is_rational()) return turn_from_rational(constant_);
    Mpfr v;
    evaluate(constant_, terms_, v.get());
    Mpfr fl;
    mpfr_floor(fl.get(), v.get());
    mpfr_sub(v.get(), v.get(), fl.get(), MPFR_RNDN);
    mpfr_mul_2ui(v.get(), v.get(), 128, MPFR_RNDN);
    Integer z;
    mpfr_get_z(z.get_mpz_t(), v.get(), MPFR_RNDD);
    return low_128_bits(z);
}

double RealExpr::approx() const
{
    Mpfr v;
    evaluate(constant_, terms_, v.get());
    return mpfr_get_d(v.get(), MPFR_RNDN);
}

bool RealExpr::equals(const Rational& q) const
{
    Mpfr v;
    evaluate(constant_ - q, terms_, v.get());
    return mpfr_zero_p(v.get()) || mpfr_get_exp(v.get()) < -200;
}

std::string RealExpr::to_string() const
{
    std::string out;
    for (const auto& [name, c] : terms_) {
        std::string coeff;
        if (c == 1) coeff = "";
        else if (c == -1) coeff = "-";
        else coeff = polyprog::to_string(c) + "*";
        if (!out.empty() && coeff.rfind('-', 0) != 0) out += "+";
        out += coeff + name;
    }
    if (constant_ != 0 || out.empty()) {
        const std::string c = polyprog::to_string(constant_);
        if (!out.empty() && c.rfind('-', 0) != 0) out += "+";
        out += c;
    }
    return out;
}

RealExpr operator+(const RealExpr& a, const RealExpr& b)
{
    std::map<std::string, Rational> acc;
    for (const auto& [n, c] : a.terms_) acc[n] += c;
    for (const auto& [n, c] : b.terms_) acc[n] += c;
    RealExpr out(a.constant_ + b.constant_);
    for (auto& [n, c] : acc)
        if (c != 0) out.terms_.emplace_back(n, c);
    return out;
}

RealExpr operator*(const Rational& c, const RealExpr& a)
{
    RealExpr out(c * a.constant_);
    if (c != 0)
        for (const auto& [n, k] : a.terms_) out.terms_.emplace_back(n, c * k);
    return out;
}

}  // namespace polyprog
