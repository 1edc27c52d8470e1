#include "polyprog/weyl/system.hpp"

#include "polyprog/core/parallel.hpp"

#include <limits>
#include <random>
#include <stdexcept>

namespace polyprog {

namespace {

long long to_ll(const Integer& z, const char* what)
{
    if (!z.fits_slong_p()) throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
    return z.get_si();
}

RealExpr form_value(const LinearForm& f, const std::vector<Parameter>& params)
{
    RealExpr v(f.constant);
    for (std::size_t p = 0; p < f.coeffs.size(); ++p)
        if (f.coeffs[p] != 0) v = v + f.coeffs[p] * params[p].value;
    return v;
}

}  // namespace

bool LinearForm::is_constant() const
{
    for (const auto& c : coeffs)
        if (c != 0) return false;
    return true;
}

void PolySequence::validate() const
{
    if (s == 0) throw std::invalid_argument("sequence order must be at least 1");
    if (g.size() != s + 1) throw std::invalid_argument("sequence needs coefficients g_0..g_s");
    for (std::size_t l = 0; l <= s; ++l) {
        if (g[l].size() != s) throw std::invalid_argument("coefficient g_" + std::to_string(l) + " has wrong dimension");
        for (std::size_t c = 0; c < s; ++c) {
            const LinearForm& f = g[l][c];
            if (f.coeffs.size() > params.size()) throw std::invalid_argument("coefficient refers to unknown parameter");
            if (l >= 1 && c + 1 < l && (f.constant != 0 || !f.is_constant()))
                throw std::invalid_argument("g_" + std::to_string(l) + " must vanish in its first " +
                                            std::to_string(l - 1) + " coordinates");
        }
    }
}

std::size_t PolySequence::param_index(const std::string& name) const
{
    for (std::size_t p = 0; p < params.size(); ++p)
        if (params[p].name == name) return p;
    throw std::invalid_argument("unknown parameter '" + name + "'");
}

SequenceEvaluator::SequenceEvaluator(const PolySequence& seq) : s_(seq.s)
{
    seq.validate();
    for (const auto& gl : seq.g) {
        Point p;
        for (const auto& f : gl) p.push_back(form_value(f, seq.params).turn());
        g_.push_back(std::move(p));
    }
}

void SequenceEvaluator::at(long long n, Turn* out) const
{
    for (std::size_t c = 0; c < s_; ++c) out[c] = g_[0][c];
    for (std::size_t l = 1; l <= s_; ++l) {
        const Turn b = binomial_mod_2_128(n, static_cast<unsigned>(l));
        for (std::size_t c = l - 1; c < s_; ++c) out[c] += b * g_[l][c];
    }
}

Point SequenceEvaluator::at(long long n) const
{
    Point p(s_);
    at(n, p.data());
    return p;
}

WeylSystem::WeylSystem(std::size_t s, RealExpr a0, std::vector<RealExpr> base)
    : s_(s), a0_(std::move(a0)), base_(std::move(base))
{
    if (s_ == 0) throw std::invalid_argument("Weyl system order must be at least 1");
    if (base_.size() != s_) throw std::invalid_argument("base point must have " + std::to_string(s_) + " coordinates");
    a0_turn_ = a0_.turn();
}

Point WeylSystem::base_point() const
{
    Point p;
    for (const auto& b : base_) p.push_back(b.turn());
    return p;
}

Point WeylSystem::apply(const Point& p) const
{
    Point q(s_);
    for (std::size_t c = 0; c < s_; ++c) q[c] = p[c] + (c == 0 ? a0_turn_ : p[c - 1]);
    return q;
}

PolySequence WeylSystem::sequence() const
{
    PolySequence seq;
    seq.s = s_;
    // index of a_j among the parameters, or npos when a_j is rational
    std::vector<std::size_t> slot(s_ + 1, std::string::npos);
    if (!a0_.is_rational()) {
        slot[0] = seq.params.size();
        seq.params.push_back({"a0", a0_});
    }
    for (std::size_t j = 1; j <= s_; ++j)
        if (!base_[j - 1].is_rational()) {
            slot[j] = seq.params.size();
            seq.params.push_back({"a" + std::to_string(j), base_[j - 1]});
        }
    auto coordinate = [&](long j) {
        LinearForm f;
        f.coeffs.assign(seq.params.size(), 0);
        if (j < 0) return f;
        const RealExpr& v = j == 0 ? a0_ : base_[static_cast<std::size_t>(j) - 1];
        if (slot[static_cast<std::size_t>(j)] == std::string::npos)
            f.constant = v.rational_part();
        else
            f.coeffs[slot[static_cast<std::size_t>(j)]] = 1;
        return f;
    };
    for (std::size_t l = 0; l <= s_; ++l) {
        std::vector<LinearForm> gl;
        for (std::size_t c = 0; c < s_; ++c) {
            const long j = static_cast<long>(c + 1) - static_cast<long>(l);
            // g_0 is the base point itself: a_1..a_s
            gl.push_back(coordinate(l == 0 ? static_cast<long>(c + 1) : j));
        }
        seq.g.push_back(std::move(gl));
    }
    return seq;
}

Point orbit_point(const WeylSystem& w, long long n) { return SequenceEvaluator(w.sequence()).at(n); }

Turn TorusCharacter::phase(const Point& p) const
{
    if (p.size() != freq.size()) throw std::invalid_argument("character dimension does not match the point");
    Turn acc = 0;
    for (std::size_t c = 0; c < freq.size(); ++c) acc += turn_times(freq[c], p[c]);
    return acc;
}

bool TorusCharacter::is_trivial() const
{
    for (long long f : freq)
        if (f != 0) return false;
    return true;
}

std::vector<long long> integer_values(const UniPoly& p, std::size_t n)
{
    std::vector<long long> out(n);
    for (std::size_t y = 0; y < n; ++y) {
        const Rational v = p(Rational(static_cast<unsigned long>(y)));
        if (!is_integer(v)) throw std::invalid_argument("polynomial is not integer valued");
        out[y] = to_ll(v.get_num(), "polynomial value");
    }
    return out;
}

Complex multiple_average(const WeylSystem& w, const std::vector<TorusCharacter>& chars, const Progression& prog,
                         std::size_t N, AverageMode mode, unsigned threads)
{
    if (N == 0) throw std::invalid_argument("multiple_average: N must be positive");
    const std::size_t t = prog.t();
    if (chars.size() != t + 1) throw std::invalid_argument("multiple_average: need t+1 characters");
    for (const auto& c : chars)
        if (c.freq.size() != w.order()) throw std::invalid_argument("multiple_average: character dimension mismatch");
    const SequenceEvaluator ev(w.sequence());
    std::vector<std::vector<long long>> tables;
    for (std::size_t i = 0; i <= t; ++i) tables.push_back(integer_values(prog.poly(i), N));

    auto term = [&](long long m, std::size_t n) {
        Point p(w.order());
        Turn phase = 0;
        for (std::size_t i = 0; i <= t; ++i) {
            ev.at(m + tables[i][n], p.data());
            phase += chars[i].phase(p);
        }
        return unit_phase(turn_to_double(phase));
    };
    if (mode == AverageMode::single)
        return parallel_sum(N, threads, [&](std::size_t n) { return term(0, n); }) / static_cast<double>(N);
    const Complex total = parallel_sum(N, threads, [&](std::size_t m) {
        ComplexKahanSum row;
        for (std::size_t n = 0; n < N; ++n) row.add(term(static_cast<long long>(m), n));
        return row.value();
    });
    return total / (static_cast<double>(N) * static_cast<double>(N));
}

Projection factor_projection(const TorusCharacter& chi, std::size_t k)
{
    if (k > chi.freq.size()) throw std::invalid_argument("factor_projection: k exceeds the dimension");
    for (std::size_t c = k; c < chi.freq.size(); ++c)
        if (chi.freq[c] != 0) return Projection::vanishes;
    return Projection::retained;
}

WitnessRecord lower_bound_witness(const Progression& prog, const Relation& rel, const WeylSystem& w, long h,
                                  std::size_t samples, std::uint64_t seed, long long range)
{
    const std::size_t s = w.order();
    const std::size_t t = prog.t();
    if (h == 0) throw std::invalid_argument("lower_bound_witness: frequency multiplier must be nonzero");
    if (rel.qs.size() != t + 1) throw std::invalid_argument("lower_bound_witness: relation has wrong length");
    if (rel.degree().value_or(0) > s)
        throw std::invalid_argument("lower_bound_witness: relation degree exceeds the order of the system");
    if (!rel.holds(prog)) throw std::invalid_argument("lower_bound_witness: not a relation of " + prog.to_string());

    std::vector<std::vector<Rational>> b(t + 1, std::vector<Rational>(s + 1));
    Integer l = 1;
    for (std::size_t k = 0; k <= t; ++k) {
        const auto coeffs = to_binomial_basis(rel.qs[k]);
        for (std::size_t j = 1; j < coeffs.size(); ++j) {
            b[k][j] = coeffs[j];
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), coeffs[j].get_den_mpz_t());
        }
    }

    WitnessRecord rec;
    rec.multiplier = l * h;
    for (std::size_t k = 0; k <= t; ++k) {
        TorusCharacter chi;
        for (std::size_t j = 1; j <= s; ++j) {
            const Rational f = b[k][j] * Rational(rec.multiplier);
            chi.freq.push_back(to_ll(f.get_num(), "witness frequency"));
        }
        rec.chars.push_back(std::move(chi));
    }

    rec.symbolic_identity = true;
    std::vector<UniPoly> q = rel.qs;
    for (std::size_t m = 0; m <= s; ++m) {
        BiPoly sum;
        for (std::size_t k = 0; k <= t; ++k) sum += compose_shifted(q[k], prog.poly(k));
        rec.symbolic_identity = rec.symbolic_identity && sum.is_zero();
        for (auto& qk : q) qk = discrete_derivative(qk);
    }

    const SequenceEvaluator ev(w.sequence());
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> coord(0, range - 1);
    Point p(s);
    for (std::size_t k = 0; k < samples; ++k) {
        const long long x = coord(rng), y = coord(rng);
        Turn phase = 0;
        for (std::size_t i = 0; i <= t; ++i) {
            const Rational pi = prog.poly(i)(Rational(static_cast<long>(y)));
            ev.at(x + to_ll(pi.get_num(), "orbit index"), p.data());
            phase += rec.chars[i].phase(p);
        }
        rec.max_deviation = std::max(rec.max_deviation, std::abs(unit_phase(turn_to_double(phase)) - 1.0));
    }
    rec.samples = samples;

    rec.classification_matches = true;
    for (std::size_t i = 0; i <= t; ++i) {
        const bool nonzero = b[i][s] != 0;
        const bool kills = factor_projection(rec.chars[i], s - 1) == Projection::vanishes;
        rec.last_coefficient_nonzero.push_back(nonzero);
        rec.kills_factor.push_back(kills);
        rec.classification_matches = rec.classification_matches && nonzero == kills;
    }
    return rec;
}

}  // namespace polyprog
