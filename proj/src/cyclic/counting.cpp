#include "polyprog/cyclic/counting.hpp"

#include "polyprog/core/lattice.hpp"
#include "polyprog/core/parallel.hpp"
#include "polyprog/cyclic/gowers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace polyprog {

namespace {

std::size_t common_modulus(const std::vector<Signal>& f, std::size_t expected_count)
{
    if (f.size() != expected_count)
        throw std::invalid_argument("expected " + std::to_string(expected_count) + " signals, got " +
                                    std::to_string(f.size()));
    const std::size_t n = f.front().N;
    if (n == 0) throw std::invalid_argument("signals must have positive modulus");
    for (const auto& s : f)
        if (s.N != n) throw std::invalid_argument("modulus mismatch between signals");
    return n;
}

bool all_real(const std::vector<Signal>& f)
{
    for (const auto& s : f)
        for (const auto& z : s.values)
            if (z.imag() != 0.0) return false;
    return true;
}

// Each signal repeated twice so that x + offset with x, offset < N needs no reduction.
template <class T>
std::vector<std::vector<T>> doubled(const std::vector<Signal>& f)
{
    std::vector<std::vector<T>> out;
    out.reserve(f.size());
    for (const auto& s : f) {
        std::vector<T> v(2 * s.N);
        for (std::size_t x = 0; x < 2 * s.N; ++x) {
            if constexpr (std::is_same_v<T, double>)
                v[x] = s.values[x % s.N].real();
            else
                v[x] = s.values[x % s.N];
        }
        out.push_back(std::move(v));
    }
    return out;
}

// sum_x prod_i g_i[x + off_i]
template <class T>
T shifted_product_sum(const std::vector<std::vector<T>>& g, const std::vector<std::size_t>& off, std::size_t n,
                      std::vector<T>& scratch)
{
    scratch.assign(g[0].begin() + static_cast<std::ptrdiff_t>(off[0]),
                   g[0].begin() + static_cast<std::ptrdiff_t>(off[0] + n));
    for (std::size_t i = 1; i < g.size(); ++i) {
        const T* row = g[i].data() + off[i];
        for (std::size_t x = 0; x < n; ++x) scratch[x] *= row[x];
    }
    T s{};
    for (std::size_t x = 0; x < n; ++x) s += scratch[x];
    return s;
}

// sum over offset tuples produced by offsets(k, out), k in [0, count)
template <class T, class Offsets>
Complex offset_sum(const std::vector<Signal>& f, std::size_t count, unsigned threads, Offsets&& offsets)
{
    const std::size_t n = f.front().N;
    const auto g = doubled<T>(f);
    std::vector<Complex> partial(kReductionChunks);
    for_each_chunk(count, threads, [&](std::size_t c, std::size_t b, std::size_t e) {
        std::vector<std::size_t> off(f.size());
        std::vector<T> scratch;
        ComplexKahanSum s;
        for (std::size_t k = b; k < e; ++k) {
            offsets(k, off);
            s.add(Complex(shifted_product_sum(g, off, n, scratch)));
        }
        partial[c] = s.value();
    });
    ComplexKahanSum total;
    for (const auto& p : partial) total.add(p);
    return total.value();
}

template <class Offsets>
Complex dispatch_offset_sum(const std::vector<Signal>& f, std::size_t count, unsigned threads, Offsets&& offsets)
{
    if (all_real(f)) return offset_sum<double>(f, count, threads, offsets);
    return offset_sum<Complex>(f, count, threads, offsets);
}

std::size_t reduce(const Integer& v, std::size_t n)
{
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), n);
    return r.get_ui();
}

IntegerVector binomial_coordinates(const UniPoly& p, std::size_t dim)
{
    const auto b = to_binomial_basis(p);
    IntegerVector v(dim);
    for (std::size_t k = 1; k < b.size(); ++k) {
        if (!is_integer(b[k])) throw std::invalid_argument("polynomial is not integer valued: " + render(p));
        v[k - 1] = b[k].get_num();
    }
    return v;
}

UniPoly from_binomial_coordinates(const IntegerVector& v)
{
    std::vector<Rational> b(v.size() + 1);
    for (std::size_t k = 0; k < v.size(); ++k) b[k + 1] = Rational(v[k]);
    return UniPoly::from_binomial_basis(b);
}

}  // namespace

Complex count_operator(const std::vector<Signal>& f, const Progression& prog, unsigned threads)
{
    const std::size_t t = prog.t();
    const std::size_t n = common_modulus(f, t + 1);
    std::vector<std::vector<std::size_t>> tables(t + 1);
    for (std::size_t i = 0; i <= t; ++i) tables[i] = residue_table(prog.poly(i), n);
    const Complex sum = dispatch_offset_sum(f, n, threads, [&](std::size_t y, std::vector<std::size_t>& off) {
        for (std::size_t i = 0; i <= t; ++i) off[i] = tables[i][y];
    });
    return sum / (static_cast<double>(n) * static_cast<double>(n));
}

Complex linear_count_operator(const std::vector<Signal>& f, const IntegerMatrix& a, std::size_t d, unsigned threads,
                              std::uint64_t budget)
{
    if (d == 0) throw std::invalid_argument("linear_count_operator: d must be at least 1");
    if (a.empty()) throw std::invalid_argument("linear_count_operator: no linear forms");
    const std::size_t n = common_modulus(f, a.size());
    std::uint64_t cost = n;
    std::size_t count = 1;
    for (std::size_t j = 0; j < d; ++j) {
        if (cost > budget / n) throw BudgetExceeded("linear count needs N^(d+1) > " + std::to_string(budget) + " steps");
        cost *= n;
        count *= n;
    }
    std::vector<std::vector<std::size_t>> coeff(a.size(), std::vector<std::size_t>(d));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != d) throw std::invalid_argument("linear_count_operator: coefficient row has wrong length");
        for (std::size_t j = 0; j < d; ++j) coeff[i][j] = reduce(a[i][j], n);
    }
    const Complex sum = dispatch_offset_sum(f, count, threads, [&](std::size_t k, std::vector<std::size_t>& off) {
        std::fill(off.begin(), off.end(), 0);
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t yj = k % n;
            k /= n;
            for (std::size_t i = 0; i < off.size(); ++i) off[i] = (off[i] + coeff[i][j] * yj) % n;
        }
    });
    return sum / (static_cast<double>(n) * static_cast<double>(count));
}

LinearModel linear_model(const Progression& prog)
{
    const std::size_t t = prog.t();
    const std::size_t dim = prog.max_degree();
    IntegerMatrix vs;
    for (std::size_t i = 1; i <= t; ++i) vs.push_back(binomial_coordinates(prog.poly(i), dim));

    LinearModel model;
    IntegerMatrix chosen;
    for (const auto& v : vs) {
        IntegerMatrix trial = chosen;
        trial.push_back(v);
        if (rank(to_rational(trial), dim) == trial.size()) chosen = std::move(trial);
    }
    IntegerMatrix basis;
    if (same_lattice(chosen, vs, dim)) {
        basis = chosen;
        model.basis_from_progression = true;
    } else {
        basis = hermite_normal_form(vs, dim);
    }
    for (const auto& b : basis) model.q.push_back(from_binomial_coordinates(b));

    const RationalMatrix qb = to_rational(basis);
    model.a.push_back(IntegerVector(basis.size()));
    for (const auto& v : vs) {
        const RationalVector c = coordinates(qb, to_rational(std::span<const Integer>(v)), dim);
        IntegerVector row;
        for (const auto& x : c) {
            if (!is_integer(x)) throw std::logic_error("linear_model: non-integral coordinates");
            row.push_back(x.get_num());
        }
        model.a.push_back(std::move(row));
    }
    return model;
}

CountReport compare_poly_vs_linear(const Subset& a, const Progression& prog, std::optional<std::size_t> cap,
                                   unsigned threads, std::uint64_t budget)
{
    if (!is_prime(a.N)) throw std::invalid_argument("compare_poly_vs_linear: N = " + std::to_string(a.N) + " is not prime");
    const std::size_t c = cap.value_or(default_cap(prog));
    const auto complexity = algebraic_complexity(prog, c);
    if (*std::max_element(complexity.values.begin(), complexity.values.end()) > 1) {
        for (const auto& rel : relation_space(prog, c).basis)
            if (rel.degree().value_or(0) > 1)
                throw ComplexityTooHigh("algebraic complexity exceeds 1; witness relation " + rel.to_string(), rel);
        throw std::logic_error("complexity above 1 without a witness relation");
    }

    CountReport report;
    report.N = a.N;
    report.model = linear_model(prog);
    const std::vector<Signal> f(prog.t() + 1, a.indicator());
    report.poly_count = count_operator(f, prog, threads);
    report.linear_count = linear_count_operator(f, report.model.a, report.model.q.size(), threads, budget);
    report.difference = std::abs(report.poly_count - report.linear_count);
    return report;
}

PopDiffReport popular_differences(const Subset& a, const Progression& prog, double epsilon, unsigned threads)
{
    const std::size_t n = a.N;
    const std::size_t t = prog.t();
    PopDiffReport report;
    report.N = n;
    report.epsilon = epsilon;
    report.alpha = a.density();
    report.threshold = (std::pow(report.alpha, static_cast<double>(t + 1)) - epsilon) * static_cast<double>(n);
    report.intersection_sizes.assign(n, 0);

    std::vector<std::vector<std::size_t>> tables(t + 1);
    for (std::size_t i = 1; i <= t; ++i) tables[i] = residue_table(prog.poly(i), n);
    // mask[x + N] == mask[x], so x - s for s < N indexes directly.
    std::vector<char> mask(2 * n);
    for (std::size_t x = 0; x < 2 * n; ++x) mask[x] = a.member[x % n];

    for_each_chunk(n, threads, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t m = b; m < e; ++m) {
            std::size_t hits = 0;
            for (std::size_t x = 0; x < n; ++x) {
                if (!mask[x]) continue;
                bool all = true;
                for (std::size_t i = 1; i <= t && all; ++i) all = mask[x + n - tables[i][m]];
                hits += all ? 1 : 0;
            }
            report.intersection_sizes[m] = hits;
        }
    });
    for (std::size_t m = 0; m < n; ++m)
        if (static_cast<double>(report.intersection_sizes[m]) > report.threshold) report.qualifying.push_back(m);
    report.fraction = n ? static_cast<double>(report.qualifying.size()) / static_cast<double>(n) : 0.0;
    return report;
}

std::vector<Signal> build_obstruction(const Progression& prog, const Relation& rel, std::size_t N, long m)
{
    if (N == 0) throw std::invalid_argument("build_obstruction: N must be positive");
    if (rel.qs.size() != prog.t() + 1) throw std::invalid_argument("build_obstruction: relation has wrong length");
    if (!rel.holds(prog)) throw std::invalid_argument("build_obstruction: not a relation of " + prog.to_string());
    const long nn = static_cast<long>(N);
    if (((m % nn) + nn) % nn == 0) throw std::invalid_argument("build_obstruction: m must be nonzero mod N");
    Integer l = 1;
    for (const auto& q : rel.qs) {
        const Integer den = common_denominator(q);
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    Integer g;
    const Integer nz(static_cast<unsigned long>(N));
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), nz.get_mpz_t());
    if (g != 1)
        throw std::invalid_argument("build_obstruction: denominator " + l.get_str() + " shares a factor with N = " +
                                    std::to_string(N));
    std::vector<Signal> f;
    for (const auto& q : rel.qs) f.push_back(Signal::polynomial_phase(N, q, l, m));
    return f;
}

ProbeTable true_complexity_probe(const Progression& prog, std::size_t i, unsigned s, std::size_t trials, std::size_t N,
                                 std::uint64_t seed, unsigned threads)
{
    if (i > prog.t()) throw std::out_of_range("true_complexity_probe: index out of range");
    ProbeTable table;
    table.index = i;
    table.s = s;
    table.N = N;

    // Relation with the largest degree in slot i supplies the structured signals.
    std::vector<Signal> structured(prog.t() + 1, Signal::constant(N, 1.0));
    std::optional<Signal> own;
    const auto rs = relation_space(prog, default_cap(prog));
    const Relation* best = nullptr;
    for (const auto& rel : rs.basis)
        if (!rel.qs[i].is_zero() && (!best || *rel.qs[i].degree() > *best->qs[i].degree())) best = &rel;
    if (best) {
        try {
            structured = build_obstruction(prog, *best, N);
            own = structured[i];
            table.relation = *best;
        } catch (const std::invalid_argument&) {
            structured.assign(prog.t() + 1, Signal::constant(N, 1.0));
        }
    }

    auto row = [&](std::string kind, std::size_t trial, const Signal& fi) {
        std::vector<Signal> f = structured;
        f[i] = fi;
        ProbeRow r;
        r.kind = std::move(kind);
        r.trial = trial;
        r.norm = gowers_norm(fi, s + 1, GowersMethod::fourier, threads);
        r.count_abs = std::abs(count_operator(f, prog, threads));
        table.rows.push_back(std::move(r));
    };

    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < trials; ++k) row("random", k, random_sign_signal(N, rng()));
    if (own) row("obstruction", 0, *own);
    row("zero", 0, Signal::constant(N, 0.0));
    return table;
}

}  // namespace polyprog
