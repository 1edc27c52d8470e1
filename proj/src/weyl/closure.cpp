#include "polyprog/weyl/closure.hpp"

#include "polyprog/core/lattice.hpp"
#include "polyprog/core/parallel.hpp"
#include "polyprog/progression/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace polyprog {

namespace {

Integer lcm(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Rational frac(const Rational& q)
{
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q - Rational(fl);
}

// Parameter p = constant + sum_f coeffs[f] * phi_f over the free parameters phi.
struct Reduced {
    Rational constant;
    RationalVector coeffs;
};

std::vector<Reduced> reduce_parameters(std::size_t m, const std::vector<Dependency>& deps, std::size_t& free_count)
{
    RationalMatrix rows;
    for (const auto& d : deps) {
        if (d.coeffs.size() > m) throw std::invalid_argument("dependency refers to unknown parameter: " + d.text);
        RationalVector r(m + 1);
        for (std::size_t p = 0; p < d.coeffs.size(); ++p) r[p] = d.coeffs[p];
        r[m] = d.value;
        rows.push_back(std::move(r));
    }
    const RowEchelon e = rref(rows, m + 1);
    std::vector<bool> pivot(m, false);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == m) throw std::invalid_argument("declared dependencies are inconsistent");
        pivot[e.pivots[r]] = true;
    }
    std::vector<std::size_t> free_index(m, std::string::npos);
    free_count = 0;
    for (std::size_t p = 0; p < m; ++p)
        if (!pivot[p]) free_index[p] = free_count++;

    std::vector<Reduced> out(m, Reduced{0, RationalVector(free_count)});
    for (std::size_t p = 0; p < m; ++p)
        if (!pivot[p]) out[p].coeffs[free_index[p]] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        const std::size_t p = e.pivots[r];
        out[p].constant = e.rows[r][m];
        for (std::size_t q = 0; q < m; ++q)
            if (!pivot[q] && e.rows[r][q] != 0) out[p].coeffs[free_index[q]] = -e.rows[r][q];
    }
    return out;
}

Reduced reduce_form(const LinearForm& f, const std::vector<Reduced>& params, std::size_t free_count)
{
    Reduced out{f.constant, RationalVector(free_count)};
    for (std::size_t p = 0; p < f.coeffs.size(); ++p) {
        if (f.coeffs[p] == 0) continue;
        out.constant += f.coeffs[p] * params[p].constant;
        for (std::size_t j = 0; j < free_count; ++j) out.coeffs[j] += f.coeffs[p] * params[p].coeffs[j];
    }
    return out;
}

Integer factorial_of(std::size_t n)
{
    Integer f = 1;
    for (std::size_t k = 2; k <= n; ++k) f *= static_cast<unsigned long>(k);
    return f;
}

// tau vectors of level k whose polynomial lies in the chosen complement W'_k
RationalMatrix primed_vectors(const CoeffSpace& cs, const GradedLevel& level)
{
    RationalMatrix out;
    for (const auto& pair : cs.tau)
        if (std::find(level.w_prime.begin(), level.w_prime.end(), pair.q) != level.w_prime.end()) out.push_back(pair.v);
    return out;
}

void add_blocks(RationalMatrix& out, const RationalMatrix& vs, std::size_t first_coord, std::size_t s, std::size_t T)
{
    for (std::size_t c = first_coord; c < s; ++c)
        for (const auto& v : vs) {
            RationalVector row(s * T);
            for (std::size_t i = 0; i < T; ++i) row[c * T + i] = v[i];
            out.push_back(std::move(row));
        }
}

std::vector<std::vector<long long>> to_ll_rows(const IntegerMatrix& m)
{
    std::vector<std::vector<long long>> out;
    for (const auto& row : m) {
        std::vector<long long> r;
        for (const auto& z : row) {
            if (!z.fits_slong_p()) throw std::overflow_error("lattice vector entry does not fit in 64 bits");
            r.push_back(z.get_si());
        }
        out.push_back(std::move(r));
    }
    return out;
}

Turn dot(const std::vector<long long>& eta, const Turn* q)
{
    Turn acc = 0;
    for (std::size_t j = 0; j < eta.size(); ++j)
        if (eta[j] != 0) acc += turn_times(eta[j], q[j]);
    return acc;
}

Rational dot(const IntegerVector& eta, const RationalVector& v)
{
    Rational acc = 0;
    for (std::size_t j = 0; j < eta.size(); ++j) acc += Rational(eta[j]) * v[j];
    return acc;
}

// Orbit tuples minus the offset, written into a caller buffer of length s(t+1).
class TupleSampler {
public:
    TupleSampler(const PolySequence& seq, const Progression& prog, const AffineClosure& closure, std::size_t N)
        : ev_(seq), s_(seq.s), T_(prog.t() + 1), offset_(closure.offset)
    {
        for (std::size_t i = 0; i < T_; ++i) tables_.push_back(integer_values(prog.poly(i), N));
    }
    std::size_t ambient() const { return s_ * T_; }
    void operator()(long long x, std::size_t y, Turn* out) const
    {
        Turn pt[64];
        for (std::size_t i = 0; i < T_; ++i) {
            ev_.at(x + tables_[i][y], pt);
            for (std::size_t c = 0; c < s_; ++c) out[c * T_ + i] = pt[c] - offset_[c * T_ + i];
        }
    }

private:
    SequenceEvaluator ev_;
    std::size_t s_, T_;
    Point offset_;
    std::vector<std::vector<long long>> tables_;
};

}  // namespace

namespace {

// Scanner for sums of terms "c", "c*name", "c name" or "name" with c an optional fraction.
class FormScanner {
public:
    FormScanner(const std::string& text, const PolySequence& seq, const char* what)
        : text_(text), seq_(seq), what_(what) {}

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw std::invalid_argument(std::string(what_) + " \"" + text_ + "\", column " + std::to_string(pos_ + 1) +
                                    ": " + msg);
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void advance() { ++pos_; }

    // Adds sgn times the scanned sum into coeffs and constant.
    void sum(int sgn, bool stop_at_equals, RationalVector& coeffs, Rational& constant)
    {
        skip();
        bool first = true;
        while (pos_ < text_.size() && !(stop_at_equals && text_[pos_] == '=')) {
            Rational c = sgn;
            if (text_[pos_] == '+' || text_[pos_] == '-') {
                if (text_[pos_] == '-') c = -c;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            bool have_number = false;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                c *= Rational(integer());
                have_number = true;
                skip();
                if (pos_ < text_.size() && text_[pos_] == '/') {
                    ++pos_;
                    skip();
                    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                        fail("expected an integer");
                    const Integer d = integer();
                    if (d == 0) fail("division by zero");
                    c /= Rational(d);
                    skip();
                }
                if (pos_ < text_.size() && text_[pos_] == '*') {
                    ++pos_;
                    skip();
                    have_number = false;
                }
            }
            if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                const std::size_t start = pos_;
                while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                    ++pos_;
                const std::string name = text_.substr(start, pos_ - start);
                std::size_t p = 0;
                try {
                    p = seq_.param_index(name);
                } catch (const std::invalid_argument&) {
                    pos_ = start;
                    fail("unknown parameter '" + name + "'");
                }
                coeffs[p] += c;
            } else if (have_number) {
                constant += c;
            } else {
                fail("expected a number or a parameter name");
            }
            skip();
        }
    }

private:
    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    Integer integer()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Integer(text_.substr(start, pos_ - start));
    }

    const std::string& text_;
    const PolySequence& seq_;
    const char* what_;
    std::size_t pos_ = 0;
};

}  // namespace

LinearForm parse_linear_form(const std::string& text, const PolySequence& seq)
{
    LinearForm f{0, RationalVector(seq.params.size())};
    FormScanner scan(text, seq, "coefficient");
    if (text.find_first_not_of(" \t") == std::string::npos) scan.fail("empty expression");
    scan.sum(1, false, f.coeffs, f.constant);
    return f;
}

Dependency parse_dependency(const std::string& text, const PolySequence& seq)
{
    Dependency dep;
    dep.text = text;
    dep.coeffs.assign(seq.params.size(), 0);
    FormScanner scan(text, seq, "dependency");
    Rational constant = 0;
    scan.sum(1, true, dep.coeffs, constant);
    if (scan.at_end() || scan.peek() != '=') scan.fail("expected '='");
    scan.advance();
    scan.sum(-1, false, dep.coeffs, constant);
    dep.value = -constant;
    auto fail = [&](const std::string& what) { scan.fail(what); };
    bool any = false;
    for (const auto& c : dep.coeffs) any = any || c != 0;
    if (!any) fail("no parameter appears");

    RealExpr lhs(Rational(0));
    for (std::size_t p = 0; p < dep.coeffs.size(); ++p)
        if (dep.coeffs[p] != 0) lhs = lhs + dep.coeffs[p] * seq.params[p].value;
    if (!lhs.equals(dep.value))
        throw std::invalid_argument("dependency \"" + text + "\" does not hold for the given parameter values");
    return dep;
}

AffineClosure closure_subspaces(const Progression& prog, const PolySequence& seq, const std::vector<Dependency>& deps)
{
    seq.validate();
    const std::size_t s = seq.s, T = prog.t() + 1, D = s * T;
    AffineClosure out;
    out.ambient = D;
    out.declared = deps;
    for (const auto& d : deps) out.coset_bound = lcm(out.coset_bound, d.value.get_den());

    std::size_t free_count = 0;
    const auto params = reduce_parameters(seq.params.size(), deps, free_count);
    std::vector<std::vector<Reduced>> g(s + 1);
    for (std::size_t l = 0; l <= s; ++l)
        for (std::size_t c = 0; c < s; ++c) g[l].push_back(reduce_form(seq.g[l][c], params, free_count));

    // Directions reached by each free parameter, one vector per monomial of g^P.
    std::vector<std::vector<BiPoly>> binoms(T);
    MonomialIndex index;
    for (std::size_t i = 0; i < T; ++i) {
        BinomialShiftTable table(prog.poly(i));
        for (std::size_t l = 1; l <= s; ++l) {
            binoms[i].push_back(table(static_cast<unsigned>(l)));
            index.add(binoms[i].back());
        }
    }
    const std::size_t M = index.size();
    std::vector<std::vector<RationalVector>> coords(T);
    for (std::size_t i = 0; i < T; ++i)
        for (const auto& b : binoms[i]) coords[i].push_back(index.coordinates(b));
    RationalMatrix directions;
    for (std::size_t f = 0; f < free_count; ++f)
        for (std::size_t mu = 0; mu < M; ++mu) {
            RationalVector v(D);
            for (std::size_t i = 0; i < T; ++i)
                for (std::size_t l = 1; l <= s; ++l)
                    for (std::size_t c = 0; c < s; ++c) v[c * T + i] += coords[i][l - 1][mu] * g[l][c].coeffs[f];
            if (!is_zero(v)) directions.push_back(std::move(v));
        }
    out.subspace_basis = span_basis(directions, D);

    IntegerMatrix gt_int;
    for (const auto& row : out.subspace_basis) gt_int.push_back(primitive_integer_vector(row));
    out.annihilators = gt_int.empty() ? [&] {
        IntegerMatrix id(D, IntegerVector(D));
        for (std::size_t j = 0; j < D; ++j) id[j][j] = 1;
        return id;
    }()
                                      : integer_kernel(gt_int, D);

    const std::size_t cap = std::max(default_cap(prog), s);
    const GradedSpaces graded = graded_spaces(prog, s, cap);
    for (std::size_t l = 1; l <= s; ++l) {
        const CoeffSpace cs = coeff_space(prog, l);
        add_blocks(out.g_p, cs.basis, l - 1, s, T);
        add_blocks(out.k_basis, primed_vectors(cs, graded.levels[l - 1]), l - 1, s, T);
    }
    out.g_p = span_basis(out.g_p, D);
    out.k_basis = span_basis(out.k_basis, D);
    out.contains_k = subspace_of(out.k_basis, out.subspace_basis, D);

    const SequenceEvaluator ev(seq);
    out.offset.assign(D, 0);
    for (std::size_t c = 0; c < s; ++c)
        for (std::size_t i = 0; i < T; ++i) out.offset[c * T + i] = ev.coefficient(0)[c];

    // Rational parts repeat with period d l! in x + P_i(y); enumerate one period.
    Integer d = 1;
    for (std::size_t l = 1; l <= s; ++l)
        for (std::size_t c = 0; c < s; ++c) d = lcm(d, g[l][c].constant.get_den());
    const Integer px = d * factorial_of(s);
    const Integer py = px * factorial_of(prog.max_degree());
    if (px * py > 4'000'000) throw std::runtime_error("closure_subspaces: rational period too large to enumerate");
    std::map<std::vector<Rational>, std::size_t> seen;
    for (unsigned long y = 0; y < py.get_ui(); ++y) {
        std::vector<Rational> pv(T);
        for (std::size_t i = 0; i < T; ++i) pv[i] = prog.poly(i)(Rational(y));
        for (unsigned long x = 0; x < px.get_ui(); ++x) {
            RationalVector r(D);
            for (std::size_t i = 0; i < T; ++i) {
                const Integer n = Rational(Rational(x) + pv[i]).get_num();
                for (std::size_t l = 1; l <= s; ++l) {
                    Integer b;
                    mpz_bin_ui(b.get_mpz_t(), n.get_mpz_t(), l);
                    for (std::size_t c = 0; c < s; ++c)
                        if (g[l][c].constant != 0) r[c * T + i] += Rational(b) * g[l][c].constant;
                }
            }
            std::vector<Rational> key;
            for (const auto& eta : out.annihilators) key.push_back(frac(dot(eta, r)));
            if (seen.emplace(key, out.coset_shifts.size()).second) {
                for (auto& v : r) v = frac(v);
                out.coset_shifts.push_back(std::move(r));
            }
        }
    }
    return out;
}

AffineClosure closure_subspaces(const Progression& prog, const WeylSystem& w, const std::vector<Dependency>& deps)
{
    return closure_subspaces(prog, w.sequence(), deps);
}

double closure_distance(const PolySequence& seq, const Progression& prog, const AffineClosure& closure, std::size_t N,
                        unsigned threads)
{
    if (closure.annihilators.empty() || N == 0) return 0.0;
    const TupleSampler sample(seq, prog, closure, N);
    const auto eta = to_ll_rows(closure.annihilators);
    std::vector<std::vector<Turn>> keys;
    for (const auto& shift : closure.coset_shifts) {
        std::vector<Turn> k;
        for (const auto& e : closure.annihilators) k.push_back(turn_from_rational(dot(e, shift)));
        keys.push_back(std::move(k));
    }
    std::vector<double> worst(kReductionChunks, 0.0);
    for_each_chunk(N, threads, [&](std::size_t chunk, std::size_t b, std::size_t e) {
        std::vector<Turn> q(sample.ambient());
        std::vector<Turn> z(eta.size());
        for (std::size_t y = b; y < e; ++y)
            for (std::size_t x = 0; x < N; ++x) {
                sample(static_cast<long long>(x), y, q.data());
                for (std::size_t l = 0; l < eta.size(); ++l) z[l] = dot(eta[l], q.data());
                double best = 1.0;
                for (const auto& k : keys) {
                    double d = 0;
                    for (std::size_t l = 0; l < eta.size(); ++l) d = std::max(d, wrap_distance(z[l], k[l]));
                    best = std::min(best, d);
                }
                worst[chunk] = std::max(worst[chunk], best);
            }
    });
    return *std::max_element(worst.begin(), worst.end());
}

DiscrepancyTable equidistribution_test(const PolySequence& seq, const Progression& prog, const AffineClosure& closure,
                                       std::size_t N, const EquidistributionOptions& opt)
{
    if (N == 0) throw std::invalid_argument("equidistribution_test: N must be positive");
    if (opt.radius < 0) throw std::invalid_argument("equidistribution_test: radius must be nonnegative");
    const std::size_t D = closure.ambient;
    const TupleSampler sample(seq, prog, closure, N);

    // Coordinates along a Z-basis of G~ ∩ Z^D come from the dual of a unimodular completion.
    IntegerMatrix gt_int;
    for (const auto& row : closure.subspace_basis) gt_int.push_back(primitive_integer_vector(row));
    const IntegerMatrix lattice = gt_int.empty() ? IntegerMatrix{} : saturation(gt_int, D);
    const std::size_t k = lattice.size();
    std::vector<std::vector<long long>> coord_rows;
    if (k > 0) {
        const auto completion = complete_unimodular(lattice, D);
        coord_rows = to_ll_rows(IntegerMatrix(completion.dual.begin(), completion.dual.begin() + static_cast<std::ptrdiff_t>(k)));
    }
    const auto eta = to_ll_rows(closure.annihilators);

    DiscrepancyTable table;
    table.N = N;
    table.radius = opt.radius;
    const bool grid = static_cast<double>(N) * static_cast<double>(N) <= static_cast<double>(opt.max_samples);
    table.full_grid = grid;
    const std::size_t S = grid ? N * N : opt.max_samples;
    table.samples = S;

    std::vector<Turn> coords(S * k), annih(S * eta.size());
    {
        std::mt19937_64 rng(opt.seed);
        std::vector<std::pair<long long, std::size_t>> pts(S);
        for (std::size_t j = 0; j < S; ++j) {
            if (grid)
                pts[j] = {static_cast<long long>(j % N), j / N};
            else
                pts[j] = {static_cast<long long>(rng() % N), static_cast<std::size_t>(rng() % N)};
        }
        for_each_chunk(S, opt.threads, [&](std::size_t, std::size_t b, std::size_t e) {
            std::vector<Turn> q(D);
            for (std::size_t j = b; j < e; ++j) {
                sample(pts[j].first, pts[j].second, q.data());
                for (std::size_t c = 0; c < k; ++c) coords[j * k + c] = dot(coord_rows[c], q.data());
                for (std::size_t l = 0; l < eta.size(); ++l) annih[j * eta.size() + l] = dot(eta[l], q.data());
            }
        });
    }

    table.rows.push_back({std::vector<long long>(k, 0), 1.0, 0.0, "trivial"});

    const long long hmax = std::max<long long>(1, closure.coset_bound.fits_slong_p() ? closure.coset_bound.get_si() : 1);
    for (std::size_t l = 0; l < eta.size(); ++l)
        for (long long h = 1; h <= hmax; ++h) {
            ComplexKahanSum acc;
            for (std::size_t j = 0; j < S; ++j) acc.add(unit_phase(turn_to_double(turn_times(h, annih[j * eta.size() + l]))));
            const Complex avg = acc.value() / static_cast<double>(S);
            std::vector<long long> f = eta[l];
            for (auto& v : f) v *= h;
            table.rows.push_back({std::move(f), std::abs(avg), std::arg(avg) / (2 * std::numbers::pi), "annihilator"});
        }

    if (k == 0 || opt.radius == 0) return table;

    // Characters m = (front, back) with front over the first k1 coordinates. A(m) and A(-m)
    // are conjugate, so only fronts at or above the centre are evaluated.
    const std::size_t W = static_cast<std::size_t>(2 * opt.radius + 1);
    const std::size_t k1 = (k + 1) / 2, k2 = k - k1;
    std::size_t F = 1, B = 1;
    for (std::size_t j = 0; j < k1; ++j) F *= W;
    for (std::size_t j = 0; j < k2; ++j) B *= W;
    const std::size_t fc = (F - 1) / 2, bc = (B - 1) / 2;
    const std::size_t Fh = F - fc;
    table.characters = (F * B - 1) / 2;

    auto digits = [&](std::size_t idx, std::size_t count) {
        std::vector<long long> m(count);
        for (std::size_t j = 0; j < count; ++j) {
            m[j] = static_cast<long long>(idx % W) - opt.radius;
            idx /= W;
        }
        return m;
    };
    // per-sample unit phases e(m c_j), m in [-r, r]
    auto powers = [&](std::size_t j, std::size_t c, std::vector<Complex>& out) {
        for (std::size_t d = 0; d < W; ++d)
            out[d] = unit_phase(turn_to_double(turn_times(static_cast<long long>(d) - opt.radius, coords[j * k + c])));
    };

    std::vector<double> ar(Fh * B, 0.0), ai(Fh * B, 0.0);
    constexpr std::size_t kBatch = 64;
    std::vector<double> ur(kBatch * Fh), ui(kBatch * Fh), vr(kBatch * B), vi(kBatch * B);
    std::vector<Complex> pw(W), prod;
    for (std::size_t start = 0; start < S; start += kBatch) {
        const std::size_t n = std::min(kBatch, S - start);
        for (std::size_t j = 0; j < n; ++j) {
            // fronts
            prod.assign(1, 1.0);
            for (std::size_t c = 0; c < k1; ++c) {
                powers(start + j, c, pw);
                std::vector<Complex> next(prod.size() * W);
                for (std::size_t d = 0; d < W; ++d)
                    for (std::size_t p = 0; p < prod.size(); ++p) next[d * prod.size() + p] = prod[p] * pw[d];
                prod.swap(next);
            }
            for (std::size_t f = 0; f < Fh; ++f) {
                ur[j * Fh + f] = prod[fc + f].real();
                ui[j * Fh + f] = prod[fc + f].imag();
            }
            prod.assign(1, 1.0);
            for (std::size_t c = k1; c < k; ++c) {
                powers(start + j, c, pw);
                std::vector<Complex> next(prod.size() * W);
                for (std::size_t d = 0; d < W; ++d)
                    for (std::size_t p = 0; p < prod.size(); ++p) next[d * prod.size() + p] = prod[p] * pw[d];
                prod.swap(next);
            }
            for (std::size_t b = 0; b < B; ++b) {
                vr[j * B + b] = prod[b].real();
                vi[j * B + b] = prod[b].imag();
            }
        }
        for_each_chunk(Fh, opt.threads, [&](std::size_t, std::size_t fb, std::size_t fe) {
            for (std::size_t f = fb; f < fe; ++f) {
                double* rr = ar.data() + f * B;
                double* ri = ai.data() + f * B;
                for (std::size_t j = 0; j < n; ++j) {
                    const double xr = ur[j * Fh + f], xi = ui[j * Fh + f];
                    const double* yr = vr.data() + j * B;
                    const double* yi = vi.data() + j * B;
                    for (std::size_t b = 0; b < B; ++b) {
                        rr[b] += xr * yr[b] - xi * yi[b];
                        ri[b] += xr * yi[b] + xi * yr[b];
                    }
                }
            }
        });
    }

    struct Entry {
        double mag;
        std::size_t f, b;
    };
    std::vector<Entry> best;
    auto worse = [](const Entry& x, const Entry& y) { return x.mag > y.mag; };
    for (std::size_t f = 0; f < Fh; ++f)
        for (std::size_t b = (f == 0 ? bc + 1 : 0); b < B; ++b) {
            const double mag = std::hypot(ar[f * B + b], ai[f * B + b]) / static_cast<double>(S);
            table.max_nontrivial = std::max(table.max_nontrivial, mag);
            if (opt.top == 0) continue;
            if (best.size() < opt.top) {
                best.push_back({mag, f, b});
                std::push_heap(best.begin(), best.end(), worse);
            } else if (mag > best.front().mag) {
                std::pop_heap(best.begin(), best.end(), worse);
                best.back() = {mag, f, b};
                std::push_heap(best.begin(), best.end(), worse);
            }
        }
    std::sort(best.begin(), best.end(), [](const Entry& x, const Entry& y) { return x.mag > y.mag; });
    for (const auto& e : best) {
        auto m = digits(fc + e.f, k1);
        const auto back = digits(e.b, k2);
        m.insert(m.end(), back.begin(), back.end());
        const Complex avg(ar[e.f * B + e.b], ai[e.f * B + e.b]);
        table.rows.push_back({std::move(m), e.mag, std::arg(avg) / (2 * std::numbers::pi), "nontrivial"});
    }
    return table;
}

}  // namespace polyprog
