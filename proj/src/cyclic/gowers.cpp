#include "polyprog/cyclic/gowers.hpp"

#include "polyprog/core/parallel.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace polyprog {

namespace {

std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

double u2_fourier_power(const Signal& f)
{
    double sum = 0;
    KahanSum<double> acc;
    for (const auto& c : fourier_transform(f)) {
        const double a = std::norm(c);
        acc.add(a * a);
    }
    sum = acc.value();
    return sum;
}

}  // namespace

Signal multiplicative_derivative(const Signal& f, std::size_t h)
{
    std::vector<Complex> v(f.N);
    for (std::size_t x = 0; x < f.N; ++x) v[x] = f.values[(x + h) % f.N] * std::conj(f.values[x]);
    return Signal(f.N, std::move(v));
}

std::vector<Complex> fourier_transform(const Signal& f)
{
    const int n = static_cast<int>(f.N);
    fftw_complex* in = fftw_alloc_complex(f.N);
    fftw_complex* out = fftw_alloc_complex(f.N);
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    for (std::size_t x = 0; x < f.N; ++x) {
        in[x][0] = f.values[x].real();
        in[x][1] = f.values[x].imag();
    }
    fftw_execute(plan);
    std::vector<Complex> hat(f.N);
    for (std::size_t k = 0; k < f.N; ++k) hat[k] = Complex(out[k][0], out[k][1]) / static_cast<double>(f.N);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
    return hat;
}

double gowers_power(const Signal& f, unsigned s, GowersMethod method, unsigned threads)
{
    if (s == 0) throw std::invalid_argument("gowers_norm: order must be at least 1");
    if (f.N == 0) throw std::invalid_argument("gowers_norm: empty signal");
    if (s == 1) {
        const double m = std::abs(f.mean());
        return m * m;
    }
    if (s == 2 && method == GowersMethod::fourier) return u2_fourier_power(f);
    const double total = parallel_sum_real(f.N, threads, [&](std::size_t h) {
        return gowers_power(multiplicative_derivative(f, h), s - 1, method, 1);
    });
    return total / static_cast<double>(f.N);
}

double gowers_norm(const Signal& f, unsigned s, GowersMethod method, unsigned threads)
{
    const double p = gowers_power(f, s, method, threads);
    return std::pow(std::max(p, 0.0), 1.0 / static_cast<double>(1u << s));
}

}  // namespace polyprog
