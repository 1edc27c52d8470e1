#pragma once

#include "polyprog/cyclic/signal.hpp"

namespace polyprog {

enum class GowersMethod {
    recursion,  // ||f||_{U^s}^{2^s} = E_h ||Delta_h f||_{U^{s-1}}^{2^{s-1}} down to ||f||_{U^1} = |E f|
    fourier,    // same recursion, but U^2 evaluated as sum |f^(xi)|^4 with an FFT
};

/// Delta_h f(x) = f(x+h) conj(f(x)).
Signal multiplicative_derivative(const Signal& f, std::size_t h);

/// f^(xi) = E_x f(x) e(-x xi / N), via FFTW.
std::vector<Complex> fourier_transform(const Signal& f);

/// ||f||_{U^s}^{2^s}; throws std::invalid_argument for s == 0.
double gowers_power(const Signal& f, unsigned s, GowersMethod method = GowersMethod::fourier, unsigned threads = 1);

/// ||f||_{U^s}.
double gowers_norm(const Signal& f, unsigned s, GowersMethod method = GowersMethod::fourier, unsigned threads = 1);

}  // namespace polyprog
