#pragma once

#include <complex>

namespace hulthen {

using Complex = std::complex<double>;

/// Arguments of the Gauss hypergeometric function 2F1(alpha, beta; gamma_c; z).
struct Hyp2F1Input {
    Complex alpha;
    Complex beta;
    Complex gamma_c;
    double z = 0.0;
};

struct SeriesConfig {
    double rel_tol = 1e-14;
    int max_terms = 100000;
};

/// True when c lies within 1e-12 of one of 0, -1, -2, ...
bool is_nonpositive_integer(Complex c);

/// Power-series value of 2F1 for z in [0, 1).
///
/// Terms are accumulated in ascending order with Neumaier compensation on the
/// real and imaginary parts. Summation stops once two consecutive terms fall
/// below rel_tol times the running sum (absolute floor 1e-300).
///
/// Throws InvalidParameter for z outside [0, 1), a non-positive-integer
/// gamma_c or a bad SeriesConfig; NonConvergence if max_terms is exhausted.
Complex hyp2f1(const Hyp2F1Input& in, const SeriesConfig& cfg = {});

/// d/dz 2F1 = (alpha beta / gamma_c) 2F1(alpha+1, beta+1; gamma_c+1; z).
Complex hyp2f1_derivative(const Hyp2F1Input& in, const SeriesConfig& cfg = {});

} // namespace hulthen
