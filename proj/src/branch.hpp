#pragma once

#include "hulthen/special_functions.hpp"

#include <cmath>

namespace hulthen::detail {

/// One hypergeometric branch w^e (1-w)^nu 2F1(e+nu-g, e+nu+g; 1+2e; w),
/// parameterised by log w so that w underflowing to zero is harmless.
struct BranchValue {
    Complex value;    ///< the branch itself
    Complex w_dw;     ///< w d/dw of the branch
};

inline BranchValue eval_branch(Complex e, Complex nu, Complex g, double log_w,
                               const SeriesConfig& cfg = {})
{
    const double w = std::exp(log_w);
    const Hyp2F1Input in{e + nu - g, e + nu + g, 1.0 + 2.0 * e, w};
    const Complex h = hyp2f1(in, cfg);
    const Complex dh = hyp2f1_derivative(in, cfg);
    const Complex pre = std::exp(e * log_w) * std::pow(Complex{1.0 - w, 0.0}, nu);
    return {pre * h, pre * ((e - nu * w / (1.0 - w)) * h + w * dh)};
}

} // namespace hulthen::detail
