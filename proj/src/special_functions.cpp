#include "hulthen/special_functions.hpp"

#include "hulthen/errors.hpp"

#include <cmath>
#include <string>

namespace hulthen {

namespace {

constexpr double kIntegerTol = 1e-12;
constexpr double kAbsFloor = 1e-300;

// Neumaier variant of Kahan summation; also correct when a term exceeds the sum.
class CompensatedSum {
public:
    void add(double v)
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

void check_input(const Hyp2F1Input& in, const SeriesConfig& cfg)
{
    if (!(cfg.rel_tol > 0.0) || cfg.max_terms < 1)
        throw InvalidParameter("hyp2f1: series config needs rel_tol > 0 and max_terms >= 1");
    if (!(in.z >= 0.0 && in.z < 1.0))
        throw InvalidParameter("hyp2f1: argument z = " + std::to_string(in.z) + " outside [0, 1)");
    if (is_nonpositive_integer(in.gamma_c))
        throw InvalidParameter("hyp2f1: lower parameter is a non-positive integer");
    if (!std::isfinite(in.alpha.real()) || !std::isfinite(in.alpha.imag()) ||
        !std::isfinite(in.beta.real()) || !std::isfinite(in.beta.imag()) ||
        !std::isfinite(in.gamma_c.real()) || !std::isfinite(in.gamma_c.imag()))
        throw InvalidParameter("hyp2f1: non-finite parameter");
}

} // namespace

bool is_nonpositive_integer(Complex c)
{
    const double n = std::round(c.real());
    return std::abs(c.real() - n) < kIntegerTol && std::abs(c.imag()) < kIntegerTol && n <= 0.0;
}

Complex hyp2f1(const Hyp2F1Input& in, const SeriesConfig& cfg)
{
    check_input(in, cfg);
    if (in.z == 0.0)
        return {1.0, 0.0};

    CompensatedSum re;
    CompensatedSum im;
    re.add(1.0);
    Complex term{1.0, 0.0};
    int small_in_a_row = 0;

    for (int n = 0; n < cfg.max_terms; ++n) {
        const double dn = static_cast<double>(n);
        term *= (in.alpha + dn) * (in.beta + dn) / ((in.gamma_c + dn) * (dn + 1.0)) * in.z;
        re.add(term.real());
        im.add(term.imag());

        const double partial = std::abs(Complex{re.value(), im.value()});
        const double bound = std::max(cfg.rel_tol * partial, kAbsFloor);
        if (std::abs(term) <= bound) {
            // A terminating series (alpha or beta a non-positive integer) has
            // exact zeros from here on; otherwise require two quiet terms.
            if (term == Complex{0.0, 0.0} || ++small_in_a_row == 2)
                return {re.value(), im.value()};
        } else {
            small_in_a_row = 0;
        }
        if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
            throw NonConvergence("hyp2f1: series term overflowed");
    }
    throw NonConvergence("hyp2f1: no convergence within " + std::to_string(cfg.max_terms) + " terms");
}

Complex hyp2f1_derivative(const Hyp2F1Input& in, const SeriesConfig& cfg)
{
    check_input(in, cfg);
    const Complex scale = in.alpha * in.beta / in.gamma_c;
    return scale * hyp2f1({in.alpha + 1.0, in.beta + 1.0, in.gamma_c + 1.0, in.z}, cfg);
}

} // namespace hulthen
