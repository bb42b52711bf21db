#include "hulthen/potential.hpp"

#include "hulthen/errors.hpp"

#include <cmath>

namespace hulthen {

std::string to_string(Mode mode)
{
    return mode == Mode::Barrier ? "barrier" : "well";
}

Mode mode_from_string(const std::string& name)
{
    if (name == "barrier")
        return Mode::Barrier;
    if (name == "well")
        return Mode::Well;
    throw InvalidParameter("unknown mode '" + name + "' (expected barrier or well)");
}

void PotentialParams::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok)
            throw InvalidParameter(what);
    };
    require(std::isfinite(m) && m > 0.0, "mass m must be positive");
    require(std::isfinite(a) && a > 0.0, "range parameter a must be positive");
    require(std::isfinite(b) && b > 0.0, "range parameter b must be positive");
    require(std::isfinite(v0) && v0 >= 0.0, "strength v0 must be non-negative");
    require(q > 0.0 && q <= kMaxScreening, "screening q must lie in (0, 0.95]");
    require(q_tilde > 0.0 && q_tilde <= kMaxScreening, "screening q_tilde must lie in (0, 0.95]");
}

PotentialParams PotentialParams::mirrored() const
{
    PotentialParams out = *this;
    out.a = b;
    out.b = a;
    out.q = q_tilde;
    out.q_tilde = q;
    return out;
}

double eval_left_branch(const PotentialParams& p, double x)
{
    return p.sign() * p.v0 / (std::exp(-p.a * x) - p.q);
}

double eval_right_branch(const PotentialParams& p, double x)
{
    return p.sign() * p.v0 / (std::exp(p.b * x) - p.q_tilde);
}

double eval_potential(const PotentialParams& p, double x)
{
    if (p.v0 == 0.0)
        return 0.0;
    return x < 0.0 ? eval_left_branch(p, x) : eval_right_branch(p, x);
}

std::vector<double> linspace(double lo, double hi, int n)
{
    if (n < 2)
        throw InvalidGrid("grid needs at least 2 points");
    if (!(lo < hi))
        throw InvalidGrid("grid needs min < max");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    out.back() = hi;
    return out;
}

std::vector<ProfilePoint> profile(const PotentialParams& p, double x_min, double x_max, int n)
{
    p.validate();
    std::vector<ProfilePoint> out;
    for (double x : linspace(x_min, x_max, n))
        out.push_back({x, eval_potential(p, x)});
    return out;
}

} // namespace hulthen
