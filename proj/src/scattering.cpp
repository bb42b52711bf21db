#include "hulthen/scattering.hpp"

#include "branch.hpp"
#include "hulthen/errors.hpp"

#include <cmath>

namespace hulthen {

namespace {

constexpr double kSingularThreshold = 1e-300;
const Complex I{0.0, 1.0};

// Principal complex power s^w for real s in (0, 1).
Complex real_pow(double s, Complex w)
{
    return std::exp(w * std::log(s));
}

Complex series(Complex alpha, Complex beta, Complex gamma_c, double z, const SeriesConfig& cfg)
{
    return hyp2f1({alpha, beta, gamma_c, z}, cfg);
}

} // namespace

std::string to_string(MatchingForm form)
{
    return form == MatchingForm::Rederived ? "rederived" : "printed";
}

MatchingForm matching_form_from_string(const std::string& name)
{
    if (name == "rederived")
        return MatchingForm::Rederived;
    if (name == "printed")
        return MatchingForm::AsPrinted;
    throw InvalidParameter("unknown matching form '" + name + "' (expected rederived or printed)");
}

double ScatteringSolution::unitarity_defect() const
{
    return std::abs(reflection + transmission - 1.0);
}

SideParams side_params(const PotentialParams& p, double energy, Side side)
{
    p.validate();
    if (p.mode != Mode::Barrier)
        throw InvalidParameter("scattering requires barrier mode");
    if (!(energy > 0.0) || !std::isfinite(energy))
        throw InvalidEnergy("scattering energy must be positive");

    SideParams s;
    s.range_param = side == Side::Left ? p.a : p.b;
    s.screening = side == Side::Left ? p.q : p.q_tilde;
    s.k = std::sqrt(2.0 * p.m * energy);
    s.mu = I * s.k / s.range_param;
    s.nu = 1.0;
    s.gamma = I / s.range_param * std::sqrt(2.0 * p.m * (energy + p.v0 / s.screening));
    return s;
}

MatchCoefficients match_coefficients(const PotentialParams& p, const SideParams& left,
                                     const SideParams& right, const SeriesConfig& cfg)
{
    const double q = p.q;
    const double qt = p.q_tilde;
    const Complex mu = left.mu, nu = left.nu, g = left.gamma;
    const Complex mu1 = right.mu, nu1 = right.nu, g1 = right.gamma;

    MatchCoefficients mc;
    mc.c1 = real_pow(q, mu) * std::pow(Complex{1.0 - q}, nu);
    mc.c2 = real_pow(q, -mu) * std::pow(Complex{1.0 - q}, nu);
    mc.c3 = real_pow(qt, -mu1) * std::pow(Complex{1.0 - qt}, nu1);

    mc.d1 = mu / q - nu / (1.0 - q);
    mc.d2 = -mu / q - nu / (1.0 - q);
    mc.d3 = mu1 / qt + nu1 / (1.0 - qt);
    mc.d4 = (mu + nu - g) * (mu + nu + g) / (1.0 + 2.0 * mu);
    mc.d5 = (-mu + nu - g) * (-mu + nu + g) / (1.0 - 2.0 * mu);
    mc.d6 = (-mu1 + nu1 - g1) * (-mu1 + nu1 + g1) / (1.0 - 2.0 * mu1);

    mc.f1 = series(mu + nu - g, mu + nu + g, 1.0 + 2.0 * mu, q, cfg);
    mc.f2 = series(-mu + nu - g, -mu + nu + g, 1.0 - 2.0 * mu, q, cfg);
    mc.f3 = series(-mu1 + nu1 - g1, -mu1 + nu1 + g1, 1.0 - 2.0 * mu1, qt, cfg);
    mc.f4 = series(mu + nu - g + 1.0, mu + nu + g + 1.0, 2.0 + 2.0 * mu, q, cfg);
    mc.f5 = series(-mu + nu - g + 1.0, -mu + nu + g + 1.0, 2.0 - 2.0 * mu, q, cfg);
    mc.f6 = series(-mu1 + nu1 - g1 + 1.0, -mu1 + nu1 + g1 + 1.0, 2.0 - 2.0 * mu1, qt, cfg);
    return mc;
}

AmplitudeRatios amplitude_ratios(const MatchCoefficients& mc, const PotentialParams& p,
                                 [[maybe_unused]] const SideParams& left, const SideParams& right,
                                 MatchingForm form)
{
    const double aq = p.a * p.q;
    const double bqt = p.b * p.q_tilde;
    const Complex in_slope = mc.d1 * mc.f1 + mc.d4 * mc.f4;
    const Complex refl_slope = mc.d2 * mc.f2 + mc.d5 * mc.f5;

    if (form == MatchingForm::AsPrinted) {
        const Complex out_slope = mc.d3 * mc.f3 - mc.d6 * mc.f6;
        const Complex den = aq * mc.f3 * refl_slope - bqt * mc.f2 * out_slope;
        if (std::abs(den) < kSingularThreshold)
            throw SingularMatching("matching determinant underflow");
        const Complex r = mc.c1 * (bqt * mc.f1 * out_slope - aq * mc.f3 * in_slope) / (mc.c2 * den);
        const Complex t = aq * mc.c1 * (mc.f1 * refl_slope - mc.f2 * in_slope) / (mc.c3 * den);
        return {r, t};
    }

    // Value row:       C1 F1 + r C2 F2 = t C3 F3
    // Derivative row:  L1    + r L2    = t R3
    // with d/dx = a y d/dy (left, y = q at x = 0) and -b z d/dz (right, z = q~).
    const Complex mu1 = right.mu, nu1 = right.nu;
    const Complex l1 = aq * mc.c1 * in_slope;
    const Complex l2 = aq * mc.c2 * refl_slope;
    const Complex r3 = -bqt * mc.c3 *
                       ((-mu1 / p.q_tilde - nu1 / (1.0 - p.q_tilde)) * mc.f3 + mc.d6 * mc.f6);
    const Complex v1 = mc.c1 * mc.f1;
    const Complex v2 = mc.c2 * mc.f2;
    const Complex v3 = mc.c3 * mc.f3;

    const Complex det = v3 * l2 - v2 * r3;
    if (std::abs(det) < kSingularThreshold)
        throw SingularMatching("matching determinant underflow");
    return {(v1 * r3 - v3 * l1) / det, (v1 * l2 - v2 * l1) / det};
}

ScatteringSolution scatter(const PotentialParams& p, double energy, MatchingForm form)
{
    const SideParams left = side_params(p, energy, Side::Left);
    const SideParams right = side_params(p, energy, Side::Right);
    const MatchCoefficients mc = match_coefficients(p, left, right);
    const AmplitudeRatios ratios = amplitude_ratios(mc, p, left, right, form);

    ScatteringSolution s;
    s.energy = energy;
    s.amp_refl = ratios.reflected;
    s.amp_trans = ratios.transmitted;
    s.reflection = std::norm(ratios.reflected);
    s.transmission = std::norm(ratios.transmitted);
    if (!std::isfinite(s.reflection) || !std::isfinite(s.transmission))
        throw NonConvergence("non-finite scattering coefficients");
    return s;
}

ScatteringWave::ScatteringWave(const PotentialParams& p, double energy, MatchingForm form)
    : params_(p),
      left_(side_params(p, energy, Side::Left)),
      right_(side_params(p, energy, Side::Right)),
      solution_(scatter(p, energy, form))
{
}

Complex ScatteringWave::left_value(double x) const
{
    const double log_y = std::log(params_.q) + params_.a * x;
    const auto in = detail::eval_branch(left_.mu, left_.nu, left_.gamma, log_y);
    const auto refl = detail::eval_branch(-left_.mu, left_.nu, left_.gamma, log_y);
    return in.value + solution_.amp_refl * refl.value;
}

Complex ScatteringWave::left_derivative(double x) const
{
    const double log_y = std::log(params_.q) + params_.a * x;
    const auto in = detail::eval_branch(left_.mu, left_.nu, left_.gamma, log_y);
    const auto refl = detail::eval_branch(-left_.mu, left_.nu, left_.gamma, log_y);
    return params_.a * (in.w_dw + solution_.amp_refl * refl.w_dw);
}

Complex ScatteringWave::right_value(double x) const
{
    const double log_z = std::log(params_.q_tilde) - params_.b * x;
    return solution_.amp_trans * detail::eval_branch(-right_.mu, right_.nu, right_.gamma, log_z).value;
}

Complex ScatteringWave::right_derivative(double x) const
{
    const double log_z = std::log(params_.q_tilde) - params_.b * x;
    return -params_.b * solution_.amp_trans *
           detail::eval_branch(-right_.mu, right_.nu, right_.gamma, log_z).w_dw;
}

Complex ScatteringWave::value(double x) const
{
    return x < 0.0 ? left_value(x) : right_value(x);
}

Complex ScatteringWave::derivative(double x) const
{
    return x < 0.0 ? left_derivative(x) : right_derivative(x);
}

Complex eval_psi(const PotentialParams& p, double energy, double x)
{
    return ScatteringWave(p, energy).value(x);
}

} // namespace hulthen
