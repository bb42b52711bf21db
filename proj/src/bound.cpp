#include "hulthen/bound.hpp"

#include "branch.hpp"
#include "hulthen/errors.hpp"
#include "hulthen/parallel.hpp"

#include <cmath>
#include <optional>

namespace hulthen {

namespace {

struct DeterminantParts {
    double value;
    double scale;
};

DeterminantParts determinant_parts(const PotentialParams& p, double energy, MatchingForm form)
{
    const ExponentBranch branch =
        form == MatchingForm::Rederived ? ExponentBranch::Decaying : ExponentBranch::Principal;
    const BoundSideParams left = bound_side_params(p, energy, Side::Left, branch);
    const BoundSideParams right = bound_side_params(p, energy, Side::Right, branch);
    const BoundMatchValues bv = bound_match_values(p, left, right);

    const double q = p.q;
    const double qt = p.q_tilde;
    double g_left = (left.mu / q - left.nu / (1.0 - q)) * bv.bf1 + bv.bf3;
    double g_right = (right.mu / qt - right.nu / (1.0 - qt)) * bv.bf2 + bv.bf4;
    if (form == MatchingForm::Rederived) {
        g_left *= p.a * q;
        g_right *= -p.b * qt;
    }
    const double lhs = bv.bf1 * g_right;
    const double rhs = bv.bf2 * g_left;
    return {lhs - rhs, std::abs(lhs) + std::abs(rhs)};
}

std::optional<double> try_determinant(const PotentialParams& p, double energy, MatchingForm form)
{
    try {
        const double d = determinant(p, energy, form);
        if (std::isfinite(d))
            return d;
    } catch (const Error&) {
    }
    return std::nullopt;
}

double require_finite(std::optional<double> d)
{
    if (!d)
        throw NonConvergence("determinant not finite inside a bracket");
    return *d;
}

} // namespace

BoundSideParams bound_side_params(const PotentialParams& p, double energy, Side side,
                                  ExponentBranch branch)
{
    p.validate();
    if (p.mode != Mode::Well)
        throw InvalidParameter("bound states require well mode");
    if (!(energy > -p.v0 && energy < 0.0))
        throw InvalidEnergy("bound-state energy must lie in (-V0, 0)");

    BoundSideParams s;
    s.range_param = side == Side::Left ? p.a : p.b;
    s.screening = side == Side::Left ? p.q : p.q_tilde;
    s.kappa = std::sqrt(-2.0 * p.m * energy);
    s.mu = s.kappa / s.range_param;
    if (branch == ExponentBranch::Principal)
        s.mu = -s.mu;
    s.nu = 1.0;
    s.gamma = std::sqrt(2.0 * p.m * (p.v0 / s.screening - energy)) / s.range_param;
    return s;
}

BoundMatchValues bound_match_values(const PotentialParams& p, const BoundSideParams& left,
                                    const BoundSideParams& right)
{
    const auto composite = [](const BoundSideParams& s, double w) {
        const Hyp2F1Input in{s.mu + s.nu - s.gamma, s.mu + s.nu + s.gamma, 1.0 + 2.0 * s.mu, w};
        const double pre = std::pow(w, s.mu) * std::pow(1.0 - w, s.nu);
        return std::pair{pre * hyp2f1(in).real(), pre * hyp2f1_derivative(in).real()};
    };
    const auto [bf1, bf3] = composite(left, p.q);
    const auto [bf2, bf4] = composite(right, p.q_tilde);
    return {bf1, bf2, bf3, bf4};
}

double determinant(const PotentialParams& p, double energy, MatchingForm form)
{
    return determinant_parts(p, energy, form).value;
}

double normalized_determinant(const PotentialParams& p, double energy, MatchingForm form)
{
    const DeterminantParts parts = determinant_parts(p, energy, form);
    return parts.scale > 0.0 ? parts.value / parts.scale : 0.0;
}

std::vector<double> bound_scan_grid(const PotentialParams& p, int scan_points)
{
    const double delta = 1e-6 * p.v0;
    return linspace(-p.v0 + delta, -delta, scan_points);
}

BoundSpectrum find_eigenvalues(const PotentialParams& p, const BoundScanOptions& opts)
{
    p.validate();
    if (p.mode != Mode::Well)
        throw InvalidParameter("bound states require well mode");
    if (opts.scan_points < 100)
        throw InvalidGrid("bound-state scan needs at least 100 points");
    if (!(opts.root_tol > 0.0))
        throw InvalidParameter("root tolerance must be positive");

    BoundSpectrum spectrum;
    if (p.v0 == 0.0)
        return spectrum;

    const std::vector<double> grid = bound_scan_grid(p, opts.scan_points);
    const auto values = parallel_map(grid.size(), [&](std::size_t i) {
        return try_determinant(p, grid[i], opts.form);
    });

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!values[i] || !values[i + 1])
            continue;
        double lo = grid[i], hi = grid[i + 1];
        double d_lo = *values[i];
        const double d_hi = *values[i + 1];
        // An exact zero on the grid belongs to the bracket on its left.
        const bool zero_at_start = d_lo == 0.0 && i == 0;
        if (!(zero_at_start || d_hi == 0.0 || (d_lo != 0.0 && (d_lo < 0.0) != (d_hi < 0.0))))
            continue;
        ++spectrum.bracket_count;

        double root = zero_at_start ? lo : hi;
        if (!zero_at_start && d_hi != 0.0) {
            while (hi - lo > opts.root_tol) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi)
                    break;
                const double d_mid = require_finite(try_determinant(p, mid, opts.form));
                if (d_mid == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((d_mid < 0.0) == (d_lo < 0.0)) {
                    lo = mid;
                    d_lo = d_mid;
                } else {
                    hi = mid;
                }
            }
            root = 0.5 * (lo + hi);
        }

        const double d_root = require_finite(try_determinant(p, root, opts.form));
        if (std::abs(d_root) > std::max(std::abs(*values[i]), std::abs(d_hi))) {
            ++spectrum.pole_count;
            continue;
        }
        spectrum.eigenvalues.push_back(root);
        spectrum.residuals.push_back(std::abs(normalized_determinant(p, root, opts.form)));
    }
    return spectrum;
}

std::vector<DeterminantSample> determinant_trace(const PotentialParams& p, int scan_points,
                                                 MatchingForm form)
{
    p.validate();
    if (p.mode != Mode::Well)
        throw InvalidParameter("bound states require well mode");
    if (p.v0 == 0.0)
        throw InvalidParameter("determinant trace needs v0 > 0");
    const std::vector<double> grid = bound_scan_grid(p, scan_points);
    const auto values = parallel_map(grid.size(), [&](std::size_t i) {
        return try_determinant(p, grid[i], form);
    });
    std::vector<DeterminantSample> out;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (values[i])
            out.push_back({grid[i], *values[i]});
    return out;
}

BoundWave::BoundWave(const PotentialParams& p, double energy)
    : params_(p),
      left_(bound_side_params(p, energy, Side::Left)),
      right_(bound_side_params(p, energy, Side::Right))
{
    const BoundMatchValues bv = bound_match_values(p, left_, right_);
    if (bv.bf2 == 0.0)
        throw SingularMatching("right boundary value vanishes at the origin");
    right_amp_ = bv.bf1 / bv.bf2;
}

double BoundWave::left_value(double x) const
{
    const double log_y = std::log(params_.q) + params_.a * x;
    return detail::eval_branch(left_.mu, left_.nu, left_.gamma, log_y).value.real();
}

double BoundWave::left_derivative(double x) const
{
    const double log_y = std::log(params_.q) + params_.a * x;
    return params_.a * detail::eval_branch(left_.mu, left_.nu, left_.gamma, log_y).w_dw.real();
}

double BoundWave::right_value(double x) const
{
    const double log_z = std::log(params_.q_tilde) - params_.b * x;
    return right_amp_ * detail::eval_branch(right_.mu, right_.nu, right_.gamma, log_z).value.real();
}

double BoundWave::right_derivative(double x) const
{
    const double log_z = std::log(params_.q_tilde) - params_.b * x;
    return -params_.b * right_amp_ *
           detail::eval_branch(right_.mu, right_.nu, right_.gamma, log_z).w_dw.real();
}

double BoundWave::value(double x) const
{
    return x < 0.0 ? left_value(x) : right_value(x);
}

double BoundWave::derivative(double x) const
{
    return x < 0.0 ? left_derivative(x) : right_derivative(x);
}

double eval_bound_psi(const PotentialParams& p, double energy, double x)
{
    return BoundWave(p, energy).value(x);
}

} // namespace hulthen
