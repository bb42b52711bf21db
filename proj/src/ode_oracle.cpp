#include "hulthen/ode_oracle.hpp"

#include "hulthen/errors.hpp"
#include "hulthen/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace hulthen {

namespace {

using Complex = std::complex<double>;

constexpr double kTailTol = 1e-10;
constexpr double kMaxPhaseStep = 0.5;
constexpr double kAdaptivePhaseStep = 0.05;
constexpr double kRescale = 1e100;

// Nodes x_j = (j - n) h on the left and (n - j) h on the right, j = 0 .. n + 2,
// so both meshes hit x = 0 at j = n and run two nodes past it. Each side
// carries its own branch of V.
struct Mesh {
    double h = 0.0;
    long n = 0;
    std::vector<double> v_left;
    std::vector<double> v_right;
};

double largest_wavenumber(const PotentialParams& p, double energy)
{
    const double depth = p.v0 / (1.0 - std::max(p.q, p.q_tilde));
    return std::sqrt(2.0 * p.m * (std::abs(energy) + depth));
}

Mesh build_mesh(const PotentialParams& p, const OracleConfig& cfg, double wavenumber)
{
    p.validate();
    if (!(cfg.step > 0.0) || !(cfg.half_width_factor > 0.0) || !(cfg.match_tol > 0.0))
        throw InvalidParameter("oracle config needs positive step, half width and match_tol");

    const double half_width = cfg.half_width_factor / std::min(p.a, p.b);
    const double tail = std::max(std::abs(eval_potential(p, -half_width)),
                                 std::abs(eval_potential(p, half_width)));
    if (tail > kTailTol * p.v0)
        throw DomainTooSmall("potential has not decayed at the integration boundary");

    double step = cfg.step;
    if (cfg.adaptive_step && wavenumber > 0.0)
        step = std::min(step, kAdaptivePhaseStep / wavenumber);
    if (wavenumber * step > kMaxPhaseStep)
        throw StepTooLarge("k * step exceeds 0.5");

    Mesh mesh;
    mesh.n = static_cast<long>(std::ceil(half_width / step));
    mesh.h = half_width / static_cast<double>(mesh.n);
    const auto count = static_cast<std::size_t>(mesh.n + 3);
    mesh.v_left.resize(count);
    mesh.v_right.resize(count);
    for (long j = 0; j <= mesh.n + 2; ++j) {
        const double x = static_cast<double>(j - mesh.n) * mesh.h;
        mesh.v_left[static_cast<std::size_t>(j)] = eval_left_branch(p, x);
        mesh.v_right[static_cast<std::size_t>(j)] = eval_right_branch(p, -x);
    }
    return mesh;
}

template <class T>
struct OriginData {
    T value;
    T slope; // d/dx at x = 0
};

// Numerov for psi'' = g psi along one mesh, g_j = 2 m (v_j - E). The five
// last nodes straddle the origin and give a fourth-order central derivative.
// dx is the signed spacing in x along the direction of travel.
template <class T>
OriginData<T> numerov_to_origin(const std::vector<double>& v, double m, double energy, double dx,
                                T psi0, T psi1)
{
    const double c = dx * dx / 12.0;
    const std::size_t last = v.size() - 1;
    auto weight = [&](std::size_t j) { return 1.0 - c * 2.0 * m * (v[j] - energy); };

    std::array<T, 5> window{};
    T prev = psi0;
    T cur = psi1;
    double w_prev = weight(0);
    double w_cur = weight(1);
    for (std::size_t j = 1; j < last; ++j) {
        const double w_next = weight(j + 1);
        const T next = ((12.0 - 10.0 * w_cur) * cur - w_prev * prev) / w_next;
        prev = cur;
        cur = next;
        w_prev = w_cur;
        w_cur = w_next;
        if constexpr (std::is_same_v<T, double>) {
            if (std::abs(cur) > kRescale) {
                prev /= kRescale;
                cur /= kRescale;
                for (auto& s : window)
                    s /= kRescale;
            }
        }
        if (j + 1 >= last - 4)
            window[j + 1 - (last - 4)] = cur;
    }
    const T slope = (window[0] - 8.0 * window[1] + 8.0 * window[3] - window[4]) / (12.0 * dx);
    return {window[2], slope};
}

struct ShotPair {
    OriginData<double> left;
    OriginData<double> right;
};

ShotPair shoot_pair(const PotentialParams& p, const Mesh& mesh, double energy)
{
    const double kappa = std::sqrt(-2.0 * p.m * energy);
    const double growth = std::exp(kappa * mesh.h);
    return {numerov_to_origin<double>(mesh.v_left, p.m, energy, mesh.h, 1.0, growth),
            numerov_to_origin<double>(mesh.v_right, p.m, energy, -mesh.h, 1.0, growth)};
}

double unit_wronskian(const ShotPair& s)
{
    const double nl = std::hypot(s.left.value, s.left.slope);
    const double nr = std::hypot(s.right.value, s.right.slope);
    return (s.left.value * s.right.slope - s.left.slope * s.right.value) / (nl * nr);
}

void require_well(const PotentialParams& p)
{
    p.validate();
    if (p.mode != Mode::Well)
        throw InvalidParameter("bound states require well mode");
}

Mesh bound_mesh(const PotentialParams& p, const OracleConfig& cfg)
{
    return build_mesh(p, cfg, largest_wavenumber(p, p.v0));
}

std::vector<double> energy_grid(const PotentialParams& p, int scan_points)
{
    if (scan_points < 2)
        throw InvalidGrid("shooting scan needs at least 2 points");
    const double delta = 1e-6 * p.v0;
    return linspace(-p.v0 + delta, -delta, scan_points);
}

// Sign-change scan followed by bisection; fn must be continuous in E.
template <class Fn>
std::vector<double> scan_roots(const std::vector<double>& grid, double tol, Fn fn)
{
    const auto values = parallel_map(grid.size(), [&](std::size_t i) { return fn(grid[i]); });
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double f_lo = values[i];
        const double f_hi = values[i + 1];
        if (f_hi == 0.0) {
            roots.push_back(grid[i + 1]);
            continue;
        }
        if (f_lo == 0.0 || (f_lo < 0.0) == (f_hi < 0.0))
            continue;
        double lo = grid[i], hi = grid[i + 1];
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            const double f_mid = fn(mid);
            if (!std::isfinite(f_mid))
                throw NonConvergence("shooting function not finite inside a bracket");
            if ((f_mid < 0.0) == (f_lo < 0.0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        roots.push_back(0.5 * (lo + hi));
    }
    return roots;
}

} // namespace

OracleResult transmit(const PotentialParams& p, double energy, const OracleConfig& cfg)
{
    p.validate();
    if (p.mode != Mode::Barrier)
        throw InvalidParameter("transmission requires barrier mode");
    if (!(energy > 0.0) || !std::isfinite(energy))
        throw InvalidEnergy("scattering energy must be positive");

    const Mesh mesh = build_mesh(p, cfg, largest_wavenumber(p, energy));
    const double k = std::sqrt(2.0 * p.m * energy);
    const double half_width = static_cast<double>(mesh.n) * mesh.h;
    const Complex I{0.0, 1.0};
    auto wave = [&](double sign, double x) { return std::exp(sign * I * k * x); };

    // Right: outgoing wave of unit amplitude. Left: the two plane-wave bases.
    const auto out = numerov_to_origin<Complex>(mesh.v_right, p.m, energy, -mesh.h,
                                                wave(1.0, half_width), wave(1.0, half_width - mesh.h));
    const auto plus = numerov_to_origin<Complex>(mesh.v_left, p.m, energy, mesh.h,
                                                 wave(1.0, -half_width), wave(1.0, -half_width + mesh.h));
    const auto minus = numerov_to_origin<Complex>(mesh.v_left, p.m, energy, mesh.h,
                                                  wave(-1.0, -half_width), wave(-1.0, -half_width + mesh.h));

    // A plus + B minus = out at x = 0, in value and slope.
    const Complex det = plus.value * minus.slope - minus.value * plus.slope;
    if (std::abs(det) < 1e-300)
        throw NonConvergence("degenerate plane-wave basis");
    const Complex incident = (out.value * minus.slope - minus.value * out.slope) / det;
    const Complex reflected = (plus.value * out.slope - out.value * plus.slope) / det;

    OracleResult r;
    r.transmission = 1.0 / std::norm(incident);
    r.reflection = std::norm(reflected) / std::norm(incident);
    r.unitarity_defect = std::abs(r.reflection + r.transmission - 1.0);
    if (!std::isfinite(r.transmission) || !std::isfinite(r.reflection))
        throw NonConvergence("non-finite oracle coefficients");
    return r;
}

double shooting_mismatch(const PotentialParams& p, double energy, const OracleConfig& cfg)
{
    require_well(p);
    if (!(energy < 0.0))
        throw InvalidEnergy("shooting needs E < 0");
    const ShotPair s = shoot_pair(p, bound_mesh(p, cfg), energy);
    return s.left.slope / s.left.value - s.right.slope / s.right.value;
}

double shooting_wronskian(const PotentialParams& p, double energy, const OracleConfig& cfg)
{
    require_well(p);
    if (!(energy < 0.0))
        throw InvalidEnergy("shooting needs E < 0");
    return unit_wronskian(shoot_pair(p, bound_mesh(p, cfg), energy));
}

std::vector<double> shoot_bound(const PotentialParams& p, int scan_points, const OracleConfig& cfg)
{
    require_well(p);
    if (p.v0 == 0.0)
        return {};
    const Mesh mesh = bound_mesh(p, cfg);
    return scan_roots(energy_grid(p, scan_points), cfg.match_tol,
                      [&](double e) { return unit_wronskian(shoot_pair(p, mesh, e)); });
}

std::vector<double> shoot_half_line(const PotentialParams& p, bool even, int scan_points,
                                    const OracleConfig& cfg)
{
    require_well(p);
    if (p.a != p.b || p.q != p.q_tilde)
        throw InvalidParameter("half-line shooting needs a symmetric well");
    if (p.v0 == 0.0)
        return {};
    const Mesh mesh = bound_mesh(p, cfg);
    return scan_roots(energy_grid(p, scan_points), cfg.match_tol, [&](double e) {
        const double kappa = std::sqrt(-2.0 * p.m * e);
        const auto r = numerov_to_origin<double>(mesh.v_right, p.m, e, -mesh.h, 1.0,
                                                 std::exp(kappa * mesh.h));
        const double norm = std::hypot(r.value, r.slope);
        return (even ? r.slope : r.value) / norm;
    });
}

} // namespace hulthen
