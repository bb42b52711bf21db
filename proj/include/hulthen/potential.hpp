#pragma once

#include <string>
#include <vector>

namespace hulthen {

enum class Mode { Barrier, Well };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

/// Asymmetric Hulthen potential, hbar = 1.
///
///   V(x) = s V0 / (exp(-a x) - q)        x < 0
///   V(x) = s V0 / (exp(b x) - q_tilde)   x >= 0
///
/// with s = +1 for a barrier and -1 for a well. Both branches decay at
/// infinity; the screening parameters are capped at 0.95.
struct PotentialParams {
    double m = 1.0;
    double a = 0.5;
    double b = 0.5;
    double q = 0.5;
    double q_tilde = 0.5;
    double v0 = 1.0;
    Mode mode = Mode::Barrier;

    static constexpr double kMaxScreening = 0.95;

    /// Throws InvalidParameter when an invariant is broken.
    void validate() const;

    /// Left-right reflected potential: (a, q) and (b, q_tilde) swap.
    PotentialParams mirrored() const;

    double sign() const { return mode == Mode::Barrier ? 1.0 : -1.0; }
};

/// V(x); x = 0 takes the right-hand branch.
double eval_potential(const PotentialParams& p, double x);

/// The analytic continuation of one branch across x = 0. Used by integrators
/// that need one-sided values at the jump.
double eval_left_branch(const PotentialParams& p, double x);
double eval_right_branch(const PotentialParams& p, double x);

struct ProfilePoint {
    double x;
    double v;
};

/// n evenly spaced samples over [x_min, x_max], endpoints included.
std::vector<ProfilePoint> profile(const PotentialParams& p, double x_min, double x_max, int n);

/// Evenly spaced grid with exact endpoints. Throws InvalidGrid for n < 2 or lo >= hi.
std::vector<double> linspace(double lo, double hi, int n);

} // namespace hulthen
