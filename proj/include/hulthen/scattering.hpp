#pragma once

#include "hulthen/potential.hpp"
#include "hulthen/special_functions.hpp"

namespace hulthen {

enum class Side { Left, Right };

/// Which algebraic route turns the x = 0 matching conditions into amplitude
/// ratios (scattering) or a determinant (bound states).
///
/// Rederived builds the derivative rows from the chain rule,
/// d/dx = +a y d/dy on the left and -b z d/dz on the right. AsPrinted
/// evaluates the closed forms exactly as commonly printed and exists for comparison.
enum class MatchingForm { Rederived, AsPrinted };

std::string to_string(MatchingForm form);
MatchingForm matching_form_from_string(const std::string& name);

/// Exponents of y^mu (1-y)^nu 2F1(...) on one side of the origin, for E > 0.
struct SideParams {
    double k = 0.0;      ///< asymptotic wavenumber sqrt(2 m E)
    Complex mu;          ///< i k / range
    Complex nu{1.0, 0.0};
    Complex gamma;       ///< (i / range) sqrt(2 m (E + V0 / screening))
    double range_param = 0.0;
    double screening = 0.0;
};

/// Prefactors C, derivative weights D and hypergeometric values F of the
/// scattering matching system. F1, F2, F4, F5 are evaluated at q, F3, F6 at q_tilde.
struct MatchCoefficients {
    Complex c1, c2, c3;
    Complex d1, d2, d3, d4, d5, d6;
    Complex f1, f2, f3, f4, f5, f6;
};

struct AmplitudeRatios {
    Complex reflected;   ///< A2 / A1
    Complex transmitted; ///< A4 / A1
};

struct ScatteringSolution {
    double energy = 0.0;
    Complex amp_refl;
    Complex amp_trans;
    double reflection = 0.0;
    double transmission = 0.0;

    double unitarity_defect() const;
};

/// Throws InvalidEnergy for E <= 0 and InvalidParameter for a well.
SideParams side_params(const PotentialParams& p, double energy, Side side);

MatchCoefficients match_coefficients(const PotentialParams& p, const SideParams& left,
                                     const SideParams& right, const SeriesConfig& cfg = {});

/// Solves the continuity conditions at x = 0 with A1 = 1 and no wave incoming
/// from the right. Throws SingularMatching when the system determinant underflows.
AmplitudeRatios amplitude_ratios(const MatchCoefficients& mc, const PotentialParams& p,
                                 const SideParams& left, const SideParams& right,
                                 MatchingForm form = MatchingForm::Rederived);

ScatteringSolution scatter(const PotentialParams& p, double energy,
                           MatchingForm form = MatchingForm::Rederived);

/// Exact scattering state for a wave of unit amplitude A1 incident from the left.
class ScatteringWave {
public:
    ScatteringWave(const PotentialParams& p, double energy,
                   MatchingForm form = MatchingForm::Rederived);

    Complex value(double x) const;
    Complex derivative(double x) const;
    /// One-sided limits at the matching point.
    Complex value_left_of_origin() const { return left_value(0.0); }
    Complex derivative_left_of_origin() const { return left_derivative(0.0); }

    const ScatteringSolution& solution() const { return solution_; }
    const SideParams& left() const { return left_; }
    const SideParams& right() const { return right_; }

private:
    Complex left_value(double x) const;
    Complex left_derivative(double x) const;
    Complex right_value(double x) const;
    Complex right_derivative(double x) const;

    PotentialParams params_;
    SideParams left_;
    SideParams right_;
    ScatteringSolution solution_;
};

/// psi(x) per the left solution for x < 0 and the outgoing right solution for x >= 0.
Complex eval_psi(const PotentialParams& p, double energy, double x);

} // namespace hulthen
