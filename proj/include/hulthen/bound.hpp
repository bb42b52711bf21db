#pragma once

#include "hulthen/potential.hpp"
#include "hulthen/scattering.hpp"

#include <vector>

namespace hulthen {

/// Sign of the exponent mu for E < 0. The literal i sqrt(2 m E) / range on the
/// principal branch is negative (a growing solution); the decaying branch is
/// the physical one.
enum class ExponentBranch { Decaying, Principal };

/// Real exponents of y^mu (1-y)^nu 2F1(...) on one side of the well, for E < 0.
struct BoundSideParams {
    double kappa = 0.0;  ///< sqrt(-2 m E)
    double mu = 0.0;     ///< +kappa / range on the decaying branch
    double nu = 1.0;
    double gamma = 0.0;  ///< sqrt(2 m (V0 / screening - E)) / range
    double range_param = 0.0;
    double screening = 0.0;
};

/// The four composite quantities at x = 0, each including its prefactor.
/// bf1, bf3 live on the left (argument q), bf2, bf4 on the right (argument q_tilde).
/// bf3 and bf4 are the prefactor times d/dw 2F1.
struct BoundMatchValues {
    double bf1 = 0.0;
    double bf2 = 0.0;
    double bf3 = 0.0;
    double bf4 = 0.0;
};

struct BoundSpectrum {
    std::vector<double> eigenvalues;
    /// |D(E)| relative to the size of the two products forming D.
    std::vector<double> residuals;
    /// Sign changes of D on the scan grid, poles included.
    int bracket_count = 0;
    /// Brackets discarded because |D| grew under bisection (a pole, not a root).
    int pole_count = 0;
};

struct BoundScanOptions {
    int scan_points = 2000;
    double root_tol = 1e-9;
    MatchingForm form = MatchingForm::Rederived;
};

/// Throws InvalidParameter outside well mode, InvalidEnergy for E outside (-V0, 0).
BoundSideParams bound_side_params(const PotentialParams& p, double energy, Side side,
                                  ExponentBranch branch = ExponentBranch::Decaying);

BoundMatchValues bound_match_values(const PotentialParams& p, const BoundSideParams& left,
                                    const BoundSideParams& right);

/// D(E) = bf1 G_R - bf2 G_L, where G_L and G_R are the derivative-side
/// expressions of the matching system. Rederived uses the decaying branch and
/// the chain-rule factors +a q and -b q_tilde; AsPrinted uses the principal
/// branch without them.
double determinant(const PotentialParams& p, double energy,
                   MatchingForm form = MatchingForm::Rederived);

/// D(E) divided by |bf1 G_R| + |bf2 G_L|; zero exactly where D is.
double normalized_determinant(const PotentialParams& p, double energy,
                              MatchingForm form = MatchingForm::Rederived);

/// Energy guard used by the scans: delta = 1e-6 V0 on each end of (-V0, 0).
std::vector<double> bound_scan_grid(const PotentialParams& p, int scan_points);

BoundSpectrum find_eigenvalues(const PotentialParams& p, const BoundScanOptions& opts = {});

struct DeterminantSample {
    double energy;
    double value;
};

/// D(E) on the scan grid, for visual inspection. Points where D cannot be
/// evaluated are skipped.
std::vector<DeterminantSample> determinant_trace(const PotentialParams& p, int scan_points,
                                                 MatchingForm form = MatchingForm::Rederived);

/// Bound-state wavefunction with A5 = 1 and A7 = bf1 / bf2 (unnormalised).
class BoundWave {
public:
    BoundWave(const PotentialParams& p, double energy);

    double value(double x) const;
    double derivative(double x) const;
    double value_left_of_origin() const { return left_value(0.0); }
    double derivative_left_of_origin() const { return left_derivative(0.0); }

    double right_amplitude() const { return right_amp_; }

private:
    double left_value(double x) const;
    double left_derivative(double x) const;
    double right_value(double x) const;
    double right_derivative(double x) const;

    PotentialParams params_;
    BoundSideParams left_;
    BoundSideParams right_;
    double right_amp_ = 1.0;
};

double eval_bound_psi(const PotentialParams& p, double energy, double x);

} // namespace hulthen
