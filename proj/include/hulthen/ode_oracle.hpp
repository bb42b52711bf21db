#pragma once

#include "hulthen/potential.hpp"

#include <vector>

namespace hulthen {

/// Discretisation of psi'' = 2 m (V - E) psi on [-L, L], L = half_width_factor / min(a, b).
struct OracleConfig {
    double half_width_factor = 40.0;
    double step = 1e-3;
    /// Bisection width for shoot_bound roots.
    double match_tol = 1e-10;
    /// Shrinks the step to at most 0.05 / k at high energy.
    bool adaptive_step = true;
};

struct OracleResult {
    double reflection = 0.0;
    double transmission = 0.0;
    double unitarity_defect = 0.0;
};

/// R and T by Numerov integration, independent of any hypergeometric machinery.
///
/// A purely outgoing wave exp(ikx) is integrated in from +L, two plane waves
/// exp(+-ikx) are integrated in from -L, and the pieces are joined at x = 0
/// in value and five-point derivative. Each side uses its own branch of V,
/// continued a few nodes past the origin, so the jump at x = 0 costs no order.
///
/// Throws DomainTooSmall if |V(+-L)| > 1e-10 V0 and StepTooLarge if k h > 0.5.
OracleResult transmit(const PotentialParams& p, double energy, const OracleConfig& cfg = {});

/// psi_L'/psi_L - psi_R'/psi_R at x = 0 for decaying solutions shot in from -L and +L.
double shooting_mismatch(const PotentialParams& p, double energy, const OracleConfig& cfg = {});

/// Wronskian psi_L psi_R' - psi_L' psi_R of the two shot solutions, each
/// scaled to unit (psi, psi') norm. Same zeros as the mismatch but no poles.
double shooting_wronskian(const PotentialParams& p, double energy, const OracleConfig& cfg = {});

/// Bound-state energies in (-V0 + delta, -delta), delta = 1e-6 V0, found by
/// scanning the shooting Wronskian and bisecting its sign changes to cfg.match_tol.
std::vector<double> shoot_bound(const PotentialParams& p, int scan_points = 2000,
                                const OracleConfig& cfg = {});

/// Half-line eigenvalues of a symmetric well: even states (psi'(0) = 0) when
/// even is true, odd states (psi(0) = 0) otherwise. Used to check parity.
std::vector<double> shoot_half_line(const PotentialParams& p, bool even, int scan_points = 2000,
                                    const OracleConfig& cfg = {});

} // namespace hulthen
