#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "zernike/errors.hpp"
#include "zernike/params.hpp"

namespace zernike {

/// Classical Hamiltonians on the (complexified) phase space:
///  - zernike_complex: p^2 + alpha (r.p)^2 - i bt r.p                      (bt = hbar beta)
///  - higgs_real:      p^2 + alpha (r.p)^2 + bt^2 r^2 / (4 (1 + alpha r^2))
///  - weyl:            p^2 + alpha (r.p)^2 + i hbar (2 alpha - beta) r.p + hbar^2 (beta - alpha)
enum class Variant { zernike_complex, higgs_real, weyl };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& name);

using cvec2 = std::array<std::complex<double>, 2>;

/// Position and momentum. Both are stored complex: the complexified Zernike
/// flow may leave the real section, and Im x is monitored rather than forced to 0.
struct PhaseState {
    cvec2 x{};
    cvec2 p{};

    static PhaseState real(const Vec2& x, const Vec2& p);
    Vec2 real_x() const { return {x[0].real(), x[1].real()}; }
    Vec2 real_p() const { return {p[0].real(), p[1].real()}; }
    double max_imag_x() const;
    double max_imag_p() const;
};

struct Invariants {
    double E = 0.0;
    double L = 0.0;
    /// Fradkin-type tensor S_ij = pi_i pi_j + (omega^2 - alpha E) x_i x_j, pi = p + alpha (r.p) r.
    double S11 = 0.0;
    double S12 = 0.0;
    double S22 = 0.0;
};

struct TrajectorySample {
    double t = 0.0;
    PhaseState state;
};

struct IntegratorStats {
    long steps = 0;
    long rejected_steps = 0;
    double max_energy_drift = 0.0;
};

struct Trajectory {
    Variant variant = Variant::higgs_real;
    Params params;
    double tol = 1e-10;
    std::vector<TrajectorySample> samples;
    std::vector<Invariants> invariant_samples;
    IntegratorStats integrator_stats;
};

/// Raised when the orbit approaches the rim |x| = r0 (alpha < 0) or the step size
/// collapses there. Carries the trajectory up to the last accepted sample.
class BoundaryError : public Error {
public:
    BoundaryError(const std::string& what, Trajectory partial)
        : Error(what), partial_(std::move(partial)) {}
    const char* kind() const noexcept override { return "BoundaryError"; }
    const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

std::complex<double> hamiltonian(Variant variant, const Params& params, const PhaseState& state);

/// Hamilton's equations, holomorphic in (x, p): xdot = dH/dp, pdot = -dH/dx.
PhaseState flow_derivative(Variant variant, const Params& params, const PhaseState& state);

struct IntegrateOptions {
    double tol = 1e-10;
    /// Spacing of recorded samples; 0 picks T/200.
    double sample_dt = 0.0;
    long max_steps = 5'000'000;
};

/// Adaptive Dormand-Prince 5(4) with dense output. Samples at multiples of
/// sample_dt and at T. Throws StepSizeError, BoundaryError.
Trajectory integrate(Variant variant, const Params& params, const PhaseState& state0, double T,
                     const IntegrateOptions& options = {});

enum class GaugeDirection { to_complex, to_real };

/// to_complex: p -> p + i bt x / (2 (1 + alpha x^2)); to_real is the inverse and
/// requires Im p to match that profile to 1e-6 (GaugeMismatchError otherwise).
PhaseState gauge_shift(const Params& params, const PhaseState& state, GaugeDirection direction);

/// Gauge profile bt x / (2 (1 + alpha x^2)) expected in Im p on the Zernike side.
Vec2 gauge_profile(const Params& params, const Vec2& x);

/// Integrals of the real Higgs system. Requires a real state in the metric domain.
Invariants invariants(const Params& params, const PhaseState& state);

/// Smallest t* > 0 where the orbit returns to its initial phase point to `tol`
/// (momentum distance scaled by max(|p(0)|, 1)), refined by re-integration.
std::optional<double> closure_detect(const Trajectory& traj, double tol);

/// Analytic period pi / sqrt(omega^2 - alpha E) of a bounded Higgs orbit, where
/// x(t) is harmonic with angular frequency 2 sqrt(omega^2 - alpha E).
std::optional<double> higgs_period(const Params& params, double energy);

/// Header t,x1,x2,re_p1,im_p1,re_p2,im_p2,E,L,S11,S12,S22; 17 significant digits.
/// With `gauge_columns`, appends im_x_abs and gauge_dev (|Im p - gauge profile|).
std::string trajectory_csv(const Trajectory& traj, bool gauge_columns = false);

}  // namespace zernike
