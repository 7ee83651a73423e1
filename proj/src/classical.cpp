#include "zernike/classical.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/numeric/odeint.hpp>

#include "zernike/geometry.hpp"

namespace zernike {

namespace {

namespace odeint = boost::numeric::odeint;

using cplx = std::complex<double>;
using OdeState = std::array<double, 8>;
constexpr cplx kI{0.0, 1.0};
// Stand-in derivative for trial stages that leave the metric domain; forces a rejection.
constexpr double kOutsideDomainRate = 1e100;

OdeState pack(const PhaseState& s) {
    return {s.x[0].real(), s.x[0].imag(), s.x[1].real(), s.x[1].imag(),
            s.p[0].real(), s.p[0].imag(), s.p[1].real(), s.p[1].imag()};
}

PhaseState unpack(const OdeState& v) {
    PhaseState s;
    s.x = {cplx{v[0], v[1]}, cplx{v[2], v[3]}};
    s.p = {cplx{v[4], v[5]}, cplx{v[6], v[7]}};
    return s;
}

cplx dot(const cvec2& u, const cvec2& v) { return u[0] * v[0] + u[1] * v[1]; }

// Coefficient c of the linear term c (r.p).
cplx linear_coefficient(Variant variant, const Params& params) {
    switch (variant) {
        case Variant::zernike_complex: return -kI * params.beta_tilde();
        case Variant::weyl: return kI * params.hbar * (2.0 * params.alpha - params.beta);
        case Variant::higgs_real: return 0.0;
    }
    return 0.0;
}

double omega_squared(const Params& params) {
    const double bt = params.beta_tilde();
    return bt * bt / 4.0;
}

PhaseState derivative_unchecked(Variant variant, const Params& params, const PhaseState& s) {
    const cplx rp = dot(s.x, s.p);
    const double alpha = params.alpha;
    const cplx c = linear_coefficient(variant, params);
    PhaseState d;
    for (int i = 0; i < 2; ++i) {
        d.x[i] = 2.0 * s.p[i] + 2.0 * alpha * rp * s.x[i] + c * s.x[i];
        d.p[i] = -(2.0 * alpha * rp * s.p[i] + c * s.p[i]);
    }
    if (variant == Variant::higgs_real) {
        const cplx sf = 1.0 + alpha * dot(s.x, s.x);
        const double w2 = omega_squared(params);
        for (int i = 0; i < 2; ++i) d.p[i] -= 2.0 * w2 * s.x[i] / (sf * sf);
    }
    return d;
}

bool outside_domain(const Params& params, const PhaseState& s) {
    return params.alpha < 0.0 && !(1.0 + params.alpha * norm2(s.real_x()) > 0.0);
}

void require_real(const PhaseState& s, const char* op) {
    const double scale = 1.0 + std::max(std::abs(s.p[0]), std::abs(s.p[1]));
    if (s.max_imag_x() > 1e-12 || s.max_imag_p() > 1e-12 * scale)
        throw DomainError(std::string(op) + ": the real Higgs variant needs a real phase-space state");
}

// Invariants from real parts, without domain or reality checks.
Invariants invariants_unchecked(const Params& params, const Vec2& x, const Vec2& p) {
    const double alpha = params.alpha;
    const double r2 = norm2(x);
    const double rp = x[0] * p[0] + x[1] * p[1];
    const double w2 = omega_squared(params);
    Invariants inv;
    inv.E = norm2(p) + alpha * rp * rp + w2 * r2 / (1.0 + alpha * r2);
    inv.L = x[0] * p[1] - x[1] * p[0];
    const Vec2 pi{p[0] + alpha * rp * x[0], p[1] + alpha * rp * x[1]};
    const double k = w2 - alpha * inv.E;
    inv.S11 = pi[0] * pi[0] + k * x[0] * x[0];
    inv.S12 = pi[0] * pi[1] + k * x[0] * x[1];
    inv.S22 = pi[1] * pi[1] + k * x[1] * x[1];
    return inv;
}

Invariants sample_invariants(Variant variant, const Params& params, const PhaseState& s) {
    switch (variant) {
        case Variant::higgs_real: return invariants_unchecked(params, s.real_x(), s.real_p());
        case Variant::zernike_complex: {
            const cplx sf = 1.0 + params.alpha * dot(s.x, s.x);
            const double bt = params.beta_tilde();
            Vec2 p;
            for (int i = 0; i < 2; ++i) p[i] = (s.p[i] - kI * bt * s.x[i] / (2.0 * sf)).real();
            return invariants_unchecked(params, s.real_x(), p);
        }
        case Variant::weyl: {
            Invariants inv;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            inv.E = hamiltonian(variant, params, s).real();
            inv.L = (s.x[0] * s.p[1] - s.x[1] * s.p[0]).real();
            inv.S11 = inv.S12 = inv.S22 = nan;
            return inv;
        }
    }
    return {};
}

double distance_to_rim(const Params& params, const PhaseState& s) {
    return params.r0() - std::sqrt(norm2(s.real_x()));
}

struct CountingRhs {
    Variant variant;
    Params params;
    long* evaluations;

    void operator()(const OdeState& v, OdeState& dvdt, double /*t*/) const {
        ++*evaluations;
        const PhaseState s = unpack(v);
        if (outside_domain(params, s)) {
            dvdt.fill(kOutsideDomainRate);
            return;
        }
        dvdt = pack(derivative_unchecked(variant, params, s));
    }
};

std::string fmt17(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

const char* to_string(Variant v) {
    switch (v) {
        case Variant::zernike_complex: return "zernike_complex";
        case Variant::higgs_real: return "higgs_real";
        case Variant::weyl: return "weyl";
    }
    return "unknown";
}

Variant variant_from_string(const std::string& name) {
    for (auto v : {Variant::zernike_complex, Variant::higgs_real, Variant::weyl})
        if (name == to_string(v)) return v;
    throw ConfigError("unknown variant '" + name + "'");
}

PhaseState PhaseState::real(const Vec2& x, const Vec2& p) {
    PhaseState s;
    s.x = {cplx{x[0]}, cplx{x[1]}};
    s.p = {cplx{p[0]}, cplx{p[1]}};
    return s;
}

double PhaseState::max_imag_x() const { return std::max(std::abs(x[0].imag()), std::abs(x[1].imag())); }
double PhaseState::max_imag_p() const { return std::max(std::abs(p[0].imag()), std::abs(p[1].imag())); }

cplx hamiltonian(Variant variant, const Params& params, const PhaseState& state) {
    const cplx rp = dot(state.x, state.p);
    cplx h = dot(state.p, state.p) + params.alpha * rp * rp + linear_coefficient(variant, params) * rp;
    switch (variant) {
        case Variant::higgs_real: {
            require_real(state, "hamiltonian");
            h += higgs_potential(params, omega_squared(params), state.real_x());
            break;
        }
        case Variant::weyl:
            h += params.hbar * params.hbar * (params.beta - params.alpha);
            break;
        case Variant::zernike_complex: break;
    }
    return h;
}

PhaseState flow_derivative(Variant variant, const Params& params, const PhaseState& state) {
    if (variant == Variant::higgs_real) {
        require_real(state, "flow_derivative");
        domain_factor(params, state.real_x());
    }
    return derivative_unchecked(variant, params, state);
}

Trajectory integrate(Variant variant, const Params& params, const PhaseState& state0, double T,
                     const IntegrateOptions& options) {
    params.validate();
    if (!(options.tol >= 1e-13 && options.tol <= 1e-4))
        throw ConfigError("integrate: tol must lie in [1e-13, 1e-4]");
    if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("integrate: T must be finite and non-negative");
    if (variant == Variant::higgs_real) {
        require_real(state0, "integrate");
        domain_factor(params, state0.real_x());
    } else if (params.alpha < 0.0) {
        domain_factor(params, state0.real_x());
    }

    Trajectory traj;
    traj.variant = variant;
    traj.params = params;
    traj.tol = options.tol;
    const cplx e0 = hamiltonian(variant, params, state0);

    auto record = [&](double t, const PhaseState& s) {
        traj.samples.push_back({t, s});
        traj.invariant_samples.push_back(sample_invariants(variant, params, s));
        const double drift = std::abs(hamiltonian(variant, params, s) - e0) / (1.0 + std::abs(e0));
        traj.integrator_stats.max_energy_drift = std::max(traj.integrator_stats.max_energy_drift, drift);
    };

    record(0.0, state0);
    if (T == 0.0) return traj;

    const double sample_dt = options.sample_dt > 0.0 ? options.sample_dt : T / 200.0;
    std::vector<double> times;
    for (long k = 1; k * sample_dt < T * (1.0 - 1e-12); ++k) times.push_back(k * sample_dt);
    times.push_back(T);

    long evaluations = 0;
    CountingRhs rhs{variant, params, &evaluations};
    auto stepper = odeint::make_dense_output(options.tol, options.tol, odeint::runge_kutta_dopri5<OdeState>());
    stepper.initialize(pack(state0), 0.0, std::min(1e-3, T / 10.0));

    auto finish_stats = [&](long steps) {
        traj.integrator_stats.steps = steps;
        // dopri5 is FSAL: one evaluation to start, six per attempted step.
        traj.integrator_stats.rejected_steps = std::max(0L, (evaluations - 1) / 6 - steps);
    };
    auto boundary = [&](const std::string& why, long steps) {
        finish_stats(steps);
        std::ostringstream msg;
        msg << "integrate: " << why << " at t = " << stepper.current_time();
        throw BoundaryError(msg.str(), traj);
    };

    std::size_t next = 0;
    long steps = 0;
    OdeState buffer;
    while (next < times.size()) {
        if (steps >= options.max_steps) {
            finish_stats(steps);
            throw StepSizeError("integrate: step budget exhausted at t = " + fmt17(stepper.current_time()));
        }
        try {
            stepper.do_step(rhs);
        } catch (const odeint::step_adjustment_error&) {
            if (params.alpha < 0.0 && distance_to_rim(params, unpack(stepper.current_state())) < 1e-3)
                boundary("step size collapsed near the rim", steps);
            finish_stats(steps);
            throw StepSizeError("integrate: step size collapsed at t = " + fmt17(stepper.current_time()));
        }
        ++steps;
        const PhaseState current = unpack(stepper.current_state());
        const bool finite = std::all_of(stepper.current_state().begin(), stepper.current_state().end(),
                                        [](double v) { return std::isfinite(v); });
        if (!finite) {
            finish_stats(steps);
            throw StepSizeError("integrate: non-finite state at t = " + fmt17(stepper.current_time()));
        }
        if (params.alpha < 0.0 && distance_to_rim(params, current) < 10.0 * options.tol)
            boundary("orbit reached the rim", steps);
        while (next < times.size() && times[next] <= stepper.current_time()) {
            stepper.calc_state(times[next], buffer);
            record(times[next], unpack(buffer));
            ++next;
        }
        if (stepper.current_time_step() < 1e-14 * std::max(1.0, T)) {
            if (params.alpha < 0.0 && distance_to_rim(params, current) < 1e-3)
                boundary("step size collapsed near the rim", steps);
            finish_stats(steps);
            throw StepSizeError("integrate: step size below 1e-14 T at t = " + fmt17(stepper.current_time()));
        }
    }
    finish_stats(steps);
    return traj;
}

Vec2 gauge_profile(const Params& params, const Vec2& x) {
    const double s = domain_factor(params, x);
    const double c = params.beta_tilde() / (2.0 * s);
    return {c * x[0], c * x[1]};
}

PhaseState gauge_shift(const Params& params, const PhaseState& state, GaugeDirection direction) {
    const Vec2 x = state.real_x();
    const Vec2 profile = gauge_profile(params, x);
    PhaseState out = state;
    if (direction == GaugeDirection::to_complex) {
        for (int i = 0; i < 2; ++i) out.p[i] += kI * profile[i];
        return out;
    }
    for (int i = 0; i < 2; ++i) {
        const double mismatch = std::abs(state.p[i].imag() - profile[i]);
        if (mismatch > 1e-6) {
            std::ostringstream msg;
            msg << "gauge_shift: Im p" << i + 1 << " deviates from the gauge profile by " << mismatch;
            throw GaugeMismatchError(msg.str());
        }
    }
    return PhaseState::real(x, state.real_p());
}

Invariants invariants(const Params& params, const PhaseState& state) {
    require_real(state, "invariants");
    domain_factor(params, state.real_x());
    return invariants_unchecked(params, state.real_x(), state.real_p());
}

std::optional<double> higgs_period(const Params& params, double energy) {
    const double rate = omega_squared(params) - params.alpha * energy;
    if (!(rate > 0.0)) return std::nullopt;
    return M_PI / std::sqrt(rate);
}

std::optional<double> closure_detect(const Trajectory& traj, double tol) {
    const auto& samples = traj.samples;
    if (samples.size() < 3) return std::nullopt;
    const PhaseState& s0 = samples.front().state;
    const double p_scale = std::max(1.0, std::sqrt(std::norm(s0.p[0]) + std::norm(s0.p[1])));
    auto dist2 = [&](const PhaseState& s) {
        double d = 0.0;
        for (int i = 0; i < 2; ++i) {
            d += std::norm(s.x[i] - s0.x[i]);
            d += std::norm(s.p[i] - s0.p[i]) / (p_scale * p_scale);
        }
        return d;
    };

    std::vector<double> d(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) d[k] = std::sqrt(dist2(samples[k].state));

    const double departure = 1e3 * tol;
    bool departed = false;
    IntegrateOptions opts;
    opts.tol = traj.tol;
    for (std::size_t k = 1; k + 1 < samples.size(); ++k) {
        if (!departed) {
            departed = d[k] > departure;
            continue;
        }
        if (!(d[k] <= d[k - 1] && d[k] <= d[k + 1])) continue;

        const double t_lo = samples[k - 1].t;
        const double t_hi = samples[k + 1].t;
        const PhaseState& start = samples[k - 1].state;
        auto objective = [&](double t) {
            if (t <= t_lo) return dist2(start);
            opts.sample_dt = t - t_lo;
            const Trajectory piece = integrate(traj.variant, traj.params, start, t - t_lo, opts);
            return dist2(piece.samples.back().state);
        };
        const auto [t_star, d2_min] = boost::math::tools::brent_find_minima(
            objective, t_lo, t_hi, std::numeric_limits<double>::digits / 2);
        if (std::sqrt(d2_min) < tol) return t_star;
    }
    return std::nullopt;
}

std::string trajectory_csv(const Trajectory& traj, bool gauge_columns) {
    std::ostringstream os;
    os << "t,x1,x2,re_p1,im_p1,re_p2,im_p2,E,L,S11,S12,S22";
    if (gauge_columns) os << ",im_x_abs,gauge_dev";
    os << '\n';
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        const auto& [t, s] = traj.samples[k];
        const Invariants& inv = traj.invariant_samples[k];
        os << fmt17(t) << ',' << fmt17(s.x[0].real()) << ',' << fmt17(s.x[1].real()) << ','
           << fmt17(s.p[0].real()) << ',' << fmt17(s.p[0].imag()) << ',' << fmt17(s.p[1].real()) << ','
           << fmt17(s.p[1].imag()) << ',' << fmt17(inv.E) << ',' << fmt17(inv.L) << ',' << fmt17(inv.S11)
           << ',' << fmt17(inv.S12) << ',' << fmt17(inv.S22);
        if (gauge_columns) {
            double dev = 0.0;
            const Vec2 x = s.real_x();
            if (1.0 + traj.params.alpha * norm2(x) > 0.0) {
                const Vec2 profile = gauge_profile(traj.params, x);
                dev = std::max(std::abs(s.p[0].imag() - profile[0]), std::abs(s.p[1].imag() - profile[1]));
            } else {
                dev = std::numeric_limits<double>::quiet_NaN();
            }
            os << ',' << fmt17(s.max_imag_x()) << ',' << fmt17(dev);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace zernike
