#include "semiflow/flow.hpp"

#include <algorithm>
#include <cmath>

namespace semiflow {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192, kB5 = -2187.0 / 6784,
                 kB6 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights.
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

class Integrator {
  public:
    Integrator(const Generator& g, Cplx z0, double theta, const FlowParams& p)
        : g_(g), p_(p), dir_(std::cos(theta), std::sin(theta)), u_(z0), s_(0.0) {
        if (!(z0.real() > 0.0)) throw DomainError("flow started outside the right half-plane");
        k1_ = rhs(u_);
        const double scale = (1.0 + std::abs(u_)) / (1.0 + std::abs(k1_));
        h_ = 0.01 * scale;
        if (p_.max_step > 0.0) h_ = std::min(h_, p_.max_step);
    }

    // Advances to time s_target (>= current time).
    void advance_to(double s_target) {
        while (s_ < s_target) {
            if (++steps_ > p_.max_steps)
                throw StepLimitExceeded("flow exceeded " + std::to_string(p_.max_steps) +
                                        " steps at s = " + format_double(s_));
            const double h = std::min(h_, s_target - s_);
            const Outcome res = attempt(h);
            if (res == Outcome::DomainReject) {
                // A stage or the result left the half-plane; halve toward the
                // exit time. Once h collapses the exit point is bracketed.
                if (h <= exit_floor())
                    throw DomainExit("flow left the right half-plane near s = " + format_double(s_) +
                                         ", last interior point " + format_complex(u_),
                                     s_, u_);
                h_ = 0.5 * h;
            }
            // Accuracy rejections already shrank h_ inside attempt().
        }
    }

    Cplx state() const { return u_; }

  private:
    const Generator& g_;
    FlowParams p_;
    Cplx dir_;
    Cplx u_;
    double s_;
    double h_ = 0.0;
    Cplx k1_{};
    long steps_ = 0;

    double exit_floor() const { return 1e-14 * (1.0 + std::fabs(s_)); }

    Cplx rhs(Cplx z) const { return dir_ * g_(z); }

    enum class Outcome { Accepted, DomainReject, AccuracyReject };

    // DomainReject: a stage or the result left the half-plane; the caller
    // decides how to shrink.  AccuracyReject: h_ has already been reduced here
    // and the caller simply re-enters the loop.
    Outcome attempt(double h) {
        const double m = p_.domain_margin;
        auto inside = [&](Cplx z) { return z.real() > m; };

        const Cplx u = u_;
        Cplx st = u + h * (kA21 * k1_);
        if (!inside(st)) return Outcome::DomainReject;
        const Cplx k2 = rhs(st);
        st = u + h * (kA31 * k1_ + kA32 * k2);
        if (!inside(st)) return Outcome::DomainReject;
        const Cplx k3 = rhs(st);
        st = u + h * (kA41 * k1_ + kA42 * k2 + kA43 * k3);
        if (!inside(st)) return Outcome::DomainReject;
        const Cplx k4 = rhs(st);
        st = u + h * (kA51 * k1_ + kA52 * k2 + kA53 * k3 + kA54 * k4);
        if (!inside(st)) return Outcome::DomainReject;
        const Cplx k5 = rhs(st);
        st = u + h * (kA61 * k1_ + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5);
        if (!inside(st)) return Outcome::DomainReject;
        const Cplx k6 = rhs(st);
        const Cplx u_new = u + h * (kB1 * k1_ + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
        if (!inside(u_new)) return Outcome::DomainReject;
        const Cplx k7 = rhs(u_new);

        const double err =
            std::abs(h * (kE1 * k1_ + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7));
        const double sc = p_.abs_tol + p_.rel_tol * std::max(std::abs(u), std::abs(u_new));
        if (err > sc) {
            double shrink = 0.9 * std::pow(sc / err, 0.2);
            h_ = h * std::clamp(shrink, 0.1, 0.9);
            return Outcome::AccuracyReject;
        }
        u_ = u_new;
        s_ += h;
        k1_ = k7;
        double grow = err > 0.0 ? 0.9 * std::pow(sc / err, 0.2) : 5.0;
        h_ = h * std::clamp(grow, 0.2, 5.0);
        if (p_.max_step > 0.0) h_ = std::min(h_, p_.max_step);
        return Outcome::Accepted;
    }
};

void require_time(double t) {
    if (!(t >= 0.0)) throw PreconditionFailed("flow time must be >= 0");
}

}  // namespace

Cplx evolve(const Generator& g, Cplx z0, double t, double theta, const FlowParams& p) {
    require_time(t);
    if (t == 0.0) {
        if (!(z0.real() > 0.0)) throw DomainError("flow started outside the right half-plane");
        return z0;
    }
    Integrator integ(g, z0, theta, p);
    integ.advance_to(t);
    return integ.state();
}

Trajectory trajectory(const Generator& g, Cplx z0, double t_max, int n, double theta,
                      const FlowParams& p) {
    require_time(t_max);
    if (n < 2) throw PreconditionFailed("trajectory needs at least 2 samples");
    Trajectory traj;
    traj.z0 = z0;
    traj.theta = theta;
    traj.samples.reserve(static_cast<std::size_t>(n));
    Integrator integ(g, z0, theta, p);
    for (int i = 0; i < n; ++i) {
        const double ti = t_max * i / (n - 1);
        integ.advance_to(ti);
        traj.samples.push_back({ti, integ.state()});
    }
    return traj;
}

double check_semigroup_law(const Generator& g, Cplx z0, double t, double s, double theta,
                           const FlowParams& p) {
    const Cplx two_leg = evolve(g, evolve(g, z0, s, theta, p), t, theta, p);
    const Cplx direct = evolve(g, z0, t + s, theta, p);
    return std::abs(two_leg - direct);
}

Cplx evolve_shifted(const Generator& g, double k, Cplx z0, double t, double theta,
                    const FlowParams& p) {
    if (!(k >= 0.0)) throw OutOfRangeParameter("shift distance must be >= 0");
    if (!(z0.real() > 0.0)) throw DomainError("flow started outside the right half-plane");
    return evolve(g, z0 + k, t, theta, p) - k;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,re,im\n";
    for (const auto& s : traj.samples) {
        out += format_double(s.t);
        out += ',';
        out += format_double(s.z.real());
        out += ',';
        out += format_double(s.z.imag());
        out += '\n';
    }
    return out;
}

}  // namespace semiflow
