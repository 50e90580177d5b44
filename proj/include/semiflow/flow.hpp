#pragma once

#include <string>
#include <vector>

#include "semiflow/generator.hpp"
#include "semiflow/types.hpp"

namespace semiflow {

struct FlowParams {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.0;  // 0 = uncapped
    long max_steps = 200000;
    double domain_margin = 1e-12;
};

struct TrajectorySample {
    double t;
    Cplx z;
};

struct Trajectory {
    Cplx z0{};
    double theta = 0.0;
    std::vector<TrajectorySample> samples;
};

// Solves u' = e^{i theta} f(u), u(0) = z0, up to time t >= 0 with an embedded
// adaptive 5(4) pair. A trajectory escaping the right half-plane raises
// DomainExit carrying the bisected exit time and last interior state.
Cplx evolve(const Generator& g, Cplx z0, double t, double theta = 0.0, const FlowParams& p = {});

// n samples at uniform times 0..t_max from one continued integration.
Trajectory trajectory(const Generator& g, Cplx z0, double t_max, int n, double theta = 0.0,
                      const FlowParams& p = {});

// | F_t(F_s(z0)) - F_{t+s}(z0) |.
double check_semigroup_law(const Generator& g, Cplx z0, double t, double s, double theta = 0.0,
                           const FlowParams& p = {});

// Flow of the shifted semigroup: F_t(z0 + k) - k.
Cplx evolve_shifted(const Generator& g, double k, Cplx z0, double t, double theta = 0.0,
                    const FlowParams& p = {});

// Rows "t,re,im" with exact round-trip decimals.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace semiflow
