#pragma once

// Koenigs coordinate for a flow on the right half-plane: the holomorphic
// solution h of  h'(z) * f(z) = 1,  h(1) = 0.  In this coordinate the flow
// driven by f becomes straight-line translation, h(F_t(z)) = h(z) + t, which
// turns analytic continuation of the flow in the time variable into ordinary
// complex addition.

#include <cstddef>
#include <memory>
#include <vector>

#include "semiflow/flow.hpp"
#include "semiflow/generator.hpp"
#include "semiflow/types.hpp"

namespace semiflow {

struct InversionParams {
    double newton_tol = 1e-12;  // accept when |h(z) - w| <= tol * (1 + |w|)
    int max_iters = 60;         // Newton iterations per continuation target
    std::size_t max_splits = 1024;  // continuation-segment subdivisions
};

class KoenigsMap {
  public:
    // quad_tol controls the path quadrature used for h; max_panels bounds the
    // work per segment.  Rejects generators that vanish at the base point 1.
    explicit KoenigsMap(Generator gen, double quad_tol = 1e-12, std::size_t max_panels = 4000);
    ~KoenigsMap();

    KoenigsMap(const KoenigsMap&) = delete;
    KoenigsMap& operator=(const KoenigsMap&) = delete;
    KoenigsMap(KoenigsMap&&) noexcept;
    KoenigsMap& operator=(KoenigsMap&&) noexcept;

    const Generator& generator() const { return gen_; }

    // h(z), computed as the integral of 1/f along a segment inside the half
    // plane.  Values are cached per exact input; repeated nearby evaluations
    // chain from the most recent point instead of restarting at the base.
    Cplx map(Cplx z) const;

    // Solves h(z) = w by damped Newton iteration z <- z - lambda*(h(z)-w)*f(z).
    // When the direct solve stalls, the segment from h(hint) to w is split and
    // walked through intermediate targets; more than max_splits subdivisions
    // raises NewtonDiverged.
    Cplx inverse(Cplx w, Cplx hint = Cplx(1.0, 0.0), const InversionParams& ip = {}) const;

    // Flow continued to complex time zeta: h^{-1}(h(z) + zeta), seeded at z.
    Cplx extend(Cplx z, Cplx zeta, const InversionParams& ip = {}) const;

    // |h(F_t(z)) - h(z) - t| with F_t computed by direct integration of the
    // flow; measures how well the coordinate straightens the motion.
    double abel_residual(Cplx z, double t, const FlowParams& fp = {}) const;

  private:
    struct Cache;
    Generator gen_;
    double quad_tol_;
    std::size_t max_panels_;
    std::unique_ptr<Cache> cache_;
};

enum class DirectionStatus { Pass, Boundary, Fail };

// Certificate that the image of the coordinate map is invariant under
// translation by e^{i*theta}*s for all s >= 0: the signed quantity
// Re(e^{-i*theta} / f(z)) must be nonnegative throughout the half-plane.
struct DirectionReport {
    double theta = 0.0;
    std::size_t points_checked = 0;
    double min_value = 0.0;
    Cplx argmin{};
    struct Violation {
        Cplx z;
        double value;
    };
    std::vector<Violation> violations;
    DirectionStatus status = DirectionStatus::Fail;
};

DirectionReport convexity_direction_check(const KoenigsMap& km, double theta,
                                          const SampleGrid& grid, double tol = 1e-10);

}  // namespace semiflow
