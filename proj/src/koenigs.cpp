#include "semiflow/koenigs.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <bit>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>

#include "semiflow/errors.hpp"
#include "semiflow/quadrature.hpp"

namespace semiflow {

namespace {

struct BitKey {
    std::uint64_t re;
    std::uint64_t im;
    bool operator==(const BitKey&) const = default;
};

struct BitKeyHash {
    std::size_t operator()(const BitKey& k) const {
        // splitmix64-style scramble of the two coordinate patterns
        std::uint64_t x = k.re + 0x9e3779b97f4a7c15ULL * (k.im + 1);
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return static_cast<std::size_t>(x);
    }
};

constexpr double kBoundaryMargin = 1e-12;
constexpr double kMinDamping = 0x1p-30;
constexpr int kMaxAnchorDepth = 64;

}  // namespace

struct KoenigsMap::Cache {
    std::mutex mu;
    std::unordered_map<BitKey, Cplx, BitKeyHash> values;
    Cplx anchor_z{1.0, 0.0};
    Cplx anchor_h{0.0, 0.0};
    int anchor_depth = 0;
};

KoenigsMap::KoenigsMap(Generator gen, double quad_tol, std::size_t max_panels)
    : gen_(std::move(gen)),
      quad_tol_(quad_tol),
      max_panels_(max_panels),
      cache_(std::make_unique<Cache>()) {
    if (!(quad_tol > 0.0)) throw PreconditionFailed("koenigs quadrature tolerance must be > 0");
    const Cplx f1 = gen_(Cplx(1.0, 0.0));
    if (std::abs(f1) < 1e-300)
        throw DomainError("generator vanishes at the base point 1; the flow is stationary there");
}

KoenigsMap::~KoenigsMap() = default;
KoenigsMap::KoenigsMap(KoenigsMap&&) noexcept = default;
KoenigsMap& KoenigsMap::operator=(KoenigsMap&&) noexcept = default;

Cplx KoenigsMap::map(Cplx z) const {
    if (!is_finite(z)) throw NumericOverflow("koenigs map evaluated at a non-finite point");
    if (!(z.real() > 0.0))
        throw DomainError("koenigs map evaluated outside the right half-plane");
    const Cplx base(1.0, 0.0);
    if (z == base) return Cplx(0.0, 0.0);

    std::lock_guard<std::mutex> lock(cache_->mu);
    const BitKey key{std::bit_cast<std::uint64_t>(z.real()), std::bit_cast<std::uint64_t>(z.imag())};
    if (auto it = cache_->values.find(key); it != cache_->values.end()) return it->second;

    // Integrate 1/f along the straight segment from an anchor with known
    // value; the half-plane is convex, so the segment stays inside.  Chaining
    // from the most recent point keeps segments short during point streams,
    // at a drift cost of one quadrature tolerance per link (capped by depth).
    Cplx za = base;
    Cplx ha(0.0, 0.0);
    int depth = 0;
    if (cache_->anchor_depth < kMaxAnchorDepth &&
        std::abs(z - cache_->anchor_z) < 0.5 * std::abs(z - base)) {
        za = cache_->anchor_z;
        ha = cache_->anchor_h;
        depth = cache_->anchor_depth;
    }
    const auto integrand = [this](Cplx zz) { return 1.0 / gen_(zz); };
    const Cplx value = ha + integrate_segment(integrand, za, z, quad_tol_, quad_tol_, max_panels_).value;

    cache_->values.emplace(key, value);
    cache_->anchor_z = z;
    cache_->anchor_h = value;
    cache_->anchor_depth = depth + 1;
    return value;
}

namespace {

// One damped Newton solve of h(z) = target from the given start; nullopt on
// stall so the caller can subdivide the approach path instead.
std::optional<Cplx> newton_solve(const KoenigsMap& km, const Generator& g, Cplx target, Cplx start,
                                 const InversionParams& ip) {
    Cplx z = start;
    Cplx r = km.map(z) - target;
    const double tol = ip.newton_tol * (1.0 + std::abs(target));
    for (int it = 0; it < ip.max_iters; ++it) {
        if (std::abs(r) <= tol) return z;
        const Cplx dz = -r * g(z);
        if (!is_finite(dz)) return std::nullopt;
        double lambda = 1.0;
        bool moved = false;
        while (lambda >= kMinDamping) {
            const Cplx trial = z + lambda * dz;
            if (is_finite(trial) && trial.real() > kBoundaryMargin) {
                bool usable = false;
                Cplx r_trial;
                try {
                    r_trial = km.map(trial) - target;
                    usable = is_finite(r_trial) && std::abs(r_trial) < std::abs(r);
                } catch (const Error&) {
                    usable = false;  // quadrature refused the trial point
                }
                if (usable) {
                    z = trial;
                    r = r_trial;
                    moved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!moved) return std::nullopt;
    }
    return std::abs(r) <= tol ? std::optional<Cplx>(z) : std::nullopt;
}

}  // namespace

Cplx KoenigsMap::inverse(Cplx w, Cplx hint, const InversionParams& ip) const {
    if (!is_finite(w)) throw NumericOverflow("inverse target is not finite");
    if (!(hint.real() > 0.0))
        throw PreconditionFailed("inverse seed must lie in the right half-plane");

    // Walk from the known image point h(hint) toward w, splitting the segment
    // whenever Newton stalls.  Pending targets live on a stack so refinement
    // stays local to the part of the path that resists.
    Cplx z = hint;
    std::vector<Cplx> pending{w};
    std::size_t splits = 0;
    while (!pending.empty()) {
        const Cplx target = pending.back();
        if (auto sol = newton_solve(*this, gen_, target, z, ip)) {
            z = *sol;
            pending.pop_back();
            continue;
        }
        if (++splits > ip.max_splits)
            throw NewtonDiverged("inversion of the koenigs map did not converge toward " +
                                 format_complex(w) + " after " + std::to_string(ip.max_splits) +
                                 " path subdivisions; the target may lie outside the image");
        pending.push_back(0.5 * (map(z) + target));
    }
    return z;
}

Cplx KoenigsMap::extend(Cplx z, Cplx zeta, const InversionParams& ip) const {
    if (!is_finite(zeta)) throw NumericOverflow("extension displacement is not finite");
    return inverse(map(z) + zeta, z, ip);
}

double KoenigsMap::abel_residual(Cplx z, double t, const FlowParams& fp) const {
    const Cplx moved = evolve(gen_, z, t, 0.0, fp);
    return std::abs(map(moved) - map(z) - t);
}

DirectionReport convexity_direction_check(const KoenigsMap& km, double theta,
                                          const SampleGrid& grid, double tol) {
    if (!(tol >= 0.0)) throw PreconditionFailed("direction check tolerance must be >= 0");
    const Generator& g = km.generator();
    const Cplx phase = std::exp(Cplx(0.0, -theta));

    DirectionReport rep;
    rep.theta = theta;
    std::vector<std::pair<Cplx, double>> samples;
    grid.for_each([&](Cplx z) {
        const Cplx v = phase / g(z);
        if (!is_finite(v))
            throw NumericOverflow("direction check hit a zero of the generator at " +
                                  format_complex(z));
        samples.emplace_back(z, v.real());
    });
    rep.points_checked = samples.size();
    if (samples.empty()) throw PreconditionFailed("direction check needs a nonempty grid");

    rep.min_value = samples.front().second;
    rep.argmin = samples.front().first;
    for (const auto& [z, value] : samples) {
        if (value < rep.min_value) {
            rep.min_value = value;
            rep.argmin = z;
        }
    }
    const double slack = tol * (1.0 + std::fabs(rep.min_value));
    for (const auto& [z, value] : samples) {
        if (value < -slack) rep.violations.push_back({z, value});
    }
    if (rep.min_value > slack)
        rep.status = DirectionStatus::Pass;
    else if (rep.min_value < -slack)
        rep.status = DirectionStatus::Fail;
    else
        rep.status = DirectionStatus::Boundary;
    return rep;
}

}  // namespace semiflow
