#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qbc/partition.hpp"
#include "qbc/report.hpp"
#include "qbc/scalar.hpp"

namespace qbc {

/// Named integer parameters selecting one instance of an identity
/// (e.g. {"n", 2}, {"k", 1}).  Keys not listed in the identity's schema are
/// rejected by run_check.
using ParamPoint = std::map<std::string, long>;

/// Lower bound on the sqrt(q)-order of a lattice summand:
///   order2(term(mu)) >= c2 * sum_i mu_i^2  -  d2 * sum_i |mu_i|  -  e2.
/// Doubled units keep half-integer exponent laws integral.  The certificate
/// is only used to choose a finite summation radius; the terms themselves
/// are evaluated exactly.
struct GrowthCertificate {
    long c2 = 0;  // quadratic coefficient (doubled); must be positive
    long d2 = 0;  // linear coefficient (doubled), non-negative
    long e2 = 0;  // additive slack (doubled), non-negative
};

/// Smallest radius T such that every vector with some |mu_i| > T is
/// certified to contribute only above order.  Chosen so that the
/// single-coordinate growth c2 x^2 - d2 x is increasing beyond T and the
/// worst case over the remaining coordinates (each at the integer minimum
/// of the per-coordinate growth) still clears 2*order + e2.  Throws on a
/// non-positive quadratic coefficient.
long multilateral_radius(const GrowthCertificate& cert, int n, int order);

/// Sum of term(mu) over all of Z^n, truncated to q-order `order` (the
/// result is a sqrt(q) series valid through exponent 2*order).  Terms may
/// be Laurent; terms outside the certified radius are never evaluated.
Series multilateral_sum(int n, int order, const GrowthCertificate& cert,
                        const std::function<Series(const SignedVector&)>& term);

/// Same sum with an explicitly chosen radius (used by the doubling
/// stability checks).
Series multilateral_sum_radius(
    int n, int order, long radius,
    const std::function<Series(const SignedVector&)>& term);

/// Sum of term(lam) over partitions with at most n parts, truncated to
/// q-order `order`.  The certificate reads per part:
///   order2(term(lam)) >= sum_i (c2 lam_i^2 - d2 lam_i) - e2.
Series partition_sum(int n, int order, const GrowthCertificate& cert,
                     const std::function<Series(const Partition&)>& term);

Series partition_sum_radius(
    int n, int order, long radius,
    const std::function<Series(const Partition&)>& term);

/// Infinite-product side of the two classical Rogers-Ramanujan identities:
///   1 / ((q^{1+delta}; q^5)_inf (q^{4-delta}; q^5)_inf),  delta in [0, 3].
Series rr_product(int delta, int order);

/// Theta-quotient building block
///   pi_k = (-1)^k q^{-C(k,2)} [theta(q^2; q^5) E_{k-2} -
///                              theta(q; q^5) D_{k-2}]
/// normalized so that sum_{m>=0} q^{m(m+k)}/(q)_m =
/// (q^5; q^5)_inf / (q)_inf * pi_k; pi_0 = theta(q^2; q^5) and
/// pi_1 = theta(q; q^5).  Laurent for k outside [0, 2].
Series pi_k(int k, int order);

/// (q^5; q^5)_inf / (q)_inf * pi_delta: the product side of the
/// generalized single-variable Rogers-Ramanujan sum for any integer delta.
Series gis_rhs(int delta, int order);

/// Which theta-determinant right-hand side to build.
enum class ThetaDetVariant { kDn, kBn, kEpntK1 };

/// Determinantal product sides of the multiple Rogers-Ramanujan and
/// pentagonal identities, assembled from theta series by an exact n x n
/// determinant (n <= 4).  `delta` is read only by kDn (0 or 1).
Series theta_det_rhs(ThetaDetVariant v, int n, long delta, int order);

/// The n x n theta determinant alone, without the monomial and
/// infinite-product prefactors of theta_det_rhs.  This is the reference
/// side of the determinant-transformation identities.
Series theta_det_bare(ThetaDetVariant v, int n, long delta, int order);

/// Uniform random rational with numerator and denominator drawn from
/// [-9, 9] \ {0}; never zero.
Rational rand_rational(std::mt19937_64& eng);

/// Allowed integer parameter with inclusive range and default value.
struct ParamSpec {
    std::string key;
    long lo = 0;
    long hi = 0;
    long def = 0;
};

/// One verifiable identity: an id, the schema of its parameters, a fixed
/// default grid, and a checker evaluating both sides independently at one
/// parameter point.  `randomized` marks rows whose checker draws auxiliary
/// random parameters from the seed (those are retried on poles with fresh
/// draws; deterministic rows report a pole hit immediately).
struct IdentityEntry {
    std::string id;
    std::string mode;  // "exact-rational" | "q-series" | "p-series" | "float"
    std::vector<ParamSpec> schema;
    std::vector<ParamPoint> grid;
    int default_order = 0;
    int trials = 1;  // seeded draws per grid point when randomized
    bool randomized = false;
    std::function<Report(const ParamPoint&, int order, std::uint64_t seed)>
        check;
};

/// All identities, in their fixed presentation order.
const std::vector<IdentityEntry>& registry();

/// Entry lookup; nullptr when the id is unknown.
const IdentityEntry* find_entry(const std::string& id);

/// Validate params against the schema of `id` (unknown keys and
/// out-of-range values throw Error), fill defaults, and run one check.
/// order <= 0 selects the entry's default order.  Randomized rows retry up
/// to 20 fresh draws when a draw hits a pole.
Report run_check(const std::string& id, const ParamPoint& params, int order,
                 std::uint64_t seed);

/// Run every grid point (times `trials` for randomized rows) of one entry;
/// reports come back in grid order.
std::vector<Report> run_entry_grid(const IdentityEntry& entry, int order,
                                   std::uint64_t seed);

/// Fold a grid run into a single report: verdict is the worst outcome,
/// params/witness come from the first non-passing point (or the last point
/// when all pass), wall_ms is the total.
Report aggregate_reports(const IdentityEntry& entry,
                         const std::vector<Report>& reports);

}  // namespace qbc
