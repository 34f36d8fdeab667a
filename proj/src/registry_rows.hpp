#pragma once

// Internal glue between the identity registry and the per-family row
// implementations.  Not installed; include from src/ only.

#include <cstdint>
#include <string>
#include <vector>

#include "qbc/errors.hpp"
#include "qbc/identities.hpp"
#include "qbc/report.hpp"
#include "qbc/series.hpp"

namespace qbc {

// Each registrar appends its rows (in any order); registry() re-sorts them
// into the fixed presentation order.
void register_qseries_rows(std::vector<IdentityEntry>& out);
void register_exact_rows(std::vector<IdentityEntry>& out);
void register_elliptic_rows(std::vector<IdentityEntry>& out);

// ---- shared row utilities -------------------------------------------------

/// Stringify a parameter point for Report.params.
std::map<std::string, std::string> param_strings(const ParamPoint& p);

/// Required-parameter lookup (the schema filler guarantees presence; this
/// throws on programmer error).
long param(const ParamPoint& p, const std::string& key);

/// Compare two series through sqrtq-order 2*order (or the native order for
/// p-series) and build the Report.  `cmp_order` is in native units of the
/// series variable.
Report series_report(const std::string& id, const ParamPoint& p,
                     const std::string& mode, int order, std::uint64_t seed,
                     const Series& lhs, const Series& rhs, int cmp_order);

/// Exact comparison of paired scalar side-values; the witness exponent is
/// the index of the first mismatching pair.
Report scalar_report(const std::string& id, const ParamPoint& p,
                     const std::string& mode, int order, std::uint64_t seed,
                     const std::vector<std::pair<Scalar, Scalar>>& sides);

/// Float comparison at tolerance `tol` (almost_equal semantics); witness
/// exponent is the index of the first mismatching pair.
Report float_report(const std::string& id, const ParamPoint& p, int order,
                    std::uint64_t seed,
                    const std::vector<std::pair<Cplx, Cplx>>& sides,
                    double tol);

/// Unilateral Rogers-Ramanujan-type sum  sum_{m>=0} q^{m(m+delta)}/(q)_m,
/// valid through q-order `order` (delta may be any integer).
Series rr_unilateral_lhs(long delta, int order);

/// The pentagonal-family product
///   (q)_inf^n * prod_{i<j} (q^{k(j-i)})_inf / (q^{k(j-i+1)})_inf
/// (for k=0 the paired factors cancel and the value is (q)_inf^n).
Series epnt_product_lhs(int n, long k, int order);

}  // namespace qbc
