#include "qbc/identities.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <sstream>

#include "qbc/errors.hpp"
#include "qbc/qfact.hpp"
#include "qbc/qprod.hpp"
#include "qbc/schur.hpp"
#include "registry_rows.hpp"

namespace qbc {

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(
               clock::now().time_since_epoch())
        .count();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

// ---- lattice-sum harness --------------------------------------------------

long multilateral_radius(const GrowthCertificate& cert, int n, int order) {
    if (cert.c2 <= 0)
        throw Error("growth certificate must have a positive quadratic part");
    if (cert.d2 < 0 || cert.e2 < 0)
        throw Error("growth certificate linear/slack parts must be >= 0");
    // Single-coordinate growth g(x) = c2 x^2 - d2 x.  Over the integers
    // g >= -dip, and g is non-decreasing for x with 2 c2 x >= d2.  A vector
    // with some |mu_i| = M > T then has certified order at least
    // g(M) - (n-1) dip - e2, which must exceed 2*order.
    const long dip = (cert.d2 * cert.d2) / (4 * cert.c2);
    const long target = 2L * order + cert.e2 + (n - 1) * dip;
    for (long T = 0;; ++T) {
        const long M = T + 1;
        if (2 * cert.c2 * M >= cert.d2 &&
            cert.c2 * M * M - cert.d2 * M > target)
            return T;
        if (T > 1000000)
            throw Error("growth certificate radius did not converge");
    }
}

Series multilateral_sum_radius(
    int n, int order, long radius,
    const std::function<Series(const SignedVector&)>& term) {
    const int order2 = 2 * order;
    Series acc = Series::zero(Var::SqrtQ, order2);
    for_each_bounded_vector(n, static_cast<int>(radius),
                            [&](const SignedVector& v) { acc = acc + term(v); });
    return acc.truncated(order2);
}

Series multilateral_sum(int n, int order, const GrowthCertificate& cert,
                        const std::function<Series(const SignedVector&)>& term) {
    return multilateral_sum_radius(n, order,
                                   multilateral_radius(cert, n, order), term);
}

Series partition_sum_radius(
    int n, int order, long radius,
    const std::function<Series(const Partition&)>& term) {
    const int order2 = 2 * order;
    Series acc = Series::zero(Var::SqrtQ, order2);
    for (const Partition& lam :
         partitions_in_box(n, static_cast<int>(radius)))
        acc = acc + term(lam);
    return acc.truncated(order2);
}

Series partition_sum(int n, int order, const GrowthCertificate& cert,
                     const std::function<Series(const Partition&)>& term) {
    return partition_sum_radius(n, order,
                                multilateral_radius(cert, n, order), term);
}

// ---- product and theta oracles -------------------------------------------

Series rr_product(int delta, int order) {
    if (delta < 0 || delta > 3) throw Error("rr_product: delta not in [0, 3]");
    const int order2 = 2 * order;
    WorkingOrderGuard guard(order2);
    Series den = qpoch_inf(Rational(1), 2 * (1 + delta), 10, order2) *
                 qpoch_inf(Rational(1), 2 * (4 - delta), 10, order2);
    return series_inv(den).truncated(order2);
}

Series pi_k(int k, int order) {
    const long slack2 = 2 * binom2(k);  // C(k,2) >= 0 for every integer k
    const int order2 = 2 * order;
    const int work2 = static_cast<int>(order2 + slack2);
    Series th2 = theta_q(Rational(1), 4, 10, work2);
    Series th1 = theta_q(Rational(1), 2, 10, work2);
    Series combo = th2 * schur_E(k - 2).to_series() -
                   th1 * schur_D(k - 2).to_series();
    Series result = combo.shifted(-slack2);
    if (k % 2 != 0) result = result.scaled(Rational(-1));
    return result.truncated(order2);
}

Series gis_rhs(int delta, int order) {
    const int order2 = 2 * order;
    Series pi = pi_k(delta, order);
    const long dip = pi.is_zero() ? 0 : std::min<long>(0, pi.min_exp());
    const int work2 = static_cast<int>(order2 - dip);
    WorkingOrderGuard guard(work2);
    Series pre = qpoch_inf(Rational(1), 10, 10, work2) *
                 series_inv(qpoch_inf(Rational(1), 2, 2, work2));
    return (pre * pi).truncated(order2);
}

namespace {

// Mirror of theta_q's quasi-periodicity reduction for c = 1: the lowest
// sqrtq exponent of theta_q(1, e2, base2, .), or nullopt when the reduced
// argument vanishes identically.
std::optional<long> theta_min_e2(long e2, long base2) {
    long pref = 0;
    while (e2 > base2) {
        e2 -= base2;
        pref -= e2;
    }
    while (e2 <= 0) {
        pref += e2;
        e2 += base2;
    }
    if (e2 == base2) return std::nullopt;  // theta(q^s; q^s) = 0
    return pref;
}

struct DetArm {
    long e2 = 0;      // theta argument exponent (doubled)
    int sign = 1;     // +1 / -1
};

struct DetEntry {
    long shift2 = 0;  // entry = q^{shift2/2} armA + sign_B q^{-shift2/2} armB
    DetArm a, b;
};

struct DetSpec {
    long base2 = 10;
    std::vector<std::vector<DetEntry>> entry;  // [i][j], 0-based
    Rational pref_c = 1;
    long pref_e2 = 0;
    long ratio_num_e2 = 0;  // (q^{x}; q^{x})_inf numerator, doubled x
    bool ratio_div_q = false;  // divide by (q; q)_inf^n
};

DetSpec det_spec(ThetaDetVariant v, int n, long delta) {
    DetSpec s;
    const long c2n = binom2(n);
    s.entry.assign(n, std::vector<DetEntry>(n));
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            DetEntry& e = s.entry[i - 1][j - 1];
            switch (v) {
                case ThetaDetVariant::kDn:
                    e.shift2 = (j - 1) * (2 * (n - i) + delta);
                    e.a = {2 * (4 * n + 2 * delta + 1 - 4 * i + j), +1};
                    e.b = {2 * (4 * n + 2 * delta + 3 - 4 * i - j), +1};
                    break;
                case ThetaDetVariant::kBn:
                    e.shift2 = (2 * j - 1) * (n - i + 1);
                    e.a = {2 * (6 + 4 * n - 4 * i + j), +1};
                    e.b = {2 * (7 + 4 * n - 4 * i - j), -1};
                    break;
                case ThetaDetVariant::kEpntK1:
                    e.shift2 = 2 * (n - i) * (j - 1);
                    e.a = {2 * (2 * n - 2 * i + j), +1};
                    e.b = {2 * (2 * n - 2 * i - j + 2), +1};
                    break;
            }
        }
    }
    switch (v) {
        case ThetaDetVariant::kDn: {
            s.base2 = 10;
            s.pref_c = make_rational(c2n % 2 == 0 ? 1 : -1, 2);
            long e = 0;
            for (int i = 1; i <= n; ++i)
                e += (n - i) * (2 * (n - i) + delta);
            s.pref_e2 = e;
            s.ratio_num_e2 = 10;
            s.ratio_div_q = true;
            break;
        }
        case ThetaDetVariant::kBn: {
            s.base2 = 10;
            s.pref_c = Rational((c2n + n) % 2 == 0 ? 1 : -1);
            long e = 0;
            for (int i = 1; i <= n; ++i)
                e += (2 * (n - i) + 1) * (n - i + 1);
            s.pref_e2 = e;
            s.ratio_num_e2 = 10;
            s.ratio_div_q = true;
            break;
        }
        case ThetaDetVariant::kEpntK1: {
            s.base2 = 6;
            s.pref_c = make_rational(c2n % 2 == 0 ? 1 : -1, 2);
            s.pref_e2 = n * (n - 1) * (2 * n - 1) / 3;
            s.ratio_num_e2 = 6;
            s.ratio_div_q = false;
            break;
        }
    }
    return s;
}

Series theta_det_core(const DetSpec& s, int n, int order2) {
    // Working order generous enough that every permutation product stays
    // valid through order2: per row, the worst Laurent dip of an entry plus
    // the worst monomial shift.
    long slack = 0;
    for (int i = 0; i < n; ++i) {
        long max_shift = 0;
        long min_e = 0;
        for (int j = 0; j < n; ++j) {
            const DetEntry& e = s.entry[i][j];
            max_shift = std::max(max_shift, e.shift2);
            for (int arm = 0; arm < 2; ++arm) {
                const DetArm& a = arm == 0 ? e.a : e.b;
                const long sh = arm == 0 ? e.shift2 : -e.shift2;
                if (auto m = theta_min_e2(a.e2, s.base2))
                    min_e = std::min(min_e, *m + sh);
            }
        }
        slack += max_shift + std::max<long>(0, -min_e);
    }
    const int work2 = static_cast<int>(order2 + slack);

    std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const DetEntry& e = s.entry[i][j];
            Series armA = theta_q(Rational(1), e.a.e2, s.base2, work2)
                              .shifted(e.shift2)
                              .scaled(Rational(e.a.sign));
            Series armB = theta_q(Rational(1), e.b.e2, s.base2, work2)
                              .shifted(-e.shift2)
                              .scaled(Rational(e.b.sign));
            m[i][j] = Scalar(armA + armB);
        }
    }
    Scalar d = det(m);
    return d.series();
}

}  // namespace

Series theta_det_bare(ThetaDetVariant v, int n, long delta, int order) {
    if (n < 1 || n > 4) throw Error("theta determinant size must be in [1, 4]");
    const int order2 = 2 * order;
    return theta_det_core(det_spec(v, n, delta), n, order2).truncated(order2);
}

Series theta_det_rhs(ThetaDetVariant v, int n, long delta, int order) {
    if (n < 1 || n > 4) throw Error("theta determinant size must be in [1, 4]");
    const int order2 = 2 * order;
    const DetSpec s = det_spec(v, n, delta);
    Series d = theta_det_core(s, n, order2 + 0);
    const long dip =
        d.is_zero() ? 0 : std::min<long>(0, d.min_exp() + s.pref_e2);
    const int work2 = static_cast<int>(order2 - dip);
    WorkingOrderGuard guard(work2);
    Series ratio = qpoch_inf(Rational(1), s.ratio_num_e2, s.ratio_num_e2, work2);
    if (s.ratio_div_q)
        ratio = ratio * series_inv(qpoch_inf(Rational(1), 2, 2, work2));
    Series pref = Series::monomial(Var::SqrtQ, s.pref_c, s.pref_e2,
                                   Series::kExactOrder);
    Series out = pref * d;
    for (int i = 0; i < n; ++i) out = out * ratio;
    return out.truncated(order2);
}

// ---- randomness -----------------------------------------------------------

Rational rand_rational(std::mt19937_64& eng) {
    std::uniform_int_distribution<int> d(-9, 9);
    int num = 0, den = 0;
    while (num == 0) num = d(eng);
    while (den == 0) den = d(eng);
    return make_rational(num, den);
}

// ---- shared row utilities -------------------------------------------------

std::map<std::string, std::string> param_strings(const ParamPoint& p) {
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : p) out[k] = std::to_string(v);
    return out;
}

long param(const ParamPoint& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw Error("missing parameter '" + key + "'");
    return it->second;
}

Report series_report(const std::string& id, const ParamPoint& p,
                     const std::string& mode, int order, std::uint64_t seed,
                     const Series& lhs, const Series& rhs, int cmp_order) {
    Report r;
    r.id = id;
    r.params = param_strings(p);
    r.mode = mode;
    r.order = order;
    r.seed = seed;
    auto mm = series_eq(lhs, rhs, cmp_order);
    if (!mm) {
        r.verdict = Verdict::kPass;
    } else {
        r.verdict = Verdict::kFail;
        r.witness = Witness{mm->exponent, to_string(mm->lhs), to_string(mm->rhs)};
    }
    return r;
}

Report scalar_report(const std::string& id, const ParamPoint& p,
                     const std::string& mode, int order, std::uint64_t seed,
                     const std::vector<std::pair<Scalar, Scalar>>& sides) {
    Report r;
    r.id = id;
    r.params = param_strings(p);
    r.mode = mode;
    r.order = order;
    r.seed = seed;
    r.verdict = Verdict::kPass;
    for (std::size_t i = 0; i < sides.size(); ++i) {
        if (!(sides[i].first == sides[i].second)) {
            r.verdict = Verdict::kFail;
            r.witness = Witness{static_cast<long>(i), sides[i].first.to_string(),
                                sides[i].second.to_string()};
            break;
        }
    }
    return r;
}

Report float_report(const std::string& id, const ParamPoint& p, int order,
                    std::uint64_t seed,
                    const std::vector<std::pair<Cplx, Cplx>>& sides,
                    double tol) {
    Report r;
    r.id = id;
    r.params = param_strings(p);
    r.mode = "float";
    r.order = order;
    r.seed = seed;
    r.verdict = Verdict::kPass;
    for (std::size_t i = 0; i < sides.size(); ++i) {
        const Cplx a = sides[i].first, b = sides[i].second;
        const double scale =
            std::max({1.0, std::abs(a), std::abs(b)});
        if (!(std::abs(a - b) <= tol * scale)) {
            std::ostringstream la, lb;
            la.precision(17);
            lb.precision(17);
            la << a;
            lb << b;
            r.verdict = Verdict::kFail;
            r.witness = Witness{static_cast<long>(i), la.str(), lb.str()};
            break;
        }
    }
    return r;
}

Series rr_unilateral_lhs(long delta, int order) {
    const int order2 = 2 * order;
    Series acc = Series::zero(Var::SqrtQ, order2);
    for (long m = 0; m * (m + delta) <= order; ++m) {
        const long e2 = 2 * m * (m + delta);
        PochProduct pp(static_cast<int>(order2 + std::max<long>(0, -e2)));
        pp.mul_mono(Rational(1), e2);
        pp.mul_finite(Rational(1), 2, m, -1);
        acc = acc + pp.evaluate();
    }
    return acc.truncated(order2);
}

Series epnt_product_lhs(int n, long k, int order) {
    PochProduct pp(2 * order);
    for (int i = 0; i < n; ++i) pp.mul_inf(Rational(1), 2, +1);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            pp.mul_inf(Rational(1), 2 * k * (j - i), +1);
            pp.mul_inf(Rational(1), 2 * k * (j - i + 1), -1);
        }
    }
    return pp.evaluate();
}

// ---- registry plumbing ----------------------------------------------------

const std::vector<IdentityEntry>& registry() {
    static const std::vector<IdentityEntry> rows = [] {
        std::vector<IdentityEntry> all;
        register_qseries_rows(all);
        register_exact_rows(all);
        register_elliptic_rows(all);
        static const char* const kOrder[] = {
            "jtp",
            "rr-classical",
            "gis",
            "rs-1dim",
            "rs-1dim-bilateral",
            "macd-c1",
            "macd-bc1",
            "qbinom-thm",
            "schur-alt",
            "cocycle",
            "key-lemma",
            "m-inverse",
            "elliptic-shifts-omega",
            "elliptic-shifts-m",
            "w-jackson",
            "degree-formula",
            "6phi5",
            "watson-bc",
            "watson-1dim",
            "gen-watson",
            "rs-bc",
            "rs-specialized",
            "macd-cn-spec",
            "macd-bn-minus",
            "rr-trivial-k0",
            "rr-dn",
            "rr-bn",
            "rr-det-dn",
            "rr-det-bn",
            "epnt-family",
            "epnt-6phi5-limit",
            "epnt-det-k1",
            "weyl-denominator",
            "hyperoctahedral-m",
            "hyperoctahedral-s",
        };
        std::vector<IdentityEntry> out;
        for (const char* id : kOrder) {
            auto it = std::find_if(all.begin(), all.end(),
                                   [&](const IdentityEntry& e) {
                                       return e.id == id;
                                   });
            if (it == all.end())
                throw Error(std::string("registry row not implemented: ") + id);
            out.push_back(std::move(*it));
            all.erase(it);
        }
        if (!all.empty())
            throw Error("registry row missing from presentation order: " +
                        all.front().id);
        return out;
    }();
    return rows;
}

const IdentityEntry* find_entry(const std::string& id) {
    for (const IdentityEntry& e : registry())
        if (e.id == id) return &e;
    return nullptr;
}

namespace {

ParamPoint fill_params(const IdentityEntry& e, const ParamPoint& params) {
    ParamPoint full;
    for (const ParamSpec& ps : e.schema) full[ps.key] = ps.def;
    for (const auto& [k, v] : params) {
        auto it = std::find_if(e.schema.begin(), e.schema.end(),
                               [&](const ParamSpec& ps) { return ps.key == k; });
        if (it == e.schema.end())
            throw Error("unknown parameter '" + k + "' for identity '" + e.id +
                        "'");
        if (v < it->lo || v > it->hi)
            throw Error("parameter '" + k + "' out of range [" +
                        std::to_string(it->lo) + ", " + std::to_string(it->hi) +
                        "] for identity '" + e.id + "'");
        full[k] = v;
    }
    return full;
}

Report run_point(const IdentityEntry& e, const ParamPoint& full, int order,
                 std::uint64_t seed) {
    const double t0 = now_ms();
    const int attempts = e.randomized ? 20 : 1;
    std::optional<Report> rep;
    for (int a = 0; a < attempts && !rep; ++a) {
        try {
            rep = e.check(full, order, mix_seed(seed, 1000003ULL * a));
        } catch (const PoleError&) {
            continue;
        }
    }
    if (!rep) {
        Report r;
        r.id = e.id;
        r.params = param_strings(full);
        r.mode = e.mode;
        r.order = order;
        r.seed = seed;
        r.verdict = Verdict::kPoleRetryExhausted;
        rep = r;
    }
    rep->seed = seed;
    rep->wall_ms = now_ms() - t0;
    return *rep;
}

}  // namespace

Report run_check(const std::string& id, const ParamPoint& params, int order,
                 std::uint64_t seed) {
    const IdentityEntry* e = find_entry(id);
    if (!e) throw Error("unknown identity id: '" + id + "'");
    const ParamPoint full = fill_params(*e, params);
    const int ord = order > 0 ? order : e->default_order;
    return run_point(*e, full, ord, seed);
}

std::vector<Report> run_entry_grid(const IdentityEntry& entry, int order,
                                   std::uint64_t seed) {
    const int ord = order > 0 ? order : entry.default_order;
    const int trials = entry.randomized ? std::max(1, entry.trials) : 1;
    std::vector<Report> out;
    for (std::size_t pi = 0; pi < entry.grid.size(); ++pi) {
        const ParamPoint full = fill_params(entry, entry.grid[pi]);
        for (int t = 0; t < trials; ++t)
            out.push_back(
                run_point(entry, full, ord, mix_seed(seed, pi * 1000 + t)));
    }
    return out;
}

Report aggregate_reports(const IdentityEntry& entry,
                         const std::vector<Report>& reports) {
    if (reports.empty()) throw Error("no reports to aggregate");
    auto rank = [](Verdict v) {
        switch (v) {
            case Verdict::kPass: return 0;
            case Verdict::kPoleRetryExhausted: return 1;
            case Verdict::kFail: return 2;
        }
        return 2;
    };
    const Report* pick = nullptr;
    double total = 0;
    int worst = 0;
    for (const Report& r : reports) {
        total += r.wall_ms;
        const int rr = rank(r.verdict);
        if (rr > worst) worst = rr;
        if (!pick && r.verdict != Verdict::kPass) pick = &r;
    }
    if (!pick) pick = &reports.back();
    Report out = *pick;
    out.id = entry.id;
    out.mode = entry.mode;
    out.verdict = worst == 0 ? Verdict::kPass
                  : worst == 1 ? Verdict::kPoleRetryExhausted
                               : Verdict::kFail;
    out.wall_ms = total;
    return out;
}

}  // namespace qbc
