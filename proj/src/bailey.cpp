#include "qbc/bailey.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <utility>

#include "qbc/errors.hpp"

namespace qbc {

namespace {

/// Value-level comparison of two scalars from the same ring.  Returns true
/// when they agree (exactly for rationals; coefficient-by-coefficient up to
/// the shared reliable order for series).  On disagreement fills `wit` with
/// the first differing exponent and the two coefficients.
bool entries_agree(const Scalar& x, const Scalar& y, Witness* wit) {
    if (x.is_rational() && y.is_rational()) {
        if (x == y) return true;
        if (wit) {
            wit->exponent = 0;
            wit->lhs = to_string(x.rational());
            wit->rhs = to_string(y.rational());
        }
        return false;
    }
    if (x.is_series() && y.is_series()) {
        const Series& a = x.series();
        const Series& b = y.series();
        long hi = std::min(a.order(), b.order());
        long stored = std::max(a.is_zero() ? 0 : a.min_exp() + 50,
                               b.is_zero() ? 0 : b.min_exp() + 50);
        if (hi > stored) hi = stored;
        auto mm = series_eq(a, b, static_cast<int>(hi));
        if (!mm) return true;
        if (wit) {
            wit->exponent = mm->exponent;
            wit->lhs = to_string(mm->lhs);
            wit->rhs = to_string(mm->rhs);
        }
        return false;
    }
    if (x.is_float() && y.is_float()) {
        if (almost_equal(x.cplx(), y.cplx(), 1e-9)) return true;
        if (wit) {
            wit->exponent = 0;
            wit->lhs = x.to_string();
            wit->rhs = y.to_string();
        }
        return false;
    }
    throw Error("cannot compare scalars from different rings");
}

/// Millisecond wall-clock stopwatch for report timing.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

// ---------------------------------------------------------------------------
// PartitionMatrix
// ---------------------------------------------------------------------------

PartitionMatrix::PartitionMatrix(int n, int k, const Scalar& fill)
    : n_(n), k_(k), box_(partitions_in_box(n, k)) {
    a_.assign(box_.size() * box_.size(), fill);
}

PartitionMatrix PartitionMatrix::identity(int n, int k, const Scalar& one) {
    PartitionMatrix m(n, k, zero_like(one));
    for (int i = 0; i < m.rows(); ++i) m.at(i, i) = one;
    return m;
}

int PartitionMatrix::index_of(const Partition& p) const {
    for (std::size_t i = 0; i < box_.size(); ++i)
        if (box_[i] == p) return static_cast<int>(i);
    throw Error("partition " + p.to_string() + " outside the index box");
}

Scalar& PartitionMatrix::at(int i, int j) {
    if (i < 0 || j < 0 || i >= rows() || j >= rows())
        throw Error("matrix index outside the box");
    return a_[static_cast<std::size_t>(i) * box_.size() + j];
}

const Scalar& PartitionMatrix::at(int i, int j) const {
    if (i < 0 || j < 0 || i >= rows() || j >= rows())
        throw Error("matrix index outside the box");
    return a_[static_cast<std::size_t>(i) * box_.size() + j];
}

Scalar& PartitionMatrix::at(const Partition& lam, const Partition& mu) {
    return at(index_of(lam), index_of(mu));
}

const Scalar& PartitionMatrix::at(const Partition& lam,
                                  const Partition& mu) const {
    return at(index_of(lam), index_of(mu));
}

PartitionMatrix PartitionMatrix::operator*(const PartitionMatrix& o) const {
    if (n_ != o.n_ || k_ != o.k_)
        throw Error("matrix product requires matching index boxes");
    PartitionMatrix out(n_, k_, zero_like(a_.front()));
    const int m = rows();
    for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l) {
            const Scalar& ail = at(i, l);
            if (ail.is_zero()) continue;
            for (int j = 0; j < m; ++j) {
                const Scalar& blj = o.at(l, j);
                if (blj.is_zero()) continue;
                out.at(i, j) += ail * blj;
            }
        }
    return out;
}

std::map<Partition, Scalar> PartitionMatrix::apply(
    const std::map<Partition, Scalar>& vec) const {
    std::map<Partition, Scalar> out;
    const int m = rows();
    for (int i = 0; i < m; ++i) {
        Scalar acc = zero_like(a_.front());
        for (int j = 0; j < m; ++j) {
            const Scalar& mij = at(i, j);
            if (mij.is_zero()) continue;
            auto it = vec.find(box_[j]);
            if (it == vec.end())
                throw Error("vector is missing entry " + box_[j].to_string());
            acc += mij * it->second;
        }
        out[box_[i]] = acc;
    }
    return out;
}

bool PartitionMatrix::lower_triangular() const {
    const int m = rows();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!contains(box_[i], box_[j]) && !at(i, j).is_zero())
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// BaileyEngine: scalar entries
// ---------------------------------------------------------------------------

BaileyEngine::BaileyEngine(PochCtx ctx, int n, Scalar q, Scalar t)
    : w_(std::move(ctx), n, std::move(q), std::move(t)) {}

void BaileyEngine::require_basic(const char* what) const {
    if (ctx().elliptic)
        throw Error(std::string(what) +
                    " is defined only in the trigonometric case");
}

Scalar BaileyEngine::pp(const Scalar& a, const Partition& lam) const {
    return ctx().poch_partition(a, q(), t(), lam);
}

Scalar BaileyEngine::one() const { return ctx().one_like(q()); }

Scalar BaileyEngine::theta_row_ratio(const Partition& mu,
                                     const Scalar& b) const {
    Scalar acc = one();
    for (int i = 1; i <= rank(); ++i) {
        long mi = mu.part(i);
        if (mi == 0) break;
        Scalar x = b * t().pow(2 - 2 * i);
        acc *= ctx().theta(x * q().pow(2 * mi)) / ctx().theta(x);
    }
    return acc;
}

Scalar BaileyEngine::pair_products(const Partition& mu, const Scalar& b) const {
    Scalar acc = one();
    for (int i = 1; i < rank(); ++i) {
        if (mu.part(i) == 0) break;
        for (int j = i + 1; j <= rank(); ++j) {
            long d = mu.part(i) - mu.part(j);
            long s = mu.part(i) + mu.part(j);
            acc *= ctx().poch(q() * t().pow(j - i), q(), d) *
                   ctx().poch(b * t().pow(3 - i - j), q(), s);
            acc /= ctx().poch(q() * t().pow(j - i - 1), q(), d) *
                   ctx().poch(b * t().pow(2 - i - j), q(), s);
        }
    }
    return acc;
}

Scalar BaileyEngine::k_factor(const Partition& mu, const Scalar& b) const {
    PartitionStats sm = stats(mu);
    Scalar acc = q().pow(sm.weight) * t().pow(2 * sm.n_stat);
    acc *= pp(b * t().pow(1 - rank()), mu) / pp(q() * t().pow(rank() - 1), mu);
    acc *= theta_row_ratio(mu, b);
    acc *= pair_products(mu, b);
    return acc;
}

Scalar BaileyEngine::l_factor(const Partition& mu, const Scalar& b) const {
    PartitionStats sm = stats(mu);
    Scalar acc = q().pow(2 * sm.weight + sm.n_conj_stat) * t().pow(sm.n_stat);
    if (sm.weight % 2 != 0) acc = -acc;
    acc *= pp(b * t().pow(1 - rank()), mu) / pp(q() * t().pow(rank() - 1), mu);
    acc *= pair_products(mu, b);
    return acc;
}

Scalar BaileyEngine::m_ab(const Partition& lam, const Partition& mu,
                          const Scalar& a, const Scalar& b) {
    const int n = rank();
    Scalar acc = b.pow(weight(lam)) * pp(a / b, lam) /
                 (pp(q() * b, lam) * a.pow(weight(mu)));
    acc *= k_factor(mu, b);
    acc *= w_.w_principal(mu, lam, a * t().pow(2 - 2 * n), b * t().pow(1 - n));
    return acc;
}

Scalar BaileyEngine::s_diag(const Partition& lam, const Scalar& b,
                            const Scalar& sigma, const Scalar& rho) const {
    Scalar qb = q() * b;
    Scalar acc = pp(sigma, lam) * pp(rho, lam);
    acc /= pp(qb / sigma, lam) * pp(qb / rho, lam);
    acc *= (qb / (rho * sigma)).pow(weight(lam));
    return acc;
}

Scalar BaileyEngine::m_b(const Partition& lam, const Partition& mu,
                         const Scalar& b) {
    require_basic("the one-parameter matrix entry");
    return l_factor(mu, b) *
           w_.w_principal_a0(mu, lam, b * t().pow(1 - rank()));
}

Scalar BaileyEngine::m_b_inv(const Partition& lam, const Partition& mu,
                             const Scalar& b) {
    require_basic("the inverse matrix entry");
    const int n = rank();
    PartitionStats sm = stats(mu);
    Scalar acc = q().pow(sm.weight - weight(lam)) * t().pow(2 * sm.n_stat);
    acc /= pp(q() * b, mu) * pp(q() * t().pow(n - 1), mu);
    for (int i = 1; i <= n; ++i) {
        long li = lam.part(i);
        if (li == 0) break;
        Scalar x = b * t().pow(2 - 2 * i);
        acc *= (one() - x * q().pow(2 * li)) / (one() - x);
    }
    for (int i = 1; i < n; ++i) {
        if (mu.part(i) == 0) break;
        for (int j = i + 1; j <= n; ++j) {
            long d = mu.part(i) - mu.part(j);
            acc *= ctx().poch(q() * t().pow(j - i), q(), d) /
                   ctx().poch(q() * t().pow(j - i - 1), q(), d);
        }
    }
    acc *= w_.w_principal(mu, lam, b * t().pow(2 - 2 * n), zero_like(b));
    return acc;
}

Scalar BaileyEngine::n_b(const Partition& lam, const Partition& mu,
                         const Scalar& b, const Scalar& sigma,
                         const Scalar& rho) {
    require_basic("the convolution matrix entry");
    const int n = rank();
    PartitionStats sm = stats(mu);
    Scalar qb = q() * b;
    // Coupled point sigma rho = q b: the diagonal factor is identically one,
    // so the matrix is the identity, but the entry formula becomes 0/0
    // (a vanishing shifted factorial against a divergent limit value).
    if (sigma * rho == qb) return lam == mu ? one() : zero_like(q());
    Scalar acc = q().pow(sm.weight) * t().pow(2 * sm.n_stat);
    acc *= pp(qb, lam) * pp(qb / (rho * sigma), lam);
    acc /= pp(qb / sigma, lam) * pp(qb / rho, lam);
    acc *= pp(sigma, mu) * pp(rho, mu);
    acc /= pp(qb, mu) * pp(q() * t().pow(n - 1), mu);
    for (int i = 1; i < n; ++i) {
        if (mu.part(i) == 0) break;
        for (int j = i + 1; j <= n; ++j) {
            long d = mu.part(i) - mu.part(j);
            acc *= ctx().poch(q() * t().pow(j - i), q(), d) /
                   ctx().poch(q() * t().pow(j - i - 1), q(), d);
        }
    }
    acc *= w_.w_principal_ratio(mu, lam, rho * sigma * t().pow(n - 1) / qb);
    return acc;
}

Scalar BaileyEngine::unit_alpha(const Partition& lam, const Scalar& b) const {
    Scalar acc = q().pow(-weight(lam));
    for (int i = 1; i <= rank(); ++i) {
        long li = lam.part(i);
        if (li == 0) break;
        Scalar x = b * t().pow(2 - 2 * i);
        acc *= (one() - x * q().pow(2 * li)) / (one() - x);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// BaileyEngine: materialized matrices
// ---------------------------------------------------------------------------

PartitionMatrix BaileyEngine::matrix_m_ab(int k, const Scalar& a,
                                          const Scalar& b) {
    if (a == b) return PartitionMatrix::identity(rank(), k, one());
    PartitionMatrix m(rank(), k, zero_like(q()));
    for (const Partition& lam : m.box())
        for (const Partition& mu : m.box())
            if (contains(lam, mu)) m.at(lam, mu) = m_ab(lam, mu, a, b);
    return m;
}

PartitionMatrix BaileyEngine::matrix_s(int k, const Scalar& b,
                                       const Scalar& sigma,
                                       const Scalar& rho) const {
    PartitionMatrix m(rank(), k, zero_like(q()));
    for (const Partition& lam : m.box())
        m.at(lam, lam) = s_diag(lam, b, sigma, rho);
    return m;
}

PartitionMatrix BaileyEngine::matrix_s_inv(int k, const Scalar& b,
                                           const Scalar& sigma,
                                           const Scalar& rho) const {
    PartitionMatrix m(rank(), k, zero_like(q()));
    for (const Partition& lam : m.box())
        m.at(lam, lam) = s_diag(lam, b, sigma, rho).inverse();
    return m;
}

PartitionMatrix BaileyEngine::matrix_m_b(int k, const Scalar& b) {
    PartitionMatrix m(rank(), k, zero_like(q()));
    for (const Partition& lam : m.box())
        for (const Partition& mu : m.box())
            if (contains(lam, mu)) m.at(lam, mu) = m_b(lam, mu, b);
    return m;
}

PartitionMatrix BaileyEngine::matrix_m_b_inv(int k, const Scalar& b) {
    PartitionMatrix m(rank(), k, zero_like(q()));
    for (const Partition& lam : m.box())
        for (const Partition& mu : m.box())
            if (contains(lam, mu)) m.at(lam, mu) = m_b_inv(lam, mu, b);
    return m;
}

PartitionMatrix BaileyEngine::matrix_n_b(int k, const Scalar& b,
                                         const Scalar& sigma,
                                         const Scalar& rho) {
    PartitionMatrix m(rank(), k, zero_like(q()));
    for (const Partition& lam : m.box())
        for (const Partition& mu : m.box())
            if (contains(lam, mu)) m.at(lam, mu) = n_b(lam, mu, b, sigma, rho);
    return m;
}

PartitionMatrix BaileyEngine::matrix_n_b_inv(int k, const Scalar& b,
                                             const Scalar& sigma,
                                             const Scalar& rho) {
    return matrix_m_b(k, b) * matrix_s_inv(k, b, sigma, rho) *
           matrix_m_b_inv(k, b);
}

// ---------------------------------------------------------------------------
// BaileyEngine: structured checks
// ---------------------------------------------------------------------------

Report BaileyEngine::key_lemma_check(const Scalar& a, const Scalar& b,
                                     const Scalar& c, const Scalar& sigma,
                                     int box_k) {
    Stopwatch watch;
    Report rep;
    rep.id = "key-lemma";
    rep.mode = ctx().elliptic ? "p-series" : "exact-rational";
    rep.order = ctx().elliptic ? ctx().p_order : 0;
    rep.params = {
        {"a", a.to_string()},
        {"b", b.to_string()},
        {"c", c.to_string()},
        {"sigma", sigma.to_string()},
        {"box", std::to_string(rank()) + "x" + std::to_string(box_k)}};
    Scalar rho = q() * a * b / (c * sigma);
    PartitionMatrix lhs = matrix_s_inv(box_k, a, sigma, rho) *
                          matrix_m_ab(box_k, c, a) *
                          matrix_s(box_k, a, sigma, rho);
    PartitionMatrix rhs = matrix_s_inv(box_k, b, sigma, rho) *
                          matrix_m_ab(box_k, c, b) *
                          matrix_s(box_k, b, sigma, rho) *
                          matrix_m_ab(box_k, b, a);
    for (const Partition& lam : lhs.box())
        for (const Partition& mu : lhs.box()) {
            Witness wit;
            if (!entries_agree(lhs.at(lam, mu), rhs.at(lam, mu), &wit)) {
                rep.verdict = Verdict::kFail;
                rep.params["row"] = lam.to_string();
                rep.params["col"] = mu.to_string();
                rep.witness = wit;
                rep.wall_ms = watch.ms();
                return rep;
            }
        }
    rep.verdict = Verdict::kPass;
    rep.wall_ms = watch.ms();
    return rep;
}

Report BaileyEngine::elliptic_shift_check(const Scalar& a, const Scalar& b,
                                          int box_k) {
    Stopwatch watch;
    Report rep;
    rep.id = "elliptic-shifts-m";
    rep.mode = "p-series";
    rep.order = ctx().p_order;
    rep.params = {
        {"a", a.to_string()},
        {"b", b.to_string()},
        {"box", std::to_string(rank()) + "x" + std::to_string(box_k)}};
    if (!ctx().elliptic)
        throw Error("the quasi-periodicity check needs an elliptic context");
    Scalar p{Series::monomial(Var::P, Rational(1), 1)};

    auto fail = [&](const Partition& lam, const Partition& mu,
                    const char* law, const Witness& wit) {
        rep.verdict = Verdict::kFail;
        rep.params["row"] = lam.to_string();
        rep.params["col"] = mu.to_string();
        rep.params["law"] = law;
        rep.witness = wit;
        rep.wall_ms = watch.ms();
        return rep;
    };

    for (const Partition& lam : partitions_in_box(rank(), box_k))
        for (const Partition& mu : partitions_in_box(rank(), box_k)) {
            if (!contains(lam, mu)) continue;
            PartitionStats sl = stats(lam), sm = stats(mu);
            Scalar base = m_ab(lam, mu, a, b);

            // First argument multiplied by the nome.
            Scalar pref1 = b.pow(sl.weight - sm.weight) * a.pow(-sl.weight) *
                           t().pow(sl.n_stat + 2 * sm.n_stat) *
                           q().pow(-sm.weight - sl.n_conj_stat -
                                   2 * sm.n_conj_stat);
            if (sl.weight % 2 != 0) pref1 = -pref1;
            Witness wit;
            if (!entries_agree(m_ab(lam, mu, p * a, b), pref1 * base, &wit))
                return fail(lam, mu, "first-argument", wit);

            // Both arguments multiplied by the nome.
            Scalar pref2 = b.pow(sl.weight) * a.pow(-sm.weight) *
                           p.pow(sl.weight - sm.weight) *
                           q().pow(sl.weight - sm.weight + sl.n_conj_stat -
                                   sm.n_conj_stat) *
                           t().pow(sm.n_stat - sl.n_stat);
            if ((sl.weight + sm.weight) % 2 != 0) pref2 = -pref2;
            if (!entries_agree(m_ab(lam, mu, p * a, p * b), pref2 * base,
                               &wit))
                return fail(lam, mu, "both-arguments", wit);
        }
    rep.verdict = Verdict::kPass;
    rep.wall_ms = watch.ms();
    return rep;
}

// ---------------------------------------------------------------------------
// BaileyEngine: pairs and chain moves
// ---------------------------------------------------------------------------

BaileyPair BaileyEngine::unit_pair(int k, const Scalar& b) {
    BaileyPair pr;
    pr.rel_params = "(" + b.to_string() + ")";
    for (const Partition& lam : partitions_in_box(rank(), k)) {
        pr.alpha[lam] = unit_alpha(lam, b);
        pr.beta[lam] = lam.empty() ? one() : zero_like(q());
    }
    return pr;
}

BaileyPair BaileyEngine::bailey_step_one(const BaileyPair& pair,
                                         const Scalar& sigma,
                                         const Scalar& rho, const Scalar& b,
                                         int box_k) {
    BaileyPair out;
    out.rel_params = pair.rel_params;
    out.alpha = matrix_s(box_k, b, sigma, rho).apply(pair.alpha);
    out.beta = matrix_n_b(box_k, b, sigma, rho).apply(pair.beta);
    return out;
}

BaileyPair BaileyEngine::bailey_step_two(const BaileyPair& pair,
                                         const Scalar& a1, const Scalar& b1,
                                         const Scalar& a2, const Scalar& b2,
                                         const Scalar& sigma, int box_k) {
    Scalar rho = q() * a1 * b1 / (a2 * sigma);
    BaileyPair out;
    out.rel_params = "(" + b2.to_string() + "," + a2.to_string() + ")";

    auto v = matrix_s(box_k, a1, sigma, rho).apply(pair.alpha);
    v = matrix_m_ab(box_k, a2, a1).apply(v);
    out.alpha = matrix_s_inv(box_k, a1, sigma, rho).apply(v);

    auto w = matrix_s(box_k, b1, sigma, rho).apply(pair.beta);
    w = matrix_m_ab(box_k, a2, b1).apply(w);
    w = matrix_s_inv(box_k, b1, sigma, rho).apply(w);
    out.beta = matrix_m_ab(box_k, b2, a2).apply(w);
    return out;
}

BaileyPair BaileyEngine::chain_walk(const BaileyPair& pair,
                                    const std::vector<WalkMove>& moves,
                                    const Scalar& b, const Scalar& sigma,
                                    const Scalar& rho, int box_k) {
    BaileyPair state = pair;
    std::optional<PartitionMatrix> s, s_inv, n, n_inv, m, m_inv;
    for (WalkMove mv : moves) switch (mv) {
            case WalkMove::kS:
                if (!s) s = matrix_s(box_k, b, sigma, rho);
                state.alpha = s->apply(state.alpha);
                break;
            case WalkMove::kSInv:
                if (!s_inv) s_inv = matrix_s_inv(box_k, b, sigma, rho);
                state.alpha = s_inv->apply(state.alpha);
                break;
            case WalkMove::kN:
                if (!n) n = matrix_n_b(box_k, b, sigma, rho);
                state.beta = n->apply(state.beta);
                break;
            case WalkMove::kNInv:
                if (!n_inv) n_inv = matrix_n_b_inv(box_k, b, sigma, rho);
                state.beta = n_inv->apply(state.beta);
                break;
            case WalkMove::kM:
                if (!m) m = matrix_m_b(box_k, b);
                state.beta = m->apply(state.alpha);
                break;
            case WalkMove::kMInv:
                if (!m_inv) m_inv = matrix_m_b_inv(box_k, b);
                state.alpha = m_inv->apply(state.beta);
                break;
        }
    return state;
}

}  // namespace qbc
