#include "qbc/bcw.hpp"

#include <utility>

#include "qbc/errors.hpp"
#include "qbc/scalar.hpp"

namespace qbc {

WEngine::WEngine(PochCtx ctx, int n, Scalar q, Scalar t)
    : ctx_(ctx), n_(n), q_(std::move(q)), t_(std::move(t)) {
    if (n_ < 1) throw Error("rank must be at least 1");
}

Scalar WEngine::pp(const Scalar& a, const Partition& lam) const {
    return ctx_.poch_partition(a, q_, t_, lam);
}

Scalar WEngine::qpow(long e) const { return q_.pow(e); }
Scalar WEngine::tpow(long e) const { return t_.pow(e); }
Scalar WEngine::one() const { return ctx_.one_like(q_); }

void WEngine::check_rank(const Partition& lam) const {
    if (lam.num_parts() > n_)
        throw Error("partition " + lam.to_string() + " exceeds engine rank " +
                    std::to_string(n_));
}

void WEngine::require_basic(const char* what) const {
    if (ctx_.elliptic)
        throw Error(std::string(what) +
                    " is defined only in the trigonometric case");
}

std::vector<Scalar> WEngine::spectral_vector(const Partition& lam) const {
    check_rank(lam);
    std::vector<Scalar> xs;
    xs.reserve(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i)
        xs.push_back(qpow(lam.part(i)) * tpow(n_ - i));
    return xs;
}

Scalar WEngine::h_factor(const Partition& lam, const Partition& mu,
                         const Scalar& b) const {
    check_rank(lam);
    check_rank(mu);
    Scalar num = one();
    Scalar den = one();
    // Rows j = 2..n pair with every earlier row i < j; all factors for a
    // fixed j share the Pochhammer length mu_{j-1} - lam_j, so a tight pair
    // contributes nothing and is skipped outright.
    for (int j = 2; j <= n_; ++j) {
        long m = mu.part(j - 1) - lam.part(j);
        if (m == 0) continue;
        if (m < 0)
            throw Error("h_factor requires mu to interlace lam");
        for (int i = 1; i < j; ++i) {
            long mi = mu.part(i), li = lam.part(i);
            long mj1 = mu.part(j - 1), lj = lam.part(j);
            num *= ctx_.poch(qpow(mi - mj1) * tpow(j - i), q_, m);
            num *= ctx_.poch(qpow(li + lj) * tpow(3 - j - i) * b, q_, m);
            den *= ctx_.poch(qpow(mi - mj1 + 1) * tpow(j - i - 1), q_, m);
            den *= ctx_.poch(qpow(li + lj + 1) * tpow(2 - j - i) * b, q_, m);
            num *= ctx_.poch(qpow(li - mj1 + 1) * tpow(j - i - 1), q_, m);
            den *= ctx_.poch(qpow(li - mj1) * tpow(j - i), q_, m);
        }
    }
    // Second family: pairs with i < j - 1, where j runs one past the rank so
    // the tail length mu_n - lam_{n+1} = mu_n also contributes.
    for (int j = 3; j <= n_ + 1; ++j) {
        long m = mu.part(j - 1) - lam.part(j);
        if (m == 0) continue;
        if (m < 0)
            throw Error("h_factor requires mu to interlace lam");
        for (int i = 1; i <= j - 2; ++i) {
            long mi = mu.part(i), lj = lam.part(j);
            num *= ctx_.poch(qpow(mi + lj + 1) * tpow(1 - j - i) * b, q_, m);
            den *= ctx_.poch(qpow(mi + lj) * tpow(2 - j - i) * b, q_, m);
        }
    }
    return num / den;
}

namespace {

// Shared row product of the skew kernel: for each row i,
// theta(b t^{1-2i} q^{2 mu_i}) / theta(b t^{1-2i})
//   * (b t^{1-2i})_{mu_i + lam_{i+1}} / (b q t^{-2i})_{mu_i + lam_{i+1}}
//   * t^{i (mu_i - lam_{i+1})}.
// Rows with mu_i = lam_{i+1} = 0 are neutral; the theta ratio is exactly 1
// whenever mu_i = 0 and is skipped then (evaluating it could manufacture a
// spurious 0/0).
Scalar skew_row_product(const WEngine& eng, const Partition& lam,
                        const Partition& mu, const Scalar& b,
                        bool with_b_parts) {
    const PochCtx& ctx = eng.ctx();
    const Scalar& q = eng.q();
    const Scalar& t = eng.t();
    Scalar num = ctx.one_like(q);
    Scalar den = ctx.one_like(q);
    for (int i = 1; i <= eng.rank(); ++i) {
        long mi = mu.part(i);
        long li1 = lam.part(i + 1);
        if (mi == 0 && li1 == 0) continue;
        if (with_b_parts) {
            if (mi != 0) {
                num *= ctx.theta(b * t.pow(1 - 2 * i) * q.pow(2 * mi));
                den *= ctx.theta(b * t.pow(1 - 2 * i));
            }
            num *= ctx.poch(b * t.pow(1 - 2 * i), q, mi + li1);
            den *= ctx.poch(b * q * t.pow(-2 * i), q, mi + li1);
        }
        num *= t.pow(static_cast<long>(i) * (mi - li1));
    }
    return num / den;
}

}  // namespace

Scalar WEngine::w_skew(const Partition& lam, const Partition& mu,
                       const Scalar& x, const Scalar& a,
                       const Scalar& b) const {
    check_rank(lam);
    check_rank(mu);
    if (!horizontal_strip(lam, mu)) return zero_like(x);
    Scalar xi = x.inverse();
    Scalar num = pp(xi, lam) * pp(a * x, lam);
    num *= pp(q_ * b * x / t_, mu) * pp(q_ * b / (a * x * t_), mu);
    Scalar den = pp(xi, mu) * pp(a * x, mu);
    den *= pp(q_ * b * x, lam) * pp(q_ * b / (a * x), lam);
    Scalar rows = skew_row_product(*this, lam, mu, b, true);
    return h_factor(lam, mu, b) * num * rows / den;
}

Scalar WEngine::multi_rec(const Partition& lam, const Partition& mu,
                          const std::vector<Scalar>& xs, std::size_t k,
                          const Scalar& a, const Scalar& b,
                          std::map<std::string, Scalar>& local) {
    const std::size_t m = xs.size();
    if (k == m) return lam == mu ? one() : zero_like(one());
    std::string key = std::to_string(k) + "|" + lam.to_string();
    auto it = local.find(key);
    if (it != local.end()) return it->second;
    const long l = static_cast<long>(m - k - 1);
    Scalar x1 = xs[k] * tpow(-l);
    Scalar a1 = a * tpow(2 * l);
    Scalar b1 = b * tpow(l);
    Scalar acc = zero_like(one());
    for (const Partition& nu : strips_below(lam)) {
        if (!contains(nu, mu)) continue;
        Scalar tail = multi_rec(nu, mu, xs, k + 1, a, b, local);
        if (tail.is_zero()) continue;
        acc += w_skew(lam, nu, x1, a1, b1) * tail;
    }
    local.emplace(std::move(key), acc);
    return acc;
}

Scalar WEngine::w_multi(const Partition& lam, const Partition& mu,
                        const std::vector<Scalar>& xs, const Scalar& a,
                        const Scalar& b) {
    check_rank(lam);
    check_rank(mu);
    std::map<std::string, Scalar> local;
    return multi_rec(lam, mu, xs, 0, a, b, local);
}

Scalar WEngine::w_principal(const Partition& mu, const Partition& lam,
                            const Scalar& a, const Scalar& b) {
    check_rank(mu);
    check_rank(lam);
    if (!contains(lam, mu)) return zero_like(one());
    std::string key = "P|" + mu.to_string() + lam.to_string() + "|" +
                      a.to_string() + "|" + b.to_string();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Scalar v = w_multi(mu, Partition(), spectral_vector(lam), a, b);
    memo_.emplace(std::move(key), v);
    return v;
}

Scalar WEngine::w_skew_a0(const Partition& lam, const Partition& mu,
                          const Scalar& x, const Scalar& B) const {
    require_basic("the normalized a -> 0 kernel");
    check_rank(lam);
    check_rank(mu);
    if (!horizontal_strip(lam, mu)) return zero_like(x);
    PartitionStats sl = stats(lam);
    PartitionStats sm = stats(mu);
    Scalar xi = x.inverse();
    Scalar num = pp(xi, lam) * pp(q_ * B * x / t_, mu);
    Scalar den = pp(xi, mu) * pp(q_ * B * x, lam);
    // Limit of a^{|mu|-|lam|} (q B/(a x t))_mu / (q B/(a x))_lam under the
    // rule lim a^{|nu|} (y/a)_nu = (-y)^{|nu|} t^{-n(nu)} q^{n(nu')}.
    Scalar g = (q_ * B).pow(sm.weight - sl.weight) *
               x.pow(sl.weight - sm.weight) *
               tpow(-sm.weight - sm.n_stat + sl.n_stat) *
               qpow(sm.n_conj_stat - sl.n_conj_stat);
    if ((sl.weight + sm.weight) % 2 != 0) g = -g;
    Scalar rows = skew_row_product(*this, lam, mu, B, true);
    return h_factor(lam, mu, B) * num * g * rows / den;
}

Scalar WEngine::a0_rec(const Partition& lam, const Partition& mu,
                       const std::vector<Scalar>& xs, std::size_t k,
                       const Scalar& B, std::map<std::string, Scalar>& local) {
    const std::size_t m = xs.size();
    if (k == m) return lam == mu ? one() : zero_like(one());
    std::string key = std::to_string(k) + "|" + lam.to_string();
    auto it = local.find(key);
    if (it != local.end()) return it->second;
    const long l = static_cast<long>(m - k - 1);
    Scalar x1 = xs[k] * tpow(-l);
    Scalar B1 = B * tpow(l);
    Scalar acc = zero_like(one());
    for (const Partition& nu : strips_below(lam)) {
        if (!contains(nu, mu)) continue;
        Scalar tail = a0_rec(nu, mu, xs, k + 1, B, local);
        if (tail.is_zero()) continue;
        // Re-expressing the local normalization of each kernel in terms of
        // the global a-parameter leaves t^{2 l (|lam| - |nu|)} behind.
        acc += tpow(2 * l * (weight(lam) - weight(nu))) *
               w_skew_a0(lam, nu, x1, B1) * tail;
    }
    local.emplace(std::move(key), acc);
    return acc;
}

Scalar WEngine::w_multi_a0(const Partition& lam, const Partition& mu,
                           const std::vector<Scalar>& xs, const Scalar& B) {
    require_basic("the normalized a -> 0 regime");
    check_rank(lam);
    check_rank(mu);
    std::map<std::string, Scalar> local;
    Scalar hat = a0_rec(lam, mu, xs, 0, B, local);
    return (B * tpow(1 - n_)).pow(weight(lam) - weight(mu)) * hat;
}

Scalar WEngine::w_principal_a0(const Partition& mu, const Partition& lam,
                               const Scalar& B) {
    require_basic("the normalized a -> 0 regime");
    check_rank(mu);
    check_rank(lam);
    if (!contains(lam, mu)) return zero_like(one());
    std::string key = "A|" + mu.to_string() + lam.to_string() + "|" +
                      B.to_string();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Scalar v = w_multi_a0(mu, Partition(), spectral_vector(lam), B);
    memo_.emplace(std::move(key), v);
    return v;
}

Scalar WEngine::w_skew_ratio(const Partition& lam, const Partition& mu,
                             const Scalar& x, const Scalar& c) const {
    require_basic("the fixed-ratio kernel");
    check_rank(lam);
    check_rank(mu);
    if (!horizontal_strip(lam, mu)) return zero_like(x);
    Scalar xi = x.inverse();
    Scalar num = pp(xi, lam) * pp(q_ * c / (x * t_), mu);
    Scalar den = pp(xi, mu) * pp(q_ * c / x, lam);
    Scalar rows = skew_row_product(*this, lam, mu, zero_like(x), false);
    return h_factor(lam, mu, zero_like(x)) * num * rows / den;
}

Scalar WEngine::ratio_rec(const Partition& lam, const Partition& mu,
                          const std::vector<Scalar>& xs, std::size_t k,
                          const Scalar& c,
                          std::map<std::string, Scalar>& local) {
    const std::size_t m = xs.size();
    if (k == m) return lam == mu ? one() : zero_like(one());
    std::string key = std::to_string(k) + "|" + lam.to_string();
    auto it = local.find(key);
    if (it != local.end()) return it->second;
    const long l = static_cast<long>(m - k - 1);
    Scalar x1 = xs[k] * tpow(-l);
    Scalar c1 = c * tpow(-l);  // (b t^l) / (a t^{2l}) shifts the ratio down
    Scalar acc = zero_like(one());
    for (const Partition& nu : strips_below(lam)) {
        if (!contains(nu, mu)) continue;
        Scalar tail = ratio_rec(nu, mu, xs, k + 1, c, local);
        if (tail.is_zero()) continue;
        acc += w_skew_ratio(lam, nu, x1, c1) * tail;
    }
    local.emplace(std::move(key), acc);
    return acc;
}

Scalar WEngine::w_multi_ratio(const Partition& lam, const Partition& mu,
                              const std::vector<Scalar>& xs, const Scalar& c) {
    require_basic("the fixed-ratio regime");
    check_rank(lam);
    check_rank(mu);
    std::map<std::string, Scalar> local;
    return ratio_rec(lam, mu, xs, 0, c, local);
}

Scalar WEngine::w_principal_ratio(const Partition& mu, const Partition& lam,
                                  const Scalar& c) {
    require_basic("the fixed-ratio regime");
    check_rank(mu);
    check_rank(lam);
    if (!contains(lam, mu)) return zero_like(one());
    std::string key = "R|" + mu.to_string() + lam.to_string() + "|" +
                      c.to_string();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Scalar v = w_multi_ratio(mu, Partition(), spectral_vector(lam), c);
    memo_.emplace(std::move(key), v);
    return v;
}

Scalar WEngine::omega(const Partition& lam, const Partition& mu,
                      const Scalar& x, const Scalar& r, const Scalar& a,
                      const Scalar& b) {
    check_rank(lam);
    check_rank(mu);
    if (!contains(lam, mu)) return zero_like(one());
    Scalar ri = r.inverse();
    Scalar xi = x.inverse();
    Scalar num = pp(xi, lam) * pp(a * x, lam);
    Scalar den = pp(q_ * b * x, lam) * pp(q_ * b / (a * x), lam);
    num *= pp(q_ * b * ri * x, mu) * pp(q_ * b / (a * x * r), mu);
    den *= pp(xi, mu) * pp(a * x, mu);
    num *= pp(r, mu) * pp(b * ri * tpow(1 - n_), mu);
    den *= pp(q_ * b * ri * ri, mu) * pp(q_ * tpow(n_ - 1), mu);
    for (int i = 1; i <= n_; ++i) {
        long mi = mu.part(i);
        if (mi == 0) break;
        num *= ctx_.theta(b * ri * tpow(2 - 2 * i) * qpow(2 * mi));
        den *= ctx_.theta(b * ri * tpow(2 - 2 * i));
        num *= (q_ * tpow(2 * i - 2)).pow(mi);
    }
    for (int i = 1; i < n_; ++i) {
        long mi = mu.part(i);
        if (mi == 0) break;
        for (int j = i + 1; j <= n_; ++j) {
            long mj = mu.part(j);
            num *= ctx_.poch(q_ * tpow(j - i), q_, mi - mj);
            den *= ctx_.poch(q_ * tpow(j - i - 1), q_, mi - mj);
            num *= ctx_.poch(b * ri * tpow(3 - i - j), q_, mi + mj);
            den *= ctx_.poch(b * ri * tpow(2 - i - j), q_, mi + mj);
        }
    }
    Scalar w = w_principal(mu, lam, b * tpow(2 - 2 * n_), b * ri * tpow(1 - n_));
    return num * w / den;
}

Scalar WEngine::omega_multi(const Partition& lam, const Partition& mu,
                            const std::vector<Scalar>& xs, const Scalar& r,
                            const Scalar& a, const Scalar& b) {
    check_rank(lam);
    check_rank(mu);
    if (xs.empty()) return lam == mu ? one() : zero_like(one());
    if (xs.size() == 1) return omega(lam, mu, xs[0], r, a, b);
    const long k = static_cast<long>(xs.size()) - 1;
    Scalar x1 = r.pow(-k) * xs[0];
    Scalar a1 = a * r.pow(2 * k);
    Scalar b1 = b * r.pow(k);
    std::vector<Scalar> rest(xs.begin() + 1, xs.end());
    Scalar acc = zero_like(one());
    for (const Partition& nu : partitions_in_box(n_, lam.part(1))) {
        if (!contains(lam, nu) || !contains(nu, mu)) continue;
        Scalar tail = omega_multi(nu, mu, rest, r, a, b);
        if (tail.is_zero()) continue;
        acc += omega(lam, nu, x1, r, a1, b1) * tail;
    }
    return acc;
}

Scalar WEngine::degree_formula(const Partition& mu, const Scalar& x,
                               const Scalar& a, const Scalar& b) const {
    require_basic("the closed degree evaluation");
    check_rank(mu);
    Scalar num = pp(x.inverse(), mu) * pp(a * x * tpow(n_ - 1), mu);
    Scalar den = pp(q_ * b * x * tpow(n_ - 1), mu) * pp(q_ * b / (a * x), mu);
    for (int i = 1; i < n_; ++i) {
        long mi = mu.part(i);
        if (mi == 0) break;
        for (int j = i + 1; j <= n_; ++j) {
            long mj = mu.part(j);
            num *= ctx_.poch(tpow(j - i + 1), q_, mi - mj);
            den *= ctx_.poch(tpow(j - i), q_, mi - mj);
            num *= ctx_.poch(q_ * b * tpow(n_ - i - j + 1), q_, mi + mj);
            den *= ctx_.poch(q_ * b * tpow(n_ - i - j), q_, mi + mj);
        }
    }
    return num / den;
}

}  // namespace qbc
