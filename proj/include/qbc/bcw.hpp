#pragma once

#include <map>
#include <string>
#include <vector>

#include "qbc/partition.hpp"
#include "qbc/qfact.hpp"

namespace qbc {

/// Evaluator for the rank-n family of W functions: a one-variable skew
/// kernel indexed by a pair of interlacing partitions, extended to several
/// variables by a branching recursion, together with its principal
/// (spectral-vector) specializations, the associated Jackson coefficients
/// omega, and the degenerate parameter regimes reached by sending one of
/// the two Askey-Wilson-type parameters (a, b) to zero.
///
/// All evaluation is ring-generic over Scalar (exact rationals, truncated
/// series, or complex floats) and dispatches trigonometric versus elliptic
/// Pochhammer symbols through the PochCtx passed at construction.  Partition
/// Pochhammers follow the convention (a; q, p, t)_lam = prod_i
/// (a t^{1-i}; q, p)_{lam_i}.
///
/// The engine memoizes principal evaluations keyed by (function kind, both
/// partitions, parameter fingerprint); one engine instance is meant to live
/// for the duration of one verification run and is not thread-safe, so use
/// one instance per worker.
class WEngine {
public:
    /// n bounds the number of parts of every partition handled by this
    /// engine; q and t must live in the same scalar ring.
    WEngine(PochCtx ctx, int n, Scalar q, Scalar t);

    int rank() const { return n_; }
    const Scalar& q() const { return q_; }
    const Scalar& t() const { return t_; }
    const PochCtx& ctx() const { return ctx_; }

    /// Spectral vector (q^{lam_1} t^{n-1}, q^{lam_2} t^{n-2}, ..., q^{lam_n}).
    std::vector<Scalar> spectral_vector(const Partition& lam) const;

    /// Pairwise interaction factor H_{lam/mu}(b): a finite product of
    /// Pochhammer ratios over pairs of rows, empty (= 1) when n = 1 or when
    /// mu interlaces lam tightly.  Requires mu to interlace lam.
    Scalar h_factor(const Partition& lam, const Partition& mu,
                    const Scalar& b) const;

    /// One-variable skew function W_{lam/mu}(x; a, b).  Zero unless lam/mu
    /// is a horizontal strip (lam_1 >= mu_1 >= lam_2 >= ...).
    Scalar w_skew(const Partition& lam, const Partition& mu, const Scalar& x,
                  const Scalar& a, const Scalar& b) const;

    /// Multivariable W_{lam/mu}(x_1, ..., x_m; a, b), defined by peeling the
    /// first variable: with l = m - 1 remaining variables,
    ///   W_{lam/mu}(x_1, ..., x_m; a, b)
    ///     = sum_nu W_{lam/nu}(x_1 t^{-l}; a t^{2l}, b t^l)
    ///              W_{nu/mu}(x_2, ..., x_m; a, b),
    /// the sum running over nu for which lam/nu is a horizontal strip.
    Scalar w_multi(const Partition& lam, const Partition& mu,
                   const std::vector<Scalar>& xs, const Scalar& a,
                   const Scalar& b);

    /// W_mu evaluated at the spectral vector of lam in all n variables.
    /// Vanishes whenever mu is not contained in lam (short-circuited).
    Scalar w_principal(const Partition& mu, const Partition& lam,
                       const Scalar& a, const Scalar& b);

    /// Normalized a -> 0 limit of the multivariable function (p = 0 only):
    ///   lim_{a -> 0} (B t^{n-1} / a)^{|lam| - |mu|}
    ///                W_{lam/mu}(x_1, ..., x_m; a t^{2-2n}, B),
    /// evaluated in closed form via the limit rule
    ///   lim_{a -> 0} a^{|nu|} (x/a)_nu = (-x)^{|nu|} t^{-n(nu)} q^{n(nu')}.
    Scalar w_multi_a0(const Partition& lam, const Partition& mu,
                      const std::vector<Scalar>& xs, const Scalar& B);

    /// Normalized a -> 0 one-variable kernel:
    ///   lim_{A -> 0} A^{|mu| - |lam|} W_{lam/mu}(x; A, B).
    Scalar w_skew_a0(const Partition& lam, const Partition& mu,
                     const Scalar& x, const Scalar& B) const;

    /// w_multi_a0 at the spectral vector of lam (memoized).
    Scalar w_principal_a0(const Partition& mu, const Partition& lam,
                          const Scalar& B);

    /// Fixed-ratio limit in which both parameters vanish with b/a = c held
    /// fixed (p = 0 only):
    ///   lim_{d -> 0} W_{lam/mu}(x_1, ..., x_m; d, c d).
    Scalar w_multi_ratio(const Partition& lam, const Partition& mu,
                         const std::vector<Scalar>& xs, const Scalar& c);

    /// Fixed-ratio one-variable kernel lim_{d -> 0} W_{lam/mu}(x; d, c d).
    Scalar w_skew_ratio(const Partition& lam, const Partition& mu,
                        const Scalar& x, const Scalar& c) const;

    /// w_multi_ratio at the spectral vector of lam (memoized).
    Scalar w_principal_ratio(const Partition& mu, const Partition& lam,
                             const Scalar& c);

    /// One-variable Jackson coefficient omega_{lam/mu}(x; r; a, b): a
    /// Pochhammer prefactor times the principal value
    /// W_mu(q^lam t^{delta}; b t^{2-2n}, b r^{-1} t^{1-n}).  Unlike w_skew
    /// it does not vanish off horizontal strips, only off containment.
    Scalar omega(const Partition& lam, const Partition& mu, const Scalar& x,
                 const Scalar& r, const Scalar& a, const Scalar& b);

    /// Multivariable Jackson coefficient, defined by peeling the first
    /// variable with shifts (r^{-k} x_1; a r^{2k}, b r^k) where k is the
    /// number of remaining variables, summing over intermediate partitions.
    Scalar omega_multi(const Partition& lam, const Partition& mu,
                       const std::vector<Scalar>& xs, const Scalar& r,
                       const Scalar& a, const Scalar& b);

    /// Closed product form for the principal value on a geometric argument
    /// (p = 0 only): equals w_multi(mu, 0, (x t^{n-1}, ..., x t, x), a, b).
    Scalar degree_formula(const Partition& mu, const Scalar& x,
                          const Scalar& a, const Scalar& b) const;

    void clear_memo() { memo_.clear(); }

private:
    Scalar pp(const Scalar& a, const Partition& lam) const;
    Scalar qpow(long e) const;
    Scalar tpow(long e) const;
    Scalar one() const;
    void check_rank(const Partition& lam) const;
    void require_basic(const char* what) const;

    // Local-normalization a -> 0 multi recursion (shared by w_multi_a0 and
    // w_principal_a0, before the (B t^{1-n})^{|lam|-|mu|} prefactor).
    Scalar a0_rec(const Partition& lam, const Partition& mu,
                  const std::vector<Scalar>& xs, std::size_t k,
                  const Scalar& B, std::map<std::string, Scalar>& local);
    Scalar ratio_rec(const Partition& lam, const Partition& mu,
                     const std::vector<Scalar>& xs, std::size_t k,
                     const Scalar& c, std::map<std::string, Scalar>& local);
    Scalar multi_rec(const Partition& lam, const Partition& mu,
                     const std::vector<Scalar>& xs, std::size_t k,
                     const Scalar& a, const Scalar& b,
                     std::map<std::string, Scalar>& local);

    PochCtx ctx_;
    int n_;
    Scalar q_, t_;
    std::map<std::string, Scalar> memo_;
};

}  // namespace qbc
