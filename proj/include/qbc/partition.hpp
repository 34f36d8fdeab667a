#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qbc {

/// Integer partition: weakly decreasing non-negative parts.  Stored and
/// compared in normalized form (trailing zeros stripped), so two
/// representations of the same shape are equal.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts);
    explicit Partition(std::vector<int> parts);

    /// Part at 1-based index i (0 beyond the last part).
    int part(int i) const;
    int num_parts() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    const std::vector<int>& parts() const { return parts_; }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    bool operator<(const Partition& o) const { return parts_ < o.parts_; }

    /// "[3,1]" / "[]" (normalized form).
    std::string to_string() const;

private:
    std::vector<int> parts_;  // normalized
};

struct PartitionStats {
    long weight;       // |λ|
    long n_stat;       // n(λ)  = Σ (i-1) λ_i
    long n_conj_stat;  // n(λ') = Σ C(λ_i, 2)
    Partition conjugate;
};

/// μ_i <= λ_i for all i (zero-padded).
bool contains(const Partition& lam, const Partition& mu);

/// λ₁ >= μ₁ >= λ₂ >= μ₂ >= ... (interlacing).
bool horizontal_strip(const Partition& lam, const Partition& mu);

long weight(const Partition& lam);
long n_stat(const Partition& lam);
long n_conj_stat(const Partition& lam);
Partition conjugate(const Partition& lam);
PartitionStats stats(const Partition& lam);

/// All partitions with at most n parts, each part <= k, ordered ascending
/// lexicographically on the padded part vector (empty partition first,
/// [k^n] last).  Count is C(n+k, n).
std::vector<Partition> partitions_in_box(int n, int k);

/// All ν contained in λ such that λ/ν is a horizontal strip.
std::vector<Partition> strips_below(const Partition& lam);

/// Integer vector of fixed length (entries may be negative); indexes the
/// multilateral (bilateral in every coordinate) sums.
struct SignedVector {
    std::vector<int> e;

    int size() const { return static_cast<int>(e.size()); }
    long sum() const;        // Σ e_i  (signed)
    long abs_sum() const;    // Σ |e_i|
    long sum_sq() const;     // Σ e_i²
    long n_stat() const;     // Σ (i-1) e_i
    long n_conj_stat() const;  // Σ C(e_i, 2), valid for negative entries
    std::string to_string() const;
};

/// All vectors with |e_i| <= T, ascending lexicographic order
/// ((-T,...,-T) first, (T,...,T) last).
std::vector<SignedVector> bounded_vectors(int n, int T);

/// Streaming variant of bounded_vectors for large radii.
void for_each_bounded_vector(int n, int T,
                             const std::function<void(const SignedVector&)>& fn);

/// C(x, 2) = x(x-1)/2, valid for negative x.
inline long binom2(long x) { return x * (x - 1) / 2; }

}  // namespace qbc
