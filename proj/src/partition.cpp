#include "qbc/partition.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "qbc/errors.hpp"

namespace qbc {

namespace {

std::vector<int> normalize_parts(std::vector<int> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0) throw Error("partition with negative part");
        if (i + 1 < p.size() && p[i] < p[i + 1])
            throw Error("partition parts must be weakly decreasing");
    }
    return p;
}

}  // namespace

Partition::Partition(std::initializer_list<int> parts)
    : parts_(normalize_parts(std::vector<int>(parts))) {}

Partition::Partition(std::vector<int> parts)
    : parts_(normalize_parts(std::move(parts))) {}

int Partition::part(int i) const {
    if (i < 1 || i > num_parts()) return 0;
    return parts_[static_cast<size_t>(i - 1)];
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ",";
        os << parts_[i];
    }
    os << "]";
    return os.str();
}

bool contains(const Partition& lam, const Partition& mu) {
    for (int i = 1; i <= mu.num_parts(); ++i)
        if (mu.part(i) > lam.part(i)) return false;
    return true;
}

bool horizontal_strip(const Partition& lam, const Partition& mu) {
    int n = std::max(lam.num_parts(), mu.num_parts());
    for (int i = 1; i <= n; ++i) {
        if (lam.part(i) < mu.part(i)) return false;      // μ_i <= λ_i
        if (mu.part(i) < lam.part(i + 1)) return false;  // λ_{i+1} <= μ_i
    }
    return true;
}

long weight(const Partition& lam) {
    long w = 0;
    for (int x : lam.parts()) w += x;
    return w;
}

long n_stat(const Partition& lam) {
    long s = 0;
    for (int i = 1; i <= lam.num_parts(); ++i)
        s += static_cast<long>(i - 1) * lam.part(i);
    return s;
}

long n_conj_stat(const Partition& lam) {
    long s = 0;
    for (int x : lam.parts()) s += binom2(x);
    return s;
}

Partition conjugate(const Partition& lam) {
    if (lam.empty()) return Partition();
    std::vector<int> c(static_cast<size_t>(lam.part(1)), 0);
    for (int x : lam.parts())
        for (int j = 0; j < x; ++j) ++c[static_cast<size_t>(j)];
    return Partition(std::move(c));
}

PartitionStats stats(const Partition& lam) {
    return PartitionStats{weight(lam), n_stat(lam), n_conj_stat(lam),
                          conjugate(lam)};
}

std::vector<Partition> partitions_in_box(int n, int k) {
    if (n < 0 || k < 0) throw Error("partitions_in_box needs n, k >= 0");
    std::vector<Partition> out;
    std::vector<int> cur;
    // Ascending lexicographic on the padded vector: recurse on parts with
    // each part bounded by its predecessor, smallest first.
    std::function<void(int, int)> rec = [&](int pos, int maxpart) {
        if (pos == n) {
            out.emplace_back(cur);
            return;
        }
        for (int v = 0; v <= maxpart; ++v) {
            if (v == 0) {
                // All remaining parts are zero; emit once and continue with
                // nonzero choices.
                out.emplace_back(cur);
            } else {
                cur.push_back(v);
                rec(pos + 1, v);
                cur.pop_back();
            }
        }
    };
    rec(0, k);
    std::sort(out.begin(), out.end(), [n](const Partition& a, const Partition& b) {
        for (int i = 1; i <= n; ++i)
            if (a.part(i) != b.part(i)) return a.part(i) < b.part(i);
        return false;
    });
    return out;
}

std::vector<Partition> strips_below(const Partition& lam) {
    std::vector<Partition> out;
    int n = lam.num_parts();
    std::vector<int> cur(static_cast<size_t>(n), 0);
    // ν_i ranges over [λ_{i+1}, λ_i] independently; that is exactly the
    // interlacing condition.
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.emplace_back(cur);
            return;
        }
        for (int v = lam.part(i + 2); v <= lam.part(i + 1); ++v) {
            cur[static_cast<size_t>(i)] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

long SignedVector::sum() const {
    long s = 0;
    for (int x : e) s += x;
    return s;
}

long SignedVector::abs_sum() const {
    long s = 0;
    for (int x : e) s += std::abs(x);
    return s;
}

long SignedVector::sum_sq() const {
    long s = 0;
    for (int x : e) s += static_cast<long>(x) * x;
    return s;
}

long SignedVector::n_stat() const {
    long s = 0;
    for (size_t i = 0; i < e.size(); ++i) s += static_cast<long>(i) * e[i];
    return s;
}

long SignedVector::n_conj_stat() const {
    long s = 0;
    for (int x : e) s += binom2(x);
    return s;
}

std::string SignedVector::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) os << ",";
        os << e[i];
    }
    os << ")";
    return os.str();
}

void for_each_bounded_vector(int n, int T,
                             const std::function<void(const SignedVector&)>& fn) {
    if (n < 0 || T < 0) throw Error("bounded_vectors needs n >= 0, T >= 0");
    SignedVector v;
    v.e.assign(static_cast<size_t>(n), -T);
    if (n == 0) {
        fn(v);
        return;
    }
    for (;;) {
        fn(v);
        int i = n - 1;
        while (i >= 0 && v.e[static_cast<size_t>(i)] == T) {
            v.e[static_cast<size_t>(i)] = -T;
            --i;
        }
        if (i < 0) break;
        ++v.e[static_cast<size_t>(i)];
    }
}

std::vector<SignedVector> bounded_vectors(int n, int T) {
    std::vector<SignedVector> out;
    for_each_bounded_vector(n, T, [&](const SignedVector& v) { out.push_back(v); });
    return out;
}

}  // namespace qbc
