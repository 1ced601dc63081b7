#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "affmod/norms.hpp"
#include "affmod/weights.hpp"

namespace affmod {

/// Unshifted orthogonal coordinates of the horizontal projection of w:
/// y_j = sum_{i>=j} w_i over i = 1..r, y_rbar = 0. Only the tail labels
/// enter, so any affine lift of the same horizontal weight gives the same
/// coordinates. Weyl group = coordinate permutations; dominant = weakly
/// decreasing.
inline std::vector<int> horizontal_coords(const Weight& w) {
    const int n = static_cast<int>(w.size());
    std::vector<int> y(n);
    y[n - 1] = 0;
    for (int j = n - 2; j >= 0; --j) y[j] = y[j + 1] + w[j + 1];
    return y;
}

namespace detail {

inline long long shifted_norm_scaled(const std::vector<int>& y) {
    // rbar * (y + rho | y + rho) up to the constant (sum)^2 part; only
    // differences at fixed coordinate sum are ever used
    const int n = static_cast<int>(y.size());
    long long s2 = 0, s = 0;
    for (int j = 0; j < n; ++j) {
        long long v = y[j] + (n - 1 - j);
        s2 += v * v;
        s += v;
    }
    return static_cast<long long>(n) * s2 - s * s;
}

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace detail

/// Exact weight multiplicities of the irreducible horizontal module with
/// highest weight lam (given as any affine lift), by Freudenthal recursion.
struct DominantMultiplicities {
    std::vector<int> highest;                       // dominant coordinates of lam
    std::map<std::vector<int>, long long> mult;     // dominant coords -> multiplicity
    long long dimension = 0;                        // sum of mult * orbit size

    long long multiplicity(std::vector<int> coords) const {
        std::sort(coords.begin(), coords.end(), std::greater<>());
        auto it = mult.find(coords);
        return it == mult.end() ? 0 : it->second;
    }
};

inline long long orbit_size_of_sorted(const std::vector<int>& y) {
    long long perms = 1, run = 1, total = 1;
    for (size_t i = 1; i <= y.size(); ++i) {
        // total = n!/(prod run_j!) built incrementally
        total = total * static_cast<long long>(i);
        if (i < y.size() && y[i] == y[i - 1])
            ++run;
        else {
            for (long long j = 2; j <= run; ++j) perms *= j;
            run = 1;
        }
    }
    return total / perms;
}

inline DominantMultiplicities weight_multiplicities(const Weight& lam) {
    const int n = static_cast<int>(lam.size());
    DominantMultiplicities out;
    out.highest = horizontal_coords(lam);

    // dominant weights of the module: weakly decreasing y with the same total
    // as lam whose prefix sums never exceed lam's (lam - y is then a
    // non-negative sum of simple roots)
    std::vector<std::vector<int>> dominants;
    std::vector<int> cur(n);
    int total = 0;
    for (int v : out.highest) total += v;
    std::vector<int> prefix(n + 1, 0);
    for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + out.highest[j];
    std::function<void(int, int, int)> rec = [&](int pos, int remaining, int prev) {
        if (pos == n) {
            if (remaining == 0) dominants.push_back(cur);
            return;
        }
        // remaining slots must be able to absorb the rest weakly decreasing
        for (int v = std::min(prev, remaining); v >= 0; --v) {
            if (static_cast<long long>(v) * (n - pos) < remaining) break;
            int spent = total - remaining + v;
            if (spent > prefix[pos + 1]) continue;  // prefix dominance violated
            // note coordinates may not go negative: v >= 0 enforced
            cur[pos] = v;
            rec(pos + 1, remaining - v, v);
        }
    };
    rec(0, total, total);

    // order by height of lam - y (levels), highest weight first
    auto height = [&](const std::vector<int>& y) {
        long long h = 0, acc = 0;
        for (int j = 0; j < n; ++j) {
            acc += out.highest[j] - y[j];
            h += acc;
        }
        return h;
    };
    std::sort(dominants.begin(), dominants.end(),
              [&](const auto& a, const auto& b) { return height(a) < height(b); });

    std::unordered_map<std::vector<int>, long long, detail::VecHash> memo;
    const long long top_norm = detail::shifted_norm_scaled(out.highest);
    for (const auto& y : dominants) {
        if (y == out.highest) {
            memo[y] = 1;
            continue;
        }
        // 2 sum_{a<b} sum_{j>=1} m(y + j(e_a - e_b)) * (y_a - y_b + 2j),
        // scaled by rbar to match the scaled norms
        long long rhs = 0;
        std::vector<int> probe(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                for (int j = 1;; ++j) {
                    probe = y;
                    probe[a] += j;
                    probe[b] -= j;
                    std::sort(probe.begin(), probe.end(), std::greater<>());
                    auto it = memo.find(probe);
                    if (it == memo.end()) break;
                    rhs += it->second * (y[a] - y[b] + 2ll * j);
                }
            }
        rhs *= 2ll * n;  // scale to match shifted_norm_scaled
        const long long denom = top_norm - detail::shifted_norm_scaled(y);
        if (denom <= 0) throw std::logic_error("Freudenthal denominator not positive");
        if (rhs % denom != 0) throw std::logic_error("Freudenthal division not exact");
        memo[y] = rhs / denom;
    }

    for (const auto& y : dominants) {
        long long m = memo[y];
        out.mult[y] = m;
        out.dimension += m * orbit_size_of_sorted(y);
    }
    return out;
}

/// All weights of the module as coordinate vectors with multiplicities
/// (dominant table expanded over coordinate permutations).
inline std::vector<std::pair<std::vector<int>, long long>> module_weights(
    const DominantMultiplicities& dm) {
    std::vector<std::pair<std::vector<int>, long long>> out;
    for (const auto& [dom, m] : dm.mult) {
        std::vector<int> p = dom;
        std::sort(p.begin(), p.end());
        do {
            out.emplace_back(p, m);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return out;
}

/// Per-context cache of horizontal multiplicity tables, keyed by the
/// horizontal labels. Populate single-threaded, read concurrently.
class MultiplicityCache {
  public:
    const DominantMultiplicities& get(const Weight& lam) {
        std::vector<int> key(lam.begin() + 1, lam.end());
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, weight_multiplicities(lam)).first;
        return it->second;
    }

  private:
    std::map<std::vector<int>, DominantMultiplicities> cache_;
};

}  // namespace affmod
