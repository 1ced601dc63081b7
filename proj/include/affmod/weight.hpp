#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "affmod/context.hpp"

namespace affmod {

/// A level-k weight of A_r^(1): the (r+1)-tuple of Dynkin labels
/// (lambda_0, ..., lambda_r), non-negative and summing to k.
using Weight = std::vector<int>;

inline bool is_valid_weight(const Weight& w, const AlgebraContext& ctx) {
    if (static_cast<int>(w.size()) != ctx.rbar) return false;
    int s = 0;
    for (int v : w) {
        if (v < 0) return false;
        s += v;
    }
    return s == ctx.level;
}

/// The vacuum k*Lambda_0.
inline Weight vacuum_weight(const AlgebraContext& ctx) {
    Weight w(ctx.rbar, 0);
    w[0] = ctx.level;
    return w;
}

/// (k - sum a_i)*Lambda_0 + sum of the listed fundamental weights; indices mod rbar.
inline Weight lift(const AlgebraContext& ctx, std::initializer_list<std::pair<int, int>> terms) {
    Weight w(ctx.rbar, 0);
    int used = 0;
    for (auto [i, a] : terms) {
        int p = ((i % ctx.rbar) + ctx.rbar) % ctx.rbar;
        if (p != 0) {
            w[p] += a;
            used += a;
        }
    }
    if (used > ctx.level) throw std::invalid_argument("weight does not fit at this level");
    w[0] += ctx.level - used;
    return w;
}

/// J^a: cyclic rotation of the extended diagram, (J w)_i = w_{i-1 mod rbar}.
inline Weight apply_j(const Weight& w, int a) {
    const int n = static_cast<int>(w.size());
    a = ((a % n) + n) % n;
    if (a == 0) return w;
    Weight out(n);
    for (int i = 0; i < n; ++i) out[(i + a) % n] = w[i];
    return out;
}

/// Charge conjugation C: fix node 0, reverse the rest.
inline Weight apply_c(const Weight& w) {
    Weight out(w);
    std::reverse(out.begin() + 1, out.end());
    return out;
}

/// rbar-ality t(w) = sum_{j=1..r} j*w_j, as a raw integer.
inline long long tality(const Weight& w) {
    long long t = 0;
    for (size_t j = 1; j < w.size(); ++j) t += static_cast<long long>(j) * w[j];
    return t;
}

inline int tality_mod(const Weight& w, const AlgebraContext& ctx) {
    return static_cast<int>(tality(w) % ctx.rbar);
}

inline std::string format_weight(const Weight& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s;
}

inline Weight parse_weight(const std::string& s) {
    Weight w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("bad weight component: " + tok);
        w.push_back(v);
    }
    if (w.empty()) throw std::invalid_argument("empty weight string");
    return w;
}

struct WeightHash {
    size_t operator()(const Weight& w) const {
        size_t h = 1469598103934665603ull;
        for (int v : w) {
            h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace affmod
