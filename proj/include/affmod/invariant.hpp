#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "affmod/norms.hpp"
#include "affmod/weights.hpp"

namespace affmod {

/// Candidate partition-function matrix: sparse non-negative integers over
/// P+ x P+, with an exact rational scalar carried through intermediate
/// products. Finalization folds the scalar into the entries and insists on
/// integrality. Immutable by convention after finalize().
class InvariantMatrix {
  public:
    using EntryMap = std::map<std::pair<int, int>, long long>;

    InvariantMatrix() = default;
    explicit InvariantMatrix(std::shared_ptr<const WeightIndex> index, std::string name = "")
        : index_(std::move(index)), name_(std::move(name)) {}

    const WeightIndex& index() const { return *index_; }
    std::shared_ptr<const WeightIndex> index_ptr() const { return index_; }
    const AlgebraContext& ctx() const { return index_->ctx(); }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    void add(int i, int j, long long v) {
        if (v == 0) return;
        auto key = std::make_pair(i, j);
        auto it = entries_.find(key);
        if (it == entries_.end())
            entries_.emplace(key, v);
        else if ((it->second += v) == 0)
            entries_.erase(it);
    }
    void set(int i, int j, long long v) {
        if (v == 0)
            entries_.erase({i, j});
        else
            entries_[{i, j}] = v;
    }
    long long operator()(int i, int j) const {
        auto it = entries_.find({i, j});
        return it == entries_.end() ? 0 : it->second;
    }
    const EntryMap& entries() const { return entries_; }
    size_t nnz() const { return entries_.size(); }

    void set_scale(long long num, long long den) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        scale_num_ = num;
        scale_den_ = den;
    }
    bool finalized() const { return scale_num_ == 1 && scale_den_ == 1; }

    /// Fold the scalar into the entries; every resulting entry must be a
    /// non-negative integer.
    void finalize() {
        if (finalized()) return;
        EntryMap out;
        for (const auto& [key, v] : entries_) {
            long long num = v * scale_num_;
            if (num % scale_den_ != 0)
                throw std::runtime_error("non-integral entry " + std::to_string(num) + "/" +
                                         std::to_string(scale_den_) + " during finalization");
            long long q = num / scale_den_;
            if (q < 0) throw std::runtime_error("negative entry during finalization");
            if (q != 0) out[key] = q;
        }
        entries_ = std::move(out);
        scale_num_ = scale_den_ = 1;
    }

    bool operator==(const InvariantMatrix& o) const { return entries_ == o.entries_; }

    InvariantMatrix transposed() const {
        InvariantMatrix t(index_, name_.empty() ? "" : name_ + "^T");
        for (const auto& [key, v] : entries_) t.set(key.second, key.first, v);
        t.scale_num_ = scale_num_;
        t.scale_den_ = scale_den_;
        return t;
    }
    bool symmetric() const {
        for (const auto& [key, v] : entries_)
            if ((*this)(key.second, key.first) != v) return false;
        return true;
    }

  private:
    std::shared_ptr<const WeightIndex> index_;
    EntryMap entries_;
    long long scale_num_ = 1, scale_den_ = 1;
    std::string name_;
};

inline InvariantMatrix build_identity(std::shared_ptr<const WeightIndex> index) {
    InvariantMatrix m(index, "I");
    for (int i = 0; i < index->size(); ++i) m.set(i, i, 1);
    return m;
}

inline InvariantMatrix build_conjugation(std::shared_ptr<const WeightIndex> index) {
    InvariantMatrix m(index, "C");
    for (int i = 0; i < index->size(); ++i) m.set(i, index->c_of(i), 1);
    return m;
}

/// Simple-current invariant of J_d:
///   I[J_d]_{l,m} = sum_{j=1..rbar/d} [ (rbar/d) | (t(l) + d j k'/2) ] [m = J^{dj} l].
/// Constructed for every divisor d; whether it is physical is a question for
/// the verifier (it is iff k'd is even).
inline InvariantMatrix build_simple_current(std::shared_ptr<const WeightIndex> index, int d) {
    const auto& ctx = index->ctx();
    check_divisor(ctx, d);
    InvariantMatrix m(index, "I[J" + std::to_string(d) + "]");
    const int reps = ctx.rbar / d;
    for (int i = 0; i < index->size(); ++i) {
        const long long t2 = 2 * tality((*index)[i]);  // doubled to keep j k'/2 integral
        int cur = i;
        for (int j = 1; j <= reps; ++j) {
            cur = index->j_of(cur, d);
            const long long num = t2 + static_cast<long long>(d) * j * ctx.kprime;
            if (num % (2ll * reps) == 0) m.add(i, cur, 1);
        }
    }
    return m;
}

/// scalar * (A . B), not finalized; callers finalize() to assert the result
/// is a genuine non-negative integer matrix.
inline InvariantMatrix compose(const InvariantMatrix& a, const InvariantMatrix& b,
                               long long scale_num = 1, long long scale_den = 1) {
    if (!(a.ctx() == b.ctx())) throw std::invalid_argument("compose: mismatched contexts");
    InvariantMatrix m(a.index_ptr());
    // rows of a times rows of b, sparse-sparse
    std::map<int, std::vector<std::pair<int, long long>>> brows;
    for (const auto& [key, v] : b.entries()) brows[key.first].emplace_back(key.second, v);
    for (const auto& [key, va] : a.entries()) {
        auto it = brows.find(key.second);
        if (it == brows.end()) continue;
        for (const auto& [j, vb] : it->second) m.add(key.first, j, va * vb);
    }
    long long g = std::gcd(scale_num, scale_den);
    m.set_scale(scale_num / g, scale_den / g);
    return m;
}

}  // namespace affmod
