#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "weyl/errors.hpp"

namespace weyl {

/// Exponent vector of a normal-ordered monomial. Length is fixed by the
/// owning signature (2n + m generators).
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t size) : e_(size, 0) {}
    MultiIndex(std::initializer_list<std::uint32_t> init) : e_(init) {}
    explicit MultiIndex(std::vector<std::uint32_t> exps) : e_(std::move(exps)) {}

    static MultiIndex unit(std::size_t size, std::size_t pos) {
        MultiIndex r(size);
        r.e_[pos] = 1;
        return r;
    }

    std::size_t size() const { return e_.size(); }
    std::uint32_t operator[](std::size_t i) const { return e_[i]; }
    std::uint32_t& operator[](std::size_t i) { return e_[i]; }

    bool is_zero() const {
        for (auto v : e_)
            if (v != 0) return false;
        return true;
    }

    long total_degree() const {
        long d = 0;
        for (auto v : e_) d += static_cast<long>(v);
        return d;
    }

    MultiIndex plus(const MultiIndex& o) const {
        require_same_size(o);
        MultiIndex r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }

    /// Componentwise difference; requires o <= *this.
    MultiIndex minus(const MultiIndex& o) const {
        require_same_size(o);
        MultiIndex r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (o.e_[i] > e_[i]) throw NegativeExponent("multi-index difference went negative");
            r.e_[i] -= o.e_[i];
        }
        return r;
    }

    bool divides(const MultiIndex& o) const {
        require_same_size(o);
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }

    /// Graded lexicographic: total degree first, then lexicographic on the
    /// exponent vector (earlier generators weigh more).
    static bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
        const long da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.e_ < b.e_;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

private:
    void require_same_size(const MultiIndex& o) const {
        if (e_.size() != o.e_.size()) {
            throw SignatureMismatch("multi-index length mismatch: " + std::to_string(e_.size()) +
                                    " vs " + std::to_string(o.e_.size()));
        }
    }

    std::vector<std::uint32_t> e_;
};

namespace detail {

template <class F>
void enum_fixed_degree(MultiIndex& cur, std::size_t pos, std::uint32_t remaining, F& f) {
    if (pos + 1 == cur.size()) {
        cur[pos] = remaining;
        f(static_cast<const MultiIndex&>(cur));
        cur[pos] = 0;
        return;
    }
    for (std::uint32_t v = remaining;; --v) {
        cur[pos] = v;
        enum_fixed_degree(cur, pos + 1, remaining - v, f);
        if (v == 0) break;
    }
    cur[pos] = 0;
}

}  // namespace detail

/// Visit every multi-index of the given length and total degree, in
/// lexicographic descending order (deterministic).
template <class F>
void for_each_multi_index_of_degree(std::size_t size, std::uint32_t degree, F&& f) {
    if (size == 0) {
        if (degree == 0) {
            MultiIndex mi(0);
            f(static_cast<const MultiIndex&>(mi));
        }
        return;
    }
    MultiIndex cur(size);
    detail::enum_fixed_degree(cur, 0, degree, f);
}

/// Map comparator placing the grlex-leading term first.
struct GrlexGreater {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return MultiIndex::grlex_less(b, a);
    }
};

struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return MultiIndex::grlex_less(a, b);
    }
};

}  // namespace weyl
