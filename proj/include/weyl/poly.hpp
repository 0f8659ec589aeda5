#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include "weyl/coeff.hpp"
#include "weyl/detail/term_format.hpp"
#include "weyl/errors.hpp"
#include "weyl/multi_index.hpp"

namespace weyl {

/// Commutative sparse polynomial in a fixed number of variables. Used for
/// the differential-operator product oracle (over Q) and for the image of
/// the characteristic-p center as a polynomial algebra (over F_p).
template <class Ring>
class Poly {
public:
    using ring_type = Ring;
    using coeff_type = typename Ring::coeff_type;
    using term_map = std::map<MultiIndex, coeff_type, GrlexGreater>;

    Poly(std::size_t vars, Ring ring) : vars_(vars), ring_(std::move(ring)) {}

    static Poly zero(std::size_t vars, const Ring& ring) { return Poly(vars, ring); }

    static Poly constant(std::size_t vars, const Ring& ring, coeff_type c) {
        Poly r(vars, ring);
        r.add_term(MultiIndex(vars), std::move(c));
        return r;
    }

    static Poly one(std::size_t vars, const Ring& ring) { return constant(vars, ring, ring.one()); }

    static Poly monomial(std::size_t vars, const Ring& ring, MultiIndex idx, coeff_type c) {
        if (idx.size() != vars) throw DimensionMismatch("poly monomial: wrong exponent length");
        Poly r(vars, ring);
        r.add_term(std::move(idx), std::move(c));
        return r;
    }

    /// 0-based variable index.
    static Poly variable(std::size_t vars, const Ring& ring, std::size_t i) {
        if (i >= vars) throw IndexOutOfRange("poly variable index out of range");
        return monomial(vars, ring, MultiIndex::unit(vars, i), ring.one());
    }

    std::size_t vars() const { return vars_; }
    const Ring& ring() const { return ring_; }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
    }

    coeff_type constant_coeff() const {
        if (terms_.empty()) return ring_.zero();
        auto it = terms_.find(MultiIndex(vars_));
        return it == terms_.end() ? ring_.zero() : it->second;
    }

    long degree() const {
        return terms_.empty() ? kNegInfDegree : terms_.begin()->first.total_degree();
    }

    void add_term(MultiIndex idx, coeff_type c) {
        if (ring_.is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(std::move(idx), c);
        if (!inserted) {
            it->second = ring_.add(it->second, c);
            if (ring_.is_zero(it->second)) terms_.erase(it);
        }
    }

    bool operator==(const Poly& o) const {
        return vars_ == o.vars_ && ring_ == o.ring_ && terms_ == o.terms_;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    template <class Namer>
    std::string to_string(Namer namer) const {
        return detail::render_terms(terms_, ring_, namer);
    }

    std::string to_string(const std::string& prefix = "u") const {
        return to_string([&](std::size_t i) { return prefix + std::to_string(i + 1); });
    }

private:
    std::size_t vars_;
    Ring ring_;
    term_map terms_;
};

namespace detail {

template <class Ring>
void check_compatible(const Poly<Ring>& a, const Poly<Ring>& b, const char* op) {
    if (a.vars() != b.vars() || a.ring() != b.ring()) {
        throw DimensionMismatch(std::string(op) + ": polynomial spaces differ");
    }
}

}  // namespace detail

template <class Ring>
Poly<Ring> add(const Poly<Ring>& a, const Poly<Ring>& b) {
    detail::check_compatible(a, b, "poly add");
    Poly<Ring> out = a;
    for (const auto& [idx, c] : b.terms()) out.add_term(idx, c);
    return out;
}

template <class Ring>
Poly<Ring> neg(const Poly<Ring>& a) {
    Poly<Ring> out(a.vars(), a.ring());
    for (const auto& [idx, c] : a.terms()) out.add_term(idx, a.ring().neg(c));
    return out;
}

template <class Ring>
Poly<Ring> sub(const Poly<Ring>& a, const Poly<Ring>& b) {
    detail::check_compatible(a, b, "poly sub");
    Poly<Ring> out = a;
    for (const auto& [idx, c] : b.terms()) out.add_term(idx, b.ring().neg(c));
    return out;
}

template <class Ring>
Poly<Ring> scalar_mul(const Poly<Ring>& a, const typename Ring::coeff_type& c) {
    Poly<Ring> out(a.vars(), a.ring());
    if (a.ring().is_zero(c)) return out;
    for (const auto& [idx, v] : a.terms()) out.add_term(idx, a.ring().mul(v, c));
    return out;
}

template <class Ring>
Poly<Ring> mul(const Poly<Ring>& a, const Poly<Ring>& b) {
    detail::check_compatible(a, b, "poly mul");
    Poly<Ring> out(a.vars(), a.ring());
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            out.add_term(ia.plus(ib), a.ring().mul(ca, cb));
        }
    }
    return out;
}

template <class Ring>
Poly<Ring> pow(const Poly<Ring>& a, long long k) {
    if (k < 0) throw NegativeExponent("poly pow: negative exponent");
    Poly<Ring> out = Poly<Ring>::one(a.vars(), a.ring());
    for (long long i = 0; i < k; ++i) out = mul(out, a);
    return out;
}

/// Formal partial derivative in variable i (0-based). In characteristic p
/// exponents divisible by p differentiate to zero.
template <class Ring>
Poly<Ring> derivative(const Poly<Ring>& a, std::size_t i) {
    if (i >= a.vars()) throw IndexOutOfRange("derivative: variable index out of range");
    Poly<Ring> out(a.vars(), a.ring());
    for (const auto& [idx, c] : a.terms()) {
        if (idx[i] == 0) continue;
        MultiIndex d = idx;
        d[i] -= 1;
        out.add_term(std::move(d), a.ring().mul(c, a.ring().from_int(BigInt(idx[i]))));
    }
    return out;
}

/// Exact quotient a / b; throws NotDivisible if b does not divide a.
/// Leading-term elimination in graded-lex order, valid over a domain.
template <class Ring>
Poly<Ring> divide_exact(const Poly<Ring>& a, const Poly<Ring>& b) {
    detail::check_compatible(a, b, "poly divide_exact");
    if (b.is_zero()) throw DivisionByZero("poly divide_exact: zero divisor");
    Poly<Ring> rem = a;
    Poly<Ring> quot(a.vars(), a.ring());
    const auto& lead_b = *b.terms().begin();
    while (!rem.is_zero()) {
        const auto& lead_r = *rem.terms().begin();
        if (!lead_b.first.divides(lead_r.first)) {
            throw NotDivisible("poly divide_exact: inexact division");
        }
        const MultiIndex q_idx = lead_r.first.minus(lead_b.first);
        const auto q_coeff = a.ring().div(lead_r.second, lead_b.second);
        Poly<Ring> t = Poly<Ring>::monomial(a.vars(), a.ring(), q_idx, q_coeff);
        quot = add(quot, t);
        rem = sub(rem, mul(t, b));
    }
    return quot;
}

template <class Ring>
Poly<Ring> operator+(const Poly<Ring>& a, const Poly<Ring>& b) {
    return add(a, b);
}
template <class Ring>
Poly<Ring> operator-(const Poly<Ring>& a, const Poly<Ring>& b) {
    return sub(a, b);
}
template <class Ring>
Poly<Ring> operator-(const Poly<Ring>& a) {
    return neg(a);
}
template <class Ring>
Poly<Ring> operator*(const Poly<Ring>& a, const Poly<Ring>& b) {
    return mul(a, b);
}

}  // namespace weyl
