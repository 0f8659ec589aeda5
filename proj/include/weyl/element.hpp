#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "weyl/coeff.hpp"
#include "weyl/detail/term_format.hpp"
#include "weyl/errors.hpp"
#include "weyl/multi_index.hpp"

namespace weyl {

/// degree(0); strictly below every attainable degree, and far enough from
/// LONG_MIN that sums of two sentinels stay well defined.
inline constexpr long kNegInfDegree = std::numeric_limits<long>::min() / 4;

/// Shape of the algebra: n Weyl pairs, m extra central polynomial variables,
/// and the coefficient ring. Generators are 1-based: positions 1..n, momenta
/// n+1..2n (generator n+i is the momentum partner of generator i), centrals
/// 2n+1..2n+m.
template <class Ring>
struct Signature {
    int n;
    int m;
    Ring ring;

    Signature(int n_, int m_, Ring ring_) : n(n_), m(m_), ring(std::move(ring_)) {
        if (n < 1) throw Error("signature: need at least one Weyl pair");
        if (m < 0) throw Error("signature: negative central variable count");
    }

    int generator_count() const { return 2 * n + m; }
    bool is_position(int g) const { return g >= 1 && g <= n; }
    bool is_momentum(int g) const { return g > n && g <= 2 * n; }
    bool is_central(int g) const { return g > 2 * n && g <= generator_count(); }

    bool operator==(const Signature& o) const { return n == o.n && m == o.m && ring == o.ring; }
    bool operator!=(const Signature& o) const { return !(*this == o); }
};

/// Element of the Weyl algebra in canonical normal-ordered sparse form:
/// a finite map from exponent vectors to nonzero coefficients. The monomial
/// for alpha is the ordered product x1^a1 ... xn^an * x{n+1}^a{n+1} ...
/// (positions left of momenta, centrals last).
template <class Ring>
class Element {
public:
    using ring_type = Ring;
    using coeff_type = typename Ring::coeff_type;
    using term_map = std::map<MultiIndex, coeff_type, GrlexGreater>;

    explicit Element(Signature<Ring> sig) : sig_(std::move(sig)) {}

    static Element zero(const Signature<Ring>& sig) { return Element(sig); }

    static Element constant(const Signature<Ring>& sig, coeff_type c) {
        Element r(sig);
        r.add_term(MultiIndex(static_cast<std::size_t>(sig.generator_count())), std::move(c));
        return r;
    }

    static Element one(const Signature<Ring>& sig) { return constant(sig, sig.ring.one()); }

    static Element monomial(const Signature<Ring>& sig, MultiIndex idx, coeff_type c) {
        if (idx.size() != static_cast<std::size_t>(sig.generator_count())) {
            throw SignatureMismatch("monomial: exponent vector has wrong length");
        }
        Element r(sig);
        r.add_term(std::move(idx), std::move(c));
        return r;
    }

    /// 1-based generator index.
    static Element generator(const Signature<Ring>& sig, int g) {
        if (g < 1 || g > sig.generator_count()) {
            throw IndexOutOfRange("generator index " + std::to_string(g) + " out of 1.." +
                                  std::to_string(sig.generator_count()));
        }
        return monomial(sig,
                        MultiIndex::unit(static_cast<std::size_t>(sig.generator_count()),
                                         static_cast<std::size_t>(g - 1)),
                        sig.ring.one());
    }

    const Signature<Ring>& sig() const { return sig_; }
    const term_map& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
    }

    coeff_type constant_coeff() const {
        if (terms_.empty()) return sig_.ring.zero();
        auto it = terms_.find(MultiIndex(static_cast<std::size_t>(sig_.generator_count())));
        return it == terms_.end() ? sig_.ring.zero() : it->second;
    }

    /// Bernstein total degree, every generator (centrals included) weighted 1.
    long degree() const {
        return terms_.empty() ? kNegInfDegree : terms_.begin()->first.total_degree();
    }

    /// Accumulate c into the coefficient of idx, dropping it if the sum is 0.
    void add_term(MultiIndex idx, coeff_type c) {
        if (sig_.ring.is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(std::move(idx), c);
        if (!inserted) {
            it->second = sig_.ring.add(it->second, c);
            if (sig_.ring.is_zero(it->second)) terms_.erase(it);
        }
    }

    bool operator==(const Element& o) const { return sig_ == o.sig_ && terms_ == o.terms_; }
    bool operator!=(const Element& o) const { return !(*this == o); }

    /// Canonical rendering; the golden-file format for tests.
    std::string to_string() const {
        return detail::render_terms(terms_, sig_.ring,
                                    [](std::size_t i) { return "x" + std::to_string(i + 1); });
    }

private:
    Signature<Ring> sig_;
    term_map terms_;
};

namespace detail {

template <class Ring>
void check_same_sig(const Element<Ring>& a, const Element<Ring>& b, const char* op) {
    if (a.sig() != b.sig()) throw SignatureMismatch(std::string(op) + ": signature mismatch");
}

/// out += scale * (monomial a) * (monomial b), normal ordering the result.
/// Single-pair closed form y^b x^c = sum_k C(b,k) C(c,k) k! x^{c-k} y^{b-k},
/// extended multiplicatively over pairs; centrals multiply freely.
template <class Ring>
void accumulate_monomial_product(Element<Ring>& out, const MultiIndex& a, const MultiIndex& b,
                                 const typename Ring::coeff_type& scale) {
    const auto& sig = out.sig();
    const int n = sig.n;
    const std::size_t gens = static_cast<std::size_t>(sig.generator_count());

    std::vector<std::uint32_t> kmax(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        kmax[static_cast<std::size_t>(i)] =
            std::min(a[static_cast<std::size_t>(n + i)], b[static_cast<std::size_t>(i)]);
    }

    std::vector<std::uint32_t> k(static_cast<std::size_t>(n), 0);
    while (true) {
        BigInt c = 1;
        for (int i = 0; i < n; ++i) {
            const auto ki = k[static_cast<std::size_t>(i)];
            if (ki != 0) {
                c *= binomial(a[static_cast<std::size_t>(n + i)], ki);
                c *= binomial(b[static_cast<std::size_t>(i)], ki);
                c *= factorial(ki);
            }
        }
        MultiIndex idx(gens);
        for (int i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            idx[ui] = a[ui] + b[ui] - k[ui];
            idx[static_cast<std::size_t>(n + i)] = a[static_cast<std::size_t>(n + i)] +
                                                   b[static_cast<std::size_t>(n + i)] - k[ui];
        }
        for (std::size_t j = static_cast<std::size_t>(2 * n); j < gens; ++j) idx[j] = a[j] + b[j];

        out.add_term(std::move(idx), sig.ring.mul(scale, sig.ring.from_int(c)));

        // odometer over the k vector
        int pos = 0;
        while (pos < n && k[static_cast<std::size_t>(pos)] == kmax[static_cast<std::size_t>(pos)]) {
            k[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) break;
        ++k[static_cast<std::size_t>(pos)];
    }
}

}  // namespace detail

/// Normal-ordered expansion of (monomial a) * (monomial b).
template <class Ring>
Element<Ring> monomial_product(const Signature<Ring>& sig, const MultiIndex& a,
                               const MultiIndex& b) {
    const auto gens = static_cast<std::size_t>(sig.generator_count());
    if (a.size() != gens || b.size() != gens) {
        throw SignatureMismatch("monomial_product: exponent vector has wrong length");
    }
    Element<Ring> out(sig);
    detail::accumulate_monomial_product(out, a, b, sig.ring.one());
    return out;
}

template <class Ring>
Element<Ring> add(const Element<Ring>& a, const Element<Ring>& b) {
    detail::check_same_sig(a, b, "add");
    Element<Ring> out = a;
    for (const auto& [idx, c] : b.terms()) out.add_term(idx, c);
    return out;
}

template <class Ring>
Element<Ring> neg(const Element<Ring>& a) {
    Element<Ring> out(a.sig());
    for (const auto& [idx, c] : a.terms()) out.add_term(idx, a.sig().ring.neg(c));
    return out;
}

template <class Ring>
Element<Ring> sub(const Element<Ring>& a, const Element<Ring>& b) {
    detail::check_same_sig(a, b, "sub");
    Element<Ring> out = a;
    for (const auto& [idx, c] : b.terms()) out.add_term(idx, b.sig().ring.neg(c));
    return out;
}

template <class Ring>
Element<Ring> scalar_mul(const Element<Ring>& a, const typename Ring::coeff_type& c) {
    Element<Ring> out(a.sig());
    if (a.sig().ring.is_zero(c)) return out;
    for (const auto& [idx, v] : a.terms()) out.add_term(idx, a.sig().ring.mul(v, c));
    return out;
}

template <class Ring>
Element<Ring> mul(const Element<Ring>& a, const Element<Ring>& b) {
    detail::check_same_sig(a, b, "mul");
    Element<Ring> out(a.sig());
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            detail::accumulate_monomial_product(out, ia, ib, a.sig().ring.mul(ca, cb));
        }
    }
    return out;
}

/// Left fold of k multiplications (no squaring tricks in a noncommutative ring).
template <class Ring>
Element<Ring> pow(const Element<Ring>& a, long long k) {
    if (k < 0) throw NegativeExponent("pow: negative exponent " + std::to_string(k));
    Element<Ring> out = Element<Ring>::one(a.sig());
    for (long long i = 0; i < k; ++i) out = mul(out, a);
    return out;
}

template <class Ring>
Element<Ring> commutator(const Element<Ring>& a, const Element<Ring>& b) {
    return sub(mul(a, b), mul(b, a));
}

/// (ad a)^k (b); k = 0 returns b.
template <class Ring>
Element<Ring> ad_power(const Element<Ring>& a, Element<Ring> b, long long k) {
    detail::check_same_sig(a, b, "ad_power");
    if (k < 0) throw NegativeExponent("ad_power: negative iteration count");
    for (long long i = 0; i < k; ++i) b = commutator(a, b);
    return b;
}

template <class Ring>
Element<Ring> operator+(const Element<Ring>& a, const Element<Ring>& b) {
    return add(a, b);
}
template <class Ring>
Element<Ring> operator-(const Element<Ring>& a, const Element<Ring>& b) {
    return sub(a, b);
}
template <class Ring>
Element<Ring> operator-(const Element<Ring>& a) {
    return neg(a);
}
template <class Ring>
Element<Ring> operator*(const Element<Ring>& a, const Element<Ring>& b) {
    return mul(a, b);
}

using ZElement = Element<IntegerRing>;
using QElement = Element<RationalRing>;
using FpElement = Element<PrimeField>;

inline QElement to_rational(const ZElement& a) {
    Signature<RationalRing> sig(a.sig().n, a.sig().m, RationalRing{});
    QElement out(sig);
    for (const auto& [idx, c] : a.terms()) out.add_term(idx, BigRat(c));
    return out;
}

/// Exact conversion back to Z; fails on any non-integral coefficient.
inline ZElement to_integer(const QElement& a) {
    Signature<IntegerRing> sig(a.sig().n, a.sig().m, IntegerRing{});
    ZElement out(sig);
    for (const auto& [idx, c] : a.terms()) {
        if (boost::multiprecision::denominator(c) != 1) {
            throw NonInvertible("to_integer: coefficient " + RationalRing{}.to_string(c) +
                                " is not an integer");
        }
        out.add_term(idx, boost::multiprecision::numerator(c));
    }
    return out;
}

}  // namespace weyl
