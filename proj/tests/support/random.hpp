#pragma once

#include <cstdint>

#include "weyl/element.hpp"
#include "weyl/poly.hpp"

// Deterministic pseudo-random generators for property tests. splitmix64 is
// reproducible across platforms, unlike <random> distributions.

namespace testsupport {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    long long int_in(long long lo, long long hi) {  // inclusive
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

inline weyl::BigInt random_int_coeff(Rng& rng) {
    long long v = rng.int_in(-9, 9);
    if (v == 0) v = 1;
    return weyl::BigInt(v);
}

template <class Ring>
typename Ring::coeff_type random_coeff(Rng& rng, const Ring& ring) {
    if constexpr (std::is_same_v<Ring, weyl::RationalRing>) {
        return weyl::BigRat(random_int_coeff(rng), weyl::BigInt(rng.int_in(1, 5)));
    } else if constexpr (std::is_same_v<Ring, weyl::IntegerRing>) {
        return random_int_coeff(rng);
    } else {
        return 1 + rng.below(ring.p() == 2 ? 1 : ring.p() - 1);
    }
}

/// Random element with at most max_terms monomials of total degree at most
/// max_degree.
template <class Ring>
weyl::Element<Ring> random_element(Rng& rng, const weyl::Signature<Ring>& sig, int max_degree,
                                   int max_terms) {
    weyl::Element<Ring> out(sig);
    const auto gens = static_cast<std::size_t>(sig.generator_count());
    const int terms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_terms)));
    for (int t = 0; t < terms; ++t) {
        weyl::MultiIndex idx(gens);
        const int degree = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree + 1)));
        for (int d = 0; d < degree; ++d) idx[rng.below(gens)] += 1;
        out.add_term(std::move(idx), random_coeff(rng, sig.ring));
    }
    return out;
}

/// Random element of the characteristic-p center: Weyl exponents are
/// multiples of p, central-variable exponents are free.
inline weyl::FpElement random_central_element(Rng& rng, const weyl::Signature<weyl::PrimeField>& sig,
                                              int max_u_degree, int max_terms) {
    const std::uint32_t p = sig.ring.p();
    const auto gens = static_cast<std::size_t>(sig.generator_count());
    weyl::FpElement out(sig);
    const int terms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_terms)));
    for (int t = 0; t < terms; ++t) {
        weyl::MultiIndex idx(gens);
        for (std::size_t i = 0; i < gens; ++i) {
            const auto e = static_cast<std::uint32_t>(rng.below(
                static_cast<std::uint64_t>(max_u_degree + 1)));
            idx[i] = static_cast<int>(i) < 2 * sig.n ? e * p : e;
        }
        out.add_term(std::move(idx), random_coeff(rng, sig.ring));
    }
    return out;
}

inline weyl::Poly<weyl::PrimeField> random_poisson_poly(Rng& rng, std::size_t vars,
                                                        const weyl::PrimeField& ring,
                                                        int max_degree, int max_terms) {
    weyl::Poly<weyl::PrimeField> out(vars, ring);
    const int terms = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_terms)));
    for (int t = 0; t < terms; ++t) {
        weyl::MultiIndex idx(vars);
        const int degree = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree + 1)));
        for (int d = 0; d < degree; ++d) idx[rng.below(vars)] += 1;
        out.add_term(std::move(idx), random_coeff(rng, ring));
    }
    return out;
}

}  // namespace testsupport
