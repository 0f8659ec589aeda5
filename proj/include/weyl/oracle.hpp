#pragma once

#include <cstdint>

#include "weyl/element.hpp"
#include "weyl/errors.hpp"
#include "weyl/poly.hpp"

// Independent product oracle: represents the algebra on Q[t1..tn] with
// position generators acting by multiplication and momentum generators by
// d/dt_i, then reconstructs the normal form of a composite operator from its
// action on monomials. Shares no code path with the normal-ordering product.

namespace weyl {

namespace detail {

/// Action of a normal-ordered element on a commutative polynomial under the
/// representation x_i -> (f -> t_i f), x_{n+i} -> d/dt_i. Differentiation is
/// applied via the closed form on monomials, not via the algebra product.
inline Poly<RationalRing> apply_operator(const QElement& a, const Poly<RationalRing>& f) {
    const int n = a.sig().n;
    Poly<RationalRing> out(static_cast<std::size_t>(n), RationalRing{});
    for (const auto& [alpha, c] : a.terms()) {
        for (const auto& [gamma, d] : f.terms()) {
            BigInt falling = 1;
            bool vanishes = false;
            for (int i = 0; i < n && !vanishes; ++i) {
                const std::uint32_t mom = alpha[static_cast<std::size_t>(n + i)];
                const std::uint32_t exp = gamma[static_cast<std::size_t>(i)];
                if (mom > exp) {
                    vanishes = true;
                    break;
                }
                for (std::uint32_t k = 0; k < mom; ++k) falling *= exp - k;
            }
            if (vanishes) continue;
            MultiIndex idx(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                const auto ui = static_cast<std::size_t>(i);
                idx[ui] = gamma[ui] - alpha[static_cast<std::size_t>(n + i)] + alpha[ui];
            }
            out.add_term(std::move(idx), c * d * BigRat(falling));
        }
    }
    return out;
}

inline long momentum_degree(const QElement& a) {
    const int n = a.sig().n;
    long best = 0;
    for (const auto& [alpha, c] : a.terms()) {
        (void)c;
        long d = 0;
        for (int i = 0; i < n; ++i) d += alpha[static_cast<std::size_t>(n + i)];
        best = std::max(best, d);
    }
    return best;
}

}  // namespace detail

/// Product of a and b computed through the differential-operator
/// representation. Equals mul(a, b); used as a verification oracle.
inline QElement oracle_product(const QElement& a, const QElement& b) {
    if (a.sig() != b.sig()) throw SignatureMismatch("oracle_product: signature mismatch");
    if (a.sig().m != 0) throw UnsupportedRing("oracle_product: central variables not supported");
    const int n = a.sig().n;
    QElement result(a.sig());
    if (a.is_zero() || b.is_zero()) return result;

    const long max_mom = detail::momentum_degree(a) + detail::momentum_degree(b);
    for (long level = 0; level <= max_mom; ++level) {
        for_each_multi_index_of_degree(
            static_cast<std::size_t>(n), static_cast<std::uint32_t>(level),
            [&](const MultiIndex& beta) {
                const auto probe = Poly<RationalRing>::monomial(static_cast<std::size_t>(n),
                                                                RationalRing{}, beta, BigRat(1));
                // Everything of momentum degree < |beta| is already in `result`,
                // so the residual action on t^beta is triangular: it comes from
                // terms with momentum part exactly beta.
                auto residual = sub(detail::apply_operator(a, detail::apply_operator(b, probe)),
                                    detail::apply_operator(result, probe));
                if (residual.is_zero()) return;
                BigRat beta_fact = 1;
                for (std::size_t i = 0; i < beta.size(); ++i) beta_fact *= BigRat(factorial(beta[i]));
                for (const auto& [pos, c] : residual.terms()) {
                    MultiIndex idx(static_cast<std::size_t>(2 * n));
                    for (int i = 0; i < n; ++i) {
                        idx[static_cast<std::size_t>(i)] = pos[static_cast<std::size_t>(i)];
                        idx[static_cast<std::size_t>(n + i)] = beta[static_cast<std::size_t>(i)];
                    }
                    result.add_term(std::move(idx), c / beta_fact);
                }
            });
    }
    return result;
}

/// Integer-coefficient convenience overload; computed exactly through Q.
inline ZElement oracle_product(const ZElement& a, const ZElement& b) {
    return to_integer(oracle_product(to_rational(a), to_rational(b)));
}

}  // namespace weyl
