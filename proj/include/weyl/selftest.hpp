#pragma once

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "weyl/charp.hpp"
#include "weyl/symplectic.hpp"

// Built-in sanity suite behind `selftest`: the measured bracket constants
// (the Wilson sign) and the Poisson axioms for both bracket implementations,
// on deterministic pseudo-random central elements.

namespace weyl {

namespace detail {

/// splitmix64; deterministic across platforms, unlike the distributions in
/// <random>.
class SelftestRng {
public:
    explicit SelftestRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

inline CentralElement random_central(SelftestRng& rng, const Signature<PrimeField>& sig) {
    const std::uint32_t p = sig.ring.p();
    const std::size_t gens = static_cast<std::size_t>(sig.generator_count());
    FpElement out(sig);
    const std::size_t terms = 1 + rng.below(3);
    for (std::size_t t = 0; t < terms; ++t) {
        MultiIndex idx(gens);
        for (std::size_t i = 0; i < gens; ++i) {
            const std::uint32_t e = static_cast<std::uint32_t>(rng.below(3));
            idx[i] = static_cast<int>(i) < 2 * sig.n ? e * p : e;
        }
        out.add_term(std::move(idx), 1 + rng.below(p == 2 ? 1 : p - 1));
    }
    if (out.is_zero()) out = FpElement::one(sig);
    return CentralElement(std::move(out));
}

}  // namespace detail

struct SelftestRow {
    std::string check;
    int n;
    std::uint32_t p;
    int cases;
    bool ok;
};

/// Run the constant and axiom checks; print one row per check and a summary.
/// Returns true iff everything passed.
inline bool run_selftest(std::ostream& out,
                         const std::vector<std::uint32_t>& primes = {2, 3, 5, 7},
                         int cases_per_check = 16) {
    std::vector<SelftestRow> rows;

    for (const int n : {1, 2}) {
        for (const auto p : primes) {
            const Signature<PrimeField> sig(n, 0, PrimeField(p));
            const PoissonStructure s = PoissonStructure::measure(n, 0, p);
            const PrimeField field(p);

            bool block_ok = true;
            for (int i = 0; i < 2 * n; ++i) {
                for (int j = 0; j < 2 * n; ++j) {
                    std::uint64_t want = 0;
                    if (i >= n && j == i - n) want = field.from_int(BigInt(p) - 1);
                    if (j >= n && i == j - n) want = field.neg(field.from_int(BigInt(p) - 1));
                    if (s.constant(i, j) != want) block_ok = false;
                }
            }
            rows.push_back({"wilson_constant_block", n, p, 4 * n * n, block_ok});

            const bool wilson_ok = PrimeField(p).from_int(factorial(p - 1)) ==
                                   PrimeField(p).from_int(BigInt(p) - 1);
            rows.push_back({"wilson_factorial", n, p, 1, wilson_ok});

            detail::SelftestRng rng(0x5e1f7e57ull + p * 1000 + static_cast<unsigned>(n));
            bool antisym_ok = true, leibniz_ok = true, jacobi_ok = true, transport_ok = true;
            for (int c = 0; c < cases_per_check; ++c) {
                const auto a = detail::random_central(rng, sig);
                const auto b = detail::random_central(rng, sig);
                const auto d = detail::random_central(rng, sig);

                const auto ab = poisson_bracket(a, b);
                const auto ba = poisson_bracket(b, a);
                if (add(ab.element(), ba.element()) != FpElement::zero(sig)) antisym_ok = false;

                const auto bd = CentralElement(mul(b.element(), d.element()));
                const auto lhs = poisson_bracket(a, bd);
                const auto rhs = add(mul(poisson_bracket(a, b).element(), d.element()),
                                     mul(b.element(), poisson_bracket(a, d).element()));
                if (lhs.element() != rhs) leibniz_ok = false;

                const auto jac = add(
                    add(poisson_bracket(a, poisson_bracket(b, d)).element(),
                        poisson_bracket(b, poisson_bracket(d, a)).element()),
                    poisson_bracket(d, poisson_bracket(a, b)).element());
                if (!jac.is_zero()) jacobi_ok = false;

                const auto fa = to_poisson_poly(a), fb = to_poisson_poly(b), fd = to_poisson_poly(d);
                if (to_poisson_poly(ab) != canonical_bracket(fa, fb, s)) transport_ok = false;
                if (add(canonical_bracket(fa, fb, s), canonical_bracket(fb, fa, s)) !=
                    PoissonPoly::zero(fa.vars(), fa.ring())) {
                    antisym_ok = false;
                }
                const auto poly_jac =
                    add(add(canonical_bracket(fa, canonical_bracket(fb, fd, s), s),
                            canonical_bracket(fb, canonical_bracket(fd, fa, s), s)),
                        canonical_bracket(fd, canonical_bracket(fa, fb, s), s));
                if (!poly_jac.is_zero()) jacobi_ok = false;
            }
            rows.push_back({"bracket_antisymmetry", n, p, cases_per_check, antisym_ok});
            rows.push_back({"bracket_leibniz", n, p, cases_per_check, leibniz_ok});
            rows.push_back({"bracket_jacobi", n, p, cases_per_check, jacobi_ok});
            rows.push_back({"bracket_transport", n, p, cases_per_check, transport_ok});
        }
    }

    out << std::left << std::setw(26) << "check" << std::setw(4) << "n" << std::setw(6) << "p"
        << std::setw(8) << "cases" << "result\n";
    bool all_ok = true;
    for (const auto& row : rows) {
        out << std::left << std::setw(26) << row.check << std::setw(4) << row.n << std::setw(6)
            << row.p << std::setw(8) << row.cases << (row.ok ? "pass" : "FAIL") << "\n";
        all_ok = all_ok && row.ok;
    }
    out << (all_ok ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
    return all_ok;
}

}  // namespace weyl
