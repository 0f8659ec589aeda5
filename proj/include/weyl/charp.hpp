#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weyl/element.hpp"
#include "weyl/errors.hpp"
#include "weyl/morphism.hpp"
#include "weyl/poly.hpp"

// Reduction of the integer Weyl algebra modulo a prime p and the structure
// living on its center: in characteristic p the p-th powers x_i^p (together
// with the m central variables) generate the center, and the divided
// commutator [a,b]/p mod p equips it with a Poisson bracket.

namespace weyl {

/// Termwise coefficient reduction Z -> F_p.
inline FpElement reduce_mod_p(const ZElement& a, std::uint32_t p) {
    PrimeField field(p);
    Signature<PrimeField> sig(a.sig().n, a.sig().m, field);
    FpElement out(sig);
    for (const auto& [idx, c] : a.terms()) out.add_term(idx, field.from_int(c));
    return out;
}

inline FpEndo reduce_mod_p(const ZEndo& e, std::uint32_t p) {
    Signature<PrimeField> sig(e.sig().n, e.sig().m, PrimeField(p));
    std::vector<FpElement> images;
    images.reserve(e.images().size());
    for (const auto& img : e.images()) images.push_back(reduce_mod_p(img, p));
    return e.is_validated() ? FpEndo::trusted(sig, std::move(images))
                            : FpEndo(sig, std::move(images));
}

/// Representative lift with coefficients in [0, p); reduce . lift = id.
inline ZElement lift_to_integers(const FpElement& a) {
    Signature<IntegerRing> sig(a.sig().n, a.sig().m, IntegerRing{});
    ZElement out(sig);
    for (const auto& [idx, c] : a.terms()) out.add_term(idx, BigInt(c));
    return out;
}

/// Commutator criterion for centrality: [a, x_j] = 0 for every Weyl
/// generator. (Central variables commute with everything regardless.)
inline bool is_central(const FpElement& a) {
    const auto& sig = a.sig();
    for (int g = 1; g <= 2 * sig.n; ++g) {
        if (!commutator(a, FpElement::generator(sig, g)).is_zero()) return false;
    }
    return true;
}

/// Exponent criterion for centrality: every Weyl-generator exponent is a
/// multiple of p. Must agree with is_central; both are computed in tests.
inline bool has_central_exponents(const FpElement& a) {
    const int two_n = 2 * a.sig().n;
    const std::uint32_t p = a.sig().ring.p();
    for (const auto& [idx, c] : a.terms()) {
        (void)c;
        for (int i = 0; i < two_n; ++i) {
            if (idx[static_cast<std::size_t>(i)] % p != 0) return false;
        }
    }
    return true;
}

/// The terms of a whose Weyl exponents are not all divisible by p; the
/// witness part reported when a centrality check fails.
inline FpElement non_central_part(const FpElement& a) {
    const int two_n = 2 * a.sig().n;
    const std::uint32_t p = a.sig().ring.p();
    FpElement out(a.sig());
    for (const auto& [idx, c] : a.terms()) {
        for (int i = 0; i < two_n; ++i) {
            if (idx[static_cast<std::size_t>(i)] % p != 0) {
                out.add_term(idx, c);
                break;
            }
        }
    }
    return out;
}

/// Element of the characteristic-p center, i.e. a polynomial in the p-th
/// powers of the Weyl generators and the central variables.
class CentralElement {
public:
    explicit CentralElement(FpElement elem) : elem_(std::move(elem)) {
        if (!has_central_exponents(elem_)) {
            throw NotCentralInput("element is not central: " + elem_.to_string());
        }
    }

    const FpElement& element() const { return elem_; }
    std::uint32_t p() const { return elem_.sig().ring.p(); }

    bool operator==(const CentralElement& o) const { return elem_ == o.elem_; }
    bool operator!=(const CentralElement& o) const { return elem_ != o.elem_; }

private:
    FpElement elem_;
};

/// a = sum_r c_r x^r with c_r central and residue exponents 0 <= r_i < p on
/// the Weyl generators: split each exponent as alpha = p q + r. Same-generator
/// powers commute, so the split is exact termwise.
inline std::map<MultiIndex, CentralElement, GrlexLess> central_decompose(const FpElement& a) {
    const auto& sig = a.sig();
    const int two_n = 2 * sig.n;
    const std::uint32_t p = sig.ring.p();
    const std::size_t gens = static_cast<std::size_t>(sig.generator_count());

    std::map<MultiIndex, FpElement, GrlexLess> parts;
    for (const auto& [idx, c] : a.terms()) {
        MultiIndex residue(static_cast<std::size_t>(two_n));
        MultiIndex central(gens);
        for (std::size_t i = 0; i < gens; ++i) {
            if (static_cast<int>(i) < two_n) {
                residue[i] = idx[i] % p;
                central[i] = idx[i] - residue[i];
            } else {
                central[i] = idx[i];  // central variables stay in the coefficient
            }
        }
        auto [it, inserted] = parts.try_emplace(residue, FpElement(sig));
        (void)inserted;
        it->second.add_term(std::move(central), c);
    }

    std::map<MultiIndex, CentralElement, GrlexLess> out;
    for (auto& [r, elem] : parts) out.emplace(r, CentralElement(std::move(elem)));
    return out;
}

/// Reassemble sum_r c_r x^r; exact inverse of central_decompose.
inline FpElement central_recompose(const std::map<MultiIndex, CentralElement, GrlexLess>& parts,
                                   const Signature<PrimeField>& sig) {
    FpElement out(sig);
    const std::size_t gens = static_cast<std::size_t>(sig.generator_count());
    for (const auto& [r, c] : parts) {
        MultiIndex full(gens);
        for (std::size_t i = 0; i < r.size(); ++i) full[i] = r[i];
        out = add(out, mul(c.element(), FpElement::monomial(sig, full, sig.ring.one())));
    }
    return out;
}

/// Divided-commutator bracket {a, b} = ([lift a, lift b] / p) mod p.
/// NotDivisible can only fire if the inputs were not central, so the
/// division doubles as a centrality guard. Independence of the chosen lift
/// is a tested property, not an assumption.
inline CentralElement poisson_bracket(const CentralElement& a, const CentralElement& b) {
    if (a.element().sig() != b.element().sig()) {
        throw SignatureMismatch("poisson_bracket: signature mismatch");
    }
    const std::uint32_t p = a.p();
    const ZElement comm = commutator(lift_to_integers(a.element()), lift_to_integers(b.element()));
    ZElement divided(comm.sig());
    for (const auto& [idx, c] : comm.terms()) {
        divided.add_term(idx, divide_exact_by_prime(c, p));
    }
    return CentralElement(reduce_mod_p(divided, p));
}

/// Commutative image of the center: x_i^p -> u_i for the 2n Weyl directions
/// and c_j -> v_j for the m central variables, all over F_p.
using PoissonPoly = Poly<PrimeField>;

inline std::string poisson_variable_name(int n, std::size_t i) {
    return static_cast<int>(i) < 2 * n ? "u" + std::to_string(i + 1)
                                       : "v" + std::to_string(i + 1 - static_cast<std::size_t>(2 * n));
}

inline std::string poisson_to_string(const PoissonPoly& f, int n) {
    return f.to_string([n](std::size_t i) { return poisson_variable_name(n, i); });
}

inline PoissonPoly to_poisson_poly(const CentralElement& c) {
    const auto& sig = c.element().sig();
    const int two_n = 2 * sig.n;
    const std::size_t vars = static_cast<std::size_t>(sig.generator_count());
    const std::uint32_t p = sig.ring.p();
    PoissonPoly out(vars, sig.ring);
    for (const auto& [idx, coeff] : c.element().terms()) {
        MultiIndex e(vars);
        for (std::size_t i = 0; i < vars; ++i) {
            e[i] = static_cast<int>(i) < two_n ? idx[i] / p : idx[i];
        }
        out.add_term(std::move(e), coeff);
    }
    return out;
}

inline CentralElement from_poisson_poly(const PoissonPoly& f, int n, int m) {
    const std::uint32_t p = f.ring().p();
    Signature<PrimeField> sig(n, m, f.ring());
    if (f.vars() != static_cast<std::size_t>(sig.generator_count())) {
        throw DimensionMismatch("from_poisson_poly: variable count does not match signature");
    }
    FpElement out(sig);
    for (const auto& [e, coeff] : f.terms()) {
        MultiIndex idx(f.vars());
        for (std::size_t i = 0; i < f.vars(); ++i) {
            if (static_cast<int>(i) < 2 * n) {
                if (e[i] > (0xffffffffu / p)) throw Error("from_poisson_poly: exponent overflow");
                idx[i] = e[i] * p;
            } else {
                idx[i] = e[i];
            }
        }
        out.add_term(std::move(idx), coeff);
    }
    return CentralElement(std::move(out));
}

/// Bracket constants of the center generators, measured from the divided
/// commutator rather than fixed by convention. The measured block form is
/// {u_{n+i}, u_j} = (p-1)! delta_ij = -delta_ij (Wilson), with every bracket
/// involving a central variable equal to zero.
class PoissonStructure {
public:
    static PoissonStructure measure(int n, int m, std::uint32_t p) {
        Signature<PrimeField> sig(n, m, PrimeField(p));
        const int dim = sig.generator_count();
        const std::size_t gens = static_cast<std::size_t>(dim);

        auto center_generator = [&](int i) {  // 0-based
            MultiIndex idx(gens);
            idx[static_cast<std::size_t>(i)] = i < 2 * n ? p : 1;
            return CentralElement(FpElement::monomial(sig, idx, sig.ring.one()));
        };

        PoissonStructure s;
        s.n_ = n;
        s.m_ = m;
        s.p_ = p;
        s.constants_.assign(static_cast<std::size_t>(dim),
                            std::vector<std::uint64_t>(static_cast<std::size_t>(dim), 0));
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                const CentralElement b = poisson_bracket(center_generator(i), center_generator(j));
                if (!b.element().is_constant()) {
                    throw Error("poisson structure: generator bracket is not constant: " +
                                b.element().to_string());
                }
                s.constants_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    b.element().constant_coeff();
            }
        }
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                const auto field = sig.ring;
                if (s.constants_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                    field.neg(s.constants_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])) {
                    throw Error("poisson structure: measured constants are not antisymmetric");
                }
            }
        }
        return s;
    }

    int n() const { return n_; }
    int m() const { return m_; }
    std::uint32_t p() const { return p_; }
    int dim() const { return 2 * n_ + m_; }
    std::uint64_t constant(int i, int j) const {  // 0-based
        return constants_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

private:
    PoissonStructure() = default;

    int n_ = 0;
    int m_ = 0;
    std::uint32_t p_ = 2;
    std::vector<std::vector<std::uint64_t>> constants_;
};

/// Canonical polynomial bracket sum_{i,j} b_ij (df/du_i)(dg/du_j) with the
/// measured generator constants.
inline PoissonPoly canonical_bracket(const PoissonPoly& f, const PoissonPoly& g,
                                     const PoissonStructure& s) {
    if (f.vars() != static_cast<std::size_t>(s.dim()) || f.vars() != g.vars() ||
        f.ring() != g.ring() || f.ring().p() != s.p()) {
        throw DimensionMismatch("canonical_bracket: mismatched polynomial spaces");
    }
    PoissonPoly out(f.vars(), f.ring());
    for (int i = 0; i < s.dim(); ++i) {
        for (int j = 0; j < s.dim(); ++j) {
            const auto b = s.constant(i, j);
            if (b == 0) continue;
            auto term = mul(derivative(f, static_cast<std::size_t>(i)),
                            derivative(g, static_cast<std::size_t>(j)));
            out = add(out, scalar_mul(term, b));
        }
    }
    return out;
}

/// Result of the center-preservation check. The predicted answer for every
/// genuine endomorphism is "preserved"; a failure witnesses a bug in the
/// input or in this library, not new mathematics.
struct CenterPreservation {
    bool ok = true;
    int failing_generator = 0;               // 1-based; 0 when ok
    std::optional<FpElement> remainder;      // non-central witness terms
};

/// Images of the center generators under the reduced map: (e(x_i) mod p)^p
/// for the Weyl directions, e(c_j) mod p for the central variables.
inline std::vector<FpElement> center_generator_images(const FpEndo& ep) {
    const auto& sig = ep.sig();
    std::vector<FpElement> out;
    out.reserve(static_cast<std::size_t>(sig.generator_count()));
    const auto p = static_cast<long long>(sig.ring.p());
    for (int g = 1; g <= 2 * sig.n; ++g) out.push_back(pow(ep.image(g), p));
    for (int g = 2 * sig.n + 1; g <= sig.generator_count(); ++g) out.push_back(ep.image(g));
    return out;
}

inline CenterPreservation check_center_preserved(const ZEndo& e, std::uint32_t p) {
    if (!e.is_validated()) throw NotValidated("check_center_preserved: endomorphism not validated");
    const FpEndo ep = reduce_mod_p(e, p);
    const auto images = center_generator_images(ep);
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (!is_central(images[i])) {
            return {false, static_cast<int>(i) + 1, non_central_part(images[i])};
        }
    }
    return {};
}

/// The reduced map restricted to the center, written in the commutative
/// coordinates: component i is the image of u_i (resp. v_j).
inline std::vector<PoissonPoly> induced_center_map(const ZEndo& e, std::uint32_t p) {
    const CenterPreservation check = check_center_preserved(e, p);
    if (!check.ok) {
        throw CenterNotPreserved("center image of generator " +
                                 std::to_string(check.failing_generator) +
                                 " is not central: " + check.remainder->to_string());
    }
    const FpEndo ep = reduce_mod_p(e, p);
    std::vector<PoissonPoly> out;
    for (auto& img : center_generator_images(ep)) {
        out.push_back(to_poisson_poly(CentralElement(std::move(img))));
    }
    return out;
}

}  // namespace weyl
