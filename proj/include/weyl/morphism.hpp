#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "weyl/element.hpp"
#include "weyl/errors.hpp"

namespace weyl {

/// Endomorphism given by generator images (image(g) is the image of the
/// 1-based generator g). An instance starts unvalidated; validate() checks
/// the defining relations and returns a marked copy. Application and
/// composition require a validated instance.
template <class Ring>
class Endomorphism {
public:
    Endomorphism(Signature<Ring> sig, std::vector<Element<Ring>> images)
        : sig_(std::move(sig)), images_(std::move(images)) {
        if (images_.size() != static_cast<std::size_t>(sig_.generator_count())) {
            throw SignatureMismatch("endomorphism: expected " +
                                    std::to_string(sig_.generator_count()) + " images, got " +
                                    std::to_string(images_.size()));
        }
        for (const auto& img : images_) {
            if (img.sig() != sig_) throw SignatureMismatch("endomorphism: image signature differs");
        }
    }

    static Endomorphism identity(const Signature<Ring>& sig) {
        std::vector<Element<Ring>> images;
        images.reserve(static_cast<std::size_t>(sig.generator_count()));
        for (int g = 1; g <= sig.generator_count(); ++g) {
            images.push_back(Element<Ring>::generator(sig, g));
        }
        Endomorphism e(sig, std::move(images));
        e.validated_ = true;
        return e;
    }

    /// For results that are endomorphisms by construction (compositions,
    /// reductions of validated maps). The caller vouches for the relations.
    static Endomorphism trusted(Signature<Ring> sig, std::vector<Element<Ring>> images) {
        Endomorphism e(std::move(sig), std::move(images));
        e.validated_ = true;
        return e;
    }

    const Signature<Ring>& sig() const { return sig_; }
    const std::vector<Element<Ring>>& images() const { return images_; }

    const Element<Ring>& image(int g) const {
        if (g < 1 || g > sig_.generator_count()) {
            throw IndexOutOfRange("image index " + std::to_string(g) + " out of range");
        }
        return images_[static_cast<std::size_t>(g - 1)];
    }

    bool is_validated() const { return validated_; }

    bool operator==(const Endomorphism& o) const {
        return sig_ == o.sig_ && images_ == o.images_;
    }
    bool operator!=(const Endomorphism& o) const { return !(*this == o); }

private:
    Signature<Ring> sig_;
    std::vector<Element<Ring>> images_;
    bool validated_ = false;
};

/// Check every defining relation; on success return a validated copy, on
/// failure throw RelationViolated listing every violated pair with the value
/// of its commutator.
template <class Ring>
Endomorphism<Ring> validate(const Endomorphism<Ring>& e) {
    const auto& sig = e.sig();
    const int n = sig.n;
    const int gens = sig.generator_count();
    std::vector<RelationViolation> bad;

    auto expect = [&](int gi, int gj, const Element<Ring>& want) {
        auto got = commutator(e.image(gi), e.image(gj));
        if (got != want) {
            bad.push_back({static_cast<std::size_t>(gi), static_cast<std::size_t>(gj),
                           got.to_string()});
        }
    };

    const auto zero = Element<Ring>::zero(sig);
    const auto one = Element<Ring>::one(sig);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            expect(n + i, j, i == j ? one : zero);  // [momentum_i, position_j] = delta_ij
        }
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            expect(i, j, zero);
            expect(n + i, n + j, zero);
        }
    }
    for (int c = 2 * n + 1; c <= gens; ++c) {
        for (int k = 1; k <= gens; ++k) {
            if (k == c) continue;
            if (k > 2 * n && k >= c) continue;  // each central pair once
            expect(c, k, zero);
        }
    }

    if (!bad.empty()) {
        std::string what = "relations violated:";
        for (const auto& v : bad) {
            what += " [img" + std::to_string(v.i) + ",img" + std::to_string(v.j) +
                    "]=" + v.commutator + ";";
        }
        throw RelationViolated(what, std::move(bad));
    }
    return Endomorphism<Ring>::trusted(sig, e.images());
}

/// Substitute generator images into the normal form of a: each basis
/// monomial x^alpha maps to img_1^a1 * img_2^a2 * ... in generator order.
template <class Ring>
Element<Ring> apply(const Endomorphism<Ring>& e, const Element<Ring>& a) {
    if (!e.is_validated()) throw NotValidated("apply: endomorphism not validated");
    if (e.sig() != a.sig()) throw SignatureMismatch("apply: signature mismatch");
    const int gens = e.sig().generator_count();

    std::vector<std::vector<Element<Ring>>> powers(static_cast<std::size_t>(gens));
    auto image_power = [&](int g0, std::uint32_t k) -> const Element<Ring>& {
        auto& v = powers[static_cast<std::size_t>(g0)];
        if (v.empty()) v.push_back(Element<Ring>::one(e.sig()));
        while (v.size() <= k) v.push_back(mul(v.back(), e.image(g0 + 1)));
        return v[k];
    };

    Element<Ring> out(e.sig());
    for (const auto& [alpha, c] : a.terms()) {
        Element<Ring> term = Element<Ring>::constant(e.sig(), c);
        for (int g0 = 0; g0 < gens; ++g0) {
            const auto k = alpha[static_cast<std::size_t>(g0)];
            if (k > 0) term = mul(term, image_power(g0, k));
        }
        out = add(out, term);
    }
    return out;
}

/// (e1 . e2): image of g is apply(e1, e2(g)). Validated by construction.
template <class Ring>
Endomorphism<Ring> compose(const Endomorphism<Ring>& e1, const Endomorphism<Ring>& e2) {
    if (!e1.is_validated() || !e2.is_validated()) {
        throw NotValidated("compose: both endomorphisms must be validated");
    }
    if (e1.sig() != e2.sig()) throw SignatureMismatch("compose: signature mismatch");
    std::vector<Element<Ring>> images;
    images.reserve(e2.images().size());
    for (const auto& img : e2.images()) images.push_back(apply(e1, img));
    return Endomorphism<Ring>::trusted(e1.sig(), std::move(images));
}

/// Max degree of a generator image.
template <class Ring>
long degree_of(const Endomorphism<Ring>& e) {
    long d = kNegInfDegree;
    for (const auto& img : e.images()) d = std::max(d, img.degree());
    return d;
}

/// The derivation dual to generator i under e: for i <= n it is
/// b -> [e(x_{n+i}), b], for n < i <= 2n it is b -> -[e(x_{i-n}), b].
/// On the images these act as partial derivatives: dual_i(e(x_k)) = delta_ik.
template <class Ring>
Element<Ring> adapted_partial(const Endomorphism<Ring>& e, int i, const Element<Ring>& b) {
    if (!e.is_validated()) throw NotValidated("adapted_partial: endomorphism not validated");
    if (e.sig() != b.sig()) throw SignatureMismatch("adapted_partial: signature mismatch");
    const int n = e.sig().n;
    if (i < 1 || i > 2 * n) {
        throw IndexOutOfRange("adapted_partial: index " + std::to_string(i) + " out of 1.." +
                              std::to_string(2 * n));
    }
    if (i <= n) return commutator(e.image(n + i), b);
    return neg(commutator(e.image(i - n), b));
}

using ZEndo = Endomorphism<IntegerRing>;
using QEndo = Endomorphism<RationalRing>;
using FpEndo = Endomorphism<PrimeField>;

inline QEndo to_rational(const ZEndo& e) {
    Signature<RationalRing> sig(e.sig().n, e.sig().m, RationalRing{});
    std::vector<QElement> images;
    images.reserve(e.images().size());
    for (const auto& img : e.images()) images.push_back(to_rational(img));
    return e.is_validated() ? QEndo::trusted(sig, std::move(images))
                            : QEndo(sig, std::move(images));
}

/// Lazily extended cache of image powers, shared across projection series.
class ImagePowers {
public:
    explicit ImagePowers(const QEndo& e) : e_(&e) {
        cache_.resize(static_cast<std::size_t>(e.sig().generator_count()));
    }

    const QElement& power(int g, std::size_t k) {
        auto& v = cache_[static_cast<std::size_t>(g - 1)];
        if (v.empty()) v.push_back(QElement::one(e_->sig()));
        while (v.size() <= k) v.push_back(mul(v.back(), e_->image(g)));
        return v[k];
    }

private:
    const QEndo* e_;
    std::vector<std::vector<QElement>> cache_;
};

namespace detail {

/// One factor of the coefficient projection: the series
/// sum_k (-1)^k e(x_i)^k/k! dual_i^k(b). Alternating signs (-1)^k make this
/// kill every positive power of e(x_i): on u^j the sum telescopes to
/// sum_k (-1)^k C(j,k) = 0 for j >= 1. Terminates by local nilpotence; the
/// guard cap converts a runaway series into a diagnosable error.
inline QElement projection_factor(const QEndo& e, int i, const QElement& b, ImagePowers& powers) {
    if (b.is_zero()) return b;
    const long cap = std::max(0L, b.degree()) * std::max(1L, degree_of(e)) + 1;
    QElement acc = b;
    QElement cur = b;
    BigRat k_factorial = 1;
    for (long k = 1;; ++k) {
        cur = adapted_partial(e, i, cur);
        if (cur.is_zero()) break;
        if (k > cap) {
            throw NonTerminating("projection series for generator " + std::to_string(i) +
                                 " exceeded guard cap " + std::to_string(cap));
        }
        k_factorial *= k;
        QElement term = scalar_mul(mul(powers.power(i, static_cast<std::size_t>(k)), cur),
                                   BigRat(1) / k_factorial);
        acc = (k % 2 != 0) ? sub(acc, term) : add(acc, term);
    }
    return acc;
}

}  // namespace detail

/// Projection of b onto the coefficient ring (constants plus central
/// variables) along the e-image monomial basis: the factors for i = 1..2n
/// applied in that order. Throws NotScalar if the result still involves a
/// Weyl generator, which proves e is not an automorphism.
inline QElement central_projection(const QEndo& e, const QElement& b, ImagePowers& powers) {
    if (!e.is_validated()) throw NotValidated("central_projection: endomorphism not validated");
    if (e.sig() != b.sig()) throw SignatureMismatch("central_projection: signature mismatch");
    QElement cur = b;
    const int two_n = 2 * e.sig().n;
    for (int i = 1; i <= two_n; ++i) cur = detail::projection_factor(e, i, cur, powers);
    for (const auto& [alpha, c] : cur.terms()) {
        (void)c;
        for (int g0 = 0; g0 < two_n; ++g0) {
            if (alpha[static_cast<std::size_t>(g0)] != 0) {
                throw NotScalar("projection left a non-central remainder: " + cur.to_string());
            }
        }
    }
    return cur;
}

inline QElement central_projection(const QEndo& e, const QElement& b) {
    ImagePowers powers(e);
    return central_projection(e, b, powers);
}

/// Scalar form of the projection; additionally rejects central content.
inline BigRat scalar_projection(const QEndo& e, const QElement& b) {
    const QElement r = central_projection(e, b);
    if (!r.is_constant()) {
        throw NotScalar("projection result is not a scalar: " + r.to_string());
    }
    return r.constant_coeff();
}

struct InversionReport {
    QEndo inverse;
    long degree_sigma = 0;
    long degree_inverse = 0;
    BigInt bound = 0;              // degree_sigma^(2n+m-1)
    std::uint64_t terms_of_outer_sum = 0;
};

namespace detail {

inline BigInt degree_bound(long degree_sigma, int n, int m) {
    const long base = std::max(1L, degree_sigma);
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(2 * n + m - 1));
}

/// Inverse image of a single element. Enumerates outer-sum indices level by
/// level over the 2n Weyl directions, memoizing the iterated derivations;
/// a level on which they all vanish ends the sum. With `primed_basis` the
/// reconstruction uses image monomials instead of plain generators (the
/// literal reading; it reproduces a instead of the inverse image and is
/// exposed for experimentation only).
inline QElement invert_element_impl(const QEndo& e, const QElement& a, bool primed_basis,
                                    ImagePowers& powers, std::uint64_t* emitted) {
    if (!e.is_validated()) throw NotValidated("invert_element: endomorphism not validated");
    if (e.sig() != a.sig()) throw SignatureMismatch("invert_element: signature mismatch");
    const auto& sig = a.sig();
    const int two_n = 2 * sig.n;
    const std::size_t gens = static_cast<std::size_t>(sig.generator_count());

    QElement out(sig);
    if (a.is_zero()) return out;

    const BigInt level_cap =
        BigInt(std::max(0L, a.degree())) * detail::degree_bound(degree_of(e), sig.n, sig.m) + 1;

    auto emit = [&](const MultiIndex& alpha, const QElement& value) {
        QElement coeff = central_projection(e, value, powers);
        if (coeff.is_zero()) return;
        BigRat alpha_factorial = 1;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            alpha_factorial *= BigRat(factorial(alpha[i]));
        }
        coeff = scalar_mul(coeff, BigRat(1) / alpha_factorial);
        QElement basis = QElement::one(sig);
        if (primed_basis) {
            for (int g0 = 0; g0 < two_n; ++g0) {
                const auto k = alpha[static_cast<std::size_t>(g0)];
                if (k > 0) basis = mul(basis, powers.power(g0 + 1, k));
            }
        } else {
            MultiIndex full(gens);
            for (int g0 = 0; g0 < two_n; ++g0) {
                full[static_cast<std::size_t>(g0)] = alpha[static_cast<std::size_t>(g0)];
            }
            basis = QElement::monomial(sig, std::move(full), BigRat(1));
        }
        out = add(out, mul(coeff, basis));
        if (emitted != nullptr) ++*emitted;
    };

    std::map<MultiIndex, QElement, GrlexLess> level;
    level.emplace(MultiIndex(static_cast<std::size_t>(two_n)), a);
    emit(level.begin()->first, a);

    for (long L = 1; !level.empty(); ++L) {
        if (BigInt(L) > level_cap) {
            throw NonTerminating("outer sum exceeded level cap " + level_cap.str());
        }
        std::map<MultiIndex, QElement, GrlexLess> next;
        for (const auto& [alpha, value] : level) {
            (void)value;
            for (int j = 0; j < two_n; ++j) {
                MultiIndex candidate = alpha;
                candidate[static_cast<std::size_t>(j)] += 1;
                if (next.find(candidate) != next.end()) continue;
                // canonical predecessor: drop the first nonzero coordinate;
                // the derivations commute, so any path gives the same value
                std::size_t j0 = 0;
                while (candidate[j0] == 0) ++j0;
                MultiIndex pred = candidate;
                pred[j0] -= 1;
                auto it = level.find(pred);
                if (it == level.end()) continue;  // predecessor already vanished
                QElement derived = adapted_partial(e, static_cast<int>(j0) + 1, it->second);
                if (derived.is_zero()) continue;
                emit(candidate, derived);
                next.emplace(std::move(candidate), std::move(derived));
            }
        }
        level = std::move(next);
    }
    return out;
}

}  // namespace detail

inline QElement invert_element(const QEndo& e, const QElement& a, bool primed_basis = false) {
    ImagePowers powers(e);
    return detail::invert_element_impl(e, a, primed_basis, powers, nullptr);
}

/// Full inversion: inverse images for every generator, two-sided composition
/// check, and the degree bound degree_sigma^(2n+m-1). A bound violation is a
/// fatal implementation bug, never an input condition.
inline InversionReport invert(const QEndo& e) {
    if (!e.is_validated()) throw NotValidated("invert: endomorphism not validated");
    const auto& sig = e.sig();
    const int gens = sig.generator_count();
    for (int c = 2 * sig.n + 1; c <= gens; ++c) {
        if (e.image(c) != QElement::generator(sig, c)) {
            throw UnsupportedCentralImage(
                "invert: central generator x" + std::to_string(c) +
                " must be fixed (its inverse image cannot be recovered from commutators)");
        }
    }

    ImagePowers powers(e);
    std::uint64_t terms = 0;
    std::vector<QElement> images;
    images.reserve(static_cast<std::size_t>(gens));
    for (int g = 1; g <= gens; ++g) {
        images.push_back(
            detail::invert_element_impl(e, QElement::generator(sig, g), false, powers, &terms));
    }

    QEndo candidate(sig, std::move(images));
    QEndo inverse = QEndo::identity(sig);
    try {
        inverse = validate(candidate);
    } catch (const RelationViolated& rv) {
        throw VerificationFailed(std::string("computed inverse is not an endomorphism: ") +
                                 rv.what());
    }

    const QEndo id = QEndo::identity(sig);
    if (compose(e, inverse) != id || compose(inverse, e) != id) {
        throw VerificationFailed("two-sided composition with the computed inverse is not the identity");
    }

    InversionReport report{inverse, degree_of(e), degree_of(inverse),
                           detail::degree_bound(degree_of(e), sig.n, sig.m), terms};
    if (BigInt(report.degree_inverse) > report.bound) {
        throw BoundViolated("inverse degree " + std::to_string(report.degree_inverse) +
                            " exceeds bound " + report.bound.str());
    }
    return report;
}

}  // namespace weyl
