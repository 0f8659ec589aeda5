#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "weyl/charp.hpp"
#include "weyl/errors.hpp"
#include "weyl/poly.hpp"

// Jacobian matrices and exact determinants of polynomial self-maps of the
// characteristic-p center, and the determinant certificate: for a map
// induced by an endomorphism the bracket matrix of the components equals
// J P J^T, forcing det(J)^2 = 1.

namespace weyl {

/// Square matrix of commutative polynomials over F_p, all sharing one
/// variable space.
class PolyMatrix {
public:
    PolyMatrix(std::size_t dim, std::size_t vars, PrimeField ring)
        : dim_(dim), entries_(dim * dim, PoissonPoly::zero(vars, ring)) {}

    static PolyMatrix identity(std::size_t dim, std::size_t vars, const PrimeField& ring) {
        PolyMatrix m(dim, vars, ring);
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = PoissonPoly::one(vars, ring);
        return m;
    }

    std::size_t dim() const { return dim_; }
    std::size_t vars() const { return entries_.front().vars(); }
    const PrimeField& ring() const { return entries_.front().ring(); }

    PoissonPoly& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const PoissonPoly& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    PolyMatrix transposed() const {
        PolyMatrix out(dim_, vars(), ring());
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) out.at(j, i) = at(i, j);
        }
        return out;
    }

    bool operator==(const PolyMatrix& o) const { return dim_ == o.dim_ && entries_ == o.entries_; }
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

private:
    std::size_t dim_;
    std::vector<PoissonPoly> entries_;
};

inline PolyMatrix mul(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.dim() != b.dim() || a.vars() != b.vars() || a.ring() != b.ring()) {
        throw DimensionMismatch("matrix product: shapes differ");
    }
    PolyMatrix out(a.dim(), a.vars(), a.ring());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            PoissonPoly acc = PoissonPoly::zero(a.vars(), a.ring());
            for (std::size_t k = 0; k < a.dim(); ++k) acc = add(acc, mul(a.at(i, k), b.at(k, j)));
            out.at(i, j) = std::move(acc);
        }
    }
    return out;
}

inline PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) { return mul(a, b); }

/// Constant matrix of the measured bracket structure.
inline PolyMatrix structure_matrix(const PoissonStructure& s) {
    const auto dim = static_cast<std::size_t>(s.dim());
    PrimeField ring(s.p());
    PolyMatrix out(dim, dim, ring);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const auto c = s.constant(static_cast<int>(i), static_cast<int>(j));
            if (c != 0) out.at(i, j) = PoissonPoly::constant(dim, ring, c);
        }
    }
    return out;
}

/// Row-gradient Jacobian J[i][j] = dF_i/du_j. Exponents divisible by p
/// differentiate to zero.
inline PolyMatrix jacobian(const std::vector<PoissonPoly>& F) {
    if (F.empty()) throw DimensionMismatch("jacobian: empty map");
    const std::size_t dim = F.size();
    for (const auto& f : F) {
        if (f.vars() != dim || f.ring() != F.front().ring()) {
            throw DimensionMismatch("jacobian: need a square self-map (components == variables)");
        }
    }
    PolyMatrix out(dim, dim, F.front().ring());
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) out.at(i, j) = derivative(F[i], j);
    }
    return out;
}

/// Fraction-free (Bareiss) determinant over the polynomial ring; every
/// interior division is exact. Row swaps track the sign.
inline PoissonPoly det_bareiss(const PolyMatrix& m) {
    const std::size_t d = m.dim();
    PolyMatrix w = m;
    bool negate = false;
    PoissonPoly prev = PoissonPoly::one(m.vars(), m.ring());
    for (std::size_t k = 0; k + 1 < d; ++k) {
        if (w.at(k, k).is_zero()) {
            std::size_t r = k + 1;
            while (r < d && w.at(r, k).is_zero()) ++r;
            if (r == d) return PoissonPoly::zero(m.vars(), m.ring());
            for (std::size_t j = 0; j < d; ++j) std::swap(w.at(k, j), w.at(r, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < d; ++i) {
            for (std::size_t j = k + 1; j < d; ++j) {
                auto num = sub(mul(w.at(k, k), w.at(i, j)), mul(w.at(i, k), w.at(k, j)));
                w.at(i, j) = divide_exact(num, prev);
            }
        }
        prev = w.at(k, k);
    }
    auto det = w.at(d - 1, d - 1);
    return negate ? neg(det) : det;
}

/// Cofactor expansion along the first row; reference implementation for
/// small sizes.
inline PoissonPoly det_cofactor(const PolyMatrix& m) {
    const std::size_t d = m.dim();
    if (d == 1) return m.at(0, 0);
    PoissonPoly acc = PoissonPoly::zero(m.vars(), m.ring());
    for (std::size_t j = 0; j < d; ++j) {
        if (m.at(0, j).is_zero()) continue;
        PolyMatrix minor(d - 1, m.vars(), m.ring());
        for (std::size_t i = 1; i < d; ++i) {
            std::size_t col = 0;
            for (std::size_t k = 0; k < d; ++k) {
                if (k == j) continue;
                minor.at(i - 1, col++) = m.at(i, k);
            }
        }
        auto term = mul(m.at(0, j), det_cofactor(minor));
        acc = (j % 2 == 0) ? add(acc, term) : sub(acc, term);
    }
    return acc;
}

inline PoissonPoly det_exact(const PolyMatrix& m) { return det_bareiss(m); }

/// Antisymmetric matrix of brackets of the map components.
inline PolyMatrix bracket_matrix(const std::vector<PoissonPoly>& F, const PoissonStructure& s) {
    if (F.size() != static_cast<std::size_t>(s.dim())) {
        throw DimensionMismatch("bracket_matrix: component count != structure dimension");
    }
    PolyMatrix out(F.size(), F.front().vars(), F.front().ring());
    for (std::size_t i = 0; i < F.size(); ++i) {
        for (std::size_t j = 0; j < F.size(); ++j) {
            out.at(i, j) = canonical_bracket(F[i], F[j], s);
        }
    }
    return out;
}

/// Certificate of the determinant argument for one induced center map.
struct JacobianCertificate {
    enum class Verdict { pass, identity_failed, determinant_not_unit };

    std::uint32_t p = 2;
    PoissonPoly det_jacobian;
    bool identity_ok = false;      // bracket matrix equals J P J^T
    bool det_unit = false;         // det(J) is the constant 1 or p-1
    bool det_relation_ok = false;  // det(bracket matrix) = det(J)^2 det(P)
    Verdict verdict = Verdict::pass;

    std::string verdict_string() const {
        switch (verdict) {
            case Verdict::pass: return "pass";
            case Verdict::identity_failed: return "identity_failed";
            case Verdict::determinant_not_unit: return "determinant_not_unit";
        }
        return "?";
    }

    /// Raise the typed error matching a failed verdict.
    void require_pass() const {
        if (verdict == Verdict::identity_failed) {
            throw IdentityFailed("bracket matrix does not equal J P J^T");
        }
        if (verdict == Verdict::determinant_not_unit) {
            throw DeterminantNotUnit("det(J) is not a unit constant");
        }
    }
};

/// Run the full determinant argument on a polynomial self-map F:
/// (a) B = bracket matrix of the components, (b) the chain-rule identity
/// B = J P J^T as polynomial matrices, (c) det(J) constant in {1, p-1},
/// (d) det(B) = det(J)^2 det(P).
inline JacobianCertificate certify_jacobian(const std::vector<PoissonPoly>& F,
                                            const PoissonStructure& s) {
    const PrimeField ring(s.p());
    const PolyMatrix J = jacobian(F);
    const PolyMatrix B = bracket_matrix(F, s);
    const PolyMatrix P = structure_matrix(s);

    JacobianCertificate cert{s.p(), det_exact(J), false, false, false,
                             JacobianCertificate::Verdict::pass};
    cert.identity_ok = (B == J * P * J.transposed());

    const auto& d = cert.det_jacobian;
    cert.det_unit = d.is_constant() &&
                    (d.constant_coeff() == ring.one() || d.constant_coeff() == ring.neg(ring.one()));

    const PoissonPoly detB = det_exact(B);
    const PoissonPoly detP = det_exact(P);
    cert.det_relation_ok = (detB == mul(mul(d, d), detP));

    if (!cert.identity_ok || !cert.det_relation_ok) {
        cert.verdict = JacobianCertificate::Verdict::identity_failed;
    } else if (!cert.det_unit) {
        cert.verdict = JacobianCertificate::Verdict::determinant_not_unit;
    }
    return cert;
}

}  // namespace weyl
