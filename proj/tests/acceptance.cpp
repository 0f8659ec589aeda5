// Acceptance suite: runs every criterion at its stated size and tolerance
// (everything here is exact arithmetic, so tolerances are equalities) and
// prints one pass/fail line per criterion. Exit status 0 iff all pass.

#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "support/corpus.hpp"
#include "support/random.hpp"
#include "weyl/certify.hpp"
#include "weyl/charp.hpp"
#include "weyl/morphism.hpp"
#include "weyl/oracle.hpp"
#include "weyl/parse.hpp"
#include "weyl/symplectic.hpp"

using namespace weyl;

namespace {

int failures = 0;

void report(int criterion, const std::string& description, bool ok,
            const std::string& detail = "") {
    std::cout << "criterion " << criterion << " [" << (ok ? "PASS" : "FAIL") << "] "
              << description;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

struct InversionStats {
    bool ok = true;
    std::size_t count = 0;
    bool bound_ok = true;
    std::map<std::pair<long, std::string>, int> histogram;  // (deg inverse, bound) -> count
};

InversionStats run_inversion() {
    InversionStats stats;
    for (const auto& entry : testsupport::corpus()) {
        const QEndo e = to_rational(entry.endo);
        try {
            const InversionReport rep = invert(e);
            const QEndo id = QEndo::identity(e.sig());
            if (compose(e, rep.inverse) != id || compose(rep.inverse, e) != id) stats.ok = false;
            if (rep.inverse != to_rational(entry.inverse)) stats.ok = false;
            if (BigInt(rep.degree_inverse) > rep.bound) stats.bound_ok = false;
            stats.histogram[{rep.degree_inverse, rep.bound.str()}] += 1;
        } catch (const Error& err) {
            std::cout << "  inversion failed (n=" << entry.n << ", m=" << entry.m
                      << "): " << err.what() << "\n";
            stats.ok = false;
        }
        ++stats.count;
    }
    return stats;
}

}  // namespace

int main() {
    const auto& corpus = testsupport::corpus();

    // 1 + 2: inversion round trip and the degree bound over the corpus
    const InversionStats inv = run_inversion();
    report(1, "inversion round trip on " + std::to_string(inv.count) + " corpus automorphisms",
           inv.ok && inv.count >= 100);
    report(2, "degree bound deg(inverse) <= deg(endo)^(2n+m-1), corpus-wide", inv.bound_ok);
    std::cout << "  histogram (degree_inverse, bound) -> count:\n";
    for (const auto& [key, count] : inv.histogram) {
        std::cout << "    deg_inverse=" << key.first << " bound=" << key.second
                  << " count=" << count << "\n";
    }

    // 3: the projection kills every nonconstant monomial for the identity
    {
        bool ok = true;
        for (const int n : {1, 2}) {
            const Signature<RationalRing> sig(n, 0, RationalRing{});
            const QEndo id = QEndo::identity(sig);
            ok = ok && scalar_projection(id, QElement::one(sig)) == BigRat(1);
            for (std::uint32_t level = 1; level <= 6; ++level) {
                for_each_multi_index_of_degree(
                    static_cast<std::size_t>(2 * n), level, [&](const MultiIndex& alpha) {
                        const auto mono = QElement::monomial(sig, alpha, BigRat(1));
                        if (scalar_projection(id, mono) != BigRat(0)) ok = false;
                    });
            }
        }
        report(3, "projection: 0 on monomials of degree 1..6, 1 on the unit (n = 1, 2)", ok);
    }

    // 4: Wilson constant of the divided-commutator bracket
    {
        bool ok = true;
        for (const int n : {1, 2}) {
            for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
                const Signature<PrimeField> sig(n, 0, PrimeField(p));
                const PrimeField field(p);
                auto power = [&](int g) {
                    MultiIndex idx(static_cast<std::size_t>(2 * n));
                    idx[static_cast<std::size_t>(g - 1)] = p;
                    return CentralElement(FpElement::monomial(sig, idx, field.one()));
                };
                if (field.from_int(factorial(p - 1)) != field.from_int(BigInt(p) - 1)) ok = false;
                for (int i = 1; i <= n; ++i) {
                    for (int j = 1; j <= n; ++j) {
                        const auto got = poisson_bracket(power(n + i), power(j)).element();
                        const auto want = i == j ? FpElement::constant(sig, p - 1)
                                                 : FpElement::zero(sig);
                        if (got != want) ok = false;
                    }
                }
            }
        }
        report(4, "Wilson constant: {x_{n+i}^p, x_j^p} = -delta_ij = (p-1)! mod p", ok);
    }

    // 5: commutator bracket = canonical polynomial bracket under transport
    {
        bool ok = true;
        std::size_t cases = 0;
        testsupport::Rng rng(0xacce5501ull);
        for (const int n : {1, 2}) {
            for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
                const Signature<PrimeField> sig(n, 0, PrimeField(p));
                const auto s = PoissonStructure::measure(n, 0, p);
                for (int i = 0; i < 200; ++i) {
                    const CentralElement a(testsupport::random_central_element(rng, sig, 2, 3));
                    const CentralElement b(testsupport::random_central_element(rng, sig, 2, 3));
                    if (to_poisson_poly(poisson_bracket(a, b)) !=
                        canonical_bracket(to_poisson_poly(a), to_poisson_poly(b), s)) {
                        ok = false;
                    }
                    ++cases;
                }
            }
        }
        report(5, "bracket transport on " + std::to_string(cases) + " random central pairs", ok);
    }

    // 6: Poisson axioms for both implementations
    {
        bool ok = true;
        std::size_t cases = 0;
        testsupport::Rng rng(0xacce5502ull);
        for (const int n : {1, 2}) {
            for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
                const Signature<PrimeField> sig(n, 0, PrimeField(p));
                const auto s = PoissonStructure::measure(n, 0, p);
                for (int i = 0; i < 100; ++i) {
                    const CentralElement a(testsupport::random_central_element(rng, sig, 2, 2));
                    const CentralElement b(testsupport::random_central_element(rng, sig, 2, 2));
                    const CentralElement c(testsupport::random_central_element(rng, sig, 2, 2));

                    if (!add(poisson_bracket(a, b).element(), poisson_bracket(b, a).element())
                             .is_zero()) {
                        ok = false;
                    }
                    const CentralElement bc(mul(b.element(), c.element()));
                    if (poisson_bracket(a, bc).element() !=
                        add(mul(poisson_bracket(a, b).element(), c.element()),
                            mul(b.element(), poisson_bracket(a, c).element()))) {
                        ok = false;
                    }
                    if (!add(add(poisson_bracket(a, poisson_bracket(b, c)).element(),
                                 poisson_bracket(b, poisson_bracket(c, a)).element()),
                             poisson_bracket(c, poisson_bracket(a, b)).element())
                             .is_zero()) {
                        ok = false;
                    }

                    const auto fa = to_poisson_poly(a);
                    const auto fb = to_poisson_poly(b);
                    const auto fc = to_poisson_poly(c);
                    if (!add(canonical_bracket(fa, fb, s), canonical_bracket(fb, fa, s))
                             .is_zero()) {
                        ok = false;
                    }
                    if (canonical_bracket(fa, mul(fb, fc), s) !=
                        add(mul(canonical_bracket(fa, fb, s), fc),
                            mul(fb, canonical_bracket(fa, fc, s)))) {
                        ok = false;
                    }
                    if (!add(add(canonical_bracket(fa, canonical_bracket(fb, fc, s), s),
                                 canonical_bracket(fb, canonical_bracket(fc, fa, s), s)),
                             canonical_bracket(fc, canonical_bracket(fa, fb, s), s))
                             .is_zero()) {
                        ok = false;
                    }
                    ++cases;
                }
            }
        }
        report(6, "Poisson axioms (both brackets) on " + std::to_string(cases) + " random triples",
               ok);
    }

    // 7: the center: p-th powers, criterion equivalence, decomposition
    {
        bool ok = true;
        std::size_t equivalence_cases = 0;
        testsupport::Rng rng(0xacce5503ull);
        for (const std::uint32_t p : {2u, 3u, 5u}) {
            for (const int n : {1, 2}) {
                const Signature<PrimeField> sig(n, 0, PrimeField(p));
                for (int g = 1; g <= 2 * n; ++g) {
                    if (!is_central(pow(FpElement::generator(sig, g), p))) ok = false;
                }
                for (int i = 0; i < 250; ++i) {
                    const FpElement a = (i % 2 == 0)
                                            ? testsupport::random_element(rng, sig, 6, 4)
                                            : testsupport::random_central_element(rng, sig, 2, 3);
                    if (is_central(a) != has_central_exponents(a)) ok = false;
                    ++equivalence_cases;
                }
                for (int i = 0; i < 100; ++i) {
                    const auto a = testsupport::random_element(rng, sig, 7, 5);
                    if (central_recompose(central_decompose(a), sig) != a) ok = false;
                }
            }
        }
        report(7,
               "center: x_i^p central; criteria agree on " +
                   std::to_string(equivalence_cases) + " elements; decomposition reconstructs",
               ok);
    }

    // 8 + 9: center preservation and the determinant certificate, corpus-wide
    {
        bool center_ok = true;
        bool cert_ok = true;
        for (const auto& entry : corpus) {
            for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
                const CenterPreservation check = check_center_preserved(entry.endo, p);
                if (!check.ok) {
                    center_ok = false;
                    continue;
                }
                const auto F = induced_center_map(entry.endo, p);
                const auto s = PoissonStructure::measure(entry.n, entry.m, p);
                const auto cert = certify_jacobian(F, s);
                if (cert.verdict != JacobianCertificate::Verdict::pass) cert_ok = false;
                if (!cert.identity_ok || !cert.det_unit || !cert.det_relation_ok) cert_ok = false;
            }
        }
        report(8, "center preserved for the full corpus at p in {2,3,5,7}", center_ok);

        // the rejection path must fire on F = (u1^2, u2) at p = 5
        const PrimeField f5(5);
        const auto s1 = PoissonStructure::measure(1, 0, 5);
        const auto u1 = PoissonPoly::variable(2, f5, 0);
        const auto u2 = PoissonPoly::variable(2, f5, 1);
        const auto rejected = certify_jacobian({mul(u1, u1), u2}, s1);
        const bool rejection_fires =
            rejected.verdict == JacobianCertificate::Verdict::determinant_not_unit &&
            poisson_to_string(rejected.det_jacobian, 1) == "2*u1";
        report(9, "determinant certificate passes corpus-wide and rejects (u1^2, u2) at p = 5",
               cert_ok && rejection_fires);
    }

    // 10: normal-ordered product equals the differential-operator oracle
    {
        bool ok = true;
        std::size_t cases = 0;
        testsupport::Rng rng(0xacce5504ull);
        for (const int n : {1, 2}) {
            const Signature<RationalRing> sig(n, 0, RationalRing{});
            for (int i = 0; i < 100; ++i) {
                const auto a = testsupport::random_element(rng, sig, 5, 4);
                const auto b = testsupport::random_element(rng, sig, 5, 4);
                if (oracle_product(a, b) != mul(a, b)) ok = false;
                ++cases;
            }
        }
        report(10, "oracle product = normal-ordered product on " + std::to_string(cases) +
                       " random pairs",
               ok);
    }

    // 11: deterministic CLI output and parse/render round trip
    {
        EndoFile file;
        file.name = "triangular";
        file.ring = RingSpec::integers();
        file.n = 1;
        file.m = 0;
        file.images = {"x1", "x2 + x1^2"};
        CertifyOptions options;
        const std::string text1 = certificate_text(certify(file, options));
        const std::string text2 = certificate_text(certify(file, options));
        const std::string json1 = certificate_json(certify(file, options)).dump(2);
        const std::string json2 = certificate_json(certify(file, options)).dump(2);
        bool ok = text1 == text2 && json1 == json2 && !text1.empty();

        testsupport::Rng rng(0xacce5505ull);
        for (const int n : {1, 2}) {
            const Signature<RationalRing> sig(n, 1, RationalRing{});
            for (int i = 0; i < 250; ++i) {
                const auto a = testsupport::random_element(rng, sig, 5, 5);
                if (parse_element(a.to_string(), sig) != a) ok = false;
            }
        }
        report(11, "byte-stable certificates; parse/render round trip on 500 random elements", ok);
    }

    if (failures == 0) {
        std::cout << "acceptance: all 11 criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " criteria FAILED\n";
    return 1;
}
