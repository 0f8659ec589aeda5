#include <catch2/catch_amalgamated.hpp>

#include "support/random.hpp"
#include "weyl/element.hpp"
#include "weyl/oracle.hpp"

using namespace weyl;

namespace {

const Signature<RationalRing> kSig1(1, 0, RationalRing{});

QElement qx() { return QElement::generator(kSig1, 1); }
QElement qy() { return QElement::generator(kSig1, 2); }

}  // namespace

TEST_CASE("defining relation on one pair") {
    CHECK(mul(qy(), qx()) == add(mul(qx(), qy()), QElement::one(kSig1)));
    CHECK(commutator(qy(), qx()) == QElement::one(kSig1));
    CHECK(commutator(qx(), qx()).is_zero());
}

TEST_CASE("monomial products against the closed form") {
    // y^2 x^2 = x^2 y^2 + 4 x y + 2
    const auto got = monomial_product(kSig1, MultiIndex{0, 2}, MultiIndex{2, 0});
    QElement want(kSig1);
    want.add_term(MultiIndex{2, 2}, BigRat(1));
    want.add_term(MultiIndex{1, 1}, BigRat(4));
    want.add_term(MultiIndex{0, 0}, BigRat(2));
    CHECK(got == want);

    // already normal ordered: x^2 * y^3 has a single term
    const auto noop = monomial_product(kSig1, MultiIndex{2, 0}, MultiIndex{0, 3});
    CHECK(noop == QElement::monomial(kSig1, MultiIndex{2, 3}, BigRat(1)));
}

TEST_CASE("commutator of cubes and its binomial coefficients") {
    // [y^3, x^3] = 9 x^2 y^2 + 18 x y + 6; coefficient of level k is C(3,k)^2 k!
    const auto got = commutator(pow(qy(), 3), pow(qx(), 3));
    QElement want(kSig1);
    for (std::uint32_t k = 1; k <= 3; ++k) {
        const BigInt c = binomial(3, k) * binomial(3, k) * factorial(k);
        want.add_term(MultiIndex{3 - k, 3 - k}, BigRat(c));
    }
    CHECK(got == want);
    CHECK(got.to_string() == "9*x1^2*x2^2 + 18*x1*x2 + 6");
}

TEST_CASE("product example with the oracle as the committed value") {
    const auto lhs = mul(add(qx(), qy()), sub(qx(), qy()));
    CHECK(lhs == oracle_product(add(qx(), qy()), sub(qx(), qy())));
    // (x+y)(x-y) = x^2 - y^2 + 1
    QElement want(kSig1);
    want.add_term(MultiIndex{2, 0}, BigRat(1));
    want.add_term(MultiIndex{0, 2}, BigRat(-1));
    want.add_term(MultiIndex{0, 0}, BigRat(1));
    CHECK(lhs == want);
}

TEST_CASE("multiplicative identity") {
    testsupport::Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        const auto a = testsupport::random_element(rng, kSig1, 4, 4);
        CHECK(mul(a, QElement::one(kSig1)) == a);
        CHECK(mul(QElement::one(kSig1), a) == a);
    }
}

TEST_CASE("associativity instance and property") {
    CHECK(mul(mul(qx(), qy()), qy()) == mul(qx(), mul(qy(), qy())));
    testsupport::Rng rng(12);
    for (const int n : {1, 2}) {
        const Signature<RationalRing> sig(n, 0, RationalRing{});
        for (int i = 0; i < 250; ++i) {
            const auto a = testsupport::random_element(rng, sig, 4, 3);
            const auto b = testsupport::random_element(rng, sig, 4, 3);
            const auto c = testsupport::random_element(rng, sig, 4, 3);
            REQUIRE(mul(mul(a, b), c) == mul(a, mul(b, c)));
        }
    }
}

TEST_CASE("defining relations for all generator pairs") {
    for (const int n : {1, 2, 3}) {
        for (const int m : {0, 2}) {
            const Signature<RationalRing> sig(n, m, RationalRing{});
            for (int i = 1; i <= n; ++i) {
                for (int j = 1; j <= n; ++j) {
                    const auto mom_pos =
                        commutator(QElement::generator(sig, n + i), QElement::generator(sig, j));
                    CHECK(mom_pos == (i == j ? QElement::one(sig) : QElement::zero(sig)));
                    CHECK(commutator(QElement::generator(sig, i), QElement::generator(sig, j))
                              .is_zero());
                    CHECK(commutator(QElement::generator(sig, n + i),
                                     QElement::generator(sig, n + j))
                              .is_zero());
                }
            }
            for (int c = 2 * n + 1; c <= sig.generator_count(); ++c) {
                for (int g = 1; g <= sig.generator_count(); ++g) {
                    CHECK(commutator(QElement::generator(sig, c), QElement::generator(sig, g))
                              .is_zero());
                }
            }
        }
    }
}

TEST_CASE("iterated derivations") {
    CHECK(ad_power(qy(), pow(qx(), 2), 2) == QElement::constant(kSig1, BigRat(2)));
    // k = 0 returns the argument unchanged
    testsupport::Rng rng(13);
    const auto arg = testsupport::random_element(rng, kSig1, 3, 3);
    CHECK(ad_power(qy(), arg, 0) == arg);
    CHECK(ad_power(qy(), pow(qx(), 2), 3).is_zero());
}

TEST_CASE("local nilpotence of generator derivations") {
    testsupport::Rng rng(14);
    for (const int n : {1, 2}) {
        const Signature<RationalRing> sig(n, 1, RationalRing{});
        for (int i = 0; i < 10; ++i) {
            const auto b = testsupport::random_element(rng, sig, 4, 3);
            const long long steps = std::max(0L, b.degree()) + 1;
            for (int g = 1; g <= sig.generator_count(); ++g) {
                REQUIRE(ad_power(QElement::generator(sig, g), b, steps).is_zero());
            }
        }
    }
}

TEST_CASE("degree and the zero sentinel") {
    CHECK(QElement::monomial(kSig1, MultiIndex{2, 3}, BigRat(1)).degree() == 5);
    CHECK(QElement::zero(kSig1).degree() == kNegInfDegree);
    CHECK(kNegInfDegree < -1000000);

    // central variables count toward the degree
    const Signature<RationalRing> sig_m(1, 1, RationalRing{});
    QElement a(sig_m);
    a.add_term(MultiIndex{1, 0, 0}, BigRat(1));   // x
    a.add_term(MultiIndex{1, 0, 2}, BigRat(1));   // x * central^2
    CHECK(a.degree() == 3);
}

TEST_CASE("filtration inequality") {
    testsupport::Rng rng(15);
    const Signature<RationalRing> sig(2, 0, RationalRing{});
    for (int i = 0; i < 100; ++i) {
        const auto a = testsupport::random_element(rng, sig, 4, 3);
        const auto b = testsupport::random_element(rng, sig, 4, 3);
        REQUIRE(mul(a, b).degree() <= a.degree() + b.degree());
    }
    const Signature<PrimeField> sig5(2, 0, PrimeField(5));
    for (int i = 0; i < 100; ++i) {
        const auto a = testsupport::random_element(rng, sig5, 4, 3);
        const auto b = testsupport::random_element(rng, sig5, 4, 3);
        REQUIRE(mul(a, b).degree() <= a.degree() + b.degree());
    }
}

TEST_CASE("oracle product examples") {
    CHECK(oracle_product(qy(), qx()) == mul(qy(), qx()));
    CHECK(oracle_product(pow(qy(), 2), pow(qx(), 2)).to_string() ==
          "x1^2*x2^2 + 4*x1*x2 + 2");
}

TEST_CASE("oracle equals the normal-ordered product on random pairs") {
    testsupport::Rng rng(16);
    for (const int n : {1, 2}) {
        const Signature<RationalRing> sig(n, 0, RationalRing{});
        for (int i = 0; i < 100; ++i) {
            const auto a = testsupport::random_element(rng, sig, 5, 3);
            const auto b = testsupport::random_element(rng, sig, 5, 3);
            REQUIRE(oracle_product(a, b) == mul(a, b));
        }
    }
}

TEST_CASE("oracle preconditions") {
    const Signature<RationalRing> sig_m(1, 1, RationalRing{});
    CHECK_THROWS_AS(oracle_product(QElement::one(sig_m), QElement::one(sig_m)), UnsupportedRing);
}

TEST_CASE("power is a left fold and rejects negative exponents") {
    const auto a = add(qx(), qy());
    CHECK(pow(a, 3) == mul(mul(a, a), a));
    CHECK(pow(a, 0) == QElement::one(kSig1));
    CHECK_THROWS_AS(pow(a, -1), NegativeExponent);
    CHECK_THROWS_AS(ad_power(qx(), qy(), -2), NegativeExponent);
}

TEST_CASE("signature mismatches are rejected") {
    const Signature<RationalRing> sig2(2, 0, RationalRing{});
    CHECK_THROWS_AS(add(qx(), QElement::generator(sig2, 1)), SignatureMismatch);
    const Signature<PrimeField> f5(1, 0, PrimeField(5));
    const Signature<PrimeField> f7(1, 0, PrimeField(7));
    CHECK_THROWS_AS(mul(FpElement::generator(f5, 1), FpElement::generator(f7, 1)),
                    SignatureMismatch);
}

TEST_CASE("rendering golden values") {
    QElement g(kSig1);
    g.add_term(MultiIndex{2, 1}, BigRat(1));
    g.add_term(MultiIndex{0, 1}, BigRat(3));
    g.add_term(MultiIndex{0, 0}, BigRat(-1, 2));
    CHECK(g.to_string() == "x1^2*x2 + 3*x2 - 1/2");
    CHECK(QElement::zero(kSig1).to_string() == "0");
    CHECK(mul(qy(), qx()).to_string() == "x1*x2 + 1");

    const Signature<PrimeField> f5(1, 0, PrimeField(5));
    FpElement h(f5);
    h.add_term(MultiIndex{1, 0}, 4);
    h.add_term(MultiIndex{0, 0}, 3);
    CHECK(h.to_string() == "4*x1 + 3");
}
