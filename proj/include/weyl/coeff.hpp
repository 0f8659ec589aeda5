#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <variant>

#include "weyl/errors.hpp"

namespace weyl {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline bool is_prime_u32(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

inline BigInt factorial(std::uint64_t n) {
    BigInt r = 1;
    for (std::uint64_t k = 2; k <= n; ++k) r *= k;
    return r;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;  // exact: r is C(n, i+1) times earlier factors
    }
    return r;
}

/// a / p for p | a; the failure signals non-central bracket inputs upstream.
inline BigInt divide_exact_by_prime(const BigInt& a, std::uint32_t p) {
    if (a % p != 0) {
        throw NotDivisible("divide_exact_by_prime: " + a.str() + " is not divisible by " +
                           std::to_string(p));
    }
    return a / p;
}

// ---------------------------------------------------------------------------
// Coefficient rings. Each ring type carries its scalar representation and the
// exact operations on it; elements of the algebra are parameterized over one
// of these.
// ---------------------------------------------------------------------------

struct IntegerRing {
    using coeff_type = BigInt;
    static constexpr bool is_field = false;

    coeff_type zero() const { return 0; }
    coeff_type one() const { return 1; }
    coeff_type add(const coeff_type& a, const coeff_type& b) const { return a + b; }
    coeff_type sub(const coeff_type& a, const coeff_type& b) const { return a - b; }
    coeff_type mul(const coeff_type& a, const coeff_type& b) const { return a * b; }
    coeff_type neg(const coeff_type& a) const { return -a; }
    coeff_type div(const coeff_type& a, const coeff_type& b) const {
        if (b == 0) throw DivisionByZero("division by zero in Z");
        if (a % b != 0) throw NonInvertible("inexact division in Z: " + a.str() + " / " + b.str());
        return a / b;
    }
    coeff_type from_int(const BigInt& v) const { return v; }
    bool is_zero(const coeff_type& a) const { return a == 0; }
    bool is_negative(const coeff_type& a) const { return a < 0; }
    std::string to_string(const coeff_type& a) const { return a.str(); }
    std::string name() const { return "Z"; }
    bool operator==(const IntegerRing&) const { return true; }
    bool operator!=(const IntegerRing&) const { return false; }
};

struct RationalRing {
    using coeff_type = BigRat;
    static constexpr bool is_field = true;

    coeff_type zero() const { return 0; }
    coeff_type one() const { return 1; }
    coeff_type add(const coeff_type& a, const coeff_type& b) const { return a + b; }
    coeff_type sub(const coeff_type& a, const coeff_type& b) const { return a - b; }
    coeff_type mul(const coeff_type& a, const coeff_type& b) const { return a * b; }
    coeff_type neg(const coeff_type& a) const { return -a; }
    coeff_type div(const coeff_type& a, const coeff_type& b) const {
        if (b == 0) throw DivisionByZero("division by zero in Q");
        return a / b;
    }
    coeff_type from_int(const BigInt& v) const { return BigRat(v); }
    bool is_zero(const coeff_type& a) const { return a == 0; }
    bool is_negative(const coeff_type& a) const { return a < 0; }
    std::string to_string(const coeff_type& a) const {
        const BigInt num = boost::multiprecision::numerator(a);
        const BigInt den = boost::multiprecision::denominator(a);
        if (den == 1) return num.str();
        return num.str() + "/" + den.str();
    }
    std::string name() const { return "Q"; }
    bool operator==(const RationalRing&) const { return true; }
    bool operator!=(const RationalRing&) const { return false; }
};

/// F_p for a prime p < 2^31. Residues are stored canonically in [0, p).
class PrimeField {
public:
    using coeff_type = std::uint64_t;
    static constexpr bool is_field = true;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p < 2 || p > 0x7fffffffu || !is_prime_u32(p)) {
            throw Error("PrimeField: modulus " + std::to_string(p) + " is not a prime < 2^31");
        }
    }

    std::uint32_t p() const { return p_; }

    coeff_type zero() const { return 0; }
    coeff_type one() const { return 1 % p_; }
    coeff_type add(coeff_type a, coeff_type b) const { return (a + b) % p_; }
    coeff_type sub(coeff_type a, coeff_type b) const { return (a + p_ - b) % p_; }
    coeff_type mul(coeff_type a, coeff_type b) const { return (a * b) % p_; }
    coeff_type neg(coeff_type a) const { return a == 0 ? 0 : p_ - a; }
    coeff_type inv(coeff_type a) const {
        if (a == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(p_));
        // extended Euclid on signed 64-bit; p < 2^31 keeps everything in range
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
        while (new_r != 0) {
            const std::int64_t q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        return static_cast<coeff_type>(t < 0 ? t + static_cast<std::int64_t>(p_) : t);
    }
    coeff_type div(coeff_type a, coeff_type b) const { return mul(a, inv(b)); }
    coeff_type from_int(const BigInt& v) const {
        BigInt r = v % p_;
        if (r < 0) r += p_;
        return r.convert_to<coeff_type>();
    }
    bool is_zero(coeff_type a) const { return a == 0; }
    bool is_negative(coeff_type) const { return false; }
    std::string to_string(coeff_type a) const { return std::to_string(a); }
    std::string name() const { return "Fp:" + std::to_string(p_); }
    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
    std::uint32_t p_;
};

// ---------------------------------------------------------------------------
// Runtime ring descriptor, used at CLI/file boundaries where the ring is
// chosen by input data rather than by a template parameter.
// ---------------------------------------------------------------------------

struct RingSpec {
    enum class Kind { integers, rationals, prime_field };

    Kind kind = Kind::rationals;
    std::uint32_t p = 0;  // present iff kind == prime_field

    static RingSpec integers() { return {Kind::integers, 0}; }
    static RingSpec rationals() { return {Kind::rationals, 0}; }
    static RingSpec prime_field(std::uint32_t p) {
        PrimeField check(p);  // validates primality
        return {Kind::prime_field, check.p()};
    }

    /// Accepts "Z", "Q" or "Fp:<p>".
    static RingSpec parse(const std::string& text) {
        if (text == "Z") return integers();
        if (text == "Q") return rationals();
        if (text.rfind("Fp:", 0) == 0) {
            const std::string digits = text.substr(3);
            if (digits.empty() || digits.size() > 10 ||
                digits.find_first_not_of("0123456789") != std::string::npos) {
                throw Error("RingSpec: malformed prime in '" + text + "'");
            }
            const unsigned long long v = std::stoull(digits);
            if (v > 0x7fffffffull) throw Error("RingSpec: prime out of range in '" + text + "'");
            return prime_field(static_cast<std::uint32_t>(v));
        }
        throw Error("RingSpec: unknown ring '" + text + "' (expected Z, Q or Fp:<p>)");
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::integers: return "Z";
            case Kind::rationals: return "Q";
            case Kind::prime_field: return "Fp:" + std::to_string(p);
        }
        return "?";
    }

    bool operator==(const RingSpec& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const RingSpec& o) const { return !(*this == o); }
};

/// Exact scalar tagged with its ring: a big integer, a reduced fraction with
/// positive denominator, or a canonical residue in [0, p).
class Coefficient {
public:
    static Coefficient integer(BigInt v) { return Coefficient(RingSpec::integers(), std::move(v)); }
    static Coefficient rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        // cpp_rational wants a positive denominator at construction
        return den < 0 ? Coefficient(RingSpec::rationals(), BigRat(-num, -den))
                       : Coefficient(RingSpec::rationals(), BigRat(num, den));
    }
    static Coefficient rational(BigRat v) { return Coefficient(RingSpec::rationals(), std::move(v)); }
    static Coefficient residue(std::uint32_t p, const BigInt& v) {
        return Coefficient(RingSpec::prime_field(p), PrimeField(p).from_int(v));
    }

    const RingSpec& ring() const { return ring_; }

    const BigInt& integer_value() const { return std::get<BigInt>(value_); }
    const BigRat& rational_value() const { return std::get<BigRat>(value_); }
    std::uint64_t residue_value() const { return std::get<std::uint64_t>(value_); }

    bool is_zero() const {
        switch (ring_.kind) {
            case RingSpec::Kind::integers: return integer_value() == 0;
            case RingSpec::Kind::rationals: return rational_value() == 0;
            case RingSpec::Kind::prime_field: return residue_value() == 0;
        }
        return false;
    }

    friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
        a.require_same_ring(b, "add");
        switch (a.ring_.kind) {
            case RingSpec::Kind::integers: return integer(a.integer_value() + b.integer_value());
            case RingSpec::Kind::rationals: return rational(a.rational_value() + b.rational_value());
            default:
                return Coefficient(a.ring_, PrimeField(a.ring_.p).add(a.residue_value(), b.residue_value()));
        }
    }
    friend Coefficient operator-(const Coefficient& a, const Coefficient& b) {
        a.require_same_ring(b, "sub");
        switch (a.ring_.kind) {
            case RingSpec::Kind::integers: return integer(a.integer_value() - b.integer_value());
            case RingSpec::Kind::rationals: return rational(a.rational_value() - b.rational_value());
            default:
                return Coefficient(a.ring_, PrimeField(a.ring_.p).sub(a.residue_value(), b.residue_value()));
        }
    }
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
        a.require_same_ring(b, "mul");
        switch (a.ring_.kind) {
            case RingSpec::Kind::integers: return integer(a.integer_value() * b.integer_value());
            case RingSpec::Kind::rationals: return rational(a.rational_value() * b.rational_value());
            default:
                return Coefficient(a.ring_, PrimeField(a.ring_.p).mul(a.residue_value(), b.residue_value()));
        }
    }
    friend Coefficient operator-(const Coefficient& a) {
        switch (a.ring_.kind) {
            case RingSpec::Kind::integers: return integer(-a.integer_value());
            case RingSpec::Kind::rationals: return rational(-a.rational_value());
            default: return Coefficient(a.ring_, PrimeField(a.ring_.p).neg(a.residue_value()));
        }
    }
    friend Coefficient operator/(const Coefficient& a, const Coefficient& b) {
        a.require_same_ring(b, "div");
        switch (a.ring_.kind) {
            case RingSpec::Kind::integers: return integer(IntegerRing().div(a.integer_value(), b.integer_value()));
            case RingSpec::Kind::rationals: return rational(RationalRing().div(a.rational_value(), b.rational_value()));
            default:
                return Coefficient(a.ring_, PrimeField(a.ring_.p).div(a.residue_value(), b.residue_value()));
        }
    }

    /// The bracket's interior division: defined on integers only.
    Coefficient divide_exact_by_prime(std::uint32_t p) const {
        if (ring_.kind != RingSpec::Kind::integers) {
            throw UnsupportedRing("divide_exact_by_prime needs an integer coefficient");
        }
        return integer(weyl::divide_exact_by_prime(integer_value(), p));
    }

    bool operator==(const Coefficient& o) const { return ring_ == o.ring_ && value_ == o.value_; }
    bool operator!=(const Coefficient& o) const { return !(*this == o); }

    std::string to_string() const {
        switch (ring_.kind) {
            case RingSpec::Kind::integers: return integer_value().str();
            case RingSpec::Kind::rationals: return RationalRing().to_string(rational_value());
            case RingSpec::Kind::prime_field: return std::to_string(residue_value());
        }
        return "?";
    }

private:
    Coefficient(RingSpec ring, std::variant<BigInt, BigRat, std::uint64_t> value)
        : ring_(ring), value_(std::move(value)) {}

    void require_same_ring(const Coefficient& o, const char* op) const {
        if (ring_ != o.ring_) {
            throw MixedRings(std::string("coefficient ") + op + ": " + ring_.to_string() + " vs " +
                             o.ring_.to_string());
        }
    }

    RingSpec ring_;
    std::variant<BigInt, BigRat, std::uint64_t> value_;
};

}  // namespace weyl
