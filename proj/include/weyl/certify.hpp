#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "weyl/charp.hpp"
#include "weyl/errors.hpp"
#include "weyl/io.hpp"
#include "weyl/morphism.hpp"
#include "weyl/symplectic.hpp"

// The certify pipeline: relation check, inversion over Q with the degree
// bound, then per prime the center-preservation check, the induced center
// map and the Jacobian determinant certificate. Output is deterministic:
// identical input and flags give byte-identical certificates.

namespace weyl {

struct PrimeCertificate {
    std::uint32_t p = 2;
    bool center_preserved = false;
    std::string center_witness;                    // set when the check failed
    std::optional<JacobianCertificate> jacobian;   // absent when the check failed

    bool passed() const {
        return center_preserved && jacobian &&
               jacobian->verdict == JacobianCertificate::Verdict::pass;
    }
};

struct Certificate {
    enum class Verdict { automorphism, not_endomorphism, inconclusive };

    std::string endo_id;
    RingSpec ring;
    int n = 1;
    int m = 0;

    bool relation_check_ok = false;
    std::vector<RelationViolation> relation_violations;

    bool inversion_attempted = false;
    bool inversion_ok = false;
    std::string inversion_error;
    std::optional<InversionReport> q_inverse;

    std::vector<PrimeCertificate> per_prime;

    Verdict verdict = Verdict::inconclusive;

    std::string verdict_string() const {
        switch (verdict) {
            case Verdict::automorphism: return "Automorphism";
            case Verdict::not_endomorphism: return "NotEndomorphism";
            case Verdict::inconclusive: return "Inconclusive";
        }
        return "?";
    }
};

struct CertifyOptions {
    std::vector<std::uint32_t> primes{2, 3, 5, 7};
    bool modp_only = false;
};

/// Build the integer-coefficient endomorphism the pipeline works on.
/// Files declaring ring Q are accepted when every coefficient is integral.
inline ZEndo integral_endomorphism(const EndoFile& file) {
    switch (file.ring.kind) {
        case RingSpec::Kind::integers:
            return build_endomorphism(file, IntegerRing{});
        case RingSpec::Kind::rationals: {
            const QEndo q = build_endomorphism(file, RationalRing{});
            Signature<IntegerRing> sig(file.n, file.m, IntegerRing{});
            std::vector<ZElement> images;
            images.reserve(q.images().size());
            for (const auto& img : q.images()) {
                try {
                    images.push_back(to_integer(img));
                } catch (const NonInvertible&) {
                    throw Error("certify requires integer coefficients; image '" +
                                img.to_string() + "' is not integral");
                }
            }
            return ZEndo(sig, std::move(images));
        }
        case RingSpec::Kind::prime_field:
            throw Error("certify requires a characteristic-zero input (ring Z or Q)");
    }
    throw Error("certify: corrupt ring spec");
}

inline Certificate certify(const EndoFile& file, const CertifyOptions& options) {
    Certificate cert;
    cert.endo_id = file.name.empty() ? "(unnamed)" : file.name;
    cert.ring = file.ring;
    cert.n = file.n;
    cert.m = file.m;

    std::vector<std::uint32_t> primes = options.primes;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    const ZEndo raw = integral_endomorphism(file);
    ZEndo endo = raw;
    try {
        endo = validate(raw);
        cert.relation_check_ok = true;
    } catch (const RelationViolated& rv) {
        cert.relation_violations = rv.violations();
        cert.verdict = Certificate::Verdict::not_endomorphism;
        return cert;  // nothing else is defined for a non-endomorphism
    }

    if (!options.modp_only) {
        cert.inversion_attempted = true;
        try {
            cert.q_inverse = invert(to_rational(endo));
            cert.inversion_ok = true;
        } catch (const NotScalar& err) {
            cert.inversion_error = err.what();
        } catch (const VerificationFailed& err) {
            cert.inversion_error = err.what();
        } catch (const NonTerminating& err) {
            cert.inversion_error = err.what();
        } catch (const UnsupportedCentralImage& err) {
            cert.inversion_error = err.what();
        }
    }

    for (const auto p : primes) {
        PrimeCertificate pc;
        pc.p = p;
        const CenterPreservation check = check_center_preserved(endo, p);
        pc.center_preserved = check.ok;
        if (!check.ok) {
            pc.center_witness = "generator " + std::to_string(check.failing_generator) +
                                ": " + check.remainder->to_string();
        } else {
            const auto F = induced_center_map(endo, p);
            const auto s = PoissonStructure::measure(file.n, file.m, p);
            pc.jacobian = certify_jacobian(F, s);
        }
        cert.per_prime.push_back(std::move(pc));
    }

    const bool all_primes_pass =
        std::all_of(cert.per_prime.begin(), cert.per_prime.end(),
                    [](const PrimeCertificate& pc) { return pc.passed(); });
    if (cert.inversion_attempted && cert.inversion_ok && all_primes_pass) {
        cert.verdict = Certificate::Verdict::automorphism;
    } else {
        cert.verdict = Certificate::Verdict::inconclusive;
    }
    return cert;
}

inline std::string certificate_text(const Certificate& cert) {
    std::ostringstream out;
    out << "certificate:\n";
    out << "  endo: " << cert.endo_id << "\n";
    out << "  ring: " << cert.ring.to_string() << "\n";
    out << "  n: " << cert.n << "\n";
    out << "  m: " << cert.m << "\n";
    out << "  relation_check: " << (cert.relation_check_ok ? "pass" : "fail") << "\n";
    for (const auto& v : cert.relation_violations) {
        out << "    violation [img" << v.i << ",img" << v.j << "]: " << v.commutator << "\n";
    }
    if (!cert.inversion_attempted) {
        out << "  q_inverse: skipped\n";
    } else if (cert.inversion_ok) {
        const auto& rep = *cert.q_inverse;
        out << "  q_inverse: ok\n";
        out << "    degree_sigma: " << rep.degree_sigma << "\n";
        out << "    degree_inverse: " << rep.degree_inverse << "\n";
        out << "    bound: " << rep.bound.str() << "\n";
        out << "    terms_of_outer_sum: " << rep.terms_of_outer_sum << "\n";
        for (int g = 1; g <= rep.inverse.sig().generator_count(); ++g) {
            out << "    image x" << g << ": " << rep.inverse.image(g).to_string() << "\n";
        }
    } else {
        out << "  q_inverse: failed\n";
        out << "    error: " << cert.inversion_error << "\n";
    }
    for (const auto& pc : cert.per_prime) {
        out << "  prime " << pc.p << ":\n";
        out << "    center_preserved: " << (pc.center_preserved ? "yes" : "no") << "\n";
        if (!pc.center_preserved) {
            out << "    witness: " << pc.center_witness << "\n";
        } else {
            const auto& jc = *pc.jacobian;
            out << "    detJ: " << poisson_to_string(jc.det_jacobian, cert.n) << "\n";
            out << "    identity_ok: " << (jc.identity_ok ? "yes" : "no") << "\n";
            out << "    det_relation_ok: " << (jc.det_relation_ok ? "yes" : "no") << "\n";
            out << "    verdict: " << jc.verdict_string() << "\n";
        }
    }
    out << "  verdict: " << cert.verdict_string() << "\n";
    return out.str();
}

inline nlohmann::ordered_json certificate_json(const Certificate& cert) {
    nlohmann::ordered_json j;
    j["endo_id"] = cert.endo_id;
    j["ring"] = cert.ring.to_string();
    j["n"] = cert.n;
    j["m"] = cert.m;
    nlohmann::ordered_json relation;
    relation["ok"] = cert.relation_check_ok;
    auto violations = nlohmann::ordered_json::array();
    for (const auto& v : cert.relation_violations) {
        violations.push_back({{"i", v.i}, {"j", v.j}, {"commutator", v.commutator}});
    }
    relation["violations"] = violations;
    j["relation_check"] = relation;

    nlohmann::ordered_json inverse;
    if (!cert.inversion_attempted) {
        inverse["status"] = "skipped";
    } else if (cert.inversion_ok) {
        const auto& rep = *cert.q_inverse;
        inverse["status"] = "ok";
        inverse["degree_sigma"] = rep.degree_sigma;
        inverse["degree_inverse"] = rep.degree_inverse;
        inverse["bound"] = rep.bound.str();
        inverse["terms_of_outer_sum"] = rep.terms_of_outer_sum;
        auto images = nlohmann::ordered_json::array();
        for (int g = 1; g <= rep.inverse.sig().generator_count(); ++g) {
            images.push_back(rep.inverse.image(g).to_string());
        }
        inverse["images"] = images;
    } else {
        inverse["status"] = "failed";
        inverse["error"] = cert.inversion_error;
    }
    j["q_inverse"] = inverse;

    auto per_prime = nlohmann::ordered_json::array();
    for (const auto& pc : cert.per_prime) {
        nlohmann::ordered_json entry;
        entry["p"] = pc.p;
        entry["center_preserved"] = pc.center_preserved;
        if (!pc.center_preserved) {
            entry["witness"] = pc.center_witness;
        } else {
            const auto& jc = *pc.jacobian;
            nlohmann::ordered_json jac;
            jac["detJ"] = poisson_to_string(jc.det_jacobian, cert.n);
            jac["identity_ok"] = jc.identity_ok;
            jac["det_relation_ok"] = jc.det_relation_ok;
            jac["verdict"] = jc.verdict_string();
            entry["jacobian"] = jac;
        }
        per_prime.push_back(entry);
    }
    j["per_prime"] = per_prime;
    j["verdict"] = cert.verdict_string();
    return j;
}

}  // namespace weyl
