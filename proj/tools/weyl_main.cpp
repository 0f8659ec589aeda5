#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weyl/certify.hpp"
#include "weyl/charp.hpp"
#include "weyl/io.hpp"
#include "weyl/morphism.hpp"
#include "weyl/parse.hpp"
#include "weyl/selftest.hpp"

// Exit codes: 0 success (certify: verdict Automorphism), 1 mathematical
// rejection (certificate or report still printed), 2 file/parse/usage errors.

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitInputError = 2;

const char* kGrammarHelp =
    "Expression grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;\n"
    "factor := base ('^' nat)?; base := literal | var | '(' expr ')' | '-' base;\n"
    "literal := INT ('/' INT)? (a '/' forms a rational literal; there is no division).\n"
    "'^' binds tighter than '*' and is nonassociative. Unary minus is part of the\n"
    "base, so in -x1^2 the exponent applies to the negated base; parenthesize for\n"
    "other readings. Variables: x1..x{2n+m}; y1..yn alias x{n+1}..x{2n} on input.\n"
    "Multiplication is noncommutative, left to right: x2*x1 parses to x1*x2 + 1.";

weyl::EndoFile load_with_ring_override(const std::string& path, const std::string& ring_override) {
    weyl::EndoFile file = weyl::load_endo_file(path);
    if (!ring_override.empty()) file.ring = weyl::RingSpec::parse(ring_override);
    return file;
}

std::string endo_id(const weyl::EndoFile& file) {
    return file.name.empty() ? "(unnamed)" : file.name;
}

int cmd_invert(const std::string& path, const std::string& ring_override, bool primed_basis,
               bool structured) {
    const weyl::EndoFile file = load_with_ring_override(path, ring_override);
    if (file.ring.kind == weyl::RingSpec::Kind::prime_field) {
        throw weyl::Error("invert works over Q (or Z lifted to Q); got ring " +
                          file.ring.to_string());
    }

    weyl::QEndo endo = weyl::with_ring(file.ring, [&](auto ring) -> weyl::QEndo {
        using R = decltype(ring);
        if constexpr (std::is_same_v<R, weyl::RationalRing>) {
            return weyl::build_endomorphism(file, ring);
        } else if constexpr (std::is_same_v<R, weyl::IntegerRing>) {
            return weyl::to_rational(weyl::build_endomorphism(file, ring));
        } else {
            throw weyl::Error("invert requires ring Z or Q");
        }
    });

    try {
        endo = weyl::validate(endo);
    } catch (const weyl::RelationViolated& rv) {
        std::cout << "not an endomorphism: " << rv.what() << "\n";
        return kExitRejected;
    }

    const auto& sig = endo.sig();
    if (primed_basis) {
        // Experimental reading: reconstruct on image monomials. This
        // reproduces the argument instead of its inverse image; shown with
        // its round-trip status rather than failing.
        std::vector<weyl::QElement> images;
        bool round_trip = true;
        for (int g = 1; g <= sig.generator_count(); ++g) {
            images.push_back(weyl::invert_element(endo, weyl::QElement::generator(sig, g), true));
            round_trip = round_trip &&
                         weyl::apply(endo, images.back()) == weyl::QElement::generator(sig, g);
        }
        if (structured) {
            nlohmann::ordered_json j;
            j["endo_id"] = endo_id(file);
            j["basis"] = "primed";
            auto arr = nlohmann::ordered_json::array();
            for (const auto& img : images) arr.push_back(img.to_string());
            j["images"] = arr;
            j["round_trip"] = round_trip;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "inversion (primed basis, experimental):\n";
            std::cout << "  endo: " << endo_id(file) << "\n";
            for (std::size_t g = 0; g < images.size(); ++g) {
                std::cout << "  image x" << g + 1 << ": " << images[g].to_string() << "\n";
            }
            std::cout << "  round_trip: " << (round_trip ? "ok" : "fails") << "\n";
        }
        return kExitOk;
    }

    try {
        const weyl::InversionReport report = weyl::invert(endo);
        if (structured) {
            nlohmann::ordered_json j;
            j["endo_id"] = endo_id(file);
            j["degree_sigma"] = report.degree_sigma;
            j["degree_inverse"] = report.degree_inverse;
            j["bound"] = report.bound.str();
            j["terms_of_outer_sum"] = report.terms_of_outer_sum;
            auto arr = nlohmann::ordered_json::array();
            for (int g = 1; g <= sig.generator_count(); ++g) {
                arr.push_back(report.inverse.image(g).to_string());
            }
            j["images"] = arr;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "inversion:\n";
            std::cout << "  endo: " << endo_id(file) << "\n";
            std::cout << "  degree_sigma: " << report.degree_sigma << "\n";
            std::cout << "  degree_inverse: " << report.degree_inverse << "\n";
            std::cout << "  bound: " << report.bound.str() << "\n";
            std::cout << "  terms_of_outer_sum: " << report.terms_of_outer_sum << "\n";
            for (int g = 1; g <= sig.generator_count(); ++g) {
                std::cout << "  image x" << g << ": " << report.inverse.image(g).to_string()
                          << "\n";
            }
        }
        return kExitOk;
    } catch (const weyl::NotScalar& err) {
        std::cout << "not invertible over Q: " << err.what() << "\n";
    } catch (const weyl::VerificationFailed& err) {
        std::cout << "not invertible over Q: " << err.what() << "\n";
    } catch (const weyl::UnsupportedCentralImage& err) {
        std::cout << "not supported: " << err.what() << "\n";
    }
    return kExitRejected;
}

int cmd_certify(const std::string& path, const std::string& ring_override,
                std::vector<std::uint32_t> primes, bool modp_only, bool structured) {
    const weyl::EndoFile file = load_with_ring_override(path, ring_override);
    weyl::CertifyOptions options;
    if (!primes.empty()) options.primes = std::move(primes);
    options.modp_only = modp_only;
    const weyl::Certificate cert = weyl::certify(file, options);
    if (structured) {
        std::cout << weyl::certificate_json(cert).dump(2) << "\n";
    } else {
        std::cout << weyl::certificate_text(cert);
    }
    return cert.verdict == weyl::Certificate::Verdict::automorphism ? kExitOk : kExitRejected;
}

int cmd_reduce(const std::string& path, const std::string& ring_override, std::uint32_t p,
               bool structured) {
    const weyl::EndoFile file = load_with_ring_override(path, ring_override);
    const weyl::ZEndo endo = weyl::integral_endomorphism(file);
    const weyl::FpEndo reduced = weyl::reduce_mod_p(endo, p);

    weyl::EndoFile out = file;
    out.ring = weyl::RingSpec::prime_field(p);
    out.images.clear();
    for (const auto& img : reduced.images()) out.images.push_back(img.to_string());
    if (structured) {
        nlohmann::ordered_json j;
        j["endo_id"] = endo_id(file);
        j["ring"] = out.ring.to_string();
        j["n"] = out.n;
        j["m"] = out.m;
        j["images"] = out.images;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << weyl::serialize_endo_file(out);
    }
    return kExitOk;
}

int cmd_poisson(const std::string& expr_a, const std::string& expr_b, std::uint32_t p, int n,
                bool structured) {
    const weyl::Signature<weyl::IntegerRing> zsig(n, 0, weyl::IntegerRing{});
    const weyl::ZElement za = weyl::parse_element(expr_a, zsig);
    const weyl::ZElement zb = weyl::parse_element(expr_b, zsig);
    try {
        const weyl::CentralElement a(weyl::reduce_mod_p(za, p));
        const weyl::CentralElement b(weyl::reduce_mod_p(zb, p));
        const weyl::CentralElement bracket = weyl::poisson_bracket(a, b);
        const auto as_poly = weyl::to_poisson_poly(bracket);
        if (structured) {
            nlohmann::ordered_json j;
            j["p"] = p;
            j["n"] = n;
            j["a"] = a.element().to_string();
            j["b"] = b.element().to_string();
            j["bracket"] = bracket.element().to_string();
            j["bracket_u"] = weyl::poisson_to_string(as_poly, n);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "poisson:\n";
            std::cout << "  p: " << p << "\n";
            std::cout << "  n: " << n << "\n";
            std::cout << "  a: " << a.element().to_string() << "\n";
            std::cout << "  b: " << b.element().to_string() << "\n";
            std::cout << "  bracket: " << bracket.element().to_string() << "\n";
            std::cout << "  bracket_u: " << weyl::poisson_to_string(as_poly, n) << "\n";
        }
        return kExitOk;
    } catch (const weyl::NotCentralInput& err) {
        std::cout << "not central mod " << p << ": " << err.what() << "\n";
        return kExitRejected;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for Weyl algebras: normal-ordered products, automorphism\n"
                 "inversion with its degree bound, and characteristic-p center certificates.\n\n" +
                 std::string(kGrammarHelp)};
    app.require_subcommand(1);

    std::string path, ring_override, format = "text";
    bool primed_basis = false, modp_only = false;
    std::vector<std::uint32_t> primes;
    std::uint32_t p = 5;
    int n = 1;
    std::string expr_a, expr_b;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"text", "structured"}));
    };

    CLI::App* invert = app.add_subcommand("invert", "Invert an endomorphism over Q");
    invert->add_option("file", path, "Endomorphism file")->required();
    invert->add_option("--ring", ring_override, "Override the file's ring (Z or Q)");
    invert->add_flag("--primed-basis", primed_basis,
                     "Experimental: reconstruct on image monomials instead of generators");
    add_format(invert);

    CLI::App* certify = app.add_subcommand("certify", "Run the full certificate pipeline");
    certify->add_option("file", path, "Endomorphism file")->required();
    certify->add_option("--ring", ring_override, "Override the file's ring");
    certify->add_option("--primes", primes, "Primes for the mod-p stages (default 2,3,5,7)")
        ->delimiter(',');
    certify->add_flag("--modp-only", modp_only, "Skip the Q-inversion (verdict at best Inconclusive)");
    add_format(certify);

    CLI::App* reduce = app.add_subcommand("reduce", "Reduce an endomorphism modulo a prime");
    reduce->add_option("file", path, "Endomorphism file")->required();
    reduce->add_option("--ring", ring_override, "Override the file's ring");
    reduce->add_option("--p", p, "Prime modulus")->required();
    add_format(reduce);

    CLI::App* poisson = app.add_subcommand("poisson", "Bracket of two central elements mod p");
    poisson->add_option("a", expr_a, "First central expression (over Z)")->required();
    poisson->add_option("b", expr_b, "Second central expression (over Z)")->required();
    poisson->add_option("--p", p, "Prime modulus")->required();
    poisson->add_option("--n", n, "Number of Weyl pairs (default 1)");
    add_format(poisson);

    CLI::App* selftest = app.add_subcommand("selftest", "Wilson-constant and bracket-axiom suites");
    selftest->add_option("--primes", primes, "Primes to test (default 2,3,5,7)")->delimiter(',');

    CLI11_PARSE(app, argc, argv);
    const bool structured = format == "structured";

    try {
        if (invert->parsed()) return cmd_invert(path, ring_override, primed_basis, structured);
        if (certify->parsed())
            return cmd_certify(path, ring_override, primes, modp_only, structured);
        if (reduce->parsed()) return cmd_reduce(path, ring_override, p, structured);
        if (poisson->parsed()) return cmd_poisson(expr_a, expr_b, p, n, structured);
        if (selftest->parsed()) {
            const std::vector<std::uint32_t> use =
                primes.empty() ? std::vector<std::uint32_t>{2, 3, 5, 7} : primes;
            return weyl::run_selftest(std::cout, use) ? kExitOk : kExitRejected;
        }
    } catch (const weyl::SyntaxError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return kExitInputError;
    } catch (const weyl::UnknownVariable& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return kExitInputError;
    } catch (const weyl::ExponentTooLarge& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return kExitInputError;
    } catch (const weyl::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
