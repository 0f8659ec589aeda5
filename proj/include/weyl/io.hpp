#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "weyl/coeff.hpp"
#include "weyl/errors.hpp"
#include "weyl/morphism.hpp"
#include "weyl/parse.hpp"

// Endomorphism file format:
//
//   # comments and blank lines are ignored
//   name: triangular_basic        (optional)
//   n: 1
//   m: 0
//   ring: Q                       (Q | Z | Fp:<p>)
//   images:
//   x1
//   x1^2 + x2
//
// The lines after "images:" hold the 2n+m generator images in order.
// Serialization renders images canonically, so parse -> render -> parse is
// the identity.

namespace weyl {

struct EndoFile {
    std::string name;
    int n = 1;
    int m = 0;
    RingSpec ring = RingSpec::rationals();
    std::vector<std::string> images;
};

/// Dispatch a callable over the runtime ring choice.
template <class F>
decltype(auto) with_ring(const RingSpec& spec, F&& f) {
    switch (spec.kind) {
        case RingSpec::Kind::integers: return f(IntegerRing{});
        case RingSpec::Kind::rationals: return f(RationalRing{});
        case RingSpec::Kind::prime_field: return f(PrimeField(spec.p));
    }
    throw Error("with_ring: corrupt ring spec");
}

inline EndoFile load_endo_file(std::istream& in) {
    EndoFile file;
    bool saw_n = false, saw_m = false, saw_ring = false, in_images = false;
    std::string line;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!in_images) {
            if (t == "images:") {
                in_images = true;
                continue;
            }
            const auto colon = t.find(':');
            if (colon == std::string::npos) {
                throw Error("endomorphism file: expected 'key: value' before images, got '" + t +
                            "'");
            }
            const std::string key = trim(t.substr(0, colon));
            const std::string value = trim(t.substr(colon + 1));
            if (key == "name") {
                file.name = value;
            } else if (key == "n") {
                file.n = std::stoi(value);
                saw_n = true;
            } else if (key == "m") {
                file.m = std::stoi(value);
                saw_m = true;
            } else if (key == "ring") {
                file.ring = RingSpec::parse(value);
                saw_ring = true;
            } else {
                throw Error("endomorphism file: unknown key '" + key + "'");
            }
        } else {
            file.images.push_back(t);
        }
    }
    if (!saw_n || !saw_m || !saw_ring) {
        throw Error("endomorphism file: missing required key (n, m, ring)");
    }
    if (file.n < 1 || file.m < 0) throw Error("endomorphism file: invalid n or m");
    const auto expected = static_cast<std::size_t>(2 * file.n + file.m);
    if (file.images.size() != expected) {
        throw Error("endomorphism file: expected " + std::to_string(expected) + " images, got " +
                    std::to_string(file.images.size()));
    }
    return file;
}

inline EndoFile load_endo_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open endomorphism file '" + path + "'");
    return load_endo_file(in);
}

inline std::string serialize_endo_file(const EndoFile& file) {
    std::ostringstream out;
    if (!file.name.empty()) out << "name: " << file.name << "\n";
    out << "n: " << file.n << "\n";
    out << "m: " << file.m << "\n";
    out << "ring: " << file.ring.to_string() << "\n";
    out << "images:\n";
    for (const auto& img : file.images) out << img << "\n";
    return out.str();
}

template <class Ring>
Endomorphism<Ring> build_endomorphism(const EndoFile& file, const Ring& ring) {
    Signature<Ring> sig(file.n, file.m, ring);
    std::vector<Element<Ring>> images;
    images.reserve(file.images.size());
    for (const auto& text : file.images) images.push_back(parse_element(text, sig));
    return Endomorphism<Ring>(sig, std::move(images));
}

/// Re-render every image canonically; serialize(canonical(f)) is the fixed
/// point of the round trip.
inline EndoFile canonical_endo_file(const EndoFile& file) {
    EndoFile out = file;
    out.images = with_ring(file.ring, [&](auto ring) {
        const auto endo = build_endomorphism(file, ring);
        std::vector<std::string> rendered;
        rendered.reserve(endo.images().size());
        for (const auto& img : endo.images()) rendered.push_back(img.to_string());
        return rendered;
    });
    return out;
}

}  // namespace weyl
