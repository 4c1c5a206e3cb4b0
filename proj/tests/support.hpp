#pragma once

// Shared helpers for the test suites: deterministic random generators and the
// small independent oracles the module examples call for (Lyndon counting,
// 3x3 unitriangular matrices).

#include "relfree/relfree.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace relfree;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng() % n); }
    int sign() { return below(2) ? 1 : -1; }
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1))); }
};

inline Word random_word(Rng& rng, std::size_t rank, std::size_t letters) {
    std::vector<Syllable> raw;
    raw.reserve(letters);
    for (std::size_t i = 0; i < letters; ++i)
        raw.push_back(Syllable{rng.below(rank), Int(rng.sign())});
    return Word::reduce(rank, raw);
}

/// Random product of up to `count` commutators of random words (lies in F').
inline Word random_commutator_product(Rng& rng, std::size_t rank, std::size_t count,
                                      std::size_t letters) {
    Word out = Word::identity(rank);
    std::size_t n = 1 + rng.below(count);
    for (std::size_t i = 0; i < n; ++i)
        out = out * commutator(random_word(rng, rank, letters), random_word(rng, rank, letters));
    return out;
}

/// Number of Lyndon words of length w over n letters, by brute force: a word
/// is Lyndon when it is strictly smaller than every proper rotation.
inline std::size_t lyndon_count(std::size_t n, unsigned w) {
    std::vector<std::size_t> word(w, 0);
    std::size_t count = 0;
    while (true) {
        bool lyndon = true;
        for (unsigned r = 1; r < w && lyndon; ++r) {
            std::vector<std::size_t> rot;
            rot.reserve(w);
            for (unsigned i = 0; i < w; ++i) rot.push_back(word[(i + r) % w]);
            if (!(word < rot)) lyndon = false;
        }
        if (lyndon) ++count;
        unsigned pos = w;
        while (pos > 0 && word[pos - 1] == n - 1) word[--pos] = 0;
        if (pos == 0) break;
        ++word[pos - 1];
    }
    return count;
}

/// 3x3 unitriangular integer matrices; x -> I+E12, y -> I+E23. A faithful
/// model of the rank-2 free class-2 nilpotent group.
struct UT3 {
    Int a = 0, b = 0, c = 0;  // [[1,a,b],[0,1,c],[0,0,1]]

    friend UT3 operator*(const UT3& l, const UT3& r) {
        return UT3{l.a + r.a, l.b + r.b + l.a * r.c, l.c + r.c};
    }
    UT3 inverted() const { return UT3{-a, a * c - b, -c}; }
    friend bool operator==(const UT3&, const UT3&) = default;
};

inline UT3 ut3_eval(const Word& w) {
    UT3 acc;
    for (const Syllable& s : w.syllables()) {
        UT3 gen;
        if (s.gen == 0)
            gen.a = 1;
        else
            gen.c = 1;
        if (s.exp < 0) gen = gen.inverted();
        Int n = abs(s.exp);
        for (Int i = 0; i < n; ++i) acc = acc * gen;
    }
    return acc;
}

}  // namespace testsupport
