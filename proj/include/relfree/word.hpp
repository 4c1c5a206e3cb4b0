#pragma once

#include "relfree/common.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relfree {

/// A finite ranked generating set with printable names. Rank 0 and 1 are legal.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::size_t rank) {
        names_.reserve(rank);
        for (std::size_t i = 0; i < rank; ++i) names_.push_back(default_name(i, rank));
    }

    explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {}

    std::size_t rank() const { return names_.size(); }

    const std::string& name(std::size_t i) const {
        if (i >= names_.size()) throw domain_error("generator index out of range");
        return names_[i];
    }

    std::optional<std::size_t> find(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    static std::string default_name(std::size_t i, std::size_t rank) {
        static const char* small[] = {"x", "y", "z", "t", "u", "v", "w", "s", "p", "q"};
        if (rank <= 10) return small[i];
        return "g" + std::to_string(i);
    }

private:
    std::vector<std::string> names_;
};

/// One maximal run g^e, e != 0, in a freely reduced word.
struct Syllable {
    std::size_t gen = 0;
    Int exp = 0;

    friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Freely reduced word over a rank-n alphabet. Immutable after construction;
/// adjacent syllables have distinct generators and no exponent is zero.
class Word {
public:
    Word() = default;

    static Word identity(std::size_t rank) { return Word(rank, {}); }

    static Word generator(std::size_t rank, std::size_t gen, Int exp = 1) {
        if (gen >= rank) throw domain_error("generator index out of range");
        if (exp == 0) return identity(rank);
        return Word(rank, {Syllable{gen, std::move(exp)}});
    }

    /// Free reduction of an arbitrary syllable sequence; the only way to build
    /// a Word from raw data. Idempotent.
    static Word reduce(std::size_t rank, std::span<const Syllable> raw) {
        std::vector<Syllable> out;
        out.reserve(raw.size());
        for (const Syllable& s : raw) {
            if (s.gen >= rank) throw domain_error("generator index out of range");
            push_reduced(out, s.gen, s.exp);
        }
        return Word(rank, std::move(out));
    }

    std::size_t rank() const { return rank_; }
    const std::vector<Syllable>& syllables() const { return syls_; }
    bool is_identity() const { return syls_.empty(); }

    /// Number of letters, counting multiplicity of exponents.
    Int letter_length() const {
        Int n = 0;
        for (const Syllable& s : syls_) n += abs(s.exp);
        return n;
    }

    /// Same word viewed over a larger alphabet (fresh-letter tricks).
    Word with_rank(std::size_t rank) const {
        if (rank < rank_) throw domain_error("cannot shrink alphabet rank");
        return Word(rank, syls_);
    }

    friend Word operator*(const Word& a, const Word& b) {
        if (a.rank_ != b.rank_) throw domain_error("alphabet mismatch");
        std::vector<Syllable> out = a.syls_;
        for (const Syllable& s : b.syls_) push_reduced(out, s.gen, s.exp);
        return Word(a.rank_, std::move(out));
    }

    friend bool operator==(const Word& a, const Word& b) {
        return a.rank_ == b.rank_ && a.syls_ == b.syls_;
    }

private:
    Word(std::size_t rank, std::vector<Syllable> syls)
        : rank_(rank), syls_(std::move(syls)) {}

    static void push_reduced(std::vector<Syllable>& out, std::size_t gen, const Int& exp) {
        if (exp == 0) return;
        if (!out.empty() && out.back().gen == gen) {
            out.back().exp += exp;
            if (out.back().exp == 0) out.pop_back();
            return;
        }
        out.push_back(Syllable{gen, exp});
    }

    std::size_t rank_ = 0;
    std::vector<Syllable> syls_;
};

inline Word inverse(const Word& a) {
    std::vector<Syllable> rev;
    rev.reserve(a.syllables().size());
    for (auto it = a.syllables().rbegin(); it != a.syllables().rend(); ++it)
        rev.push_back(Syllable{it->gen, -it->exp});
    return Word::reduce(a.rank(), rev);
}

namespace detail {

/// Splits a into p * core * p^-1 with core cyclically reduced.
inline void cyclic_decompose(const Word& a, Word& conjugator, Word& core) {
    std::vector<Syllable> syls = a.syllables();
    std::vector<Syllable> pre;
    while (syls.size() >= 2 && syls.front().gen == syls.back().gen) {
        Int f = syls.front().exp, b = syls.back().exp;
        if ((f > 0) == (b > 0)) break;
        Int strip = min(abs(f), abs(b));
        Int sgn = f > 0 ? 1 : -1;
        pre.push_back(Syllable{syls.front().gen, sgn * strip});
        syls.front().exp -= sgn * strip;
        syls.back().exp += sgn * strip;
        if (syls.back().exp == 0) syls.pop_back();
        if (syls.front().exp == 0) syls.erase(syls.begin());
        if (syls.size() == 1) break;
    }
    conjugator = Word::reduce(a.rank(), pre);
    core = Word::reduce(a.rank(), syls);
}

}  // namespace detail

/// a^e, exact. Powers of a single-syllable core stay compact for any exponent;
/// other cores are materialized and therefore subject to the letter budget.
inline Word pow(const Word& a, const Int& e) {
    if (e == 0 || a.is_identity()) return Word::identity(a.rank());
    if (e == 1) return a;
    Word base = e < 0 ? inverse(a) : a;
    Int n = abs(e);

    Word conj, core;
    detail::cyclic_decompose(base, conj, core);
    if (core.syllables().size() == 1) {
        const Syllable& s = core.syllables().front();
        return conj * Word::generator(a.rank(), s.gen, s.exp * n) * inverse(conj);
    }
    check_word_budget(core.letter_length() * n);
    if (n > Int(limits().max_word_letters)) throw resource_error("word power too large");
    Word acc = Word::identity(a.rank());
    for (Int i = 0; i < n; ++i) acc = acc * core;
    return conj * acc * inverse(conj);
}

/// Image of `a` under the endomorphism sending generator i to images[i].
/// A monoid homomorphism in `a`; all images must share one alphabet.
inline Word substitute(const Word& a, std::span<const Word> images) {
    if (images.size() != a.rank()) throw domain_error("missing image for a generator");
    std::size_t target_rank = images.empty() ? 0 : images.front().rank();
    for (const Word& w : images)
        if (w.rank() != target_rank) throw domain_error("image alphabet mismatch");
    Word out = Word::identity(target_rank);
    for (const Syllable& s : a.syllables()) out = out * pow(images[s.gen], s.exp);
    return out;
}

/// Total signed exponent of one generator; a homomorphism onto Z.
inline Int exponent_sum(const Word& a, std::size_t gen) {
    if (gen >= a.rank()) throw domain_error("generator index out of range");
    Int total = 0;
    for (const Syllable& s : a.syllables())
        if (s.gen == gen) total += s.exp;
    return total;
}

/// [a,b] = a^-1 b^-1 a b.
inline Word commutator(const Word& a, const Word& b) {
    return inverse(a) * inverse(b) * a * b;
}

/// Left-normed [a1,...,an] = [[a1,...,a_{n-1}],an], n >= 2.
inline Word left_normed_commutator(std::span<const Word> args) {
    if (args.size() < 2) throw domain_error("left-normed commutator needs at least 2 arguments");
    Word acc = commutator(args[0], args[1]);
    for (std::size_t i = 2; i < args.size(); ++i) acc = commutator(acc, args[i]);
    return acc;
}

}  // namespace relfree
