#pragma once

#include "relfree/magnus.hpp"
#include "relfree/nilpotent.hpp"
#include "relfree/parse.hpp"
#include "relfree/ring.hpp"
#include "relfree/word.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace relfree {

/// Endomorphism of a finite-rank relatively free group, given by generator
/// images. Invertibility is constructor-certified: inner, permutational and
/// transvection maps (and their compositions) carry a certificate.
class Endomorphism {
public:
    Endomorphism(std::size_t rank, std::vector<Word> images,
                 QuotientDescriptor variety = QuotientDescriptor::free_group(0),
                 bool certified_invertible = false)
        : rank_(rank),
          images_(std::move(images)),
          variety_(variety.rank == 0 && variety.family == Family::free_group
                       ? QuotientDescriptor::free_group(rank)
                       : variety),
          certified_(certified_invertible) {
        if (images_.size() != rank_) throw domain_error("one image per generator required");
        for (const Word& w : images_)
            if (w.rank() != rank_) throw domain_error("image alphabet mismatch");
    }

    static Endomorphism identity(std::size_t rank) {
        std::vector<Word> images;
        images.reserve(rank);
        for (std::size_t i = 0; i < rank; ++i) images.push_back(Word::generator(rank, i));
        return Endomorphism(rank, std::move(images), QuotientDescriptor::free_group(rank), true);
    }

    std::size_t rank() const { return rank_; }
    std::span<const Word> images() const { return images_; }
    const Word& image(std::size_t gen) const {
        if (gen >= rank_) throw domain_error("generator index out of range");
        return images_[gen];
    }
    const QuotientDescriptor& variety() const { return variety_; }
    bool certified_invertible() const { return certified_; }

    friend bool operator==(const Endomorphism& a, const Endomorphism& b) {
        return a.rank_ == b.rank_ && a.images_ == b.images_;
    }

private:
    std::size_t rank_;
    std::vector<Word> images_;
    QuotientDescriptor variety_;
    bool certified_;
};

inline Word apply(const Endomorphism& e, const Word& g) {
    if (g.rank() != e.rank()) throw domain_error("rank mismatch");
    return substitute(g, e.images());
}

/// tau_g: x -> g x g^-1.
inline Endomorphism inner(const Word& g) {
    std::size_t rank = g.rank();
    std::vector<Word> images;
    images.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i)
        images.push_back(g * Word::generator(rank, i) * inverse(g));
    return Endomorphism(rank, std::move(images), QuotientDescriptor::free_group(rank), true);
}

/// x_i -> x_{p(i)} for a bijection p on the generators.
inline Endomorphism permutational(std::span<const std::size_t> p) {
    std::size_t rank = p.size();
    std::vector<bool> hit(rank, false);
    std::vector<Word> images;
    images.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        if (p[i] >= rank || hit[p[i]]) throw domain_error("not a bijection on the generators");
        hit[p[i]] = true;
        images.push_back(Word::generator(rank, p[i]));
    }
    return Endomorphism(rank, std::move(images), QuotientDescriptor::free_group(rank), true);
}

/// target -> target * v, all other generators fixed.
inline Endomorphism transvection(std::size_t target, const Word& v) {
    std::size_t rank = v.rank();
    if (target >= rank) throw domain_error("generator index out of range");
    std::vector<Word> images;
    images.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        Word x = Word::generator(rank, i);
        images.push_back(i == target ? x * v : x);
    }
    return Endomorphism(rank, std::move(images), QuotientDescriptor::free_group(rank), true);
}

/// The unique common extension of automorphisms of free factors spanned by a
/// basis partition. Each part must keep its images inside its own factor.
inline Endomorphism star_product(std::span<const std::vector<std::size_t>> partition,
                                 std::span<const Endomorphism> parts) {
    if (partition.size() != parts.size())
        throw domain_error("one endomorphism per partition part required");
    std::size_t rank = parts.empty() ? 0 : parts.front().rank();
    std::vector<std::size_t> owner(rank, partition.size());
    for (std::size_t i = 0; i < partition.size(); ++i) {
        if (parts[i].rank() != rank) throw domain_error("rank mismatch between parts");
        for (std::size_t g : partition[i]) {
            if (g >= rank) throw domain_error("generator index out of range");
            if (owner[g] != partition.size()) throw domain_error("partition parts overlap");
            owner[g] = i;
        }
    }
    for (std::size_t g = 0; g < rank; ++g)
        if (owner[g] == partition.size()) throw domain_error("partition does not cover the alphabet");

    std::vector<Word> images;
    images.reserve(rank);
    bool certified = true;
    for (std::size_t g = 0; g < rank; ++g) {
        const Word& img = parts[owner[g]].image(g);
        for (const Syllable& s : img.syllables())
            if (owner[s.gen] != owner[g])
                throw domain_error("part escapes its free factor");
        images.push_back(img);
        certified = certified && parts[owner[g]].certified_invertible();
    }
    return Endomorphism(rank, std::move(images), QuotientDescriptor::free_group(rank), certified);
}

/// apply(compose(a,b), g) = apply(a, apply(b, g)).
inline Endomorphism compose(const Endomorphism& a, const Endomorphism& b) {
    if (a.rank() != b.rank()) throw domain_error("rank mismatch");
    std::vector<Word> images;
    images.reserve(b.rank());
    for (std::size_t i = 0; i < b.rank(); ++i) images.push_back(apply(a, b.image(i)));
    return Endomorphism(a.rank(), std::move(images), a.variety(),
                        a.certified_invertible() && b.certified_invertible());
}

/// Determinant of the abelianized map; +-1 is necessary for automorphy.
inline Int abelianization_determinant(const Endomorphism& e) {
    std::size_t n = e.rank();
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) m[i][j] = exponent_sum(e.image(j), i);
    // fraction-free Bareiss elimination
    Int denom = 1;
    Int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                if (k > 0) m[i][j] /= denom;
            }
        denom = m[k][k];
    }
    return n == 0 ? sign : sign * m[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// Homomorphism words (the paper's w(*;u_1,...,u_s) templates).

/// A term together with its argument tuple over a fixed-rank alphabet.
struct HomWord {
    TermExpr term;
    std::vector<Word> args;
    std::size_t rank = 0;

    HomWord(TermExpr t, std::vector<Word> a, std::size_t alphabet_rank)
        : term(std::move(t)), args(std::move(a)), rank(alphabet_rank) {
        if (args.size() != term.arity()) throw domain_error("argument count must match arity");
        for (const Word& w : args)
            if (w.rank() != rank) throw domain_error("argument alphabet mismatch");
    }
};

struct HomWordVerdict {
    bool accepted = false;
    std::string reason;        // empty when accepted
    bool identity_law = false; // w(1;u) = 1 in the variety
    Int subject_exponent = 0;  // total exponent of the subject placeholder
};

/// Checks the homomorphism law w(xy;u) = w(x;u) w(y;u) with two fresh letters
/// adjoined, testing equality in the variety's relatively free group.
inline HomWordVerdict is_hom_word(const HomWord& w, const QuotientDescriptor& variety) {
    std::size_t n = w.rank;
    std::size_t ext = n + 2;
    std::vector<Word> lifted;
    lifted.reserve(w.args.size());
    for (const Word& a : w.args) lifted.push_back(a.with_rank(ext));
    Word x = Word::generator(ext, n), y = Word::generator(ext, n + 1);

    Word both = evaluate_term(w.term, x * y, lifted);
    Word split = evaluate_term(w.term, x, lifted) * evaluate_term(w.term, y, lifted);

    QuotientDescriptor ext_desc = variety;
    ext_desc.rank = ext;
    CanonicalGroup group{ext_desc};
    bool law = group.key(both) == group.key(split);

    HomWordVerdict verdict;
    verdict.subject_exponent = subject_exponent_sum(w.term, w.args, w.rank);
    Word at_identity = evaluate_term(w.term, Word::identity(ext), lifted);
    verdict.identity_law = group.key(at_identity) == group.identity();
    verdict.accepted = law;
    if (!law) {
        verdict.reason = "homomorphism law fails in variety " + variety.text() +
                         "; w(1;args) = 1 " + (verdict.identity_law ? "holds" : "fails") +
                         "; subject exponent sum = " + verdict.subject_exponent.str();
    }
    return verdict;
}

/// w(g; args), freely reduced. An endomorphism image when the hom law holds.
inline Word hom_word_apply(const HomWord& w, const Word& g) {
    if (g.rank() != w.rank) throw domain_error("rank mismatch");
    return evaluate_term(w.term, g, w.args);
}

/// Realizes pi sigma pi^-1: same term, arguments mapped through pi.
/// pi must carry an invertibility certificate.
inline HomWord conjugate_hom_word(const Endomorphism& p, const HomWord& w) {
    if (!p.certified_invertible())
        throw domain_error("conjugating map lacks an invertibility certificate");
    if (p.rank() != w.rank) throw domain_error("rank mismatch");
    std::vector<Word> args;
    args.reserve(w.args.size());
    for (const Word& a : w.args) args.push_back(apply(p, a));
    return HomWord(w.term, std::move(args), w.rank);
}

namespace detail {

/// Finite module generating set of R-bar for the supported R.
inline std::vector<Word> rbar_module_generators(std::size_t rank, const RSpec& r) {
    std::vector<Word> gens;
    if (r.kind == RSpec::Kind::derived) {
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = i + 1; j < rank; ++j)
                gens.push_back(
                    commutator(Word::generator(rank, i), Word::generator(rank, j)));
        return gens;
    }
    const HallBasis& basis = HallBasis::get(rank, r.param);
    for (const BasicCommutator& b : basis.all())
        if (b.weight == r.param) gens.push_back(basis.word_of(b.id));
    return gens;
}

inline RSpec rspec_of_variety(const QuotientDescriptor& variety) {
    switch (variety.family) {
        case Family::metabelian:
            return RSpec::commutator();
        case Family::solvable:
            if (variety.derived_length() == 2) return RSpec::commutator();
            // F^(k-1)-bar has no finite module generating set we implement
            throw domain_error("IA check unsupported for derived length > 2");
        case Family::nilpotent:
            return RSpec::gamma(variety.param);
        default:
            throw domain_error("IA check needs an F/R' variety");
    }
}

}  // namespace detail

/// True when (a) every generator moves by an element of R-bar and (b) the
/// finite module generating set of R-bar is fixed elementwise in F/R'. Since
/// R-bar is abelian and e commutes with conjugation on it, (a) + (b) extend
/// to all of R-bar.
inline bool is_ia_on_R(const Endomorphism& e, const QuotientDescriptor& variety) {
    if (variety.rank != e.rank()) throw domain_error("rank mismatch");
    RSpec r = detail::rspec_of_variety(variety);
    CanonicalGroup coeff = r.coefficient_group(e.rank());
    for (std::size_t i = 0; i < e.rank(); ++i) {
        Word moved = inverse(Word::generator(e.rank(), i)) * e.image(i);
        if (!(coeff.key(moved) == coeff.identity())) return false;  // x^-1 e(x) not in R
    }
    for (const Word& m : detail::rbar_module_generators(e.rank(), r))
        if (!is_identity_in_FmodRprime(apply(e, m) * inverse(m), r)) return false;
    return true;
}

}  // namespace relfree
