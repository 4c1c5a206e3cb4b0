#pragma once

#include "relfree/word.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace relfree {

/// Hall basic commutator: a generator, or an ordered pair of earlier basics
/// satisfying the Hall condition (left > right; for left = [p,q], q <= right).
struct BasicCommutator {
    std::size_t id = 0;
    unsigned weight = 1;
    bool is_generator = true;
    std::size_t gen = 0;                 // when is_generator
    std::size_t left = 0, right = 0;     // when a pair
};

namespace detail {

// Minimal truncated free-associative arithmetic used to derive the collection
// structure constants (leading-coefficient peeling). Kept separate from
// oracles::TruncatedSeries on purpose: the oracle must not share code with
// anything the collection path depends on.
//
// A monomial is a byte string of generator indices; degree = length.
using Mono = std::string;
using Poly = std::map<Mono, Int>;

inline Poly poly_one() { return Poly{{Mono{}, Int(1)}}; }

inline void poly_add_term(Poly& p, Mono m, const Int& c, unsigned maxdeg) {
    if (c == 0 || m.size() > maxdeg) return;
    auto [it, inserted] = p.emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

inline Poly poly_mul(const Poly& a, const Poly& b, unsigned maxdeg) {
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            if (ma.size() + mb.size() > maxdeg) continue;
            poly_add_term(out, ma + mb, ca * cb, maxdeg);
        }
    return out;
}

inline Poly poly_pow(Poly base, Int e, unsigned maxdeg) {
    Poly acc = poly_one();
    while (e > 0) {
        if ((e & 1) != 0) acc = poly_mul(acc, base, maxdeg);
        base = poly_mul(base, base, maxdeg);
        e >>= 1;
    }
    return acc;
}

inline Poly poly_of_generator(std::size_t gen, bool positive, unsigned maxdeg) {
    Poly p;
    if (positive) {
        poly_add_term(p, Mono{}, 1, maxdeg);
        poly_add_term(p, Mono(1, static_cast<char>(gen)), 1, maxdeg);
    } else {
        Int sign = 1;
        for (unsigned d = 0; d <= maxdeg; ++d) {
            poly_add_term(p, Mono(d, static_cast<char>(gen)), sign, maxdeg);
            sign = -sign;
        }
    }
    return p;
}

inline Poly poly_of_word(const Word& w, unsigned maxdeg) {
    Poly acc = poly_one();
    for (const Syllable& s : w.syllables()) {
        Poly g = poly_of_generator(s.gen, s.exp > 0, maxdeg);
        acc = poly_mul(acc, poly_pow(std::move(g), abs(s.exp), maxdeg), maxdeg);
    }
    return acc;
}

/// Exact solve of sum_j e_j * cols[j] = target for integers e_j; the columns
/// are linearly independent homogeneous Lie elements (a Z-basis slice), so
/// the solution exists and is unique whenever target is in their span.
inline std::vector<Int> solve_lie_coordinates(const std::vector<Poly>& cols, const Poly& target) {
    std::vector<Mono> monos;
    auto note = [&](const Poly& p) {
        for (const auto& [m, c] : p) monos.push_back(m);
    };
    for (const Poly& c : cols) note(c);
    note(target);
    std::sort(monos.begin(), monos.end());
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());

    std::size_t rows = monos.size(), n = cols.size();
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(n + 1, Rational(0)));
    auto coeff = [](const Poly& p, const Mono& mo) -> Int {
        auto it = p.find(mo);
        return it == p.end() ? Int(0) : it->second;
    };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < n; ++c) m[r][c] = Rational(coeff(cols[c], monos[r]));
        m[r][n] = Rational(coeff(target, monos[r]));
    }

    std::size_t row = 0;
    std::vector<std::size_t> pivot_of_col(n, rows);
    for (std::size_t col = 0; col < n && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[row]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col] / m[row][col];
            for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[row][c];
        }
        pivot_of_col[col] = row;
        ++row;
    }
    std::vector<Int> out(n, 0);
    for (std::size_t col = 0; col < n; ++col) {
        if (pivot_of_col[col] == rows) continue;
        Rational v = m[pivot_of_col[col]][n] / m[pivot_of_col[col]][col];
        if (denominator(v) != 1) throw error("internal: non-integral collection coordinate");
        out[col] = numerator(v);
    }
    // consistency: residual must vanish
    for (std::size_t r = 0; r < rows; ++r) {
        Rational lhs = 0;
        for (std::size_t c = 0; c < n; ++c) lhs += m[r][c] * Rational(out[c]);
        if (lhs != m[r][n]) throw error("internal: inconsistent collection coordinates");
    }
    return out;
}

}  // namespace detail

/// The ordered Hall basis for a given rank and nilpotency class, together
/// with the conjugation data the collection process consumes. Immutable;
/// instances are memoized behind a synchronized cache.
class HallBasis {
public:
    static const HallBasis& get(std::size_t rank, unsigned cls) {
        static std::map<std::pair<std::size_t, unsigned>, std::unique_ptr<HallBasis>> cache;
        static std::mutex mu;
        std::lock_guard lock(mu);
        auto key = std::make_pair(rank, cls);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::unique_ptr<HallBasis>(new HallBasis(rank, cls))).first;
        return *it->second;
    }

    std::size_t rank() const { return rank_; }
    unsigned cls() const { return cls_; }
    std::size_t size() const { return basics_.size(); }
    const std::vector<BasicCommutator>& all() const { return basics_; }
    const BasicCommutator& at(std::size_t id) const { return basics_.at(id); }
    unsigned weight(std::size_t id) const { return basics_.at(id).weight; }

    std::size_t count_of_weight(unsigned w) const {
        std::size_t n = 0;
        for (const BasicCommutator& b : basics_) n += b.weight == w;
        return n;
    }

    /// Defining free word of a basic commutator.
    const Word& word_of(std::size_t id) const { return words_.at(id); }

    std::string text(std::size_t id, const Alphabet& alphabet) const {
        const BasicCommutator& b = basics_.at(id);
        if (b.is_generator) return alphabet.name(b.gen);
        return "[" + text(b.left, alphabet) + "," + text(b.right, alphabet) + "]";
    }

    /// Collected normal form of b^-beta a b^beta (the string the collection
    /// process splices in when a jumps over b). Lazily derived and memoized.
    std::vector<Syllable> conjugate(std::size_t a, std::size_t b, int beta) const {
        std::lock_guard lock(mu_);
        auto it = conj_.find({a, b, beta});
        if (it != conj_.end()) return it->second;
        Word w = pow(words_[b], -beta) * words_[a] * pow(words_[b], beta);
        std::vector<Syllable> nf = peel_locked(w);
        return conj_.emplace(std::make_tuple(a, b, beta), std::move(nf)).first->second;
    }

    /// Exponent string (ascending ids) of a free word's normal form, read off
    /// weight by weight from its truncated free-associative image. Used only
    /// to derive conjugation entries; general words go through collection.
    std::vector<Syllable> peel(const Word& w) const {
        std::lock_guard lock(mu_);
        return peel_locked(w);
    }

private:
    HallBasis(std::size_t rank, unsigned cls) : rank_(rank), cls_(cls) {
        weight_block_.resize(cls + 1);
        if (cls < 1) return;  // class 0: the trivial group, empty basis
        for (std::size_t g = 0; g < rank; ++g) {
            BasicCommutator b;
            b.id = basics_.size();
            b.weight = 1;
            b.is_generator = true;
            b.gen = g;
            weight_block_[1].push_back(b.id);
            basics_.push_back(b);
        }
        for (unsigned w = 2; w <= cls; ++w) {
            // ascending (left, right): by weight then recursively lexicographic
            for (std::size_t left = 0; left < basics_.size(); ++left) {
                if (basics_[left].weight >= w) break;
                unsigned rw = w - basics_[left].weight;
                for (std::size_t right = 0; right < left; ++right) {
                    if (basics_[right].weight != rw) continue;
                    if (!basics_[left].is_generator && basics_[left].right > right) continue;
                    BasicCommutator b;
                    b.id = basics_.size();
                    b.weight = w;
                    b.is_generator = false;
                    b.left = left;
                    b.right = right;
                    weight_block_[w].push_back(b.id);
                    basics_.push_back(b);
                }
            }
        }
        words_.reserve(basics_.size());
        for (const BasicCommutator& b : basics_) {
            if (b.is_generator)
                words_.push_back(Word::generator(rank, b.gen));
            else
                words_.push_back(commutator(words_[b.left], words_[b.right]));
        }
        lie_.resize(basics_.size());
        series_.resize(basics_.size());
        inv_series_.resize(basics_.size());
    }

    std::vector<Syllable> peel_locked(const Word& w) const {
        if (w.rank() != rank_) throw domain_error("alphabet mismatch");
        detail::Poly h = detail::poly_of_word(w, cls_);
        std::vector<Syllable> out;
        for (unsigned wt = 1; wt <= cls_; ++wt) {
            const auto& block = weight_block_[wt];
            if (block.empty()) continue;
            detail::Poly component;
            for (const auto& [m, c] : h)
                if (m.size() == wt) component[m] = c;
            std::vector<detail::Poly> cols;
            cols.reserve(block.size());
            for (std::size_t id : block) cols.push_back(lie(id));
            std::vector<Int> exps = detail::solve_lie_coordinates(cols, component);
            // strip the block in descending order: h := (b_k^{e_k})^-1 ... h
            for (std::size_t i = block.size(); i-- > 0;) {
                if (exps[i] == 0) continue;
                detail::Poly inv = exps[i] > 0 ? inv_series(block[i]) : series(block[i]);
                h = detail::poly_mul(detail::poly_pow(inv, abs(exps[i]), cls_), h, cls_);
            }
            for (std::size_t i = 0; i < block.size(); ++i)
                if (exps[i] != 0) out.push_back(Syllable{block[i], exps[i]});
        }
        if (!(h.size() == 1 && h.begin()->second == 1 && h.begin()->first.empty()))
            throw error("internal: peel residue is not trivial");
        return out;
    }

    // Lazy per-commutator data; the cache mutex must be held.
    const detail::Poly& lie(std::size_t id) const {
        if (!lie_[id]) {
            const BasicCommutator& b = basics_[id];
            if (b.is_generator) {
                detail::Poly p;
                p[detail::Mono(1, static_cast<char>(b.gen))] = 1;
                lie_[id] = std::move(p);
            } else {
                const detail::Poly &l = lie(b.left), &r = lie(b.right);
                detail::Poly p = detail::poly_mul(l, r, cls_);
                for (auto& [m, c] : detail::poly_mul(r, l, cls_))
                    detail::poly_add_term(p, m, -c, cls_);
                lie_[id] = std::move(p);
            }
        }
        return *lie_[id];
    }

    const detail::Poly& series(std::size_t id) const {
        if (!series_[id]) series_[id] = detail::poly_of_word(words_[id], cls_);
        return *series_[id];
    }

    const detail::Poly& inv_series(std::size_t id) const {
        if (!inv_series_[id]) inv_series_[id] = detail::poly_of_word(inverse(words_[id]), cls_);
        return *inv_series_[id];
    }

    std::size_t rank_;
    unsigned cls_;
    std::vector<BasicCommutator> basics_;
    std::vector<std::vector<std::size_t>> weight_block_;
    std::vector<Word> words_;

    mutable std::mutex mu_;
    mutable std::vector<std::optional<detail::Poly>> lie_;         // degree = weight
    mutable std::vector<std::optional<detail::Poly>> series_;      // of the word
    mutable std::vector<std::optional<detail::Poly>> inv_series_;  // of its inverse
    mutable std::map<std::tuple<std::size_t, std::size_t, int>, std::vector<Syllable>> conj_;
};

/// Normal form in the free nilpotent group F/gamma_{c+1}: an exponent vector
/// over the Hall basics of weight <= c. Identity = all exponents zero.
class NilpotentNF {
public:
    NilpotentNF(std::size_t rank, unsigned cls) : rank_(rank), cls_(cls) {}

    std::size_t rank() const { return rank_; }
    unsigned cls() const { return cls_; }
    const std::vector<Syllable>& entries() const { return entries_; }
    bool is_identity() const { return entries_.empty(); }

    Int exponent(std::size_t id) const {
        for (const Syllable& s : entries_)
            if (s.gen == id) return s.exp;
        return 0;
    }

    /// Least weight carrying a nonzero exponent; 0 when identity.
    unsigned min_weight() const {
        if (entries_.empty()) return 0;
        const HallBasis& basis = HallBasis::get(rank_, cls_);
        unsigned best = cls_ + 1;
        for (const Syllable& s : entries_) best = std::min(best, basis.weight(s.gen));
        return best;
    }

    std::string text(const Alphabet& alphabet) const {
        if (entries_.empty()) return "1";
        const HallBasis& basis = HallBasis::get(rank_, cls_);
        std::string out;
        for (const Syllable& s : entries_) {
            if (!out.empty()) out += '*';
            out += basis.text(s.gen, alphabet);
            if (s.exp != 1) out += '^' + s.exp.str();
        }
        return out;
    }

    friend bool operator==(const NilpotentNF&, const NilpotentNF&) = default;

    friend class Collector;

private:
    std::size_t rank_;
    unsigned cls_;
    std::vector<Syllable> entries_;  // ascending basic ids, nonzero exponents
};

/// Collection from the left over one Hall basis. The working value is always
/// a collected normal form; appending a letter conjugates the heavier suffix
/// through it with u v = v u [u,v], realized by the memoized conjugation
/// table. Letters created this way are strictly heavier, so the recursion
/// grades out at the class bound.
class Collector {
public:
    explicit Collector(const HallBasis& basis) : basis_(basis) {}

    NilpotentNF run(std::span<const Syllable> stream) const {
        std::size_t steps = 0;
        std::vector<Syllable> nf;
        for (const Syllable& s : stream) insert(nf, s.gen, s.exp, steps);
        NilpotentNF out(basis_.rank(), basis_.cls());
        out.entries_ = std::move(nf);
        return out;
    }

    NilpotentNF multiply(const NilpotentNF& a, const NilpotentNF& b) const {
        std::size_t steps = 0;
        std::vector<Syllable> nf = a.entries();
        for (const Syllable& s : b.entries()) insert(nf, s.gen, s.exp, steps);
        NilpotentNF out(basis_.rank(), basis_.cls());
        out.entries_ = std::move(nf);
        return out;
    }

private:
    // nf := collected form of nf * g^e
    void insert(std::vector<Syllable>& nf, std::size_t g, const Int& e, std::size_t& steps) const {
        if (e == 0) return;
        if (++steps > limits().max_collect_steps)
            throw resource_error("collection step budget exceeded");
        std::size_t split = nf.size();
        while (split > 0 && nf[split - 1].gen > g) --split;
        std::vector<Syllable> suffix(nf.begin() + split, nf.end());
        nf.resize(split);
        if (!nf.empty() && nf.back().gen == g) {
            nf.back().exp += e;
            if (nf.back().exp == 0) nf.pop_back();
        } else {
            nf.push_back(Syllable{g, e});
        }
        for (const Syllable& c : suffix) {
            if (basis_.weight(c.gen) + basis_.weight(g) > basis_.cls()) {
                insert(nf, c.gen, c.exp, steps);  // central pair, letter unchanged
                continue;
            }
            insert_power(nf, conjugate_power(c.gen, g, e, steps), c.exp, steps);
        }
    }

    // collected form of g^-e c g^e, by |e| single conjugation rounds
    std::vector<Syllable> conjugate_power(std::size_t c, std::size_t g, const Int& e,
                                          std::size_t& steps) const {
        std::vector<Syllable> cur{Syllable{c, 1}};
        int beta = e > 0 ? 1 : -1;
        Int n = abs(e);
        if (n > Int(limits().max_collect_steps))
            throw resource_error("collection conjugation budget exceeded");
        for (Int i = 0; i < n; ++i) {
            std::vector<Syllable> next;
            for (const Syllable& s : cur) {
                if (basis_.weight(s.gen) + basis_.weight(g) > basis_.cls()) {
                    insert(next, s.gen, s.exp, steps);
                    continue;
                }
                insert_power(next, basis_.conjugate(s.gen, g, beta), s.exp, steps);
            }
            cur = std::move(next);
        }
        return cur;
    }

    // nf := collected form of nf * t^d for a collected string t
    void insert_power(std::vector<Syllable>& nf, const std::vector<Syllable>& t, const Int& d,
                      std::size_t& steps) const {
        if (d == 0 || t.empty()) return;
        if (t.size() == 1) {
            insert(nf, t.front().gen, t.front().exp * d, steps);
            return;
        }
        bool central = true;  // pairwise commuting letters allow per-syllable powers
        for (std::size_t i = 0; i < t.size() && central; ++i)
            for (std::size_t j = i + 1; j < t.size() && central; ++j)
                if (basis_.weight(t[i].gen) + basis_.weight(t[j].gen) <= basis_.cls())
                    central = false;
        if (central) {
            for (const Syllable& s : t) insert(nf, s.gen, s.exp * d, steps);
            return;
        }
        Int n = abs(d);
        if (n > Int(limits().max_collect_steps))
            throw resource_error("collection power budget exceeded");
        for (Int i = 0; i < n; ++i) {
            if (d > 0)
                for (const Syllable& s : t) insert(nf, s.gen, s.exp, steps);
            else
                for (auto it = t.rbegin(); it != t.rend(); ++it) insert(nf, it->gen, -it->exp, steps);
        }
    }

    const HallBasis& basis_;
};

/// The unique Hall normal form of a word in F/gamma_{c+1}.
inline NilpotentNF collect(const Word& a, unsigned cls) {
    const HallBasis& basis = HallBasis::get(a.rank(), cls);
    if (cls < 1) return NilpotentNF(a.rank(), cls);  // class 0: the trivial group
    return Collector(basis).run(a.syllables());
}

/// Product of two normal forms.
inline NilpotentNF nf_multiply(const NilpotentNF& a, const NilpotentNF& b) {
    if (a.rank() != b.rank() || a.cls() != b.cls())
        throw domain_error("normal form shape mismatch");
    return Collector(HallBasis::get(a.rank(), a.cls())).multiply(a, b);
}

/// a == b modulo gamma_k, i.e. a b^-1 lies in gamma_k (k >= 1).
inline bool congruent_mod_gamma(const Word& a, const Word& b, unsigned k) {
    if (k < 1) throw domain_error("gamma index must be at least 1");
    return collect(a * inverse(b), k - 1).is_identity();
}

struct LcsWeight {
    unsigned weight = 1;   // largest k <= max_class with a in gamma_k
    bool exceeds = false;  // true: trivial at max_class, so weight >= max_class+1

    friend bool operator==(const LcsWeight&, const LcsWeight&) = default;
};

/// Lower-central weight of a word, capped at max_class.
inline LcsWeight lcs_weight(const Word& a, unsigned max_class) {
    if (max_class < 1) throw domain_error("class bound must be at least 1");
    NilpotentNF nf = collect(a, max_class);
    if (nf.is_identity()) return LcsWeight{max_class + 1, true};
    return LcsWeight{nf.min_weight(), false};
}

}  // namespace relfree
