#pragma once

// Independent cross-check models used by tests and the acceptance suite.
// Deliberately self-contained: nothing here calls into the Fox/Magnus or
// collection code, so agreement between the two paths is evidence rather
// than a tautology.

#include "relfree/word.hpp"

#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace relfree::oracles {

// ---------------------------------------------------------------------------
// Concrete wreath-product model of the Magnus embedding for F/F''.
//
// A generator x_i maps to (translation e_i, the unit function t_i supported at
// the origin of Z^n); multiplication is the wreath rule. A word evaluates to
// the identity element exactly when it lies in F''.

class WreathElement {
public:
    using Point = std::vector<Int>;

    explicit WreathElement(std::size_t rank)
        : rank_(rank), translation_(rank, 0) {}

    static WreathElement generator(std::size_t rank, std::size_t i) {
        WreathElement e(rank);
        e.translation_[i] = 1;
        Point origin(rank, 0);
        e.function_[origin] = unit(rank, i);
        return e;
    }

    std::size_t rank() const { return rank_; }
    const Point& translation() const { return translation_; }
    const std::map<Point, std::vector<Int>>& function_part() const { return function_; }

    bool is_identity() const {
        for (const Int& c : translation_)
            if (c != 0) return false;
        return function_.empty();
    }

    friend WreathElement operator*(const WreathElement& a, const WreathElement& b) {
        if (a.rank_ != b.rank_) throw domain_error("wreath rank mismatch");
        WreathElement out(a.rank_);
        out.function_ = a.function_;
        for (const auto& [p, coeffs] : b.function_) {
            Point shifted = p;
            for (std::size_t i = 0; i < a.rank_; ++i) shifted[i] += a.translation_[i];
            auto& cell = out.function_[shifted];
            if (cell.empty()) cell.assign(a.rank_, 0);
            bool all_zero = true;
            for (std::size_t i = 0; i < a.rank_; ++i) {
                cell[i] += coeffs[i];
                if (cell[i] != 0) all_zero = false;
            }
            if (all_zero) out.function_.erase(shifted);
        }
        for (std::size_t i = 0; i < a.rank_; ++i)
            out.translation_[i] = a.translation_[i] + b.translation_[i];
        return out;
    }

    WreathElement inverted() const {
        WreathElement out(rank_);
        for (std::size_t i = 0; i < rank_; ++i) out.translation_[i] = -translation_[i];
        for (const auto& [p, coeffs] : function_) {
            Point shifted = p;
            for (std::size_t i = 0; i < rank_; ++i) shifted[i] -= translation_[i];
            std::vector<Int> neg(rank_);
            for (std::size_t i = 0; i < rank_; ++i) neg[i] = -coeffs[i];
            out.function_[shifted] = std::move(neg);
        }
        return out;
    }

private:
    static std::vector<Int> unit(std::size_t rank, std::size_t i) {
        std::vector<Int> v(rank, 0);
        v[i] = 1;
        return v;
    }

    std::size_t rank_;
    Point translation_;
    std::map<Point, std::vector<Int>> function_;
};

/// Image of a word in the wreath model; identity output <=> the word is in F''.
inline WreathElement wreath_eval(const Word& a) {
    WreathElement acc(a.rank());
    for (const Syllable& s : a.syllables()) {
        WreathElement g = WreathElement::generator(a.rank(), s.gen);
        if (s.exp < 0) g = g.inverted();
        Int n = abs(s.exp);
        if (n > Int(limits().max_word_letters)) throw resource_error("wreath power too large");
        for (Int i = 0; i < n; ++i) acc = acc * g;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Truncated noncommutative power series (the dimension-subgroup model).
//
// x_i maps to 1 + X_i, inverses to the truncated geometric series. For a free
// group the d-th dimension subgroup equals gamma_d, so the image is 1 exactly
// when the word lies in gamma_d(F).

class TruncatedSeries {
public:
    using Monomial = std::vector<std::uint32_t>;  // sequence of letter indices

    TruncatedSeries(std::size_t rank, unsigned degree_bound)
        : rank_(rank), degree_(degree_bound) {}

    static TruncatedSeries one(std::size_t rank, unsigned degree_bound) {
        TruncatedSeries s(rank, degree_bound);
        s.terms_[{}] = 1;
        return s;
    }

    std::size_t rank() const { return rank_; }
    unsigned degree_bound() const { return degree_; }
    const std::map<Monomial, Int>& terms() const { return terms_; }

    bool is_one() const { return terms_.size() == 1 && terms_.begin()->second == 1 && terms_.begin()->first.empty(); }

    Int coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Int(0) : it->second;
    }

    void add_term(Monomial m, const Int& c) {
        if (m.size() >= degree_ || c == 0) return;
        auto [it, inserted] = terms_.emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.rank_ != b.rank_ || a.degree_ != b.degree_)
            throw domain_error("series shape mismatch");
        TruncatedSeries out(a.rank_, a.degree_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                if (ma.size() + mb.size() >= a.degree_) continue;
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                out.add_term(std::move(m), ca * cb);
            }
        }
        return out;
    }

private:
    std::size_t rank_;
    unsigned degree_;
    std::map<Monomial, Int> terms_;
};

/// Image of a word under x_i -> 1 + X_i truncated below degree d (d >= 2).
inline TruncatedSeries truncated_series_eval(const Word& a, unsigned degree) {
    if (degree < 2) throw domain_error("series degree must be at least 2");
    TruncatedSeries acc = TruncatedSeries::one(a.rank(), degree);
    for (const Syllable& s : a.syllables()) {
        TruncatedSeries gen(a.rank(), degree);
        if (s.exp > 0) {
            // 1 + X
            gen.add_term({}, 1);
            gen.add_term({static_cast<std::uint32_t>(s.gen)}, 1);
        } else {
            // 1 - X + X^2 - ...
            Int sign = 1;
            for (unsigned d = 0; d < degree; ++d) {
                gen.add_term(TruncatedSeries::Monomial(d, static_cast<std::uint32_t>(s.gen)), sign);
                sign = -sign;
            }
        }
        Int n = abs(s.exp);
        if (n > Int(limits().max_word_letters)) throw resource_error("series power too large");
        for (Int i = 0; i < n; ++i) acc = acc * gen;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Random substitution in small finite metabelian groups (affine groups of
// Z/m, which are metabelian; m = 3 gives S_3). A nonidentity image certifies
// that the word is outside F''; absence of a witness proves nothing.

struct ProbeWitness {
    unsigned modulus = 0;
    // images of the generators as (unit, offset) pairs in Aff(Z/m)
    std::vector<std::pair<unsigned, unsigned>> images;
    std::pair<unsigned, unsigned> value;
};

namespace detail {

struct Affine {
    unsigned a = 1, b = 0;  // x -> a x + b over Z/m
};

inline Affine affine_mul(const Affine& f, const Affine& g, unsigned m) {
    return Affine{(f.a * g.a) % m, (f.a * g.b + f.b) % m};
}

inline Affine affine_inv(const Affine& f, unsigned m) {
    unsigned ainv = 1;
    for (unsigned c = 1; c < m; ++c)
        if ((f.a * c) % m == 1) {
            ainv = c;
            break;
        }
    return Affine{ainv, (m - (ainv * f.b) % m) % m};
}

inline Affine affine_pow(Affine f, Int e, unsigned m) {
    if (e < 0) {
        f = affine_inv(f, m);
        e = -e;
    }
    Affine acc;
    while (e > 0) {
        if ((e & 1) != 0) acc = affine_mul(acc, f, m);
        f = affine_mul(f, f, m);
        e >>= 1;
    }
    return acc;
}

}  // namespace detail

inline std::optional<ProbeWitness> finite_probe(const Word& a, std::size_t trials,
                                                std::uint64_t seed) {
    static const unsigned moduli[] = {3, 4, 5, 7, 8, 9, 11, 13};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        unsigned m = moduli[rng() % std::size(moduli)];
        std::vector<detail::Affine> images(a.rank());
        std::vector<std::pair<unsigned, unsigned>> raw;
        for (auto& img : images) {
            do {
                img.a = static_cast<unsigned>(rng() % m);
            } while (std::gcd(img.a, m) != 1);
            img.b = static_cast<unsigned>(rng() % m);
            raw.emplace_back(img.a, img.b);
        }
        detail::Affine acc;
        for (const Syllable& s : a.syllables())
            acc = detail::affine_mul(acc, detail::affine_pow(images[s.gen], s.exp, m), m);
        if (acc.a != 1 || acc.b != 0)
            return ProbeWitness{m, std::move(raw), {acc.a, acc.b}};
    }
    return std::nullopt;
}

}  // namespace relfree::oracles
