#pragma once

#include "relfree/parse.hpp"
#include "relfree/ring.hpp"
#include "relfree/word.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace relfree {

/// Fox derivative D_i(a) in Z[F]: the unique derivation with D_i(X_j) = d_ij
/// and D(ab) = D(a) + a D(b).
inline RingElement fox_derivative(const Word& a, std::size_t gen) {
    if (gen >= a.rank()) throw domain_error("generator index out of range");
    CanonicalGroup free_group{QuotientDescriptor::free_group(a.rank())};
    RingElement acc = RingElement::zero(free_group);
    Word prefix = Word::identity(a.rank());
    for (const Syllable& s : a.syllables()) {
        if (s.gen == gen) {
            // D(x^e) = sum_{j=0}^{e-1} x^j for e > 0, -sum_{j=1}^{|e|} x^-j for e < 0
            Int n = abs(s.exp);
            if (n > Int(limits().max_ring_terms)) throw resource_error("fox term budget exceeded");
            Int j = s.exp > 0 ? Int(0) : Int(-1);
            Int step = s.exp > 0 ? 1 : -1;
            for (Int i = 0; i < n; ++i, j += step)
                acc.add_in(free_group.key(prefix * Word::generator(a.rank(), gen, j)),
                           s.exp > 0 ? 1 : -1);
        }
        prefix = prefix * Word::generator(a.rank(), s.gen, s.exp);
    }
    return acc;
}

/// Finitely supported coordinate vector of the free Z[F/R]-module with basis
/// (t_i); the codomain of the Magnus derivation.
class ModuleVector {
public:
    explicit ModuleVector(CanonicalGroup quotient) : quotient_(std::move(quotient)) {}

    const CanonicalGroup& quotient() const { return quotient_; }
    const std::map<std::size_t, RingElement>& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }

    RingElement coord(std::size_t gen) const {
        auto it = coords_.find(gen);
        return it == coords_.end() ? RingElement::zero(quotient_) : it->second;
    }

    void set(std::size_t gen, RingElement value) {
        if (gen >= quotient_.rank()) throw domain_error("generator index out of range");
        if (value.is_zero())
            coords_.erase(gen);
        else
            coords_.insert_or_assign(gen, std::move(value));
    }

    friend ModuleVector operator+(const ModuleVector& a, const ModuleVector& b) {
        if (!(a.quotient_ == b.quotient_)) throw domain_error("module ambient mismatch");
        ModuleVector out = a;
        for (const auto& [g, v] : b.coords_) out.set(g, out.coord(g) + v);
        return out;
    }

    friend ModuleVector operator-(const ModuleVector& a, const ModuleVector& b) {
        if (!(a.quotient_ == b.quotient_)) throw domain_error("module ambient mismatch");
        ModuleVector out = a;
        for (const auto& [g, v] : b.coords_) out.set(g, out.coord(g) - v);
        return out;
    }

    /// Scalar action of the group ring.
    friend ModuleVector operator*(const RingElement& scalar, const ModuleVector& a) {
        if (!(scalar.group() == a.quotient_)) throw domain_error("module ambient mismatch");
        ModuleVector out(a.quotient_);
        for (const auto& [g, v] : a.coords_) out.set(g, scalar * v);
        return out;
    }

    friend bool operator==(const ModuleVector& a, const ModuleVector& b) {
        return a.quotient_ == b.quotient_ && a.coords_ == b.coords_;
    }

    std::string text(const Alphabet& alphabet) const {
        if (coords_.empty()) return "0";
        std::string out;
        for (const auto& [g, v] : coords_) {
            if (!out.empty()) out += " + ";
            out += "(" + v.text(alphabet) + ")*t_" + alphabet.name(g);
        }
        return out;
    }

private:
    CanonicalGroup quotient_;
    std::map<std::size_t, RingElement> coords_;
};

/// Magnus derivation of aR' in the free Z[F/R]-module: coordinate i is the
/// projected Fox derivative. Vanishes exactly on R' (Magnus injectivity).
inline ModuleVector magnus_derivation(const Word& a, const CanonicalGroup& quotient) {
    if (quotient.rank() != a.rank()) throw domain_error("rank mismatch");
    ModuleVector out(quotient);
    for (std::size_t i = 0; i < a.rank(); ++i) {
        RingElement c = project(fox_derivative(a, i), quotient);
        if (!c.is_zero()) out.set(i, std::move(c));
    }
    return out;
}

namespace detail {

inline std::string solvable_canon_text(const Word& rep, unsigned derived_length,
                                       const Alphabet& alphabet) {
    if (derived_length == 1) {
        std::vector<Syllable> sorted;
        for (std::size_t g = 0; g < rep.rank(); ++g) {
            Int e = exponent_sum(rep, g);
            if (e != 0) sorted.push_back(Syllable{g, e});
        }
        return to_text(Word::reduce(rep.rank(), sorted), alphabet);
    }
    CanonicalGroup lower{QuotientDescriptor::solvable(rep.rank(), derived_length - 1)};
    ModuleVector d = magnus_derivation(rep, lower);
    if (d.is_zero()) return "1";  // aligned with the identity key shortcut
    std::string out = "{d:[";
    bool first = true;
    for (const auto& [g, v] : d.coords()) {
        if (!first) out += ';';
        first = false;
        out += alphabet.name(g) + ":" + v.text(alphabet);
    }
    out += "]|q:" + solvable_canon_text(rep, derived_length - 1, alphabet) + "}";
    return out;
}

}  // namespace detail

/// Canonical key of aF^(k) in the free solvable group of derived length k;
/// equal keys exactly for equal group elements.
inline Key solvable_key(const Word& a, unsigned derived_length) {
    return CanonicalGroup{QuotientDescriptor::solvable(a.rank(), derived_length)}.key(a);
}

/// Choice of the normal subgroup R in the F/R' word problem.
struct RSpec {
    enum class Kind { derived, lower_central };
    Kind kind = Kind::derived;
    unsigned param = 1;

    /// R = F^(m), m >= 1 (m = 1 is the commutator subgroup F').
    static RSpec derived(unsigned m) {
        if (m < 1) throw domain_error("derived index must be at least 1");
        return {Kind::derived, m};
    }
    static RSpec commutator() { return derived(1); }
    /// R = gamma_c, c >= 2.
    static RSpec gamma(unsigned c) {
        if (c < 2) throw domain_error("gamma index must be at least 2");
        return {Kind::lower_central, c};
    }

    /// The coefficient quotient F/R as an effective descriptor.
    CanonicalGroup coefficient_group(std::size_t rank) const {
        if (kind == Kind::derived) {
            if (param == 1) return CanonicalGroup{QuotientDescriptor::abelian(rank)};
            return CanonicalGroup{QuotientDescriptor::solvable(rank, param)};
        }
        return CanonicalGroup{QuotientDescriptor::nilpotent(rank, param - 1)};
    }
};

/// Decides a = 1 in F/R' by vanishing of all projected Fox derivatives
/// (equivalently a in R'); exact, via Magnus injectivity.
inline bool is_identity_in_FmodRprime(const Word& a, const RSpec& rspec) {
    CanonicalGroup quotient = rspec.coefficient_group(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i)
        if (!project(fox_derivative(a, i), quotient).is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// The f_sigma machinery of homomorphism words.

/// A term w(*;args) rewritten as v_1 *^{k_1} v_2 *^{k_2} ... v_m *^{k_m} with
/// the v_j free of the subject. The leading v_1 may be empty and the final
/// exponent may be zero (it absorbs a trailing segment).
struct NormalShape {
    std::vector<Word> segments;   // v_1 .. v_m over the base alphabet
    std::vector<Int> exponents;   // k_1 .. k_m
};

inline NormalShape hom_word_normal_shape(const TermExpr& term, std::span<const Word> args,
                                         std::size_t rank) {
    for (const Word& a : args)
        if (a.rank() != rank) throw domain_error("argument alphabet mismatch");
    std::size_t fresh = rank;
    std::vector<Word> lifted;
    lifted.reserve(args.size());
    for (const Word& a : args) lifted.push_back(a.with_rank(rank + 1));
    Word evaluated = evaluate_term(term, Word::generator(rank + 1, fresh), lifted);

    NormalShape shape;
    std::vector<Syllable> segment;
    auto flush = [&](Int k) {
        shape.segments.push_back(Word::reduce(rank, segment));
        shape.exponents.push_back(std::move(k));
        segment.clear();
    };
    for (const Syllable& s : evaluated.syllables()) {
        if (s.gen == fresh) {
            flush(s.exp);
        } else {
            segment.push_back(s);
        }
    }
    if (!segment.empty() || shape.segments.empty()) flush(0);
    return shape;
}

/// f_sigma = sum k_i c_i-bar with c_i = v_1...v_i, projected into Z[F/R].
inline RingElement f_sigma(const TermExpr& term, std::span<const Word> args,
                           const CanonicalGroup& quotient) {
    NormalShape shape = hom_word_normal_shape(term, args, quotient.rank());
    RingElement f = RingElement::zero(quotient);
    Word prefix = Word::identity(quotient.rank());
    for (std::size_t i = 0; i < shape.segments.size(); ++i) {
        prefix = prefix * shape.segments[i];
        if (shape.exponents[i] != 0) f.add_in(quotient.key(prefix), shape.exponents[i]);
    }
    return f;
}

enum class WitnessKind { conjugator, impossible_negative_unit, none };

struct InnerWitness {
    WitnessKind kind = WitnessKind::none;
    std::optional<Key> conjugator;  // set when kind == conjugator
};

/// Reads off how sigma acts on R-bar from f_sigma: a trivial unit +v gives the
/// conjugator v; -v is impossible for homomorphism words (augmentation 1);
/// anything else yields no witness.
inline InnerWitness inner_on_R_witness(const RingElement& f) {
    auto unit = f.as_trivial_unit();
    if (!unit) return {WitnessKind::none, std::nullopt};
    if (unit->first == 1) return {WitnessKind::conjugator, unit->second};
    return {WitnessKind::impossible_negative_unit, std::nullopt};
}

}  // namespace relfree
