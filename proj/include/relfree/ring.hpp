#pragma once

#include "relfree/nilpotent.hpp"
#include "relfree/parse.hpp"
#include "relfree/word.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace relfree {

/// The effective quotient families F/R this library computes in.
enum class Family { free_group, abelian, nilpotent, metabelian, solvable };

struct QuotientDescriptor {
    Family family = Family::free_group;
    std::size_t rank = 0;
    unsigned param = 0;  // nilpotency class, or derived length for solvable

    static QuotientDescriptor free_group(std::size_t rank) {
        return {Family::free_group, rank, 0};
    }
    static QuotientDescriptor abelian(std::size_t rank) { return {Family::abelian, rank, 0}; }
    static QuotientDescriptor nilpotent(std::size_t rank, unsigned cls) {
        if (cls < 1) throw domain_error("nilpotency class must be at least 1");
        return {Family::nilpotent, rank, cls};
    }
    static QuotientDescriptor metabelian(std::size_t rank) { return {Family::metabelian, rank, 2}; }
    static QuotientDescriptor solvable(std::size_t rank, unsigned length) {
        if (length < 1) throw domain_error("derived length must be at least 1");
        return {Family::solvable, rank, length};
    }

    /// Derived length when viewed as a solvable family (abelian = 1).
    unsigned derived_length() const {
        switch (family) {
            case Family::abelian: return 1;
            case Family::metabelian: return 2;
            case Family::solvable: return param;
            default: throw domain_error("not a solvable descriptor");
        }
    }

    std::string text() const {
        switch (family) {
            case Family::free_group: return "free";
            case Family::abelian: return "abelian";
            case Family::nilpotent: return "nilpotent:" + std::to_string(param);
            case Family::metabelian: return "metabelian";
            case Family::solvable: return "solvable:" + std::to_string(param);
        }
        return "?";
    }

    /// Parses "free" | "abelian" | "nilpotent:c" | "metabelian" | "solvable:k".
    static QuotientDescriptor parse(std::string_view text, std::size_t rank) {
        auto colon = text.find(':');
        std::string_view head = text.substr(0, colon);
        unsigned value = 0;
        if (colon != std::string_view::npos) {
            for (char c : text.substr(colon + 1)) {
                if (c < '0' || c > '9') throw domain_error("bad variety parameter");
                value = value * 10 + static_cast<unsigned>(c - '0');
            }
        }
        if (head == "free") return free_group(rank);
        if (head == "abelian") return abelian(rank);
        if (head == "metabelian") return metabelian(rank);
        if (head == "nilpotent") return nilpotent(rank, value);
        if (head == "solvable") return solvable(rank, value);
        throw domain_error("unknown variety '" + std::string(text) + "'");
    }

    friend bool operator==(const QuotientDescriptor&, const QuotientDescriptor&) = default;
};

namespace detail {

// Defined in magnus.hpp; iterated-Magnus canonical form for free solvable
// quotients. Declared here so CanonicalGroup can dispatch on it.
std::string solvable_canon_text(const Word& rep, unsigned derived_length,
                                const Alphabet& alphabet);

}  // namespace detail

/// Canonical key of a group element of F/R: a stored representative word plus
/// the canonical serialized form that decides equality and ordering.
class Key {
public:
    Key() = default;
    Key(Word rep, std::string canon) : rep_(std::move(rep)), canon_(std::move(canon)) {}

    const Word& representative() const { return rep_; }
    const std::string& text() const { return canon_; }
    bool is_identity_text() const { return canon_ == "1"; }

    friend bool operator==(const Key& a, const Key& b) { return a.canon_ == b.canon_; }
    friend bool operator<(const Key& a, const Key& b) { return a.canon_ < b.canon_; }

private:
    Word rep_;
    std::string canon_;
};

/// One of the four effective quotients F/R with computable canonical forms:
/// free (reduced words), free abelian (exponent vectors), free nilpotent
/// (Hall normal forms), free solvable/metabelian (iterated Magnus keys).
class CanonicalGroup {
public:
    explicit CanonicalGroup(QuotientDescriptor desc) : desc_(desc) {}

    const QuotientDescriptor& descriptor() const { return desc_; }
    std::size_t rank() const { return desc_.rank; }

    Key key(const Word& representative) const {
        if (representative.rank() != desc_.rank) throw domain_error("rank mismatch");
        switch (desc_.family) {
            case Family::free_group:
                return Key(representative, to_text(representative));
            case Family::abelian:
                return Key(abelian_rep(representative), to_text(abelian_rep(representative)));
            case Family::nilpotent:
                return Key(representative,
                           collect(representative, desc_.param).text(Alphabet(desc_.rank)));
            case Family::metabelian:
            case Family::solvable: {
                unsigned len = desc_.derived_length();
                if (len == 1)
                    return Key(abelian_rep(representative), to_text(abelian_rep(representative)));
                return Key(representative,
                           detail::solvable_canon_text(representative, len, Alphabet(desc_.rank)));
            }
        }
        throw domain_error("corrupt descriptor");
    }

    Key multiply(const Key& a, const Key& b) const {
        return key(a.representative() * b.representative());
    }

    Key invert(const Key& a) const { return key(inverse(a.representative())); }

    Key identity() const { return key(Word::identity(desc_.rank)); }

    bool is_identity(const Key& k) const { return k == identity(); }

    /// Canonical text rendered with caller-chosen generator names.
    std::string display(const Key& k, const Alphabet& alphabet) const {
        switch (desc_.family) {
            case Family::free_group:
            case Family::abelian:
                return to_text(k.representative(), alphabet);
            case Family::nilpotent:
                return collect(k.representative(), desc_.param).text(alphabet);
            case Family::metabelian:
            case Family::solvable: {
                unsigned len = desc_.derived_length();
                if (len == 1) return to_text(k.representative(), alphabet);
                return detail::solvable_canon_text(k.representative(), len, alphabet);
            }
        }
        throw domain_error("corrupt descriptor");
    }

    friend bool operator==(const CanonicalGroup& a, const CanonicalGroup& b) {
        return a.desc_ == b.desc_;
    }

private:
    Word abelian_rep(const Word& w) const {
        std::vector<Syllable> sorted;
        for (std::size_t g = 0; g < desc_.rank; ++g) {
            Int e = exponent_sum(w, g);
            if (e != 0) sorted.push_back(Syllable{g, e});
        }
        return Word::reduce(desc_.rank, sorted);
    }

    QuotientDescriptor desc_;
};

/// Finite formal Z-linear combination of canonical group keys. Immutable in
/// spirit: all operations return new values; no zero coefficients are stored
/// and the support is kept in canonical key order.
class RingElement {
public:
    explicit RingElement(CanonicalGroup group) : group_(std::move(group)) {}

    static RingElement zero(const CanonicalGroup& g) { return RingElement(g); }

    static RingElement one(const CanonicalGroup& g) {
        RingElement e(g);
        e.add_in(g.identity(), 1);
        return e;
    }

    static RingElement monomial(const CanonicalGroup& g, const Word& w, Int coeff = 1) {
        RingElement e(g);
        e.add_in(g.key(w), std::move(coeff));
        return e;
    }

    const CanonicalGroup& group() const { return group_; }
    const std::map<Key, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend RingElement operator+(const RingElement& a, const RingElement& b) {
        a.check_same(b);
        RingElement out = a;
        for (const auto& [k, c] : b.terms_) out.add_in(k, c);
        return out;
    }

    friend RingElement operator-(const RingElement& a, const RingElement& b) {
        a.check_same(b);
        RingElement out = a;
        for (const auto& [k, c] : b.terms_) out.add_in(k, -c);
        return out;
    }

    friend RingElement operator-(const RingElement& a) {
        RingElement out(a.group_);
        for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, -c);
        return out;
    }

    /// Convolution product through key multiplication; Z-bilinear, associative.
    friend RingElement operator*(const RingElement& a, const RingElement& b) {
        a.check_same(b);
        RingElement out(a.group_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                out.add_in(a.group_.multiply(ka, kb), ca * cb);
                check_ring_budget(out.terms_.size());
            }
        return out;
    }

    friend RingElement operator*(const Int& c, const RingElement& a) {
        RingElement out(a.group_);
        if (c != 0)
            for (const auto& [k, coeff] : a.terms_) out.terms_.emplace(k, c * coeff);
        return out;
    }

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.group_ == b.group_ && a.terms_ == b.terms_;
    }

    /// Sum of all coefficients; a ring homomorphism onto Z.
    Int augmentation() const {
        Int total = 0;
        for (const auto& [k, c] : terms_) total += c;
        return total;
    }

    /// (sign, g) when the element is exactly +g or -g for one group key.
    std::optional<std::pair<int, Key>> as_trivial_unit() const {
        if (terms_.size() != 1) return std::nullopt;
        const auto& [k, c] = *terms_.begin();
        if (c == 1) return std::make_pair(1, k);
        if (c == -1) return std::make_pair(-1, k);
        return std::nullopt;
    }

    std::string text(const Alphabet& alphabet) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            bool neg = c < 0;
            Int mag = abs(c);
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            std::string key_text = group_.display(k, alphabet);
            if (mag != 1)
                out += mag.str() + "*" + key_text;
            else
                out += key_text;
        }
        return out;
    }

    std::string text() const { return text(Alphabet(group_.rank())); }

    void add_in(const Key& k, const Int& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
        check_ring_budget(terms_.size());
    }

private:
    void check_same(const RingElement& b) const {
        if (!(group_ == b.group_)) throw domain_error("ring ambient mismatch");
    }

    CanonicalGroup group_;
    std::map<Key, Int> terms_;
};

/// Ring homomorphism Z[F] -> Z[F/R] induced by the natural projection.
inline RingElement project(const RingElement& u, const CanonicalGroup& target) {
    if (u.group().descriptor().family != Family::free_group)
        throw domain_error("project expects a free ambient");
    if (u.group().rank() != target.rank()) throw domain_error("rank mismatch");
    RingElement out(target);
    for (const auto& [k, c] : u.terms()) out.add_in(target.key(k.representative()), c);
    return out;
}

/// Support-wise application of generator images (an endomorphism transport).
inline RingElement map_support(const RingElement& u, std::span<const Word> images) {
    RingElement out(u.group());
    for (const auto& [k, c] : u.terms())
        out.add_in(u.group().key(substitute(k.representative(), images)), c);
    return out;
}

}  // namespace relfree
