#pragma once

#include "relfree/word.hpp"

#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relfree {

// Grammar (whitespace insignificant):
//   word   := factor { "*" factor }
//   factor := atom [ "^" int ]
//   atom   := name | "1" | "(" word ")" | "[" word "," word { "," word } "]"
// Names are ASCII identifiers; "_k" is reserved for term placeholders ("_0"
// is the subject, "_1".."_s" the arguments); "1" is the empty word. Brackets
// with more than two arguments are left-normed commutators. Integers are
// unbounded. The canonical printer emits "*" separators and "^e" only for
// exponents other than 1; it is the CLI wire format.

/// Term of the language of group theory: a word in the subject placeholder
/// "_0", argument placeholders "_1".."_s", and (optionally) named generators.
class TermExpr {
public:
    enum class Kind { placeholder, generator, product, power, commutator };

    Kind kind = Kind::product;
    std::size_t index = 0;          // placeholder: 0 = subject, k >= 1 = argument k
    std::string name;               // generator atoms keep their source name
    std::size_t gen = 0;            // resolved generator index
    Int exponent = 1;               // power nodes
    std::vector<TermExpr> children; // product / power / commutator

    /// Number of argument placeholders (the paper's s).
    std::size_t arity() const { return arity_; }

    friend class TermParser;

private:
    std::size_t arity_ = 0;
};

namespace detail {

class Scanner {
public:
    Scanner(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool done() {
        skip_ws();
        return pos_ >= text_.size();
    }

    std::size_t position() const { return pos_; }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        auto ok = [&](char c, bool first) {
            return c == '_' || std::isalpha(static_cast<unsigned char>(c)) ||
                   (!first && std::isdigit(static_cast<unsigned char>(c)));
        };
        if (pos_ >= text_.size() || !ok(text_[pos_], true))
            throw parse_error("expected a name", pos_);
        ++pos_;
        while (pos_ < text_.size() && ok(text_[pos_], false)) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Int integer() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            neg = text_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw parse_error("expected an integer", start);
        Int value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return neg ? -value : value;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline bool is_placeholder_name(std::string_view id) {
    if (id.size() < 2 || id[0] != '_') return false;
    for (std::size_t i = 1; i < id.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Words

namespace detail {

inline Word parse_word_body(Scanner& sc, const Alphabet& alphabet);

inline Word parse_word_atom(Scanner& sc, const Alphabet& alphabet) {
    std::size_t at = sc.position();
    char c = sc.peek();
    if (c == '(') {
        sc.eat('(');
        Word inner = parse_word_body(sc, alphabet);
        if (!sc.eat(')')) throw parse_error("expected ')'", sc.position());
        return inner;
    }
    if (c == '[') {
        sc.eat('[');
        std::vector<Word> parts;
        parts.push_back(parse_word_body(sc, alphabet));
        while (sc.eat(',')) parts.push_back(parse_word_body(sc, alphabet));
        if (!sc.eat(']')) throw parse_error("expected ']'", sc.position());
        if (parts.size() < 2) throw parse_error("commutator needs at least 2 arguments", at);
        return left_normed_commutator(parts);
    }
    if (c == '1') {
        sc.eat('1');
        return Word::identity(alphabet.rank());
    }
    std::string id = sc.identifier();
    if (is_placeholder_name(id))
        throw parse_error("placeholder '" + id + "' is not allowed in a word", at);
    auto gen = alphabet.find(id);
    if (!gen) throw parse_error("unknown generator '" + id + "'", at);
    return Word::generator(alphabet.rank(), *gen);
}

inline Word parse_word_factor(Scanner& sc, const Alphabet& alphabet) {
    Word atom = parse_word_atom(sc, alphabet);
    if (sc.eat('^')) return pow(atom, sc.integer());
    return atom;
}

inline Word parse_word_body(Scanner& sc, const Alphabet& alphabet) {
    Word acc = parse_word_factor(sc, alphabet);
    while (sc.eat('*')) acc = acc * parse_word_factor(sc, alphabet);
    return acc;
}

}  // namespace detail

inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
    detail::Scanner sc(text);
    Word w = detail::parse_word_body(sc, alphabet);
    if (!sc.done()) throw parse_error("unexpected trailing input", sc.position());
    return w;
}

/// Canonical text form: syllables joined by "*", "^e" for e != 1, "1" for the
/// identity. parse . print is the identity on Words.
inline std::string to_text(const Word& w, const Alphabet& alphabet) {
    if (alphabet.rank() < w.rank()) throw domain_error("alphabet too small for word");
    if (w.is_identity()) return "1";
    std::string out;
    for (const Syllable& s : w.syllables()) {
        if (!out.empty()) out += '*';
        out += alphabet.name(s.gen);
        if (s.exp != 1) out += '^' + s.exp.str();
    }
    return out;
}

inline std::string to_text(const Word& w) { return to_text(w, Alphabet(w.rank())); }

// ---------------------------------------------------------------------------
// Terms

class TermParser {
public:
    TermParser(std::string_view text, const Alphabet* names) : sc_(text), names_(names) {}

    TermExpr run() {
        TermExpr t = product();
        if (!sc_.done()) throw parse_error("unexpected trailing input", sc_.position());
        finish(t);
        return t;
    }

private:
    TermExpr product() {
        TermExpr node;
        node.kind = TermExpr::Kind::product;
        node.children.push_back(factor());
        while (sc_.eat('*')) node.children.push_back(factor());
        if (node.children.size() == 1) return std::move(node.children.front());
        return node;
    }

    TermExpr factor() {
        TermExpr base = atom();
        if (sc_.eat('^')) {
            TermExpr node;
            node.kind = TermExpr::Kind::power;
            node.exponent = sc_.integer();
            node.children.push_back(std::move(base));
            return node;
        }
        return base;
    }

    TermExpr atom() {
        std::size_t at = sc_.position();
        char c = sc_.peek();
        if (c == '(') {
            sc_.eat('(');
            TermExpr inner = product();
            if (!sc_.eat(')')) throw parse_error("expected ')'", sc_.position());
            return inner;
        }
        if (c == '[') {
            sc_.eat('[');
            TermExpr node;
            node.kind = TermExpr::Kind::commutator;
            node.children.push_back(product());
            while (sc_.eat(',')) node.children.push_back(product());
            if (!sc_.eat(']')) throw parse_error("expected ']'", sc_.position());
            if (node.children.size() < 2)
                throw parse_error("commutator needs at least 2 arguments", at);
            return node;
        }
        if (c == '1') {
            sc_.eat('1');
            TermExpr node;
            node.kind = TermExpr::Kind::product;  // empty product = identity
            return node;
        }
        std::string id = sc_.identifier();
        if (detail::is_placeholder_name(id)) {
            TermExpr node;
            node.kind = TermExpr::Kind::placeholder;
            node.index = 0;
            for (std::size_t i = 1; i < id.size(); ++i) node.index = node.index * 10 + (id[i] - '0');
            seen_.push_back(node.index);
            return node;
        }
        TermExpr node;
        node.kind = TermExpr::Kind::generator;
        node.name = id;
        if (!names_) throw parse_error("named generator '" + id + "' needs an alphabet", at);
        auto gen = names_->find(id);
        if (!gen) throw parse_error("unknown generator '" + id + "'", at);
        node.gen = *gen;
        return node;
    }

    void finish(TermExpr& t) {
        if (seen_.empty()) {
            t.arity_ = 0;
            return;
        }
        std::size_t max_index = 0;
        for (std::size_t k : seen_) max_index = std::max(max_index, k);
        for (std::size_t k = 0; k <= max_index; ++k)
            if (std::find(seen_.begin(), seen_.end(), k) == seen_.end())
                throw parse_error("placeholder indices are not contiguous from 0: missing _" +
                                      std::to_string(k),
                                  0);
        t.arity_ = max_index;
    }

    detail::Scanner sc_;
    const Alphabet* names_;
    std::vector<std::size_t> seen_;
};

/// Parses a term; named generators are resolved against `names` when given and
/// rejected otherwise. Placeholder indices must be contiguous from 0.
inline TermExpr parse_term(std::string_view text, const Alphabet* names = nullptr) {
    return TermParser(text, names).run();
}

namespace detail {

inline void term_text(const TermExpr& t, std::string& out) {
    switch (t.kind) {
        case TermExpr::Kind::placeholder:
            out += '_' + std::to_string(t.index);
            return;
        case TermExpr::Kind::generator:
            out += t.name;
            return;
        case TermExpr::Kind::product:
            if (t.children.empty()) {
                out += '1';
                return;
            }
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                if (i) out += '*';
                term_text(t.children[i], out);
            }
            return;
        case TermExpr::Kind::power: {
            const TermExpr& base = t.children.front();
            bool parens = base.kind == TermExpr::Kind::product || base.kind == TermExpr::Kind::power;
            if (parens) out += '(';
            term_text(base, out);
            if (parens) out += ')';
            if (t.exponent != 1) out += '^' + t.exponent.str();
            return;
        }
        case TermExpr::Kind::commutator:
            out += '[';
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                if (i) out += ',';
                term_text(t.children[i], out);
            }
            out += ']';
            return;
    }
}

}  // namespace detail

inline std::string to_text(const TermExpr& t) {
    std::string out;
    detail::term_text(t, out);
    return out;
}

/// w(subject; args), freely reduced. |args| must equal arity(t); the subject
/// and all arguments share one alphabet, which also hosts generator atoms.
inline Word evaluate_term(const TermExpr& t, const Word& subject, std::span<const Word> args) {
    if (args.size() != t.arity()) throw domain_error("term arity mismatch");
    for (const Word& a : args)
        if (a.rank() != subject.rank()) throw domain_error("alphabet mismatch");

    auto eval = [&](auto&& self, const TermExpr& node) -> Word {
        switch (node.kind) {
            case TermExpr::Kind::placeholder:
                return node.index == 0 ? subject : args[node.index - 1];
            case TermExpr::Kind::generator:
                if (node.gen >= subject.rank()) throw domain_error("generator index out of range");
                return Word::generator(subject.rank(), node.gen);
            case TermExpr::Kind::product: {
                Word acc = Word::identity(subject.rank());
                for (const TermExpr& c : node.children) acc = acc * self(self, c);
                return acc;
            }
            case TermExpr::Kind::power:
                return pow(self(self, node.children.front()), node.exponent);
            case TermExpr::Kind::commutator: {
                std::vector<Word> parts;
                parts.reserve(node.children.size());
                for (const TermExpr& c : node.children) parts.push_back(self(self, c));
                return left_normed_commutator(parts);
            }
        }
        throw domain_error("corrupt term");
    };
    return eval(eval, t);
}

/// Total exponent of the subject placeholder in the evaluated term (the
/// paper's k_1+...+k_m), computed with a fresh letter as subject.
/// `ambient_rank` covers generator atoms not reachable through the arguments.
inline Int subject_exponent_sum(const TermExpr& t, std::span<const Word> args,
                                std::size_t ambient_rank = 0) {
    std::size_t base_rank = ambient_rank;
    for (const Word& a : args) base_rank = std::max(base_rank, a.rank());
    std::size_t rank = base_rank + 1;
    std::vector<Word> lifted;
    lifted.reserve(args.size());
    for (const Word& a : args) lifted.push_back(a.with_rank(rank));
    Word fresh = Word::generator(rank, rank - 1);
    return exponent_sum(evaluate_term(t, fresh, lifted), rank - 1);
}

}  // namespace relfree
