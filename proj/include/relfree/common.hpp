#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relfree {

// All exponents and coefficients are exact integers; collection and iterated
// Magnus keys overflow fixed-width types quickly.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text. `position` is a 0-based offset into the source.
class parse_error : public error {
public:
    parse_error(const std::string& msg, std::size_t position)
        : error(msg + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Semantically invalid arguments: rank mismatch, index out of range, ...
class domain_error : public error {
public:
    using error::error;
};

/// A configurable resource budget was exceeded. Raised instead of silently
/// truncating; collection and iterated Magnus keys grow exponentially.
class resource_error : public error {
public:
    using error::error;
};

/// Soft limits for the symbolic engines. Exceeding one raises resource_error.
struct Limits {
    std::size_t max_ring_terms = 1u << 20;
    std::size_t max_word_letters = 1u << 22;
    std::size_t max_collect_steps = 200u << 20;
};

inline Limits& limits() {
    thread_local Limits l;
    return l;
}

inline void check_word_budget(const Int& letters) {
    if (letters > Int(limits().max_word_letters))
        throw resource_error("word letter budget exceeded");
}

inline void check_ring_budget(std::size_t terms) {
    if (terms > limits().max_ring_terms)
        throw resource_error("ring term budget exceeded");
}

}  // namespace relfree
