#include "relfree/parse.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace relfree;
using testsupport::Rng;
using testsupport::random_word;

namespace {
const Alphabet ab2(std::vector<std::string>{"x", "y"});
}

TEST_CASE("word grammar") {
    CHECK(parse_word("x*y^-1", ab2) ==
          Word::generator(2, 0) * Word::generator(2, 1, -1));
    CHECK(parse_word("[x,y]^2", ab2) ==
          pow(commutator(Word::generator(2, 0), Word::generator(2, 1)), 2));
    CHECK(parse_word("(x*y)^3", ab2) == pow(Word::generator(2, 0) * Word::generator(2, 1), 3));
    CHECK(parse_word("1", ab2).is_identity());
    CHECK(parse_word(" x * y ^ 2 ", ab2) == parse_word("x*y^2", ab2));
    CHECK(parse_word("x^123456789012345678901234567890", ab2).syllables()[0].exp ==
          Int("123456789012345678901234567890"));
}

TEST_CASE("word grammar errors") {
    CHECK_THROWS_AS(parse_word("x*", ab2), parse_error);
    CHECK_THROWS_AS(parse_word("q", ab2), parse_error);
    CHECK_THROWS_AS(parse_word("x^", ab2), parse_error);
    CHECK_THROWS_AS(parse_word("(x", ab2), parse_error);
    CHECK_THROWS_AS(parse_word("[x]", ab2), parse_error);
    CHECK_THROWS_AS(parse_word("_0", ab2), parse_error);
    CHECK_THROWS_AS(parse_word("x y", ab2), parse_error);

    try {
        parse_word("x*q", ab2);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("term grammar") {
    TermExpr w0 = parse_term("_1*_0*_1^-1");
    CHECK(w0.arity() == 1);
    TermExpr w1 = parse_term("_1*_0^-1*_1^-1");
    CHECK(w1.arity() == 1);
    TermExpr id = parse_term("_0");
    CHECK(id.arity() == 0);

    CHECK_THROWS_AS(parse_term("_0*_2"), parse_error);  // missing _1
    CHECK_THROWS_AS(parse_term("x*_0"), parse_error);   // names need an alphabet
    CHECK(parse_term("x*_0", &ab2).arity() == 0);
}

TEST_CASE("term evaluation") {
    TermExpr w0 = parse_term("_1*_0*_1^-1");
    TermExpr w1 = parse_term("_1*_0^-1*_1^-1");

    Word x = Word::generator(2, 0), y = Word::generator(2, 1);
    std::vector<Word> v{y};
    CHECK(evaluate_term(w0, x, v) == y * x * inverse(y));
    CHECK(evaluate_term(w1, x, v) == y * inverse(x) * inverse(y));
    CHECK(evaluate_term(parse_term("_0^1"), x * y, {}) == x * y);
    CHECK_THROWS_AS(evaluate_term(w0, x, {}), domain_error);

    CHECK(subject_exponent_sum(w0, v) == 1);
    CHECK(subject_exponent_sum(w1, v) == -1);
    CHECK(subject_exponent_sum(parse_term("_0*_1*_0*_1^-1*_0^-1"), v) == 1);
}

TEST_CASE("printing round trips") {
    CHECK(to_text(parse_word("x*y*y^-1", ab2), ab2) == "x");
    CHECK(to_text(Word::identity(2), ab2) == "1");
    CHECK(to_text(parse_word("x^-1*y^3", ab2), ab2) == "x^-1*y^3");

    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        Word a = random_word(rng, 2, 1 + rng.below(20));
        std::string text = to_text(a, ab2);
        CHECK(parse_word(text, ab2) == a);
        CHECK(to_text(parse_word(text, ab2), ab2) == text);
    }

    for (const char* t : {"_0", "_1*_0*_1^-1", "[_0,_1]^3*(_1*_2)^-2", "1"}) {
        TermExpr term = parse_term(t);
        CHECK(to_text(parse_term(to_text(term))) == to_text(term));
    }
}

TEST_CASE("evaluation commutes with substitution") {
    Rng rng(4711);
    TermExpr terms[] = {parse_term("_1*_0*_1^-1"), parse_term("[_0,_1]*_0^2"),
                        parse_term("_1^-1*[_0,_1,_0]")};
    for (int i = 0; i < 100; ++i) {
        const TermExpr& t = terms[rng.below(3)];
        Word subject = random_word(rng, 2, 6);
        std::vector<Word> args{random_word(rng, 2, 4)};
        std::vector<Word> images{random_word(rng, 2, 3), random_word(rng, 2, 3)};

        Word lhs = substitute(evaluate_term(t, subject, args), images);
        std::vector<Word> mapped{substitute(args[0], images)};
        Word rhs = evaluate_term(t, substitute(subject, images), mapped);
        CHECK(lhs == rhs);
    }
}
