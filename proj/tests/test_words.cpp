#include "relfree/word.hpp"
#include "relfree/parse.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace relfree;
using testsupport::Rng;
using testsupport::random_word;

namespace {

const Alphabet ab2(std::vector<std::string>{"x", "y"});
const Alphabet ab3(std::vector<std::string>{"x", "y", "z"});

Word w2(const std::string& text) { return parse_word(text, ab2); }
Word w3(const std::string& text) { return parse_word(text, ab3); }

}  // namespace

TEST_CASE("free reduction") {
    std::vector<Syllable> cancel{{0, 1}, {0, -1}};
    CHECK(Word::reduce(2, cancel).is_identity());

    std::vector<Syllable> merge{{0, 2}, {1, 1}, {1, -1}, {0, 1}};
    CHECK(Word::reduce(2, merge) == w2("x^3"));

    std::vector<Syllable> reduced{{0, 1}, {1, 3}, {0, -1}};
    CHECK(Word::reduce(2, reduced) == w2("x*y^3*x^-1"));

    std::vector<Syllable> bad{{5, 1}};
    CHECK_THROWS_AS(Word::reduce(2, bad), domain_error);
}

TEST_CASE("multiplication") {
    CHECK(w2("x*y") * w2("y^-1*x") == w2("x^2"));
    CHECK((w2("x*y^2") * inverse(w2("x*y^2"))).is_identity());
    CHECK(w2("x*y") * w2("x*y") == w2("x*y*x*y"));
    CHECK_THROWS_AS(w2("x") * w3("z"), domain_error);
}

TEST_CASE("inversion") {
    CHECK(inverse(w2("x*y^2")) == w2("y^-2*x^-1"));
    CHECK(inverse(Word::identity(2)).is_identity());
    CHECK(inverse(w2("x^-1")) == w2("x"));
}

TEST_CASE("substitution") {
    std::vector<Word> kill_y{w2("x"), Word::identity(2)};
    CHECK(substitute(w2("x*y*x^-1"), kill_y).is_identity());

    std::vector<Word> diag{w2("x"), w2("x")};
    CHECK(substitute(w2("[x,y]"), diag).is_identity());

    std::vector<Word> expand{w3("y*z"), w3("y")};
    CHECK(substitute(w2("x"), expand) == w3("y*z"));

    std::vector<Word> missing{w2("x")};
    CHECK_THROWS_AS(substitute(w2("x*y"), missing), domain_error);
}

TEST_CASE("exponent sums") {
    CHECK(exponent_sum(w2("x*y*x^-2"), 0) == -1);
    CHECK(exponent_sum(w2("[x,y]"), 0) == 0);
    CHECK(exponent_sum(w2("[x,y]"), 1) == 0);
    CHECK(exponent_sum(pow(w2("x*y"), 3), 1) == 3);
}

TEST_CASE("commutators") {
    CHECK(commutator(w2("x"), w2("x")).is_identity());
    CHECK(commutator(w2("x"), w2("y")) == w2("x^-1*y^-1*x*y"));

    Word c = commutator(w2("x"), w2("y"));
    CHECK(w2("[x,y,x]") == inverse(c) * w2("x^-1") * c * w2("x"));

    std::vector<Word> one{w2("x")};
    CHECK_THROWS_AS(left_normed_commutator(one), domain_error);
}

TEST_CASE("powers stay compact for syllable cores") {
    Word conj = w2("x*y^3*x^-1");
    Word big = pow(conj, Int("123456789012345678901234567890"));
    CHECK(big.syllables().size() == 3);
    CHECK(big.syllables()[1].exp == Int("123456789012345678901234567890") * 3);
    CHECK(pow(w2("x*y"), -2) == inverse(w2("x*y*x*y")));
}

TEST_CASE("random word properties") {
    Rng rng(20260810);
    for (int i = 0; i < 300; ++i) {
        std::size_t rank = 1 + rng.below(4);
        Word a = random_word(rng, rank, 1 + rng.below(24));
        Word b = random_word(rng, rank, 1 + rng.below(24));
        Word c = random_word(rng, rank, 1 + rng.below(12));

        // reduction is idempotent on the stored syllables
        CHECK(Word::reduce(rank, a.syllables()) == a);
        // group laws
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * inverse(a)).is_identity());
        // exponent sums are a homomorphism
        for (std::size_t g = 0; g < rank; ++g)
            CHECK(exponent_sum(a * b, g) == exponent_sum(a, g) + exponent_sum(b, g));
        // substitution is multiplicative
        std::vector<Word> images;
        for (std::size_t g = 0; g < rank; ++g) images.push_back(random_word(rng, rank, 4));
        CHECK(substitute(a * b, images) == substitute(a, images) * substitute(b, images));
        // letter length is subadditive
        CHECK((a * b).letter_length() <= a.letter_length() + b.letter_length());
    }
}
