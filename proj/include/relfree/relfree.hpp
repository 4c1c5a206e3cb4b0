#pragma once

// Free-group calculus: reduced words, Fox derivatives, group rings, the
// Magnus derivation and the word problem for F/R', Hall-basis collection in
// free nilpotent quotients, and automorphism identity checkers.

#include "relfree/autos.hpp"
#include "relfree/common.hpp"
#include "relfree/magnus.hpp"
#include "relfree/nilpotent.hpp"
#include "relfree/oracles.hpp"
#include "relfree/parse.hpp"
#include "relfree/ring.hpp"
#include "relfree/word.hpp"
