#pragma once

// Text form of progressions: "x, x+y, x+2y, x+y^3".
//
//   progression := 'x' (',' 'x' ('+' | '-') poly)*
//   poly        := term (('+' | '-') term)*
//   term        := unary (('*' | '/')? unary)*     juxtaposition multiplies
//   unary       := '-' unary | power
//   power       := atom ('^' integer)?
//   atom        := integer | 'y' | 'C' '(' 'y' ',' integer ')' | '(' poly ')'
//
// Division is by nonzero integer literals only.

#include "polyprog/progression/progression.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace polyprog {

enum class ParseErrorKind { syntax, constant_term, non_integral, zero, duplicate };

struct ParseError : std::invalid_argument {
    ParseError(ParseErrorKind k, std::size_t pos, const std::string& msg);
    ParseErrorKind kind;
    std::size_t position;  // 0-based column in the source text
    std::optional<std::pair<long, Rational>> witness;  // (y, P(y)) with P(y) not an integer
};

struct ProgressionExpr {
    std::string source;
    Progression progression;  // terms in source order
    std::string canonical;    // terms stably sorted by degree
};

/// Throws ParseError.
ProgressionExpr parse_progression(const std::string& text);

/// A single polynomial in `var` with the grammar of `poly`.
UniPoly parse_polynomial(const std::string& text, char var = 'y');

/// The terms of prog stably sorted by degree, rendered as text.
std::string render_canonical(const Progression& prog);

}  // namespace polyprog
