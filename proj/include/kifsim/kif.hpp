#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kifsim/errors.hpp"
#include "kifsim/span.hpp"

namespace kifsim::kif {

enum class TermKind { Atom, Variable, Number, String, Compound };

// Immutable S-expression node. Variables are stored without the '?'
// sigil; numbers keep their lexeme so printing round-trips exactly.
class Term {
public:
    static Term atom(std::string name, SourceSpan span = {});
    static Term variable(std::string name, SourceSpan span = {});
    static Term number(std::string lexeme, SourceSpan span = {});
    static Term string(std::string value, SourceSpan span = {});
    static Term compound(std::vector<Term> elements, SourceSpan span = {});

    TermKind kind() const { return kind_; }
    // Atom name, variable name, number lexeme, or string body.
    const std::string& text() const { return text_; }
    const std::vector<Term>& elements() const { return elements_; }
    const SourceSpan& span() const { return span_; }

    bool is_atom() const { return kind_ == TermKind::Atom; }
    bool is_atom(std::string_view name) const {
        return kind_ == TermKind::Atom && text_ == name;
    }
    bool is_variable() const { return kind_ == TermKind::Variable; }
    bool is_compound() const { return kind_ == TermKind::Compound; }
    // Head of a compound; only valid when is_compound().
    const Term& head() const { return elements_.front(); }
    std::size_t arity() const { return elements_.size(); }

    // Structural equality; spans are ignored.
    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }

private:
    Term(TermKind kind, std::string text, std::vector<Term> elements, SourceSpan span)
        : kind_(kind), text_(std::move(text)), elements_(std::move(elements)), span_(span) {}

    TermKind kind_;
    std::string text_;
    std::vector<Term> elements_;
    SourceSpan span_;
};

enum class FormulaKind {
    AtomicSentence,
    Implication,
    Biconditional,
    Conjunction,
    Disjunction,
    Negation,
    Existential,
    Universal,
    Other,
};

enum class ParseErrorKind {
    UnterminatedString,
    IllegalCharacter,
    UnbalancedParenthesis,
    EmptyCompound,
    UnsupportedSyntax,
};

class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message)
        : Error(message), kind_(kind), span_(span) {}
    ParseErrorKind kind() const { return kind_; }
    const SourceSpan& span() const { return span_; }

private:
    ParseErrorKind kind_;
    SourceSpan span_;
};

struct Token {
    enum class Kind { LParen, RParen, Symbol, String };
    Kind kind;
    std::string text;  // symbol lexeme or string body
    SourceSpan span;
};

// Splits source text into tokens. Comments run from ';' to end of line.
// Throws ParseError on unterminated strings and control characters.
std::vector<Token> tokenize(std::string_view text);

// Parses a sequence of top-level terms.
std::vector<Term> parse(std::string_view text);

// Canonical single-line form: elements separated by single spaces.
std::string print_term(const Term& term);

FormulaKind classify(const Term& term);

}  // namespace kifsim::kif
