#include "kifsim/kif.hpp"

#include <cctype>
#include <sstream>

namespace kifsim::kif {

Term Term::atom(std::string name, SourceSpan span) {
    return Term(TermKind::Atom, std::move(name), {}, span);
}

Term Term::variable(std::string name, SourceSpan span) {
    return Term(TermKind::Variable, std::move(name), {}, span);
}

Term Term::number(std::string lexeme, SourceSpan span) {
    return Term(TermKind::Number, std::move(lexeme), {}, span);
}

Term Term::string(std::string value, SourceSpan span) {
    return Term(TermKind::String, std::move(value), {}, span);
}

Term Term::compound(std::vector<Term> elements, SourceSpan span) {
    return Term(TermKind::Compound, "", std::move(elements), span);
}

bool Term::operator==(const Term& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == TermKind::Compound) return elements_ == other.elements_;
    return text_ == other.text_;
}

namespace {

bool is_delimiter(char c) {
    return c == '(' || c == ')' || c == '"' || c == ';' || std::isspace(static_cast<unsigned char>(c));
}

bool is_number_lexeme(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-') ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0) return false;
    if (i == s.size()) return true;
    if (s[i] != '.') return false;
    ++i;
    digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    return digits > 0 && i == s.size();
}

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    int line = 1;
    int column = 1;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    char take() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        return c;
    }

    SourceSpan here(int length = 1) const { return SourceSpan{line, column, length}; }
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    Cursor cur{text};
    while (!cur.done()) {
        char c = cur.peek();
        if (c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || c == ' ') {
            cur.take();
            continue;
        }
        if (static_cast<unsigned char>(c) < 0x20) {
            throw ParseError(ParseErrorKind::IllegalCharacter, cur.here(),
                             "illegal control character (0x" +
                                 [](unsigned char u) {
                                     static const char* hex = "0123456789abcdef";
                                     return std::string{hex[u >> 4], hex[u & 0xf]};
                                 }(static_cast<unsigned char>(c)) +
                                 ")");
        }
        if (c == ';') {
            while (!cur.done() && cur.peek() != '\n') cur.take();
            continue;
        }
        if (c == '(') {
            Token t{Token::Kind::LParen, "(", cur.here()};
            cur.take();
            tokens.push_back(std::move(t));
            continue;
        }
        if (c == ')') {
            Token t{Token::Kind::RParen, ")", cur.here()};
            cur.take();
            tokens.push_back(std::move(t));
            continue;
        }
        if (c == '"') {
            SourceSpan start = cur.here();
            cur.take();
            std::string body;
            bool closed = false;
            while (!cur.done()) {
                char d = cur.take();
                if (d == '"') {
                    closed = true;
                    break;
                }
                body.push_back(d);
            }
            if (!closed) {
                throw ParseError(ParseErrorKind::UnterminatedString, start,
                                 "unterminated string literal");
            }
            start.length = static_cast<int>(body.size()) + 2;
            tokens.push_back(Token{Token::Kind::String, std::move(body), start});
            continue;
        }
        SourceSpan start = cur.here();
        std::string lexeme;
        while (!cur.done() && !is_delimiter(cur.peek())) {
            char d = cur.peek();
            if (static_cast<unsigned char>(d) < 0x20) break;  // reported on the next loop pass
            lexeme.push_back(cur.take());
        }
        start.length = static_cast<int>(lexeme.size());
        tokens.push_back(Token{Token::Kind::Symbol, std::move(lexeme), start});
    }
    return tokens;
}

namespace {

Term symbol_to_term(const Token& token) {
    const std::string& s = token.text;
    char first = s.front();
    if (first == '@') {
        throw ParseError(ParseErrorKind::UnsupportedSyntax, token.span,
                         "row variables are not supported: " + s);
    }
    if (first == '\'' || first == '`' || first == ',') {
        throw ParseError(ParseErrorKind::UnsupportedSyntax, token.span,
                         "quoting is not supported: " + s);
    }
    if (first == '?') {
        if (s.size() == 1) {
            throw ParseError(ParseErrorKind::UnsupportedSyntax, token.span,
                             "bare '?' is not a variable");
        }
        return Term::variable(s.substr(1), token.span);
    }
    if (is_number_lexeme(s)) return Term::number(s, token.span);
    return Term::atom(s, token.span);
}

}  // namespace

std::vector<Term> parse(std::string_view text) {
    std::vector<Token> tokens = tokenize(text);
    std::vector<Term> top;
    // Each open paren pushes a frame; siblings accumulate in the frame.
    struct Frame {
        std::vector<Term> elements;
        SourceSpan open;
    };
    std::vector<Frame> stack;
    auto deliver = [&](Term term) {
        if (stack.empty()) {
            top.push_back(std::move(term));
        } else {
            stack.back().elements.push_back(std::move(term));
        }
    };
    for (const Token& token : tokens) {
        switch (token.kind) {
            case Token::Kind::LParen:
                stack.push_back(Frame{{}, token.span});
                break;
            case Token::Kind::RParen: {
                if (stack.empty()) {
                    throw ParseError(ParseErrorKind::UnbalancedParenthesis, token.span,
                                     "unmatched ')'");
                }
                Frame frame = std::move(stack.back());
                stack.pop_back();
                if (frame.elements.empty()) {
                    throw ParseError(ParseErrorKind::EmptyCompound, frame.open,
                                     "empty compound '()'");
                }
                deliver(Term::compound(std::move(frame.elements), frame.open));
                break;
            }
            case Token::Kind::Symbol:
                deliver(symbol_to_term(token));
                break;
            case Token::Kind::String:
                deliver(Term::string(token.text, token.span));
                break;
        }
    }
    if (!stack.empty()) {
        throw ParseError(ParseErrorKind::UnbalancedParenthesis, stack.back().open,
                         "unclosed '('");
    }
    return top;
}

std::string print_term(const Term& term) {
    switch (term.kind()) {
        case TermKind::Atom:
            return term.text();
        case TermKind::Variable:
            return "?" + term.text();
        case TermKind::Number:
            return term.text();
        case TermKind::String:
            return "\"" + term.text() + "\"";
        case TermKind::Compound: {
            std::string out = "(";
            bool first = true;
            for (const Term& e : term.elements()) {
                if (!first) out += ' ';
                out += print_term(e);
                first = false;
            }
            out += ')';
            return out;
        }
    }
    return {};
}

FormulaKind classify(const Term& term) {
    if (term.kind() == TermKind::Atom) return FormulaKind::AtomicSentence;
    if (term.kind() != TermKind::Compound) return FormulaKind::Other;
    const Term& head = term.head();
    if (!head.is_atom()) return FormulaKind::AtomicSentence;
    const std::string& op = head.text();
    std::size_t args = term.arity() - 1;
    if (op == "=>") return args == 2 ? FormulaKind::Implication : FormulaKind::Other;
    if (op == "<=>") return args == 2 ? FormulaKind::Biconditional : FormulaKind::Other;
    if (op == "and") return args >= 1 ? FormulaKind::Conjunction : FormulaKind::Other;
    if (op == "or") return args >= 1 ? FormulaKind::Disjunction : FormulaKind::Other;
    if (op == "not") return args == 1 ? FormulaKind::Negation : FormulaKind::Other;
    if (op == "exists" || op == "forall") {
        if (args != 2) return FormulaKind::Other;
        const Term& vars = term.elements()[1];
        if (!vars.is_compound()) return FormulaKind::Other;
        for (const Term& v : vars.elements()) {
            if (!v.is_variable()) return FormulaKind::Other;
        }
        return op == "exists" ? FormulaKind::Existential : FormulaKind::Universal;
    }
    return FormulaKind::AtomicSentence;
}

}  // namespace kifsim::kif
