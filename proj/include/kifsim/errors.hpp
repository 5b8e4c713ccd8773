#pragma once

#include <stdexcept>
#include <string>

#include "kifsim/span.hpp"

namespace kifsim {

// Base for all engine errors. Subsystems derive a type with a kind enum
// for programmatic handling; what() carries the human-readable message.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Raised while loading axioms or rules into a knowledge base.
class LoadError : public Error {
public:
    enum class Kind {
        SubclassCycle,
        ArityMismatch,
        DuplicatePartition,
        UnsupportedRuleForm,
        MalformedAxiom,
    };
    LoadError(Kind kind, const std::string& message, kif::SourceSpan span = {})
        : Error(message), kind_(kind), span_(span) {}
    Kind kind() const { return kind_; }
    const kif::SourceSpan& span() const { return span_; }

private:
    Kind kind_;
    kif::SourceSpan span_;
};

// Raised by knowledge-base queries over terms it has never seen.
class QueryError : public Error {
public:
    enum class Kind { UnknownTerm, NoPartition };
    QueryError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace kifsim
