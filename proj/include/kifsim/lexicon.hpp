#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kifsim/errors.hpp"
#include "kifsim/kif.hpp"
#include "kifsim/ontology.hpp"
#include "kifsim/rules_types.hpp"
#include "kifsim/term_id.hpp"

namespace kifsim::lex {

class LexiconError : public Error {
public:
    enum class Kind { MissingQualia, UnknownPart };
    LexiconError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

enum class EventSort { State, Process, Transition };

std::string to_string(EventSort sort);

struct Telic {
    TermId process;
    bool direct = true;
};

struct ArgSlot {
    TermId role;
    TermId cls;
};

// A lexical entry: the headword's argument structure, its event sort,
// and its qualia (what it is, what it is for, what it is made of, and
// where it comes from).
struct LexicalEntry {
    TermId headword;
    std::vector<ArgSlot> argumentStructure;
    EventSort eventSort = EventSort::State;
    std::vector<TermId> subevents;
    std::optional<TermId> formal;
    std::optional<Telic> telic;
    std::set<TermId> constitutive;
    std::optional<TermId> agentive;
    std::vector<TermId> inherits;
    kif::SourceSpan origin;
};

// Distinguishing-part tree: each class in the hierarchy lists the
// parts that set it apart from its siblings.
class Partonomy {
public:
    TermId root() const { return root_; }
    bool has_class(TermId cls) const { return distinguishing_.count(cls) > 0; }
    const std::set<TermId>& distinguishing(TermId cls) const;

    // Keeps each candidate whose own, inherited, or more specific
    // distinguishing parts include part. Throws LexiconError
    // (UnknownPart) when no class anywhere lists the part. Narrowing
    // is monotone: the result is always a subset of the candidates.
    std::vector<TermId> narrow(const std::vector<TermId>& candidates, TermId part) const;

private:
    friend class Lexicon;
    TermId root_;
    std::map<TermId, TermId> parent_;
    std::map<TermId, std::set<TermId>> children_;
    std::map<TermId, std::set<TermId>> distinguishing_;
};

class Lexicon {
public:
    void load_axioms(const std::vector<kif::Term>& forms);
    void load_file(const std::string& path);

    const std::map<TermId, LexicalEntry>& entries() const { return entries_; }
    const LexicalEntry& entry(TermId headword) const;
    bool has_entry(TermId headword) const { return entries_.count(headword) > 0; }

    const std::map<TermId, Partonomy>& partonomies() const { return partonomies_; }
    const Partonomy& partonomy(TermId root) const;

private:
    void load_entry(const kif::Term& form);
    void load_partonomy(const kif::Term& form);
    void load_partonomy_node(const kif::Term& form, Partonomy& partonomy,
                             std::optional<TermId> parent);

    std::map<TermId, LexicalEntry> entries_;
    std::map<TermId, Partonomy> partonomies_;
};

// Checks an entry against the ontology and the rest of the lexicon;
// returns a description of each problem found, empty when clean.
std::vector<std::string> validate_entry(const LexicalEntry& entry, const KnowledgeBase& kb,
                                        const Lexicon& lexicon);

// Compiles the entry's qualia into a forward rule named
// lex_<headword>. Throws LexiconError (MissingQualia) when the entry
// has no formal quale to anchor the consequent.
rules::Rule entry_to_rule(const LexicalEntry& entry);

}  // namespace kifsim::lex
