#include "kifsim/lexicon.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace kifsim::lex {

namespace {

using kif::Term;

TermId require_atom(const Term& t, const char* what, const Term& form) {
    if (!t.is_atom()) {
        throw LoadError(LoadError::Kind::MalformedAxiom,
                        std::string(what) + " must be an identifier in " + kif::print_term(form),
                        form.span());
    }
    return TermId(t.text());
}

std::string upper(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    return out;
}

Term var(const std::string& name) { return Term::variable(name); }

Term sentence(std::initializer_list<Term> parts) {
    return Term::compound(std::vector<Term>(parts));
}

}  // namespace

std::string to_string(EventSort sort) {
    switch (sort) {
        case EventSort::State: return "STATE";
        case EventSort::Process: return "PROCESS";
        case EventSort::Transition: return "TRANSITION";
    }
    return "UNKNOWN";
}

const std::set<TermId>& Partonomy::distinguishing(TermId cls) const {
    auto it = distinguishing_.find(cls);
    if (it == distinguishing_.end()) {
        throw QueryError(QueryError::Kind::UnknownTerm,
                         cls.str() + " is not in the partonomy");
    }
    return it->second;
}

std::vector<TermId> Partonomy::narrow(const std::vector<TermId>& candidates, TermId part) const {
    bool anywhere = false;
    for (const auto& [cls, parts] : distinguishing_) {
        if (parts.count(part) > 0) {
            anywhere = true;
            break;
        }
    }
    if (!anywhere) {
        throw LexiconError(LexiconError::Kind::UnknownPart,
                           part.str() + " distinguishes nothing in the " + root_.str() +
                               " partonomy");
    }
    std::vector<TermId> kept;
    for (TermId candidate : candidates) {
        bool relevant = false;
        // own parts, then up the ancestor chain
        for (std::optional<TermId> cls = candidate; cls && !relevant;) {
            auto it = distinguishing_.find(*cls);
            if (it != distinguishing_.end() && it->second.count(part) > 0) relevant = true;
            auto up = parent_.find(*cls);
            cls = up == parent_.end() ? std::nullopt : std::optional<TermId>(up->second);
        }
        // then everything below
        std::vector<TermId> frontier{candidate};
        while (!relevant && !frontier.empty()) {
            TermId cls = frontier.back();
            frontier.pop_back();
            auto it = children_.find(cls);
            if (it == children_.end()) continue;
            for (TermId child : it->second) {
                auto d = distinguishing_.find(child);
                if (d != distinguishing_.end() && d->second.count(part) > 0) {
                    relevant = true;
                    break;
                }
                frontier.push_back(child);
            }
        }
        if (relevant) kept.push_back(candidate);
    }
    return kept;
}

void Lexicon::load_axioms(const std::vector<kif::Term>& forms) {
    for (const Term& form : forms) {
        if (!form.is_compound() || !form.head().is_atom()) {
            throw LoadError(LoadError::Kind::MalformedAxiom,
                            "unexpected form in lexicon: " + kif::print_term(form), form.span());
        }
        if (form.head().is_atom("lexentry")) {
            load_entry(form);
        } else if (form.head().is_atom("partonomy")) {
            load_partonomy(form);
        } else {
            throw LoadError(LoadError::Kind::MalformedAxiom,
                            "unexpected form in lexicon: " + kif::print_term(form), form.span());
        }
    }
}

void Lexicon::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    load_axioms(kif::parse(buffer.str()));
}

void Lexicon::load_entry(const kif::Term& form) {
    if (form.arity() < 2) {
        throw LoadError(LoadError::Kind::MalformedAxiom,
                        "lexentry needs a headword: " + kif::print_term(form), form.span());
    }
    LexicalEntry entry;
    entry.headword = require_atom(form.elements()[1], "headword", form);
    entry.origin = form.span();
    bool sawEvent = false;
    for (std::size_t i = 2; i < form.elements().size(); ++i) {
        const Term& clause = form.elements()[i];
        if (!clause.is_compound() || !clause.head().is_atom()) {
            throw LoadError(LoadError::Kind::MalformedAxiom,
                            "malformed clause in lexentry " + entry.headword.str() + ": " +
                                kif::print_term(clause),
                            clause.span());
        }
        const std::string& tag = clause.head().text();
        if (tag == "formal" && clause.arity() == 2) {
            entry.formal = require_atom(clause.elements()[1], "formal quale", clause);
        } else if (tag == "telic" && clause.arity() == 3) {
            Telic telic;
            telic.process = require_atom(clause.elements()[1], "telic process", clause);
            const Term& mode = clause.elements()[2];
            if (mode.is_atom("direct")) {
                telic.direct = true;
            } else if (mode.is_atom("indirect")) {
                telic.direct = false;
            } else {
                throw LoadError(LoadError::Kind::MalformedAxiom,
                                "telic mode must be direct or indirect: " +
                                    kif::print_term(clause),
                                clause.span());
            }
            entry.telic = telic;
        } else if (tag == "constitutive" && clause.arity() >= 2) {
            for (std::size_t j = 1; j < clause.elements().size(); ++j) {
                entry.constitutive.insert(
                    require_atom(clause.elements()[j], "constitutive class", clause));
            }
        } else if (tag == "agentive" && clause.arity() == 2) {
            entry.agentive = require_atom(clause.elements()[1], "agentive process", clause);
        } else if (tag == "event" && clause.arity() >= 2) {
            TermId sort = require_atom(clause.elements()[1], "event sort", clause);
            if (sort.str() == "STATE") {
                entry.eventSort = EventSort::State;
            } else if (sort.str() == "PROCESS") {
                entry.eventSort = EventSort::Process;
            } else if (sort.str() == "TRANSITION") {
                entry.eventSort = EventSort::Transition;
            } else {
                throw LoadError(LoadError::Kind::MalformedAxiom,
                                "event sort must be STATE, PROCESS, or TRANSITION: " +
                                    kif::print_term(clause),
                                clause.span());
            }
            sawEvent = true;
            for (std::size_t j = 2; j < clause.elements().size(); ++j) {
                entry.subevents.push_back(require_atom(clause.elements()[j], "subevent", clause));
            }
        } else if (tag == "args") {
            for (std::size_t j = 1; j < clause.elements().size(); ++j) {
                const Term& slot = clause.elements()[j];
                if (!slot.is_compound() || slot.arity() != 2) {
                    throw LoadError(LoadError::Kind::MalformedAxiom,
                                    "argument slot must be (role Class): " +
                                        kif::print_term(slot),
                                    clause.span());
                }
                ArgSlot arg;
                arg.role = require_atom(slot.elements()[0], "argument role", slot);
                arg.cls = require_atom(slot.elements()[1], "argument class", slot);
                entry.argumentStructure.push_back(arg);
            }
        } else if (tag == "inherits" && clause.arity() >= 2) {
            for (std::size_t j = 1; j < clause.elements().size(); ++j) {
                entry.inherits.push_back(
                    require_atom(clause.elements()[j], "inherited headword", clause));
            }
        } else {
            throw LoadError(LoadError::Kind::MalformedAxiom,
                            "unknown clause " + tag + " in lexentry " + entry.headword.str(),
                            clause.span());
        }
    }
    if (!sawEvent) {
        throw LoadError(LoadError::Kind::MalformedAxiom,
                        "lexentry " + entry.headword.str() + " is missing its event sort",
                        form.span());
    }
    if (entries_.count(entry.headword) > 0) {
        throw LoadError(LoadError::Kind::MalformedAxiom,
                        "duplicate lexentry " + entry.headword.str(), form.span());
    }
    entries_.emplace(entry.headword, std::move(entry));
}

void Lexicon::load_partonomy(const kif::Term& form) {
    if (form.arity() < 2) {
        throw LoadError(LoadError::Kind::MalformedAxiom,
                        "partonomy needs a root class: " + kif::print_term(form), form.span());
    }
    Partonomy partonomy;
    partonomy.root_ = require_atom(form.elements()[1], "partonomy root", form);
    load_partonomy_node(form, partonomy, std::nullopt);
    if (partonomies_.count(partonomy.root_) > 0) {
        throw LoadError(LoadError::Kind::MalformedAxiom,
                        "duplicate partonomy " + partonomy.root_.str(), form.span());
    }
    partonomies_.emplace(partonomy.root_, std::move(partonomy));
}

void Lexicon::load_partonomy_node(const kif::Term& form, Partonomy& partonomy,
                                  std::optional<TermId> parent) {
    TermId cls = require_atom(form.elements()[1], "partonomy class", form);
    partonomy.distinguishing_[cls];  // every node gets a set, possibly empty
    if (parent) {
        partonomy.parent_[cls] = *parent;
        partonomy.children_[*parent].insert(cls);
    }
    for (std::size_t i = 2; i < form.elements().size(); ++i) {
        const Term& clause = form.elements()[i];
        if (!clause.is_compound() || !clause.head().is_atom()) {
            throw LoadError(LoadError::Kind::MalformedAxiom,
                            "malformed partonomy clause: " + kif::print_term(clause),
                            clause.span());
        }
        if (clause.head().is_atom("distinguishing")) {
            for (std::size_t j = 1; j < clause.elements().size(); ++j) {
                partonomy.distinguishing_[cls].insert(
                    require_atom(clause.elements()[j], "distinguishing part", clause));
            }
        } else if (clause.head().is_atom("child") && clause.arity() >= 2) {
            load_partonomy_node(clause, partonomy, cls);
        } else {
            throw LoadError(LoadError::Kind::MalformedAxiom,
                            "malformed partonomy clause: " + kif::print_term(clause),
                            clause.span());
        }
    }
}

const LexicalEntry& Lexicon::entry(TermId headword) const {
    auto it = entries_.find(headword);
    if (it == entries_.end()) {
        throw QueryError(QueryError::Kind::UnknownTerm,
                         "no lexentry for " + headword.str());
    }
    return it->second;
}

const Partonomy& Lexicon::partonomy(TermId root) const {
    auto it = partonomies_.find(root);
    if (it == partonomies_.end()) {
        throw QueryError(QueryError::Kind::UnknownTerm,
                         "no partonomy rooted at " + root.str());
    }
    return it->second;
}

std::vector<std::string> validate_entry(const LexicalEntry& entry, const KnowledgeBase& kb,
                                        const Lexicon& lexicon) {
    std::vector<std::string> problems;
    const std::string head = entry.headword.str();
    auto known_class = [&](TermId t, const char* what) {
        if (!kb.knows(t)) {
            problems.push_back(head + ": " + what + " " + t.str() + " is not in the ontology");
            return false;
        }
        if (!kb.is_class(t)) {
            problems.push_back(head + ": " + what + " " + t.str() + " is not a class");
            return false;
        }
        return true;
    };

    if (!kb.knows(entry.headword)) {
        problems.push_back(head + ": headword is not in the ontology");
    }
    if (entry.formal) known_class(*entry.formal, "formal quale");
    if (entry.telic && known_class(entry.telic->process, "telic process")) {
        if (!kb.is_subclass(entry.telic->process, TermId("Process"))) {
            problems.push_back(head + ": telic process " + entry.telic->process.str() +
                               " is not a kind of Process");
        }
    }
    for (TermId part : entry.constitutive) known_class(part, "constitutive class");
    if (!entry.constitutive.empty() && entry.formal && kb.is_class(*entry.formal)) {
        if (!kb.is_subclass(*entry.formal, TermId("Object"))) {
            problems.push_back(head + ": has constitutive parts but its formal quale " +
                               entry.formal->str() + " is not a kind of Object");
        }
    }
    if (entry.agentive) known_class(*entry.agentive, "agentive process");
    for (const ArgSlot& slot : entry.argumentStructure) {
        if (!kb.knows(slot.role)) {
            problems.push_back(head + ": argument role " + slot.role.str() +
                               " is not in the ontology");
        }
        known_class(slot.cls, "argument class");
    }
    for (TermId inherited : entry.inherits) {
        if (!lexicon.has_entry(inherited)) {
            problems.push_back(head + ": inherits " + inherited.str() +
                               " which has no lexentry");
        }
    }
    for (TermId sub : entry.subevents) {
        if (!lexicon.has_entry(sub)) {
            problems.push_back(head + ": subevent " + sub.str() + " has no lexentry");
        }
    }
    return problems;
}

rules::Rule entry_to_rule(const LexicalEntry& entry) {
    if (!entry.formal) {
        throw LexiconError(LexiconError::Kind::MissingQualia,
                           entry.headword.str() + " has no formal quale to compile");
    }
    rules::Rule rule;
    rule.name = "lex_" + entry.headword.str();
    rule.origin = entry.origin;
    rule.antecedent.push_back(
        sentence({Term::atom("instance"), var("X"), Term::atom(entry.headword.str())}));
    rule.consequent.push_back(
        sentence({Term::atom("instance"), var("X"), Term::atom(entry.formal->str())}));
    if (entry.telic) {
        rule.existentials.push_back("PROC");
        rule.consequent.push_back(
            sentence({Term::atom("instance"), var("PROC"), Term::atom(entry.telic->process.str())}));
        rule.consequent.push_back(sentence({Term::atom("agent"), var("PROC"), var("X")}));
    }
    for (TermId part : entry.constitutive) {
        std::string partVar = upper(part.str());
        rule.existentials.push_back(partVar);
        rule.consequent.push_back(
            sentence({Term::atom("instance"), var(partVar), Term::atom(part.str())}));
        rule.consequent.push_back(sentence({Term::atom("part"), var(partVar), var("X")}));
    }
    if (entry.agentive) {
        rule.existentials.push_back("ORIGIN");
        rule.consequent.push_back(
            sentence({Term::atom("instance"), var("ORIGIN"), Term::atom(entry.agentive->str())}));
        rule.consequent.push_back(sentence({Term::atom("result"), var("ORIGIN"), var("X")}));
    }
    return rule;
}

}  // namespace kifsim::lex
