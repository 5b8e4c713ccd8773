#include "kifsim/ontology.hpp"

#include <deque>
#include <fstream>
#include <sstream>

namespace kifsim {

namespace {

using kif::Term;

bool is_ground(const Term& t) {
    if (t.is_variable()) return false;
    if (t.is_compound()) {
        for (const Term& e : t.elements()) {
            if (!is_ground(e)) return false;
        }
    }
    return true;
}

TermId atom_id(const Term& t) { return TermId(t.text()); }

void require_atom(const Term& t, const char* what, const Term& form) {
    if (!t.is_atom()) {
        throw LoadError(LoadError::Kind::MalformedAxiom,
                        std::string(what) + " must be an identifier in " + kif::print_term(form),
                        form.span());
    }
}

}  // namespace

void KnowledgeBase::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    load_axioms(kif::parse(buffer.str()));
}

void KnowledgeBase::load_axioms(const std::vector<kif::Term>& forms) {
    for (const Term& form : forms) {
        switch (kif::classify(form)) {
            case kif::FormulaKind::Implication:
                add_rule(rules::compile_rule(form, "rule" + std::to_string(rules_.size() + 1)));
                break;
            case kif::FormulaKind::Biconditional: {
                // Stored as a pair of one-way rules.
                std::string base = "rule" + std::to_string(rules_.size() + 1);
                const Term& a = form.elements()[1];
                const Term& b = form.elements()[2];
                Term fwd = Term::compound({Term::atom("=>", form.span()), a, b}, form.span());
                Term bwd = Term::compound({Term::atom("=>", form.span()), b, a}, form.span());
                add_rule(rules::compile_rule(fwd, base + "_fwd"));
                add_rule(rules::compile_rule(bwd, base + "_bwd"));
                break;
            }
            case kif::FormulaKind::AtomicSentence: {
                if (!form.is_compound()) {
                    warn("ignoring bare atom at top level: " + kif::print_term(form));
                    break;
                }
                if (!form.head().is_atom()) {
                    warn("ignoring sentence with non-identifier head: " + kif::print_term(form));
                    break;
                }
                if (!is_ground(form)) {
                    warn("ignoring non-ground sentence outside a rule: " + kif::print_term(form));
                    break;
                }
                const std::string& head = form.head().text();
                if (head == "subclass") {
                    load_subclass(form);
                } else if (head == "instance") {
                    load_instance(form);
                } else if (head == "domain") {
                    load_domain(form);
                } else if (head == "partition") {
                    load_partition(form);
                } else if (head == "documentation") {
                    load_documentation(form);
                } else if (head == "subrelation") {
                    load_subrelation(form);
                } else {
                    add_ground_fact(form);
                }
                break;
            }
            default:
                warn("ignoring unsupported top-level form: " + kif::print_term(form));
                break;
        }
    }
}

void KnowledgeBase::load_subclass(const kif::Term& form) {
    if (form.arity() != 3) {
        throw LoadError(LoadError::Kind::ArityMismatch,
                        "subclass takes two arguments: " + kif::print_term(form), form.span());
    }
    require_atom(form.elements()[1], "subclass child", form);
    require_atom(form.elements()[2], "subclass parent", form);
    TermId child = atom_id(form.elements()[1]);
    TermId parent = atom_id(form.elements()[2]);
    if (subclassEdges_[child].count(parent) == 0) {
        // Adding child -> parent closes a cycle iff parent already
        // reaches child.
        std::vector<TermId> path;
        if (child == parent || reaches(parent, child, &path)) {
            // path runs parent .. child; prepending child closes the loop
            std::string msg = "subclass cycle: " + child.str() + " -> " + parent.str();
            for (std::size_t i = 1; i < path.size(); ++i) msg += " -> " + path[i].str();
            throw LoadError(LoadError::Kind::SubclassCycle, msg, form.span());
        }
        subclassEdges_[child].insert(parent);
    }
    known_.insert(child);
    known_.insert(parent);
    classes_.insert(child);
    classes_.insert(parent);
}

void KnowledgeBase::load_instance(const kif::Term& form) {
    if (form.arity() != 3) {
        throw LoadError(LoadError::Kind::ArityMismatch,
                        "instance takes two arguments: " + kif::print_term(form), form.span());
    }
    require_atom(form.elements()[1], "instance entity", form);
    require_atom(form.elements()[2], "instance class", form);
    TermId entity = atom_id(form.elements()[1]);
    TermId cls = atom_id(form.elements()[2]);
    instanceOf_[entity].insert(cls);
    known_.insert(entity);
    known_.insert(cls);
    classes_.insert(cls);
    add_ground_fact(form);
}

void KnowledgeBase::load_domain(const kif::Term& form) {
    if (form.arity() != 4) {
        throw LoadError(LoadError::Kind::ArityMismatch,
                        "domain takes three arguments: " + kif::print_term(form), form.span());
    }
    require_atom(form.elements()[1], "domain predicate", form);
    require_atom(form.elements()[3], "domain class", form);
    const Term& pos = form.elements()[2];
    int position = 0;
    if (pos.kind() == kif::TermKind::Number) position = std::atoi(pos.text().c_str());
    if (position < 1) {
        throw LoadError(LoadError::Kind::MalformedAxiom,
                        "domain position must be a positive integer: " + kif::print_term(form),
                        form.span());
    }
    TermId pred = atom_id(form.elements()[1]);
    TermId cls = atom_id(form.elements()[3]);
    PredicateDecl& decl = predicates_[pred];
    decl.name = pred;
    auto it = decl.domains.find(position);
    if (it != decl.domains.end() && it->second != cls) {
        throw LoadError(LoadError::Kind::MalformedAxiom,
                        "conflicting domain for " + pred.str() + " position " +
                            std::to_string(position) + ": " + it->second.str() + " vs " +
                            cls.str(),
                        form.span());
    }
    decl.domains[position] = cls;
    if (position > decl.arity) decl.arity = position;
    known_.insert(pred);
    known_.insert(cls);
    classes_.insert(cls);
}

void KnowledgeBase::load_partition(const kif::Term& form) {
    if (form.arity() < 4) {
        throw LoadError(LoadError::Kind::ArityMismatch,
                        "partition takes a class and at least two members: " +
                            kif::print_term(form),
                        form.span());
    }
    require_atom(form.elements()[1], "partition class", form);
    TermId parent = atom_id(form.elements()[1]);
    Partition partition;
    partition.parentClass = parent;
    for (std::size_t i = 2; i < form.elements().size(); ++i) {
        require_atom(form.elements()[i], "partition member", form);
        partition.members.push_back(atom_id(form.elements()[i]));
    }
    auto it = partitions_.find(parent);
    if (it != partitions_.end()) {
        if (it->second.members != partition.members) {
            throw LoadError(LoadError::Kind::DuplicatePartition,
                            "partition already declared for " + parent.str(), form.span());
        }
        return;  // identical redeclaration: no-op, keeps reload idempotent
    }
    known_.insert(parent);
    classes_.insert(parent);
    for (TermId m : partition.members) known_.insert(m);
    partitions_.emplace(parent, std::move(partition));
}

void KnowledgeBase::load_documentation(const kif::Term& form) {
    // Accepts (documentation T "...") and (documentation T Lang "...").
    const Term* text = nullptr;
    if (form.arity() == 3 && form.elements()[2].kind() == kif::TermKind::String) {
        text = &form.elements()[2];
    } else if (form.arity() == 4 && form.elements()[3].kind() == kif::TermKind::String) {
        text = &form.elements()[3];
    }
    if (text == nullptr || !form.elements()[1].is_atom()) {
        throw LoadError(LoadError::Kind::MalformedAxiom,
                        "malformed documentation: " + kif::print_term(form), form.span());
    }
    TermId subject = atom_id(form.elements()[1]);
    documentation_[subject] = text->text();
    known_.insert(subject);
}

void KnowledgeBase::load_subrelation(const kif::Term& form) {
    if (form.arity() != 3) {
        throw LoadError(LoadError::Kind::ArityMismatch,
                        "subrelation takes two arguments: " + kif::print_term(form), form.span());
    }
    require_atom(form.elements()[1], "subrelation child", form);
    require_atom(form.elements()[2], "subrelation parent", form);
    TermId child = atom_id(form.elements()[1]);
    TermId parent = atom_id(form.elements()[2]);
    subrelations_[child] = parent;
    known_.insert(child);
    known_.insert(parent);
}

void KnowledgeBase::add_ground_fact(const kif::Term& form) {
    TermId head = atom_id(form.head());
    if (head.str() != "instance" && predicates_.count(head) == 0) {
        warn("no declaration for predicate " + head.str() + "; storing facts as opaque");
    }
    auto decl = predicates_.find(head);
    if (decl != predicates_.end() && decl->second.arity > 0 &&
        static_cast<int>(form.arity()) - 1 < decl->second.arity) {
        throw LoadError(LoadError::Kind::ArityMismatch,
                        head.str() + " declared with arity " +
                            std::to_string(decl->second.arity) + ": " + kif::print_term(form),
                        form.span());
    }
    std::string key = kif::print_term(form);
    if (groundFactKeys_.insert(key).second) {
        groundFacts_.push_back(form);
    }
    // Register atom arguments so queries over them resolve.
    for (std::size_t i = 1; i < form.elements().size(); ++i) {
        if (form.elements()[i].is_atom()) known_.insert(atom_id(form.elements()[i]));
    }
    known_.insert(head);
}

void KnowledgeBase::add_rule(rules::Rule rule) {
    if (ruleKeys_.insert(rule.key()).second) {
        rules_.push_back(std::move(rule));
    }
}

void KnowledgeBase::warn(const std::string& message) {
    if (warningKeys_.insert(message).second) {
        warnings_.push_back(message);
    }
}

bool KnowledgeBase::reaches(TermId from, TermId to, std::vector<TermId>* path) const {
    // Breadth-first walk up the direct-parent edges.
    std::map<TermId, TermId> cameFrom;
    std::deque<TermId> queue{from};
    cameFrom.emplace(from, from);
    while (!queue.empty()) {
        TermId current = queue.front();
        queue.pop_front();
        if (current == to) {
            if (path != nullptr) {
                std::vector<TermId> reversed;
                for (TermId t = to; t != from; t = cameFrom.at(t)) reversed.push_back(t);
                reversed.push_back(from);
                path->assign(reversed.rbegin(), reversed.rend());
            }
            return true;
        }
        auto it = subclassEdges_.find(current);
        if (it == subclassEdges_.end()) continue;
        for (TermId parent : it->second) {
            if (cameFrom.emplace(parent, current).second) queue.push_back(parent);
        }
    }
    return false;
}

bool KnowledgeBase::is_subclass(TermId a, TermId b) const {
    if (!knows(a)) throw QueryError(QueryError::Kind::UnknownTerm, "unknown term " + a.str());
    if (!knows(b)) throw QueryError(QueryError::Kind::UnknownTerm, "unknown term " + b.str());
    if (a == b) return true;
    return reaches(a, b);
}

bool KnowledgeBase::is_instance_of(TermId e, TermId c) const {
    return is_instance_of(e, c, nullptr);
}

bool KnowledgeBase::is_instance_of(TermId e, TermId c, const InstanceMap* extra) const {
    if (!knows(c)) throw QueryError(QueryError::Kind::UnknownTerm, "unknown term " + c.str());
    const std::set<TermId>* own = nullptr;
    auto it = instanceOf_.find(e);
    if (it != instanceOf_.end()) own = &it->second;
    const std::set<TermId>* more = nullptr;
    if (extra != nullptr) {
        auto jt = extra->find(e);
        if (jt != extra->end()) more = &jt->second;
    }
    if (own == nullptr && more == nullptr) {
        throw QueryError(QueryError::Kind::UnknownTerm,
                         "no instance assertions for " + e.str());
    }
    auto covers = [&](const std::set<TermId>* classes) {
        if (classes == nullptr) return false;
        for (TermId cls : *classes) {
            if (cls == c) return true;
            if (knows(cls) && is_subclass(cls, c)) return true;
        }
        return false;
    };
    return covers(own) || covers(more);
}

DomainCheckResult KnowledgeBase::check_domains(const kif::Term& fact) const {
    return check_domains(fact, nullptr);
}

DomainCheckResult KnowledgeBase::check_domains(const kif::Term& fact,
                                               const InstanceMap* extra) const {
    DomainCheckResult result;
    if (!fact.is_compound() || !fact.head().is_atom()) {
        result.undeclaredPredicate = true;
        return result;
    }
    TermId pred = atom_id(fact.head());
    auto it = predicates_.find(pred);
    if (it == predicates_.end()) {
        result.undeclaredPredicate = true;
        return result;
    }
    const PredicateDecl& decl = it->second;
    for (const auto& [position, expected] : decl.domains) {
        if (position >= static_cast<int>(fact.arity())) continue;  // missing args: arity issue
        const Term& arg = fact.elements()[static_cast<std::size_t>(position)];
        bool satisfied = false;
        std::string actual;
        if (arg.is_atom()) {
            TermId argId = atom_id(arg);
            bool hasClasses =
                instanceOf_.count(argId) > 0 ||
                (extra != nullptr && extra->count(argId) > 0);
            if (hasClasses) {
                satisfied = is_instance_of(argId, expected, extra);
                actual = satisfied ? "" : "not an instance of " + expected.str();
            } else {
                actual = "no instance assertions";
            }
        } else {
            actual = "not an identifier";
        }
        if (!satisfied) {
            result.violations.push_back(DomainViolation{
                pred, position, expected,
                kif::print_term(arg) + " (" + actual + ")", fact});
        }
    }
    return result;
}

const std::vector<TermId>& KnowledgeBase::partition_members(TermId c) const {
    auto it = partitions_.find(c);
    if (it == partitions_.end()) {
        throw QueryError(QueryError::Kind::NoPartition, "no partition declared on " + c.str());
    }
    return it->second.members;
}

bool KnowledgeBase::operator==(const KnowledgeBase& other) const {
    return subclassEdges_ == other.subclassEdges_ && instanceOf_ == other.instanceOf_ &&
           predicates_ == other.predicates_ && partitions_ == other.partitions_ &&
           subrelations_ == other.subrelations_ && ruleKeys_ == other.ruleKeys_ &&
           documentation_ == other.documentation_ && groundFactKeys_ == other.groundFactKeys_ &&
           known_ == other.known_ && classes_ == other.classes_;
}

}  // namespace kifsim
