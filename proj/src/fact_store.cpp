#include "kifsim/fact_store.hpp"

namespace kifsim {

bool FactStore::contains(const kif::Term& fact) const {
    return entries_.count(kif::print_term(fact)) > 0;
}

std::optional<Provenance> FactStore::provenance_of(const kif::Term& fact) const {
    auto it = entries_.find(kif::print_term(fact));
    if (it == entries_.end()) return std::nullopt;
    return it->second.provenance;
}

bool FactStore::add(const kif::Term& fact, Provenance provenance) {
    auto [it, inserted] = entries_.emplace(kif::print_term(fact), Entry{fact, provenance});
    if (!inserted && provenance == Provenance::Explicit) {
        it->second.provenance = Provenance::Explicit;
    }
    return inserted;
}

bool FactStore::remove(const kif::Term& fact) {
    return entries_.erase(kif::print_term(fact)) > 0;
}

void FactStore::clear_inferred() {
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->second.provenance == Provenance::Inferred) {
            it = entries_.erase(it);
        } else {
            ++it;
        }
    }
}

kif::Term FactStore::triple(TermId pred, TermId subj, TermId obj) {
    return kif::Term::compound({kif::Term::atom(pred.str()), kif::Term::atom(subj.str()),
                                kif::Term::atom(obj.str())});
}

bool FactStore::contains_triple(TermId pred, TermId subj, TermId obj) const {
    return contains(triple(pred, subj, obj));
}

bool FactStore::operator==(const FactStore& other) const {
    if (entries_.size() != other.entries_.size()) return false;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    for (; a != entries_.end(); ++a, ++b) {
        if (a->first != b->first || a->second.provenance != b->second.provenance) return false;
    }
    return true;
}

}  // namespace kifsim
