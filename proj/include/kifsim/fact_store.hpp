#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kifsim/kif.hpp"
#include "kifsim/term_id.hpp"

namespace kifsim {

enum class Provenance { Explicit, Inferred };

// Ground facts keyed by canonical printed text, which fixes a stable
// iteration order for deterministic matching and tracing. Most facts
// are (predicate subject object) triples; rule consequents may carry
// nested compounds (interval-tagged facts, compound class terms).
class FactStore {
public:
    struct Entry {
        kif::Term fact;
        Provenance provenance;
    };

    bool contains(const kif::Term& fact) const;
    std::optional<Provenance> provenance_of(const kif::Term& fact) const;

    // Inserts the fact; returns false when already present. An explicit
    // re-add of an inferred fact upgrades it to explicit.
    bool add(const kif::Term& fact, Provenance provenance);
    // Removes the fact regardless of provenance; returns false if absent.
    bool remove(const kif::Term& fact);

    // Drops every inferred fact (before a closure rebuild).
    void clear_inferred();

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const std::map<std::string, Entry>& entries() const { return entries_; }

    // Convenience for triple-shaped facts.
    static kif::Term triple(TermId pred, TermId subj, TermId obj);
    bool contains_triple(TermId pred, TermId subj, TermId obj) const;

    bool operator==(const FactStore& other) const;

private:
    std::map<std::string, Entry> entries_;
};

}  // namespace kifsim
