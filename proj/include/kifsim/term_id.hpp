#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace kifsim {

// Interned identifier for ontology terms. Equality and hashing compare
// the interned index; operator< compares names so ordered containers
// iterate alphabetically regardless of interning order.
class TermId {
public:
    TermId() : index_(0) {}  // the empty name
    explicit TermId(std::string_view name);

    const std::string& str() const;
    bool empty() const { return index_ == 0; }
    std::uint32_t raw() const { return index_; }

    friend bool operator==(TermId a, TermId b) { return a.index_ == b.index_; }
    friend bool operator!=(TermId a, TermId b) { return a.index_ != b.index_; }
    friend bool operator<(TermId a, TermId b);

private:
    std::uint32_t index_;
};

}  // namespace kifsim

template <>
struct std::hash<kifsim::TermId> {
    std::size_t operator()(kifsim::TermId t) const noexcept {
        return std::hash<std::uint32_t>()(t.raw());
    }
};
