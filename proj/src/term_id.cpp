#include "kifsim/term_id.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace kifsim {
namespace {

struct InternTable {
    std::mutex mutex;
    // deque: stored strings never move, so the string_view keys below
    // stay valid across growth.
    std::deque<std::string> names{""};  // index 0 reserved for the empty name
    std::unordered_map<std::string_view, std::uint32_t> lookup;

    InternTable() { lookup.emplace(std::string_view(names[0]), 0); }

    std::uint32_t intern(std::string_view name) {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = lookup.find(name);
        if (it != lookup.end()) return it->second;
        names.emplace_back(name);
        auto index = static_cast<std::uint32_t>(names.size() - 1);
        lookup.emplace(std::string_view(names.back()), index);
        return index;
    }

    const std::string& name_of(std::uint32_t index) {
        std::lock_guard<std::mutex> lock(mutex);
        return names[index];
    }
};

InternTable& table() {
    static InternTable t;
    return t;
}

}  // namespace

TermId::TermId(std::string_view name) : index_(table().intern(name)) {}

const std::string& TermId::str() const { return table().name_of(index_); }

bool operator<(TermId a, TermId b) {
    if (a.index_ == b.index_) return false;
    return a.str() < b.str();
}

}  // namespace kifsim
