#pragma once

#include <cstdint>
#include <vector>

namespace omlkit {

/// Fixed-universe bitset over element indices 0..n-1.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(int universe)
        : n_(universe), words_((static_cast<size_t>(universe) + 63) / 64, 0) {}

    int universe() const { return n_; }

    void set(int i) { words_[static_cast<size_t>(i) >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { words_[static_cast<size_t>(i) >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const {
        return (words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1;
    }

    bool operator==(const IndexSet& o) const = default;

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }

    bool empty() const {
        for (uint64_t w : words_) if (w) return false;
        return true;
    }

    /// True when this is a subset of o.
    bool subset_of(const IndexSet& o) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    IndexSet& operator&=(const IndexSet& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    IndexSet& operator|=(const IndexSet& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
    friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }

    /// Calls f(i) for every member, ascending.
    template <class F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w) {
                int bit = __builtin_ctzll(w);
                f(static_cast<int>(wi * 64 + static_cast<size_t>(bit)));
                w &= w - 1;
            }
        }
    }

    /// Smallest member, or -1 when empty.
    int first() const {
        for (size_t wi = 0; wi < words_.size(); ++wi)
            if (words_[wi]) return static_cast<int>(wi * 64) + __builtin_ctzll(words_[wi]);
        return -1;
    }

private:
    int n_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace omlkit
