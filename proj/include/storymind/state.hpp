#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace storymind {

// Total valuation over the grounded fluents of a domain, inertial and derived.
class State {
public:
    State() = default;
    explicit State(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool operator[](int f) const { return (words_[f >> 6] >> (f & 63)) & 1u; }
    void set(int f, bool v) {
        std::uint64_t bit = std::uint64_t{1} << (f & 63);
        if (v)
            words_[f >> 6] |= bit;
        else
            words_[f >> 6] &= ~bit;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::size_t hash() const {
        std::size_t h = n_;
        for (auto w : words_) h = h * 0x9E3779B97F4A7C15ull ^ (w + (h >> 7));
        return h;
    }

    friend bool operator==(const State&, const State&) = default;
    friend auto operator<=>(const State&, const State&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct StateHash {
    std::size_t operator()(const State& s) const { return s.hash(); }
};

}  // namespace storymind
