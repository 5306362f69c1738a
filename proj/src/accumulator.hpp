#pragma once

// Hash-based coefficient accumulation, flushed into the ordered term maps.

#include "kvassoc/series.hpp"

#include <unordered_map>

namespace kvassoc::detail {

class Accumulator {
public:
    void reserve(std::size_t n) { m_.reserve(n); }
    void add(Word w, const Rational& c) {
        auto [it, inserted] = m_.try_emplace(w, c);
        if (!inserted) it->second += c;
    }
    void sub(Word w, const Rational& c) {
        auto [it, inserted] = m_.try_emplace(w);
        it->second -= c;
    }
    void add_product(Word w, const Rational& a, const Rational& b) {
        m_[w].add_product(a, b);
    }
    NCSeries::Terms take() {
        NCSeries::Terms out;
        for (auto& [w, c] : m_)
            if (!c.is_zero()) out.emplace(w, std::move(c));
        m_.clear();
        return out;
    }
    bool empty() const { return m_.empty(); }

private:
    std::unordered_map<Word, Rational, WordHash> m_;
};

}  // namespace kvassoc::detail
