#include "kvassoc/strand_map.hpp"

#include <stdexcept>

namespace kvassoc {

StrandMap::StrandMap(int n, std::vector<int> target) : n_(n), target_(std::move(target)) {
    if (n < 0) throw std::invalid_argument("StrandMap: negative target size");
    fibers_.resize(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < target_.size(); ++i) {
        int t = target_[i];
        if (t < 0 || t > n) throw std::invalid_argument("StrandMap: image out of range");
        if (t) fibers_[static_cast<std::size_t>(t - 1)].push_back(static_cast<int>(i) + 1);
    }
}

StrandMap StrandMap::from_blocks(int m, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> target(static_cast<std::size_t>(m), 0);
    for (std::size_t j = 0; j < blocks.size(); ++j)
        for (int i : blocks[j]) {
            if (i < 1 || i > m) throw std::invalid_argument("StrandMap::from_blocks: strand out of range");
            if (target[static_cast<std::size_t>(i - 1)])
                throw std::invalid_argument("StrandMap::from_blocks: strand in two blocks");
            target[static_cast<std::size_t>(i - 1)] = static_cast<int>(j) + 1;
        }
    StrandMap s(static_cast<int>(blocks.size()), std::move(target));
    for (std::size_t j = 0; j < blocks.size(); ++j) s.fibers_[j] = blocks[j];
    return s;
}

StrandMap StrandMap::parse(const std::string& text, int m) {
    std::vector<std::vector<int>> blocks(1);
    int top = 0;
    for (char ch : text) {
        if (ch == ',') {
            blocks.emplace_back();
        } else if (ch >= '1' && ch <= '9') {
            blocks.back().push_back(ch - '0');
            top = std::max(top, ch - '0');
        } else if (ch != ' ' && ch != '0') {
            throw std::invalid_argument("StrandMap::parse: unexpected character in '" + text + "'");
        }
    }
    return from_blocks(m ? m : top, blocks);
}

StrandMap StrandMap::identity(int n) {
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = i + 1;
    return StrandMap(n, t);
}

StrandMap StrandMap::from_permutation(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int p : perm) {
        if (p < 1 || p > n || seen[static_cast<std::size_t>(p)])
            throw std::invalid_argument("StrandMap::from_permutation: not a permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
    return StrandMap(n, perm);
}

StrandMap StrandMap::after(const StrandMap& psi) const {
    if (psi.target() != source()) throw std::invalid_argument("StrandMap::after: size mismatch");
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(n_));
    for (int j = 1; j <= n_; ++j)
        for (int i : fiber(j))
            for (int l : psi.fiber(i)) blocks[static_cast<std::size_t>(j - 1)].push_back(l);
    return from_blocks(psi.source(), blocks);
}

std::string StrandMap::str() const {
    std::string s;
    for (int j = 1; j <= n_; ++j) {
        if (j > 1) s += ',';
        for (int i : fiber(j)) s += std::to_string(i);
    }
    return s;
}

}  // namespace kvassoc
