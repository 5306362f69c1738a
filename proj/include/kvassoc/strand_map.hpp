#pragma once

#include <string>
#include <vector>

namespace kvassoc {

// A partially defined map phi: [m] ⊇ D -> [n] between strand sets, with an
// order on each fiber. Strands are 1-based.
class StrandMap {
public:
    // target[i-1] is phi(i), or 0 where phi is undefined
    StrandMap(int n, std::vector<int> target);
    // blocks[j] lists phi^{-1}(j+1) in fiber order; m is the source size
    static StrandMap from_blocks(int m, const std::vector<std::vector<int>>& blocks);
    // "12,3" style notation over single-digit strands; m defaults to the largest strand
    static StrandMap parse(const std::string& text, int m = 0);
    static StrandMap identity(int n);
    // i -> perm[i-1]; the coface along it relabels t_ij as t_{perm(i) perm(j)}
    static StrandMap from_permutation(const std::vector<int>& perm);

    int source() const { return static_cast<int>(target_.size()); }
    int target() const { return n_; }
    int operator()(int i) const { return target_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<int>& fiber(int j) const { return fibers_.at(static_cast<std::size_t>(j - 1)); }

    // (this ∘ psi): [l] -> [m] -> [n]; fiber orders follow psi within each fiber of this
    StrandMap after(const StrandMap& psi) const;

    std::string str() const;

private:
    int n_;
    std::vector<int> target_;
    std::vector<std::vector<int>> fibers_;
};

}  // namespace kvassoc
