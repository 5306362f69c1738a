#pragma once

#include "kvassoc/tangential.hpp"

#include <string>
#include <vector>

namespace kvassoc {

// Reduced word in the free group on generators X_1..X_rank. Letters are stored
// signed and 1-based: +i is X_i, -i is X_i^{-1}.
class FreeWord {
public:
    FreeWord() = default;
    explicit FreeWord(int rank) : rank_(rank) {}
    FreeWord(int rank, const std::vector<int>& letters);  // reduces
    static FreeWord generator(int rank, int i);           // i is 1-based

    int rank() const { return rank_; }
    const std::vector<int>& letters() const { return w_; }
    int length() const { return static_cast<int>(w_.size()); }
    bool is_identity() const { return w_.empty(); }

    FreeWord inverse() const;
    FreeWord pow(int e) const;
    friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
    friend bool operator==(const FreeWord& a, const FreeWord& b) { return a.rank_ == b.rank_ && a.w_ == b.w_; }

    // "X1 X2^-1"; "1" for the empty word
    std::string str() const;
    static FreeWord parse(int rank, const std::string& text);

private:
    void push(int l);
    int rank_ = 1;
    std::vector<int> w_;
};

// group commutator (g,h) = g h g^{-1} h^{-1}
FreeWord commutator(const FreeWord& g, const FreeWord& h);

// Endomorphism of F_rank given by the images of the generators.
class FreeAut {
public:
    FreeAut() = default;
    explicit FreeAut(std::vector<FreeWord> images) : im_(std::move(images)) {}
    static FreeAut identity(int rank);

    int rank() const { return static_cast<int>(im_.size()); }
    const std::vector<FreeWord>& images() const { return im_; }
    const FreeWord& image(int i) const { return im_.at(static_cast<std::size_t>(i - 1)); }
    FreeWord apply(const FreeWord& w) const;
    bool is_identity() const;

    friend bool operator==(const FreeAut& a, const FreeAut& b) { return a.im_ == b.im_; }

private:
    std::vector<FreeWord> im_;
};

// a ∘ b
FreeAut compose(const FreeAut& a, const FreeAut& b);

// Word in the Artin generators: +i is σ_i, -i is σ_i^{-1} (1 <= i < strands).
class BraidWord {
public:
    BraidWord() = default;
    explicit BraidWord(int strands) : n_(strands) {}
    BraidWord(int strands, std::vector<int> gens);

    int strands() const { return n_; }
    const std::vector<int>& gens() const { return g_; }

    BraidWord inverse() const;
    friend BraidWord operator*(const BraidWord& a, const BraidWord& b);

    // permutation p with p[k-1] = final position of the strand starting at k
    std::vector<int> permutation() const;
    bool is_pure() const;

    std::string str() const;  // "s1 s2^-1"
    static BraidWord parse(int strands, const std::string& text);

private:
    int n_ = 1;
    std::vector<int> g_;
};

// Artin representation: σ_i sends X_i to X_i X_{i+1} X_i^{-1} and X_{i+1} to X_i;
// artin_action(uv) = artin_action(u) ∘ artin_action(v). Faithful, so it decides
// braid equality.
FreeAut artin_action(const BraidWord& b);

struct PBLetter {
    int i, j;  // 1-based strands, i < j
    int e;     // +1 or -1
    friend bool operator==(const PBLetter&, const PBLetter&) = default;
};

// Word in the pure braid generators x_ij.
class PBWord {
public:
    PBWord() = default;
    explicit PBWord(int strands) : n_(strands) {}
    PBWord(int strands, std::vector<PBLetter> letters);
    static PBWord generator(int strands, int i, int j, int e = 1);

    int strands() const { return n_; }
    const std::vector<PBLetter>& letters() const { return l_; }
    bool empty() const { return l_.empty(); }

    PBWord inverse() const;
    PBWord pow(int e) const;
    friend PBWord operator*(const PBWord& a, const PBWord& b);

    BraidWord to_braid() const;
    // exponent sums of the x_ij, ordered (1,2),(1,3),...,(n-1,n)
    std::vector<int> abelianization() const;

    std::string str() const;  // "x12 x13^-1"
    static PBWord parse(int strands, const std::string& text);

private:
    int n_ = 2;
    std::vector<PBLetter> l_;
};

PBWord commutator(const PBWord& g, const PBWord& h);

// x_ij = (σ_{j-2}...σ_i)^{-1} σ_{j-1}^2 (σ_{j-2}...σ_i)
BraidWord pb_gen(int n, int i, int j);

struct RelationCheck {
    std::string name;
    bool pass;
};
// presentation relators of PB_n, each mapped through artin_action. The crossing
// family is (x_ik, x_jk x_jl x_jk^{-1}) for i < j < k < l.
std::vector<RelationCheck> check_pb_relations(int n);
// the relators themselves (name, word)
std::vector<std::pair<std::string, PBWord>> pb_relators(int n);

// Order of the factors x_{i'j'} in the image of x_ij: i' always increasing on
// the outside; j' increasing or decreasing inside. Only increasing/increasing
// agrees with geometric strand doubling for the Artin and x_ij conventions used here.
enum class CableOrder {
    increasing_increasing,
    increasing_decreasing,
};

// strand-replacing morphism PB_n -> PB_m, strand k becoming mult[k-1] strands
PBWord cabling(const PBWord& w, const std::vector<int>& mult,
               CableOrder order = CableOrder::increasing_increasing);
// geometric cabling of an arbitrary braid word (bundles of parallel strands)
BraidWord cable_geometric(const BraidWord& b, const std::vector<int>& mult);

// Ad action of PB_{n+1} on F_n. Strand 1 of w plays the role of the extra
// strand 0; strand k+1 corresponds to X_k.
FreeAut ad_pb(const PBWord& w);

// image of a free word under X_i -> e^{x_i}
NCSeries malcev_free(const FreeWord& w, int cap);
// Ad(w) as a tangential automorphism of f_{strands-1}, truncated at cap
TangAut malcev_taut(const PBWord& w, int cap);

}  // namespace kvassoc
