#pragma once

// Permutations and sort words.
//
// Conventions used throughout the library:
//   * A permutation is stored 0-based as its image list, p(i) = p[i].
//   * compose(p, q) is function composition: (p ∘ q)(i) = p(q(i)).
//   * An arrow σ: a → b between words in S(X) exists iff b[i] = a[σ(i)] for
//     all i. With this convention the arrow composite "σ then τ" (σ: a → b,
//     τ: b → c) is the function σ ∘ τ.
//   * A symmetric sequence F is contravariant in the word: an arrow σ: a → b
//     induces F[σ]: F[b] → F[a]. For σ, τ as above,
//     F[σ ∘ τ] = F[σ] ∘ F[τ], so stabilizer groups act on the left with
//     respect to function composition.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace opbim {

using Sort = int;
using Word = std::vector<Sort>;

class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<int> images);

    static Perm identity(std::size_t n);
    /// The adjacent transposition (i i+1) in Σ_n.
    static Perm adjacent(std::size_t n, std::size_t i);

    std::size_t degree() const { return images_.size(); }
    int operator()(std::size_t i) const { return images_[i]; }
    int operator[](std::size_t i) const { return images_[i]; }
    const std::vector<int>& images() const { return images_; }

    bool is_identity() const;
    Perm inverse() const;

    auto operator<=>(const Perm&) const = default;
    bool operator==(const Perm&) const = default;

private:
    std::vector<int> images_;
};

/// (p ∘ q)(i) = p(q(i)).
Perm compose(const Perm& p, const Perm& q);

/// Block sum p ⊕ q acting on the concatenation.
Perm direct_sum(const Perm& p, const Perm& q);
Perm direct_sum(std::span<const Perm> parts);

/// Arrow between concatenations induced by permuting blocks.
///
/// `lengths` are the block lengths of a concatenation c = b_0 ⊕ ... ⊕ b_{m-1}.
/// For π ∈ Σ_m the result is the arrow c → c' where c' = b_{π(0)} ⊕ ... ⊕
/// b_{π(m-1)}; block i of c' at offset r maps to block π(i) of c at offset r.
Perm block_permutation(std::span<const std::size_t> lengths, const Perm& pi);

/// Applies an arrow to a word: returns b with b[i] = a[σ(i)].
Word apply_arrow(const Word& a, const Perm& sigma);

/// True iff σ is an arrow a → b.
bool is_arrow(const Word& a, const Word& b, const Perm& sigma);

struct CanonicalForm {
    Word word;        // nondecreasing
    Perm transport;   // arrow word → original: original[i] = word[transport(i)]
};

/// Stable sort of w together with the transport arrow canonical → w.
CanonicalForm canonical_word(const Word& w);

bool is_canonical(const Word& w);

Word concat(std::span<const Word> parts);

/// Every permutation of Σ_n in lexicographic order of image lists.
std::vector<Perm> all_permutations(std::size_t n);

/// All arrows a → b (empty if the words are not rearrangements of each other),
/// in lexicographic order.
std::vector<Perm> all_arrows(const Word& a, const Word& b);

/// The Young subgroup of a canonical word, as the indices i with w[i] == w[i+1].
std::vector<std::size_t> young_generators(const Word& w);

/// All elements of Stab(w) = all arrows w → w, lex order.
std::vector<Perm> stabilizer(const Word& w);

std::uint64_t factorial(unsigned n);

std::string to_string(const Perm& p);
std::string to_string(const Word& w);

}  // namespace opbim
