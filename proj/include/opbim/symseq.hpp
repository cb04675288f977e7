#pragma once

// Symmetric sequences F: X → Y, i.e. functors S(X)^op × Y → FinSet, stored as
// one YoungSet per canonical word and output sort.
//
// Elements of F[a; y] for an arbitrary word a are addressed by a label of the
// canonical cell F[canon(a); y]: the label ℓ stands for F[τ⁻¹](ℓ) where
// τ: canon(a) → a is the stable-sort transport (see perm.hpp).

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "opbim/perm.hpp"
#include "opbim/young.hpp"

namespace opbim {

struct CellKey {
    Word word;  // canonical
    Sort out;
    auto operator<=>(const CellKey&) const = default;
    bool operator==(const CellKey&) const = default;
};

std::string to_string(const CellKey& k);

class SymSeq;
using SymSeqPtr = std::shared_ptr<const SymSeq>;

class SymSeq {
public:
    SymSeq() = default;
    SymSeq(std::vector<std::string> dom_sorts, std::vector<std::string> cod_sorts);

    const std::vector<std::string>& dom_sorts() const { return dom_; }
    const std::vector<std::string>& cod_sorts() const { return cod_; }
    std::size_t dom_size() const { return dom_.size(); }
    std::size_t cod_size() const { return cod_.size(); }

    /// Installs a cell; empty cells are dropped. Errors on non-canonical word,
    /// unknown sort or arity beyond the window.
    void set_cell(CellKey key, YoungSet cell);

    /// Cells of arity > window are unknown (truncated). nullopt: exact.
    const std::optional<std::size_t>& window() const { return window_; }
    void set_window(std::optional<std::size_t> w);
    /// True iff the cell at arity n is exactly known.
    bool known_arity(std::size_t n) const { return !window_ || n <= *window_; }

    const std::map<CellKey, YoungSet>& cells() const { return cells_; }
    const YoungSet* find(const CellKey& canonical_key) const;
    /// Cell at an arbitrary word (canonicalized).
    const YoungSet* cell_at(const Word& word, Sort out) const;
    std::size_t size_at(const Word& word, Sort out) const;
    std::size_t max_arity() const;
    bool has_nullary() const;
    bool empty() const { return cells_.empty(); }

    /// Sort index checks; throw InputError.
    void check_word(const Word& w) const;
    void check_out(Sort y) const;

    /// F[σ] for σ: a → b, on labels addressed as above.
    int pull(const Word& a, const Word& b, const Perm& sigma, Sort out, int label_b) const;

    bool operator==(const SymSeq& o) const {
        return dom_ == o.dom_ && cod_ == o.cod_ && cells_ == o.cells_ && window_ == o.window_;
    }

private:
    std::vector<std::string> dom_;
    std::vector<std::string> cod_;
    std::map<CellKey, YoungSet> cells_;
    std::optional<std::size_t> window_;
};

template <class... Args>
SymSeqPtr make_symseq(Args&&... args) {
    return std::make_shared<const SymSeq>(std::forward<Args>(args)...);
}

/// A 2-cell: per-cell label functions source → target.
struct SymSeqMap {
    SymSeqPtr source;
    SymSeqPtr target;
    std::map<CellKey, std::vector<int>> components;

    int apply(const CellKey& key, int label) const;
    /// Labels at an arbitrary word: maps commute with the transport, so the
    /// canonical component applies unchanged.
    int apply_at(const Word& word, Sort out, int label) const;

    /// Throws ValidationError unless every component is total and equivariant.
    void validate() const;
    bool is_iso() const;
    bool operator==(const SymSeqMap& o) const { return components == o.components; }
};

SymSeqMap identity_map(const SymSeqPtr& f);
/// Vertical composite β · α (α first).
SymSeqMap vcompose(const SymSeqMap& beta, const SymSeqMap& alpha);
/// Inverse of an isomorphism; throws ValidationError if not bijective.
SymSeqMap inverse_map(const SymSeqMap& alpha);
/// First cell where the maps differ, as a readable witness; empty if equal.
std::string first_difference(const SymSeqMap& a, const SymSeqMap& b);

/// Coequalizer of a parallel pair P ⇉ Q: Q quotiented cellwise by the
/// equivalence generated by a(l) ~ b(l). Classes are ordered by their least
/// label and take its name; the action is induced from representatives.
struct Coequalizer {
    SymSeqPtr object;
    SymSeqMap quotient;  // Q → object
};
Coequalizer coequalizer(const SymSeqMap& a, const SymSeqMap& b);

/// The unique g with g · s = f, for s surjective. Throws ValidationError if f
/// does not factor or s is not surjective.
SymSeqMap factor_through(const SymSeqMap& s, const SymSeqMap& f);

/// The identity symmetric sequence on the given sorts.
SymSeqPtr id_symseq(const std::vector<std::string>& sorts);

/// An element addressed at an arbitrary word.
struct Elem {
    Word word;
    int label;
    auto operator<=>(const Elem&) const = default;
};

/// One unreduced element of a composite G ∘ F: an outer label at a canonical
/// word y, one block per letter of y (canonical word, label), and a shuffle
/// σ: x → x_1 ⊕ ... ⊕ x_m.
struct RawTuple {
    Word outer_word;
    int outer;
    std::vector<Elem> blocks;
    Perm shuffle;
    auto operator<=>(const RawTuple&) const = default;
    bool operator==(const RawTuple&) const = default;
};

/// The composite G ∘ F together with the class representatives needed to
/// define maps out of it. Stored tuples are normalized: the shuffle is
/// increasing on every run of equal letters inside a block, and blocks under a
/// run of equal outer letters are ordered by their smallest target position.
/// This uses up every relation except swaps of empty blocks.
class Composite {
public:
    const SymSeqPtr& outer() const { return outer_; }
    const SymSeqPtr& inner() const { return inner_; }
    const SymSeqPtr& result() const { return result_; }
    /// True when the outer sequence is truncated and the inner one has
    /// nullary cells: only outer operations inside the outer window occur.
    bool outer_truncated() const { return outer_truncated_; }

    const RawTuple& representative(const CellKey& key, int label) const;
    /// Number of unreduced tuples in a cell (diagnostics).
    std::size_t raw_count(const CellKey& key) const;
    /// Calls f(raw, label) for every stored (normalized) tuple of the cell.
    template <class F>
    void for_each_raw(const CellKey& key, F&& f) const {
        auto it = cells_.find(key);
        if (it == cells_.end()) return;
        for (std::size_t i = 0; i < it->second.raws.size(); ++i) f(it->second.raws[i], it->second.class_of[i]);
    }

    /// Rewrites a tuple with output sort z into normalized form.
    void normalize(RawTuple& raw, Sort z) const;

    /// Class of a tuple over the canonical word of the cell (any shuffle).
    int classify_canonical(const CellKey& key, const RawTuple& raw) const;

    /// Class of the element given by arbitrary words: target word x, outer
    /// element at word y (its sort list), blocks at arbitrary words and a
    /// shuffle σ: x → concat(block words). Returns the label addressed at x.
    int classify(const Word& x, Sort z, const Elem& outer, const std::vector<Elem>& blocks,
                 const Perm& sigma) const;

private:
    friend Composite compose_symseq(const SymSeqPtr&, const SymSeqPtr&, std::optional<std::size_t>);
    struct CodeHash {
        std::size_t operator()(const std::vector<int>& v) const noexcept;
    };
    struct CellData {
        std::vector<RawTuple> raws;            // sorted
        std::vector<int> class_of;             // raw index → label
        std::vector<std::size_t> rep_index;    // label → raw index
        std::unordered_map<std::vector<int>, std::size_t, CodeHash> index;  // code → raw index
    };
    /// Flat integer code of a normalized tuple; -1 entries never occur.
    std::vector<int> encode(const RawTuple& raw) const;
    std::map<CellKey, int> inner_ids_;
    bool outer_truncated_ = false;
    SymSeqPtr outer_;
    SymSeqPtr inner_;
    SymSeqPtr result_;
    std::map<CellKey, CellData> cells_;
};

/// G ∘ F. With `max_arity`, only cells of arity ≤ max_arity are computed and
/// the result carries that window. A truncated G meeting nullary cells of F
/// gives an outer-truncated composite. Throws InputError on sort mismatch.
Composite compose_symseq(const SymSeqPtr& g, const SymSeqPtr& f,
                         std::optional<std::size_t> max_arity = std::nullopt);

/// Horizontal composite β ⋆ α : source → target where source = G ∘ F and
/// target = G' ∘ F' with β: G → G', α: F → F'.
SymSeqMap hcompose_maps(const SymSeqMap& beta, const SymSeqMap& alpha, const Composite& source,
                        const Composite& target);

/// (H ∘ G) ∘ F → H ∘ (G ∘ F). `hg_f` has outer `hg` and `h_gf` has inner `gf`.
SymSeqMap associator(const Composite& hg, const Composite& hg_f, const Composite& gf, const Composite& h_gf);
/// Id ∘ F → F.
SymSeqMap left_unitor(const Composite& id_f);
/// F ∘ Id → F.
SymSeqMap right_unitor(const Composite& f_id);

/// A family of finite sets indexed by sorts; elements are named.
struct SortedFamily {
    std::vector<std::string> sorts;
    std::vector<std::vector<std::string>> carrier;

    std::size_t size(Sort s) const { return carrier[s].size(); }
    std::size_t total() const;
    static SortedFamily of_sizes(std::vector<std::string> sorts, const std::vector<std::size_t>& sizes);
    bool operator==(const SortedFamily&) const = default;
};

/// F(T) with the data needed to classify unreduced elements.
class AnalyticValue {
public:
    struct Rep {
        CellKey cell;
        int label;
        std::vector<int> tuple;  // tuple[i] ∈ T(cell.word[i])
    };
    const SortedFamily& family() const { return family_; }
    const Rep& representative(Sort y, int element) const { return reps_[y][element]; }
    /// Class of (label addressed at word a, tuple indexed along a).
    int classify(const Word& a, Sort y, int label, const std::vector<int>& tuple) const;
    const SymSeqPtr& sequence() const { return f_; }

private:
    friend AnalyticValue analytic_eval(const SymSeqPtr&, const SortedFamily&);
    SymSeqPtr f_;
    SortedFamily input_;
    SortedFamily family_;
    std::vector<std::vector<Rep>> reps_;
    std::map<std::pair<CellKey, std::pair<int, std::vector<int>>>, int> index_;
};

/// The analytic functor of F applied to T (cells beyond a window are ignored).
AnalyticValue analytic_eval(const SymSeqPtr& f, const SortedFamily& t);

/// The comparison (G ∘ F)(T) → G(F(T)), one vector per output sort.
std::vector<std::vector<int>> analytic_comparison(const Composite& gf, const AnalyticValue& gf_t,
                                                  const AnalyticValue& f_t, const AnalyticValue& g_ft);

/// F₁ ⊔ F₂ : X₁ ⊔ X₂ → Y₁ ⊔ Y₂, with X₁ (resp. Y₁) sorts first.
SymSeqPtr sum_symseq(const SymSeqPtr& f1, const SymSeqPtr& f2);
/// Sort names of a disjoint union; colliding names are tagged ".1"/".2".
std::vector<std::string> disjoint_sort_names(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct SeriesRow {
    std::size_t n;
    std::uint64_t size;
    std::uint64_t orbits;
    std::uint64_t egf_num;  // reduced |F[n]| / n!
    std::uint64_t egf_den;
};
std::vector<SeriesRow> series(const SymSeqPtr& f, std::size_t max_n);

/// Per-cell equivariant isomorphism F ≅ G, or nullopt.
std::optional<SymSeqMap> iso_symseq(const SymSeqPtr& f, const SymSeqPtr& g);

struct Orbit {
    std::vector<int> labels;
    std::size_t stabilizer_order;
};
std::vector<Orbit> orbit_decompose(const YoungSet& cell);

}  // namespace opbim
