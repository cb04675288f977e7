#pragma once

// Operads as monads on symmetric sequences, their morphisms and algebras.

#include <algorithm>
#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opbim/symseq.hpp"

namespace opbim {

class Operad;
using OperadPtr = std::shared_ptr<const Operad>;

/// Result of a law check. `witness` names the first failing cell and elements.
struct LawReport {
    bool ok = true;
    std::string law;
    std::string witness;
    std::string message() const { return ok ? "ok" : law + " fails at " + witness; }
};

class Operad {
public:
    const std::vector<std::string>& sorts() const { return carrier_->dom_sorts(); }
    const SymSeqPtr& carrier() const { return carrier_; }
    /// carrier ∘ carrier within the window; the domain of mu.
    const Composite& square() const { return *square_; }
    const SymSeqMap& mu() const { return mu_; }
    const SymSeqMap& eta() const { return eta_; }
    const std::optional<std::size_t>& window() const { return carrier_->window(); }
    bool reduced() const { return !carrier_->has_nullary(); }
    const std::string& name() const { return name_; }

    /// Label of the unit η_x in carrier[(x); x].
    int unit(Sort x) const;
    bool is_unit(const CellKey& key, int label) const;

    /// θ(g; f_1, ..., f_m): g addressed at outer word y, blocks at arbitrary
    /// words. Returns the label addressed at the concatenated block word, or
    /// nullopt if that arity lies outside the window.
    std::optional<int> compose(const Word& y, Sort z, int g, const std::vector<Elem>& blocks) const;

private:
    friend OperadPtr make_operad(SymSeqPtr, SymSeqMap, SymSeqMap, std::string, bool);
    friend OperadPtr make_operad(SymSeqPtr, const std::function<int(const CellKey&, const RawTuple&)>&,
                                 const std::function<int(Sort)>&, std::string, bool);
    SymSeqPtr carrier_;
    std::shared_ptr<const Composite> square_;
    SymSeqMap mu_;
    SymSeqMap eta_;
    std::string name_;
};

/// Checks the monad laws (associativity, both unit laws) and equivariance of
/// mu and eta on every cell inside the window.
LawReport check_monad_laws(const Operad& a);

/// Builds an operad. `mu` must have source compose(carrier, carrier) within the
/// carrier's window. With `validate`, failures throw ValidationError.
OperadPtr make_operad(SymSeqPtr carrier, SymSeqMap mu, SymSeqMap eta, std::string name = "", bool validate = true);
/// Same, with mu given on class representatives and eta per sort.
OperadPtr make_operad(SymSeqPtr carrier, const std::function<int(const CellKey&, const RawTuple&)>& mu,
                      const std::function<int(Sort)>& eta, std::string name = "", bool validate = true);

// Operad library. `sorts` defaults to a single sort "*".
OperadPtr unit_operad(const std::vector<std::string>& sorts = {"*"});
OperadPtr com_operad(std::size_t max_arity, const std::vector<std::string>& sorts = {"*"});
OperadPtr assoc_operad(std::size_t max_arity, const std::vector<std::string>& sorts = {"*"});
OperadPtr magma_operad(std::size_t max_arity);
/// The operad with no sorts.
OperadPtr terminal_operad();
/// Looks up "unit", "com", "assoc", "magma", "terminal"; throws InputError.
OperadPtr builtin_operad(const std::string& name, std::size_t max_arity, const std::vector<std::string>& sorts = {"*"});

/// A finite set of generators: name, canonical input word, output sort.
struct Generator {
    std::string name;
    Word inputs;
    Sort output;
};

/// Operation trees: a leaf is an input position, a node applies a generator.
struct Tree {
    int generator = -1;  // -1 for a leaf
    int position = 0;    // leaves only
    std::vector<Tree> children;
    friend std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
        if (auto c = a.generator <=> b.generator; c != 0) return c;
        if (auto c = a.position <=> b.position; c != 0) return c;
        return std::lexicographical_compare_three_way(a.children.begin(), a.children.end(), b.children.begin(),
                                                      b.children.end());
    }
    friend bool operator==(const Tree& a, const Tree& b) {
        return a.generator == b.generator && a.position == b.position && a.children == b.children;
    }
};

std::string to_string(const Tree& t, const std::vector<Generator>& gens);
/// Parses "name(t, t, ...)" / position syntax; positions are 0-based integers.
Tree parse_tree(const std::string& text, const std::vector<Generator>& gens);
/// The sort word of a tree's leaves (by position) and its output sort;
/// throws InputError if ill-typed or positions are not 0..n-1.
std::pair<Word, Sort> tree_type(const Tree& t, const std::vector<Generator>& gens, const std::vector<std::string>& sorts);

/// Free operad on the generators, cells up to max_arity. Generators of arity
/// 0 or 1 are rejected (their free operads have infinite cells).
OperadPtr free_operad(const std::vector<std::string>& sorts, const std::vector<Generator>& gens, std::size_t max_arity);
/// Quotient of the free operad by the congruence generated by the relation
/// pairs. Each relation side is a tree; both must have the same type.
OperadPtr presented_operad(const std::vector<std::string>& sorts, const std::vector<Generator>& gens,
                           const std::vector<std::pair<Tree, Tree>>& relations, std::size_t max_arity);

/// u^*B on the sorts of the domain: B'[w; x] = B[u·w; u(x)].
SymSeqPtr reindex(const SymSeqPtr& b, const std::vector<Sort>& u, const std::vector<std::string>& new_sorts);
/// B'[w; x] = B[u_in·w; u_out(x)] for B: Y → Y' and u_in: X → Y, u_out: X' → Y'.
SymSeqPtr reindex(const SymSeqPtr& b, const std::vector<Sort>& u_in, const std::vector<std::string>& in_sorts,
                  const std::vector<Sort>& u_out, const std::vector<std::string>& out_sorts);
/// Letterwise image of a word.
Word apply_sort_map(const Word& w, const std::vector<Sort>& u);

/// An operad morphism A → B: a sort function and a map of sequences into the
/// reindexed carrier of B.
struct OperadMorphism {
    OperadPtr source;
    OperadPtr target;
    std::vector<Sort> sort_map;
    SymSeqMap xi;  // source carrier → reindex(target carrier, sort_map)
};

LawReport check_morphism(const OperadMorphism& phi);
OperadMorphism make_morphism(OperadPtr source, OperadPtr target, std::vector<Sort> sort_map, SymSeqMap xi);
OperadMorphism identity_morphism(const OperadPtr& a);
OperadMorphism compose_morphisms(const OperadMorphism& psi, const OperadMorphism& phi);

/// An algebra: a family T and action tables. Each table entry is indexed by
/// label * |T^w| + mixed-radix tuple index (first letter fastest); -1 marks
/// an operation whose result lies outside the window (free algebras only).
class Algebra {
public:
    Algebra() = default;
    Algebra(OperadPtr op, SortedFamily carrier, std::map<CellKey, std::vector<int>> tables);

    const OperadPtr& operad() const { return op_; }
    const SortedFamily& carrier() const { return carrier_; }
    const std::map<CellKey, std::vector<int>>& tables() const { return tables_; }

    std::size_t tuple_index(const Word& w, const std::vector<int>& tuple) const;
    std::size_t tuple_count(const Word& w) const;
    /// Action of a label of the canonical cell on a tuple along the cell word.
    int act(const CellKey& key, int label, const std::vector<int>& tuple) const;
    /// Action of a label addressed at an arbitrary word on a tuple along that word.
    int act_at(const Word& word, Sort out, int label, const std::vector<int>& tuple) const;

    bool operator==(const Algebra& o) const { return carrier_ == o.carrier_ && tables_ == o.tables_; }

private:
    OperadPtr op_;
    SortedFamily carrier_;
    std::map<CellKey, std::vector<int>> tables_;
};

/// Equivariance, unit and associativity, exhaustively within the window.
LawReport check_algebra(const Algebra& alg);
/// Validating constructor; throws ValidationError with witness.
Algebra make_algebra(OperadPtr op, SortedFamily carrier, std::map<CellKey, std::vector<int>> tables);
/// Builds the tables from a function of (cell, label, tuple) and validates.
Algebra make_algebra(OperadPtr op, SortedFamily carrier,
                     const std::function<int(const CellKey&, int, const std::vector<int>&)>& act);

/// The free algebra A(T): carrier analytic_eval(A, T) with action through mu.
struct FreeAlgebra {
    Algebra algebra;
    AnalyticValue value;
    /// η_T: T → A(T), per sort.
    std::vector<std::vector<int>> unit;
};
FreeAlgebra free_algebra(const OperadPtr& op, const SortedFamily& t);

struct EnumerationResult {
    std::uint64_t count = 0;
    std::uint64_t orbits = 0;  // up to relabelling the carrier (0 if not computed)
};

struct EnumerationOptions {
    std::uint64_t budget = 5'000'000;
    bool orbits = true;
    std::uint64_t orbit_limit = 40320;  // max relabellings tried per solution
};

/// Every algebra structure on carriers of the given sizes, in search order.
EnumerationResult enumerate_algebras(const OperadPtr& op, const std::vector<std::size_t>& sizes,
                                     const EnumerationOptions& opts = {},
                                     const std::function<void(const Algebra&)>& each = {});

/// Algebra maps (per-sort functions commuting with every action).
std::uint64_t count_algebra_maps(const Algebra& a, const Algebra& b, std::uint64_t budget = 5'000'000);

/// Restriction of a B-algebra along φ: A → B.
Algebra restrict_algebra(const OperadMorphism& phi, const Algebra& b_alg);

}  // namespace opbim
