#pragma once

// Categorical symmetric sequences over finite groupoids and the cartesian
// closed structure: products, exponential objects, evaluation, transposes,
// the hom-monad of two operads and its operad.
//
// A groupoid is stored through its skeleton (one object per connected
// component, with that object's automorphism group). A CatSymSeq F: X → Y
// is a symmetric sequence on the components together with, for every cell
// (w; y), the contravariant action of Aut(w[i]) at each position i and the
// covariant action of Aut(y).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opbim/groupoid.hpp"
#include "opbim/operad.hpp"

namespace opbim {

struct Skeleton {
    std::vector<int> rep;        // component → representative object
    std::vector<int> component;  // object → component
    std::vector<int> transport;  // object → an arrow rep(component) → object
    /// component → arrows rep → rep, identity first
    std::vector<std::vector<int>> group;
    /// component → [a][b] = index of group[a] ∘ group[b]
    std::vector<std::vector<std::vector<int>>> mult;
    std::vector<std::map<int, int>> index;  // component → arrow → group index

    std::size_t size() const { return rep.size(); }
    std::size_t order(int c) const { return group[c].size(); }
    int inverse(int c, int a) const;
};

Skeleton skeleton(const FinGroupoid& g);
bool is_skeletal(const FinGroupoid& g);

/// Group actions on one cell: dom[i][h] is the label map of F[(id; h at i)]
/// (contravariant), cod[g] that of F[g] (covariant).
struct CellActions {
    std::vector<std::vector<std::vector<int>>> dom;
    std::vector<std::vector<int>> cod;
};

class CatSymSeq;
using CatSymSeqPtr = std::shared_ptr<const CatSymSeq>;

class CatSymSeq {
public:
    const FinGroupoid& dom() const { return dom_; }
    const FinGroupoid& cod() const { return cod_; }
    const Skeleton& dom_skeleton() const { return sdom_; }
    const Skeleton& cod_skeleton() const { return scod_; }
    /// The symmetric sequence on components with the permutation actions.
    const SymSeqPtr& underlying() const { return underlying_; }
    const std::map<CellKey, CellActions>& actions() const { return actions_; }

    int dom_act(const CellKey& key, std::size_t pos, int h, int label) const;
    int cod_act(const CellKey& key, int g, int label) const;
    /// F[(σ; h)] followed by F[g], for σ ∈ Stab(w) and h[i] ∈ Aut(w[i]).
    int act(const CellKey& key, const Perm& sigma, const std::vector<int>& h, int g, int label) const;

    /// |F[x⃗; y]| for arbitrary objects.
    std::size_t size_at(const std::vector<int>& objects, int y) const;

private:
    friend CatSymSeqPtr make_cat_symseq(FinGroupoid, FinGroupoid, SymSeqPtr, std::map<CellKey, CellActions>, bool);
    FinGroupoid dom_;
    FinGroupoid cod_;
    Skeleton sdom_;
    Skeleton scod_;
    SymSeqPtr underlying_;
    std::map<CellKey, CellActions> actions_;
};

/// Functoriality on generators: each group action is an action, positions
/// and output commute, and permutations carry position actions along.
LawReport check_cat_symseq(const CatSymSeq& f);

/// The underlying sorts must be the component representatives' names.
CatSymSeqPtr make_cat_symseq(FinGroupoid dom, FinGroupoid cod, SymSeqPtr underlying,
                             std::map<CellKey, CellActions> actions, bool validate = true);

/// A symmetric sequence over discrete groupoids.
CatSymSeqPtr cat_of_symseq(const SymSeqPtr& f);
/// Id[x⃗; x] = S(X)[x⃗, (x)].
CatSymSeqPtr cat_id(const FinGroupoid& x);

struct CatComposite {
    CatSymSeqPtr result;
    std::shared_ptr<const Composite> plain;  // composite of the underlying sequences
    SymSeqMap quotient;                      // plain → result underlying
    std::map<CellKey, std::vector<int>> representative;  // class → least plain label
};

/// G ∘ F: the plain composite quotiented by the interchange of inner
/// groupoid arrows between the outer operation and the blocks.
CatComposite cat_compose(const CatSymSeqPtr& g, const CatSymSeqPtr& f,
                         std::optional<std::size_t> max_arity = std::nullopt);

/// F ⊓ G : X ⊔ X' → Y ⊔ Y'.
CatSymSeqPtr cat_product(const CatSymSeqPtr& f, const CatSymSeqPtr& g);
FinGroupoid product_object(const FinGroupoid& x, const FinGroupoid& y);

/// Id ∘ F → F and F ∘ Id → F on the result underlying sequences.
SymSeqMap cat_left_unitor(const CatComposite& id_f, const CatSymSeqPtr& f);
SymSeqMap cat_right_unitor(const CatComposite& f_id, const CatSymSeqPtr& f);

/// A map of underlying sequences commuting with every group action.
LawReport check_cat_map(const SymSeqMap& m, const CatSymSeq& source, const CatSymSeq& target);
/// Cellwise isomorphism respecting all actions, or nullopt.
std::optional<SymSeqMap> cat_iso(const CatSymSeqPtr& f, const CatSymSeqPtr& g);

/// [X, Y] truncated to words of length ≤ L, for skeletal X and Y. Objects
/// are (canonical word over X, object of Y); the arrows of (w, y) are
/// S(X)(w, w)^op × Y(y, y).
struct ExpObject {
    struct Arrow {
        Perm sigma;
        std::vector<int> f;  // f[i] ∈ Aut(w[i]) as X arrows
        int g;               // Y arrow
        auto operator<=>(const Arrow&) const = default;
    };
    FinGroupoid x;
    FinGroupoid y;
    std::size_t length_bound = 0;
    FinGroupoid groupoid;
    std::vector<Word> words;    // object → word over X
    std::vector<int> outs;      // object → Y object
    std::vector<int> arrow_object;
    std::vector<Arrow> arrows;  // arrow index → structure

    int object(const Word& w, int y) const;
    int arrow(int object, const Arrow& a) const;

private:
    friend ExpObject exp_object(const FinGroupoid&, const FinGroupoid&, std::size_t);
    std::map<std::pair<Word, int>, int> object_index_;
    std::map<std::pair<int, Arrow>, int> arrow_index_;
};

ExpObject exp_object(const FinGroupoid& x, const FinGroupoid& y, std::size_t length_bound);

/// S(Z) ⊗ S(X) ≃ S(Z ⊔ X) on words over the sum (X letters shifted).
struct CAdjointPair {
    std::size_t z_size;
    std::size_t x_size;
    /// c•: concatenation z⃗ ⊕ x⃗.
    Word concat(const Word& z, const Word& x) const;
    /// c^•: the Z and X letters of u in order, and the arrow u → z⃗ ⊕ x⃗.
    struct Split {
        Word z;
        Word x;
        Perm arrow;
    };
    Split split(const Word& u) const;
};
CAdjointPair c_adjoint_pair(const FinGroupoid& z, const FinGroupoid& x);

/// F: Z → [X, Y] to Z ⊔ X → Y, relabelling nothing.
CatSymSeqPtr transpose(const CatSymSeqPtr& f, const ExpObject& e);
/// G: Z ⊔ X → Y to Z → [X, Y]; cells with more than L letters from X are dropped.
CatSymSeqPtr untranspose(const CatSymSeqPtr& g, const FinGroupoid& z, const ExpObject& e);
/// ev = transpose(Id_[X,Y]) : [X,Y] ⊔ X → Y.
CatSymSeqPtr ev(const ExpObject& e);

/// A monad on Z in CatSym: E with μ: E ∘ E → E and η: Id_Z → E as maps of
/// underlying sequences.
struct CatMonad {
    FinGroupoid z;
    CatSymSeqPtr e;
    CatComposite square;
    SymSeqMap mu;   // square.result underlying → e underlying
    SymSeqMap eta;  // cat_id(z) underlying → e underlying
};

/// The identity monad (its operad is the hom-operad of Z).
CatMonad identity_monad(const FinGroupoid& z);

struct HomMonad {
    ExpObject exp;
    CatMonad monad;
};
/// B^A on [X, Y]: untranspose(B ∘ ev ∘ (Id ⊓ A)) with multiplication by
/// substitution and unit from η_B and η_A. Requires L within A's window.
HomMonad hom_monad(const OperadPtr& a, const OperadPtr& b, std::size_t length_bound);

/// The operad on the objects of the skeletal groupoid Z: carrier E, with
/// multiplication the plain composite followed by μ.
OperadPtr operad_of_monad(const CatMonad& m, std::string name = "");

/// operad_of_monad ∘ hom_monad; sorts are named "(x1,x2)->y".
OperadPtr exponential_operad(const OperadPtr& a, const OperadPtr& b, std::size_t length_bound);
/// A ⊓ B on the disjoint union of sorts.
OperadPtr product_operad(const OperadPtr& a, const OperadPtr& b);

/// An operad isomorphism with the identity sort bijection, or nullopt.
std::optional<SymSeqMap> operad_iso(const OperadPtr& a, const OperadPtr& b);

}  // namespace opbim
