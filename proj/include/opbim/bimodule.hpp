#pragma once

// Bimodules between operads, their maps, relative composition and the
// structure isomorphisms of the bicategory they form.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opbim/operad.hpp"

namespace opbim {

class Bimodule;
using BimodulePtr = std::shared_ptr<const Bimodule>;

/// A (B, A)-bimodule: M: X → Y with λ: B ∘ M → M and ρ: M ∘ A → M.
class Bimodule {
public:
    const OperadPtr& left() const { return left_; }
    const OperadPtr& right() const { return right_; }
    const SymSeqPtr& carrier() const { return carrier_; }
    /// B ∘ M and M ∘ A within the law window.
    const Composite& left_composite() const { return *left_comp_; }
    const Composite& right_composite() const { return *right_comp_; }
    const SymSeqMap& lambda() const { return lambda_; }
    const SymSeqMap& rho() const { return rho_; }
    /// Laws are checked on arities up to the least window of B, A and M.
    const std::optional<std::size_t>& window() const { return window_; }

private:
    friend BimodulePtr make_bimodule(OperadPtr, OperadPtr, SymSeqPtr, SymSeqMap, SymSeqMap, bool);
    OperadPtr left_;
    OperadPtr right_;
    SymSeqPtr carrier_;
    std::shared_ptr<const Composite> left_comp_;
    std::shared_ptr<const Composite> right_comp_;
    SymSeqMap lambda_;
    SymSeqMap rho_;
    std::optional<std::size_t> window_;
};

/// Least of two windows (nullopt is unbounded).
std::optional<std::size_t> meet_window(std::optional<std::size_t> a, std::optional<std::size_t> b);

/// Equivariance, left unit and associativity, right unit and associativity,
/// and the commuting square for the two actions.
LawReport check_bimodule(const Bimodule& m);

/// `lambda` has source compose(B, M) and `rho` source compose(M, A), both
/// within the law window; sources and targets are rebound.
BimodulePtr make_bimodule(OperadPtr left, OperadPtr right, SymSeqPtr carrier, SymSeqMap lambda, SymSeqMap rho,
                          bool validate = true);
/// Actions given on class representatives of the two composites.
using ActionFn = std::function<int(const CellKey&, const RawTuple&)>;
BimodulePtr make_bimodule(OperadPtr left, OperadPtr right, SymSeqPtr carrier, const ActionFn& lambda,
                          const ActionFn& rho, bool validate = true);

/// Same operad object or identical data.
bool same_operad(const OperadPtr& a, const OperadPtr& b);

/// A with both actions given by mu.
BimodulePtr identity_bimodule(const OperadPtr& a);
/// F as a (unit, unit)-bimodule; both actions are unitors.
BimodulePtr bimodule_of_symseq(const SymSeqPtr& f);
/// A as an (A, unit)-bimodule (free left module on the identity).
BimodulePtr left_regular_bimodule(const OperadPtr& a);
/// A as a (unit, A)-bimodule.
BimodulePtr right_regular_bimodule(const OperadPtr& a);

struct BimoduleMap {
    BimodulePtr source;
    BimodulePtr target;
    SymSeqMap map;
};

LawReport check_bimodule_map(const BimoduleMap& f);
BimoduleMap make_bimodule_map(BimodulePtr source, BimodulePtr target, SymSeqMap map, bool validate = true);
BimoduleMap identity_bimodule_map(const BimodulePtr& m);
/// g · f.
BimoduleMap compose_bimodule_maps(const BimoduleMap& g, const BimoduleMap& f);
bool is_iso(const BimoduleMap& f);
BimoduleMap inverse(const BimoduleMap& f);

/// N ∘_B M with its presentation as a quotient of the plain composite.
struct RelativeComposite {
    BimodulePtr outer;   // N: (C, B)
    BimodulePtr inner;   // M: (B, A)
    BimodulePtr result;  // (C, A)
    std::shared_ptr<const Composite> plain;  // N ∘ M
    SymSeqMap quotient;                      // N ∘ M → result carrier
};

/// Coequalizer of ρ_N ∘ 1 and (1 ∘ λ_M) · α on (N ∘ B) ∘ M, with the induced
/// actions. Throws InputError if the middle operads differ or the plain
/// composite is outer-truncated.
RelativeComposite relative_compose(const BimodulePtr& n, const BimodulePtr& m, bool validate = true);

/// f ∘_B g between relative composites over compatible bimodules.
BimoduleMap rel_hcompose(const BimoduleMap& f, const BimoduleMap& g, const RelativeComposite& source,
                         const RelativeComposite& target);

struct Unitors {
    RelativeComposite left_composite;   // B ∘_B M
    RelativeComposite right_composite;  // M ∘_A A
    BimoduleMap left;                   // ℓ: B ∘_B M → M
    BimoduleMap right;                  // r: M ∘_A A → M
};
/// Induced by λ and ρ; throws InternalError if either is not bijective.
Unitors rel_unitors(const BimodulePtr& m);

/// (L ∘ M) ∘ N → L ∘ (M ∘ N). `lm_n.outer` must be `lm.result` and
/// `l_mn.inner` must be `mn.result`.
BimoduleMap rel_associator(const RelativeComposite& lm, const RelativeComposite& lm_n, const RelativeComposite& mn,
                           const RelativeComposite& l_mn);

/// Bimodule from a lax monad morphism (F, φ: B ∘ F → F ∘ A): carrier F ∘ A.
BimodulePtr bimodule_of_lax_monad_morphism(const SymSeqPtr& f, const OperadPtr& b, const OperadPtr& a,
                                           const SymSeqMap& phi);
/// Bimodule from an oplax morphism (F, ψ: F ∘ A → B ∘ F): carrier B ∘ F.
BimodulePtr bimodule_of_oplax(const SymSeqPtr& f, const OperadPtr& b, const OperadPtr& a, const SymSeqMap& psi);

/// An adjunction F ⊣ G in bimodules with F: (X, A) → (Y, B), G the other way.
struct BimoduleAdjunction {
    BimodulePtr left;   // (B, A)
    BimodulePtr right;  // (A, B)
    RelativeComposite right_left;  // G ∘_B F, bimodule over A
    RelativeComposite left_right;  // F ∘_A G, bimodule over B
    BimoduleMap unit;              // identity(A) → G ∘_B F
    BimoduleMap counit;            // F ∘_A G → identity(B)
};

/// Both triangle identities as equalities of bimodule maps.
LawReport check_triangles(const BimoduleAdjunction& adj);

/// F = A as an (A, unit)-bimodule, U = A as a (unit, A)-bimodule; the unit is
/// η_A and the counit μ_A. Triangles are validated.
BimoduleAdjunction adjunction_from_operad(const OperadPtr& a);

/// An adjunction F ⊣ G of symmetric sequences X → Y.
struct SymAdjunction {
    SymSeqPtr left;   // F: X → Y
    SymSeqPtr right;  // G: Y → X
    SymSeqMap unit;   // Id_X → G ∘ F
    SymSeqMap counit; // F ∘ G → Id_Y
};
LawReport check_sym_triangles(const SymAdjunction& adj);

/// Lifts F ⊣ G along a monad map ξ: A → G ∘ (B ∘ F) to bimodules B ∘ F and
/// G ∘ B. Throws ValidationError if ξ is not a monad map or the input
/// triangles fail.
BimoduleAdjunction transport_adjunction(const SymAdjunction& adj, const OperadPtr& a, const OperadPtr& b,
                                        const SymSeqMap& xi);

/// δ(u•) ⊣ δ(u_•) for a sort function u: X → Y.
SymAdjunction sort_function_adjunction(const std::vector<Sort>& u, const std::vector<std::string>& x_sorts,
                                       const std::vector<std::string>& y_sorts);
/// The transported adjunction of δ(u•) ⊣ δ(u_•) along φ: A → B.
BimoduleAdjunction morphism_adjunction(const OperadMorphism& phi);
/// u°: B[u·w; y] as a (B, A)-bimodule, and u_∘: B[v; u(x)] as an (A, B)-bimodule.
BimodulePtr u_circle_left(const OperadMorphism& phi);
BimodulePtr u_circle_right(const OperadMorphism& phi);

/// Restriction of a (B, C)-bimodule along φ: A → B to an (A, C)-bimodule.
BimodulePtr restriction(const OperadMorphism& phi, const BimodulePtr& n);
/// Left adjoint of restriction: u° ∘_A M.
BimodulePtr extension(const OperadMorphism& phi, const BimodulePtr& m);

struct BimoduleEnumerationOptions {
    std::uint64_t budget = 5'000'000;
    /// Window of the enumerated carriers; cells beyond it are unknown.
    std::optional<std::size_t> window;
};

/// Every (B, A)-bimodule whose carrier has exactly the given cell sizes
/// (Young actions and both action maps enumerated).
std::uint64_t enumerate_bimodules(const OperadPtr& b, const OperadPtr& a, const std::map<CellKey, std::size_t>& cells,
                                  const BimoduleEnumerationOptions& opts = {},
                                  const std::function<void(const BimodulePtr&)>& each = {});

/// Every bimodule map M → N.
std::uint64_t enumerate_bimodule_maps(const BimodulePtr& m, const BimodulePtr& n, std::uint64_t budget = 5'000'000,
                                      const std::function<void(const BimoduleMap&)>& each = {});

}  // namespace opbim
