#pragma once

// Bimodule fixtures shared by the bimodule tests and the acceptance run.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "opbim/bimodule.hpp"
#include "support.hpp"

namespace testing_support {

using namespace opbim;

inline const OperadPtr& unit1() {
    static const OperadPtr u = unit_operad();
    return u;
}

inline const OperadPtr& com3() {
    static const OperadPtr c = com_operad(3);
    return c;
}

// Homomorphisms Σ_n → Σ_k counted by brute force over all maps on generators
// extended to the whole group.
inline std::uint64_t count_group_actions(std::size_t n, std::size_t k) {
    const auto group = all_permutations(n);
    const auto targets = all_permutations(k);
    std::uint64_t count = 0;
    std::vector<std::size_t> choice(group.size(), 0);
    std::map<Perm, std::size_t> index;
    for (std::size_t i = 0; i < group.size(); ++i) index.emplace(group[i], i);
    while (true) {
        bool hom = true;
        for (std::size_t i = 0; i < group.size() && hom; ++i)
            for (std::size_t j = 0; j < group.size() && hom; ++j) {
                const std::size_t ij = index.at(compose(group[i], group[j]));
                hom = compose(targets[choice[i]], targets[choice[j]]) == targets[choice[ij]];
            }
        if (hom) ++count;
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == targets.size()) choice[i++] = 0;
        if (i == choice.size()) break;
    }
    return count;
}

// Same cells over the sort "*".
inline SymSeqPtr on_star(const SymSeqPtr& f) {
    SymSeq out({"*"}, {"*"});
    out.set_window(f->window());
    for (const auto& [key, cell] : f->cells()) out.set_cell(key, cell);
    return make_symseq(std::move(out));
}

// (com, com) free bimodule com ∘ S ∘ com, built by relative composition.
inline BimodulePtr free_com_bimodule(const SymSeqPtr& s) {
    const BimodulePtr left = relative_compose(left_regular_bimodule(com3()), bimodule_of_symseq(on_star(s))).result;
    return relative_compose(left, right_regular_bimodule(com3())).result;
}

// Random bimodules of a given type over {unit, com(3)}.
inline BimodulePtr random_bimodule(std::mt19937& rng, bool left_com, bool right_com) {
    const SymSeqPtr s = on_star(testing_support::random_symseq(rng, {1, 1, 1, 2, 2, 2}));
    BimodulePtr m = bimodule_of_symseq(s);
    const bool plain = rng() % 3 == 0;
    if (left_com) m = plain && !right_com ? left_regular_bimodule(com3())
                                          : relative_compose(left_regular_bimodule(com3()), m).result;
    if (right_com) {
        if (plain && left_com) return identity_bimodule(com3());
        m = relative_compose(m, right_regular_bimodule(com3())).result;
    }
    return m;
}

// Both sides of the pentagon for K ∘ L ∘ M ∘ N.
inline std::string bim_pentagon_difference(const BimodulePtr& k, const BimodulePtr& l, const BimodulePtr& m,
                                           const BimodulePtr& n) {
    const RelativeComposite kl = relative_compose(k, l);
    const RelativeComposite lm = relative_compose(l, m);
    const RelativeComposite mn = relative_compose(m, n);
    const RelativeComposite kl_m = relative_compose(kl.result, m);
    const RelativeComposite k_lm = relative_compose(k, lm.result);
    const RelativeComposite lm_n = relative_compose(lm.result, n);
    const RelativeComposite l_mn = relative_compose(l, mn.result);
    const RelativeComposite klm_n = relative_compose(kl_m.result, n);
    const RelativeComposite k_lm__n = relative_compose(k_lm.result, n);
    const RelativeComposite k__lm_n = relative_compose(k, lm_n.result);
    const RelativeComposite k_lmn = relative_compose(k, l_mn.result);
    const RelativeComposite kl_mn = relative_compose(kl.result, mn.result);

    const BimoduleMap a_klm = rel_associator(kl, kl_m, lm, k_lm);
    const BimoduleMap a_k_lm_n = rel_associator(k_lm, k_lm__n, lm_n, k__lm_n);
    const BimoduleMap a_lmn = rel_associator(lm, lm_n, mn, l_mn);
    const BimoduleMap a_kl_m_n = rel_associator(kl_m, klm_n, mn, kl_mn);
    const BimoduleMap a_k_l_mn = rel_associator(kl, kl_mn, l_mn, k_lmn);

    BimoduleMap lhs = rel_hcompose(a_klm, identity_bimodule_map(n), klm_n, k_lm__n);
    lhs = compose_bimodule_maps(a_k_lm_n, lhs);
    lhs = compose_bimodule_maps(rel_hcompose(identity_bimodule_map(k), a_lmn, k__lm_n, k_lmn), lhs);
    const BimoduleMap rhs = compose_bimodule_maps(a_k_l_mn, a_kl_m_n);
    for (const BimoduleMap* f : {&a_klm, &a_k_lm_n, &a_lmn, &a_kl_m_n, &a_k_l_mn})
        if (auto r = check_bimodule_map(*f); !r.ok) return "associator: " + r.message();
    return first_difference(lhs.map, rhs.map);
}

inline OperadMorphism assoc_to_com(std::size_t n) {
    const OperadPtr a = assoc_operad(n);
    const OperadPtr c = com_operad(n);
    SymSeqMap xi;
    for (const auto& [key, cell] : a->carrier()->cells()) xi.components.emplace(key, std::vector<int>(cell.size(), 0));
    return make_morphism(a, c, {0}, xi);
}

// com on two sorts collapsed to com on one.
inline OperadMorphism collapse_com(std::size_t n) {
    const OperadPtr a = com_operad(n, {"a", "b"});
    const OperadPtr c = com_operad(n);
    SymSeqMap xi;
    for (const auto& [key, cell] : a->carrier()->cells()) xi.components.emplace(key, std::vector<int>(cell.size(), 0));
    return make_morphism(a, c, {0, 0}, xi);
}

inline OperadMorphism unit_into(const OperadPtr& b) {
    const OperadPtr u = unit_operad(b->sorts());
    SymSeqMap xi;
    for (const auto& [key, cell] : u->carrier()->cells()) xi.components.emplace(key, std::vector<int>{b->unit(key.out)});
    std::vector<Sort> id(b->sorts().size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Sort>(i);
    return make_morphism(u, b, id, xi);
}

inline OperadMorphism collapse_unit() {
    const OperadPtr a = unit_operad({"a", "b"});
    const OperadPtr u = unit_operad();
    SymSeqMap xi;
    for (const auto& [key, cell] : a->carrier()->cells()) xi.components.emplace(key, std::vector<int>{0});
    return make_morphism(a, u, {0, 0}, xi);
}

inline std::vector<BimodulePtr> left_modules(const OperadPtr& op, const std::map<CellKey, std::size_t>& cells,
                                      std::size_t window) {
    std::vector<BimodulePtr> out;
    BimoduleEnumerationOptions opts;
    opts.window = window;
    enumerate_bimodules(op, unit_operad({"k"}), cells, opts, [&](const BimodulePtr& m) { out.push_back(m); });
    return out;
}

}  // namespace testing_support
