#include <numeric>

#include "opbim/bimodule.hpp"
#include "opbim/errors.hpp"

namespace opbim {

namespace {

std::vector<Sort> identity_sorts(std::size_t n) {
    std::vector<Sort> u(n);
    std::iota(u.begin(), u.end(), 0);
    return u;
}

int compose_and_pull(const Operad& b, const Word& y, Sort z, int g, const std::vector<Elem>& blocks,
                     const Word& target, const Perm& shuffle) {
    const auto theta = b.compose(y, z, g, blocks);
    if (!theta) throw InternalError("composite outside the window of " + b.name());
    std::vector<Word> words;
    for (const Elem& e : blocks) words.push_back(e.word);
    return b.carrier()->pull(target, concat(words), shuffle, z, *theta);
}

}  // namespace

BimodulePtr u_circle_left(const OperadMorphism& phi) {
    const OperadPtr& a = phi.source;
    const OperadPtr& b = phi.target;
    const auto& u = phi.sort_map;
    SymSeqPtr carrier = reindex(b->carrier(), u, a->sorts(), identity_sorts(b->sorts().size()), b->sorts());
    auto lambda = [&](const CellKey& key, const RawTuple& t) {
        std::vector<Elem> blocks;
        for (const Elem& e : t.blocks) blocks.push_back({apply_sort_map(e.word, u), e.label});
        return compose_and_pull(*b, t.outer_word, key.out, t.outer, blocks, apply_sort_map(key.word, u), t.shuffle);
    };
    auto rho = [&](const CellKey& key, const RawTuple& t) {
        std::vector<Elem> blocks;
        for (std::size_t j = 0; j < t.blocks.size(); ++j) {
            const Elem& e = t.blocks[j];
            blocks.push_back({apply_sort_map(e.word, u), phi.xi.apply({e.word, t.outer_word[j]}, e.label)});
        }
        return compose_and_pull(*b, apply_sort_map(t.outer_word, u), key.out, t.outer, blocks,
                                apply_sort_map(key.word, u), t.shuffle);
    };
    return make_bimodule(b, a, std::move(carrier), lambda, rho, false);
}

BimodulePtr u_circle_right(const OperadMorphism& phi) {
    const OperadPtr& a = phi.source;
    const OperadPtr& b = phi.target;
    const auto& u = phi.sort_map;
    SymSeqPtr carrier = reindex(b->carrier(), identity_sorts(b->sorts().size()), b->sorts(), u, a->sorts());
    auto lambda = [&](const CellKey& key, const RawTuple& t) {
        const int g = phi.xi.apply({t.outer_word, key.out}, t.outer);
        return compose_and_pull(*b, apply_sort_map(t.outer_word, u), u[key.out], g, t.blocks, key.word, t.shuffle);
    };
    auto rho = [&](const CellKey& key, const RawTuple& t) {
        return compose_and_pull(*b, t.outer_word, u[key.out], t.outer, t.blocks, key.word, t.shuffle);
    };
    return make_bimodule(a, b, std::move(carrier), lambda, rho, false);
}

BimodulePtr restriction(const OperadMorphism& phi, const BimodulePtr& n) {
    if (!same_operad(phi.target, n->left())) throw InputError("restriction: module is not over the target operad");
    const auto& u = phi.sort_map;
    const SymSeqPtr& nc = n->carrier();
    SymSeqPtr carrier = reindex(nc, identity_sorts(nc->dom_size()), nc->dom_sorts(), u, phi.source->sorts());
    auto lambda = [&](const CellKey& key, const RawTuple& t) {
        const int g = phi.xi.apply({t.outer_word, key.out}, t.outer);
        const int e = n->left_composite().classify(key.word, u[key.out], {apply_sort_map(t.outer_word, u), g},
                                                   t.blocks, t.shuffle);
        return n->lambda().apply({key.word, u[key.out]}, e);
    };
    auto rho = [&](const CellKey& key, const RawTuple& t) {
        const int e =
            n->right_composite().classify(key.word, u[key.out], {t.outer_word, t.outer}, t.blocks, t.shuffle);
        return n->rho().apply({key.word, u[key.out]}, e);
    };
    return make_bimodule(phi.source, n->right(), std::move(carrier), lambda, rho, false);
}

BimodulePtr extension(const OperadMorphism& phi, const BimodulePtr& m) {
    if (!same_operad(phi.source, m->left())) throw InputError("extension: module is not over the source operad");
    return relative_compose(u_circle_left(phi), m).result;
}

SymAdjunction sort_function_adjunction(const std::vector<Sort>& u, const std::vector<std::string>& x_sorts,
                                       const std::vector<std::string>& y_sorts) {
    if (u.size() != x_sorts.size()) throw InputError("sort function size mismatch");
    SymSeq f(x_sorts, y_sorts);
    SymSeq g(y_sorts, x_sorts);
    for (std::size_t x = 0; x < u.size(); ++x) {
        if (u[x] < 0 || u[x] >= static_cast<Sort>(y_sorts.size())) throw InputError("sort function out of range");
        const Sort s = static_cast<Sort>(x);
        f.set_cell({{s}, u[x]}, YoungSet::trivial({s}, {"u." + x_sorts[x]}));
        g.set_cell({{u[x]}, s}, YoungSet::trivial({u[x]}, {"u*." + x_sorts[x]}));
    }
    SymAdjunction adj;
    adj.left = make_symseq(std::move(f));
    adj.right = make_symseq(std::move(g));
    const SymSeqPtr idx = id_symseq(x_sorts);
    const SymSeqPtr idy = id_symseq(y_sorts);
    const Composite gf = compose_symseq(adj.right, adj.left);
    const Composite fg = compose_symseq(adj.left, adj.right);
    adj.unit = {idx, gf.result(), {}};
    for (std::size_t x = 0; x < u.size(); ++x) {
        const Sort s = static_cast<Sort>(x);
        const int e = gf.classify({s}, s, {{u[x]}, 0}, {{{s}, 0}}, Perm::identity(1));
        adj.unit.components.emplace(CellKey{{s}, s}, std::vector<int>{e});
    }
    adj.counit = {fg.result(), idy, {}};
    for (const auto& [key, cell] : fg.result()->cells()) adj.counit.components.emplace(key, std::vector<int>(cell.size(), 0));
    const LawReport r = check_sym_triangles(adj);
    if (!r.ok) throw InternalError("sort function adjunction: " + r.message());
    return adj;
}

BimoduleAdjunction transport_adjunction(const SymAdjunction& adj, const OperadPtr& a, const OperadPtr& b,
                                        const SymSeqMap& xi) {
    if (const LawReport r = check_sym_triangles(adj); !r.ok)
        throw ValidationError("transport: input adjunction " + r.law + " fails", r.witness);
    const SymSeqPtr& f = adj.left;
    const SymSeqPtr& g = adj.right;
    const auto w = meet_window(meet_window(a->window(), b->window()), f->window());
    const SymSeqPtr idy = id_symseq(b->sorts());
    const SymSeqMap id_f = identity_map(f);
    const SymSeqMap id_g = identity_map(g);
    const SymSeqMap id_b = identity_map(b->carrier());

    const Composite bf = compose_symseq(b->carrier(), f, w);
    const Composite gb = compose_symseq(g, b->carrier(), w);
    const Composite fg = compose_symseq(f, g, w);
    const Composite g_bf = compose_symseq(g, bf.result(), w);
    SymSeqMap x = xi;
    x.source = a->carrier();
    x.target = g_bf.result();

    // ψ: F ∘ A → F ∘ (G ∘ BF) → (F ∘ G) ∘ BF → Id ∘ BF → BF
    const Composite fa = compose_symseq(f, a->carrier(), w);
    const Composite f_gbf = compose_symseq(f, g_bf.result(), w);
    const Composite fg_bf = compose_symseq(fg.result(), bf.result(), w);
    const Composite id_bf = compose_symseq(idy, bf.result(), w);
    SymSeqMap psi = hcompose_maps(id_f, x, fa, f_gbf);
    psi = vcompose(inverse_map(associator(fg, fg_bf, g_bf, f_gbf)), psi);
    psi = vcompose(hcompose_maps(adj.counit, identity_map(bf.result()), fg_bf, id_bf), psi);
    psi = vcompose(left_unitor(id_bf), psi);

    // φ: A ∘ G → (G ∘ BF) ∘ G → G ∘ (BF ∘ G) → G ∘ (B ∘ FG) → G ∘ (B ∘ Id) → G ∘ B
    const Composite ag = compose_symseq(a->carrier(), g, w);
    const Composite gbf_g = compose_symseq(g_bf.result(), g, w);
    const Composite bf_g = compose_symseq(bf.result(), g, w);
    const Composite g_bfg = compose_symseq(g, bf_g.result(), w);
    const Composite b_fg = compose_symseq(b->carrier(), fg.result(), w);
    const Composite g_b_fg = compose_symseq(g, b_fg.result(), w);
    const Composite b_id = compose_symseq(b->carrier(), idy, w);
    const Composite g_bid = compose_symseq(g, b_id.result(), w);
    SymSeqMap phi = hcompose_maps(x, id_g, ag, gbf_g);
    phi = vcompose(associator(g_bf, gbf_g, bf_g, g_bfg), phi);
    phi = vcompose(hcompose_maps(id_g, associator(bf, bf_g, fg, b_fg), g_bfg, g_b_fg), phi);
    phi = vcompose(hcompose_maps(id_g, hcompose_maps(id_b, adj.counit, b_fg, b_id), g_b_fg, g_bid), phi);
    phi = vcompose(hcompose_maps(id_g, right_unitor(b_id), g_bid, gb), phi);

    BimoduleAdjunction out;
    out.left = bimodule_of_oplax(f, b, a, psi);
    out.right = bimodule_of_lax_monad_morphism(g, a, b, phi);
    out.right_left = relative_compose(out.right, out.left);
    out.left_right = relative_compose(out.left, out.right);

    // unit: A → G ∘ BF → (G ∘ B) ∘ F → (G ∘ B) ∘ (B ∘ F) → G' ∘_B F'
    const Composite gb_f = compose_symseq(gb.result(), f, w);
    const Composite id_f_c = compose_symseq(idy, f, w);
    const SymSeqMap iota = vcompose(hcompose_maps(b->eta(), id_f, id_f_c, bf), inverse_map(left_unitor(id_f_c)));
    SymSeqMap j = inverse_map(associator(gb, gb_f, bf, g_bf));
    j = vcompose(hcompose_maps(identity_map(gb.result()), iota, gb_f, *out.right_left.plain), j);
    out.unit = make_bimodule_map(identity_bimodule(a), out.right_left.result,
                                 vcompose(out.right_left.quotient, vcompose(j, x)));

    // counit: BF ∘ GB → B ∘ (F ∘ GB) → B ∘ (FG ∘ B) → B ∘ (Id ∘ B) → B ∘ B → B
    const Composite& p = *out.left_right.plain;
    const Composite f_gb = compose_symseq(f, gb.result(), w);
    const Composite b_f_gb = compose_symseq(b->carrier(), f_gb.result(), w);
    const Composite fg_b = compose_symseq(fg.result(), b->carrier(), w);
    const Composite b_fgb = compose_symseq(b->carrier(), fg_b.result(), w);
    const Composite id_b_c = compose_symseq(idy, b->carrier(), w);
    const Composite b_idb = compose_symseq(b->carrier(), id_b_c.result(), w);
    SymSeqMap e = associator(bf, p, f_gb, b_f_gb);
    e = vcompose(hcompose_maps(id_b, inverse_map(associator(fg, fg_b, gb, f_gb)), b_f_gb, b_fgb), e);
    e = vcompose(hcompose_maps(id_b, hcompose_maps(adj.counit, id_b, fg_b, id_b_c), b_fgb, b_idb), e);
    e = vcompose(hcompose_maps(id_b, left_unitor(id_b_c), b_idb, b->square()), e);
    e = vcompose(b->mu(), e);
    out.counit = make_bimodule_map(out.left_right.result, identity_bimodule(b), factor_through(out.left_right.quotient, e));

    if (const LawReport r = check_triangles(out); !r.ok)
        throw ValidationError("transport: " + r.law + " fails", r.witness);
    return out;
}

BimoduleAdjunction morphism_adjunction(const OperadMorphism& phi) {
    const OperadPtr& a = phi.source;
    const OperadPtr& b = phi.target;
    const auto& u = phi.sort_map;
    const SymAdjunction adj = sort_function_adjunction(u, a->sorts(), b->sorts());
    const auto w = meet_window(a->window(), b->window());
    const Composite bf = compose_symseq(b->carrier(), adj.left, w);
    const Composite g_bf = compose_symseq(adj.right, bf.result(), w);
    SymSeqMap xi{a->carrier(), g_bf.result(), {}};
    for (const auto& [key, cell] : a->carrier()->cells()) {
        std::vector<int> comp(cell.size());
        const Sort ux = u[key.out];
        std::vector<Elem> letters;
        for (Sort s : key.word) letters.push_back({{s}, 0});
        for (std::size_t l = 0; l < cell.size(); ++l) {
            const int m = phi.xi.apply(key, static_cast<int>(l));
            const int e = bf.classify(key.word, ux, {apply_sort_map(key.word, u), m}, letters,
                                      Perm::identity(key.word.size()));
            comp[l] = g_bf.classify(key.word, key.out, {{ux}, 0}, {{key.word, e}}, Perm::identity(key.word.size()));
        }
        xi.components.emplace(key, std::move(comp));
    }
    return transport_adjunction(adj, a, b, xi);
}

}  // namespace opbim
