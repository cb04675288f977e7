#include "opbim/bimodule.hpp"

#include "opbim/errors.hpp"

namespace opbim {

std::optional<std::size_t> meet_window(std::optional<std::size_t> a, std::optional<std::size_t> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

namespace {

LawReport fail(std::string law, std::string witness) { return {false, std::move(law), std::move(witness)}; }

std::optional<std::size_t> law_window(const Operad& b, const Operad& a, const SymSeq& m) {
    return meet_window(meet_window(b.window(), a.window()), m.window());
}

SymSeqMap rebind(SymSeqMap f, SymSeqPtr source, SymSeqPtr target) {
    f.source = std::move(source);
    f.target = std::move(target);
    return f;
}

void check_components(const SymSeqMap& f, const SymSeq& source, const char* what) {
    for (const auto& [key, cell] : source.cells()) {
        auto it = f.components.find(key);
        if (it == f.components.end() || it->second.size() != cell.size())
            throw InputError(std::string(what) + " has no component of the right size at " + to_string(key));
    }
}

std::string diff_or_throw(const std::function<SymSeqMap()>& f, const SymSeqMap& g) {
    try {
        return first_difference(f(), g);
    } catch (const InternalError& e) {
        return e.what();
    }
}

}  // namespace

BimodulePtr make_bimodule(OperadPtr left, OperadPtr right, SymSeqPtr carrier, SymSeqMap lambda, SymSeqMap rho,
                          bool validate) {
    if (carrier->cod_sorts() != left->sorts()) throw InputError("bimodule: carrier codomain differs from left operad");
    if (carrier->dom_sorts() != right->sorts()) throw InputError("bimodule: carrier domain differs from right operad");
    auto m = std::make_shared<Bimodule>();
    m->window_ = law_window(*left, *right, *carrier);
    m->left_comp_ = std::make_shared<const Composite>(compose_symseq(left->carrier(), carrier, m->window_));
    m->right_comp_ = std::make_shared<const Composite>(compose_symseq(carrier, right->carrier(), m->window_));
    check_components(lambda, *m->left_comp_->result(), "lambda");
    check_components(rho, *m->right_comp_->result(), "rho");
    m->lambda_ = rebind(std::move(lambda), m->left_comp_->result(), carrier);
    m->rho_ = rebind(std::move(rho), m->right_comp_->result(), carrier);
    m->left_ = std::move(left);
    m->right_ = std::move(right);
    m->carrier_ = std::move(carrier);
    if (validate) {
        const LawReport r = check_bimodule(*m);
        if (!r.ok) throw ValidationError("bimodule: " + r.law + " fails", r.witness);
    }
    return m;
}

BimodulePtr make_bimodule(OperadPtr left, OperadPtr right, SymSeqPtr carrier, const ActionFn& lambda,
                          const ActionFn& rho, bool validate) {
    const auto w = law_window(*left, *right, *carrier);
    auto tabulate = [](const Composite& c, const ActionFn& f) {
        SymSeqMap m{c.result(), nullptr, {}};
        for (const auto& [key, cell] : c.result()->cells()) {
            std::vector<int> comp(cell.size());
            for (std::size_t l = 0; l < cell.size(); ++l) comp[l] = f(key, c.representative(key, static_cast<int>(l)));
            m.components.emplace(key, std::move(comp));
        }
        return m;
    };
    SymSeqMap l = tabulate(compose_symseq(left->carrier(), carrier, w), lambda);
    SymSeqMap r = tabulate(compose_symseq(carrier, right->carrier(), w), rho);
    return make_bimodule(std::move(left), std::move(right), std::move(carrier), std::move(l), std::move(r), validate);
}

LawReport check_bimodule(const Bimodule& m) {
    const Operad& b = *m.left();
    const Operad& a = *m.right();
    const SymSeqPtr& c = m.carrier();
    const auto& w = m.window();
    const Composite& bm = m.left_composite();
    const Composite& ma = m.right_composite();
    try {
        m.lambda().validate();
    } catch (const ValidationError& e) {
        return fail("left action equivariance", e.witness());
    }
    try {
        m.rho().validate();
    } catch (const ValidationError& e) {
        return fail("right action equivariance", e.witness());
    }
    const SymSeqMap id_m = identity_map(c);
    const SymSeqMap id_b = identity_map(b.carrier());
    const SymSeqMap id_a = identity_map(a.carrier());

    const Composite id_m_c = compose_symseq(id_symseq(b.sorts()), c, w);
    if (auto d = diff_or_throw([&] { return vcompose(m.lambda(), hcompose_maps(b.eta(), id_m, id_m_c, bm)); },
                               left_unitor(id_m_c));
        !d.empty())
        return fail("left unit", d);

    const Composite bb_m = compose_symseq(b.square().result(), c, w);
    const Composite b_bm = compose_symseq(b.carrier(), bm.result(), w);
    if (auto d = diff_or_throw(
            [&] {
                return vcompose(m.lambda(), vcompose(hcompose_maps(id_b, m.lambda(), b_bm, bm),
                                                     associator(b.square(), bb_m, bm, b_bm)));
            },
            vcompose(m.lambda(), hcompose_maps(b.mu(), id_m, bb_m, bm)));
        !d.empty())
        return fail("left associativity", d);

    const Composite m_id = compose_symseq(c, id_symseq(a.sorts()), w);
    if (auto d = diff_or_throw([&] { return vcompose(m.rho(), hcompose_maps(id_m, a.eta(), m_id, ma)); },
                               right_unitor(m_id));
        !d.empty())
        return fail("right unit", d);

    const Composite ma_a = compose_symseq(ma.result(), a.carrier(), w);
    const Composite m_aa = compose_symseq(c, a.square().result(), w);
    if (auto d = diff_or_throw(
            [&] {
                return vcompose(m.rho(), vcompose(hcompose_maps(id_m, a.mu(), m_aa, ma),
                                                  associator(ma, ma_a, a.square(), m_aa)));
            },
            vcompose(m.rho(), hcompose_maps(m.rho(), id_a, ma_a, ma)));
        !d.empty())
        return fail("right associativity", d);

    const Composite bm_a = compose_symseq(bm.result(), a.carrier(), w);
    const Composite b_ma = compose_symseq(b.carrier(), ma.result(), w);
    if (auto d = diff_or_throw(
            [&] {
                return vcompose(m.lambda(),
                                vcompose(hcompose_maps(id_b, m.rho(), b_ma, bm), associator(bm, bm_a, ma, b_ma)));
            },
            vcompose(m.rho(), hcompose_maps(m.lambda(), id_a, bm_a, ma)));
        !d.empty())
        return fail("commuting actions", d);
    return {};
}

bool same_operad(const OperadPtr& a, const OperadPtr& b) {
    if (a == b) return true;
    return a->sorts() == b->sorts() && *a->carrier() == *b->carrier() && a->mu() == b->mu() && a->eta() == b->eta();
}

BimodulePtr identity_bimodule(const OperadPtr& a) {
    return make_bimodule(a, a, a->carrier(), a->mu(), a->mu(), false);
}

BimodulePtr bimodule_of_symseq(const SymSeqPtr& f) {
    const OperadPtr y = unit_operad(f->cod_sorts());
    const OperadPtr x = unit_operad(f->dom_sorts());
    const Composite id_f = compose_symseq(y->carrier(), f, f->window());
    const Composite f_id = compose_symseq(f, x->carrier(), f->window());
    return make_bimodule(y, x, f, left_unitor(id_f), right_unitor(f_id), false);
}

BimodulePtr left_regular_bimodule(const OperadPtr& a) {
    const OperadPtr x = unit_operad(a->sorts());
    const Composite a_id = compose_symseq(a->carrier(), x->carrier(), a->window());
    return make_bimodule(a, x, a->carrier(), a->mu(), right_unitor(a_id), false);
}

BimodulePtr right_regular_bimodule(const OperadPtr& a) {
    const OperadPtr x = unit_operad(a->sorts());
    const Composite id_a = compose_symseq(x->carrier(), a->carrier(), a->window());
    return make_bimodule(x, a, a->carrier(), left_unitor(id_a), a->mu(), false);
}

// ---------------------------------------------------------------------------
// Maps

LawReport check_bimodule_map(const BimoduleMap& f) {
    const Bimodule& m = *f.source;
    const Bimodule& n = *f.target;
    try {
        f.map.validate();
    } catch (const ValidationError& e) {
        return fail("map equivariance", e.witness());
    }
    const SymSeqMap id_b = identity_map(m.left()->carrier());
    const SymSeqMap id_a = identity_map(m.right()->carrier());
    if (auto d = diff_or_throw(
            [&] { return vcompose(n.lambda(), hcompose_maps(id_b, f.map, m.left_composite(), n.left_composite())); },
            vcompose(f.map, m.lambda()));
        !d.empty())
        return fail("map commutes with left action", d);
    if (auto d = diff_or_throw(
            [&] { return vcompose(n.rho(), hcompose_maps(f.map, id_a, m.right_composite(), n.right_composite())); },
            vcompose(f.map, m.rho()));
        !d.empty())
        return fail("map commutes with right action", d);
    return {};
}

BimoduleMap make_bimodule_map(BimodulePtr source, BimodulePtr target, SymSeqMap map, bool validate) {
    if (!same_operad(source->left(), target->left()) || !same_operad(source->right(), target->right()))
        throw InputError("bimodule map: operads differ");
    check_components(map, *source->carrier(), "bimodule map");
    map.source = source->carrier();
    map.target = target->carrier();
    BimoduleMap f{std::move(source), std::move(target), std::move(map)};
    if (validate) {
        const LawReport r = check_bimodule_map(f);
        if (!r.ok) throw ValidationError("bimodule map: " + r.law + " fails", r.witness);
    }
    return f;
}

BimoduleMap identity_bimodule_map(const BimodulePtr& m) { return {m, m, identity_map(m->carrier())}; }

BimoduleMap compose_bimodule_maps(const BimoduleMap& g, const BimoduleMap& f) {
    return {f.source, g.target, vcompose(g.map, f.map)};
}

bool is_iso(const BimoduleMap& f) { return f.map.is_iso(); }

BimoduleMap inverse(const BimoduleMap& f) { return {f.target, f.source, inverse_map(f.map)}; }

// ---------------------------------------------------------------------------
// Relative composition

RelativeComposite relative_compose(const BimodulePtr& n, const BimodulePtr& m, bool validate) {
    if (!same_operad(n->right(), m->left())) throw InputError("relative composition: middle operads differ");
    const auto w = meet_window(n->window(), m->window());
    auto plain = std::make_shared<const Composite>(compose_symseq(n->carrier(), m->carrier(), w));
    const Composite nb_m = compose_symseq(n->right_composite().result(), m->carrier(), w);
    const Composite n_bm = compose_symseq(n->carrier(), m->left_composite().result(), w);
    if (plain->outer_truncated() || nb_m.outer_truncated() || n_bm.outer_truncated())
        throw InputError("relative composition needs every arity of the outer bimodule (window meets nullary cells)");

    const SymSeqMap id_n = identity_map(n->carrier());
    const SymSeqMap id_m = identity_map(m->carrier());
    const SymSeqMap f1 = hcompose_maps(n->rho(), id_m, nb_m, *plain);
    const SymSeqMap f2 = vcompose(hcompose_maps(id_n, m->lambda(), n_bm, *plain),
                                  associator(n->right_composite(), nb_m, m->left_composite(), n_bm));
    Coequalizer q = coequalizer(f1, f2);

    const Operad& c = *n->left();
    const Operad& a = *m->right();
    const auto wq = law_window(c, a, *q.object);

    // left action through (C ∘ N) ∘ M
    const Composite cn_m = compose_symseq(n->left_composite().result(), m->carrier(), wq);
    const Composite c_nm = compose_symseq(c.carrier(), plain->result(), wq);
    const Composite c_q = compose_symseq(c.carrier(), q.object, wq);
    const SymSeqMap to_cq = vcompose(hcompose_maps(identity_map(c.carrier()), q.quotient, c_nm, c_q),
                                     associator(n->left_composite(), cn_m, *plain, c_nm));
    const SymSeqMap lam = factor_through(to_cq, vcompose(q.quotient, hcompose_maps(n->lambda(), id_m, cn_m, *plain)));

    // right action through N ∘ (M ∘ A)
    const Composite nm_a = compose_symseq(plain->result(), a.carrier(), wq);
    const Composite n_ma = compose_symseq(n->carrier(), m->right_composite().result(), wq);
    const Composite q_a = compose_symseq(q.object, a.carrier(), wq);
    const SymSeqMap to_qa = hcompose_maps(q.quotient, identity_map(a.carrier()), nm_a, q_a);
    const SymSeqMap rh = factor_through(
        to_qa, vcompose(q.quotient, vcompose(hcompose_maps(id_n, m->rho(), n_ma, *plain),
                                             associator(*plain, nm_a, m->right_composite(), n_ma))));

    BimodulePtr result = make_bimodule(n->left(), m->right(), q.object, lam, rh, validate);
    return {n, m, std::move(result), std::move(plain), std::move(q.quotient)};
}

BimoduleMap rel_hcompose(const BimoduleMap& f, const BimoduleMap& g, const RelativeComposite& source,
                         const RelativeComposite& target) {
    const SymSeqMap fg = hcompose_maps(f.map, g.map, *source.plain, *target.plain);
    SymSeqMap h = factor_through(source.quotient, vcompose(target.quotient, fg));
    return make_bimodule_map(source.result, target.result, std::move(h), false);
}

namespace {

BimoduleMap induced_iso(const RelativeComposite& rc, const SymSeqMap& action, const BimodulePtr& target,
                        const char* what) {
    SymSeqMap a = action;
    a.source = rc.quotient.source;
    BimoduleMap f = make_bimodule_map(rc.result, target, factor_through(rc.quotient, a), false);
    if (!is_iso(f)) throw InternalError(std::string(what) + " is not bijective");
    return f;
}

}  // namespace

Unitors rel_unitors(const BimodulePtr& m) {
    RelativeComposite bm = relative_compose(identity_bimodule(m->left()), m, false);
    RelativeComposite ma = relative_compose(m, identity_bimodule(m->right()), false);
    BimoduleMap l = induced_iso(bm, m->lambda(), m, "left unitor");
    BimoduleMap r = induced_iso(ma, m->rho(), m, "right unitor");
    return {std::move(bm), std::move(ma), std::move(l), std::move(r)};
}

BimoduleMap rel_associator(const RelativeComposite& lm, const RelativeComposite& lm_n, const RelativeComposite& mn,
                           const RelativeComposite& l_mn) {
    const Bimodule& l = *lm.outer;
    const Bimodule& n = *mn.inner;
    const auto w = lm_n.plain->result()->window();
    const Composite p = compose_symseq(lm.plain->result(), n.carrier(), w);
    const Composite l_p = compose_symseq(l.carrier(), mn.plain->result(), w);
    const SymSeqMap s =
        vcompose(lm_n.quotient, hcompose_maps(lm.quotient, identity_map(n.carrier()), p, *lm_n.plain));
    const SymSeqMap t = vcompose(
        l_mn.quotient, vcompose(hcompose_maps(identity_map(l.carrier()), mn.quotient, l_p, *l_mn.plain),
                                associator(*lm.plain, p, *mn.plain, l_p)));
    BimoduleMap a = make_bimodule_map(lm_n.result, l_mn.result, factor_through(s, t), false);
    if (!is_iso(a)) throw InternalError("associator is not bijective");
    return a;
}

// ---------------------------------------------------------------------------
// Monad morphisms

BimodulePtr bimodule_of_lax_monad_morphism(const SymSeqPtr& f, const OperadPtr& b, const OperadPtr& a,
                                           const SymSeqMap& phi) {
    const auto w = law_window(*b, *a, *f);
    const Composite bf = compose_symseq(b->carrier(), f, w);
    const Composite fa = compose_symseq(f, a->carrier(), w);
    check_components(phi, *bf.result(), "lax morphism");
    const SymSeqMap ph = rebind(phi, bf.result(), fa.result());
    try {
        ph.validate();
    } catch (const ValidationError& e) {
        throw ValidationError("lax morphism: equivariance fails", e.witness());
    }
    const SymSeqMap id_f = identity_map(f);
    const SymSeqMap id_a = identity_map(a->carrier());

    const Composite fa_a = compose_symseq(fa.result(), a->carrier(), w);
    const Composite f_aa = compose_symseq(f, a->square().result(), w);
    const SymSeqMap rho =
        vcompose(hcompose_maps(id_f, a->mu(), f_aa, fa), associator(fa, fa_a, a->square(), f_aa));
    const Composite bf_a = compose_symseq(bf.result(), a->carrier(), w);
    const Composite b_fa = compose_symseq(b->carrier(), fa.result(), w);
    const SymSeqMap lambda = vcompose(
        rho, vcompose(hcompose_maps(ph, id_a, bf_a, fa_a), inverse_map(associator(bf, bf_a, fa, b_fa))));

    const Composite bb_f = compose_symseq(b->square().result(), f, w);
    const Composite b_bf = compose_symseq(b->carrier(), bf.result(), w);
    const SymSeqMap lhs = vcompose(lambda, vcompose(hcompose_maps(identity_map(b->carrier()), ph, b_bf, b_fa),
                                                    associator(b->square(), bb_f, bf, b_bf)));
    const SymSeqMap rhs = vcompose(ph, hcompose_maps(b->mu(), id_f, bb_f, bf));
    if (auto d = first_difference(lhs, rhs); !d.empty()) throw ValidationError("lax morphism: multiplication fails", d);
    const Composite id_f_c = compose_symseq(id_symseq(b->sorts()), f, w);
    const Composite f_id = compose_symseq(f, id_symseq(a->sorts()), w);
    const SymSeqMap u1 = vcompose(ph, hcompose_maps(b->eta(), id_f, id_f_c, bf));
    const SymSeqMap u2 = vcompose(hcompose_maps(id_f, a->eta(), f_id, fa),
                                  vcompose(inverse_map(right_unitor(f_id)), left_unitor(id_f_c)));
    if (auto d = first_difference(u1, u2); !d.empty()) throw ValidationError("lax morphism: unit fails", d);
    return make_bimodule(b, a, fa.result(), lambda, rho, true);
}

BimodulePtr bimodule_of_oplax(const SymSeqPtr& f, const OperadPtr& b, const OperadPtr& a, const SymSeqMap& psi) {
    const auto w = law_window(*b, *a, *f);
    const Composite bf = compose_symseq(b->carrier(), f, w);
    const Composite fa = compose_symseq(f, a->carrier(), w);
    check_components(psi, *fa.result(), "oplax morphism");
    const SymSeqMap ps = rebind(psi, fa.result(), bf.result());
    try {
        ps.validate();
    } catch (const ValidationError& e) {
        throw ValidationError("oplax morphism: equivariance fails", e.witness());
    }
    const SymSeqMap id_f = identity_map(f);
    const SymSeqMap id_b = identity_map(b->carrier());

    const Composite bb_f = compose_symseq(b->square().result(), f, w);
    const Composite b_bf = compose_symseq(b->carrier(), bf.result(), w);
    const SymSeqMap lambda =
        vcompose(hcompose_maps(b->mu(), id_f, bb_f, bf), inverse_map(associator(b->square(), bb_f, bf, b_bf)));
    const Composite bf_a = compose_symseq(bf.result(), a->carrier(), w);
    const Composite b_fa = compose_symseq(b->carrier(), fa.result(), w);
    const SymSeqMap rho =
        vcompose(lambda, vcompose(hcompose_maps(id_b, ps, b_fa, b_bf), associator(bf, bf_a, fa, b_fa)));

    const Composite fa_a = compose_symseq(fa.result(), a->carrier(), w);
    const Composite f_aa = compose_symseq(f, a->square().result(), w);
    const SymSeqMap lhs = vcompose(ps, vcompose(hcompose_maps(id_f, a->mu(), f_aa, fa),
                                                associator(fa, fa_a, a->square(), f_aa)));
    const SymSeqMap rhs = vcompose(rho, hcompose_maps(ps, identity_map(a->carrier()), fa_a, bf_a));
    if (auto d = first_difference(lhs, rhs); !d.empty())
        throw ValidationError("oplax morphism: multiplication fails", d);
    const Composite id_f_c = compose_symseq(id_symseq(b->sorts()), f, w);
    const Composite f_id = compose_symseq(f, id_symseq(a->sorts()), w);
    const SymSeqMap u1 = vcompose(ps, hcompose_maps(id_f, a->eta(), f_id, fa));
    const SymSeqMap u2 = vcompose(hcompose_maps(b->eta(), id_f, id_f_c, bf),
                                  vcompose(inverse_map(left_unitor(id_f_c)), right_unitor(f_id)));
    if (auto d = first_difference(u1, u2); !d.empty()) throw ValidationError("oplax morphism: unit fails", d);
    return make_bimodule(b, a, bf.result(), lambda, rho, true);
}

// ---------------------------------------------------------------------------
// Adjunctions

LawReport check_triangles(const BimoduleAdjunction& adj) {
    const BimodulePtr& f = adj.left;
    const BimodulePtr& g = adj.right;
    try {
        const Unitors uf = rel_unitors(f);
        const Unitors ug = rel_unitors(g);
        const RelativeComposite& fg = adj.left_right;
        const RelativeComposite& gf = adj.right_left;

        const RelativeComposite fg_f = relative_compose(fg.result, f, false);
        const RelativeComposite f_gf = relative_compose(f, gf.result, false);
        const BimoduleMap a_fgf = rel_associator(fg, fg_f, gf, f_gf);
        BimoduleMap t = inverse(uf.right);
        t = compose_bimodule_maps(rel_hcompose(identity_bimodule_map(f), adj.unit, uf.right_composite, f_gf), t);
        t = compose_bimodule_maps(inverse(a_fgf), t);
        t = compose_bimodule_maps(rel_hcompose(adj.counit, identity_bimodule_map(f), fg_f, uf.left_composite), t);
        t = compose_bimodule_maps(uf.left, t);
        if (auto d = first_difference(t.map, identity_map(f->carrier())); !d.empty())
            return fail("left triangle", d);

        const RelativeComposite gf_g = relative_compose(gf.result, g, false);
        const RelativeComposite g_fg = relative_compose(g, fg.result, false);
        const BimoduleMap a_gfg = rel_associator(gf, gf_g, fg, g_fg);
        BimoduleMap s = inverse(ug.left);
        s = compose_bimodule_maps(rel_hcompose(adj.unit, identity_bimodule_map(g), ug.left_composite, gf_g), s);
        s = compose_bimodule_maps(a_gfg, s);
        s = compose_bimodule_maps(rel_hcompose(identity_bimodule_map(g), adj.counit, g_fg, ug.right_composite), s);
        s = compose_bimodule_maps(ug.right, s);
        if (auto d = first_difference(s.map, identity_map(g->carrier())); !d.empty())
            return fail("right triangle", d);
    } catch (const ValidationError& e) {
        return fail("triangle maps", e.what());
    }
    return {};
}

BimoduleAdjunction adjunction_from_operad(const OperadPtr& a) {
    BimoduleAdjunction adj;
    adj.left = left_regular_bimodule(a);
    adj.right = right_regular_bimodule(a);
    adj.right_left = relative_compose(adj.right, adj.left);
    adj.left_right = relative_compose(adj.left, adj.right);
    const BimodulePtr one = identity_bimodule(adj.left->right());
    const BimodulePtr ida = identity_bimodule(a);

    // U ∘_A F ≅ A through μ
    SymSeqMap mu = a->mu();
    mu.source = adj.right_left.quotient.source;
    const SymSeqMap l = factor_through(adj.right_left.quotient, mu);
    if (!l.is_iso()) throw InternalError("U ∘_A F is not isomorphic to A");
    adj.unit = make_bimodule_map(one, adj.right_left.result, vcompose(inverse_map(l), a->eta()));
    SymSeqMap counit = a->mu();
    counit.source = adj.left_right.quotient.source;
    adj.counit = make_bimodule_map(adj.left_right.result, ida, factor_through(adj.left_right.quotient, counit));
    const LawReport r = check_triangles(adj);
    if (!r.ok) throw InternalError("adjunction from operad: " + r.message());
    return adj;
}

LawReport check_sym_triangles(const SymAdjunction& adj) {
    const SymSeqPtr& f = adj.left;
    const SymSeqPtr& g = adj.right;
    const auto w = meet_window(f->window(), g->window());
    const Composite gf = compose_symseq(g, f, w);
    const Composite fg = compose_symseq(f, g, w);
    const SymSeqPtr idx = id_symseq(f->dom_sorts());
    const SymSeqPtr idy = id_symseq(f->cod_sorts());
    try {
        // F → F ∘ Id → F ∘ (G ∘ F) → (F ∘ G) ∘ F → Id ∘ F → F
        const Composite f_id = compose_symseq(f, idx, w);
        const Composite f_gf = compose_symseq(f, gf.result(), w);
        const Composite fg_f = compose_symseq(fg.result(), f, w);
        const Composite id_f = compose_symseq(idy, f, w);
        SymSeqMap t = inverse_map(right_unitor(f_id));
        t = vcompose(hcompose_maps(identity_map(f), adj.unit, f_id, f_gf), t);
        t = vcompose(inverse_map(associator(fg, fg_f, gf, f_gf)), t);
        t = vcompose(hcompose_maps(adj.counit, identity_map(f), fg_f, id_f), t);
        t = vcompose(left_unitor(id_f), t);
        if (auto d = first_difference(t, identity_map(f)); !d.empty()) return fail("left triangle", d);

        const Composite id_g = compose_symseq(idx, g, w);
        const Composite gf_g = compose_symseq(gf.result(), g, w);
        const Composite g_fg = compose_symseq(g, fg.result(), w);
        const Composite g_id = compose_symseq(g, idy, w);
        SymSeqMap s = inverse_map(left_unitor(id_g));
        s = vcompose(hcompose_maps(adj.unit, identity_map(g), id_g, gf_g), s);
        s = vcompose(associator(gf, gf_g, fg, g_fg), s);
        s = vcompose(hcompose_maps(identity_map(g), adj.counit, g_fg, g_id), s);
        s = vcompose(right_unitor(g_id), s);
        if (auto d = first_difference(s, identity_map(g)); !d.empty()) return fail("right triangle", d);
    } catch (const ValidationError& e) {
        return fail("triangle maps", e.what());
    } catch (const InternalError& e) {
        return fail("triangle maps", e.what());
    }
    return {};
}

}  // namespace opbim
