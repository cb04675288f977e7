#include <algorithm>
#include <numeric>

#include "opbim/bimodule.hpp"
#include "opbim/csp.hpp"
#include "opbim/errors.hpp"

namespace opbim {

namespace {

/// Variables laid out cell by cell: var = base[key] + label.
struct VarTable {
    std::map<CellKey, int> base;
    int at(const CellKey& key, int label) const { return base.at(key) + label; }
};

/// One side of an equation. A Var term is a variable, Const a value. A Dyn
/// term classifies `raw` in `comp` after substituting assigned variables for
/// its outer and block labels, then reads the result through `table` (a
/// variable) or `map` (a known value).
struct Term {
    enum class Kind { Var, Const, Dyn } kind = Kind::Var;
    int var = -1;
    int value = -1;
    const Composite* comp = nullptr;
    CellKey key;
    RawTuple raw;
    int outer_var = -1;
    std::vector<int> block_vars;
    const VarTable* table = nullptr;
    const SymSeqMap* map = nullptr;

    static Term variable(int v) {
        Term t;
        t.var = v;
        return t;
    }
    static Term constant(int c) {
        Term t;
        t.kind = Kind::Const;
        t.value = c;
        return t;
    }
};

struct Resolved {
    enum class State { Known, Free, Blocked } state;
    int value = -1;  // Known
    int var = -1;    // Free
};

Resolved resolve(const Term& t, const Csp::View& v) {
    auto read = [&](int var) -> Resolved {
        if (auto x = v.value(var)) return {Resolved::State::Known, *x};
        return {Resolved::State::Free, -1, var};
    };
    switch (t.kind) {
        case Term::Kind::Var:
            return read(t.var);
        case Term::Kind::Const:
            return {Resolved::State::Known, t.value};
        case Term::Kind::Dyn:
            break;
    }
    RawTuple raw = t.raw;
    if (t.outer_var >= 0) {
        auto x = v.value(t.outer_var);
        if (!x) return {Resolved::State::Blocked};
        raw.outer = *x;
    }
    for (std::size_t j = 0; j < t.block_vars.size(); ++j)
        if (t.block_vars[j] >= 0) {
            auto x = v.value(t.block_vars[j]);
            if (!x) return {Resolved::State::Blocked};
            raw.blocks[j].label = *x;
        }
    const int label = t.comp->classify_canonical(t.key, raw);
    if (t.map) return {Resolved::State::Known, t.map->apply(t.key, label)};
    return read(t.table->at(t.key, label));
}

/// lhs == perm(rhs); an empty perm is the identity.
Csp::Constraint equation(Term lhs, Term rhs, std::vector<int> perm = {}) {
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
    return [lhs = std::move(lhs), rhs = std::move(rhs), perm = std::move(perm),
            inv = std::move(inv)](const Csp::View& v) -> Csp::Outcome {
        const Resolved a = resolve(lhs, v);
        if (a.state == Resolved::State::Blocked) return Csp::Outcome::unknown();
        const Resolved b = resolve(rhs, v);
        if (b.state == Resolved::State::Blocked) return Csp::Outcome::unknown();
        auto fwd = [&](int x) { return perm.empty() ? x : perm[x]; };
        auto back = [&](int x) { return inv.empty() ? x : inv[x]; };
        if (a.state == Resolved::State::Known && b.state == Resolved::State::Known)
            return a.value == fwd(b.value) ? Csp::Outcome::yes() : Csp::Outcome::no();
        if (a.state == Resolved::State::Known) return Csp::Outcome::force(b.var, back(a.value));
        if (b.state == Resolved::State::Known) return Csp::Outcome::force(a.var, fwd(b.value));
        return Csp::Outcome::unknown();
    };
}

VarTable add_variables(Csp& csp, const SymSeq& cells, const SymSeq& domains) {
    VarTable t;
    for (const auto& [key, cell] : cells.cells()) {
        const auto d = static_cast<int>(domains.find(key) ? domains.find(key)->size() : 0);
        t.base.emplace(key, static_cast<int>(csp.variable_count()));
        for (std::size_t l = 0; l < cell.size(); ++l) csp.add_variable(d);
    }
    return t;
}

void add_equivariance(Csp& csp, const SymSeq& cells, const SymSeq& values, const VarTable& t) {
    for (const auto& [key, cell] : cells.cells()) {
        const YoungSet* target = values.find(key);
        if (!target) continue;
        for (std::size_t p : young_generators(key.word)) {
            std::vector<int> perm(target->size());
            for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = target->act_generator(p, static_cast<int>(i));
            for (std::size_t l = 0; l < cell.size(); ++l)
                csp.add_constraint(equation(Term::variable(t.at(key, cell.act_generator(p, static_cast<int>(l)))),
                                            Term::variable(t.at(key, static_cast<int>(l))), perm));
        }
    }
}

Term dyn(const Composite& comp, const CellKey& key, const RawTuple& raw, const VarTable* table,
         const SymSeqMap* map = nullptr) {
    Term t;
    t.kind = Term::Kind::Dyn;
    t.comp = &comp;
    t.key = key;
    t.raw = raw;
    t.block_vars.assign(raw.blocks.size(), -1);
    t.table = table;
    t.map = map;
    return t;
}

SymSeqMap read_map(const VarTable& t, const SymSeq& cells, const std::vector<int>& values) {
    SymSeqMap m;
    for (const auto& [key, cell] : cells.cells()) {
        std::vector<int> comp(cell.size());
        for (std::size_t l = 0; l < cell.size(); ++l) comp[l] = values[t.at(key, static_cast<int>(l))];
        m.components.emplace(key, std::move(comp));
    }
    return m;
}

template <class F>
void for_each_label(const Composite& c, F&& f) {
    for (const auto& [key, cell] : c.result()->cells())
        for (std::size_t l = 0; l < cell.size(); ++l)
            f(key, static_cast<int>(l), c.representative(key, static_cast<int>(l)));
}

/// Every action of Stab(w) on k labels, by generator images.
std::vector<YoungSet> young_actions(const Word& w, std::size_t k) {
    const auto gens = young_generators(w);
    std::vector<std::vector<int>> perms;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) labels.push_back("m" + std::to_string(i));
    std::vector<YoungSet> out;
    std::vector<std::size_t> choice(gens.size(), 0);
    while (true) {
        std::map<std::size_t, std::vector<int>> action;
        for (std::size_t g = 0; g < gens.size(); ++g) action.emplace(gens[g], perms[choice[g]]);
        try {
            out.emplace_back(w, labels, std::move(action));
        } catch (const ValidationError&) {
        }
        std::size_t g = 0;
        while (g < gens.size() && ++choice[g] == perms.size()) choice[g++] = 0;
        if (g == gens.size()) break;
    }
    return out;
}

std::uint64_t solve_actions(const OperadPtr& b, const OperadPtr& a, const SymSeqPtr& m, std::uint64_t budget,
                            const std::function<void(const BimodulePtr&)>& each) {
    const auto w = meet_window(meet_window(b->window(), a->window()), m->window());
    const Composite bm = compose_symseq(b->carrier(), m, w);
    const Composite ma = compose_symseq(m, a->carrier(), w);
    Csp csp;
    const VarTable lam = add_variables(csp, *bm.result(), *m);
    const VarTable rho = add_variables(csp, *ma.result(), *m);
    add_equivariance(csp, *bm.result(), *m, lam);
    add_equivariance(csp, *ma.result(), *m, rho);

    for (const auto& [key, cell] : m->cells())
        for (std::size_t l = 0; l < cell.size(); ++l) {
            const int x = static_cast<int>(l);
            const int e = bm.classify(key.word, key.out, {{key.out}, b->unit(key.out)}, {{key.word, x}},
                                      Perm::identity(key.word.size()));
            csp.add_constraint(equation(Term::variable(lam.at(key, e)), Term::constant(x)));
            std::vector<Elem> units;
            for (Sort s : key.word) units.push_back({{s}, a->unit(s)});
            const int r = ma.classify(key.word, key.out, {key.word, x}, units, Perm::identity(key.word.size()));
            csp.add_constraint(equation(Term::variable(rho.at(key, r)), Term::constant(x)));
        }

    const SymSeqMap id_m = identity_map(m);
    {
        const Composite bb_m = compose_symseq(b->square().result(), m, w);
        const Composite b_bm = compose_symseq(b->carrier(), bm.result(), w);
        const SymSeqMap mu1 = hcompose_maps(b->mu(), id_m, bb_m, bm);
        const SymSeqMap alpha = associator(b->square(), bb_m, bm, b_bm);
        for_each_label(bb_m, [&](const CellKey& key, int l, const RawTuple&) {
            const RawTuple& r = b_bm.representative(key, alpha.apply(key, l));
            Term rhs = dyn(bm, key, r, &lam);
            for (std::size_t j = 0; j < r.blocks.size(); ++j)
                rhs.block_vars[j] = lam.at({r.blocks[j].word, r.outer_word[j]}, r.blocks[j].label);
            csp.add_constraint(equation(Term::variable(lam.at(key, mu1.apply(key, l))), std::move(rhs)));
        });
    }
    {
        const Composite ma_a = compose_symseq(ma.result(), a->carrier(), w);
        const Composite m_aa = compose_symseq(m, a->square().result(), w);
        const SymSeqMap rhs_map =
            vcompose(hcompose_maps(id_m, a->mu(), m_aa, ma), associator(ma, ma_a, a->square(), m_aa));
        for_each_label(ma_a, [&](const CellKey& key, int l, const RawTuple& t) {
            Term lhs = dyn(ma, key, t, &rho);
            lhs.outer_var = rho.at({t.outer_word, key.out}, t.outer);
            csp.add_constraint(equation(std::move(lhs), Term::variable(rho.at(key, rhs_map.apply(key, l)))));
        });
    }
    {
        const Composite bm_a = compose_symseq(bm.result(), a->carrier(), w);
        const Composite b_ma = compose_symseq(b->carrier(), ma.result(), w);
        const SymSeqMap alpha = associator(bm, bm_a, ma, b_ma);
        for_each_label(bm_a, [&](const CellKey& key, int l, const RawTuple& t) {
            Term lhs = dyn(ma, key, t, &rho);
            lhs.outer_var = lam.at({t.outer_word, key.out}, t.outer);
            const RawTuple& r = b_ma.representative(key, alpha.apply(key, l));
            Term rhs = dyn(bm, key, r, &lam);
            for (std::size_t j = 0; j < r.blocks.size(); ++j)
                rhs.block_vars[j] = rho.at({r.blocks[j].word, r.outer_word[j]}, r.blocks[j].label);
            csp.add_constraint(equation(std::move(lhs), std::move(rhs)));
        });
    }

    return csp.solve(
        [&](const std::vector<int>& values) {
            if (each)
                each(make_bimodule(b, a, m, read_map(lam, *bm.result(), values), read_map(rho, *ma.result(), values),
                                   false));
            return true;
        },
        budget);
}

}  // namespace

std::uint64_t enumerate_bimodules(const OperadPtr& b, const OperadPtr& a, const std::map<CellKey, std::size_t>& cells,
                                  const BimoduleEnumerationOptions& opts,
                                  const std::function<void(const BimodulePtr&)>& each) {
    SymSeq shape(a->sorts(), b->sorts());
    shape.set_window(opts.window);
    std::vector<CellKey> keys;
    std::vector<std::vector<YoungSet>> choices;
    for (const auto& [key, k] : cells) {
        if (k == 0) continue;
        shape.check_word(key.word);
        shape.check_out(key.out);
        if (canonical_word(key.word).word != key.word) throw InputError("bimodule cell word is not canonical");
        if (!shape.known_arity(key.word.size())) throw InputError("bimodule cell beyond the window");
        keys.push_back(key);
        choices.push_back(young_actions(key.word, k));
    }
    std::uint64_t total = 0;
    std::uint64_t tried = 0;
    std::vector<std::size_t> pick(keys.size(), 0);
    while (true) {
        if (++tried > opts.budget) throw ResourceError("bimodule enumeration budget exceeded");
        SymSeq m = shape;
        for (std::size_t i = 0; i < keys.size(); ++i) m.set_cell(keys[i], choices[i][pick[i]]);
        total += solve_actions(b, a, make_symseq(std::move(m)), opts.budget, each);
        std::size_t i = 0;
        while (i < keys.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
        if (i == keys.size()) break;
    }
    return total;
}

std::uint64_t enumerate_bimodule_maps(const BimodulePtr& m, const BimodulePtr& n, std::uint64_t budget,
                                      const std::function<void(const BimoduleMap&)>& each) {
    if (!same_operad(m->left(), n->left()) || !same_operad(m->right(), n->right()))
        throw InputError("bimodule maps: operads differ");
    const SymSeq& mc = *m->carrier();
    const SymSeq& nc = *n->carrier();
    for (const auto& [key, cell] : mc.cells())
        if (!nc.known_arity(key.word.size())) throw InputError("bimodule maps: target window is smaller than the source");
    Csp csp;
    const VarTable f = add_variables(csp, mc, nc);
    add_equivariance(csp, mc, nc, f);
    const SymSeq& nl = *n->left_composite().result();
    const SymSeq& nr = *n->right_composite().result();
    for_each_label(m->left_composite(), [&](const CellKey& key, int l, const RawTuple& t) {
        if (!nl.known_arity(key.word.size())) return;
        Term rhs = dyn(n->left_composite(), key, t, nullptr, &n->lambda());
        for (std::size_t j = 0; j < t.blocks.size(); ++j)
            rhs.block_vars[j] = f.at({t.blocks[j].word, t.outer_word[j]}, t.blocks[j].label);
        csp.add_constraint(equation(Term::variable(f.at(key, m->lambda().apply(key, l))), std::move(rhs)));
    });
    for_each_label(m->right_composite(), [&](const CellKey& key, int l, const RawTuple& t) {
        if (!nr.known_arity(key.word.size())) return;
        Term rhs = dyn(n->right_composite(), key, t, nullptr, &n->rho());
        rhs.outer_var = f.at({t.outer_word, key.out}, t.outer);
        csp.add_constraint(equation(Term::variable(f.at(key, m->rho().apply(key, l))), std::move(rhs)));
    });
    return csp.solve(
        [&](const std::vector<int>& values) {
            if (each) {
                SymSeqMap map = read_map(f, mc, values);
                map.source = m->carrier();
                map.target = n->carrier();
                each({m, n, std::move(map)});
            }
            return true;
        },
        budget);
}

}  // namespace opbim
