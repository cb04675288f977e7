#include "opbim/catsym.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "opbim/errors.hpp"
#include "opbim/iso.hpp"
#include "opbim/quotient.hpp"

namespace opbim {

namespace {

LawReport fail(std::string law, std::string witness) { return {false, std::move(law), std::move(witness)}; }

std::vector<int> identity_perm(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::vector<std::string> component_names(const FinGroupoid& g, const Skeleton& s) {
    std::vector<std::string> names;
    for (int r : s.rep) names.push_back(g.object(r));
    return names;
}

/// A copy of f with new sort names.
SymSeqPtr renamed(const SymSeqPtr& f, std::vector<std::string> dom, std::vector<std::string> cod) {
    SymSeq s(std::move(dom), std::move(cod));
    s.set_window(f->window());
    for (const auto& [k, c] : f->cells()) s.set_cell(k, c);
    return make_symseq(std::move(s));
}

}  // namespace

int Skeleton::inverse(int c, int a) const {
    for (std::size_t b = 0; b < group[c].size(); ++b)
        if (mult[c][a][b] == 0) return static_cast<int>(b);
    throw InternalError("skeleton: element without inverse");
}

Skeleton skeleton(const FinGroupoid& g) {
    Skeleton s;
    const int n = static_cast<int>(g.object_count());
    s.component.assign(n, -1);
    s.transport.assign(n, -1);
    for (int o = 0; o < n; ++o) {
        if (s.component[o] != -1) continue;
        const int c = static_cast<int>(s.rep.size());
        s.rep.push_back(o);
        for (int p = o; p < n; ++p) {
            const auto& h = g.hom(o, p);
            if (h.empty()) continue;
            s.component[p] = c;
            s.transport[p] = h.front();
        }
        std::vector<int> grp{g.identity(o)};
        for (int a : g.hom(o, o))
            if (a != g.identity(o)) grp.push_back(a);
        std::map<int, int> idx;
        for (std::size_t i = 0; i < grp.size(); ++i) idx[grp[i]] = static_cast<int>(i);
        std::vector<std::vector<int>> m(grp.size(), std::vector<int>(grp.size()));
        for (std::size_t a = 0; a < grp.size(); ++a)
            for (std::size_t b = 0; b < grp.size(); ++b) m[a][b] = idx.at(g.compose(grp[a], grp[b]));
        s.group.push_back(std::move(grp));
        s.mult.push_back(std::move(m));
        s.index.push_back(std::move(idx));
    }
    return s;
}

bool is_skeletal(const FinGroupoid& g) { return skeleton(g).size() == g.object_count(); }

int CatSymSeq::dom_act(const CellKey& key, std::size_t pos, int h, int label) const {
    if (h == 0) return label;
    return actions_.at(key).dom.at(pos).at(h).at(label);
}

int CatSymSeq::cod_act(const CellKey& key, int g, int label) const {
    if (g == 0) return label;
    return actions_.at(key).cod.at(g).at(label);
}

int CatSymSeq::act(const CellKey& key, const Perm& sigma, const std::vector<int>& h, int g, int label) const {
    for (std::size_t i = 0; i < h.size(); ++i) label = dom_act(key, i, h[i], label);
    if (!sigma.is_identity()) label = underlying_->find(key)->act(sigma, label);
    return cod_act(key, g, label);
}

std::size_t CatSymSeq::size_at(const std::vector<int>& objects, int y) const {
    Word w;
    for (int o : objects) w.push_back(sdom_.component.at(o));
    return underlying_->size_at(w, scod_.component.at(y));
}

LawReport check_cat_symseq(const CatSymSeq& f) {
    const Skeleton& sd = f.dom_skeleton();
    const Skeleton& sc = f.cod_skeleton();
    if (f.underlying()->dom_size() != sd.size() || f.underlying()->cod_size() != sc.size())
        return fail("sorts", "underlying sorts are not the components");
    for (const auto& [key, cell] : f.underlying()->cells()) {
        const std::string at = to_string(key);
        auto it = f.actions().find(key);
        if (it == f.actions().end()) return fail("actions", at + " has no group actions");
        const CellActions& a = it->second;
        const std::size_t n = cell.size();
        if (a.dom.size() != key.word.size()) return fail("actions", at + " position count");
        if (a.cod.size() != sc.order(key.out)) return fail("actions", at + " output group order");
        auto is_bijection = [n](const std::vector<int>& p) {
            if (p.size() != n) return false;
            std::vector<char> seen(n, 0);
            for (int v : p) {
                if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]) return false;
                seen[v] = 1;
            }
            return true;
        };
        for (std::size_t i = 0; i < a.dom.size(); ++i) {
            const int c = key.word[i];
            if (a.dom[i].size() != sd.order(c)) return fail("actions", at + " position group order");
            for (const auto& p : a.dom[i])
                if (!is_bijection(p)) return fail("actions", at + " position action is not a bijection");
            if (a.dom[i][0] != identity_perm(n)) return fail("unit", at + " identity acts nontrivially");
            for (std::size_t x = 0; x < a.dom[i].size(); ++x)
                for (std::size_t y = 0; y < a.dom[i].size(); ++y) {
                    const auto& xy = a.dom[i][sd.mult[c][x][y]];
                    for (std::size_t l = 0; l < n; ++l)
                        if (xy[l] != a.dom[i][y][a.dom[i][x][l]])
                            return fail("contravariance", at + " position " + std::to_string(i));
                }
        }
        for (const auto& p : a.cod)
            if (!is_bijection(p)) return fail("actions", at + " output action is not a bijection");
        if (a.cod[0] != identity_perm(n)) return fail("unit", at + " identity acts nontrivially");
        for (std::size_t x = 0; x < a.cod.size(); ++x)
            for (std::size_t y = 0; y < a.cod.size(); ++y) {
                const auto& xy = a.cod[sc.mult[key.out][x][y]];
                for (std::size_t l = 0; l < n; ++l)
                    if (xy[l] != a.cod[x][a.cod[y][l]]) return fail("covariance", at);
            }
        // All generators: positions, output, and adjacent swaps.
        struct Gen {
            std::vector<int> map;
            int pos;  // -1 for the output
        };
        std::vector<Gen> gens;
        for (std::size_t i = 0; i < a.dom.size(); ++i)
            for (std::size_t h = 1; h < a.dom[i].size(); ++h) gens.push_back({a.dom[i][h], static_cast<int>(i)});
        for (std::size_t g = 1; g < a.cod.size(); ++g) gens.push_back({a.cod[g], -1});
        for (std::size_t x = 0; x < gens.size(); ++x)
            for (std::size_t y = x + 1; y < gens.size(); ++y) {
                if (gens[x].pos == gens[y].pos) continue;
                for (std::size_t l = 0; l < n; ++l)
                    if (gens[x].map[gens[y].map[l]] != gens[y].map[gens[x].map[l]])
                        return fail("commuting actions", at);
            }
        for (std::size_t p : young_generators(key.word)) {
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t g = 1; g < a.cod.size(); ++g)
                    if (cell.act_generator(p, a.cod[g][l]) != a.cod[g][cell.act_generator(p, l)])
                        return fail("permutation naturality", at + " output");
            for (std::size_t i = 0; i < a.dom.size(); ++i) {
                const std::size_t j = i == p ? p + 1 : i == p + 1 ? p : i;
                for (std::size_t h = 1; h < a.dom[i].size(); ++h)
                    for (std::size_t l = 0; l < n; ++l)
                        if (a.dom[i][h][cell.act_generator(p, l)] != cell.act_generator(p, a.dom[j][h][l]))
                            return fail("permutation naturality", at + " position " + std::to_string(i));
            }
        }
    }
    for (const auto& [key, a] : f.actions())
        if (!f.underlying()->find(key)) return fail("actions", to_string(key) + " acts on an empty cell");
    return {};
}

CatSymSeqPtr make_cat_symseq(FinGroupoid dom, FinGroupoid cod, SymSeqPtr underlying,
                             std::map<CellKey, CellActions> actions, bool validate) {
    auto f = std::make_shared<CatSymSeq>();
    f->sdom_ = skeleton(dom);
    f->scod_ = skeleton(cod);
    if (underlying->dom_sorts() != component_names(dom, f->sdom_) ||
        underlying->cod_sorts() != component_names(cod, f->scod_))
        throw InputError("categorical sequence: underlying sorts must be the component representatives");
    f->dom_ = std::move(dom);
    f->cod_ = std::move(cod);
    f->underlying_ = std::move(underlying);
    f->actions_ = std::move(actions);
    if (validate) {
        const LawReport r = check_cat_symseq(*f);
        if (!r.ok) throw ValidationError("categorical sequence is not a functor: " + r.law, r.witness);
    }
    return f;
}

namespace {

/// Actions on a cell that are trivial on every group.
CellActions trivial_actions(const CellKey& key, std::size_t n, const Skeleton& sd, const Skeleton& sc) {
    CellActions a;
    for (Sort s : key.word) a.dom.emplace_back(sd.order(s), identity_perm(n));
    a.cod.assign(sc.order(key.out), identity_perm(n));
    return a;
}

}  // namespace

CatSymSeqPtr cat_of_symseq(const SymSeqPtr& f) {
    FinGroupoid x = FinGroupoid::discrete(f->dom_sorts());
    FinGroupoid y = FinGroupoid::discrete(f->cod_sorts());
    const Skeleton sx = skeleton(x), sy = skeleton(y);
    std::map<CellKey, CellActions> actions;
    for (const auto& [k, c] : f->cells()) actions.emplace(k, trivial_actions(k, c.size(), sx, sy));
    return make_cat_symseq(std::move(x), std::move(y), f, std::move(actions), false);
}

CatSymSeqPtr cat_id(const FinGroupoid& x) {
    const Skeleton s = skeleton(x);
    const auto names = component_names(x, s);
    SymSeq seq(names, names);
    std::map<CellKey, CellActions> actions;
    for (std::size_t c = 0; c < s.size(); ++c) {
        const Sort sc = static_cast<Sort>(c);
        std::vector<std::string> labels;
        for (int a : s.group[c]) labels.push_back(x.arrow(a).name);
        CellKey key{{sc}, sc};
        seq.set_cell(key, YoungSet::trivial({sc}, labels));
        // Id[(id; h)](a) = a ∘ h and Id[g](a) = g ∘ a.
        const std::size_t n = s.order(sc);
        CellActions act;
        act.dom.emplace_back(n, std::vector<int>(n));
        act.cod.assign(n, std::vector<int>(n));
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t a = 0; a < n; ++a) {
                act.dom[0][h][a] = s.mult[c][a][h];
                act.cod[h][a] = s.mult[c][h][a];
            }
        actions.emplace(key, std::move(act));
    }
    return make_cat_symseq(x, x, make_symseq(std::move(seq)), std::move(actions), false);
}

CatComposite cat_compose(const CatSymSeqPtr& g, const CatSymSeqPtr& f, std::optional<std::size_t> max_arity) {
    if (!(g->dom() == f->cod())) throw InputError("categorical composite: middle groupoids differ");
    auto plain = std::make_shared<const Composite>(compose_symseq(g->underlying(), f->underlying(), max_arity));
    const Skeleton& mid = f->cod_skeleton();
    const Skeleton& sd = f->dom_skeleton();
    const Skeleton& sc = g->cod_skeleton();
    const SymSeqPtr& q = plain->result();

    SymSeq out(q->dom_sorts(), q->cod_sorts());
    out.set_window(q->window());
    CatComposite result;
    result.plain = plain;
    std::map<CellKey, std::vector<int>> class_of;
    for (const auto& [key, cell] : q->cells()) {
        UnionFind uf(cell.size());
        for (std::size_t l = 0; l < cell.size(); ++l) {
            const RawTuple& r = plain->representative(key, static_cast<int>(l));
            const CellKey outer{r.outer_word, key.out};
            for (std::size_t j = 0; j < r.blocks.size(); ++j) {
                const Sort v = r.outer_word[j];
                const CellKey block{r.blocks[j].word, v};
                for (std::size_t h = 1; h < mid.order(v); ++h) {
                    RawTuple r1 = r, r2 = r;
                    r1.outer = g->dom_act(outer, j, static_cast<int>(h), r.outer);
                    r2.blocks[j].label = f->cod_act(block, static_cast<int>(h), r.blocks[j].label);
                    uf.unite(plain->classify_canonical(key, r1), plain->classify_canonical(key, r2));
                }
            }
        }
        const QuotientResult qr = quotient(uf);
        std::vector<int> cls(cell.size());
        for (std::size_t l = 0; l < cell.size(); ++l) cls[l] = static_cast<int>(qr.class_of[l]);
        std::vector<std::string> labels;
        std::vector<int> reps;
        for (std::size_t c = 0; c < qr.size(); ++c) {
            reps.push_back(static_cast<int>(qr.representative(c)));
            labels.push_back(cell.label(qr.representative(c)));
        }
        std::map<std::size_t, std::vector<int>> gens;
        for (std::size_t p : young_generators(key.word)) {
            std::vector<int> m(qr.size());
            for (std::size_t c = 0; c < qr.size(); ++c) m[c] = cls[cell.act_generator(p, reps[c])];
            gens.emplace(p, std::move(m));
        }
        out.set_cell(key, YoungSet(key.word, std::move(labels), std::move(gens)));
        class_of.emplace(key, std::move(cls));
        result.representative.emplace(key, std::move(reps));
    }
    auto res = make_symseq(std::move(out));

    std::map<CellKey, CellActions> actions;
    for (const auto& [key, reps] : result.representative) {
        const auto& cls = class_of.at(key);
        CellActions a;
        for (std::size_t i = 0; i < key.word.size(); ++i) a.dom.emplace_back(sd.order(key.word[i]));
        a.cod.resize(sc.order(key.out));
        for (std::size_t c = 0; c < reps.size(); ++c) {
            const RawTuple& r = plain->representative(key, reps[c]);
            const Perm inv = r.shuffle.inverse();
            std::vector<std::size_t> offsets;
            std::size_t off = 0;
            for (const Elem& b : r.blocks) {
                offsets.push_back(off);
                off += b.word.size();
            }
            for (std::size_t i = 0; i < key.word.size(); ++i) {
                const std::size_t k = static_cast<std::size_t>(inv(static_cast<int>(i)));
                const std::size_t j =
                    static_cast<std::size_t>(std::upper_bound(offsets.begin(), offsets.end(), k) - offsets.begin()) - 1;
                const CellKey block{r.blocks[j].word, r.outer_word[j]};
                for (std::size_t h = 0; h < a.dom[i].size(); ++h) {
                    RawTuple t = r;
                    t.blocks[j].label = f->dom_act(block, k - offsets[j], static_cast<int>(h), r.blocks[j].label);
                    a.dom[i][h].push_back(cls[plain->classify_canonical(key, t)]);
                }
            }
            for (std::size_t h = 0; h < a.cod.size(); ++h) {
                RawTuple t = r;
                t.outer = g->cod_act({r.outer_word, key.out}, static_cast<int>(h), r.outer);
                a.cod[h].push_back(cls[plain->classify_canonical(key, t)]);
            }
        }
        actions.emplace(key, std::move(a));
    }
    result.quotient = SymSeqMap{q, res, std::move(class_of)};
    result.result = make_cat_symseq(f->dom(), g->cod(), res, std::move(actions), false);
    return result;
}

FinGroupoid product_object(const FinGroupoid& x, const FinGroupoid& y) { return groupoid_sum(x, y); }

CatSymSeqPtr cat_product(const CatSymSeqPtr& f, const CatSymSeqPtr& g) {
    FinGroupoid dom = groupoid_sum(f->dom(), g->dom());
    FinGroupoid cod = groupoid_sum(f->cod(), g->cod());
    const SymSeqPtr sum = sum_symseq(f->underlying(), g->underlying());
    const Skeleton sd = skeleton(dom), sc = skeleton(cod);
    SymSeqPtr u = renamed(sum, component_names(dom, sd), component_names(cod, sc));
    std::map<CellKey, CellActions> actions;
    const Sort dx = static_cast<Sort>(f->dom_skeleton().size());
    const Sort dy = static_cast<Sort>(f->cod_skeleton().size());
    for (const auto& [k, a] : f->actions())
        if (u->find(k)) actions.emplace(k, a);
    for (const auto& [k, a] : g->actions()) {
        CellKey key{k.word, k.out + dy};
        for (Sort& s : key.word) s += dx;
        if (u->find(key)) actions.emplace(key, a);
    }
    return make_cat_symseq(std::move(dom), std::move(cod), std::move(u), std::move(actions), false);
}

namespace {

/// Factors a map given on plain class representatives through the quotient.
SymSeqMap through_quotient(const CatComposite& c, const SymSeqPtr& target,
                           const std::function<int(const CellKey&, const RawTuple&)>& value) {
    SymSeqMap on_plain{c.plain->result(), target, {}};
    for (const auto& [key, cell] : c.plain->result()->cells()) {
        std::vector<int> comp(cell.size());
        for (std::size_t l = 0; l < cell.size(); ++l)
            comp[l] = value(key, c.plain->representative(key, static_cast<int>(l)));
        on_plain.components.emplace(key, std::move(comp));
    }
    return factor_through(c.quotient, on_plain);
}

}  // namespace

SymSeqMap cat_left_unitor(const CatComposite& id_f, const CatSymSeqPtr& f) {
    return through_quotient(id_f, f->underlying(), [&](const CellKey& key, const RawTuple& r) -> int {
        // r.outer is a group element of Aut(y); the single block lies in F[x_0; y].
        const int pulled = f->underlying()->pull(key.word, r.blocks[0].word, r.shuffle, key.out, r.blocks[0].label);
        return f->cod_act(key, r.outer, pulled);
    });
}

SymSeqMap cat_right_unitor(const CatComposite& f_id, const CatSymSeqPtr& f) {
    return through_quotient(f_id, f->underlying(), [&](const CellKey& key, const RawTuple& r) -> int {
        int label = r.outer;
        for (std::size_t j = 0; j < r.blocks.size(); ++j)
            label = f->dom_act({r.outer_word, key.out}, j, r.blocks[j].label, label);
        return f->underlying()->pull(key.word, r.outer_word, r.shuffle, key.out, label);
    });
}

LawReport check_cat_map(const SymSeqMap& m, const CatSymSeq& source, const CatSymSeq& target) {
    for (const auto& [key, cell] : source.underlying()->cells()) {
        const std::string at = to_string(key);
        auto it = m.components.find(key);
        const YoungSet* tc = target.underlying()->find(key);
        if (it == m.components.end() || !tc || it->second.size() != cell.size())
            return fail("totality", at);
        const auto& f = it->second;
        const CellActions& sa = source.actions().at(key);
        const CellActions& ta = target.actions().at(key);
        for (std::size_t l = 0; l < cell.size(); ++l) {
            for (std::size_t p : young_generators(key.word))
                if (f[cell.act_generator(p, static_cast<int>(l))] != tc->act_generator(p, f[l]))
                    return fail("equivariance", at + " permutation at " + std::to_string(p));
            for (std::size_t i = 0; i < sa.dom.size(); ++i)
                for (std::size_t h = 1; h < sa.dom[i].size(); ++h)
                    if (f[sa.dom[i][h][l]] != ta.dom[i][h][f[l]])
                        return fail("equivariance", at + " position " + std::to_string(i));
            for (std::size_t g = 1; g < sa.cod.size(); ++g)
                if (f[sa.cod[g][l]] != ta.cod[g][f[l]]) return fail("equivariance", at + " output");
        }
    }
    return {};
}

namespace {

ActionGraph cell_graph(const CatSymSeq& f, const CellKey& key) {
    const YoungSet& cell = *f.underlying()->find(key);
    const CellActions& a = f.actions().at(key);
    ActionGraph g;
    g.color.assign(cell.size(), 0);
    for (std::size_t p : young_generators(key.word)) {
        std::vector<int> m(cell.size());
        for (std::size_t l = 0; l < cell.size(); ++l) m[l] = cell.act_generator(p, static_cast<int>(l));
        g.next.push_back(std::move(m));
    }
    for (const auto& pos : a.dom)
        for (std::size_t h = 1; h < pos.size(); ++h) g.next.push_back(pos[h]);
    for (std::size_t h = 1; h < a.cod.size(); ++h) g.next.push_back(a.cod[h]);
    return g;
}

}  // namespace

std::optional<SymSeqMap> cat_iso(const CatSymSeqPtr& f, const CatSymSeqPtr& g) {
    if (!(f->dom() == g->dom()) || !(f->cod() == g->cod())) return std::nullopt;
    const auto& fc = f->underlying()->cells();
    const auto& gc = g->underlying()->cells();
    if (fc.size() != gc.size()) return std::nullopt;
    SymSeqMap m{f->underlying(), g->underlying(), {}};
    for (const auto& [key, cell] : fc) {
        if (!gc.count(key)) return std::nullopt;
        auto iso = find_graph_iso(cell_graph(*f, key), cell_graph(*g, key));
        if (!iso) return std::nullopt;
        m.components.emplace(key, std::move(*iso));
    }
    return m;
}

int ExpObject::object(const Word& w, int y) const {
    auto it = object_index_.find({w, y});
    if (it == object_index_.end())
        throw InputError("exponential object: no object for word " + to_string(w) + " of length bound " +
                         std::to_string(length_bound));
    return it->second;
}

int ExpObject::arrow(int object, const Arrow& a) const {
    auto it = arrow_index_.find({object, a});
    if (it == arrow_index_.end()) throw InputError("exponential object: no such arrow");
    return it->second;
}

ExpObject exp_object(const FinGroupoid& x, const FinGroupoid& y, std::size_t length_bound) {
    if (!is_skeletal(x) || !is_skeletal(y))
        throw InputError("exponential object: groupoids must have one object per component");
    ExpObject e;
    e.x = x;
    e.y = y;
    e.length_bound = length_bound;
    const int nx = static_cast<int>(x.object_count());
    std::vector<Word> words{{}};
    for (std::size_t len = 1; len <= length_bound && nx > 0; ++len) {
        std::vector<Word> next;
        for (const Word& w : words) {
            if (w.size() != len - 1) continue;
            for (int s = w.empty() ? 0 : w.back(); s < nx; ++s) {
                Word v = w;
                v.push_back(s);
                next.push_back(std::move(v));
            }
        }
        words.insert(words.end(), next.begin(), next.end());
    }
    std::vector<std::string> names;
    for (const Word& w : words)
        for (int t = 0; t < static_cast<int>(y.object_count()); ++t) {
            std::string name = "(";
            for (std::size_t i = 0; i < w.size(); ++i) name += (i ? "," : "") + x.object(w[i]);
            name += ")->" + y.object(t);
            e.object_index_[{w, t}] = static_cast<int>(e.words.size());
            e.words.push_back(w);
            e.outs.push_back(t);
            names.push_back(std::move(name));
        }
    std::vector<FinGroupoid::Arrow> arrows;
    std::vector<int> ids;
    for (int o = 0; o < static_cast<int>(e.words.size()); ++o) {
        const Word& w = e.words[o];
        const int t = e.outs[o];
        std::vector<std::vector<int>> choices;
        for (Sort s : w) choices.push_back(x.hom(s, s));
        for (const Perm& sigma : stabilizer(w)) {
            std::vector<std::size_t> odo(w.size(), 0);
            while (true) {
                std::vector<int> f;
                for (std::size_t i = 0; i < w.size(); ++i) f.push_back(choices[i][odo[i]]);
                for (int g : y.hom(t, t)) {
                    ExpObject::Arrow a{sigma, f, g};
                    std::string name = "[" + to_string(sigma) + "|";
                    for (std::size_t i = 0; i < f.size(); ++i) name += (i ? "," : "") + x.arrow(f[i]).name;
                    name += "|" + y.arrow(g).name + "]";
                    const int idx = static_cast<int>(arrows.size());
                    bool is_id = sigma.is_identity() && g == y.identity(t);
                    for (std::size_t i = 0; i < f.size(); ++i) is_id = is_id && f[i] == x.identity(w[i]);
                    if (is_id) ids.push_back(idx);
                    e.arrow_index_[{o, a}] = idx;
                    e.arrows.push_back(std::move(a));
                    e.arrow_object.push_back(o);
                    arrows.push_back({o, o, std::move(name)});
                }
                std::size_t i = 0;
                while (i < odo.size() && ++odo[i] == choices[i].size()) odo[i++] = 0;
                if (i == odo.size()) break;
            }
        }
    }
    const std::size_t na = arrows.size();
    std::vector<std::vector<int>> comp(na, std::vector<int>(na, -1));
    for (std::size_t a2 = 0; a2 < na; ++a2)
        for (std::size_t a1 = 0; a1 < na; ++a1) {
            const int o = e.arrow_object[a1];
            if (e.arrow_object[a2] != o) continue;
            const auto& p = e.arrows[a1];
            const auto& q = e.arrows[a2];
            // (θ2, g2) after (θ1, g1) = (θ2 then θ1, g2 ∘ g1).
            ExpObject::Arrow r{compose(q.sigma, p.sigma), std::vector<int>(p.f.size()), y.compose(q.g, p.g)};
            for (std::size_t i = 0; i < p.f.size(); ++i) r.f[i] = x.compose(p.f[i], q.f[p.sigma(static_cast<int>(i))]);
            comp[a2][a1] = e.arrow_index_.at({o, r});
        }
    e.groupoid = FinGroupoid(std::move(names), std::move(arrows), std::move(comp), std::move(ids));
    return e;
}

Word CAdjointPair::concat(const Word& z, const Word& x) const {
    Word u = z;
    for (Sort s : x) u.push_back(s + static_cast<Sort>(z_size));
    return u;
}

CAdjointPair::Split CAdjointPair::split(const Word& u) const {
    Split s;
    std::vector<int> zpos, xpos;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0 || static_cast<std::size_t>(u[i]) >= z_size + x_size)
            throw InputError("c-adjoint: letter outside the sum");
        if (static_cast<std::size_t>(u[i]) < z_size) {
            s.z.push_back(u[i]);
            zpos.push_back(static_cast<int>(i));
        } else {
            s.x.push_back(u[i] - static_cast<Sort>(z_size));
            xpos.push_back(static_cast<int>(i));
        }
    }
    zpos.insert(zpos.end(), xpos.begin(), xpos.end());
    s.arrow = Perm(std::move(zpos));
    return s;
}

CAdjointPair c_adjoint_pair(const FinGroupoid& z, const FinGroupoid& x) {
    return {z.object_count(), x.object_count()};
}

CatSymSeqPtr transpose(const CatSymSeqPtr& f, const ExpObject& e) {
    if (!(f->cod() == e.groupoid)) throw InputError("transpose: codomain is not the exponential object");
    FinGroupoid dom = groupoid_sum(f->dom(), e.x);
    const Skeleton sd = skeleton(dom);
    const Skeleton sx = skeleton(e.x);
    const Skeleton sy = skeleton(e.y);
    const Skeleton& se = f->cod_skeleton();
    const Sort nz = static_cast<Sort>(f->dom_skeleton().size());
    SymSeq seq(component_names(dom, sd), component_names(e.y, sy));
    if (f->underlying()->window()) seq.set_window(*f->underlying()->window() + e.length_bound);
    std::map<CellKey, CellActions> actions;
    for (const auto& [key, cell] : f->underlying()->cells()) {
        const int o = key.out;
        const Word& w = e.words[o];
        const int y = e.outs[o];
        const CellActions& fa = f->actions().at(key);
        auto cod_table = [&](const ExpObject::Arrow& a) -> const std::vector<int>& {
            return fa.cod.at(se.index[o].at(e.arrow(o, a)));
        };
        std::vector<int> idf;
        for (Sort s : w) idf.push_back(e.x.identity(s));
        const std::size_t n = cell.size();
        CellKey gk{key.word, y};
        for (Sort s : w) gk.word.push_back(s + nz);
        std::map<std::size_t, std::vector<int>> gens = cell.generator_action();
        for (std::size_t q = 0; q + 1 < w.size(); ++q) {
            if (w[q] != w[q + 1]) continue;
            std::vector<int> img(w.size());
            std::iota(img.begin(), img.end(), 0);
            std::swap(img[q], img[q + 1]);
            gens[key.word.size() + q] = cod_table({Perm(img), idf, e.y.identity(y)});
        }
        seq.set_cell(gk, YoungSet(gk.word, cell.labels(), std::move(gens)));
        CellActions ga;
        ga.dom = fa.dom;
        for (std::size_t q = 0; q < w.size(); ++q) {
            std::vector<std::vector<int>> tables;
            for (std::size_t h = 0; h < sx.order(w[q]); ++h) {
                std::vector<int> f2 = idf;
                f2[q] = sx.group[w[q]][h];
                tables.push_back(h == 0 ? identity_perm(n) : cod_table({Perm::identity(w.size()), f2, e.y.identity(y)}));
            }
            ga.dom.push_back(std::move(tables));
        }
        for (std::size_t g = 0; g < sy.order(y); ++g)
            ga.cod.push_back(cod_table({Perm::identity(w.size()), idf, sy.group[y][g]}));
        actions.emplace(gk, std::move(ga));
    }
    return make_cat_symseq(std::move(dom), e.y, make_symseq(std::move(seq)), std::move(actions), false);
}

CatSymSeqPtr untranspose(const CatSymSeqPtr& g, const FinGroupoid& z, const ExpObject& e) {
    if (!(g->dom() == groupoid_sum(z, e.x)) || !(g->cod() == e.y))
        throw InputError("untranspose: sequence is not defined on Z ⊔ X → Y");
    const Skeleton sz = skeleton(z);
    const Skeleton sx = skeleton(e.x);
    const Skeleton sy = skeleton(e.y);
    const Skeleton se = skeleton(e.groupoid);
    const Sort nz = static_cast<Sort>(sz.size());
    const std::size_t L = e.length_bound;
    std::optional<std::size_t> window;
    if (g->underlying()->window()) {
        if (*g->underlying()->window() < L) throw ResourceError("untranspose: window is below the length bound");
        window = *g->underlying()->window() - L;
    }
    SymSeq seq(component_names(z, sz), component_names(e.groupoid, se));
    seq.set_window(window);
    std::map<CellKey, CellActions> actions;
    for (const auto& [key, cell] : g->underlying()->cells()) {
        const std::size_t split = static_cast<std::size_t>(
            std::find_if(key.word.begin(), key.word.end(), [nz](Sort s) { return s >= nz; }) - key.word.begin());
        Word zw(key.word.begin(), key.word.begin() + static_cast<std::ptrdiff_t>(split));
        Word xw;
        for (std::size_t i = split; i < key.word.size(); ++i) xw.push_back(key.word[i] - nz);
        if (xw.size() > L || (window && zw.size() > *window)) continue;
        const int o = e.object(xw, key.out);
        const CellKey fk{zw, o};
        std::map<std::size_t, std::vector<int>> gens;
        for (const auto& [p, m] : cell.generator_action())
            if (p + 1 < split) gens.emplace(p, m);
        seq.set_cell(fk, YoungSet(zw, cell.labels(), std::move(gens)));
        const CellActions& ga = g->actions().at(key);
        CellActions fa;
        fa.dom.assign(ga.dom.begin(), ga.dom.begin() + static_cast<std::ptrdiff_t>(split));
        for (int a : se.group[o]) {
            const ExpObject::Arrow& ar = e.arrows[a];
            std::vector<int> h(split, 0);
            for (std::size_t q = 0; q < xw.size(); ++q) h.push_back(sx.index[xw[q]].at(ar.f[q]));
            const Perm sigma = direct_sum(Perm::identity(split), ar.sigma);
            const int gi = sy.index[key.out].at(ar.g);
            std::vector<int> table(cell.size());
            for (std::size_t l = 0; l < cell.size(); ++l) table[l] = g->act(key, sigma, h, gi, static_cast<int>(l));
            fa.cod.push_back(std::move(table));
        }
        actions.emplace(fk, std::move(fa));
    }
    return make_cat_symseq(z, e.groupoid, make_symseq(std::move(seq)), std::move(actions), false);
}

CatSymSeqPtr ev(const ExpObject& e) {
    const CatSymSeqPtr t = transpose(cat_id(e.groupoid), e);
    // Id has only unary cells, so every cell of ev has exactly one letter
    // from [X,Y] and the cells up to arity 1 + L are exact.
    SymSeq seq = *t->underlying();
    seq.set_window(1 + e.length_bound);
    return make_cat_symseq(t->dom(), t->cod(), make_symseq(std::move(seq)), t->actions(), false);
}

CatMonad identity_monad(const FinGroupoid& z) {
    CatMonad m;
    m.z = z;
    m.e = cat_id(z);
    m.square = cat_compose(m.e, m.e);
    m.mu = cat_left_unitor(m.square, m.e);
    m.eta = identity_map(m.e->underlying());
    return m;
}

namespace {

SymSeqPtr unwindowed(const SymSeqPtr& f) {
    if (!f->window()) return f;
    SymSeq s = *f;
    s.set_window(std::nullopt);
    return make_symseq(std::move(s));
}

CatSymSeqPtr unwindowed(const CatSymSeqPtr& f) {
    if (!f->underlying()->window()) return f;
    return make_cat_symseq(f->dom(), f->cod(), unwindowed(f->underlying()), f->actions(), false);
}

/// One generic input of a natural operation: an input of sort z moved by an
/// automorphism ζ of z, with an A-operation on each letter of z's word.
struct NatInput {
    int z;
    int zeta;
    std::vector<Elem> ablocks;  // over the sorts of A
    std::size_t zpos;           // position of the input in the cell word
    std::vector<std::vector<std::size_t>> xpos;  // positions of the A-blocks' inputs
};

/// An element of (B ∘ ev ∘ (Id ⊓ A))[z⃗ ⊕ x⃗; y] written out: b with one
/// generic input per letter of its word.
struct NatOp {
    Elem b;
    std::vector<NatInput> inputs;
};

/// Encodes and decodes natural operations through the two composites that
/// define the hom-monad.
class HomMonadBuilder {
public:
    HomMonadBuilder(const OperadPtr& a, const OperadPtr& b, std::size_t length_bound)
        : a_(a), b_(b), e_(exp_object(FinGroupoid::discrete(a->sorts()), FinGroupoid::discrete(b->sorts()),
                                      length_bound)) {
        if (a->window() && *a->window() < length_bound)
            throw InputError("hom-monad: length bound exceeds the window of the right operad");
        nz_ = static_cast<Sort>(e_.groupoid.object_count());
        n_ = b->window() ? *b->window() : b->carrier()->max_arity();
        const FinGroupoid& z = e_.groupoid;
        const CatSymSeqPtr ia = cat_product(cat_id(z), cat_of_symseq(unwindowed(a->carrier())));
        evia_ = cat_compose(ev(e_), ia, 1 + length_bound);
        outer_ = cat_compose(cat_of_symseq(unwindowed(b->carrier())), unwindowed(evia_.result), n_ + length_bound);
        // Keep the cells with at most n inputs and L letters from X: those
        // only involve cells of B, A and ev inside their windows.
        SymSeq kept(outer_.result->underlying()->dom_sorts(), outer_.result->underlying()->cod_sorts());
        std::map<CellKey, CellActions> actions;
        for (const auto& [key, cell] : outer_.result->underlying()->cells()) {
            const auto zs = static_cast<std::size_t>(
                std::count_if(key.word.begin(), key.word.end(), [this](Sort s) { return s < nz_; }));
            if (zs > n_ || key.word.size() - zs > length_bound) continue;
            kept.set_cell(key, cell);
            actions.emplace(key, outer_.result->actions().at(key));
        }
        const CatSymSeqPtr g = make_cat_symseq(outer_.result->dom(), outer_.result->cod(), make_symseq(std::move(kept)),
                                               std::move(actions), false);
        CatSymSeqPtr e = untranspose(g, z, e_);
        if (b->window()) {
            SymSeq t = *e->underlying();
            t.set_window(*b->window());
            e = make_cat_symseq(e->dom(), e->cod(), make_symseq(std::move(t)), e->actions(), false);
        }
        monad_.z = z;
        monad_.e = e;
    }

    const ExpObject& exp() const { return e_; }

    /// The cell word z⃗ ⊕ x⃗ of an E-cell.
    Word word_of(const CellKey& ekey) const {
        Word w = ekey.word;
        for (Sort s : e_.words[ekey.out]) w.push_back(s + nz_);
        return w;
    }

    int encode(const NatOp& op, const CellKey& ekey) const {
        const Word w = word_of(ekey);
        const Sort y = e_.outs[ekey.out];
        std::vector<Elem> blocks;
        std::vector<int> sigma;
        for (std::size_t i = 0; i < op.inputs.size(); ++i) {
            const NatInput& in = op.inputs[i];
            Word outer_word{in.z};
            for (Sort s : e_.words[in.z]) outer_word.push_back(s + nz_);
            std::vector<Elem> inner{{{in.z}, 0}};
            Word u{in.z};
            sigma.push_back(static_cast<int>(in.zpos));
            for (std::size_t k = 0; k < in.ablocks.size(); ++k) {
                Elem a = in.ablocks[k];
                for (Sort& s : a.word) s += nz_;
                u.insert(u.end(), a.word.begin(), a.word.end());
                inner.push_back(std::move(a));
                for (std::size_t p : in.xpos[k]) sigma.push_back(static_cast<int>(p));
            }
            const Sort v = op.b.word[i];
            const int plain = evia_.plain->classify(u, v, {outer_word, in.zeta}, inner, Perm::identity(u.size()));
            blocks.push_back({u, evia_.quotient.apply_at(u, v, plain)});
        }
        const int plain = outer_.plain->classify(w, y, op.b, blocks, Perm(std::move(sigma)));
        return outer_.quotient.apply_at(w, y, plain);
    }

    NatOp decode(const CellKey& ekey, int label) const {
        const CellKey key{word_of(ekey), e_.outs[ekey.out]};
        const RawTuple& r = outer_.plain->representative(key, outer_.representative.at(key)[label]);
        NatOp op;
        op.b = {r.outer_word, r.outer};
        std::size_t off = 0;
        for (std::size_t j = 0; j < r.blocks.size(); ++j) {
            const Elem& blk = r.blocks[j];
            const CellKey bkey{blk.word, r.outer_word[j]};
            const RawTuple& t = evia_.plain->representative(bkey, evia_.representative.at(bkey)[blk.label]);
            auto pos = [&](std::size_t k) { return static_cast<std::size_t>(r.shuffle(static_cast<int>(off + t.shuffle(static_cast<int>(k))))); };
            NatInput in;
            in.z = t.outer_word[0];
            // ζ = ε ∘ ι for the evaluation label ε and the identity-block label ι.
            in.zeta = skel_.mult[in.z][t.outer][t.blocks[0].label];
            in.zpos = pos(0);
            std::size_t k = 1;
            for (std::size_t m = 1; m < t.blocks.size(); ++m) {
                Elem a = t.blocks[m];
                for (Sort& s : a.word) s -= nz_;
                std::vector<std::size_t> xs;
                for (std::size_t q = 0; q < a.word.size(); ++q) xs.push_back(pos(k++));
                in.ablocks.push_back(std::move(a));
                in.xpos.push_back(std::move(xs));
            }
            op.inputs.push_back(std::move(in));
            off += blk.word.size();
        }
        return op;
    }

    /// μ on one element of the plain composite E ∘ E.
    int multiply(const CellKey& key, const RawTuple& r) const {
        const CatSymSeq& e = *monad_.e;
        const NatOp outer = decode({r.outer_word, key.out}, r.outer);
        const std::size_t nzo = r.outer_word.size();
        std::vector<std::size_t> offsets;
        std::size_t off = 0;
        for (const Elem& b : r.blocks) {
            offsets.push_back(off);
            off += b.word.size();
        }
        const std::size_t nzr = key.word.size();
        auto outer_x = [&](std::size_t p) { return nzr + (p - nzo); };
        NatOp res;
        std::vector<Elem> bblocks;
        for (const NatInput& in : outer.inputs) {
            const std::size_t j = in.zpos;
            const CellKey bkey{r.blocks[j].word, r.outer_word[j]};
            const int moved = e.cod_act(bkey, in.zeta, r.blocks[j].label);
            const NatOp inner = decode(bkey, moved);
            const std::size_t nzi = bkey.word.size();
            bblocks.push_back(inner.b);
            for (const NatInput& sub : inner.inputs) {
                NatInput out;
                out.z = sub.z;
                out.zeta = sub.zeta;
                out.zpos = static_cast<std::size_t>(r.shuffle(static_cast<int>(offsets[j] + sub.zpos)));
                const Word& letters = e_.words[sub.z];
                for (std::size_t m = 0; m < sub.ablocks.size(); ++m) {
                    std::vector<Elem> feed;
                    std::vector<std::size_t> xs;
                    for (std::size_t p : sub.xpos[m]) {
                        const std::size_t k = p - nzi;
                        feed.push_back(in.ablocks[k]);
                        for (std::size_t q : in.xpos[k]) xs.push_back(outer_x(q));
                    }
                    const auto c = a_->compose(sub.ablocks[m].word, letters[m], sub.ablocks[m].label, feed);
                    if (!c) throw InternalError("hom-monad: right composite outside the window");
                    Word fw;
                    for (const Elem& f : feed) fw.insert(fw.end(), f.word.begin(), f.word.end());
                    out.ablocks.push_back({fw, *c});
                    out.xpos.push_back(std::move(xs));
                }
                res.inputs.push_back(std::move(out));
            }
        }
        const auto bc = b_->compose(outer.b.word, e_.outs[key.out], outer.b.label, bblocks);
        if (!bc) throw InternalError("hom-monad: left composite outside the window");
        Word bw;
        for (const Elem& f : bblocks) bw.insert(bw.end(), f.word.begin(), f.word.end());
        res.b = {bw, *bc};
        return encode(res, key);
    }

    int unit(int z, int arrow) const {
        const Word& w = e_.words[z];
        NatOp op;
        op.b = {{e_.outs[z]}, b_->unit(e_.outs[z])};
        NatInput in{z, arrow, {}, 0, {}};
        for (std::size_t k = 0; k < w.size(); ++k) {
            in.ablocks.push_back({{w[k]}, a_->unit(w[k])});
            in.xpos.push_back({1 + k});
        }
        op.inputs.push_back(std::move(in));
        return encode(op, {{z}, z});
    }

    HomMonad build() {
        CatMonad& m = monad_;
        m.square = cat_compose(m.e, m.e, m.e->underlying()->window());
        m.mu = through_quotient(m.square, m.e->underlying(),
                                [this](const CellKey& key, const RawTuple& r) { return multiply(key, r); });
        const CatSymSeqPtr id = cat_id(m.z);
        m.eta = SymSeqMap{id->underlying(), m.e->underlying(), {}};
        for (const auto& [key, cell] : id->underlying()->cells()) {
            std::vector<int> comp;
            for (std::size_t a = 0; a < cell.size(); ++a) comp.push_back(unit(key.out, static_cast<int>(a)));
            m.eta.components.emplace(key, std::move(comp));
        }
        return {e_, m};
    }

private:
    OperadPtr a_;
    OperadPtr b_;
    ExpObject e_;
    Skeleton skel_ = skeleton(e_.groupoid);
    Sort nz_ = 0;
    std::size_t n_ = 0;
    CatComposite evia_;
    CatComposite outer_;
    CatMonad monad_;
};

}  // namespace

HomMonad hom_monad(const OperadPtr& a, const OperadPtr& b, std::size_t length_bound) {
    HomMonadBuilder builder(a, b, length_bound);
    HomMonad h = builder.build();
    const LawReport r1 = check_cat_map(h.monad.mu, *h.monad.square.result, *h.monad.e);
    if (!r1.ok) throw ValidationError("hom-monad multiplication is not natural: " + r1.law, r1.witness);
    const LawReport r2 = check_cat_map(h.monad.eta, *cat_id(h.monad.z), *h.monad.e);
    if (!r2.ok) throw ValidationError("hom-monad unit is not natural: " + r2.law, r2.witness);
    return h;
}

OperadPtr operad_of_monad(const CatMonad& m, std::string name) {
    if (!is_skeletal(m.z)) throw InputError("operad of a monad: groupoid must have one object per component");
    const CatComposite& sq = m.square;
    auto mu = [&m, &sq](const CellKey& key, const RawTuple& raw) {
        const int p = sq.plain->classify_canonical(key, raw);
        return m.mu.apply(key, sq.quotient.apply(key, p));
    };
    auto eta = [&m](Sort z) { return m.eta.apply({{z}, z}, 0); };
    return make_operad(m.e->underlying(), mu, eta, std::move(name));
}

OperadPtr exponential_operad(const OperadPtr& a, const OperadPtr& b, std::size_t length_bound) {
    return operad_of_monad(hom_monad(a, b, length_bound).monad, b->name() + "^" + a->name());
}

OperadPtr product_operad(const OperadPtr& a, const OperadPtr& b) {
    const SymSeqPtr carrier = sum_symseq(a->carrier(), b->carrier());
    const Sort na = static_cast<Sort>(a->sorts().size());
    auto mu = [a, b, na](const CellKey& key, const RawTuple& raw) {
        if (key.out < na) return a->mu().apply(key, a->square().classify_canonical(key, raw));
        auto down = [na](Word w) {
            for (Sort& s : w) s -= na;
            return w;
        };
        RawTuple r = raw;
        r.outer_word = down(r.outer_word);
        for (Elem& e : r.blocks) e.word = down(e.word);
        const CellKey k{down(key.word), key.out - na};
        return b->mu().apply(k, b->square().classify_canonical(k, r));
    };
    auto eta = [a, b, na](Sort s) { return s < na ? a->unit(s) : b->unit(s - na); };
    return make_operad(carrier, mu, eta, a->name() + "*" + b->name());
}

namespace {

/// Equivariant bijections between two cells, determined by the images of
/// orbit representatives.
std::vector<std::vector<int>> equivariant_bijections(const YoungSet& a, const YoungSet& b) {
    std::vector<std::vector<int>> out;
    if (a.size() != b.size()) return out;
    const auto orbits = a.orbits();
    const StabilizerTable& st = a.stab();
    std::vector<int> f(a.size(), -1);
    std::vector<char> used(b.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t o) {
        if (o == orbits.size()) {
            out.push_back(f);
            return;
        }
        const int r = orbits[o][0];
        for (std::size_t t = 0; t < b.size(); ++t) {
            if (used[t]) continue;
            std::vector<int> g = f;
            std::vector<char> u = used;
            bool ok = true;
            for (std::size_t e = 0; e < st.order() && ok; ++e) {
                const int x = a.act(e, r);
                const int y = b.act(e, static_cast<int>(t));
                if (g[x] == -1) {
                    if (u[y]) ok = false;
                    g[x] = y;
                    u[y] = 1;
                } else if (g[x] != y) {
                    ok = false;
                }
            }
            if (!ok) continue;
            std::swap(f, g);
            std::swap(used, u);
            rec(o + 1);
            std::swap(f, g);
            std::swap(used, u);
        }
    };
    rec(0);
    return out;
}

}  // namespace

std::optional<SymSeqMap> operad_iso(const OperadPtr& a, const OperadPtr& b) {
    const SymSeqPtr& ca = a->carrier();
    const SymSeqPtr& cb = b->carrier();
    if (ca->dom_size() != cb->dom_size() || ca->window() != cb->window() || ca->cells().size() != cb->cells().size())
        return std::nullopt;
    std::vector<CellKey> keys;
    for (const auto& [k, c] : ca->cells()) {
        const YoungSet* d = cb->find(k);
        if (!d || d->size() != c.size()) return std::nullopt;
        keys.push_back(k);
    }
    std::stable_sort(keys.begin(), keys.end(),
                     [](const CellKey& x, const CellKey& y) { return x.word.size() < y.word.size(); });
    std::map<CellKey, std::vector<int>> f;
    // Square elements whose cells are all assigned once `keys[i]` is.
    std::vector<std::vector<std::pair<CellKey, int>>> checks(keys.size());
    std::map<CellKey, std::size_t> order;
    for (std::size_t i = 0; i < keys.size(); ++i) order[keys[i]] = i;
    for (const auto& [key, cell] : a->square().result()->cells())
        for (std::size_t l = 0; l < cell.size(); ++l) {
            const RawTuple& r = a->square().representative(key, static_cast<int>(l));
            std::size_t last = order.at(key);
            last = std::max(last, order.at({r.outer_word, key.out}));
            for (std::size_t j = 0; j < r.blocks.size(); ++j)
                last = std::max(last, order.at({r.blocks[j].word, r.outer_word[j]}));
            checks[last].push_back({key, static_cast<int>(l)});
        }
    auto consistent = [&](std::size_t i) {
        const CellKey& k = keys[i];
        if (k.word.size() == 1 && k.word[0] == k.out && f.at(k)[a->unit(k.out)] != b->unit(k.out)) return false;
        for (const auto& [key, l] : checks[i]) {
            RawTuple r = a->square().representative(key, l);
            const int lhs = f.at(key)[a->mu().apply(key, l)];
            r.outer = f.at({r.outer_word, key.out})[r.outer];
            for (std::size_t j = 0; j < r.blocks.size(); ++j)
                r.blocks[j].label = f.at({r.blocks[j].word, r.outer_word[j]})[r.blocks[j].label];
            if (b->mu().apply(key, b->square().classify_canonical(key, r)) != lhs) return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == keys.size()) return true;
        for (auto& cand : equivariant_bijections(*ca->find(keys[i]), *cb->find(keys[i]))) {
            f[keys[i]] = std::move(cand);
            if (consistent(i) && rec(i + 1)) return true;
        }
        f.erase(keys[i]);
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return SymSeqMap{ca, cb, f};
}

}  // namespace opbim
