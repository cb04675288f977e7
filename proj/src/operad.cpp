#include "opbim/operad.hpp"

#include <set>

#include "opbim/errors.hpp"

namespace opbim {

int Operad::unit(Sort x) const { return eta_.apply({{x}, x}, 0); }

bool Operad::is_unit(const CellKey& key, int label) const {
    return key.word.size() == 1 && key.word[0] == key.out && label == unit(key.out);
}

std::optional<int> Operad::compose(const Word& y, Sort z, int g, const std::vector<Elem>& blocks) const {
    std::vector<Word> words;
    for (const Elem& b : blocks) words.push_back(b.word);
    const Word x = concat(words);
    if (!carrier_->known_arity(x.size())) return std::nullopt;
    const int e = square_->classify(x, z, {y, g}, blocks, Perm::identity(x.size()));
    return mu_.apply_at(x, z, e);
}

namespace {

LawReport fail(std::string law, std::string witness) { return {false, std::move(law), std::move(witness)}; }

}  // namespace

LawReport check_monad_laws(const Operad& a) {
    const SymSeqPtr& c = a.carrier();
    const auto& n = a.window();
    try {
        a.mu().validate();
    } catch (const ValidationError& e) {
        return fail("mu equivariance", e.witness());
    }
    try {
        a.eta().validate();
    } catch (const ValidationError& e) {
        return fail("eta equivariance", e.witness());
    }
    const Composite& aa = a.square();
    const SymSeqMap id_c = identity_map(c);

    const Composite aa_a = compose_symseq(aa.result(), c, n);
    const Composite a_aa = compose_symseq(c, aa.result(), n);
    const SymSeqMap alpha = associator(aa, aa_a, aa, a_aa);
    const SymSeqMap lhs = vcompose(a.mu(), hcompose_maps(a.mu(), id_c, aa_a, aa));
    const SymSeqMap rhs = vcompose(a.mu(), vcompose(hcompose_maps(id_c, a.mu(), a_aa, aa), alpha));
    if (auto d = first_difference(lhs, rhs); !d.empty()) return fail("associativity", d);

    const SymSeqPtr id = id_symseq(a.sorts());
    const Composite id_a = compose_symseq(id, c, n);
    const Composite a_id = compose_symseq(c, id, n);
    const SymSeqMap left = vcompose(a.mu(), hcompose_maps(a.eta(), id_c, id_a, aa));
    if (auto d = first_difference(left, left_unitor(id_a)); !d.empty()) return fail("left unit", d);
    const SymSeqMap right = vcompose(a.mu(), hcompose_maps(id_c, a.eta(), a_id, aa));
    if (auto d = first_difference(right, right_unitor(a_id)); !d.empty()) return fail("right unit", d);
    return {};
}

OperadPtr make_operad(SymSeqPtr carrier, SymSeqMap mu, SymSeqMap eta, std::string name, bool validate) {
    if (carrier->dom_sorts() != carrier->cod_sorts()) throw InputError("operad carrier must be an endo-sequence");
    if (carrier->window() && carrier->has_nullary())
        throw InputError("an operad with nullary operations must be finitely supported (no arity window)");
    auto op = std::make_shared<Operad>();
    op->carrier_ = carrier;
    op->square_ = std::make_shared<const Composite>(compose_symseq(carrier, carrier, carrier->window()));
    const SymSeq& sq = *op->square_->result();
    for (const auto& [key, cell] : sq.cells()) {
        auto it = mu.components.find(key);
        if (it == mu.components.end() || it->second.size() != cell.size())
            throw InputError("mu has no component of the right size at " + to_string(key));
    }
    mu.source = op->square_->result();
    mu.target = carrier;
    eta.source = id_symseq(carrier->dom_sorts());
    eta.target = carrier;
    op->mu_ = std::move(mu);
    op->eta_ = std::move(eta);
    op->name_ = std::move(name);
    if (validate) {
        const LawReport r = check_monad_laws(*op);
        if (!r.ok) throw ValidationError("operad " + op->name_ + ": " + r.law + " fails", r.witness);
    }
    return op;
}

OperadPtr make_operad(SymSeqPtr carrier, const std::function<int(const CellKey&, const RawTuple&)>& mu,
                      const std::function<int(Sort)>& eta, std::string name, bool validate) {
    const Composite sq = compose_symseq(carrier, carrier, carrier->window());
    SymSeqMap m{sq.result(), carrier, {}};
    for (const auto& [key, cell] : sq.result()->cells()) {
        std::vector<int> comp(cell.size());
        for (std::size_t l = 0; l < cell.size(); ++l) comp[l] = mu(key, sq.representative(key, static_cast<int>(l)));
        m.components.emplace(key, std::move(comp));
    }
    SymSeqMap e{id_symseq(carrier->dom_sorts()), carrier, {}};
    for (std::size_t x = 0; x < carrier->dom_size(); ++x) {
        const Sort s = static_cast<Sort>(x);
        e.components.emplace(CellKey{{s}, s}, std::vector<int>{eta(s)});
    }
    return make_operad(std::move(carrier), std::move(m), std::move(e), std::move(name), validate);
}

// ---------------------------------------------------------------------------
// Morphisms

Word apply_sort_map(const Word& w, const std::vector<Sort>& u) {
    Word out;
    out.reserve(w.size());
    for (Sort s : w) out.push_back(u.at(s));
    return out;
}

SymSeqPtr reindex(const SymSeqPtr& b, const std::vector<Sort>& u_in, const std::vector<std::string>& in_sorts,
                  const std::vector<Sort>& u_out, const std::vector<std::string>& out_sorts) {
    if (u_in.size() != in_sorts.size() || u_out.size() != out_sorts.size())
        throw InputError("reindex: sort map size mismatch");
    for (Sort s : u_in)
        if (s < 0 || s >= static_cast<Sort>(b->dom_size())) throw InputError("reindex: sort map out of range");
    for (Sort s : u_out)
        if (s < 0 || s >= static_cast<Sort>(b->cod_size())) throw InputError("reindex: sort map out of range");
    std::vector<std::vector<Sort>> pre_in(b->dom_size());
    std::vector<std::vector<Sort>> pre_out(b->cod_size());
    for (std::size_t x = 0; x < u_in.size(); ++x) pre_in[u_in[x]].push_back(static_cast<Sort>(x));
    for (std::size_t x = 0; x < u_out.size(); ++x) pre_out[u_out[x]].push_back(static_cast<Sort>(x));

    SymSeq out(in_sorts, out_sorts);
    out.set_window(b->window());
    for (const auto& [key, cell] : b->cells()) {
        if (pre_out[key.out].empty()) continue;
        // every canonical word over the new sorts mapping onto key.word
        std::set<Word> words;
        Word w(key.word.size());
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == w.size()) {
                words.insert(canonical_word(w).word);
                return;
            }
            for (Sort s : pre_in[key.word[i]]) {
                w[i] = s;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
        for (const Word& cw : words) {
            const Word uw = apply_sort_map(cw, u_in);
            std::map<std::size_t, std::vector<int>> action;
            for (std::size_t p : young_generators(cw)) {
                std::vector<int> m(cell.size());
                for (std::size_t l = 0; l < cell.size(); ++l)
                    m[l] = b->pull(uw, uw, Perm::adjacent(cw.size(), p), key.out, static_cast<int>(l));
                action.emplace(p, std::move(m));
            }
            for (Sort x : pre_out[key.out]) out.set_cell({cw, x}, YoungSet(cw, cell.labels(), action));
        }
    }
    return make_symseq(std::move(out));
}

SymSeqPtr reindex(const SymSeqPtr& b, const std::vector<Sort>& u, const std::vector<std::string>& new_sorts) {
    if (b->dom_sorts() != b->cod_sorts()) throw InputError("reindex: sequence is not an endo-sequence");
    return reindex(b, u, new_sorts, u, new_sorts);
}

LawReport check_morphism(const OperadMorphism& phi) {
    const Operad& a = *phi.source;
    const Operad& b = *phi.target;
    const auto& u = phi.sort_map;
    try {
        phi.xi.validate();
    } catch (const ValidationError& e) {
        return fail("morphism equivariance", e.witness());
    }
    for (std::size_t x = 0; x < a.sorts().size(); ++x) {
        const Sort s = static_cast<Sort>(x);
        if (phi.xi.apply({{s}, s}, a.unit(s)) != b.unit(u[s])) return fail("morphism unit", "sort " + a.sorts()[x]);
    }
    const Composite& sq = a.square();
    for (const auto& [key, cell] : sq.result()->cells())
        for (std::size_t l = 0; l < cell.size(); ++l) {
            const RawTuple& t = sq.representative(key, static_cast<int>(l));
            const int lhs = phi.xi.apply(key, a.mu().apply(key, static_cast<int>(l)));
            const int g = phi.xi.apply({t.outer_word, key.out}, t.outer);
            std::vector<Elem> blocks;
            std::vector<Word> words;
            for (std::size_t j = 0; j < t.blocks.size(); ++j) {
                const Elem& f = t.blocks[j];
                blocks.push_back({apply_sort_map(f.word, u), phi.xi.apply({f.word, t.outer_word[j]}, f.label)});
                words.push_back(blocks.back().word);
            }
            const auto theta = b.compose(apply_sort_map(t.outer_word, u), u[key.out], g, blocks);
            if (!theta) continue;
            const int rhs = b.carrier()->pull(apply_sort_map(key.word, u), concat(words), t.shuffle, u[key.out], *theta);
            if (lhs != rhs) return fail("morphism multiplication", to_string(key) + " element " + cell.label(l));
        }
    return {};
}

OperadMorphism make_morphism(OperadPtr source, OperadPtr target, std::vector<Sort> sort_map, SymSeqMap xi) {
    if (sort_map.size() != source->sorts().size()) throw InputError("morphism: sort map size mismatch");
    xi.source = source->carrier();
    xi.target = reindex(target->carrier(), sort_map, source->sorts());
    OperadMorphism phi{std::move(source), std::move(target), std::move(sort_map), std::move(xi)};
    const LawReport r = check_morphism(phi);
    if (!r.ok) throw ValidationError("operad morphism: " + r.law + " fails", r.witness);
    return phi;
}

OperadMorphism identity_morphism(const OperadPtr& a) {
    std::vector<Sort> u(a->sorts().size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = static_cast<Sort>(i);
    return make_morphism(a, a, u, identity_map(a->carrier()));
}

OperadMorphism compose_morphisms(const OperadMorphism& psi, const OperadMorphism& phi) {
    if (phi.target != psi.source) throw InputError("morphism composite: middle operads differ");
    std::vector<Sort> u;
    for (Sort s : phi.sort_map) u.push_back(psi.sort_map[s]);
    SymSeqMap xi{phi.source->carrier(), nullptr, {}};
    const SymSeq& c = *psi.target->carrier();
    for (const auto& [key, comp] : phi.xi.components) {
        const Word uw = apply_sort_map(key.word, phi.sort_map);
        const CanonicalForm cf = canonical_word(uw);
        const Word vuw = apply_sort_map(uw, psi.sort_map);
        const Word vc = apply_sort_map(cf.word, psi.sort_map);
        const Sort ux = phi.sort_map[key.out];
        std::vector<int> out;
        for (int l : comp) {
            const int m = psi.xi.apply({cf.word, ux}, l);
            out.push_back(c.pull(vuw, vc, cf.transport.inverse(), psi.sort_map[ux], m));
        }
        xi.components.emplace(key, std::move(out));
    }
    return make_morphism(phi.source, psi.target, std::move(u), std::move(xi));
}

}  // namespace opbim
