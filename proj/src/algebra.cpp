#include <algorithm>
#include <set>

#include "opbim/csp.hpp"
#include "opbim/errors.hpp"
#include "opbim/operad.hpp"

namespace opbim {

namespace {

// Calls f(tuple) for every tuple with tuple[i] < sizes[i], first index fastest.
template <class F>
void for_each_tuple(const std::vector<std::size_t>& sizes, F&& f) {
    for (std::size_t s : sizes)
        if (s == 0) return;
    std::vector<int> t(sizes.size(), 0);
    for (;;) {
        f(static_cast<const std::vector<int>&>(t));
        std::size_t i = 0;
        while (i < t.size() && ++t[i] == static_cast<int>(sizes[i])) t[i++] = 0;
        if (i == t.size()) return;
    }
}

std::vector<std::size_t> word_sizes(const SortedFamily& t, const Word& w) {
    std::vector<std::size_t> s;
    for (Sort x : w) s.push_back(t.size(x));
    return s;
}

std::string tuple_text(const SortedFamily& t, const Word& w, const std::vector<int>& tuple) {
    std::string out = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) out += (i ? "," : "") + t.carrier[w[i]][tuple[i]];
    return out + ")";
}

/// One way of grafting labelled blocks below every input of an outer cell.
struct Grafting {
    const CellKey* outer;
    int g;
    std::vector<const CellKey*> cells;
    std::vector<int> labels;
};

// Every (g, blocks) with total arity inside the window, in a fixed order.
template <class F>
void for_each_grafting(const Operad& op, F&& f) {
    const SymSeq& c = *op.carrier();
    std::vector<std::vector<const CellKey*>> by_out(op.sorts().size());
    for (const auto& [key, cell] : c.cells()) by_out[key.out].push_back(&key);
    for (const auto& [key, cell] : c.cells()) {
        const std::size_t m = key.word.size();
        Grafting gr{&key, 0, std::vector<const CellKey*>(m), std::vector<int>(m)};
        auto rec = [&](auto&& self, std::size_t j, std::size_t arity) -> void {
            if (j == m) {
                auto lrec = [&](auto&& lself, std::size_t k) -> void {
                    if (k == m) {
                        for (std::size_t g = 0; g < cell.size(); ++g) {
                            gr.g = static_cast<int>(g);
                            f(static_cast<const Grafting&>(gr));
                        }
                        return;
                    }
                    const std::size_t n = c.find(*gr.cells[k])->size();
                    for (std::size_t l = 0; l < n; ++l) {
                        gr.labels[k] = static_cast<int>(l);
                        lself(lself, k + 1);
                    }
                };
                lrec(lrec, 0);
                return;
            }
            for (const CellKey* b : by_out[key.word[j]]) {
                if (!c.known_arity(arity + b->word.size())) continue;
                gr.cells[j] = b;
                self(self, j + 1, arity + b->word.size());
            }
        };
        rec(rec, 0, 0);
    }
}

std::vector<Elem> grafting_blocks(const Grafting& gr) {
    std::vector<Elem> blocks;
    for (std::size_t j = 0; j < gr.cells.size(); ++j) blocks.push_back({gr.cells[j]->word, gr.labels[j]});
    return blocks;
}

Word grafting_word(const Grafting& gr) {
    Word w;
    for (const CellKey* b : gr.cells) w.insert(w.end(), b->word.begin(), b->word.end());
    return w;
}

}  // namespace

Algebra::Algebra(OperadPtr op, SortedFamily carrier, std::map<CellKey, std::vector<int>> tables)
    : op_(std::move(op)), carrier_(std::move(carrier)), tables_(std::move(tables)) {
    if (carrier_.sorts.size() != op_->sorts().size() || carrier_.carrier.size() != carrier_.sorts.size())
        throw InputError("algebra: carrier sorts do not match the operad");
    for (const auto& [key, cell] : op_->carrier()->cells()) {
        auto it = tables_.find(key);
        const std::size_t expect = cell.size() * tuple_count(key.word);
        if (it == tables_.end() || it->second.size() != expect)
            throw InputError("algebra: missing or malformed table at " + to_string(key));
        for (int v : it->second)
            if (v < -1 || v >= static_cast<int>(carrier_.size(key.out)))
                throw InputError("algebra: table value out of range at " + to_string(key));
    }
    if (tables_.size() != op_->carrier()->cells().size()) throw InputError("algebra: table for a cell the operad lacks");
}

std::size_t Algebra::tuple_count(const Word& w) const {
    std::size_t n = 1;
    for (Sort s : w) n *= carrier_.size(s);
    return n;
}

std::size_t Algebra::tuple_index(const Word& w, const std::vector<int>& tuple) const {
    std::size_t idx = 0, scale = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
        idx += static_cast<std::size_t>(tuple[i]) * scale;
        scale *= carrier_.size(w[i]);
    }
    return idx;
}

int Algebra::act(const CellKey& key, int label, const std::vector<int>& tuple) const {
    auto it = tables_.find(key);
    if (it == tables_.end()) throw InputError("algebra: no operation at " + to_string(key));
    return it->second[static_cast<std::size_t>(label) * tuple_count(key.word) + tuple_index(key.word, tuple)];
}

int Algebra::act_at(const Word& word, Sort out, int label, const std::vector<int>& tuple) const {
    const CanonicalForm cf = canonical_word(word);
    const Perm inv = cf.transport.inverse();
    std::vector<int> t(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) t[i] = tuple[inv(i)];
    return act({cf.word, out}, label, t);
}

LawReport check_algebra(const Algebra& alg) {
    const Operad& op = *alg.operad();
    const SortedFamily& T = alg.carrier();
    const SymSeq& c = *op.carrier();
    LawReport report;
    auto fail = [&](std::string law, std::string witness) {
        if (report.ok) report = {false, std::move(law), std::move(witness)};
    };

    for (const auto& [key, cell] : c.cells()) {
        const auto sizes = word_sizes(T, key.word);
        for (std::size_t p : young_generators(key.word))
            for (std::size_t l = 0; l < cell.size() && report.ok; ++l) {
                const int moved = cell.act_generator(p, static_cast<int>(l));
                for_each_tuple(sizes, [&](const std::vector<int>& t) {
                    std::vector<int> swapped = t;
                    std::swap(swapped[p], swapped[p + 1]);
                    const int a = alg.act(key, moved, t);
                    const int b = alg.act(key, static_cast<int>(l), swapped);
                    if (a != b)
                        fail("equivariance", to_string(key) + " " + cell.label(l) + " swap " + std::to_string(p) + " on " +
                                                 tuple_text(T, key.word, t));
                });
            }
    }
    if (!report.ok) return report;

    for (std::size_t x = 0; x < T.sorts.size() && report.ok; ++x) {
        const Sort s = static_cast<Sort>(x);
        for (std::size_t t = 0; t < T.size(s); ++t)
            if (alg.act({{s}, s}, op.unit(s), {static_cast<int>(t)}) != static_cast<int>(t))
                fail("unit", "sort " + T.sorts[x] + " element " + T.carrier[x][t]);
    }
    if (!report.ok) return report;

    for_each_grafting(op, [&](const Grafting& gr) {
        if (!report.ok) return;
        const Word x = grafting_word(gr);
        const auto theta = op.compose(gr.outer->word, gr.outer->out, gr.g, grafting_blocks(gr));
        if (!theta) return;
        for_each_tuple(word_sizes(T, x), [&](const std::vector<int>& t) {
            if (!report.ok) return;
            const int lhs = alg.act_at(x, gr.outer->out, *theta, t);
            std::vector<int> values;
            std::size_t off = 0;
            for (std::size_t j = 0; j < gr.cells.size(); ++j) {
                const std::size_t len = gr.cells[j]->word.size();
                std::vector<int> slice(t.begin() + off, t.begin() + off + len);
                off += len;
                values.push_back(alg.act(*gr.cells[j], gr.labels[j], slice));
                if (values.back() < 0) return;
            }
            const int rhs = alg.act(*gr.outer, gr.g, values);
            if (lhs < 0 || rhs < 0) return;
            if (lhs != rhs) {
                std::string w = c.find(*gr.outer)->label(gr.g) + "(";
                for (std::size_t j = 0; j < gr.cells.size(); ++j)
                    w += (j ? "," : "") + c.find(*gr.cells[j])->label(gr.labels[j]);
                fail("associativity", w + ") on " + tuple_text(T, x, t));
            }
        });
    });
    return report;
}

Algebra make_algebra(OperadPtr op, SortedFamily carrier, std::map<CellKey, std::vector<int>> tables) {
    for (const auto& [key, t] : tables)
        for (int v : t)
            if (v < 0) throw InputError("algebra: undefined operation at " + to_string(key));
    Algebra alg(std::move(op), std::move(carrier), std::move(tables));
    const LawReport r = check_algebra(alg);
    if (!r.ok) throw ValidationError("algebra: " + r.law + " fails", r.witness);
    return alg;
}

Algebra make_algebra(OperadPtr op, SortedFamily carrier,
                     const std::function<int(const CellKey&, int, const std::vector<int>&)>& act) {
    std::map<CellKey, std::vector<int>> tables;
    for (const auto& [key, cell] : op->carrier()->cells()) {
        std::vector<int>& tab = tables[key];
        for (std::size_t l = 0; l < cell.size(); ++l)
            for_each_tuple(word_sizes(carrier, key.word),
                           [&](const std::vector<int>& t) { tab.push_back(act(key, static_cast<int>(l), t)); });
    }
    return make_algebra(std::move(op), std::move(carrier), std::move(tables));
}

FreeAlgebra free_algebra(const OperadPtr& op, const SortedFamily& t) {
    if (t.sorts.size() != op->sorts().size()) throw InputError("free algebra: family sorts do not match the operad");
    AnalyticValue value = analytic_eval(op->carrier(), t);
    const SortedFamily& fam = value.family();
    std::map<CellKey, std::vector<int>> tables;
    for (const auto& [key, cell] : op->carrier()->cells()) {
        std::vector<int>& tab = tables[key];
        for (std::size_t l = 0; l < cell.size(); ++l)
            for_each_tuple(word_sizes(fam, key.word), [&](const std::vector<int>& e) {
                std::vector<Elem> blocks;
                Word concat_word;
                std::vector<int> concat_tuple;
                for (std::size_t i = 0; i < e.size(); ++i) {
                    const auto& rep = value.representative(key.word[i], e[i]);
                    blocks.push_back({rep.cell.word, rep.label});
                    concat_word.insert(concat_word.end(), rep.cell.word.begin(), rep.cell.word.end());
                    concat_tuple.insert(concat_tuple.end(), rep.tuple.begin(), rep.tuple.end());
                }
                const auto theta = op->compose(key.word, key.out, static_cast<int>(l), blocks);
                tab.push_back(theta ? value.classify(concat_word, key.out, *theta, concat_tuple) : -1);
            });
    }
    std::vector<std::vector<int>> unit(t.sorts.size());
    for (std::size_t x = 0; x < t.sorts.size(); ++x) {
        const Sort s = static_cast<Sort>(x);
        for (std::size_t e = 0; e < t.size(s); ++e)
            unit[x].push_back(value.classify({s}, s, op->unit(s), {static_cast<int>(e)}));
    }
    Algebra alg(op, fam, std::move(tables));
    return {std::move(alg), std::move(value), std::move(unit)};
}

// ---------------------------------------------------------------------------
// Enumeration

EnumerationResult enumerate_algebras(const OperadPtr& op, const std::vector<std::size_t>& sizes,
                                     const EnumerationOptions& opts, const std::function<void(const Algebra&)>& each) {
    if (sizes.size() != op->sorts().size()) throw InputError("enumerate algebras: one carrier size per sort required");
    const SortedFamily T = SortedFamily::of_sizes(op->sorts(), sizes);
    const AnalyticValue V = analytic_eval(op->carrier(), T);
    const SymSeq& c = *op->carrier();

    // one variable per element of A(T): its value under the action
    Csp csp;
    std::vector<std::vector<int>> var_of(T.sorts.size());
    for (std::size_t z = 0; z < T.sorts.size(); ++z)
        for (std::size_t e = 0; e < V.family().size(static_cast<Sort>(z)); ++e)
            var_of[z].push_back(csp.add_variable(static_cast<int>(T.size(static_cast<Sort>(z)))));
    std::vector<int> var_sort;
    for (std::size_t z = 0; z < var_of.size(); ++z)
        for (std::size_t e = 0; e < var_of[z].size(); ++e) var_sort.push_back(static_cast<int>(z));

    // class_table[cell][label * |T^w| + tuple index] = variable
    std::map<CellKey, std::vector<int>> class_table;
    for (const auto& [key, cell] : c.cells()) {
        auto& tab = class_table[key];
        for (std::size_t l = 0; l < cell.size(); ++l)
            for_each_tuple(word_sizes(T, key.word), [&](const std::vector<int>& t) {
                tab.push_back(var_of[key.out][V.classify(key.word, key.out, static_cast<int>(l), t)]);
            });
    }
    auto var_at = [&class_table, &T](const CellKey& key, int l, const std::vector<int>& t) {
        std::size_t idx = 0, scale = 1;
        for (std::size_t i = 0; i < t.size(); ++i) {
            idx += static_cast<std::size_t>(t[i]) * scale;
            scale *= T.size(key.word[i]);
        }
        return class_table.at(key)[static_cast<std::size_t>(l) * scale + idx];
    };

    for (std::size_t x = 0; x < T.sorts.size(); ++x) {
        const Sort s = static_cast<Sort>(x);
        for (std::size_t t = 0; t < T.size(s); ++t)
            csp.fix(var_of[x][V.classify({s}, s, op->unit(s), {static_cast<int>(t)})], static_cast<int>(t));
    }

    // associativity: value(class(θ(g; f), t)) = value(class(g, (value(class(f_j, t_j)))_j))
    struct Equation {
        int lhs;
        const CellKey* outer;
        int g;
        std::vector<int> inner;  // variable, or -(constant + 1) for a unit block
    };
    std::vector<Equation> eqs;
    std::set<std::vector<int>> seen;
    std::map<const CellKey*, int> cell_id;
    for (const auto& [key, cell] : c.cells()) cell_id.emplace(&key, static_cast<int>(cell_id.size()));
    for_each_grafting(*op, [&](const Grafting& gr) {
        if (op->is_unit(*gr.outer, gr.g)) return;
        bool all_units = true;
        for (std::size_t j = 0; j < gr.cells.size(); ++j) all_units = all_units && op->is_unit(*gr.cells[j], gr.labels[j]);
        if (all_units) return;
        const Word x = grafting_word(gr);
        const auto theta = op->compose(gr.outer->word, gr.outer->out, gr.g, grafting_blocks(gr));
        if (!theta) return;
        for_each_tuple(word_sizes(T, x), [&](const std::vector<int>& t) {
            Equation eq{var_of[gr.outer->out][V.classify(x, gr.outer->out, *theta, t)], gr.outer, gr.g, {}};
            std::size_t off = 0;
            for (std::size_t j = 0; j < gr.cells.size(); ++j) {
                const std::size_t len = gr.cells[j]->word.size();
                std::vector<int> slice(t.begin() + off, t.begin() + off + len);
                off += len;
                eq.inner.push_back(op->is_unit(*gr.cells[j], gr.labels[j]) ? -(slice[0] + 1)
                                                                            : var_at(*gr.cells[j], gr.labels[j], slice));
            }
            std::vector<int> code{eq.lhs, cell_id.at(gr.outer), eq.g};
            code.insert(code.end(), eq.inner.begin(), eq.inner.end());
            if (seen.insert(std::move(code)).second) eqs.push_back(std::move(eq));
        });
    });
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        csp.add_constraint([&eqs, &var_at, i](const Csp::View& v) -> Csp::Outcome {
            const Equation& eq = eqs[i];
            std::vector<int> values(eq.inner.size());
            for (std::size_t j = 0; j < eq.inner.size(); ++j) {
                if (eq.inner[j] < 0) {
                    values[j] = -eq.inner[j] - 1;
                    continue;
                }
                const auto val = v.value(eq.inner[j]);
                if (!val) return Csp::Outcome::unknown();
                values[j] = *val;
            }
            const int rhs = var_at(*eq.outer, eq.g, values);
            const auto a = v.value(eq.lhs);
            const auto b = v.value(rhs);
            if (a && b) return *a == *b ? Csp::Outcome::yes() : Csp::Outcome::no();
            if (a) return Csp::Outcome::force(rhs, *a);
            if (b) return Csp::Outcome::force(eq.lhs, *b);
            return Csp::Outcome::unknown();
        });
    }

    // relabellings of the carrier, as permutations of the variables
    std::vector<std::vector<int>> relabel;
    std::vector<std::vector<std::vector<int>>> relabel_values;  // per relabelling, per sort
    bool orbits = opts.orbits;
    if (orbits) {
        std::uint64_t group = 1;
        for (std::size_t s : sizes) {
            group *= factorial(static_cast<unsigned>(s));
            if (group > opts.orbit_limit) orbits = false;
        }
    }
    if (orbits) {
        std::vector<std::vector<Perm>> per_sort;
        for (std::size_t s : sizes) per_sort.push_back(all_permutations(s));
        std::vector<std::size_t> choice(sizes.size(), 0);
        for (;;) {
            std::vector<std::vector<int>> pi;
            for (std::size_t x = 0; x < sizes.size(); ++x) pi.push_back(per_sort[x][choice[x]].images());
            std::vector<int> perm(csp.variable_count());
            for (std::size_t z = 0; z < var_of.size(); ++z)
                for (std::size_t e = 0; e < var_of[z].size(); ++e) {
                    const auto& rep = V.representative(static_cast<Sort>(z), static_cast<int>(e));
                    std::vector<int> moved;
                    for (std::size_t i = 0; i < rep.tuple.size(); ++i) moved.push_back(pi[rep.cell.word[i]][rep.tuple[i]]);
                    perm[var_of[z][e]] = var_at(rep.cell, rep.label, moved);
                }
            relabel.push_back(std::move(perm));
            relabel_values.push_back(std::move(pi));
            std::size_t i = 0;
            while (i < choice.size() && ++choice[i] == per_sort[i].size()) choice[i++] = 0;
            if (i == choice.size()) break;
        }
    }

    EnumerationResult result;
    std::set<std::vector<int>> orbit_reps;
    result.count = csp.solve(
        [&](const std::vector<int>& values) {
            if (orbits) {
                std::vector<int> best = values, img(values.size());
                for (std::size_t r = 0; r < relabel.size(); ++r) {
                    for (std::size_t v = 0; v < values.size(); ++v)
                        img[relabel[r][v]] = relabel_values[r][var_sort[v]][values[v]];
                    best = std::min(best, img);
                }
                orbit_reps.insert(std::move(best));
            }
            if (each) {
                std::map<CellKey, std::vector<int>> tabs = class_table;
                for (auto& [key, tab] : tabs)
                    for (int& e : tab) e = values[e];
                each(Algebra(op, T, std::move(tabs)));
            }
            return true;
        },
        opts.budget);
    result.orbits = orbits ? orbit_reps.size() : 0;
    return result;
}

std::uint64_t count_algebra_maps(const Algebra& a, const Algebra& b, std::uint64_t budget) {
    if (a.operad() != b.operad()) throw InputError("algebra maps: algebras over different operads");
    const SortedFamily& Ta = a.carrier();
    const SortedFamily& Tb = b.carrier();
    Csp csp;
    std::vector<std::vector<int>> h(Ta.sorts.size());
    for (std::size_t x = 0; x < Ta.sorts.size(); ++x)
        for (std::size_t t = 0; t < Ta.size(static_cast<Sort>(x)); ++t)
            h[x].push_back(csp.add_variable(static_cast<int>(Tb.size(static_cast<Sort>(x)))));
    for (const auto& [key_ref, cell] : a.operad()->carrier()->cells()) {
        const CellKey* key = &key_ref;
        for (std::size_t l = 0; l < cell.size(); ++l)
            for_each_tuple(word_sizes(Ta, key->word), [&](const std::vector<int>& t) {
                const int r = a.act(*key, static_cast<int>(l), t);
                if (r < 0) return;
                std::vector<int> inputs;
                for (std::size_t i = 0; i < t.size(); ++i) inputs.push_back(h[key->word[i]][t[i]]);
                const int lhs = h[key->out][r];
                const int label = static_cast<int>(l);
                csp.add_constraint([&b, key, label, inputs, lhs](const Csp::View& v) -> Csp::Outcome {
                    std::vector<int> image(inputs.size());
                    for (std::size_t i = 0; i < inputs.size(); ++i) {
                        const auto val = v.value(inputs[i]);
                        if (!val) return Csp::Outcome::unknown();
                        image[i] = *val;
                    }
                    const int rhs = b.act(*key, label, image);
                    if (rhs < 0) return Csp::Outcome::yes();
                    const auto cur = v.value(lhs);
                    if (!cur) return Csp::Outcome::force(lhs, rhs);
                    return *cur == rhs ? Csp::Outcome::yes() : Csp::Outcome::no();
                });
            });
    }
    return csp.solve([](const std::vector<int>&) { return true; }, budget);
}

Algebra restrict_algebra(const OperadMorphism& phi, const Algebra& b_alg) {
    if (b_alg.operad() != phi.target) throw InputError("restriction: algebra is not over the target operad");
    const auto& u = phi.sort_map;
    SortedFamily t;
    t.sorts = phi.source->sorts();
    for (Sort s : u) t.carrier.push_back(b_alg.carrier().carrier[s]);
    return make_algebra(phi.source, t, [&](const CellKey& key, int label, const std::vector<int>& tuple) {
        Word uw;
        for (Sort s : key.word) uw.push_back(u[s]);
        return b_alg.act_at(uw, u[key.out], phi.xi.apply(key, label), tuple);
    });
}

}  // namespace opbim
