#include "opbim/symseq.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "opbim/errors.hpp"
#include "opbim/quotient.hpp"

namespace opbim {

std::string to_string(const CellKey& k) { return to_string(k.word) + "->" + std::to_string(k.out); }

SymSeq::SymSeq(std::vector<std::string> dom_sorts, std::vector<std::string> cod_sorts)
    : dom_(std::move(dom_sorts)), cod_(std::move(cod_sorts)) {
    for (const auto* names : {&dom_, &cod_}) {
        std::set<std::string> seen(names->begin(), names->end());
        if (seen.size() != names->size()) throw InputError("duplicate sort name");
    }
}

void SymSeq::check_word(const Word& w) const {
    for (Sort s : w)
        if (s < 0 || s >= static_cast<Sort>(dom_.size()))
            throw InputError("sort index " + std::to_string(s) + " out of range in word " + to_string(w));
}

void SymSeq::check_out(Sort y) const {
    if (y < 0 || y >= static_cast<Sort>(cod_.size())) throw InputError("output sort " + std::to_string(y) + " out of range");
}

void SymSeq::set_cell(CellKey key, YoungSet cell) {
    check_word(key.word);
    check_out(key.out);
    if (!is_canonical(key.word)) throw InputError("cell word is not canonical: " + to_string(key.word));
    if (cell.word() != key.word) throw InputError("cell word mismatch at " + to_string(key));
    if (!known_arity(key.word.size())) throw InputError("cell beyond window: " + to_string(key));
    if (cell.empty()) {
        cells_.erase(key);
        return;
    }
    cells_.insert_or_assign(std::move(key), std::move(cell));
}

void SymSeq::set_window(std::optional<std::size_t> w) {
    if (w)
        for (const auto& [k, c] : cells_)
            if (k.word.size() > *w) throw InputError("window smaller than existing cell " + to_string(k));
    window_ = w;
}

const YoungSet* SymSeq::find(const CellKey& key) const {
    auto it = cells_.find(key);
    return it == cells_.end() ? nullptr : &it->second;
}

const YoungSet* SymSeq::cell_at(const Word& word, Sort out) const {
    return find({canonical_word(word).word, out});
}

std::size_t SymSeq::size_at(const Word& word, Sort out) const {
    const YoungSet* c = cell_at(word, out);
    return c ? c->size() : 0;
}

std::size_t SymSeq::max_arity() const {
    std::size_t m = 0;
    for (const auto& [k, c] : cells_) m = std::max(m, k.word.size());
    return m;
}

bool SymSeq::has_nullary() const {
    for (const auto& [k, c] : cells_)
        if (k.word.empty()) return true;
    return false;
}

int SymSeq::pull(const Word& a, const Word& b, const Perm& sigma, Sort out, int label_b) const {
    if (!is_arrow(a, b, sigma)) throw InputError("pull: " + to_string(sigma) + " is not an arrow " + to_string(a) + " -> " + to_string(b));
    const CanonicalForm ca = canonical_word(a);
    const CanonicalForm cb = canonical_word(b);
    const YoungSet* cell = find({ca.word, out});
    if (!cell) throw InputError("pull: empty cell " + to_string(ca.word));
    const Perm h = compose(compose(ca.transport, sigma), cb.transport.inverse());
    return cell->act(h, label_b);
}

// ---------------------------------------------------------------------------
// Maps

int SymSeqMap::apply(const CellKey& key, int label) const {
    auto it = components.find(key);
    if (it == components.end() || label < 0 || label >= static_cast<int>(it->second.size()))
        throw InputError("map has no component at " + to_string(key) + " label " + std::to_string(label));
    return it->second[label];
}

int SymSeqMap::apply_at(const Word& word, Sort out, int label) const {
    return apply({canonical_word(word).word, out}, label);
}

void SymSeqMap::validate() const {
    for (const auto& [key, cell] : source->cells()) {
        auto it = components.find(key);
        if (it == components.end() || it->second.size() != cell.size())
            throw ValidationError("map component missing or wrong size", to_string(key));
        const YoungSet* tgt = target->find(key);
        if (!tgt) throw ValidationError("map into an empty cell", to_string(key));
        if (!is_equivariant(cell, *tgt, it->second)) throw ValidationError("map is not equivariant", to_string(key));
    }
    for (const auto& [key, comp] : components)
        if (!source->find(key) && !comp.empty()) throw ValidationError("map component on an empty cell", to_string(key));
}

bool SymSeqMap::is_iso() const {
    for (const auto& [key, cell] : target->cells())
        if (!source->find(key)) return false;
    for (const auto& [key, cell] : source->cells()) {
        const YoungSet* tgt = target->find(key);
        auto it = components.find(key);
        if (!tgt || it == components.end() || tgt->size() != cell.size()) return false;
        std::vector<char> hit(cell.size(), 0);
        for (int v : it->second) {
            if (v < 0 || v >= static_cast<int>(hit.size()) || hit[v]) return false;
            hit[v] = 1;
        }
    }
    return true;
}

SymSeqMap identity_map(const SymSeqPtr& f) {
    SymSeqMap m{f, f, {}};
    for (const auto& [key, cell] : f->cells()) {
        std::vector<int> id(cell.size());
        std::iota(id.begin(), id.end(), 0);
        m.components.emplace(key, std::move(id));
    }
    return m;
}

SymSeqMap vcompose(const SymSeqMap& beta, const SymSeqMap& alpha) {
    SymSeqMap m{alpha.source, beta.target, {}};
    for (const auto& [key, comp] : alpha.components) {
        std::vector<int> out;
        out.reserve(comp.size());
        for (int v : comp) out.push_back(beta.apply(key, v));
        m.components.emplace(key, std::move(out));
    }
    return m;
}

SymSeqMap inverse_map(const SymSeqMap& alpha) {
    if (!alpha.is_iso()) throw ValidationError("inverse of a non-isomorphism", "");
    SymSeqMap m{alpha.target, alpha.source, {}};
    for (const auto& [key, comp] : alpha.components) {
        std::vector<int> inv(comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i) inv[comp[i]] = static_cast<int>(i);
        m.components.emplace(key, std::move(inv));
    }
    return m;
}

std::string first_difference(const SymSeqMap& a, const SymSeqMap& b) {
    std::set<CellKey> keys;
    for (const auto& [k, v] : a.components) keys.insert(k);
    for (const auto& [k, v] : b.components) keys.insert(k);
    for (const CellKey& k : keys) {
        auto ia = a.components.find(k);
        auto ib = b.components.find(k);
        if (ia == a.components.end() || ib == b.components.end()) return "cell " + to_string(k) + " present in one map only";
        if (ia->second.size() != ib->second.size()) return "cell " + to_string(k) + " size differs";
        for (std::size_t i = 0; i < ia->second.size(); ++i)
            if (ia->second[i] != ib->second[i])
                return "cell " + to_string(k) + " label " + std::to_string(i) + ": " + std::to_string(ia->second[i]) +
                       " vs " + std::to_string(ib->second[i]);
    }
    return {};
}

Coequalizer coequalizer(const SymSeqMap& a, const SymSeqMap& b) {
    if (a.target != b.target || a.source != b.source) throw InputError("coequalizer: maps are not parallel");
    const SymSeq& q = *a.target;
    SymSeq out(q.dom_sorts(), q.cod_sorts());
    out.set_window(q.window());
    SymSeqMap quot{a.target, nullptr, {}};
    std::map<CellKey, std::pair<std::vector<int>, std::vector<int>>> parts;  // class_of, representatives
    for (const auto& [key, cell] : q.cells()) {
        UnionFind uf(cell.size());
        auto ia = a.components.find(key);
        auto ib = b.components.find(key);
        if (ia != a.components.end() && ib != b.components.end())
            for (std::size_t l = 0; l < ia->second.size(); ++l)
                uf.unite(static_cast<std::size_t>(ia->second[l]), static_cast<std::size_t>(ib->second.at(l)));
        const QuotientResult qr = quotient(uf);
        std::vector<int> class_of(qr.class_of.begin(), qr.class_of.end());
        std::vector<std::string> names;
        std::map<std::size_t, std::vector<int>> action;
        for (std::size_t c = 0; c < qr.size(); ++c) names.push_back(cell.label(qr.representative(c)));
        for (const auto& [p, m] : cell.generator_action()) {
            std::vector<int> induced(qr.size());
            for (std::size_t c = 0; c < qr.size(); ++c) induced[c] = class_of[m[qr.representative(c)]];
            action.emplace(p, std::move(induced));
        }
        out.set_cell(key, YoungSet(key.word, std::move(names), std::move(action)));
        quot.components.emplace(key, std::move(class_of));
    }
    quot.target = make_symseq(std::move(out));
    return {quot.target, std::move(quot)};
}

SymSeqMap factor_through(const SymSeqMap& s, const SymSeqMap& f) {
    if (s.source != f.source) throw InputError("factor_through: maps have different sources");
    SymSeqMap g{s.target, f.target, {}};
    for (const auto& [key, cell] : s.target->cells()) g.components.emplace(key, std::vector<int>(cell.size(), -1));
    for (const auto& [key, comp] : s.components) {
        if (comp.empty()) continue;
        auto& out = g.components.at(key);
        const auto& fc = f.components.at(key);
        for (std::size_t l = 0; l < comp.size(); ++l) {
            int& slot = out[comp[l]];
            if (slot >= 0 && slot != fc[l])
                throw ValidationError("map does not factor through the quotient",
                                      to_string(key) + " label " + std::to_string(l));
            slot = fc[l];
        }
    }
    for (const auto& [key, comp] : g.components)
        for (std::size_t l = 0; l < comp.size(); ++l)
            if (comp[l] < 0) throw ValidationError("factor_through: map is not surjective", to_string(key));
    return g;
}

SymSeqPtr id_symseq(const std::vector<std::string>& sorts) {
    SymSeq s(sorts, sorts);
    for (std::size_t i = 0; i < sorts.size(); ++i) {
        const Word w{static_cast<Sort>(i)};
        s.set_cell({w, static_cast<Sort>(i)}, YoungSet::trivial(w, {"id"}));
    }
    return make_symseq(std::move(s));
}

// ---------------------------------------------------------------------------
// Composition

namespace {

std::vector<std::size_t> block_lengths(const std::vector<Elem>& blocks) {
    std::vector<std::size_t> out;
    out.reserve(blocks.size());
    for (const Elem& b : blocks) out.push_back(b.word.size());
    return out;
}

Word block_concat(const std::vector<Elem>& blocks) {
    Word out;
    for (const Elem& b : blocks) out.insert(out.end(), b.word.begin(), b.word.end());
    return out;
}

std::string raw_name(const SymSeq& g, const SymSeq& f, const RawTuple& t, Sort z) {
    std::string s = g.find({t.outer_word, z})->label(t.outer);
    s += "(";
    for (std::size_t j = 0; j < t.blocks.size(); ++j) {
        if (j) s += ",";
        s += f.find({t.blocks[j].word, t.outer_word[j]})->label(t.blocks[j].label);
    }
    s += ")";
    if (!t.shuffle.is_identity()) s += to_string(t.shuffle);
    return s;
}

}  // namespace

namespace {

/// Arrows w → x_1 ⊕ ... ⊕ x_m that are increasing on each run of equal
/// letters inside a block (blocks are canonical words).
std::vector<Perm> run_increasing_shuffles(const Word& w, const std::vector<Word>& blocks) {
    const Word c = concat(blocks);
    const std::size_t n = c.size();
    std::map<Sort, std::vector<int>> w_pos;
    for (std::size_t i = 0; i < n; ++i) w_pos[w[i]].push_back(static_cast<int>(i));
    // per sort: c positions grouped by block, and the initial arrangement of block indices
    struct Run {
        std::vector<int> w_positions;
        std::vector<std::vector<int>> c_positions;  // by block
        std::vector<int> arrangement;
    };
    std::vector<Run> runs;
    for (auto& [sort, pos] : w_pos) {
        Run r;
        r.w_positions = pos;
        r.c_positions.assign(blocks.size(), {});
        std::size_t off = 0;
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            for (std::size_t q = 0; q < blocks[j].size(); ++q)
                if (blocks[j][q] == sort) {
                    r.c_positions[j].push_back(static_cast<int>(off + q));
                    r.arrangement.push_back(static_cast<int>(j));
                }
            off += blocks[j].size();
        }
        runs.push_back(std::move(r));
    }
    std::vector<Perm> out;
    std::vector<int> img(n);
    while (true) {
        for (const Run& r : runs) {
            std::vector<std::size_t> next(blocks.size(), 0);
            for (std::size_t i = 0; i < r.w_positions.size(); ++i) {
                const int j = r.arrangement[i];
                img[r.c_positions[j][next[j]++]] = r.w_positions[i];
            }
        }
        out.emplace_back(img);
        std::size_t k = 0;
        while (k < runs.size() && !std::next_permutation(runs[k].arrangement.begin(), runs[k].arrangement.end())) ++k;
        if (k == runs.size()) break;
    }
    return out;
}

}  // namespace

namespace {

constexpr int kEmptyBlockKey = std::numeric_limits<int>::max();

/// Smallest target position of each block; empty blocks sort last.
std::vector<int> block_keys(const std::vector<int>& img, const std::vector<Elem>& blocks) {
    std::vector<int> keys;
    std::size_t off = 0;
    for (const Elem& b : blocks) {
        int k = kEmptyBlockKey;
        for (std::size_t r = 0; r < b.word.size(); ++r) k = std::min(k, img[off + r]);
        keys.push_back(k);
        off += b.word.size();
    }
    return keys;
}

bool blocks_sorted(const Perm& shuffle, const std::vector<Elem>& blocks, const Word& y) {
    const auto keys = block_keys(shuffle.images(), blocks);
    for (std::size_t q = 0; q + 1 < y.size(); ++q)
        if (y[q] == y[q + 1] && keys[q] > keys[q + 1]) return false;
    return true;
}

}  // namespace

void Composite::normalize(RawTuple& t, Sort z) const {
    if (t.blocks.size() != t.outer_word.size()) throw InputError("classify: block count does not match outer arity");
    // Outer stabilizer: order the blocks of each run of equal outer letters.
    {
        const auto keys = block_keys(t.shuffle.images(), t.blocks);
        const std::size_t m = t.blocks.size();
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t a = 0; a < m;) {
            std::size_t b = a;
            while (b < m && t.outer_word[b] == t.outer_word[a]) ++b;
            std::stable_sort(order.begin() + a, order.begin() + b, [&](int p, int q) { return keys[p] < keys[q]; });
            a = b;
        }
        const Perm pi(order);
        if (!pi.is_identity()) {
            // (g, t) ~ (π⁻¹ ▷ g, H(π) t)
            const YoungSet* gcell = outer_->find({t.outer_word, z});
            if (!gcell) throw InputError("classify: outer label is not an element of the outer sequence");
            const auto lengths = block_lengths(t.blocks);
            std::vector<Elem> permuted(m);
            for (std::size_t i = 0; i < m; ++i) permuted[i] = std::move(t.blocks[pi(i)]);
            t.shuffle = compose(t.shuffle, block_permutation(lengths, pi));
            t.outer = gcell->act(pi.inverse(), t.outer);
            t.blocks = std::move(permuted);
        }
    }
    std::vector<int> img = t.shuffle.images();
    std::size_t off = 0;
    for (std::size_t j = 0; j < t.blocks.size(); ++j) {
        const Word& x = t.blocks[j].word;
        const std::size_t len = x.size();
        std::vector<int> local(len);
        bool moved = false;
        for (std::size_t a = 0; a < len;) {
            std::size_t b = a;
            while (b < len && x[b] == x[a]) ++b;
            std::vector<int> order(b - a);
            std::iota(order.begin(), order.end(), static_cast<int>(a));
            std::sort(order.begin(), order.end(), [&](int p, int q) { return img[off + p] < img[off + q]; });
            for (std::size_t i = a; i < b; ++i) {
                local[i] = order[i - a];
                moved = moved || local[i] != static_cast<int>(i);
            }
            a = b;
        }
        if (moved) {
            // σ ← σ ∘ K and f ← k⁻¹ ▷ f
            const Perm k(local);
            std::vector<int> old(img.begin() + off, img.begin() + off + len);
            for (std::size_t i = 0; i < len; ++i) img[off + i] = old[local[i]];
            const YoungSet* cell = inner_->find({x, t.outer_word[j]});
            if (!cell) throw InputError("classify: block is not an element of the inner sequence");
            t.blocks[j].label = cell->act(k.inverse(), t.blocks[j].label);
        }
        off += len;
    }
    t.shuffle = Perm(std::move(img));
}

std::size_t Composite::CodeHash::operator()(const std::vector<int>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::uint32_t>(x)) * 1099511628211ull;
    return static_cast<std::size_t>(h);
}

std::vector<int> Composite::encode(const RawTuple& t) const {
    std::vector<int> code;
    code.reserve(2 + 2 * t.blocks.size() + t.shuffle.degree());
    auto id = [](const std::map<CellKey, int>& ids, const CellKey& k) {
        auto it = ids.find(k);
        if (it == ids.end()) throw InputError("classify: " + to_string(k) + " is not a cell");
        return it->second;
    };
    code.push_back(static_cast<int>(t.outer_word.size()));
    code.insert(code.end(), t.outer_word.begin(), t.outer_word.end());
    code.push_back(t.outer);
    for (std::size_t j = 0; j < t.blocks.size(); ++j) {
        code.push_back(id(inner_ids_, {t.blocks[j].word, t.outer_word[j]}));
        code.push_back(t.blocks[j].label);
    }
    code.insert(code.end(), t.shuffle.images().begin(), t.shuffle.images().end());
    return code;
}

Composite compose_symseq(const SymSeqPtr& g, const SymSeqPtr& f, std::optional<std::size_t> max_arity) {
    if (g->dom_sorts() != f->cod_sorts())
        throw InputError("compose: outer domain sorts do not match inner codomain sorts");
    std::optional<std::size_t> bound = max_arity;
    auto meet = [&](const std::optional<std::size_t>& w) {
        if (w) bound = bound ? std::min(*bound, *w) : *w;
    };
    // With nullary inner cells a truncated outer sequence bounds the outer
    // arity instead; the result is then exact in no arity.
    const bool outer_truncated = g->window() && f->has_nullary();
    if (!outer_truncated) meet(g->window());
    meet(f->window());

    Composite out;
    out.outer_truncated_ = outer_truncated;
    out.outer_ = g;
    out.inner_ = f;
    for (const auto& [k, c] : f->cells()) out.inner_ids_.emplace(k, static_cast<int>(out.inner_ids_.size()));

    std::vector<std::vector<const std::pair<const CellKey, YoungSet>*>> by_out(f->cod_size());
    for (const auto& entry : f->cells())
        if (!bound || entry.first.word.size() <= *bound) by_out[entry.first.out].push_back(&entry);

    std::map<CellKey, std::vector<RawTuple>> buckets;
    for (const auto& [gkey, gcell] : g->cells()) {
        const Word& y = gkey.word;
        const std::size_t m = y.size();
        std::vector<const std::pair<const CellKey, YoungSet>*> choice(m);
        auto emit = [&]() {
            std::vector<Word> words;
            for (auto* c : choice) words.push_back(c->first.word);
            const Word w = canonical_word(concat(words)).word;
            auto& bucket = buckets[CellKey{w, gkey.out}];
            std::vector<Perm> shuffles;
            std::vector<Elem> shapes;
            for (const Word& x : words) shapes.push_back({x, 0});
            for (Perm& s : run_increasing_shuffles(w, words))
                if (blocks_sorted(s, shapes, y)) shuffles.push_back(std::move(s));
            if (shuffles.empty()) return;
            std::vector<int> labels(m, 0);
            for (std::size_t gl = 0; gl < gcell.size(); ++gl) {
                std::fill(labels.begin(), labels.end(), 0);
                while (true) {
                    std::vector<Elem> blocks;
                    for (std::size_t j = 0; j < m; ++j) blocks.push_back({choice[j]->first.word, labels[j]});
                    for (const Perm& s : shuffles) bucket.push_back({y, static_cast<int>(gl), blocks, s});
                    std::size_t j = 0;
                    while (j < m && ++labels[j] == static_cast<int>(choice[j]->second.size())) labels[j++] = 0;
                    if (j == m) break;
                }
            }
        };
        auto rec = [&](auto&& self, std::size_t j, std::size_t len) -> void {
            if (j == m) {
                emit();
                return;
            }
            for (auto* c : by_out[y[j]]) {
                if (bound && len + c->first.word.size() > *bound) continue;
                choice[j] = c;
                self(self, j + 1, len + c->first.word.size());
            }
        };
        rec(rec, 0, 0);
    }

    SymSeq result(f->dom_sorts(), g->cod_sorts());
    result.set_window(bound);

    for (auto& [key, raws] : buckets) {
        std::sort(raws.begin(), raws.end());
        raws.erase(std::unique(raws.begin(), raws.end()), raws.end());
        Composite::CellData data;
        data.index.reserve(raws.size());
        for (std::size_t i = 0; i < raws.size(); ++i) data.index.emplace(out.encode(raws[i]), i);
        auto index_of = [&data, &out, &key](RawTuple t) -> std::size_t {
            out.normalize(t, key.out);
            auto it = data.index.find(out.encode(t));
            if (it == data.index.end()) throw InternalError("compose: related tuple missing from cell");
            return it->second;
        };
        const std::size_t n = key.word.size();
        UnionFind uf(raws.size());
        for (std::size_t i = 0; i < raws.size(); ++i) {
            const RawTuple& t = raws[i];
            const YoungSet& gcell = *g->find({t.outer_word, key.out});
            // Only swaps of adjacent empty blocks survive normalization.
            for (std::size_t q : young_generators(t.outer_word)) {
                if (!t.blocks[q].word.empty() || !t.blocks[q + 1].word.empty()) continue;
                RawTuple u = t;
                u.outer = gcell.act_generator(q, t.outer);
                std::swap(u.blocks[q], u.blocks[q + 1]);
                uf.unite(i, index_of(std::move(u)));
            }
        }
        const QuotientResult q = quotient(uf);
        data.class_of.resize(raws.size());
        for (std::size_t i = 0; i < raws.size(); ++i) data.class_of[i] = static_cast<int>(q.class_of[i]);
        std::vector<std::string> names;
        std::set<std::string> used;
        for (std::size_t c = 0; c < q.size(); ++c) {
            data.rep_index.push_back(q.representative(c));
            std::string name = raw_name(*g, *f, raws[q.representative(c)], key.out);
            if (!used.insert(name).second) {
                name += "#" + std::to_string(c);
                used.insert(name);
            }
            names.push_back(std::move(name));
        }
        std::map<std::size_t, std::vector<int>> action;
        for (std::size_t p : young_generators(key.word)) {
            const Perm h = Perm::adjacent(n, p);
            std::vector<int> m(q.size());
            for (std::size_t c = 0; c < q.size(); ++c) {
                RawTuple u = raws[data.rep_index[c]];
                u.shuffle = compose(h, u.shuffle);
                m[c] = data.class_of[index_of(std::move(u))];
            }
            action.emplace(p, std::move(m));
        }
        result.set_cell(key, YoungSet(key.word, std::move(names), std::move(action)));
        data.raws = std::move(raws);
        out.cells_.emplace(key, std::move(data));
    }
    out.result_ = make_symseq(std::move(result));
    return out;
}

const RawTuple& Composite::representative(const CellKey& key, int label) const {
    auto it = cells_.find(key);
    if (it == cells_.end() || label < 0 || label >= static_cast<int>(it->second.rep_index.size()))
        throw InputError("composite has no element " + std::to_string(label) + " at " + to_string(key));
    return it->second.raws[it->second.rep_index[label]];
}

std::size_t Composite::raw_count(const CellKey& key) const {
    auto it = cells_.find(key);
    return it == cells_.end() ? 0 : it->second.raws.size();
}

int Composite::classify_canonical(const CellKey& key, const RawTuple& input) const {
    RawTuple raw = input;
    normalize(raw, key.out);
    auto it = cells_.find(key);
    if (it != cells_.end()) {
        auto pos = it->second.index.find(encode(raw));
        if (pos != it->second.index.end()) return it->second.class_of[pos->second];
    }
    if (!result_->known_arity(key.word.size()))
        throw ResourceError("element of arity " + std::to_string(key.word.size()) + " lies outside the window");
    throw InputError("tuple is not an element of the composite at " + to_string(key));
}

int Composite::classify(const Word& x, Sort z, const Elem& outer, const std::vector<Elem>& blocks,
                        const Perm& sigma) const {
    if (outer.word.size() != blocks.size()) throw InputError("classify: block count does not match outer arity");
    // Outer word to canonical form: relation with π = τ⁻¹ permutes the blocks.
    const CanonicalForm cy = canonical_word(outer.word);
    const Perm pi = cy.transport.inverse();
    std::vector<Elem> permuted(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) permuted[i] = blocks[pi(i)];
    const auto lengths = block_lengths(blocks);
    Perm s = compose(sigma, block_permutation(lengths, pi));
    // Block words to canonical form.
    std::vector<Perm> inv;
    for (Elem& b : permuted) {
        CanonicalForm cb = canonical_word(b.word);
        inv.push_back(cb.transport.inverse());
        b.word = std::move(cb.word);
    }
    s = compose(s, direct_sum(inv));
    // Target word to canonical form.
    const CanonicalForm cx = canonical_word(x);
    s = compose(cx.transport, s);
    RawTuple raw{cy.word, outer.label, std::move(permuted), std::move(s)};
    if (!is_arrow(cx.word, block_concat(raw.blocks), raw.shuffle))
        throw InputError("classify: shuffle is not an arrow onto the block concatenation");
    return classify_canonical({cx.word, z}, raw);
}

SymSeqMap hcompose_maps(const SymSeqMap& beta, const SymSeqMap& alpha, const Composite& source,
                        const Composite& target) {
    SymSeqMap m{source.result(), target.result(), {}};
    for (const auto& [key, cell] : source.result()->cells()) {
        std::vector<int> comp(cell.size());
        for (std::size_t l = 0; l < cell.size(); ++l) {
            RawTuple t = source.representative(key, static_cast<int>(l));
            t.outer = beta.apply({t.outer_word, key.out}, t.outer);
            for (std::size_t j = 0; j < t.blocks.size(); ++j)
                t.blocks[j].label = alpha.apply({t.blocks[j].word, t.outer_word[j]}, t.blocks[j].label);
            comp[l] = target.classify_canonical(key, t);
        }
        m.components.emplace(key, std::move(comp));
    }
    return m;
}

SymSeqMap associator(const Composite& hg, const Composite& hg_f, const Composite& gf, const Composite& h_gf) {
    SymSeqMap m{hg_f.result(), h_gf.result(), {}};
    for (const auto& [key, cell] : hg_f.result()->cells()) {
        std::vector<int> comp(cell.size());
        for (std::size_t l = 0; l < cell.size(); ++l) {
            const RawTuple& t = hg_f.representative(key, static_cast<int>(l));
            const RawTuple& u = hg.representative({t.outer_word, key.out}, t.outer);
            // u = (h at v, g_k at y_k, ρ: y → ⊕ y_k); t's blocks are indexed by y.
            std::vector<Elem> middle;
            std::size_t off = 0;
            for (std::size_t k = 0; k < u.blocks.size(); ++k) {
                const std::size_t len = u.blocks[k].word.size();
                std::vector<Elem> fs;
                std::vector<Word> ws;
                for (std::size_t r = 0; r < len; ++r) {
                    fs.push_back(t.blocks[u.shuffle(off + r)]);
                    ws.push_back(fs.back().word);
                }
                const Word xk = concat(ws);
                const int e = gf.classify(xk, u.outer_word[k], u.blocks[k], fs, Perm::identity(xk.size()));
                middle.push_back({xk, e});
                off += len;
            }
            const auto lengths = block_lengths(t.blocks);
            const Perm s = compose(t.shuffle, block_permutation(lengths, u.shuffle));
            comp[l] = h_gf.classify(key.word, key.out, {u.outer_word, u.outer}, middle, s);
        }
        m.components.emplace(key, std::move(comp));
    }
    return m;
}

SymSeqMap left_unitor(const Composite& id_f) {
    const SymSeq& f = *id_f.inner();
    SymSeqMap m{id_f.result(), id_f.inner(), {}};
    for (const auto& [key, cell] : id_f.result()->cells()) {
        std::vector<int> comp(cell.size());
        for (std::size_t l = 0; l < cell.size(); ++l) {
            const RawTuple& t = id_f.representative(key, static_cast<int>(l));
            comp[l] = f.pull(key.word, t.blocks[0].word, t.shuffle, key.out, t.blocks[0].label);
        }
        m.components.emplace(key, std::move(comp));
    }
    return m;
}

SymSeqMap right_unitor(const Composite& f_id) {
    const SymSeq& f = *f_id.outer();
    SymSeqMap m{f_id.result(), f_id.outer(), {}};
    for (const auto& [key, cell] : f_id.result()->cells()) {
        std::vector<int> comp(cell.size());
        for (std::size_t l = 0; l < cell.size(); ++l) {
            const RawTuple& t = f_id.representative(key, static_cast<int>(l));
            comp[l] = f.pull(key.word, t.outer_word, t.shuffle, key.out, t.outer);
        }
        m.components.emplace(key, std::move(comp));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Analytic functor

std::size_t SortedFamily::total() const {
    std::size_t n = 0;
    for (const auto& c : carrier) n += c.size();
    return n;
}

SortedFamily SortedFamily::of_sizes(std::vector<std::string> sorts, const std::vector<std::size_t>& sizes) {
    if (sorts.size() != sizes.size()) throw InputError("family: one size per sort required");
    SortedFamily t{std::move(sorts), {}};
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < sizes[s]; ++i) names.push_back(std::to_string(i));
        t.carrier.push_back(std::move(names));
    }
    return t;
}

AnalyticValue analytic_eval(const SymSeqPtr& f, const SortedFamily& t) {
    if (t.sorts.size() != f->dom_size() || t.carrier.size() != f->dom_size())
        throw InputError("analytic_eval: family sorts do not match the domain");
    AnalyticValue v;
    v.f_ = f;
    v.input_ = t;
    v.family_.sorts = f->cod_sorts();
    v.family_.carrier.assign(f->cod_size(), {});
    v.reps_.assign(f->cod_size(), {});
    for (const auto& [key, cell] : f->cells()) {
        const Word& w = key.word;
        const std::size_t n = w.size();
        bool empty = false;
        for (Sort s : w) empty = empty || t.size(s) == 0;
        if (empty) continue;
        std::vector<std::pair<int, std::vector<int>>> elems;
        std::vector<int> tuple(n, 0);
        while (true) {
            for (std::size_t l = 0; l < cell.size(); ++l) elems.emplace_back(static_cast<int>(l), tuple);
            std::size_t i = 0;
            while (i < n && ++tuple[i] == static_cast<int>(t.size(w[i]))) tuple[i++] = 0;
            if (i == n) break;
        }
        std::sort(elems.begin(), elems.end());
        auto index_of = [&elems](const std::pair<int, std::vector<int>>& e) {
            return static_cast<std::size_t>(std::lower_bound(elems.begin(), elems.end(), e) - elems.begin());
        };
        UnionFind uf(elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t p : young_generators(w)) {
                auto e = elems[i];
                e.first = cell.act_generator(p, e.first);
                std::swap(e.second[p], e.second[p + 1]);
                uf.unite(i, index_of(e));
            }
        const QuotientResult q = quotient(uf);
        const std::size_t base = v.reps_[key.out].size();
        for (std::size_t c = 0; c < q.size(); ++c) {
            const auto& e = elems[q.representative(c)];
            std::string name = cell.label(e.first) + "(";
            for (std::size_t i = 0; i < n; ++i) name += (i ? "," : "") + t.carrier[w[i]][e.second[i]];
            name += ")";
            v.family_.carrier[key.out].push_back(std::move(name));
            v.reps_[key.out].push_back({key, e.first, e.second});
        }
        for (std::size_t i = 0; i < elems.size(); ++i)
            v.index_.emplace(std::make_pair(key, elems[i]), static_cast<int>(base + q.class_of[i]));
    }
    return v;
}

int AnalyticValue::classify(const Word& a, Sort y, int label, const std::vector<int>& tuple) const {
    if (tuple.size() != a.size()) throw InputError("analytic classify: tuple length mismatch");
    const CanonicalForm ca = canonical_word(a);
    const Perm inv = ca.transport.inverse();
    std::vector<int> t(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) t[i] = tuple[inv(i)];
    auto it = index_.find({CellKey{ca.word, y}, {label, t}});
    if (it == index_.end()) {
        if (!f_->known_arity(a.size())) throw ResourceError("analytic element outside the window");
        throw InputError("analytic classify: not an element");
    }
    return it->second;
}

std::vector<std::vector<int>> analytic_comparison(const Composite& gf, const AnalyticValue& gf_t,
                                                  const AnalyticValue& f_t, const AnalyticValue& g_ft) {
    std::vector<std::vector<int>> out(gf_t.family().sorts.size());
    for (std::size_t z = 0; z < out.size(); ++z)
        for (std::size_t e = 0; e < gf_t.family().carrier[z].size(); ++e) {
            const auto& rep = gf_t.representative(static_cast<Sort>(z), static_cast<int>(e));
            const RawTuple& t = gf.representative(rep.cell, rep.label);
            std::vector<int> outer_tuple;
            std::size_t off = 0;
            for (std::size_t j = 0; j < t.blocks.size(); ++j) {
                const std::size_t len = t.blocks[j].word.size();
                std::vector<int> slice;
                for (std::size_t r = 0; r < len; ++r) slice.push_back(rep.tuple[t.shuffle(off + r)]);
                outer_tuple.push_back(f_t.classify(t.blocks[j].word, t.outer_word[j], t.blocks[j].label, slice));
                off += len;
            }
            out[z].push_back(g_ft.classify(t.outer_word, static_cast<Sort>(z), t.outer, outer_tuple));
        }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> disjoint_sort_names(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::set<std::string> names(a.begin(), a.end());
    bool collide = false;
    for (const auto& n : b) collide = collide || names.count(n);
    std::vector<std::string> out;
    for (const auto& n : a) out.push_back(collide ? n + ".1" : n);
    for (const auto& n : b) out.push_back(collide ? n + ".2" : n);
    return out;
}

SymSeqPtr sum_symseq(const SymSeqPtr& f1, const SymSeqPtr& f2) {
    SymSeq s(disjoint_sort_names(f1->dom_sorts(), f2->dom_sorts()),
             disjoint_sort_names(f1->cod_sorts(), f2->cod_sorts()));
    std::optional<std::size_t> w = f1->window();
    if (f2->window()) w = w ? std::min(*w, *f2->window()) : *f2->window();
    s.set_window(w);
    for (const auto& [k, c] : f1->cells())
        if (s.known_arity(k.word.size())) s.set_cell(k, c);
    const Sort dx = static_cast<Sort>(f1->dom_size());
    const Sort dy = static_cast<Sort>(f1->cod_size());
    for (const auto& [k, c] : f2->cells()) {
        if (!s.known_arity(k.word.size())) continue;
        Word word = k.word;
        for (Sort& x : word) x += dx;
        s.set_cell({word, k.out + dy}, YoungSet(word, c.labels(), c.generator_action()));
    }
    return make_symseq(std::move(s));
}

std::vector<SeriesRow> series(const SymSeqPtr& f, std::size_t max_n) {
    if (f->dom_size() != 1 || f->cod_size() != 1) throw InputError("series: single-sorted sequence required");
    std::vector<SeriesRow> rows;
    for (std::size_t n = 0; n <= max_n; ++n) {
        if (!f->known_arity(n)) throw ResourceError("series: arity " + std::to_string(n) + " outside the window");
        std::uint64_t size = 0, orbits = 0;
        for (const auto& [k, c] : f->cells())
            if (k.word.size() == n) {
                size += c.size();
                orbits += c.orbits().size();
            }
        const std::uint64_t den = factorial(static_cast<unsigned>(n));
        const std::uint64_t gcd = std::gcd(size, den);
        rows.push_back({n, size, orbits, size / gcd, den / gcd});
    }
    return rows;
}

std::optional<SymSeqMap> iso_symseq(const SymSeqPtr& f, const SymSeqPtr& g) {
    if (f->dom_sorts() != g->dom_sorts() || f->cod_sorts() != g->cod_sorts()) return std::nullopt;
    if (f->cells().size() != g->cells().size()) return std::nullopt;
    SymSeqMap m{f, g, {}};
    for (const auto& [k, c] : f->cells()) {
        const YoungSet* other = g->find(k);
        if (!other) return std::nullopt;
        auto iso = equivariant_iso_search(c, *other);
        if (!iso) return std::nullopt;
        m.components.emplace(k, std::move(*iso));
    }
    return m;
}

std::vector<Orbit> orbit_decompose(const YoungSet& cell) {
    std::vector<Orbit> out;
    for (auto& o : cell.orbits()) {
        const std::size_t stab = cell.stab().order() / o.size();
        out.push_back({std::move(o), stab});
    }
    return out;
}

}  // namespace opbim
