#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "opbim/errors.hpp"
#include "opbim/operad.hpp"
#include "opbim/quotient.hpp"

namespace opbim {

namespace {

// Build an operad from a structure model. A model supplies
//   enumerate(w, z)       all structures at canonical word w with output z
//   pull(s, h)            F[h] for h: w → w'  (positions p become h(p))
//   graft(g, blocks, off) θ on structures, blocks shifted by offsets
//   unit(x)               the identity structure
//   name(s)               label text
template <class S, class Model>
OperadPtr build(const std::vector<std::string>& sorts, const Model& model, std::size_t max_arity,
                std::optional<std::size_t> window, std::string name) {
    SymSeq carrier(sorts, sorts);
    carrier.set_window(window);
    std::map<CellKey, std::vector<S>> structs;
    std::map<CellKey, std::map<S, int>> index;

    std::vector<Word> words{{}};
    for (std::size_t n = 0; n <= max_arity; ++n) {
        std::vector<Word> next;
        for (const Word& w : words) {
            for (std::size_t z = 0; z < sorts.size(); ++z) {
                const CellKey key{w, static_cast<Sort>(z)};
                std::vector<S> v = model.enumerate(w, key.out);
                if (v.empty()) continue;
                std::sort(v.begin(), v.end());
                auto& idx = index[key];
                std::vector<std::string> labels;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    idx.emplace(v[i], static_cast<int>(i));
                    labels.push_back(model.name(v[i]));
                }
                std::map<std::size_t, std::vector<int>> action;
                for (std::size_t p : young_generators(w)) {
                    std::vector<int> m;
                    for (const S& s : v) m.push_back(idx.at(model.pull(s, Perm::adjacent(n, p))));
                    action.emplace(p, std::move(m));
                }
                carrier.set_cell(key, YoungSet(w, std::move(labels), std::move(action)));
                structs.emplace(key, std::move(v));
            }
            for (std::size_t s = w.empty() ? 0 : static_cast<std::size_t>(w.back()); s < sorts.size(); ++s) {
                Word u = w;
                u.push_back(static_cast<Sort>(s));
                next.push_back(std::move(u));
            }
        }
        words = std::move(next);
    }
    SymSeqPtr c = make_symseq(std::move(carrier));
    auto mu = [&](const CellKey& key, const RawTuple& raw) {
        const S& g = structs.at({raw.outer_word, key.out})[raw.outer];
        std::vector<S> blocks;
        std::vector<int> offsets;
        int off = 0;
        for (std::size_t j = 0; j < raw.blocks.size(); ++j) {
            blocks.push_back(structs.at({raw.blocks[j].word, raw.outer_word[j]})[raw.blocks[j].label]);
            offsets.push_back(off);
            off += static_cast<int>(raw.blocks[j].word.size());
        }
        // the grafted structure lives at the concatenated word; pull it back along σ
        return index.at(key).at(model.pull(model.graft(g, blocks, offsets), raw.shuffle));
    };
    auto eta = [&](Sort x) { return index.at({{x}, x}).at(model.unit(x)); };
    return make_operad(c, mu, eta, std::move(name));
}

// assoc: total orders of the inputs, stored as the sequence of positions.
struct OrderModel {
    using S = std::vector<int>;
    std::vector<S> enumerate(const Word& w, Sort) const {
        if (w.empty()) return {};
        std::vector<S> out;
        for (const Perm& p : all_permutations(w.size())) out.push_back(p.images());
        return out;
    }
    S pull(const S& s, const Perm& h) const {
        S out;
        for (int p : s) out.push_back(h(p));
        return out;
    }
    S graft(const S& g, const std::vector<S>& blocks, const std::vector<int>& off) const {
        S out;
        for (int j : g)
            for (int p : blocks[j]) out.push_back(off[j] + p);
        return out;
    }
    S unit(Sort) const { return {0}; }
    std::string name(const S& s) const {
        std::string out;
        for (int p : s) out += (out.empty() ? "x" : " x") + std::to_string(p + 1);
        return out;
    }
};

// com: one operation of each positive arity.
struct PointModel {
    using S = int;
    std::vector<S> enumerate(const Word& w, Sort) const { return w.empty() ? std::vector<S>{} : std::vector<S>{0}; }
    S pull(S, const Perm&) const { return 0; }
    S graft(S, const std::vector<S>&, const std::vector<int>&) const { return 0; }
    S unit(Sort) const { return 0; }
    std::string name(S) const { return "c"; }
};

int leaf_count(const Tree& t) {
    if (t.generator < 0) return 1;
    int n = 0;
    for (const Tree& c : t.children) n += leaf_count(c);
    return n;
}

Tree relabel_leaves(const Tree& t, const std::function<int(int)>& f) {
    if (t.generator < 0) return Tree{-1, f(t.position), {}};
    Tree out{t.generator, 0, {}};
    for (const Tree& c : t.children) out.children.push_back(relabel_leaves(c, f));
    return out;
}

Tree graft_tree(const Tree& g, const std::vector<Tree>& blocks, const std::vector<int>& off) {
    if (g.generator < 0) {
        const int j = g.position;
        return relabel_leaves(blocks[j], [&](int p) { return p + off[j]; });
    }
    Tree out{g.generator, 0, {}};
    for (const Tree& c : g.children) out.children.push_back(graft_tree(c, blocks, off));
    return out;
}

// Free operads: trees with leaves labelled by input positions.
struct TreeModel {
    using S = Tree;
    const std::vector<std::string>* sorts;
    const std::vector<Generator>* gens;
    std::size_t max_arity;
    // planar shapes by (output, leaf-sort counts); leaves carry their sort in `position`
    mutable std::map<std::pair<Sort, std::vector<int>>, std::vector<Tree>> shapes;

    const std::vector<Tree>& shapes_for(Sort z, const std::vector<int>& counts) const {
        auto key = std::make_pair(z, counts);
        if (auto it = shapes.find(key); it != shapes.end()) return it->second;
        std::vector<Tree> out;
        int total = 0;
        for (int c : counts) total += c;
        if (total == 1 && counts[z] == 1) out.push_back(Tree{-1, z, {}});
        for (std::size_t g = 0; g < gens->size(); ++g) {
            const Generator& gen = (*gens)[g];
            if (gen.output != z || static_cast<int>(gen.inputs.size()) > total) continue;
            // distribute counts over the children, each child nonempty
            auto rec = [&](auto&& self, std::size_t i, std::vector<int> rest, Tree acc) -> void {
                if (i == gen.inputs.size()) {
                    if (std::all_of(rest.begin(), rest.end(), [](int c) { return c == 0; })) out.push_back(acc);
                    return;
                }
                // enumerate sub-count vectors below rest
                std::vector<int> sub(rest.size(), 0);
                auto sub_rec = [&](auto&& sself, std::size_t s) -> void {
                    if (s == sub.size()) {
                        int n = 0;
                        for (int c : sub) n += c;
                        int left = 0;
                        for (int c : rest) left += c;
                        // the remaining children need one leaf each
                        if (n == 0 || left - n < static_cast<int>(gen.inputs.size() - i - 1)) return;
                        for (const Tree& child : shapes_for(gen.inputs[i], sub)) {
                            Tree next = acc;
                            next.children.push_back(child);
                            std::vector<int> r = rest;
                            for (std::size_t k = 0; k < r.size(); ++k) r[k] -= sub[k];
                            self(self, i + 1, r, std::move(next));
                        }
                        return;
                    }
                    for (int c = 0; c <= rest[s]; ++c) {
                        sub[s] = c;
                        sself(sself, s + 1);
                    }
                    sub[s] = 0;
                };
                sub_rec(sub_rec, 0);
            };
            rec(rec, 0, counts, Tree{static_cast<int>(g), 0, {}});
        }
        return shapes.emplace(key, std::move(out)).first->second;
    }

    std::vector<S> enumerate(const Word& w, Sort z) const {
        if (w.empty()) return {};
        std::vector<int> counts(sorts->size(), 0);
        for (Sort s : w) ++counts[s];
        std::vector<S> out;
        for (const Tree& shape : shapes_for(z, counts)) {
            // leaves of each sort receive that sort's positions in every order
            std::vector<std::vector<int>> positions(sorts->size());
            for (std::size_t i = 0; i < w.size(); ++i) positions[w[i]].push_back(static_cast<int>(i));
            auto rec = [&](auto&& self, std::size_t s) -> void {
                if (s == positions.size()) {
                    std::vector<std::size_t> used(sorts->size(), 0);
                    out.push_back(relabel_leaves(shape, [&](int sort) { return positions[sort][used[sort]++]; }));
                    return;
                }
                std::sort(positions[s].begin(), positions[s].end());
                do {
                    self(self, s + 1);
                } while (std::next_permutation(positions[s].begin(), positions[s].end()));
            };
            rec(rec, 0);
        }
        return out;
    }
    S pull(const S& t, const Perm& h) const {
        return relabel_leaves(t, [&](int p) { return h(p); });
    }
    S graft(const S& g, const std::vector<S>& blocks, const std::vector<int>& off) const {
        return graft_tree(g, blocks, off);
    }
    S unit(Sort) const { return Tree{-1, 0, {}}; }
    std::string name(const S& t) const { return to_string(t, *gens); }
};

// Substitution match of a pattern tree against a subject subtree.
bool match(const Tree& pattern, const Tree& subject, std::map<int, Tree>& binding) {
    if (pattern.generator < 0) {
        auto [it, fresh] = binding.emplace(pattern.position, subject);
        return fresh || it->second == subject;
    }
    if (subject.generator != pattern.generator || subject.children.size() != pattern.children.size()) return false;
    for (std::size_t i = 0; i < pattern.children.size(); ++i)
        if (!match(pattern.children[i], subject.children[i], binding)) return false;
    return true;
}

Tree substitute(const Tree& pattern, const std::map<int, Tree>& binding) {
    if (pattern.generator < 0) return binding.at(pattern.position);
    Tree out{pattern.generator, 0, {}};
    for (const Tree& c : pattern.children) out.children.push_back(substitute(c, binding));
    return out;
}

// Every tree obtained from t by one rewrite lhs → rhs at some subtree.
void rewrites(const Tree& t, const Tree& lhs, const Tree& rhs, std::vector<Tree>& out) {
    std::map<int, Tree> binding;
    if (match(lhs, t, binding)) out.push_back(substitute(rhs, binding));
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        std::vector<Tree> sub;
        rewrites(t.children[i], lhs, rhs, sub);
        for (Tree& s : sub) {
            Tree copy = t;
            copy.children[i] = std::move(s);
            out.push_back(std::move(copy));
        }
    }
}

// Presented operads: a class of trees is represented by its least member.
struct PresentedModel {
    using S = Tree;
    TreeModel trees;
    std::map<Tree, Tree> normal;  // tree → least tree of its class
    std::map<std::pair<Word, Sort>, std::vector<Tree>> classes;

    std::vector<S> enumerate(const Word& w, Sort z) const {
        auto it = classes.find({w, z});
        return it == classes.end() ? std::vector<S>{} : it->second;
    }
    S pull(const S& t, const Perm& h) const { return normal.at(trees.pull(t, h)); }
    S graft(const S& g, const std::vector<S>& blocks, const std::vector<int>& off) const {
        return normal.at(graft_tree(g, blocks, off));
    }
    S unit(Sort x) const { return trees.unit(x); }
    std::string name(const S& t) const { return trees.name(t); }
};

void check_generators(const std::vector<std::string>& sorts, const std::vector<Generator>& gens) {
    std::set<std::string> names;
    for (const Generator& g : gens) {
        if (g.name.empty() || !(std::isalpha(static_cast<unsigned char>(g.name[0])) || g.name[0] == '_'))
            throw InputError("generator name must start with a letter: '" + g.name + "'");
        for (char ch : g.name)
            if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
                throw InputError("generator name must be alphanumeric: '" + g.name + "'");
        if (!names.insert(g.name).second) throw InputError("duplicate generator " + g.name);
        if (g.inputs.size() < 2)
            throw InputError("generator " + g.name + " has arity " + std::to_string(g.inputs.size()) +
                             "; free operads need arity at least 2 to have finite cells");
        if (g.output < 0 || g.output >= static_cast<Sort>(sorts.size())) throw InputError("generator " + g.name + ": bad output sort");
        for (Sort s : g.inputs)
            if (s < 0 || s >= static_cast<Sort>(sorts.size())) throw InputError("generator " + g.name + ": bad input sort");
    }
}

}  // namespace

std::string to_string(const Tree& t, const std::vector<Generator>& gens) {
    if (t.generator < 0) return std::to_string(t.position);
    std::string out = gens.at(t.generator).name + "(";
    for (std::size_t i = 0; i < t.children.size(); ++i) out += (i ? "," : "") + to_string(t.children[i], gens);
    return out + ")";
}

Tree parse_tree(const std::string& text, const std::vector<Generator>& gens) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto error = [&](const std::string& what) {
        return InputError("tree '" + text + "': " + what + " at offset " + std::to_string(i));
    };
    auto parse = [&](auto&& self) -> Tree {
        skip();
        if (i >= text.size()) throw error("unexpected end");
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            Tree leaf{-1, std::stoi(text.substr(i, j - i)), {}};
            i = j;
            return leaf;
        }
        std::size_t j = i;
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
        if (j == i) throw error("expected generator or position");
        const std::string name = text.substr(i, j - i);
        i = j;
        int g = -1;
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (gens[k].name == name) g = static_cast<int>(k);
        if (g < 0) throw error("unknown generator " + name);
        skip();
        if (i >= text.size() || text[i] != '(') throw error("expected '('");
        ++i;
        Tree node{g, 0, {}};
        for (;;) {
            node.children.push_back(self(self));
            skip();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            throw error("expected ',' or ')'");
        }
        if (node.children.size() != gens[g].inputs.size()) throw error("wrong number of arguments to " + name);
        return node;
    };
    Tree t = parse(parse);
    skip();
    if (i != text.size()) throw error("trailing input");
    return t;
}

std::pair<Word, Sort> tree_type(const Tree& t, const std::vector<Generator>& gens, const std::vector<std::string>& sorts) {
    const int n = leaf_count(t);
    Word word(n, -1);
    auto rec = [&](auto&& self, const Tree& s, Sort expected) -> void {
        if (s.generator < 0) {
            if (s.position < 0 || s.position >= n || word[s.position] != -1)
                throw InputError("tree positions must be 0..n-1, each once");
            word[s.position] = expected;
            return;
        }
        if (s.generator >= static_cast<int>(gens.size())) throw InputError("tree: unknown generator");
        const Generator& g = gens[s.generator];
        if (expected >= 0 && g.output != expected)
            throw InputError("tree is ill-typed at " + g.name + ": output " + sorts.at(g.output) + ", expected " +
                             sorts.at(expected));
        if (s.children.size() != g.inputs.size()) throw InputError("tree: wrong arity for " + g.name);
        for (std::size_t i = 0; i < s.children.size(); ++i) self(self, s.children[i], g.inputs[i]);
    };
    if (t.generator < 0) throw InputError("a relation side must not be a bare position");
    rec(rec, t, -1);
    return {word, gens[t.generator].output};
}

OperadPtr unit_operad(const std::vector<std::string>& sorts) {
    SymSeqPtr id = id_symseq(sorts);
    return make_operad(id, [](const CellKey&, const RawTuple&) { return 0; }, [](Sort) { return 0; }, "unit");
}

OperadPtr com_operad(std::size_t max_arity, const std::vector<std::string>& sorts) {
    return build<int>(sorts, PointModel{}, max_arity, max_arity, "com");
}

OperadPtr assoc_operad(std::size_t max_arity, const std::vector<std::string>& sorts) {
    return build<std::vector<int>>(sorts, OrderModel{}, max_arity, max_arity, "assoc");
}

OperadPtr free_operad(const std::vector<std::string>& sorts, const std::vector<Generator>& gens, std::size_t max_arity) {
    check_generators(sorts, gens);
    TreeModel model{&sorts, &gens, max_arity, {}};
    return build<Tree>(sorts, model, max_arity, max_arity, "free");
}

OperadPtr magma_operad(std::size_t max_arity) {
    const std::vector<std::string> sorts{"*"};
    const std::vector<Generator> gens{{"m", {0, 0}, 0}};
    TreeModel model{&sorts, &gens, max_arity, {}};
    return build<Tree>(sorts, model, max_arity, max_arity, "magma");
}

OperadPtr terminal_operad() {
    return make_operad(make_symseq(SymSeq({}, {})), [](const CellKey&, const RawTuple&) { return 0; },
                       [](Sort) { return 0; }, "terminal");
}

OperadPtr presented_operad(const std::vector<std::string>& sorts, const std::vector<Generator>& gens,
                           const std::vector<std::pair<Tree, Tree>>& relations, std::size_t max_arity) {
    check_generators(sorts, gens);
    for (const auto& [l, r] : relations) {
        if (tree_type(l, gens, sorts) != tree_type(r, gens, sorts))
            throw InputError("relation sides have different types: " + to_string(l, gens) + " = " + to_string(r, gens));
    }
    PresentedModel model{TreeModel{&sorts, &gens, max_arity, {}}, {}, {}};
    std::vector<Word> words{{}};
    for (std::size_t n = 1; n <= max_arity; ++n) {
        std::vector<Word> next;
        for (const Word& w : words)
            for (std::size_t s = w.empty() ? 0 : static_cast<std::size_t>(w.back()); s < sorts.size(); ++s) {
                Word u = w;
                u.push_back(static_cast<Sort>(s));
                next.push_back(std::move(u));
            }
        words = std::move(next);
        for (const Word& w : words)
            for (std::size_t z = 0; z < sorts.size(); ++z) {
                std::vector<Tree> trees = model.trees.enumerate(w, static_cast<Sort>(z));
                if (trees.empty()) continue;
                std::sort(trees.begin(), trees.end());
                UnionFind uf(trees.size());
                for (std::size_t i = 0; i < trees.size(); ++i)
                    for (const auto& [l, r] : relations) {
                        std::vector<Tree> out;
                        rewrites(trees[i], l, r, out);
                        rewrites(trees[i], r, l, out);
                        for (const Tree& t : out) {
                            auto it = std::lower_bound(trees.begin(), trees.end(), t);
                            if (it == trees.end() || *it != t) throw InternalError("rewrite left the cell");
                            uf.unite(i, static_cast<std::size_t>(it - trees.begin()));
                        }
                    }
                std::map<std::size_t, Tree> least;
                for (std::size_t i = 0; i < trees.size(); ++i) least.emplace(uf.find(i), trees[i]);  // sorted: first wins
                auto& cls = model.classes[{w, static_cast<Sort>(z)}];
                for (std::size_t i = 0; i < trees.size(); ++i) {
                    const Tree& rep = least.at(uf.find(i));
                    model.normal.emplace(trees[i], rep);
                    if (rep == trees[i]) cls.push_back(rep);
                }
            }
    }
    return build<Tree>(sorts, model, max_arity, max_arity, "presented");
}

OperadPtr builtin_operad(const std::string& name, std::size_t max_arity, const std::vector<std::string>& sorts) {
    if (name == "unit") return unit_operad(sorts);
    if (name == "com") return com_operad(max_arity, sorts);
    if (name == "assoc") return assoc_operad(max_arity, sorts);
    if (name == "magma") {
        if (sorts.size() != 1) throw InputError("magma is single-sorted");
        return magma_operad(max_arity);
    }
    if (name == "terminal") return terminal_operad();
    throw InputError("unknown operad '" + name + "'");
}

}  // namespace opbim
