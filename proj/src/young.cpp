#include "opbim/young.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

#include "opbim/errors.hpp"
#include "opbim/iso.hpp"

namespace opbim {

namespace {

StabilizerTable build_table(const Word& w) {
    StabilizerTable t;
    t.word = w;
    t.generators = young_generators(w);
    const std::size_t n = w.size();
    std::vector<Perm> gens;
    for (std::size_t i : t.generators) gens.push_back(Perm::adjacent(n, i));

    t.elements.push_back(Perm::identity(n));
    t.index.emplace(t.elements[0], 0);
    t.parent.push_back(0);
    t.parent_gen.push_back(0);
    for (std::size_t e = 0; e < t.elements.size(); ++e) {
        std::vector<std::size_t> row;
        for (std::size_t k = 0; k < gens.size(); ++k) {
            Perm p = compose(t.elements[e], gens[k]);
            auto it = t.index.find(p);
            if (it == t.index.end()) {
                it = t.index.emplace(p, t.elements.size()).first;
                t.elements.push_back(std::move(p));
                t.parent.push_back(e);
                t.parent_gen.push_back(k);
            }
            row.push_back(it->second);
        }
        t.times_gen.push_back(std::move(row));
    }
    return t;
}

}  // namespace

const StabilizerTable& stabilizer_table(const Word& canonical) {
    static std::mutex mu;
    static std::map<Word, StabilizerTable> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(canonical);
    if (it == cache.end()) it = cache.emplace(canonical, build_table(canonical)).first;
    return it->second;
}

YoungSet::YoungSet(Word word, std::vector<std::string> labels,
                   std::map<std::size_t, std::vector<int>> generator_action)
    : word_(std::move(word)), labels_(std::move(labels)), gens_(std::move(generator_action)) {
    if (!is_canonical(word_)) throw InputError("YoungSet word is not canonical: " + to_string(word_));
    stab_ = &stabilizer_table(word_);
    const std::size_t n = labels_.size();
    auto names = std::make_shared<std::map<std::string, int>>();
    for (std::size_t i = 0; i < n; ++i)
        if (!names->emplace(labels_[i], static_cast<int>(i)).second)
            throw InputError("duplicate label '" + labels_[i] + "' in cell " + to_string(word_));
    by_name_ = std::move(names);

    std::vector<std::vector<int>> gen_maps;
    for (std::size_t pos : stab_->generators) {
        auto it = gens_.find(pos);
        std::vector<int> m;
        if (it == gens_.end()) {
            m.resize(n);
            for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<int>(i);
        } else {
            m = it->second;
            if (m.size() != n) throw ValidationError("generator map has wrong size", "cell " + to_string(word_));
            std::vector<char> seen(n, 0);
            for (int v : m) {
                if (v < 0 || v >= static_cast<int>(n) || seen[v])
                    throw ValidationError("generator map is not a bijection",
                                          "cell " + to_string(word_) + " generator " + std::to_string(pos));
                seen[v] = 1;
            }
        }
        gen_maps.push_back(std::move(m));
    }
    for (const auto& [pos, m] : gens_) {
        bool known = false;
        for (std::size_t g : stab_->generators) known = known || g == pos;
        if (!known)
            throw InputError("generator position " + std::to_string(pos) + " is not in Stab" + to_string(word_));
    }
    // Erase explicit identities so equal actions compare equal.
    for (auto it = gens_.begin(); it != gens_.end();) {
        bool id = true;
        for (std::size_t i = 0; i < it->second.size(); ++i) id = id && it->second[i] == static_cast<int>(i);
        it = id ? gens_.erase(it) : std::next(it);
    }

    // maps[e] = F[elements[e]]; F[g ∘ s] = F[g] ∘ F[s].
    const auto& t = *stab_;
    std::vector<std::vector<int>> maps(t.order());
    maps[0].resize(n);
    for (std::size_t i = 0; i < n; ++i) maps[0][i] = static_cast<int>(i);
    for (std::size_t e = 1; e < t.order(); ++e) {
        const auto& pm = maps[t.parent[e]];
        const auto& gm = gen_maps[t.parent_gen[e]];
        maps[e].resize(n);
        for (std::size_t i = 0; i < n; ++i) maps[e][i] = pm[gm[i]];
    }
    for (std::size_t e = 0; e < t.order(); ++e)
        for (std::size_t k = 0; k < t.generators.size(); ++k) {
            const auto& target = maps[t.times_gen[e][k]];
            for (std::size_t i = 0; i < n; ++i)
                if (target[i] != maps[e][gen_maps[k][i]])
                    throw ValidationError("generator maps violate the relations of Stab" + to_string(word_),
                                          "element " + to_string(t.elements[e]) + " label " + labels_[i]);
        }
    maps_ = std::make_shared<const std::vector<std::vector<int>>>(std::move(maps));
}

YoungSet YoungSet::trivial(Word word, std::vector<std::string> labels) {
    return YoungSet(std::move(word), std::move(labels), {});
}

std::optional<int> YoungSet::find_label(const std::string& name) const {
    auto it = by_name_->find(name);
    if (it == by_name_->end()) return std::nullopt;
    return it->second;
}

int YoungSet::act(const Perm& h, int label) const {
    auto it = stab_->index.find(h);
    if (it == stab_->index.end())
        throw InputError("permutation " + to_string(h) + " is not in Stab" + to_string(word_));
    return (*maps_)[it->second][label];
}

int YoungSet::act_generator(std::size_t position, int label) const {
    auto it = gens_.find(position);
    if (it == gens_.end()) return label;
    return it->second[label];
}

std::vector<std::vector<int>> YoungSet::orbits() const {
    std::vector<int> seen(size(), -1);
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (seen[i] != -1) continue;
        std::vector<int> orbit;
        for (const auto& m : *maps_) {
            const int j = m[i];
            if (seen[j] == -1) {
                seen[j] = static_cast<int>(out.size());
                orbit.push_back(j);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

bool YoungSet::operator==(const YoungSet& other) const {
    return word_ == other.word_ && labels_ == other.labels_ && gens_ == other.gens_;
}

namespace {

ActionGraph graph_of(const YoungSet& s) {
    ActionGraph g;
    g.color.assign(s.size(), 0);
    for (std::size_t pos : s.stab().generators) {
        std::vector<int> m(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) m[i] = s.act_generator(pos, static_cast<int>(i));
        g.next.push_back(std::move(m));
    }
    return g;
}

}  // namespace

std::optional<std::vector<int>> equivariant_iso_search(const YoungSet& a, const YoungSet& b) {
    if (a.word() != b.word()) throw InputError("equivariant_iso_search: word mismatch");
    if (a.size() != b.size()) return std::nullopt;
    return find_graph_iso(graph_of(a), graph_of(b));
}

bool is_equivariant(const YoungSet& a, const YoungSet& b, const std::vector<int>& f) {
    if (a.word() != b.word() || f.size() != a.size()) return false;
    for (std::size_t pos : a.stab().generators)
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (f[i] < 0 || f[i] >= static_cast<int>(b.size())) return false;
            if (f[a.act_generator(pos, static_cast<int>(i))] != b.act_generator(pos, f[i])) return false;
        }
    return true;
}

}  // namespace opbim
