#pragma once

// Finite sets with an action of the Young subgroup of a canonical word.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opbim/perm.hpp"

namespace opbim {

/// Elements of Stab(w) with a multiplication table by the adjacent generators.
/// Tables are interned per word and shared.
struct StabilizerTable {
    Word word;
    std::vector<Perm> elements;            // elements[0] is the identity
    std::map<Perm, std::size_t> index;
    std::vector<std::size_t> generators;   // positions i with w[i] == w[i+1]
    // times_gen[e][k] = index of elements[e] ∘ (i_k i_k+1)
    std::vector<std::vector<std::size_t>> times_gen;
    // BFS parent: elements[e] = elements[parent[e]] ∘ gen(parent_gen[e])
    std::vector<std::size_t> parent;
    std::vector<std::size_t> parent_gen;

    std::size_t order() const { return elements.size(); }
};

const StabilizerTable& stabilizer_table(const Word& canonical);

/// One orbit cell of a symmetric sequence: labels with a left action of
/// Stab(word), given on adjacent generators and validated on construction.
class YoungSet {
public:
    YoungSet() = default;

    /// `generator_action` maps a generator position i (word[i] == word[i+1]) to
    /// the label permutation induced by (i i+1). Missing generators act
    /// trivially. Throws ValidationError if the maps do not define an action.
    YoungSet(Word word, std::vector<std::string> labels,
             std::map<std::size_t, std::vector<int>> generator_action = {});

    static YoungSet trivial(Word word, std::vector<std::string> labels);

    const Word& word() const { return word_; }
    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    std::optional<int> find_label(const std::string& name) const;

    const StabilizerTable& stab() const { return *stab_; }

    /// F[h](label) for h ∈ Stab(word).
    int act(const Perm& h, int label) const;
    int act(std::size_t element_index, int label) const { return (*maps_)[element_index][label]; }
    /// Action of the generator (i i+1).
    int act_generator(std::size_t position, int label) const;

    const std::map<std::size_t, std::vector<int>>& generator_action() const { return gens_; }

    /// Orbits ordered by minimum label; each orbit sorted.
    std::vector<std::vector<int>> orbits() const;

    /// Same word, labels and action (label names included).
    bool operator==(const YoungSet& other) const;

private:
    Word word_;
    std::vector<std::string> labels_;
    std::map<std::size_t, std::vector<int>> gens_;
    const StabilizerTable* stab_ = nullptr;
    std::shared_ptr<const std::vector<std::vector<int>>> maps_;
    std::shared_ptr<const std::map<std::string, int>> by_name_;
};

/// A Stab-equivariant bijection labels(a) → labels(b), the first one found in
/// backtracking order, or nullopt. Throws InputError if the words differ.
std::optional<std::vector<int>> equivariant_iso_search(const YoungSet& a, const YoungSet& b);

/// True iff f: labels(a) → labels(b) commutes with every generator.
bool is_equivariant(const YoungSet& a, const YoungSet& b, const std::vector<int>& f);

}  // namespace opbim
