#pragma once

// Test helpers: random small symmetric sequences and independent counting
// oracles. Nothing here calls the composition machinery.

#include <cstdint>
#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "opbim/errors.hpp"
#include "opbim/symseq.hpp"

namespace testing_support {

using namespace opbim;

/// Every set partition of {0..n-1}, as block lists (restricted growth strings).
inline std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> rgs(n, 0);
    std::function<void(int, int)> rec = [&](int i, int max_block) {
        if (i == n) {
            std::vector<std::vector<int>> blocks(max_block + 1);
            for (int k = 0; k < n; ++k) blocks[rgs[k]].push_back(k);
            out.push_back(blocks);
            return;
        }
        for (int b = 0; b <= max_block + 1; ++b) {
            rgs[i] = b;
            rec(i + 1, std::max(max_block, b));
        }
    };
    rec(0, -1);
    return out;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Multisets of size n drawn from a k-set.
inline std::uint64_t multisets(std::uint64_t k, std::uint64_t n) { return n == 0 ? 1 : binomial(k + n - 1, n); }

/// Every valid generator action on `k` labels for a canonical word, in a fixed order.
inline std::vector<YoungSet> all_actions(const Word& w, int k) {
    const auto gens = young_generators(w);
    std::vector<std::vector<int>> perms;
    std::vector<int> p(k);
    for (int i = 0; i < k; ++i) p[i] = i;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) labels.push_back(std::string(1, static_cast<char>('p' + i)));
    std::vector<YoungSet> out;
    std::vector<std::size_t> choice(gens.size(), 0);
    while (true) {
        std::map<std::size_t, std::vector<int>> action;
        for (std::size_t g = 0; g < gens.size(); ++g) action[gens[g]] = perms[choice[g]];
        try {
            out.emplace_back(w, labels, action);
        } catch (const ValidationError&) {
        }
        std::size_t g = 0;
        while (g < gens.size() && ++choice[g] == perms.size()) choice[g++] = 0;
        if (g == gens.size()) break;
    }
    return out;
}

/// All canonical words over `sorts` sorts of length ≤ max_len.
inline std::vector<Word> canonical_words(int sorts, std::size_t max_len) {
    std::vector<Word> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == max_len) continue;
        const int start = out[i].empty() ? 0 : out[i].back();
        for (int s = start; s < sorts; ++s) {
            Word w = out[i];
            w.push_back(s);
            out.push_back(w);
        }
    }
    return out;
}

struct RandomSpec {
    int dom_sorts = 1;
    int cod_sorts = 1;
    std::size_t min_arity = 1;
    std::size_t max_arity = 3;
    int max_labels = 3;
    int max_cells = 3;
};

inline std::vector<std::string> sort_names(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

inline SymSeqPtr random_symseq(std::mt19937& rng, const RandomSpec& spec) {
    SymSeq s(sort_names(spec.dom_sorts), sort_names(spec.cod_sorts));
    std::vector<Word> words;
    for (const Word& w : canonical_words(spec.dom_sorts, spec.max_arity))
        if (w.size() >= spec.min_arity) words.push_back(w);
    const int cells = 1 + static_cast<int>(rng() % spec.max_cells);
    for (int c = 0; c < cells; ++c) {
        const Word& w = words[rng() % words.size()];
        const Sort out = static_cast<Sort>(rng() % spec.cod_sorts);
        const int k = 1 + static_cast<int>(rng() % spec.max_labels);
        auto actions = all_actions(w, k);
        s.set_cell({w, out}, actions[rng() % actions.size()]);
    }
    return make_symseq(std::move(s));
}

/// Single-sorted sequence with trivial actions and cells of the given sizes.
inline SymSeqPtr trivial_species(const std::vector<std::pair<std::size_t, std::vector<std::string>>>& cells) {
    SymSeq s({"x"}, {"x"});
    for (const auto& [n, labels] : cells) s.set_cell({Word(n, 0), 0}, YoungSet::trivial(Word(n, 0), labels));
    return make_symseq(std::move(s));
}

/// Asserts a map is a well-defined equivariant bijection; returns a failure note or "".
inline std::string iso_failure(const SymSeqMap& m) {
    try {
        m.validate();
    } catch (const ValidationError& e) {
        return e.what();
    }
    return m.is_iso() ? "" : "not bijective";
}

}  // namespace testing_support
