#pragma once

// Reflexive pairs of maps of symmetric sequences for the tameness checks.

#include <random>
#include <string>
#include <vector>

#include "opbim/symseq.hpp"

namespace testing_support {

using namespace opbim;


// Every equivariant self-map of a small cell, by brute force.
inline std::vector<std::vector<int>> equivariant_endomaps(const YoungSet& cell) {
    std::vector<std::vector<int>> out;
    std::vector<int> f(cell.size(), 0);
    while (true) {
        if (is_equivariant(cell, cell, f)) out.push_back(f);
        std::size_t i = 0;
        while (i < f.size() && ++f[i] == static_cast<int>(cell.size())) f[i++] = 0;
        if (i == f.size()) break;
    }
    return out;
}

struct ReflexivePair {
    SymSeqMap alpha, beta, section;
};

// F0 = F1 ⊔ F1 cellwise; α folds, β folds through a random endomap on the
// second copy, and the first copy is a common section.
inline ReflexivePair random_reflexive_pair(std::mt19937& rng, const SymSeqPtr& f1) {
    SymSeq f0(f1->dom_sorts(), f1->cod_sorts());
    ReflexivePair p;
    for (const auto& [key, cell] : f1->cells()) {
        std::vector<std::string> labels = cell.labels();
        for (const auto& l : cell.labels()) labels.push_back("c" + l);
        std::map<std::size_t, std::vector<int>> action;
        const int n = static_cast<int>(cell.size());
        for (const auto& [pos, m] : cell.generator_action()) {
            std::vector<int> doubled = m;
            for (int v : m) doubled.push_back(v + n);
            action.emplace(pos, doubled);
        }
        f0.set_cell(key, YoungSet(key.word, labels, action));
        const auto ends = equivariant_endomaps(cell);
        const auto& g = ends[rng() % ends.size()];
        std::vector<int> a(2 * n), b(2 * n), s(n);
        for (int i = 0; i < n; ++i) {
            a[i] = a[i + n] = b[i] = i;
            b[i + n] = g[i];
            s[i] = i;
        }
        p.alpha.components.emplace(key, a);
        p.beta.components.emplace(key, b);
        p.section.components.emplace(key, s);
    }
    const SymSeqPtr src = make_symseq(std::move(f0));
    p.alpha.source = p.beta.source = p.section.target = src;
    p.alpha.target = p.beta.target = p.section.source = f1;
    return p;
}


}  // namespace testing_support
