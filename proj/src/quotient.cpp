#include "opbim/quotient.hpp"

#include <string>

#include "opbim/errors.hpp"

namespace opbim {

UnionFind::UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

std::size_t UnionFind::find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
        std::size_t next = parent_[x];
        parent_[x] = root;
        x = next;
    }
    return root;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
}

QuotientResult quotient(UnionFind& uf) {
    QuotientResult out;
    const std::size_t n = uf.size();
    out.class_of.assign(n, 0);
    std::vector<std::size_t> class_of_root(n, static_cast<std::size_t>(-1));
    for (std::size_t e = 0; e < n; ++e) {
        const std::size_t r = uf.find(e);
        if (class_of_root[r] == static_cast<std::size_t>(-1)) {
            class_of_root[r] = out.classes.size();
            out.classes.emplace_back();
        }
        out.class_of[e] = class_of_root[r];
        out.classes[class_of_root[r]].push_back(e);
    }
    return out;
}

QuotientResult quotient(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> relations) {
    UnionFind uf(n);
    for (auto [a, b] : relations) {
        if (a >= n || b >= n)
            throw InputError("quotient: relation (" + std::to_string(a) + "," + std::to_string(b) +
                             ") outside element set of size " + std::to_string(n));
        uf.unite(a, b);
    }
    return quotient(uf);
}

}  // namespace opbim
