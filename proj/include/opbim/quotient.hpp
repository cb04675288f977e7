#pragma once

// Quotients of finite sets by generated equivalence relations. Every coend
// and coequalizer in the library is realized through these.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace opbim {

class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0);

    std::size_t size() const { return parent_.size(); }
    std::size_t find(std::size_t x);
    /// Returns true if the two classes were distinct. The surviving root is the
    /// smaller index, so roots are always class minima.
    bool unite(std::size_t a, std::size_t b);

private:
    std::vector<std::size_t> parent_;
};

struct QuotientResult {
    /// Classes ordered by their minimum element; members sorted ascending.
    std::vector<std::vector<std::size_t>> classes;
    /// class_of[e] is the index into `classes` of element e.
    std::vector<std::size_t> class_of;

    std::size_t representative(std::size_t c) const { return classes[c].front(); }
    std::size_t size() const { return classes.size(); }
};

/// Partition of {0, ..., n-1} by the equivalence generated by `relations`.
/// Throws InputError if a pair mentions an element outside the set.
QuotientResult quotient(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> relations);

/// Builds the result straight from a populated union-find.
QuotientResult quotient(UnionFind& uf);

}  // namespace opbim
