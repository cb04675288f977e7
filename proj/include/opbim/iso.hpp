#pragma once

#include <optional>
#include <vector>

namespace opbim {

/// A finite set with colored elements and partial generator maps. Used to
/// decide isomorphism of group(oid) actions: a bijection must preserve colors
/// and commute with every generator.
struct ActionGraph {
    std::vector<int> color;
    /// next[g][x] is the image of x under generator g, or -1 if undefined.
    std::vector<std::vector<int>> next;

    std::size_t size() const { return color.size(); }
};

/// First color-preserving bijection a → b commuting with all generators, in
/// backtracking order (smallest unassigned source, smallest candidate target).
std::optional<std::vector<int>> find_graph_iso(const ActionGraph& a, const ActionGraph& b);

bool is_graph_iso(const ActionGraph& a, const ActionGraph& b, const std::vector<int>& f);

}  // namespace opbim
