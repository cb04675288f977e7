#include "opbim/iso.hpp"

#include <deque>

#include "opbim/errors.hpp"

namespace opbim {

namespace {

struct Search {
    const ActionGraph& a;
    const ActionGraph& b;
    std::vector<int> fwd;
    std::vector<int> bwd;
    std::vector<int> trail;

    bool assign_and_propagate(int x, int y) {
        std::deque<std::pair<int, int>> queue;
        auto assign = [&](int u, int v) {
            fwd[u] = v;
            bwd[v] = u;
            trail.push_back(u);
            queue.emplace_back(u, v);
        };
        if (bwd[y] != -1 || a.color[x] != b.color[y]) return false;
        assign(x, y);
        while (!queue.empty()) {
            auto [u, v] = queue.front();
            queue.pop_front();
            for (std::size_t g = 0; g < a.next.size(); ++g) {
                const int u2 = a.next[g][u];
                const int v2 = b.next[g][v];
                if ((u2 == -1) != (v2 == -1)) return false;
                if (u2 == -1) continue;
                if (fwd[u2] != -1) {
                    if (fwd[u2] != v2) return false;
                    continue;
                }
                if (bwd[v2] != -1 || a.color[u2] != b.color[v2]) return false;
                assign(u2, v2);
            }
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail.size() > mark) {
            const int u = trail.back();
            trail.pop_back();
            bwd[fwd[u]] = -1;
            fwd[u] = -1;
        }
    }

    bool solve(int start) {
        int x = start;
        while (x < static_cast<int>(a.size()) && fwd[x] != -1) ++x;
        if (x == static_cast<int>(a.size())) return true;
        for (int y = 0; y < static_cast<int>(b.size()); ++y) {
            if (bwd[y] != -1 || b.color[y] != a.color[x]) continue;
            const std::size_t mark = trail.size();
            if (assign_and_propagate(x, y) && solve(x + 1)) return true;
            undo(mark);
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> find_graph_iso(const ActionGraph& a, const ActionGraph& b) {
    if (a.next.size() != b.next.size()) throw InputError("find_graph_iso: generator count mismatch");
    if (a.size() != b.size()) return std::nullopt;
    Search s{a, b, std::vector<int>(a.size(), -1), std::vector<int>(b.size(), -1), {}};
    if (!s.solve(0)) return std::nullopt;
    return s.fwd;
}

bool is_graph_iso(const ActionGraph& a, const ActionGraph& b, const std::vector<int>& f) {
    if (a.size() != b.size() || f.size() != a.size() || a.next.size() != b.next.size()) return false;
    std::vector<char> hit(b.size(), 0);
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (f[x] < 0 || f[x] >= static_cast<int>(b.size()) || hit[f[x]]) return false;
        if (a.color[x] != b.color[f[x]]) return false;
        hit[f[x]] = 1;
    }
    for (std::size_t g = 0; g < a.next.size(); ++g)
        for (std::size_t x = 0; x < a.size(); ++x) {
            const int u = a.next[g][x];
            const int v = b.next[g][f[x]];
            if ((u == -1) != (v == -1)) return false;
            if (u != -1 && f[u] != v) return false;
        }
    return true;
}

}  // namespace opbim
