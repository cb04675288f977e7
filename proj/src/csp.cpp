#include "opbim/csp.hpp"

#include "opbim/errors.hpp"

namespace opbim {

std::optional<int> Csp::View::value(int var) const {
    const int v = values_[var];
    if (v < 0) {
        if (blocker_ < 0) blocker_ = var;
        return std::nullopt;
    }
    return v;
}

int Csp::add_variable(int domain_size) {
    if (domain_size < 0) throw InputError("csp: negative domain");
    domains_.push_back(domain_size);
    fixed_.emplace_back();
    watchers_.emplace_back();
    return static_cast<int>(domains_.size()) - 1;
}

void Csp::add_constraint(Constraint c) { constraints_.push_back(std::move(c)); }

void Csp::fix(int var, int value) {
    if (value < 0 || value >= domains_.at(var)) throw InputError("csp: fixed value out of domain");
    fixed_[var] = value;
}

void Csp::watch(int var, int c) {
    const std::uint64_t key = (static_cast<std::uint64_t>(var) << 32) | static_cast<std::uint32_t>(c);
    if (watch_pairs_.insert(key).second) watchers_[var].push_back(c);
}

bool Csp::set(int var, int value, std::vector<int>& queue, std::vector<int>& trail) {
    if (values_[var] >= 0) return values_[var] == value;
    if (value < 0 || value >= domains_[var]) return false;
    values_[var] = value;
    trail.push_back(var);
    queue.push_back(var);
    return true;
}

bool Csp::evaluate(int c, std::vector<int>& queue, std::vector<int>& trail) {
    View view(values_);
    const Outcome out = constraints_[c](view);
    if (out.status == Status::False) return false;
    if (out.status == Status::True) return true;
    if (out.force_var >= 0) {
        watch(out.force_var, c);
        return set(out.force_var, out.force_value, queue, trail);
    }
    if (view.blocker() < 0) throw InternalError("csp: undecided constraint without an unassigned variable");
    watch(view.blocker(), c);
    return true;
}

bool Csp::propagate(std::vector<int>& queue, std::vector<int>& trail) {
    while (!queue.empty()) {
        const int var = queue.back();
        queue.pop_back();
        // watchers_ may grow while iterating
        for (std::size_t i = 0; i < watchers_[var].size(); ++i)
            if (!evaluate(watchers_[var][i], queue, trail)) {
                queue.clear();
                return false;
            }
    }
    return true;
}

std::uint64_t Csp::solve(const std::function<bool(const std::vector<int>&)>& on_solution, std::uint64_t budget) {
    const int n = static_cast<int>(domains_.size());
    values_.assign(n, -1);
    watch_pairs_.clear();
    for (auto& w : watchers_) w.clear();
    std::vector<int> trail, queue;
    std::uint64_t count = 0;
    std::uint64_t nodes = 0;

    for (int v = 0; v < n; ++v)
        if (fixed_[v] && !set(v, *fixed_[v], queue, trail)) return 0;
    for (int v = 0; v < n; ++v)
        if (domains_[v] == 0) return 0;
    for (int c = 0; c < static_cast<int>(constraints_.size()); ++c)
        if (!evaluate(c, queue, trail)) return 0;
    if (!propagate(queue, trail)) return 0;

    bool stop = false;
    auto rec = [&](auto&& self, int from) -> void {
        if (++nodes > budget) throw ResourceError("search budget of " + std::to_string(budget) + " nodes exceeded");
        int v = from;
        while (v < n && values_[v] >= 0) ++v;
        if (v == n) {
            ++count;
            if (!on_solution(values_)) stop = true;
            return;
        }
        for (int val = 0; val < domains_[v] && !stop; ++val) {
            const std::size_t mark = trail.size();
            if (set(v, val, queue, trail) && propagate(queue, trail)) self(self, v + 1);
            while (trail.size() > mark) {
                values_[trail.back()] = -1;
                trail.pop_back();
            }
        }
    };
    rec(rec, 0);
    return count;
}

}  // namespace opbim
