#pragma once

// Finite-domain backtracking search with watched constraints and forcing.
// Used by every enumeration oracle (algebras, bimodules, module maps).

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

namespace opbim {

class Csp {
public:
    enum class Status { True, False, Unknown };

    /// Read access to the current partial assignment. `value` returns nullopt
    /// for an unassigned variable and records it as the blocker.
    class View {
    public:
        std::optional<int> value(int var) const;
        int blocker() const { return blocker_; }

    private:
        friend class Csp;
        explicit View(const std::vector<int>& values) : values_(values) {}
        const std::vector<int>& values_;
        mutable int blocker_ = -1;
    };

    /// A constraint returns True/False once decided. When it returns Unknown
    /// it may request that `force_var` take `force_value`.
    struct Outcome {
        Status status = Status::Unknown;
        int force_var = -1;
        int force_value = -1;
        static Outcome yes() { return {Status::True}; }
        static Outcome no() { return {Status::False}; }
        static Outcome unknown() { return {}; }
        static Outcome force(int var, int value) { return {Status::Unknown, var, value}; }
    };
    using Constraint = std::function<Outcome(const View&)>;

    int add_variable(int domain_size);
    void add_constraint(Constraint c);
    /// Pins a variable before search.
    void fix(int var, int value);

    std::size_t variable_count() const { return domains_.size(); }

    /// Enumerates all solutions in lexicographic order of the variable values.
    /// Calls on_solution for each; stop early by returning false. Throws
    /// ResourceError once more than `budget` search nodes are visited.
    std::uint64_t solve(const std::function<bool(const std::vector<int>&)>& on_solution, std::uint64_t budget);

private:
    bool propagate(std::vector<int>& queue, std::vector<int>& trail);
    bool set(int var, int value, std::vector<int>& queue, std::vector<int>& trail);
    bool evaluate(int c, std::vector<int>& queue, std::vector<int>& trail);
    void watch(int var, int c);

    std::vector<int> domains_;
    std::vector<std::optional<int>> fixed_;
    std::vector<Constraint> constraints_;
    std::vector<int> values_;
    std::vector<std::vector<int>> watchers_;
    std::unordered_set<std::uint64_t> watch_pairs_;
};

}  // namespace opbim
