#pragma once

#include <string>
#include <vector>

namespace opbim {

/// A finite groupoid given by an explicit composition table. Arrows are
/// indexed 0..arrow_count()-1; compose(g, f) is "g after f" for f: a → b,
/// g: b → c, and -1 when the pair is not composable.
class FinGroupoid {
public:
    struct Arrow {
        int src;
        int dst;
        std::string name;
        bool operator==(const Arrow&) const = default;
    };

    FinGroupoid() = default;
    /// Validates associativity, units and inverses; throws ValidationError.
    FinGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows,
                std::vector<std::vector<int>> composition, std::vector<int> identities);

    static FinGroupoid discrete(std::vector<std::string> objects);
    static FinGroupoid empty() { return discrete({}); }

    std::size_t object_count() const { return objects_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }
    const std::vector<std::string>& objects() const { return objects_; }
    const std::string& object(int o) const { return objects_[o]; }
    const Arrow& arrow(int a) const { return arrows_[a]; }
    int compose(int g, int f) const { return composition_[g][f]; }
    int identity(int o) const { return identities_[o]; }
    int inverse(int a) const { return inverses_[a]; }
    /// Arrows a → b in index order.
    const std::vector<int>& hom(int a, int b) const { return homs_[a * objects_.size() + b]; }
    bool is_discrete() const { return arrows_.size() == objects_.size(); }
    int find_object(const std::string& name) const;

    bool operator==(const FinGroupoid&) const = default;

private:
    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> composition_;
    std::vector<int> identities_;
    std::vector<int> inverses_;
    std::vector<std::vector<int>> homs_;
};

/// Coproduct of groupoids; objects of `a` come first. Object names are kept
/// unless they collide, in which case they become "name.1" / "name.2".
FinGroupoid groupoid_sum(const FinGroupoid& a, const FinGroupoid& b);

}  // namespace opbim
