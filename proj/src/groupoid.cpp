#include "opbim/groupoid.hpp"

#include <set>

#include "opbim/errors.hpp"

namespace opbim {

FinGroupoid::FinGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows,
                         std::vector<std::vector<int>> composition, std::vector<int> identities)
    : objects_(std::move(objects)),
      arrows_(std::move(arrows)),
      composition_(std::move(composition)),
      identities_(std::move(identities)) {
    const int n_obj = static_cast<int>(objects_.size());
    const int n_arr = static_cast<int>(arrows_.size());
    if (static_cast<int>(identities_.size()) != n_obj) throw InputError("groupoid: one identity per object required");
    if (static_cast<int>(composition_.size()) != n_arr) throw InputError("groupoid: composition table size");
    for (const auto& row : composition_)
        if (static_cast<int>(row.size()) != n_arr) throw InputError("groupoid: composition table size");
    for (const Arrow& a : arrows_)
        if (a.src < 0 || a.src >= n_obj || a.dst < 0 || a.dst >= n_obj) throw InputError("groupoid: bad arrow endpoint");

    homs_.assign(objects_.size() * objects_.size(), {});
    for (int a = 0; a < n_arr; ++a) homs_[arrows_[a].src * n_obj + arrows_[a].dst].push_back(a);

    for (int g = 0; g < n_arr; ++g)
        for (int f = 0; f < n_arr; ++f) {
            const bool composable = arrows_[f].dst == arrows_[g].src;
            const int h = composition_[g][f];
            if (!composable) {
                if (h != -1) throw ValidationError("groupoid: composite of non-composable pair", arrows_[g].name + "*" + arrows_[f].name);
                continue;
            }
            if (h < 0 || h >= n_arr || arrows_[h].src != arrows_[f].src || arrows_[h].dst != arrows_[g].dst)
                throw ValidationError("groupoid: composite has wrong type", arrows_[g].name + "*" + arrows_[f].name);
        }
    for (int o = 0; o < n_obj; ++o) {
        const int e = identities_[o];
        if (e < 0 || e >= n_arr || arrows_[e].src != o || arrows_[e].dst != o)
            throw ValidationError("groupoid: identity has wrong type", objects_[o]);
    }
    for (int f = 0; f < n_arr; ++f) {
        if (composition_[identities_[arrows_[f].dst]][f] != f || composition_[f][identities_[arrows_[f].src]] != f)
            throw ValidationError("groupoid: unit law fails", arrows_[f].name);
    }
    for (int h = 0; h < n_arr; ++h)
        for (int g = 0; g < n_arr; ++g) {
            if (arrows_[h].src != arrows_[g].dst) continue;
            for (int f = 0; f < n_arr; ++f) {
                if (arrows_[g].src != arrows_[f].dst) continue;
                if (composition_[composition_[h][g]][f] != composition_[h][composition_[g][f]])
                    throw ValidationError("groupoid: associativity fails",
                                          arrows_[h].name + "," + arrows_[g].name + "," + arrows_[f].name);
            }
        }
    inverses_.assign(n_arr, -1);
    for (int f = 0; f < n_arr; ++f) {
        for (int g : hom(arrows_[f].dst, arrows_[f].src))
            if (composition_[g][f] == identities_[arrows_[f].src] && composition_[f][g] == identities_[arrows_[f].dst]) {
                inverses_[f] = g;
                break;
            }
        if (inverses_[f] == -1) throw ValidationError("groupoid: arrow has no inverse", arrows_[f].name);
    }
}

FinGroupoid FinGroupoid::discrete(std::vector<std::string> objects) {
    const std::size_t n = objects.size();
    std::vector<Arrow> arrows;
    std::vector<std::vector<int>> comp(n, std::vector<int>(n, -1));
    std::vector<int> ids;
    for (std::size_t o = 0; o < n; ++o) {
        arrows.push_back({static_cast<int>(o), static_cast<int>(o), "id_" + objects[o]});
        comp[o][o] = static_cast<int>(o);
        ids.push_back(static_cast<int>(o));
    }
    return FinGroupoid(std::move(objects), std::move(arrows), std::move(comp), std::move(ids));
}

int FinGroupoid::find_object(const std::string& name) const {
    for (std::size_t o = 0; o < objects_.size(); ++o)
        if (objects_[o] == name) return static_cast<int>(o);
    return -1;
}

FinGroupoid groupoid_sum(const FinGroupoid& a, const FinGroupoid& b) {
    std::set<std::string> names_a(a.objects().begin(), a.objects().end());
    bool collide = false;
    for (const auto& n : b.objects()) collide = collide || names_a.count(n);
    std::vector<std::string> objects;
    for (const auto& n : a.objects()) objects.push_back(collide ? n + ".1" : n);
    for (const auto& n : b.objects()) objects.push_back(collide ? n + ".2" : n);

    const int oa = static_cast<int>(a.object_count());
    const int na = static_cast<int>(a.arrow_count());
    const int nb = static_cast<int>(b.arrow_count());
    std::vector<FinGroupoid::Arrow> arrows;
    for (int f = 0; f < na; ++f) arrows.push_back(a.arrow(f));
    for (int f = 0; f < nb; ++f) {
        auto ar = b.arrow(f);
        arrows.push_back({ar.src + oa, ar.dst + oa, ar.name});
    }
    std::vector<std::vector<int>> comp(na + nb, std::vector<int>(na + nb, -1));
    for (int g = 0; g < na; ++g)
        for (int f = 0; f < na; ++f) comp[g][f] = a.compose(g, f);
    for (int g = 0; g < nb; ++g)
        for (int f = 0; f < nb; ++f) {
            const int h = b.compose(g, f);
            comp[g + na][f + na] = h == -1 ? -1 : h + na;
        }
    std::vector<int> ids;
    for (int o = 0; o < oa; ++o) ids.push_back(a.identity(o));
    for (int o = 0; o < static_cast<int>(b.object_count()); ++o) ids.push_back(b.identity(o) + na);
    return FinGroupoid(std::move(objects), std::move(arrows), std::move(comp), std::move(ids));
}

}  // namespace opbim
