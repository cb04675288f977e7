#include <algorithm>
#include <random>

#include "doctest.h"
#include "opbim/errors.hpp"
#include "opbim/groupoid.hpp"
#include "opbim/iso.hpp"
#include "opbim/perm.hpp"
#include "opbim/quotient.hpp"
#include "opbim/young.hpp"

using namespace opbim;

namespace {

Perm random_perm(std::mt19937& rng, std::size_t n) {
    std::vector<int> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<int>(i);
    std::shuffle(img.begin(), img.end(), rng);
    return Perm(img);
}

Word random_word(std::mt19937& rng, std::size_t n, int sorts) {
    Word w(n);
    for (auto& s : w) s = static_cast<int>(rng() % sorts);
    return w;
}

}  // namespace

TEST_CASE("perm rejects non-bijections") {
    CHECK_THROWS_AS(Perm({0, 0}), InputError);
    CHECK_THROWS_AS(Perm({1, 2}), InputError);
    CHECK(Perm({1, 0}).inverse() == Perm({1, 0}));
}

TEST_CASE("composition is associative and unital") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng() % 6;
        Perm p = random_perm(rng, n), q = random_perm(rng, n), r = random_perm(rng, n);
        CHECK(compose(compose(p, q), r) == compose(p, compose(q, r)));
        CHECK(compose(p, Perm::identity(n)) == p);
        CHECK(compose(Perm::identity(n), p) == p);
        CHECK(compose(p, p.inverse()).is_identity());
    }
}

TEST_CASE("canonical word examples") {
    // a = 0, b = 1
    auto c = canonical_word({1, 0, 1});
    CHECK(c.word == Word{0, 1, 1});
    CHECK(c.transport == Perm({1, 0, 2}));
    CHECK(canonical_word({0}).transport.is_identity());
    auto triple = canonical_word({0, 0, 0});
    CHECK(triple.word == Word{0, 0, 0});
    CHECK(triple.transport.is_identity());
}

TEST_CASE("canonical transport is an order-preserving arrow and idempotent") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Word w = random_word(rng, rng() % 7, 3);
        auto c = canonical_word(w);
        CHECK(std::is_sorted(c.word.begin(), c.word.end()));
        CHECK(is_arrow(c.word, w, c.transport));
        for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == c.word[c.transport(i)]);
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                if (w[i] == w[j]) CHECK(c.transport(i) < c.transport(j));
        auto cc = canonical_word(c.word);
        CHECK(cc.word == c.word);
        CHECK(cc.transport.is_identity());
    }
}

TEST_CASE("arrows compose as functions") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Word a = random_word(rng, 4, 2);
        const Perm s = random_perm(rng, 4), t = random_perm(rng, 4);
        const Word b = apply_arrow(a, s);
        const Word c = apply_arrow(b, t);
        CHECK(is_arrow(a, b, s));
        CHECK(is_arrow(a, c, compose(s, t)));
    }
    CHECK(all_arrows({0, 0, 1}, {0, 1, 0}).size() == 2);
    CHECK(all_arrows({0, 1}, {0, 0}).empty());
    CHECK(stabilizer({0, 0, 1, 1, 1}).size() == 12);
    CHECK(all_permutations(4).size() == 24);
}

TEST_CASE("block permutation moves whole blocks") {
    const std::vector<std::size_t> lengths{1, 2, 0, 3};
    const Perm pi({3, 0, 2, 1});
    const Word c{0, 1, 1, 2, 2, 2};
    const Perm bp = block_permutation(lengths, pi);
    CHECK(apply_arrow(c, bp) == Word{2, 2, 2, 0, 1, 1});
}

TEST_CASE("quotient examples") {
    std::vector<std::pair<std::size_t, std::size_t>> r1{{0, 1}};
    auto q1 = quotient(3, r1);
    CHECK(q1.classes == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
    auto q2 = quotient(3, {});
    CHECK(q2.size() == 3);
    std::vector<std::pair<std::size_t, std::size_t>> r3{{0, 1}, {1, 2}};
    auto q3 = quotient(4, r3);
    CHECK(q3.classes == std::vector<std::vector<std::size_t>>{{0, 1, 2}, {3}});
    std::vector<std::pair<std::size_t, std::size_t>> bad{{0, 5}};
    CHECK_THROWS_AS(quotient(3, bad), InputError);
}

TEST_CASE("quotient is independent of relation order") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<std::size_t, std::size_t>> rel;
        for (int k = 0; k < 8; ++k) rel.emplace_back(rng() % 12, rng() % 12);
        auto base = quotient(12, rel);
        for (const QuotientResult* q : {&base})
            for (std::size_t c = 0; c < q->size(); ++c)
                CHECK(std::count(q->classes[c].begin(), q->classes[c].end(), q->representative(c)) == 1);
        std::shuffle(rel.begin(), rel.end(), rng);
        for (auto& p : rel)
            if (rng() % 2) std::swap(p.first, p.second);
        CHECK(quotient(12, rel).classes == base.classes);
    }
}

TEST_CASE("young sets validate actions") {
    const Word w{0, 0};
    YoungSet swap(w, {"p", "q"}, {{0, {1, 0}}});
    YoungSet triv = YoungSet::trivial(w, {"p", "q"});
    CHECK(swap.act(Perm({1, 0}), 0) == 1);
    CHECK(swap.orbits().size() == 1);
    CHECK(triv.orbits().size() == 2);
    // (0 1) must square to the identity
    CHECK_THROWS_AS(YoungSet({0, 0}, {"a", "b", "c"}, {{0, {1, 2, 0}}}), ValidationError);
    CHECK_THROWS_AS(YoungSet({1, 0}, {"a"}), InputError);
    CHECK_THROWS_AS(YoungSet({0, 1}, {"a"}, {{0, {0}}}), InputError);
    // braid relation in Σ₃: a 3-cycle on generator 0 is not an involution
    const Word w3{0, 0, 0};
    YoungSet regular(w3, {"0", "1", "2", "3", "4", "5"}, {});
    CHECK(regular.stab().order() == 6);
}

TEST_CASE("generator actions extend to the whole stabilizer") {
    // Σ₃ acting on 3 points by permuting them: label i is point i, F[h](i) = h(i).
    const Word w{0, 0, 0};
    std::map<std::size_t, std::vector<int>> gens{{0, {1, 0, 2}}, {1, {0, 2, 1}}};
    YoungSet pts(w, {"0", "1", "2"}, gens);
    for (const Perm& h : stabilizer(w))
        for (int i = 0; i < 3; ++i) CHECK(pts.act(h, i) == h(i));
}

TEST_CASE("equivariant iso search") {
    const Word w{0, 0};
    YoungSet swap(w, {"p", "q"}, {{0, {1, 0}}});
    YoungSet triv = YoungSet::trivial(w, {"p", "q"});
    auto id = equivariant_iso_search(swap, swap);
    REQUIRE(id);
    CHECK(*id == std::vector<int>{0, 1});
    CHECK_FALSE(equivariant_iso_search(triv, swap));
    CHECK_FALSE(equivariant_iso_search(triv, YoungSet::trivial(w, {"p"})));
    CHECK_THROWS_AS(equivariant_iso_search(triv, YoungSet::trivial({0}, {"p", "q"})), InputError);

    // two copies of the regular Σ₃-set, differently labelled
    std::map<std::size_t, std::vector<int>> g1, g2;
    auto elems = stabilizer({0, 0, 0});
    for (std::size_t pos : {0u, 1u}) {
        std::vector<int> m(6), m2(6);
        for (int e = 0; e < 6; ++e) {
            Perm p = compose(Perm::adjacent(3, pos), elems[e]);
            m[e] = static_cast<int>(std::find(elems.begin(), elems.end(), p) - elems.begin());
        }
        // relabel by e ↦ 5 - e
        for (int e = 0; e < 6; ++e) m2[5 - e] = 5 - m[e];
        g1[pos] = m;
        g2[pos] = m2;
    }
    YoungSet a({0, 0, 0}, {"a", "b", "c", "d", "e", "f"}, g1), b({0, 0, 0}, {"a", "b", "c", "d", "e", "f"}, g2);
    auto iso = equivariant_iso_search(a, b);
    REQUIRE(iso);
    CHECK(is_equivariant(a, b, *iso));
}

TEST_CASE("finite groupoids") {
    // Z/2 as a one-object groupoid
    FinGroupoid z2({"*"}, {{0, 0, "e"}, {0, 0, "s"}}, {{0, 1}, {1, 0}}, {0});
    CHECK(z2.inverse(1) == 1);
    CHECK(z2.hom(0, 0).size() == 2);
    CHECK_THROWS_AS(FinGroupoid({"*"}, {{0, 0, "e"}, {0, 0, "s"}}, {{0, 1}, {1, 1}}, {0}), ValidationError);
    auto sum = groupoid_sum(z2, FinGroupoid::discrete({"*"}));
    CHECK(sum.objects() == std::vector<std::string>{"*.1", "*.2"});
    CHECK(sum.arrow_count() == 3);
    CHECK(sum.compose(1, 1) == 0);
    CHECK(sum.compose(2, 1) == -1);
}
