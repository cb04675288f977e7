#include <doctest.h>

#include <random>

#include "opbim/bimodule.hpp"
#include "opbim/errors.hpp"
#include "bimodule_support.hpp"
#include "support.hpp"

using namespace opbim;
using namespace testing_support;


TEST_CASE("builtin identity bimodules satisfy every law") {
    for (const OperadPtr& a : {unit1(), com3(), assoc_operad(3), magma_operad(3), com_operad(2, {"a", "b"})}) {
        CAPTURE(a->name());
        const BimodulePtr m = identity_bimodule(a);
        CHECK(check_bimodule(*m).message() == "ok");
        CHECK(check_bimodule(*left_regular_bimodule(a)).message() == "ok");
        CHECK(check_bimodule(*right_regular_bimodule(a)).message() == "ok");
    }
}

TEST_CASE("symmetric sequences are bimodules over unit operads") {
    std::mt19937 rng(11);
    for (int i = 0; i < 10; ++i) {
        const SymSeqPtr f = testing_support::random_symseq(rng, {1, 2, 0, 3, 3, 3});
        CHECK(check_bimodule(*bimodule_of_symseq(f)).message() == "ok");
    }
}

TEST_CASE("perturbing an action is caught with a witness") {
    const OperadPtr a = assoc_operad(3);
    // swap the two binary operations after acting on the right
    SymSeqMap swap = identity_map(a->carrier());
    std::swap(swap.components.at({{0, 0}, 0})[0], swap.components.at({{0, 0}, 0})[1]);
    const SymSeqMap rho = vcompose(swap, a->mu());
    try {
        make_bimodule(a, a, a->carrier(), a->mu(), rho);
        FAIL("perturbed bimodule accepted");
    } catch (const ValidationError& e) {
        CHECK(!e.witness().empty());
    }
    const BimodulePtr m = make_bimodule(a, a, a->carrier(), a->mu(), rho, false);
    CHECK(!check_bimodule(*m).ok);
}

TEST_CASE("relative composition over unit operads is plain composition") {
    std::mt19937 rng(5);
    for (int i = 0; i < 8; ++i) {
        const SymSeqPtr f = testing_support::random_symseq(rng, {1, 1, 1, 2, 2, 2});
        const SymSeqPtr g = testing_support::random_symseq(rng, {1, 1, 1, 2, 2, 2});
        const RelativeComposite rc = relative_compose(bimodule_of_symseq(g), bimodule_of_symseq(f));
        CHECK(iso_failure(rc.quotient) == "");
        CHECK(*rc.result->carrier() == *compose_symseq(g, f).result());
    }
}

TEST_CASE("unitors are bijections and agree on the operad itself") {
    for (const OperadPtr& a : {com3(), assoc_operad(3), magma_operad(3)}) {
        CAPTURE(a->name());
        const Unitors u = rel_unitors(identity_bimodule(a));
        CHECK(iso_failure(u.left.map) == "");
        CHECK(iso_failure(u.right.map) == "");
        CHECK(u.left.map == u.right.map);
        SymSeqMap mu = a->mu();
        mu.source = u.left_composite.quotient.source;
        CHECK(vcompose(u.left.map, u.left_composite.quotient) == mu);
        CHECK(check_bimodule_map(u.left).message() == "ok");
        CHECK(check_bimodule(*u.left_composite.result).message() == "ok");
    }
    std::mt19937 rng(3);
    for (int i = 0; i < 5; ++i) {
        const BimodulePtr m = free_com_bimodule(testing_support::random_symseq(rng, {1, 1, 1, 2, 2, 2}));
        CHECK(check_bimodule(*m).message() == "ok");
        const Unitors u = rel_unitors(m);
        CHECK(check_bimodule_map(u.left).message() == "ok");
        CHECK(check_bimodule_map(u.right).message() == "ok");
    }
}

TEST_CASE("enumerating bimodules over unit operads counts Young actions") {
    CHECK(count_group_actions(2, 2) == 2);
    const std::map<CellKey, std::size_t> binary{{{{0, 0}, 0}, 2}};
    std::vector<BimodulePtr> found;
    CHECK(enumerate_bimodules(unit1(), unit1(), binary, {}, [&](const BimodulePtr& m) { found.push_back(m); }) ==
          count_group_actions(2, 2));
    REQUIRE(found.size() == 2);
    CHECK(!(*found[0]->carrier() == *found[1]->carrier()));

    const std::map<CellKey, std::size_t> mixed{{{{}, 0}, 1}, {{{0}, 0}, 1}, {{{0, 0}, 0}, 2}, {{{0, 0, 0}, 0}, 2}};
    CHECK(enumerate_bimodules(unit1(), unit1(), mixed) == count_group_actions(2, 2) * count_group_actions(3, 2));
}

TEST_CASE("every enumerated bimodule passes the law suites") {
    const std::map<CellKey, std::size_t> cells{{{{0}, 0}, 1}, {{{0, 0}, 0}, 2}, {{{0, 0, 0}, 0}, 2}};
    std::uint64_t seen = 0;
    for (const auto& [b, a] : std::vector<std::pair<OperadPtr, OperadPtr>>{
             {com3(), unit1()}, {unit1(), com3()}, {com3(), com3()}, {assoc_operad(3), unit1()}}) {
        const std::uint64_t n = enumerate_bimodules(b, a, cells, {}, [&](const BimodulePtr& m) {
            ++seen;
            CHECK(check_bimodule(*m).message() == "ok");
        });
        CHECK(n > 0);
    }
    CHECK(seen > 0);
}

TEST_CASE("bimodules from the terminal operad are algebras") {
    for (const OperadPtr& a : {com3(), assoc_operad(3), magma_operad(3)})
        for (std::size_t k : {1u, 2u}) {
            CAPTURE(a->name());
            CAPTURE(k);
            const std::uint64_t algebras = enumerate_algebras(a, {k}).count;
            const std::uint64_t bims = enumerate_bimodules(a, terminal_operad(), {{{{}, 0}, k}}, {},
                                                           [&](const BimodulePtr& m) {
                                                               CHECK(check_bimodule(*m).message() == "ok");
                                                           });
            CHECK(bims == algebras);
        }
}

TEST_CASE("bimodule endomaps of an operad") {
    for (const OperadPtr& a : {assoc_operad(3), magma_operad(3), com3()}) {
        CAPTURE(a->name());
        const BimodulePtr m = identity_bimodule(a);
        // candidate equivariant maps: free orbits are determined by their representative's image
        std::uint64_t brute = 0;
        std::vector<std::pair<CellKey, std::vector<std::vector<int>>>> per_cell;
        for (const auto& [key, cell] : a->carrier()->cells()) {
            std::vector<std::vector<int>> maps;
            const auto orbits = cell.orbits();
            std::vector<std::size_t> pick(orbits.size(), 0);
            while (true) {
                std::vector<int> f(cell.size(), -1);
                bool ok = true;
                for (std::size_t o = 0; o < orbits.size() && ok; ++o)
                    for (std::size_t e = 0; e < cell.stab().order(); ++e) {
                        const int src = cell.act(e, orbits[o][0]);
                        const int dst = cell.act(e, static_cast<int>(pick[o]));
                        if (f[src] >= 0 && f[src] != dst) ok = false;
                        f[src] = dst;
                    }
                if (ok && is_equivariant(cell, cell, f)) maps.push_back(f);
                std::size_t o = 0;
                while (o < pick.size() && ++pick[o] == cell.size()) pick[o++] = 0;
                if (o == pick.size()) break;
            }
            per_cell.emplace_back(key, std::move(maps));
        }
        std::vector<std::size_t> pick(per_cell.size(), 0);
        while (true) {
            SymSeqMap f{a->carrier(), a->carrier(), {}};
            for (std::size_t i = 0; i < per_cell.size(); ++i)
                f.components.emplace(per_cell[i].first, per_cell[i].second[pick[i]]);
            if (check_bimodule_map({m, m, f}).ok) ++brute;
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == per_cell[i].second.size()) pick[i++] = 0;
            if (i == pick.size()) break;
        }
        CHECK(enumerate_bimodule_maps(m, m) == brute);
        CHECK(brute == 1);
    }
}

TEST_CASE("maps out of a free left module are elements of the unary cell") {
    const OperadPtr a = com3();
    const BimodulePtr f = left_regular_bimodule(a);
    std::uint64_t checked = 0;
    enumerate_bimodules(a, unit1(), {{{{0}, 0}, 2}, {{{0, 0}, 0}, 2}, {{{0, 0, 0}, 0}, 2}}, {},
                        [&](const BimodulePtr& n) {
                            if (checked++ % 7) return;
                            CHECK(enumerate_bimodule_maps(f, n) == n->carrier()->size_at({0}, 0));
                        });
    CHECK(checked > 0);
}


TEST_CASE("pentagon on random quadruples over unit and com") {
    std::mt19937 rng(2024);
    int done = 0;
    for (int i = 0; i < 24; ++i) {
        bool com[5];
        for (bool& c : com) c = rng() % 2;
        const BimodulePtr k = random_bimodule(rng, com[0], com[1]);
        const BimodulePtr l = random_bimodule(rng, com[1], com[2]);
        const BimodulePtr m = random_bimodule(rng, com[2], com[3]);
        const BimodulePtr n = random_bimodule(rng, com[3], com[4]);
        CAPTURE(i);
        CHECK(bim_pentagon_difference(k, l, m, n) == "");
        ++done;
    }
    CHECK(done >= 20);
}

TEST_CASE("adjunction from an operad") {
    for (const OperadPtr& a : {unit1(), com3(), assoc_operad(3)}) {
        CAPTURE(a->name());
        const BimoduleAdjunction adj = adjunction_from_operad(a);
        CHECK(check_triangles(adj).message() == "ok");
        const SymSeqPtr& ua = adj.right_left.result->carrier();
        CHECK(iso_symseq(ua, a->carrier()).has_value());
        for (std::size_t n = 1; n <= 3; ++n) CHECK(ua->size_at(Word(n, 0), 0) == a->carrier()->size_at(Word(n, 0), 0));
        CHECK(check_bimodule(*adj.left_right.result).message() == "ok");
    }
    // a wrong counit breaks a triangle
    BimoduleAdjunction adj = adjunction_from_operad(assoc_operad(3));
    auto& comp = adj.counit.map.components.at({{0, 0}, 0});
    for (int& v : comp) v = 0;
    CHECK(!check_triangles(adj).ok);
}

TEST_CASE("monad morphisms give bimodules") {
    for (const OperadPtr& a : {com3(), assoc_operad(3)}) {
        CAPTURE(a->name());
        const SymSeqPtr id = id_symseq(a->sorts());
        const Composite a_id = compose_symseq(a->carrier(), id, a->window());
        const Composite id_a = compose_symseq(id, a->carrier(), a->window());
        const SymSeqMap swap = vcompose(inverse_map(left_unitor(id_a)), right_unitor(a_id));
        const BimodulePtr lax = bimodule_of_lax_monad_morphism(id, a, a, swap);
        const BimodulePtr oplax = bimodule_of_oplax(id, a, a, inverse_map(swap));
        CHECK(check_bimodule(*lax).message() == "ok");
        const BimoduleMap f = make_bimodule_map(lax, identity_bimodule(a), left_unitor(id_a));
        CHECK(is_iso(f));
        const BimoduleMap g = make_bimodule_map(oplax, identity_bimodule(a), right_unitor(a_id));
        CHECK(is_iso(g));
    }
    // a non-natural φ is rejected
    const OperadPtr a = assoc_operad(3);
    const SymSeqPtr id = id_symseq(a->sorts());
    const Composite a_id = compose_symseq(a->carrier(), id, a->window());
    const Composite id_a = compose_symseq(id, a->carrier(), a->window());
    SymSeqMap bad = vcompose(inverse_map(left_unitor(id_a)), right_unitor(a_id));
    std::swap(bad.components.at({{0, 0}, 0})[0], bad.components.at({{0, 0}, 0})[1]);
    CHECK_THROWS_AS(bimodule_of_lax_monad_morphism(id, a, a, bad), ValidationError);
}

namespace {

// δ(u•) and δ(u_•) composed with B directly.
SymSeqPtr b_after_delta(const OperadMorphism& phi) {
    const SymAdjunction adj = sort_function_adjunction(phi.sort_map, phi.source->sorts(), phi.target->sorts());
    return compose_symseq(phi.target->carrier(), adj.left, phi.target->window()).result();
}

SymSeqPtr delta_after_b(const OperadMorphism& phi) {
    const SymAdjunction adj = sort_function_adjunction(phi.sort_map, phi.source->sorts(), phi.target->sorts());
    return compose_symseq(adj.right, phi.target->carrier(), phi.target->window()).result();
}

}  // namespace

TEST_CASE("u-circle bimodules and the transported adjunction") {
    for (const OperadMorphism& phi : {assoc_to_com(3), collapse_com(3), unit_into(com3()), collapse_unit(),
                                      identity_morphism(assoc_operad(3))}) {
        CAPTURE(phi.source->name());
        const BimodulePtr left = u_circle_left(phi);
        const BimodulePtr right = u_circle_right(phi);
        CHECK(check_bimodule(*left).message() == "ok");
        CHECK(check_bimodule(*right).message() == "ok");
        CHECK(iso_symseq(left->carrier(), b_after_delta(phi)).has_value());
        CHECK(iso_symseq(right->carrier(), delta_after_b(phi)).has_value());

        const BimoduleAdjunction adj = morphism_adjunction(phi);
        CHECK(check_triangles(adj).message() == "ok");
        CHECK(iso_symseq(adj.left->carrier(), left->carrier()).has_value());
        CHECK(iso_symseq(adj.right->carrier(), right->carrier()).has_value());
    }
}

TEST_CASE("transporting the identity adjunction gives the identity adjunction") {
    const OperadPtr a = com3();
    const BimoduleAdjunction adj = morphism_adjunction(identity_morphism(a));
    CHECK(iso_symseq(adj.left->carrier(), a->carrier()).has_value());
    CHECK(iso_symseq(adj.right->carrier(), a->carrier()).has_value());
    CHECK(iso_symseq(adj.right_left.result->carrier(), a->carrier()).has_value());
}

TEST_CASE("restriction and extension along the identity") {
    const OperadPtr a = com3();
    const OperadMorphism id = identity_morphism(a);
    std::uint64_t n = 0;
    enumerate_bimodules(a, unit1(), {{{{0}, 0}, 1}, {{{0, 0}, 0}, 2}, {{{0, 0, 0}, 0}, 2}}, {},
                        [&](const BimodulePtr& m) {
                            if (n++ % 3) return;
                            const BimodulePtr r = restriction(id, m);
                            CHECK(*r->carrier() == *m->carrier());
                            CHECK(r->lambda() == m->lambda());
                            CHECK(r->rho() == m->rho());
                            const BimodulePtr e = extension(id, m);
                            CHECK(iso_symseq(e->carrier(), m->carrier()).has_value());
                        });
    CHECK(n > 0);
}

TEST_CASE("restricting algebras and module maps") {
    const OperadMorphism phi = assoc_to_com(3);
    std::vector<BimodulePtr> algebras;
    enumerate_bimodules(phi.target, terminal_operad(), {{{{}, 0}, 2}}, {},
                        [&](const BimodulePtr& m) { algebras.push_back(m); });
    REQUIRE(algebras.size() == 6);
    for (const BimodulePtr& n : algebras) {
        const BimodulePtr r = restriction(phi, n);
        CHECK(check_bimodule(*r).message() == "ok");
        CHECK(r->carrier()->size_at({}, 0) == 2);
        for (const BimodulePtr& n2 : algebras)
            enumerate_bimodule_maps(n, n2, 100000, [&](const BimoduleMap& f) {
                SymSeqMap g = f.map;
                CHECK(check_bimodule_map({r, restriction(phi, n2), g}).message() == "ok");
            });
    }
}

TEST_CASE("extension is left adjoint to restriction") {
    int samples = 0;
    std::mt19937 rng(7);
    struct Case {
        OperadMorphism phi;
        std::vector<std::map<CellKey, std::size_t>> source_cells;
        std::vector<std::map<CellKey, std::size_t>> target_cells;
    };
    std::vector<Case> cases;
    cases.push_back({unit_into(com_operad(2)),
                     {{{{{0}, 0}, 2}}, {{{{0}, 0}, 1}, {{{0, 0}, 0}, 1}}},
                     {{{{{0}, 0}, 1}, {{{0, 0}, 0}, 1}}, {{{{0}, 0}, 2}, {{{0, 0}, 0}, 2}}}});
    cases.push_back({assoc_to_com(2),
                     {{{{{0}, 0}, 1}, {{{0, 0}, 0}, 2}}, {{{{0}, 0}, 2}, {{{0, 0}, 0}, 2}}},
                     {{{{{0}, 0}, 1}, {{{0, 0}, 0}, 1}}, {{{{0}, 0}, 2}, {{{0, 0}, 0}, 2}}}});
    cases.push_back({collapse_com(2),
                     {{{{{0}, 0}, 1}, {{{0}, 1}, 1}, {{{0, 0}, 0}, 1}, {{{0, 0}, 1}, 1}}},
                     {{{{{0}, 0}, 1}, {{{0, 0}, 0}, 1}}, {{{{0}, 0}, 2}, {{{0, 0}, 0}, 2}}}});
    cases.push_back({collapse_unit(),
                     {{{{{0}, 0}, 1}, {{{0}, 1}, 2}}, {{{{0, 0}, 0}, 2}, {{{0}, 1}, 1}}},
                     {{{{{0}, 0}, 2}}, {{{{0}, 0}, 1}, {{{0, 0}, 0}, 2}}}});
    for (const Case& c : cases) {
        CAPTURE(c.phi.source->name());
        std::vector<BimodulePtr> ms, ns;
        for (const auto& cells : c.source_cells)
            for (auto& m : left_modules(c.phi.source, cells, 2)) ms.push_back(m);
        for (const auto& cells : c.target_cells)
            for (auto& n : left_modules(c.phi.target, cells, 2)) ns.push_back(n);
        REQUIRE(!ms.empty());
        REQUIRE(!ns.empty());
        for (int t = 0; t < 4; ++t) {
            const BimodulePtr& m = ms[rng() % ms.size()];
            const BimodulePtr& n = ns[rng() % ns.size()];
            const BimodulePtr ext = extension(c.phi, m);
            CHECK(check_bimodule(*ext).message() == "ok");
            const BimodulePtr res = restriction(c.phi, n);
            CHECK(check_bimodule(*res).message() == "ok");
            const std::uint64_t lhs = enumerate_bimodule_maps(ext, n);
            const std::uint64_t rhs = enumerate_bimodule_maps(m, res);
            CHECK(lhs == rhs);
            ++samples;
        }
    }
    CHECK(samples >= 10);
}
