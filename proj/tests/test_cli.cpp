#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "opbim/catsym.hpp"
#include "opbim/cli.hpp"
#include "opbim/document.hpp"
#include "opbim/errors.hpp"
#include "support.hpp"

using namespace opbim;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

// Writes the document to a temporary file and runs the command on it.
Run run(const std::string& doc, std::vector<std::string> args) {
    static int counter = 0;
    const std::string path = "test_cli_" + std::to_string(counter++) + ".json";
    {
        std::ofstream f(path, std::ios::binary);
        f << doc;
    }
    for (auto& a : args)
        if (a == "FILE") a = path;
    std::ostringstream out, err;
    const int status = run_cli(args, out, err);
    std::remove(path.c_str());
    return {status, out.str(), err.str()};
}

const char* basic_doc = R"({"version": "opbim/1", "window": {"arity_bound": 3},
 "declarations": [
  {"name": "Assoc", "kind": "operad", "builtin": "assoc"},
  {"name": "Com", "kind": "operad", "builtin": "com"},
  {"name": "U", "kind": "operad", "builtin": "unit"},
  {"name": "Id", "kind": "symseq", "dom": ["*"], "cod": ["*"], "cells": [{"in": ["*"], "out": "*", "labels": ["id"]}]},
  {"name": "F", "kind": "symseq", "dom": ["*"], "cod": ["*"], "cells": [
     {"in": ["*"], "out": "*", "labels": ["a"]}, {"in": ["*","*"], "out": "*", "labels": ["b"]}]},
  {"name": "M", "kind": "bimodule", "identity": "Com"}
 ]})";

std::string doc_of(const std::map<std::string, Json>& decls) { return dump_document(decls); }

void check_operad_round_trip(const OperadPtr& a) {
    const Document d = Document::parse(doc_of({{"A", operad_to_json(*a)}}));
    const OperadPtr b = d.operad("A");
    CHECK(*b->carrier() == *a->carrier());
    CHECK(b->mu() == a->mu());
    CHECK(b->eta() == a->eta());
}

}  // namespace

TEST_CASE("symmetric sequences survive serialization") {
    std::mt19937 rng(17);
    for (int i = 0; i < 30; ++i) {
        testing_support::RandomSpec spec;
        spec.dom_sorts = 1 + static_cast<int>(rng() % 2);
        spec.cod_sorts = 1 + static_cast<int>(rng() % 2);
        const SymSeqPtr f = testing_support::random_symseq(rng, spec);
        const Document d = Document::parse(doc_of({{"F", symseq_to_json(*f)}}));
        CHECK(*d.symseq("F") == *f);
    }
    const Document d = Document::parse(basic_doc);
    const Composite ff = compose_symseq(d.symseq("F"), d.symseq("F"), 4);
    CHECK(*Document::parse(doc_of({{"FF", symseq_to_json(*ff.result())}})).symseq("FF") == *ff.result());
}

TEST_CASE("operads survive serialization") {
    for (const OperadPtr& a : {unit_operad(), com_operad(3), assoc_operad(3), magma_operad(3), terminal_operad(),
                               assoc_operad(2, {"a", "b"}), product_operad(com_operad(2), assoc_operad(3)),
                               exponential_operad(unit_operad(), com_operad(2), 2)})
        check_operad_round_trip(a);
}

TEST_CASE("free and presented operads from documents") {
    const Document d = Document::parse(R"J({"version": "opbim/1", "declarations": [
      {"name": "Mag", "kind": "operad", "arity": 3,
       "free": {"sorts": ["*"], "generators": [{"name": "m", "in": ["*","*"], "out": "*"}]}},
      {"name": "As", "kind": "operad", "arity": 3,
       "presented": {"sorts": ["*"], "generators": [{"name": "m", "in": ["*","*"], "out": "*"}],
                     "relations": [["m(m(0,1),2)", "m(0,m(1,2))"]]}}]})J");
    CHECK(d.operad("Mag")->carrier()->size_at({0, 0, 0}, 0) == 12);
    CHECK(d.operad("As")->carrier()->size_at({0, 0, 0}, 0) == 6);
    CHECK(iso_symseq(d.operad("As")->carrier(), assoc_operad(3)->carrier()));
}

TEST_CASE("algebras, bimodules and morphisms survive serialization") {
    const OperadPtr a = assoc_operad(3);
    std::vector<Algebra> algs;
    EnumerationOptions opts;
    opts.orbits = false;
    enumerate_algebras(a, {2}, opts, [&](const Algebra& x) { algs.push_back(x); });
    REQUIRE(algs.size() == 8);
    for (const Algebra& x : algs) {
        const Document d = Document::parse(doc_of({{"A", operad_to_json(*a)}, {"T", algebra_to_json(x, "A")}}));
        CHECK(d.algebra("T") == x);
    }

    const BimodulePtr m = identity_bimodule(com_operad(3));
    const Document d = Document::parse(doc_of({{"C", operad_to_json(*com_operad(3))},
                                               {"M", bimodule_to_json(*m, "C", "C")}}));
    const BimodulePtr back = d.bimodule("M");
    CHECK(*back->carrier() == *m->carrier());
    CHECK(back->lambda() == m->lambda());
    CHECK(back->rho() == m->rho());

    const OperadMorphism phi = identity_morphism(a);
    const Document e = Document::parse(doc_of({{"A", operad_to_json(*a)}, {"phi", morphism_to_json(phi, "A", "A")}}));
    CHECK(e.morphism("phi").xi == phi.xi);
    CHECK(e.morphism("phi").sort_map == phi.sort_map);
}

TEST_CASE("check reports each declaration") {
    const Run ok = run(basic_doc, {"check", "FILE"});
    CHECK(ok.status == exit_ok);
    CHECK(ok.out.find("operad Assoc: ok") != std::string::npos);
    CHECK(ok.out.find("6 declarations, 0 failing") != std::string::npos);

    const Run empty = run(R"({"version": "opbim/1"})", {"check", "FILE"});
    CHECK(empty.status == exit_ok);
    CHECK(empty.out == "0 declarations, 0 failing\n");

    // A multiplication whose binary part is not equivariant or associative.
    Json assoc = operad_to_json(*assoc_operad(3));
    bool changed = false;
    for (Json& e : assoc["mu"]) {
        if (e["outer"]["in"].size() == 2 && e["blocks"][0]["in"].size() == 2 && !changed) {
            const std::string r = e["result"];
            const Json labels = assoc["carrier"]["cells"][2]["labels"];
            for (const Json& l : labels)
                if (l != r) {
                    e["result"] = l;
                    changed = true;
                    break;
                }
        }
    }
    REQUIRE(changed);
    const Run bad = run(doc_of({{"P", assoc}}), {"check", "FILE"});
    CHECK(bad.status == exit_law_failure);
    CHECK(bad.out.find("operad P: FAIL") != std::string::npos);
    CHECK(bad.out.find(" fails at ") != std::string::npos);

    // A broken dependency fails its dependents.
    const Run dep = run(doc_of({{"P", assoc}, {"T", {{"kind", "algebra"}, {"operad", "P"}, {"carrier", {{"*", {"x"}}}},
                                                     {"tables", Json::array()}}}}),
                        {"check", "FILE"});
    CHECK(dep.status == exit_law_failure);
    CHECK(dep.out.find("algebra T: FAIL dependency") != std::string::npos);
}

TEST_CASE("commands on the small document") {
    const Run id = run(basic_doc, {"series", "FILE", "Id"});
    CHECK(id.status == exit_ok);
    CHECK(id.out == "n  size  orbits  egf\n1  1     1       1\n");

    const Run alg = run(basic_doc, {"count", "algebras", "FILE", "Assoc", "--sizes", "2"});
    CHECK(alg.out == "algebras  orbits\n8         5\n");
    CHECK(run(basic_doc, {"count", "algebras", "FILE", "Com", "--sizes", "2"}).out == "algebras  orbits\n6         3\n");

    CHECK(run(basic_doc, {"eval", "FILE", "Com", "--sizes", "2"}).out == "sort  size\n*     9\n");

    const Run ff = run(basic_doc, {"compose", "FILE", "F", "F", "--arity-bound", "4"});
    REQUIRE(ff.status == exit_ok);
    const Run ser = run(ff.out, {"series", "FILE", "F.F"});
    CHECK(ser.out == "n  size  orbits  egf\n1  1     1       1\n2  2     2       1\n3  3     1       1/2\n4  3     1       1/8\n");

    const Run bim = run(basic_doc, {"count", "bimodules", "FILE", "U", "U", "--cell", "*,*:*=2"});
    CHECK(bim.out == "bimodules\n2\n");
    CHECK(run(basic_doc, {"count", "module-maps", "FILE", "M", "M"}).out == "maps\n1\n");

    const Run prod = run(basic_doc, {"product", "FILE", "Com", "Com"});
    REQUIRE(prod.status == exit_ok);
    CHECK(run(prod.out, {"count", "algebras", "FILE", "Com*Com", "--sizes", "2,2"}).out == "algebras  orbits\n36        9\n");

    const Run exp = run(basic_doc, {"exponential", "FILE", "U", "U", "--length-bound", "2"});
    REQUIRE(exp.status == exit_ok);
    CHECK(run(exp.out, {"check", "FILE"}).status == exit_ok);
    CHECK(run(exp.out, {"count", "algebras", "FILE", "U^U", "--sizes", "1,1,2", "--budget", "100000"}).out.rfind(
              "algebras  orbits\n2 ", 0) == 0);
}

TEST_CASE("exit statuses") {
    CHECK(run(basic_doc, {"series", "FILE", "Nope"}).status == exit_input_error);
    CHECK(run("{not json", {"check", "FILE"}).status == exit_input_error);
    CHECK(run(R"({"version": "opbim/1", "declarations": [{"name": "A", "kind": "operad", "builtin": "com", "arity": 2},
                 {"name": "A", "kind": "operad", "builtin": "assoc", "arity": 2}]})",
              {"check", "FILE"})
              .status == exit_input_error);
    CHECK(run(basic_doc, {"frobnicate"}).status == exit_input_error);
    CHECK(run(basic_doc, {"count", "algebras", "FILE", "Assoc", "--sizes", "3", "--budget", "5"}).status == exit_budget);
    CHECK(run(R"({"version": "opbim/1", "declarations": [{"name": "W", "kind": "symseq", "dom": ["*"], "cod": ["*"],
                 "window": 2, "cells": [{"in": ["*"], "out": "*", "labels": ["a"]}]}]})",
              {"series", "FILE", "W", "--arity-bound", "3"})
              .status == exit_budget);
    CHECK(run(basic_doc, {"exponential", "FILE", "U", "U"}).status == exit_input_error);
}

TEST_CASE("output does not depend on declaration order") {
    Json doc = Json::parse(basic_doc);
    Json reversed = doc;
    std::reverse(reversed["declarations"].begin(), reversed["declarations"].end());
    const std::vector<std::vector<std::string>> commands{
        {"check", "FILE"},
        {"series", "FILE", "F"},
        {"compose", "FILE", "F", "F", "--arity-bound", "4"},
        {"eval", "FILE", "Com", "--sizes", "2"},
        {"count", "algebras", "FILE", "Assoc", "--sizes", "2"},
        {"product", "FILE", "Com", "Assoc"},
        {"exponential", "FILE", "U", "Com", "--length-bound", "1"}};
    for (const auto& c : commands) {
        CAPTURE(c[0]);
        const Run a = run(doc.dump(), c);
        const Run b = run(doc.dump(), c);
        const Run r = run(reversed.dump(2), c);
        CHECK(a.status == exit_ok);
        CHECK(a.out == b.out);
        CHECK(a.out == r.out);
    }
}
