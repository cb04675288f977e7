#pragma once

// The document format: a JSON object
//
//   {"version": "opbim/1",
//    "window": {"arity_bound": 3, "length_bound": 2},
//    "declarations": [{"name": "A", "kind": "operad", ...}, ...]}
//
// Declarations are looked up by name, so their order is irrelevant. Kinds are
// symseq, operad (builtin / free / presented / explicit), algebra, bimodule
// and morphism. Labels are referred to by name inside their cell, and a
// composition entry gives its result at the concatenated block word.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "opbim/bimodule.hpp"
#include "opbim/operad.hpp"

namespace opbim {

using Json = nlohmann::json;

inline constexpr const char* document_version = "opbim/1";

struct WindowParams {
    std::optional<std::size_t> arity_bound;
    std::optional<std::size_t> length_bound;
};

class Document {
public:
    /// Throws InputError on malformed JSON, duplicate names or a bad version.
    /// Set fields of `overrides` replace the document's window.
    static Document parse(const std::string& text, const WindowParams& overrides = {});

    std::vector<std::string> names() const;
    bool contains(const std::string& name) const { return decls_.count(name) != 0; }
    const std::string& kind(const std::string& name) const;
    const WindowParams& window() const { return window_; }

    /// A symmetric sequence, or the carrier of an operad or bimodule.
    SymSeqPtr symseq(const std::string& name) const;
    OperadPtr operad(const std::string& name) const;
    Algebra algebra(const std::string& name) const;
    BimodulePtr bimodule(const std::string& name) const;
    OperadMorphism morphism(const std::string& name) const;

    struct CheckResult {
        std::string name;
        std::string kind;
        LawReport report;
    };
    /// Every declaration in name order, built without validation and then
    /// checked. A failing dependency fails its dependents.
    std::vector<CheckResult> check() const;

private:
    struct Cache;
    std::map<std::string, Json> decls_;
    WindowParams window_;
    std::shared_ptr<Cache> cache_;

    const Json& decl(const std::string& name, const std::string& kind) const;
    SymSeqPtr carrier_of(const Json& spec, const std::string& where) const;
    OperadPtr build_operad(const std::string& name, bool validate) const;
    Algebra build_algebra(const std::string& name, bool validate) const;
    BimodulePtr build_bimodule(const std::string& name, bool validate) const;
    OperadMorphism build_morphism(const std::string& name, bool validate) const;
};

// Declaration bodies (without "name"); references to other declarations are
// passed in by name.
Json symseq_to_json(const SymSeq& f);
SymSeqPtr symseq_from_json(const Json& j);
/// Explicit form: inline carrier, full composition table and units.
Json operad_to_json(const Operad& a);
Json algebra_to_json(const Algebra& alg, const std::string& operad_name);
Json bimodule_to_json(const Bimodule& m, const std::string& left_name, const std::string& right_name);
Json morphism_to_json(const OperadMorphism& phi, const std::string& source_name, const std::string& target_name);

/// Canonical text of a document holding the given declarations.
std::string dump_document(const std::map<std::string, Json>& decls, const WindowParams& window = {});

}  // namespace opbim
