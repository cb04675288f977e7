#include "opbim/document.hpp"

#include <algorithm>
#include <functional>

#include "opbim/errors.hpp"

namespace opbim {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) bad(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string");
    return j.get<std::string>();
}

std::size_t as_size(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        bad(where, "expected a non-negative integer");
    return j.get<std::size_t>();
}

std::vector<std::string> as_strings(const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected a list of strings");
    std::vector<std::string> out;
    for (const Json& e : j) out.push_back(as_string(e, where));
    return out;
}

Sort sort_index(const std::vector<std::string>& sorts, const std::string& name, const std::string& where) {
    auto it = std::find(sorts.begin(), sorts.end(), name);
    if (it == sorts.end()) bad(where, "unknown sort '" + name + "'");
    return static_cast<Sort>(it - sorts.begin());
}

Word parse_word(const Json& j, const std::vector<std::string>& sorts, const std::string& where) {
    Word w;
    for (const std::string& s : as_strings(j, where)) w.push_back(sort_index(sorts, s, where));
    if (!is_canonical(w)) bad(where, "word is not in sort order");
    return w;
}

Json word_json(const Word& w, const std::vector<std::string>& sorts) {
    Json j = Json::array();
    for (Sort s : w) j.push_back(sorts[s]);
    return j;
}

int label_index(const SymSeq& f, const CellKey& key, const std::string& name, const std::string& where) {
    const YoungSet* cell = f.find(key);
    if (!cell) bad(where, "no cell " + to_string(key));
    auto l = cell->find_label(name);
    if (!l) bad(where, "no label '" + name + "' in cell " + to_string(key));
    return *l;
}

// One composition entry: outer operation and blocks, result at the
// concatenated block word.
struct EntryKey {
    CellKey outer;
    int label;
    std::vector<std::pair<Word, int>> blocks;
    auto operator<=>(const EntryKey&) const = default;
};

using EntryTable = std::map<EntryKey, int>;

EntryTable parse_entries(const Json& j, const SymSeq& outer, const SymSeq& inner, const SymSeq& result,
                         const std::string& where) {
    if (!j.is_array()) bad(where, "expected a list of composition entries");
    EntryTable table;
    for (const Json& e : j) {
        const Json& o = field(e, "outer", where);
        EntryKey k;
        k.outer = CellKey{parse_word(field(o, "in", where), outer.dom_sorts(), where),
                          sort_index(outer.cod_sorts(), as_string(field(o, "out", where), where), where)};
        k.label = label_index(outer, k.outer, as_string(field(o, "label", where), where), where);
        const Json& bs = field(e, "blocks", where);
        if (!bs.is_array() || bs.size() != k.outer.word.size()) bad(where, "one block per outer input expected");
        Word cat;
        for (std::size_t i = 0; i < bs.size(); ++i) {
            const Word w = parse_word(field(bs[i], "in", where), inner.dom_sorts(), where);
            const int l = label_index(inner, {w, k.outer.word[i]}, as_string(field(bs[i], "label", where), where), where);
            k.blocks.emplace_back(w, l);
            cat.insert(cat.end(), w.begin(), w.end());
        }
        const std::string r = as_string(field(e, "result", where), where);
        const int rl = label_index(result, {canonical_word(cat).word, k.outer.out}, r, where);
        if (!table.emplace(std::move(k), rl).second) bad(where, "duplicate composition entry");
    }
    return table;
}

std::function<int(const CellKey&, const RawTuple&)> entry_action(EntryTable table, SymSeqPtr result,
                                                                 const std::string& where) {
    return [table = std::move(table), result = std::move(result), where](const CellKey& key, const RawTuple& raw) {
        EntryKey k{{raw.outer_word, key.out}, raw.outer, {}};
        Word cat;
        for (const Elem& b : raw.blocks) {
            k.blocks.emplace_back(b.word, b.label);
            cat.insert(cat.end(), b.word.begin(), b.word.end());
        }
        auto it = table.find(k);
        if (it == table.end()) {
            std::string blocks;
            for (const Elem& b : raw.blocks) blocks += (blocks.empty() ? "" : ", ") + to_string(b.word) + "#" + std::to_string(b.label);
            bad(where, "no composition entry for outer " + to_string(k.outer) + "#" + std::to_string(raw.outer) +
                           " with blocks (" + blocks + ")");
        }
        return result->pull(key.word, cat, raw.shuffle, key.out, it->second);
    };
}

// Full composition table of a map out of a composite.
Json entries_json(const Composite& c, const SymSeqMap& m) {
    const SymSeq& outer = *c.outer();
    const SymSeq& inner = *c.inner();
    const SymSeqPtr& result = m.target;
    std::map<EntryKey, int> table;
    for (const auto& [key, cell] : c.result()->cells()) {
        c.for_each_raw(key, [&](const RawTuple& raw, int label) {
            EntryKey k{{raw.outer_word, key.out}, raw.outer, {}};
            Word cat;
            for (const Elem& b : raw.blocks) {
                k.blocks.emplace_back(b.word, b.label);
                cat.insert(cat.end(), b.word.begin(), b.word.end());
            }
            const int at_x = m.apply(key, label);
            const int at_cat = result->pull(cat, key.word, raw.shuffle.inverse(), key.out, at_x);
            auto [it, fresh] = table.emplace(std::move(k), at_cat);
            if (!fresh && it->second != at_cat) throw InternalError("composition table is not equivariant");
        });
    }
    Json out = Json::array();
    for (const auto& [k, r] : table) {
        Json blocks = Json::array();
        Word cat;
        for (std::size_t i = 0; i < k.blocks.size(); ++i) {
            const auto& [w, l] = k.blocks[i];
            blocks.push_back({{"in", word_json(w, inner.dom_sorts())},
                              {"label", inner.find({w, k.outer.word[i]})->label(l)}});
            cat.insert(cat.end(), w.begin(), w.end());
        }
        out.push_back({{"outer",
                        {{"in", word_json(k.outer.word, outer.dom_sorts())},
                         {"out", outer.cod_sorts()[k.outer.out]},
                         {"label", outer.find(k.outer)->label(k.label)}}},
                       {"blocks", std::move(blocks)},
                       {"result", result->find({canonical_word(cat).word, k.outer.out})->label(r)}});
    }
    return out;
}

std::vector<Generator> parse_generators(const Json& j, const std::vector<std::string>& sorts, const std::string& where) {
    if (!j.is_array()) bad(where, "expected a list of generators");
    std::vector<Generator> gens;
    for (const Json& g : j)
        gens.push_back({as_string(field(g, "name", where), where), parse_word(field(g, "in", where), sorts, where),
                        sort_index(sorts, as_string(field(g, "out", where), where), where)});
    return gens;
}

LawReport failed(const std::string& law, const std::string& witness) { return {false, law, witness}; }

}  // namespace

// ---------------------------------------------------------------------------
// Symmetric sequences

Json symseq_to_json(const SymSeq& f) {
    Json cells = Json::array();
    for (const auto& [key, cell] : f.cells()) {
        Json actions = Json::object();
        for (const auto& [pos, m] : cell.generator_action()) {
            Json images = Json::array();
            for (int l : m) images.push_back(cell.label(l));
            actions[std::to_string(pos)] = std::move(images);
        }
        Json c = {{"in", word_json(key.word, f.dom_sorts())}, {"out", f.cod_sorts()[key.out]}, {"labels", cell.labels()}};
        if (!actions.empty()) c["actions"] = std::move(actions);
        cells.push_back(std::move(c));
    }
    Json j = {{"kind", "symseq"}, {"dom", f.dom_sorts()}, {"cod", f.cod_sorts()}, {"cells", std::move(cells)}};
    if (f.window()) j["window"] = *f.window();
    return j;
}

SymSeqPtr symseq_from_json(const Json& j) {
    const std::string where = "symseq";
    SymSeq f(as_strings(field(j, "dom", where), where), as_strings(field(j, "cod", where), where));
    if (j.contains("window")) f.set_window(as_size(j.at("window"), where));
    const Json& cells = field(j, "cells", where);
    if (!cells.is_array()) bad(where, "cells must be a list");
    for (const Json& c : cells) {
        CellKey key{parse_word(field(c, "in", where), f.dom_sorts(), where),
                    sort_index(f.cod_sorts(), as_string(field(c, "out", where), where), where)};
        const std::vector<std::string> labels = as_strings(field(c, "labels", where), where);
        if (f.find(key)) bad(where, "duplicate cell " + to_string(key));
        std::map<std::size_t, std::vector<int>> action;
        if (c.contains("actions")) {
            const Json& a = c.at("actions");
            if (!a.is_object()) bad(where, "actions must map positions to label lists");
            for (const auto& [pos, images] : a.items()) {
                std::size_t p = 0;
                try {
                    p = std::stoul(pos);
                } catch (const std::exception&) {
                    bad(where, "bad generator position '" + pos + "'");
                }
                if (p + 1 >= key.word.size() || key.word[p] != key.word[p + 1])
                    bad(where, "position " + pos + " is not a generator of " + to_string(key.word));
                std::vector<int> m;
                for (const std::string& name : as_strings(images, where)) {
                    auto it = std::find(labels.begin(), labels.end(), name);
                    if (it == labels.end()) bad(where, "unknown label '" + name + "'");
                    m.push_back(static_cast<int>(it - labels.begin()));
                }
                action.emplace(p, std::move(m));
            }
        }
        if (labels.empty()) continue;
        f.set_cell(key, YoungSet(key.word, labels, std::move(action)));
    }
    return make_symseq(std::move(f));
}

// ---------------------------------------------------------------------------
// Serialization of structures

Json operad_to_json(const Operad& a) {
    Json eta = Json::object();
    for (std::size_t x = 0; x < a.sorts().size(); ++x) {
        const Sort s = static_cast<Sort>(x);
        eta[a.sorts()[x]] = a.carrier()->find({{s}, s})->label(a.unit(s));
    }
    return {{"kind", "operad"},
            {"carrier", symseq_to_json(*a.carrier())},
            {"mu", entries_json(a.square(), a.mu())},
            {"eta", std::move(eta)}};
}

Json algebra_to_json(const Algebra& alg, const std::string& operad_name) {
    const SortedFamily& t = alg.carrier();
    const SymSeq& c = *alg.operad()->carrier();
    Json carrier = Json::object();
    for (std::size_t s = 0; s < t.sorts.size(); ++s) carrier[t.sorts[s]] = t.carrier[s];
    Json tables = Json::array();
    for (const auto& [key, tab] : alg.tables()) {
        const YoungSet& cell = *c.find(key);
        const std::size_t n = alg.tuple_count(key.word);
        for (std::size_t l = 0; l < cell.size(); ++l) {
            Json values = Json::array();
            for (std::size_t i = 0; i < n; ++i) values.push_back(t.carrier[key.out][tab[l * n + i]]);
            tables.push_back({{"in", word_json(key.word, c.dom_sorts())},
                              {"out", c.cod_sorts()[key.out]},
                              {"label", cell.label(l)},
                              {"values", std::move(values)}});
        }
    }
    return {{"kind", "algebra"}, {"operad", operad_name}, {"carrier", std::move(carrier)}, {"tables", std::move(tables)}};
}

Json bimodule_to_json(const Bimodule& m, const std::string& left_name, const std::string& right_name) {
    return {{"kind", "bimodule"},
            {"left", left_name},
            {"right", right_name},
            {"carrier", symseq_to_json(*m.carrier())},
            {"lambda", entries_json(m.left_composite(), m.lambda())},
            {"rho", entries_json(m.right_composite(), m.rho())}};
}

Json morphism_to_json(const OperadMorphism& phi, const std::string& source_name, const std::string& target_name) {
    const auto& xs = phi.source->sorts();
    const auto& ys = phi.target->sorts();
    Json sort_map = Json::object();
    for (std::size_t x = 0; x < xs.size(); ++x) sort_map[xs[x]] = ys[phi.sort_map[x]];
    Json xi = Json::array();
    const SymSeq& src = *phi.source->carrier();
    for (const auto& [key, comp] : phi.xi.components) {
        const YoungSet& a = *src.find(key);
        const YoungSet& b = *phi.xi.target->find(key);
        Json map = Json::object();
        for (std::size_t l = 0; l < comp.size(); ++l) map[a.label(l)] = b.label(comp[l]);
        xi.push_back({{"in", word_json(key.word, xs)}, {"out", xs[key.out]}, {"map", std::move(map)}});
    }
    return {{"kind", "morphism"},
            {"source", source_name},
            {"target", target_name},
            {"sort_map", std::move(sort_map)},
            {"xi", std::move(xi)}};
}

std::string dump_document(const std::map<std::string, Json>& decls, const WindowParams& window) {
    // One declaration per line.
    std::string out = "{\"version\": " + Json(document_version).dump();
    Json w = Json::object();
    if (window.arity_bound) w["arity_bound"] = *window.arity_bound;
    if (window.length_bound) w["length_bound"] = *window.length_bound;
    if (!w.empty()) out += ",\n \"window\": " + w.dump();
    out += ",\n \"declarations\": [";
    bool first = true;
    for (const auto& [name, body] : decls) {
        Json d = body;
        d["name"] = name;
        out += (first ? "\n  " : ",\n  ") + d.dump();
        first = false;
    }
    return out + (first ? "]}\n" : "\n ]}\n");
}

// ---------------------------------------------------------------------------
// Documents

struct Document::Cache {
    std::map<std::string, SymSeqPtr> symseqs;
    std::map<std::string, OperadPtr> operads;
    std::map<std::string, BimodulePtr> bimodules;
    std::set<std::string> resolving;
};

Document Document::parse(const std::string& text, const WindowParams& overrides) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("document is not valid JSON: ") + e.what());
    }
    const std::string where = "document";
    if (!j.is_object()) bad(where, "expected an object");
    if (as_string(field(j, "version", where), where) != document_version)
        bad(where, std::string("unsupported version, expected ") + document_version);
    Document d;
    d.cache_ = std::make_shared<Cache>();
    if (j.contains("window")) {
        const Json& w = j.at("window");
        if (w.contains("arity_bound")) d.window_.arity_bound = as_size(w.at("arity_bound"), "window");
        if (w.contains("length_bound")) d.window_.length_bound = as_size(w.at("length_bound"), "window");
    }
    if (overrides.arity_bound) d.window_.arity_bound = overrides.arity_bound;
    if (overrides.length_bound) d.window_.length_bound = overrides.length_bound;
    for (const auto* b : {&d.window_.arity_bound, &d.window_.length_bound})
        if (*b && **b == 0) bad("window", "bounds must be positive");
    if (j.contains("declarations")) {
        const Json& list = j.at("declarations");
        if (!list.is_array()) bad(where, "declarations must be a list");
        for (const Json& decl : list) {
            const std::string name = as_string(field(decl, "name", where), where);
            const std::string kind = as_string(field(decl, "kind", "declaration " + name), "declaration " + name);
            static const std::set<std::string> kinds{"symseq", "operad", "algebra", "bimodule", "morphism"};
            if (!kinds.count(kind)) bad("declaration " + name, "unknown kind '" + kind + "'");
            if (!d.decls_.emplace(name, decl).second) bad(where, "duplicate declaration '" + name + "'");
        }
    }
    return d;
}

std::vector<std::string> Document::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : decls_) out.push_back(name);
    return out;
}

const std::string& Document::kind(const std::string& name) const {
    auto it = decls_.find(name);
    if (it == decls_.end()) throw InputError("no declaration named '" + name + "'");
    return it->second.at("kind").get_ref<const std::string&>();
}

const Json& Document::decl(const std::string& name, const std::string& kind) const {
    if (this->kind(name) != kind) throw InputError("'" + name + "' is a " + this->kind(name) + ", not a " + kind);
    return decls_.at(name);
}

SymSeqPtr Document::carrier_of(const Json& spec, const std::string& where) const {
    if (spec.is_string()) return symseq(spec.get<std::string>());
    if (spec.is_object()) return symseq_from_json(spec);
    bad(where, "carrier must be a name or a symseq");
}

SymSeqPtr Document::symseq(const std::string& name) const {
    const std::string& k = kind(name);
    if (k == "operad") return operad(name)->carrier();
    if (k == "bimodule") return bimodule(name)->carrier();
    const Json& j = decl(name, "symseq");
    auto& cache = cache_->symseqs;
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    try {
        return cache[name] = symseq_from_json(j);
    } catch (const InputError& e) {
        throw InputError(name + ": " + e.what());
    }
}

OperadPtr Document::operad(const std::string& name) const {
    decl(name, "operad");
    auto& cache = cache_->operads;
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    return cache[name] = build_operad(name, true);
}

Algebra Document::algebra(const std::string& name) const { return build_algebra(name, true); }

BimodulePtr Document::bimodule(const std::string& name) const {
    decl(name, "bimodule");
    auto& cache = cache_->bimodules;
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    return cache[name] = build_bimodule(name, true);
}

OperadMorphism Document::morphism(const std::string& name) const { return build_morphism(name, true); }

namespace {

// Guards against reference cycles while a declaration is being built.
class Resolving {
public:
    Resolving(std::set<std::string>& set, const std::string& name) : set_(set), name_(name) {
        if (!set_.insert(name_).second) throw InputError("declaration '" + name_ + "' refers to itself");
    }
    ~Resolving() { set_.erase(name_); }
    Resolving(const Resolving&) = delete;
    Resolving& operator=(const Resolving&) = delete;

private:
    std::set<std::string>& set_;
    std::string name_;
};

}  // namespace

OperadPtr Document::build_operad(const std::string& name, bool validate) const {
    const Json& j = decl(name, "operad");
    Resolving guard(cache_->resolving, name);
    const std::string where = "operad " + name;
    auto arity = [&]() -> std::size_t {
        if (j.contains("arity")) return as_size(j.at("arity"), where);
        if (window_.arity_bound) return *window_.arity_bound;
        bad(where, "needs an arity (or a document arity bound)");
    };
    try {
        if (j.contains("builtin")) {
            const std::string b = as_string(j.at("builtin"), where);
            std::vector<std::string> sorts{"*"};
            if (j.contains("sorts")) sorts = as_strings(j.at("sorts"), where);
            const std::size_t n = (b == "unit" || b == "terminal") ? 1 : arity();
            return builtin_operad(b, n, sorts);
        }
        for (const char* form : {"free", "presented"}) {
            if (!j.contains(form)) continue;
            const Json& body = j.at(form);
            const std::vector<std::string> sorts = as_strings(field(body, "sorts", where), where);
            const std::vector<Generator> gens = parse_generators(field(body, "generators", where), sorts, where);
            if (std::string(form) == "free") return free_operad(sorts, gens, arity());
            std::vector<std::pair<Tree, Tree>> rels;
            const Json& rs = field(body, "relations", where);
            if (!rs.is_array()) bad(where, "relations must be a list of pairs");
            for (const Json& r : rs) {
                if (!r.is_array() || r.size() != 2) bad(where, "a relation is a pair of trees");
                rels.emplace_back(parse_tree(as_string(r[0], where), gens), parse_tree(as_string(r[1], where), gens));
            }
            return presented_operad(sorts, gens, rels, arity());
        }
        const SymSeqPtr c = carrier_of(field(j, "carrier", where), where);
        EntryTable table = parse_entries(field(j, "mu", where), *c, *c, *c, where);
        const Json& eta = field(j, "eta", where);
        std::vector<int> units;
        for (std::size_t x = 0; x < c->dom_size(); ++x) {
            const Sort s = static_cast<Sort>(x);
            units.push_back(label_index(*c, {{s}, s}, as_string(field(eta, c->dom_sorts()[x].c_str(), where), where), where));
        }
        return make_operad(c, entry_action(std::move(table), c, where), [units](Sort s) { return units[s]; }, name,
                           validate);
    } catch (const InputError& e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) throw;
        throw InputError(where + ": " + msg);
    }
}

Algebra Document::build_algebra(const std::string& name, bool validate) const {
    const Json& j = decl(name, "algebra");
    Resolving guard(cache_->resolving, name);
    const std::string where = "algebra " + name;
    const OperadPtr op = operad(as_string(field(j, "operad", where), where));
    const SymSeq& c = *op->carrier();
    SortedFamily t;
    t.sorts = op->sorts();
    const Json& carrier = field(j, "carrier", where);
    for (const std::string& s : t.sorts) t.carrier.push_back(as_strings(field(carrier, s.c_str(), where), where));
    if (carrier.size() != t.sorts.size()) bad(where, "carrier has sorts the operad lacks");
    std::map<CellKey, std::vector<int>> tables;
    for (const auto& [key, cell] : c.cells()) tables[key].assign(cell.size() * [&] {
        std::size_t n = 1;
        for (Sort s : key.word) n *= t.carrier[s].size();
        return n;
    }(), -2);
    const Json& ts = field(j, "tables", where);
    if (!ts.is_array()) bad(where, "tables must be a list");
    for (const Json& e : ts) {
        const CellKey key{parse_word(field(e, "in", where), t.sorts, where),
                          sort_index(t.sorts, as_string(field(e, "out", where), where), where)};
        const int l = label_index(c, key, as_string(field(e, "label", where), where), where);
        const std::vector<std::string> values = as_strings(field(e, "values", where), where);
        std::vector<int>& tab = tables.at(key);
        const std::size_t n = tab.size() / c.find(key)->size();
        if (values.size() != n) bad(where, "table for " + to_string(key) + " needs " + std::to_string(n) + " values");
        const auto& out = t.carrier[key.out];
        for (std::size_t i = 0; i < n; ++i) {
            auto it = std::find(out.begin(), out.end(), values[i]);
            if (it == out.end()) bad(where, "unknown element '" + values[i] + "'");
            if (tab[l * n + i] != -2) bad(where, "duplicate table for " + to_string(key));
            tab[l * n + i] = static_cast<int>(it - out.begin());
        }
    }
    for (const auto& [key, tab] : tables)
        if (std::find(tab.begin(), tab.end(), -2) != tab.end()) bad(where, "missing table entries at " + to_string(key));
    if (validate) return make_algebra(op, std::move(t), std::move(tables));
    return Algebra(op, std::move(t), std::move(tables));
}

BimodulePtr Document::build_bimodule(const std::string& name, bool validate) const {
    const Json& j = decl(name, "bimodule");
    Resolving guard(cache_->resolving, name);
    const std::string where = "bimodule " + name;
    if (j.contains("identity")) return identity_bimodule(operad(as_string(j.at("identity"), where)));
    const OperadPtr b = operad(as_string(field(j, "left", where), where));
    const OperadPtr a = operad(as_string(field(j, "right", where), where));
    const SymSeqPtr m = carrier_of(field(j, "carrier", where), where);
    if (m->cod_sorts() != b->sorts() || m->dom_sorts() != a->sorts()) bad(where, "carrier sorts do not match the operads");
    EntryTable lt = parse_entries(field(j, "lambda", where), *b->carrier(), *m, *m, where + " lambda");
    EntryTable rt = parse_entries(field(j, "rho", where), *m, *a->carrier(), *m, where + " rho");
    return make_bimodule(b, a, m, entry_action(std::move(lt), m, where + " lambda"),
                         entry_action(std::move(rt), m, where + " rho"), validate);
}

OperadMorphism Document::build_morphism(const std::string& name, bool validate) const {
    const Json& j = decl(name, "morphism");
    Resolving guard(cache_->resolving, name);
    const std::string where = "morphism " + name;
    const OperadPtr a = operad(as_string(field(j, "source", where), where));
    const OperadPtr b = operad(as_string(field(j, "target", where), where));
    const Json& sm = field(j, "sort_map", where);
    std::vector<Sort> u;
    for (const std::string& x : a->sorts())
        u.push_back(sort_index(b->sorts(), as_string(field(sm, x.c_str(), where), where), where));
    const SymSeqPtr target = reindex(b->carrier(), u, a->sorts());
    SymSeqMap xi{a->carrier(), target, {}};
    for (const auto& [key, cell] : a->carrier()->cells()) xi.components[key].assign(cell.size(), -1);
    const Json& entries = field(j, "xi", where);
    if (!entries.is_array()) bad(where, "xi must be a list");
    for (const Json& e : entries) {
        const CellKey key{parse_word(field(e, "in", where), a->sorts(), where),
                          sort_index(a->sorts(), as_string(field(e, "out", where), where), where)};
        if (!a->carrier()->find(key)) bad(where, "no cell " + to_string(key));
        const Json& map = field(e, "map", where);
        if (!map.is_object()) bad(where, "map must be an object");
        for (const auto& [from, to] : map.items())
            xi.components[key][label_index(*a->carrier(), key, from, where)] =
                label_index(*target, key, as_string(to, where), where);
    }
    for (const auto& [key, comp] : xi.components)
        if (std::find(comp.begin(), comp.end(), -1) != comp.end()) bad(where, "xi is not total at " + to_string(key));
    if (validate) return make_morphism(a, b, std::move(u), std::move(xi));
    return OperadMorphism{a, b, std::move(u), std::move(xi)};
}

std::vector<Document::CheckResult> Document::check() const {
    std::vector<CheckResult> out;
    for (const auto& [name, j] : decls_) {
        const std::string& k = kind(name);
        CheckResult r{name, k, {}};
        try {
            if (k == "symseq") {
                symseq(name);
            } else if (k == "operad") {
                r.report = check_monad_laws(*build_operad(name, false));
            } else if (k == "algebra") {
                r.report = check_algebra(build_algebra(name, false));
            } else if (k == "bimodule") {
                r.report = check_bimodule(*build_bimodule(name, false));
            } else {
                r.report = check_morphism(build_morphism(name, false));
            }
        } catch (const ValidationError& e) {
            r.report = failed(k == "symseq" ? "symmetric group action" : "dependency", e.what());
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace opbim
