#include "opbim/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "opbim/catsym.hpp"
#include "opbim/document.hpp"
#include "opbim/errors.hpp"

namespace opbim {

namespace {

std::string read_file(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    buf << in.rdbuf();
    return buf.str();
}

// Left-aligned columns separated by two spaces.
std::string table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], r[i].size());
        }
    std::string out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        out += line + "\n";
    }
    return out;
}

std::vector<std::size_t> sizes_for(const std::vector<std::size_t>& given, std::size_t sorts) {
    if (given.size() == 1 && sorts > 1) return std::vector<std::size_t>(sorts, given[0]);
    if (given.size() != sorts)
        throw InputError("expected " + std::to_string(sorts) + " carrier sizes, got " + std::to_string(given.size()));
    return given;
}

// "a,b:y=3" → cell (a,b; y) of size 3; the word may be empty.
std::pair<CellKey, std::size_t> parse_cell_spec(const std::string& spec, const std::vector<std::string>& dom,
                                                const std::vector<std::string>& cod) {
    const auto colon = spec.rfind(':');
    const auto eq = spec.rfind('=');
    if (colon == std::string::npos || eq == std::string::npos || eq < colon)
        throw InputError("cell '" + spec + "' is not of the form WORD:OUT=SIZE");
    auto index = [&](const std::vector<std::string>& sorts, const std::string& name) {
        auto it = std::find(sorts.begin(), sorts.end(), name);
        if (it == sorts.end()) throw InputError("cell '" + spec + "': unknown sort '" + name + "'");
        return static_cast<Sort>(it - sorts.begin());
    };
    Word w;
    const std::string word = spec.substr(0, colon);
    std::size_t start = 0;
    while (!word.empty() && start <= word.size()) {
        const auto comma = word.find(',', start);
        w.push_back(index(dom, word.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (!is_canonical(w)) throw InputError("cell '" + spec + "': word is not in sort order");
    std::size_t size = 0;
    try {
        size = std::stoul(spec.substr(eq + 1));
    } catch (const std::exception&) {
        throw InputError("cell '" + spec + "': bad size");
    }
    return {CellKey{w, index(cod, spec.substr(colon + 1, eq - colon - 1))}, size};
}

struct Options {
    std::optional<std::size_t> arity_bound;
    std::optional<std::size_t> length_bound;
    std::optional<std::uint64_t> budget;
    std::string out_path;
    std::string file;
    std::string first;
    std::string second;
    std::string name;
    std::vector<std::size_t> sizes;
    std::vector<std::string> cells;
};

Document load(const Options& o) { return Document::parse(read_file(o.file), {o.arity_bound, o.length_bound}); }

std::string cmd_check(const Options& o, int& status) {
    const Document d = load(o);
    std::string out;
    std::size_t failing = 0;
    for (const auto& r : d.check()) {
        out += r.kind + " " + r.name + ": " + (r.report.ok ? "ok" : "FAIL " + r.report.message()) + "\n";
        if (!r.report.ok) ++failing;
    }
    out += std::to_string(d.names().size()) + " declarations, " + std::to_string(failing) + " failing\n";
    if (failing) status = exit_law_failure;
    return out;
}

std::string cmd_compose(const Options& o) {
    const Document d = load(o);
    const Composite c = compose_symseq(d.symseq(o.first), d.symseq(o.second), d.window().arity_bound);
    const std::string name = o.name.empty() ? o.first + "." + o.second : o.name;
    return dump_document({{name, symseq_to_json(*c.result())}});
}

std::string cmd_eval(const Options& o) {
    const Document d = load(o);
    const SymSeqPtr f = d.symseq(o.first);
    const SortedFamily t = SortedFamily::of_sizes(f->dom_sorts(), sizes_for(o.sizes, f->dom_size()));
    const AnalyticValue v = analytic_eval(f, t);
    std::vector<std::vector<std::string>> rows{{"sort", "size"}};
    for (std::size_t y = 0; y < f->cod_size(); ++y)
        rows.push_back({f->cod_sorts()[y], std::to_string(v.family().size(static_cast<Sort>(y)))});
    return table(rows);
}

std::string cmd_series(const Options& o) {
    const Document d = load(o);
    const SymSeqPtr f = d.symseq(o.first);
    std::size_t n = 0;
    if (d.window().arity_bound) {
        n = *d.window().arity_bound;
    } else if (f->window()) {
        n = *f->window();
    } else {
        n = f->max_arity();
    }
    std::vector<std::vector<std::string>> rows{{"n", "size", "orbits", "egf"}};
    for (const SeriesRow& r : series(f, n))
        if (r.size) rows.push_back({std::to_string(r.n), std::to_string(r.size), std::to_string(r.orbits),
                        std::to_string(r.egf_num) + (r.egf_den == 1 ? "" : "/" + std::to_string(r.egf_den))});
    return table(rows);
}

std::string cmd_count_algebras(const Options& o) {
    const Document d = load(o);
    const OperadPtr a = d.operad(o.first);
    EnumerationOptions opts;
    if (o.budget) opts.budget = *o.budget;
    const EnumerationResult r = enumerate_algebras(a, sizes_for(o.sizes, a->sorts().size()), opts);
    return table({{"algebras", "orbits"}, {std::to_string(r.count), std::to_string(r.orbits)}});
}

std::string cmd_count_bimodules(const Options& o) {
    const Document d = load(o);
    const OperadPtr b = d.operad(o.first);
    const OperadPtr a = d.operad(o.second);
    std::map<CellKey, std::size_t> cells;
    std::size_t arity = 0;
    for (const std::string& spec : o.cells) {
        auto [key, size] = parse_cell_spec(spec, a->sorts(), b->sorts());
        arity = std::max(arity, key.word.size());
        if (!cells.emplace(key, size).second) throw InputError("cell '" + spec + "' given twice");
    }
    BimoduleEnumerationOptions opts;
    if (o.budget) opts.budget = *o.budget;
    opts.window = d.window().arity_bound ? *d.window().arity_bound : arity;
    return table({{"bimodules"}, {std::to_string(enumerate_bimodules(b, a, cells, opts))}});
}

std::string cmd_count_maps(const Options& o) {
    const Document d = load(o);
    const std::uint64_t budget = o.budget ? *o.budget : 5'000'000;
    return table({{"maps"}, {std::to_string(enumerate_bimodule_maps(d.bimodule(o.first), d.bimodule(o.second), budget))}});
}

std::string cmd_product(const Options& o) {
    const Document d = load(o);
    const OperadPtr p = product_operad(d.operad(o.first), d.operad(o.second));
    return dump_document({{o.name.empty() ? o.first + "*" + o.second : o.name, operad_to_json(*p)}});
}

std::string cmd_exponential(const Options& o) {
    const Document d = load(o);
    if (!d.window().length_bound) throw InputError("exponential: a length bound is required (--length-bound)");
    const OperadPtr e = exponential_operad(d.operad(o.first), d.operad(o.second), *d.window().length_bound);
    return dump_document({{o.name.empty() ? o.second + "^" + o.first : o.name, operad_to_json(*e)}});
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Many-sorted symmetric operads, bimodules and their exponentials over finite sets", "opbim"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--arity-bound", o.arity_bound, "Arity window for builtins, composites and series")
        ->check(CLI::PositiveNumber);
    app.add_option("--length-bound", o.length_bound, "Word length bound for exponential sorts")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget", o.budget, "Search budget for counting commands");
    app.add_option("--out", o.out_path, "Write the output to a file");

    std::function<std::string(const Options&)> action;
    int status = exit_ok;
    auto file = [&](CLI::App* sub) { sub->add_option("file", o.file, "Document (- for stdin)")->required(); };
    auto name = [&](CLI::App* sub) { sub->add_option("--name", o.name, "Name of the emitted declaration"); };

    auto* check = app.add_subcommand("check", "Validate every declaration");
    file(check);
    check->callback([&] { action = [&](const Options& x) { return cmd_check(x, status); }; });

    auto* compose = app.add_subcommand("compose", "Composite G . F of two symmetric sequences");
    file(compose);
    compose->add_option("G", o.first)->required();
    compose->add_option("F", o.second)->required();
    name(compose);
    compose->callback([&] { action = cmd_compose; });

    auto* eval = app.add_subcommand("eval", "Sizes of F(T) for a carrier T");
    file(eval);
    eval->add_option("F", o.first)->required();
    eval->add_option("--sizes", o.sizes, "Carrier size per input sort")->required()->delimiter(',');
    eval->callback([&] { action = cmd_eval; });

    auto* ser = app.add_subcommand("series", "Cell sizes, orbit counts and egf coefficients by arity");
    file(ser);
    ser->add_option("F", o.first)->required();
    ser->callback([&] { action = cmd_series; });

    auto* count = app.add_subcommand("count", "Count algebras, bimodules or bimodule maps");
    count->require_subcommand(1);
    auto* algebras = count->add_subcommand("algebras", "Algebra structures on carriers of given sizes");
    file(algebras);
    algebras->add_option("A", o.first)->required();
    algebras->add_option("--sizes", o.sizes, "Carrier size per sort")->required()->delimiter(',');
    algebras->callback([&] { action = cmd_count_algebras; });
    auto* bimodules = count->add_subcommand("bimodules", "(B, A)-bimodules with given cell sizes");
    file(bimodules);
    bimodules->add_option("B", o.first)->required();
    bimodules->add_option("A", o.second)->required();
    bimodules->add_option("--cell", o.cells, "Cell size as WORD:OUT=SIZE, e.g. a,a:b=2");
    bimodules->callback([&] { action = cmd_count_bimodules; });
    auto* maps = count->add_subcommand("module-maps", "Bimodule maps M -> N");
    file(maps);
    maps->add_option("M", o.first)->required();
    maps->add_option("N", o.second)->required();
    maps->callback([&] { action = cmd_count_maps; });

    auto* product = app.add_subcommand("product", "Product operad A x B");
    file(product);
    product->add_option("A", o.first)->required();
    product->add_option("B", o.second)->required();
    name(product);
    product->callback([&] { action = cmd_product; });

    auto* exponential = app.add_subcommand("exponential", "Exponential operad B^A");
    file(exponential);
    exponential->add_option("A", o.first)->required();
    exponential->add_option("B", o.second)->required();
    name(exponential);
    exponential->callback([&] { action = cmd_exponential; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input_error;
    }

    try {
        const std::string text = action(o);
        if (o.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(o.out_path, std::ios::binary);
            if (!f) throw InputError("cannot write '" + o.out_path + "'");
            f << text;
        }
        return status;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const ValidationError& e) {
        err << "law failure: " << e.what() << "\n";
        return exit_law_failure;
    } catch (const ResourceError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return exit_budget;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_law_failure;
    }
}

}  // namespace opbim
