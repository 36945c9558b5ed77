#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "motzkin/adapted.hpp"
#include "motzkin/engines.hpp"
#include "motzkin/io.hpp"
#include "motzkin/partitions.hpp"
#include "motzkin/replica.hpp"
#include "motzkin/words.hpp"

using namespace motzkin;

namespace {

struct Bounds {
    int enumerate_bound = 12;
    int catalan_bound = 10;
    int product_bound = 7;
    std::uint64_t dimension_bound = 1000000;
};

Bounds load_bounds(const std::string& config_path) {
    Bounds bounds;
    if (config_path.empty()) return bounds;
    const auto j = nlohmann::json::parse(read_text_file(config_path), nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("malformed config file");
    const auto override_int = [&](const char* key, int* slot) {
        if (!j.contains(key)) return;
        *slot = j.at(key).get<int>();
        std::cerr << "warning: " << key << " overridden to " << *slot << "\n";
    };
    override_int("enumerate_bound", &bounds.enumerate_bound);
    override_int("catalan_bound", &bounds.catalan_bound);
    override_int("product_bound", &bounds.product_bound);
    if (j.contains("dimension_bound")) {
        bounds.dimension_bound = j.at("dimension_bound").get<std::uint64_t>();
        std::cerr << "warning: dimension_bound overridden to " << bounds.dimension_bound << "\n";
    }
    return bounds;
}

std::string print_value(const Rational& value, bool as_float) {
    if (!as_float) return format_rational(value);
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", to_double(value));
    return buffer;
}

// The compiled-in rational models used when no model files are supplied:
// a 2x2 pair for label 1 and a 3x3 pair for label 2.
std::vector<MatrixModel> default_models() {
    MatrixModel a(1, {"x", "y"}, {Matrix{{0, 1}, {1, 1}}, Matrix{{1, 1}, {1, 0}}});
    MatrixModel b(2, {"u", "v"},
                  {Matrix{{0, 1, 0}, {1, 0, 1}, {0, 1, 1}}, Matrix{{1, 0, 1}, {0, -1, 0}, {1, 0, 0}}});
    return {a, b};
}

Element random_element(const AlgebraSpec& spec, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_int_distribution<int> num(-2, 2);
    const int g = static_cast<int>(rng() % spec.generators().size());
    Element e = Element::generator(spec.label(), g);
    if (coin(rng) == 0) {
        Element u = Element::unit(spec.label());
        u *= Rational(num(rng), 2);
        e += u;
    }
    return e;
}

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) {
        if (!detail.empty()) std::cout << "  " << detail << "\n";
        ++failures;
    }
}

void verify_counts(int bound) {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= bound && ok; ++n) {
        const auto words = enumerate_reduced(n);
        if (BigInt(words.size()) != motzkin_number(n)) {
            ok = false;
            detail = "word count mismatch at n=" + std::to_string(n);
        }
    }
    report("reduced word counts match the recurrence", ok, detail);

    ok = true;
    for (int n = 1; n <= std::min(bound, 8) && ok; ++n) {
        BigInt total = 0;
        for (const Word& w : enumerate_reduced(n)) total += adapted_count(w);
        if (total != BigInt(enumerate_nc(n).size())) {
            ok = false;
            detail = "adapted partition total mismatch at n=" + std::to_string(n);
        }
    }
    report("adapted partitions exhaust the noncrossing lattice", ok, detail);

    ok = true;
    for (int n = 1; n <= std::min(bound - 1, 7) && ok; ++n) {
        BigInt total = 0;
        for (const auto& row : catalan_rows(n)) total += row.irreducible_count;
        if (total != catalan_number(n)) {
            ok = false;
            detail = "irreducible count total mismatch at n=" + std::to_string(n);
        }
    }
    report("irreducible counts total the Catalan numbers", ok, detail);
}

void verify_lattices(int bound) {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= std::min(bound, 6) && ok; ++n) {
        const auto words = enumerate_reduced(n);
        for (std::size_t i = 0; i < words.size() && ok; ++i)
            for (std::size_t j = 0; j < words.size() && ok; ++j) {
                const Word join = lattice_join(words[i], words[j]);
                const Word meet = lattice_meet(words[i], words[j]);
                if (join != lattice_join(words[j], words[i]) ||
                    meet != lattice_meet(words[j], words[i]) ||
                    lattice_join(words[i], meet) != words[i] ||
                    lattice_meet(words[i], join) != words[i]) {
                    ok = false;
                    detail = "lattice law failed for " + format_word(words[i]) + " and " +
                             format_word(words[j]);
                }
            }
    }
    report("word lattice laws hold", ok, detail);

    ok = true;
    for (int n = 1; n <= std::min(bound, 6) && ok; ++n)
        for (const Word& w : enumerate_reduced(n)) {
            const auto parts = enumerate_adapted(w);
            if (BigInt(parts.size()) != adapted_count(w)) {
                ok = false;
                detail = "adapted count mismatch for " + format_word(w);
                break;
            }
            const auto top = greatest_adapted(w);
            for (std::size_t i = 0; i < parts.size() && ok; ++i) {
                if (!(join_adapted(parts[i], parts[i]) == parts[i]) ||
                    !(join_adapted(parts[i], top) == top)) {
                    ok = false;
                    detail = "adapted join law failed for " + format_word(w);
                }
                for (std::size_t j = i + 1; j < parts.size() && ok; ++j)
                    if (!(join_adapted(parts[i], parts[j]) == join_adapted(parts[j], parts[i]))) {
                        ok = false;
                        detail = "adapted join not commutative for " + format_word(w);
                    }
            }
        }
    report("adapted lattice joins behave", ok, detail);
}

void verify_products(int bound, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    bool sum_ok = true, boolean_ok = true, centered_ok = true;
    std::string detail;
    for (int round = 0; round < 20; ++round) {
        const int algebras = 2 + static_cast<int>(rng() % 2);
        std::vector<AlgebraSpec> specs;
        for (int a = 0; a < algebras; ++a)
            specs.push_back(random_spec(a + 1, 2, bound + 1, rng()));
        const MomentContext ctx(specs);

        const int n = 1 + static_cast<int>(rng() % bound);
        ArgumentTuple args;
        int label = 1 + static_cast<int>(rng() % algebras);
        for (int k = 0; k < n; ++k) {
            args.push_back(random_element(ctx.algebra(label), rng));
            label = 1 + (label - 1 + 1 + static_cast<int>(rng() % (algebras - 1))) % algebras;
        }

        if (free_product_moment(ctx, args) != free_product_oracle(ctx, args)) {
            sum_ok = false;
            detail = "free product mismatch in round " + std::to_string(round);
        }
        Rational plain = 1;
        for (const auto& a : args) plain *= moment(ctx.algebra(a.label()), a);
        if (boolean_product_moment(ctx, args) != plain) boolean_ok = false;

        ArgumentTuple centered;
        for (const auto& a : args) centered.push_back(a.centered(ctx.algebra(a.label())));
        bool alternating = true;
        for (std::size_t k = 1; k < centered.size(); ++k)
            if (centered[k].label() == centered[k - 1].label()) alternating = false;
        if (alternating && centered.size() >= 2) {
            if (free_product_oracle(ctx, centered) != 0 ||
                free_product_moment(ctx, centered) != 0)
                centered_ok = false;
        }
    }
    report("summing over all words gives the free product", sum_ok, detail);
    report("summing over constant words gives the boolean product", boolean_ok);
    report("centered alternating moments vanish", centered_ok);
}

void verify_cumulants(int bound, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const MomentContext ctx(
        {generic_spec(1, 2, bound + 2, 0), generic_spec(2, 2, bound + 2, 1)});

    bool inv_ok = true;
    std::string detail;
    for (int n = 1; n <= std::min(bound, 5) && inv_ok; ++n)
        for (const Word& w : enumerate_reduced(n)) {
            ArgumentTuple args;
            for (int k = 0; k < n; ++k)
                args.push_back(random_element(ctx.algebra(1 + (k % 2)), rng));
            if (word_cumulant(ctx, w, args) != word_cumulant_by_inversion(ctx, w, args)) {
                inv_ok = false;
                detail = "cumulant mismatch for " + format_word(w);
                break;
            }
        }
    report("word cumulants equal their interval inversion", inv_ok, detail);

    bool nc_ok = true;
    for (int n = 1; n <= std::min(bound, 6) && nc_ok; ++n) {
        ArgumentTuple args;
        for (int k = 0; k < n; ++k) args.push_back(random_element(ctx.algebra(1 + (k % 2)), rng));
        if (nc_label_sum(ctx, args, false) != free_product_oracle(ctx, args) ||
            nc_label_sum(ctx, args, true) != free_boolean_cumulant(ctx, args)) {
            nc_ok = false;
            detail = "noncrossing sum mismatch at n=" + std::to_string(n);
        }
    }
    report("noncrossing label sums match moments and cumulants", nc_ok, detail);
}

void verify_oracle(int bound, std::uint64_t seed, const std::vector<MatrixModel>& models,
                   std::uint64_t dimension_bound) {
    std::vector<AlgebraSpec> specs;
    for (const auto& m : models) specs.push_back(m.spec(bound + 2));
    const MomentContext ctx(specs);
    std::vector<int> labels;
    for (const auto& m : models) labels.push_back(m.label());

    bool ok = true;
    std::string detail;
    int counter = 0;
    for (int n = 1; n <= std::min(bound, 6) && ok; ++n)
        for (const Word& w : enumerate_reduced(n)) {
            ArgumentTuple args;
            for (int k = 0; k < n; ++k) {
                const int label = labels[static_cast<std::size_t>(k % labels.size())];
                const auto& spec = ctx.algebra(label);
                const int g = counter++ % static_cast<int>(spec.generators().size());
                args.push_back(Element::generator(label, g));
            }
            const ReplicaSpace space(models, needed_truncation(w.colors()), dimension_bound);
            const Rational symbolic = psi(ctx, w.colors(), args);
            if (psi_oracle(space, w.colors(), args) != symbolic ||
                psi(ctx, w.colors(), args, Engine::singleton_recursion) != symbolic ||
                psi(ctx, w.colors(), args, Engine::first_return) != symbolic) {
                ok = false;
                detail = "oracle disagreement for " + format_word(w);
                break;
            }
        }
    report("tensor oracle matches the symbolic engines", ok, detail);

    const ReplicaSpace space(models, 3, dimension_bound);
    for (const auto& check : check_orthogonality(space, seed)) {
        std::cout << "  " << check.name << ": max violation " << format_rational(check.max_violation)
                  << "\n";
        report("orthogonality: " + check.name, check.max_violation == 0);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Motzkin-word moment functionals: enumeration, evaluation, verification"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file overriding the hard bounds");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "List words or adapted partitions");
    bool list_words = false, list_partitions = false, list_labeled = false;
    int enum_n = 0;
    std::string enum_word, enum_labels;
    bool enum_irreducible = false, enum_all_chains = false;
    enumerate->add_flag("--words", list_words, "List reduced words of length n");
    enumerate->add_flag("--partitions", list_partitions, "List adapted partitions of a word");
    enumerate->add_flag("--labeled-partitions", list_labeled,
                        "List adapted partitions admitting a label sequence");
    enumerate->add_option("-n", enum_n, "Word length");
    enumerate->add_option("-w", enum_word, "Word, e.g. s1.s2.s1");
    enumerate->add_option("--labels", enum_labels, "Comma-separated labels, e.g. 1,2,1");
    enumerate->add_flag("--irreducible", enum_irreducible, "Irreducible partitions only");
    enumerate->add_flag("--all-chains", enum_all_chains,
                        "Require label changes across all chain links");

    // catalan
    auto* catalan = app.add_subcommand("catalan", "Irreducible-count table over words of length n+1");
    int catalan_n = 4;
    catalan->add_option("-n", catalan_n, "Catalan index")->required();

    // compute
    auto* compute = app.add_subcommand("compute", "Evaluate word functionals from files");
    std::vector<std::string> table_paths, model_paths;
    std::string query_path, engine_name = "partition";
    bool as_float = false;
    compute->add_option("--table", table_paths, "Moment table JSON file (repeatable)");
    compute->add_option("--models", model_paths, "Matrix model JSON file (repeatable)");
    compute->add_option("--queries", query_path, "Query JSON file")->required();
    compute->add_option("--engine", engine_name,
                        "partition | singleton | first-return | oracle | all");
    compute->add_flag("--float", as_float, "Print floating-point values");

    // verify
    auto* verify = app.add_subcommand("verify", "Run a property suite");
    std::string suite;
    int verify_n = 0;
    std::uint64_t seed = 1;
    verify->add_option("suite", suite, "counts | lattices | products | cumulants | oracle")
        ->required();
    verify->add_option("-n", verify_n, "Size bound");
    verify->add_option("--seed", seed, "Random seed");
    std::vector<std::string> verify_model_paths;
    verify->add_option("--models", verify_model_paths, "Matrix model files for the oracle suite");

    // export
    auto* exporter = app.add_subcommand("export", "Write a Hasse diagram");
    std::string target, export_word, format = "dot", out_path;
    int export_n = 0;
    exporter->add_option("target", target, "hasse-words | hasse-adapted")->required();
    exporter->add_option("-n", export_n, "Word length for hasse-words");
    exporter->add_option("-w", export_word, "Word for hasse-adapted");
    exporter->add_flag("--irreducible", enum_irreducible, "Irreducible sublattice");
    exporter->add_option("--format", format, "dot | structured");
    exporter->add_option("-o", out_path, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Bounds bounds = load_bounds(config_path);

        if (*enumerate) {
            if (list_words + list_partitions + list_labeled != 1)
                throw std::invalid_argument(
                    "choose one of --words, --partitions, --labeled-partitions");
            if (list_words) {
                if (enum_n < 1 || enum_n > bounds.enumerate_bound)
                    throw std::invalid_argument("n out of range (bound " +
                                                std::to_string(bounds.enumerate_bound) + ")");
                for (const Word& w : enumerate_reduced(enum_n)) std::cout << format_word(w) << "\n";
            } else {
                const Word w = parse_word(enum_word);
                if (static_cast<int>(w.size()) > bounds.enumerate_bound)
                    throw std::invalid_argument("word too long for enumeration bound");
                auto parts = enumerate_adapted(w, enum_irreducible);
                if (list_labeled) {
                    const auto labels = parse_labels(enum_labels);
                    if (labels.size() != static_cast<std::size_t>(w.size()))
                        throw std::invalid_argument("label count differs from word length");
                    parts = filter_by_label(parts, labels,
                                            enum_all_chains ? ChainMode::all_chains
                                                            : ChainMode::monotone_chains);
                }
                for (const auto& p : parts) std::cout << format_partition(p.partition) << "\n";
            }
            return 0;
        }

        if (*catalan) {
            if (catalan_n < 1 || catalan_n > bounds.catalan_bound)
                throw std::invalid_argument("n out of range (bound " +
                                            std::to_string(bounds.catalan_bound) + ")");
            BigInt total = 0;
            for (const auto& row : catalan_rows(catalan_n)) {
                std::cout << format_word(row.word) << " " << row.irreducible_count << "\n";
                total += row.irreducible_count;
            }
            std::cout << "total " << total << "\n";
            std::cout << "catalan " << catalan_number(catalan_n) << "\n";
            return total == catalan_number(catalan_n) ? 0 : 1;
        }

        if (*compute) {
            std::vector<AlgebraSpec> specs;
            for (const auto& path : table_paths) specs.push_back(load_algebra_spec(path));
            std::vector<MatrixModel> models;
            for (const auto& path : model_paths) models.push_back(load_matrix_model(path));
            if (engine_name == "oracle" && models.empty())
                throw std::invalid_argument("the oracle engine needs --models files");
            // Tables may be omitted when models are given: derive them.
            if (specs.empty())
                for (const auto& m : models) specs.push_back(m.spec(8));
            const MomentContext ctx(specs);

            const auto queries = parse_queries(read_text_file(query_path));
            bool all_agree = true;
            for (const auto& q : queries) {
                ArgumentTuple args;
                for (std::size_t k = 0; k < q.labels.size(); ++k) {
                    const auto& spec = ctx.algebra(q.labels[k]);
                    const int g = spec.generator_index(q.generators[k]);
                    if (g < 0)
                        throw std::invalid_argument("unknown generator " + q.generators[k]);
                    args.push_back(Element::generator(q.labels[k], g));
                }
                const std::string head =
                    format_word(Word(q.colors)) + " [" + format_labels(q.labels) + "]";

                const auto engine_value = [&](const std::string& name) {
                    if (name == "partition") return psi(ctx, q.colors, args);
                    if (name == "singleton")
                        return psi(ctx, q.colors, args, Engine::singleton_recursion);
                    if (name == "first-return")
                        return psi(ctx, q.colors, args, Engine::first_return);
                    if (name == "oracle") {
                        const ReplicaSpace space(models, needed_truncation(q.colors),
                                                 bounds.dimension_bound);
                        return psi_oracle(space, q.colors, args);
                    }
                    throw std::invalid_argument("unknown engine " + name);
                };

                if (engine_name != "all") {
                    std::cout << head << " = " << print_value(engine_value(engine_name), as_float)
                              << "\n";
                    continue;
                }
                std::vector<std::string> names = {"partition", "singleton", "first-return"};
                if (!models.empty()) names.push_back("oracle");
                std::vector<Rational> values;
                for (const auto& name : names) {
                    values.push_back(engine_value(name));
                    std::cout << head << " " << name << " = " << print_value(values.back(), as_float)
                              << "\n";
                }
                bool agree = true;
                for (const auto& v : values)
                    if (v != values.front()) agree = false;
                std::cout << head << " " << (agree ? "AGREE (exact)" : "DISAGREE") << "\n";
                if (!agree) all_agree = false;
            }
            return all_agree ? 0 : 1;
        }

        if (*verify) {
            std::cout << "seed " << seed << "\n";
            if (suite == "counts") {
                verify_counts(verify_n > 0 ? verify_n : 8);
            } else if (suite == "lattices") {
                verify_lattices(verify_n > 0 ? verify_n : 6);
            } else if (suite == "products") {
                verify_products(verify_n > 0 ? std::min(verify_n, bounds.product_bound)
                                             : bounds.product_bound,
                                seed);
            } else if (suite == "cumulants") {
                verify_cumulants(verify_n > 0 ? verify_n : 6, seed);
            } else if (suite == "oracle") {
                std::vector<MatrixModel> models;
                for (const auto& path : verify_model_paths)
                    models.push_back(load_matrix_model(path));
                if (models.empty()) models = default_models();
                verify_oracle(verify_n > 0 ? verify_n : 5, seed, models, bounds.dimension_bound);
            } else {
                throw std::invalid_argument("unknown suite " + suite);
            }
            return failures == 0 ? 0 : 1;
        }

        if (*exporter) {
            std::string text;
            if (target == "hasse-words") {
                if (export_n < 1 || export_n > bounds.enumerate_bound)
                    throw std::invalid_argument("n out of range (bound " +
                                                std::to_string(bounds.enumerate_bound) + ")");
                text = format == "dot" ? dot_word_lattice(export_n)
                                       : structured_word_lattice(export_n);
            } else if (target == "hasse-adapted") {
                const Word w = parse_word(export_word);
                if (static_cast<int>(w.size()) > bounds.enumerate_bound)
                    throw std::invalid_argument("word too long for enumeration bound");
                text = format == "dot" ? dot_adapted_lattice(w, enum_irreducible)
                                       : structured_adapted_lattice(w, enum_irreducible);
            } else {
                throw std::invalid_argument("unknown export target " + target);
            }
            if (format != "dot" && format != "structured")
                throw std::invalid_argument("unknown format " + format);
            if (out_path.empty())
                std::cout << text;
            else
                write_text_file(out_path, text);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
