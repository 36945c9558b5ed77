#include "motzkin/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "motzkin/adapted.hpp"

namespace motzkin {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
}

std::vector<int> parse_labels(const std::string& text) {
    std::vector<int> labels;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        try {
            std::size_t used = 0;
            const int value = std::stoi(token, &used);
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used])))
                ++used;
            if (used != token.size() || value < 1) throw std::invalid_argument("");
            labels.push_back(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad label list: " + text);
        }
    }
    if (labels.empty()) throw std::invalid_argument("empty label list");
    return labels;
}

std::string format_labels(const std::vector<int>& labels) {
    std::string out;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (k > 0) out += ',';
        out += std::to_string(labels[k]);
    }
    return out;
}

namespace {

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("malformed JSON input");
    return j;
}

GenWord resolve_word(const json& names, const std::vector<std::string>& generators) {
    GenWord word;
    for (const auto& name : names) {
        const std::string n = name.get<std::string>();
        int index = -1;
        for (std::size_t g = 0; g < generators.size(); ++g)
            if (generators[g] == n) index = static_cast<int>(g);
        if (index < 0) throw std::invalid_argument("unknown generator " + n);
        word.push_back(index);
    }
    return word;
}

}  // namespace

AlgebraSpec parse_algebra_spec(const std::string& text) {
    const json j = parse_json(text);
    if (!j.contains("label") || !j.contains("generators") || !j.contains("moments"))
        throw std::invalid_argument("moment table needs label, generators, moments");
    const int label = j.at("label").get<int>();
    std::vector<std::string> generators;
    for (const auto& g : j.at("generators")) generators.push_back(g.get<std::string>());

    std::map<GenWord, Rational> moments;
    int max_order = 0;
    for (const auto& entry : j.at("moments")) {
        GenWord word = resolve_word(entry.at("word"), generators);
        if (word.empty()) throw std::invalid_argument("moment words must be nonempty");
        max_order = std::max(max_order, static_cast<int>(word.size()));
        moments[std::move(word)] = parse_rational(entry.at("value").get<std::string>());
    }
    return AlgebraSpec(label, generators, max_order, moments);
}

std::string format_algebra_spec(const AlgebraSpec& spec) {
    json j;
    j["label"] = spec.label();
    j["generators"] = spec.generators();
    json moments = json::array();
    for (const auto& [word, value] : spec.moments()) {
        if (word.empty()) continue;  // the unit moment is implicit
        json names = json::array();
        for (int g : word) names.push_back(spec.generators()[static_cast<std::size_t>(g)]);
        moments.push_back({{"word", names}, {"value", format_rational(value)}});
    }
    j["moments"] = moments;
    return j.dump(2) + "\n";
}

AlgebraSpec load_algebra_spec(const std::string& path) {
    return parse_algebra_spec(read_text_file(path));
}

void save_algebra_spec(const AlgebraSpec& spec, const std::string& path) {
    write_text_file(path, format_algebra_spec(spec));
}

MatrixModel parse_matrix_model(const std::string& text) {
    const json j = parse_json(text);
    if (!j.contains("label") || !j.contains("dim") || !j.contains("generators"))
        throw std::invalid_argument("matrix model needs label, dim, generators");
    const int label = j.at("label").get<int>();
    const std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<std::string> names;
    std::vector<Matrix> matrices;
    for (const auto& g : j.at("generators")) {
        names.push_back(g.at("name").get<std::string>());
        Matrix m;
        for (const auto& row : g.at("rows")) {
            std::vector<Rational> r;
            for (const auto& cell : row) r.push_back(parse_rational(cell.get<std::string>()));
            m.push_back(std::move(r));
        }
        if (m.size() != dim) throw std::invalid_argument("row count differs from dim");
        matrices.push_back(std::move(m));
    }
    return MatrixModel(label, std::move(names), std::move(matrices));
}

std::string format_matrix_model(const MatrixModel& model) {
    json j;
    j["label"] = model.label();
    j["dim"] = model.dim();
    json generators = json::array();
    for (std::size_t g = 0; g < model.generator_names().size(); ++g) {
        json rows = json::array();
        for (const auto& row : model.generator(g)) {
            json cells = json::array();
            for (const auto& x : row) cells.push_back(format_rational(x));
            rows.push_back(cells);
        }
        generators.push_back({{"name", model.generator_names()[g]}, {"rows", rows}});
    }
    j["generators"] = generators;
    return j.dump(2) + "\n";
}

MatrixModel load_matrix_model(const std::string& path) {
    return parse_matrix_model(read_text_file(path));
}

void save_matrix_model(const MatrixModel& model, const std::string& path) {
    write_text_file(path, format_matrix_model(model));
}

std::vector<MomentQuery> parse_queries(const std::string& text) {
    const json j = parse_json(text);
    if (!j.contains("queries")) throw std::invalid_argument("query file needs a queries array");
    std::vector<MomentQuery> queries;
    for (const auto& q : j.at("queries")) {
        MomentQuery query;
        query.colors = parse_word(q.at("word").get<std::string>()).colors();
        for (const auto& arg : q.at("args")) {
            query.labels.push_back(arg.at("label").get<int>());
            query.generators.push_back(arg.at("generator").get<std::string>());
        }
        if (query.labels.size() != query.colors.size())
            throw std::invalid_argument("argument count differs from word length");
        queries.push_back(std::move(query));
    }
    return queries;
}

std::string format_queries(const std::vector<MomentQuery>& queries) {
    json all = json::array();
    for (const auto& q : queries) {
        json args = json::array();
        for (std::size_t k = 0; k < q.labels.size(); ++k)
            args.push_back({{"label", q.labels[k]}, {"generator", q.generators[k]}});
        all.push_back({{"word", format_word(Word(q.colors))}, {"args", args}});
    }
    return json{{"queries", all}}.dump(2) + "\n";
}

namespace {

// Covering relations of the pointwise order on the words of one length.
// The order is graded by the color sum, so covers are exactly the pairs
// that differ by one at a single position.
std::vector<std::pair<int, int>> word_covers(const std::vector<Word>& words) {
    std::map<Word, int> index;
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> covers;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const int n = static_cast<int>(words[i].size());
        for (int k = 1; k + 1 < n; ++k) {
            if (words[i][k] < 2) continue;
            std::vector<Color> lower = words[i].colors();
            lower[static_cast<std::size_t>(k)] -= 1;
            if (validate_colors(lower).kind != WordKind::reduced) continue;
            covers.push_back({index.at(Word(lower)), static_cast<int>(i)});
        }
    }
    return covers;
}

std::vector<std::pair<int, int>> partition_covers(const std::vector<ColoredPartition>& parts) {
    std::vector<std::pair<int, int>> covers;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (i == j) continue;
            if (parts[i].partition.block_count() != parts[j].partition.block_count() + 1) continue;
            if (parts[i].partition.refines(parts[j].partition))
                covers.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    return covers;
}

std::string dot_graph(const std::string& name, const std::vector<std::string>& labels,
                      const std::vector<std::pair<int, int>>& covers) {
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << "  n" << i << " [label=\"" << labels[i] << "\"];\n";
    for (const auto& [lo, hi] : covers) out << "  n" << lo << " -> n" << hi << ";\n";
    out << "}\n";
    return out.str();
}

std::string structured_graph(const std::vector<std::string>& labels,
                             const std::vector<std::pair<int, int>>& covers) {
    std::ostringstream out;
    out << "nodes " << labels.size() << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << " " << labels[i] << "\n";
    out << "covers " << covers.size() << "\n";
    for (const auto& [lo, hi] : covers) out << lo << " " << hi << "\n";
    return out.str();
}

}  // namespace

std::string dot_word_lattice(int n) {
    const auto words = enumerate_reduced(n);
    std::vector<std::string> labels;
    for (const Word& w : words) labels.push_back(format_word(w));
    return dot_graph("words_" + std::to_string(n), labels, word_covers(words));
}

std::string structured_word_lattice(int n) {
    const auto words = enumerate_reduced(n);
    std::vector<std::string> labels;
    for (const Word& w : words) labels.push_back(format_word(w));
    return structured_graph(labels, word_covers(words));
}

std::string dot_adapted_lattice(const Word& w, bool irreducible_only) {
    const auto parts = enumerate_adapted(w, irreducible_only);
    std::vector<std::string> labels;
    for (const auto& p : parts) labels.push_back(format_partition(p.partition));
    const std::string name =
        std::string(irreducible_only ? "adapted_irr_" : "adapted_") + format_word(w);
    return dot_graph(name, labels, partition_covers(parts));
}

std::string structured_adapted_lattice(const Word& w, bool irreducible_only) {
    const auto parts = enumerate_adapted(w, irreducible_only);
    std::vector<std::string> labels;
    for (const auto& p : parts) labels.push_back(format_partition(p.partition));
    return structured_graph(labels, partition_covers(parts));
}

}  // namespace motzkin
