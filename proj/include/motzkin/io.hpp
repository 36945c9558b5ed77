#pragma once

#include <string>
#include <vector>

#include "motzkin/algebra.hpp"
#include "motzkin/replica.hpp"
#include "motzkin/words.hpp"

namespace motzkin {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Comma-separated label strings: "1,2,1".
std::vector<int> parse_labels(const std::string& text);
std::string format_labels(const std::vector<int>& labels);

// Moment tables as JSON. Every generator word up to the table's order
// must be present; the order is the longest word in the file.
//   {"label": 1, "generators": ["a","b"],
//    "moments": [{"word": ["a"], "value": "1/2"}, ...]}
AlgebraSpec parse_algebra_spec(const std::string& text);
std::string format_algebra_spec(const AlgebraSpec& spec);
AlgebraSpec load_algebra_spec(const std::string& path);
void save_algebra_spec(const AlgebraSpec& spec, const std::string& path);

// Matrix models as JSON, entries exact rationals.
//   {"label": 1, "dim": 2,
//    "generators": [{"name": "x", "rows": [["0","1"],["1","1"]]}]}
MatrixModel parse_matrix_model(const std::string& text);
std::string format_matrix_model(const MatrixModel& model);
MatrixModel load_matrix_model(const std::string& path);
void save_matrix_model(const MatrixModel& model, const std::string& path);

// Query files: a word plus one (label, generator) argument per letter.
//   {"queries": [{"word": "s1.s2.s1",
//                 "args": [{"label": 1, "generator": "a"}, ...]}]}
struct MomentQuery {
    std::vector<Color> colors;
    std::vector<int> labels;
    std::vector<std::string> generators;
};
std::vector<MomentQuery> parse_queries(const std::string& text);
std::string format_queries(const std::vector<MomentQuery>& queries);

// Hasse diagrams of the word lattice and of the adapted-partition
// lattices, as DOT graphs (edges point from finer/lower to coarser/higher)
// or as a plain structured listing.
std::string dot_word_lattice(int n);
std::string structured_word_lattice(int n);
std::string dot_adapted_lattice(const Word& w, bool irreducible_only = false);
std::string structured_adapted_lattice(const Word& w, bool irreducible_only = false);

}  // namespace motzkin
