#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <set>
#include <string>

#include "motzkin/adapted.hpp"
#include "motzkin/io.hpp"

using namespace motzkin;

namespace {

bool pointwise_leq(const Word& a, const Word& b) {
    if (a.size() != b.size()) return false;
    for (int k = 0; k < static_cast<int>(a.size()); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

// Parse the structured listing back into labels and cover pairs.
struct Listing {
    std::vector<std::string> labels;
    std::set<std::pair<int, int>> covers;
};

Listing parse_listing(const std::string& text) {
    Listing out;
    std::istringstream in(text);
    std::string tag;
    std::size_t count = 0;
    in >> tag >> count;
    REQUIRE(tag == "nodes");
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t index = 0;
        std::string label;
        in >> index >> label;
        REQUIRE(index == i);
        out.labels.push_back(label);
    }
    in >> tag >> count;
    REQUIRE(tag == "covers");
    for (std::size_t i = 0; i < count; ++i) {
        int lo = 0, hi = 0;
        in >> lo >> hi;
        out.covers.insert({lo, hi});
    }
    return out;
}

}  // namespace

TEST_CASE("label lists round-trip") {
    CHECK(parse_labels("1,2,1") == std::vector<int>{1, 2, 1});
    CHECK(parse_labels("3") == std::vector<int>{3});
    CHECK(format_labels({1, 2, 1}) == "1,2,1");
    CHECK(parse_labels(format_labels({4, 1, 1, 2})) == std::vector<int>{4, 1, 1, 2});
    CHECK_THROWS_AS(parse_labels(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_labels("1,x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_labels("0,1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_labels("1,,2"), std::invalid_argument);
}

TEST_CASE("moment tables round-trip through JSON") {
    const AlgebraSpec spec = generic_spec(2, 2, 3, 1);
    const AlgebraSpec back = parse_algebra_spec(format_algebra_spec(spec));
    CHECK(back.label() == spec.label());
    CHECK(back.generators() == spec.generators());
    CHECK(back.max_order() == spec.max_order());
    CHECK(back.moments() == spec.moments());

    const char* incomplete = R"({"label": 1, "generators": ["a"],
        "moments": [{"word": ["a", "a"], "value": "1"}]})";
    CHECK_THROWS_AS(parse_algebra_spec(incomplete), std::invalid_argument);

    const char* unknown = R"({"label": 1, "generators": ["a"],
        "moments": [{"word": ["b"], "value": "1"}]})";
    CHECK_THROWS_AS(parse_algebra_spec(unknown), std::invalid_argument);

    CHECK_THROWS_AS(parse_algebra_spec("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_algebra_spec("{}"), std::invalid_argument);
}

TEST_CASE("matrix models round-trip through JSON") {
    const MatrixModel model(
        1, {"x", "y"},
        {Matrix{{0, 1}, {1, 1}}, Matrix{{Rational(1, 2), -1}, {1, 0}}});
    const MatrixModel back = parse_matrix_model(format_matrix_model(model));
    CHECK(back.label() == model.label());
    CHECK(back.dim() == model.dim());
    CHECK(back.generator_names() == model.generator_names());
    CHECK(back.generator(0) == model.generator(0));
    CHECK(back.generator(1) == model.generator(1));

    const char* short_rows = R"({"label": 1, "dim": 3,
        "generators": [{"name": "x", "rows": [["0","1"],["1","0"]]}]})";
    CHECK_THROWS_AS(parse_matrix_model(short_rows), std::invalid_argument);
}

TEST_CASE("query files round-trip") {
    std::vector<MomentQuery> queries;
    queries.push_back({{1, 2, 1}, {1, 2, 1}, {"a", "b", "a"}});
    queries.push_back({{1, 1}, {2, 2}, {"u", "u"}});
    const auto back = parse_queries(format_queries(queries));
    REQUIRE(back.size() == 2);
    CHECK(back[0].colors == queries[0].colors);
    CHECK(back[0].labels == queries[0].labels);
    CHECK(back[0].generators == queries[0].generators);
    CHECK(back[1].colors == queries[1].colors);

    CHECK(parse_queries(R"({"queries": []})").empty());
    const char* mismatched = R"({"queries": [{"word": "s1.s1",
        "args": [{"label": 1, "generator": "a"}]}]})";
    CHECK_THROWS_AS(parse_queries(mismatched), std::invalid_argument);
}

TEST_CASE("the word lattice export lists exactly the covering pairs") {
    for (int n : {4, 5, 6}) {
        const auto words = enumerate_reduced(n);
        const Listing listing = parse_listing(structured_word_lattice(n));
        REQUIRE(listing.labels.size() == words.size());
        for (std::size_t i = 0; i < words.size(); ++i)
            CHECK(listing.labels[i] == format_word(words[i]));

        // Brute-force covers: comparable pairs with nothing in between.
        std::set<std::pair<int, int>> expected;
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = 0; j < words.size(); ++j) {
                if (i == j || !pointwise_leq(words[i], words[j])) continue;
                bool covered = true;
                for (std::size_t k = 0; k < words.size() && covered; ++k) {
                    if (k == i || k == j) continue;
                    if (pointwise_leq(words[i], words[k]) && pointwise_leq(words[k], words[j]))
                        covered = false;
                }
                if (covered) expected.insert({static_cast<int>(i), static_cast<int>(j)});
            }
        CHECK(listing.covers == expected);
    }

    const std::string dot = dot_word_lattice(5);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("s1.s2.s3.s2.s1") != std::string::npos);

    const Listing tiny = parse_listing(structured_word_lattice(1));
    CHECK(tiny.labels == std::vector<std::string>{"s1"});
    CHECK(tiny.covers.empty());
}

TEST_CASE("the adapted lattice export lists refinement covers") {
    const Word w = parse_word("s1.s2.s2.s2.s1");

    for (bool irreducible : {false, true}) {
        const auto parts = enumerate_adapted(w, irreducible);
        const Listing listing = parse_listing(structured_adapted_lattice(w, irreducible));
        REQUIRE(listing.labels.size() == parts.size());

        std::set<std::pair<int, int>> expected;
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = 0; j < parts.size(); ++j) {
                if (i == j || !parts[i].partition.refines(parts[j].partition)) continue;
                bool covered = true;
                for (std::size_t k = 0; k < parts.size() && covered; ++k) {
                    if (k == i || k == j) continue;
                    if (parts[i].partition.refines(parts[k].partition) &&
                        parts[k].partition.refines(parts[j].partition))
                        covered = false;
                }
                if (covered) expected.insert({static_cast<int>(i), static_cast<int>(j)});
            }
        CHECK(listing.covers == expected);
    }

    CHECK(enumerate_adapted(w, true).size() == 4);
    const std::string dot = dot_adapted_lattice(w, true);
    CHECK(dot.find("digraph") != std::string::npos);

    const Listing single = parse_listing(structured_adapted_lattice(parse_word("s1"), false));
    CHECK(single.labels.size() == 1);
    CHECK(single.covers.empty());
}

TEST_CASE("specs and models write to disk and read back") {
    const std::string dir = "io_test_tmp";
    std::remove((dir + "_spec.json").c_str());
    std::remove((dir + "_model.json").c_str());

    const AlgebraSpec spec = random_spec(3, 2, 3, 99);
    save_algebra_spec(spec, dir + "_spec.json");
    const AlgebraSpec spec_back = load_algebra_spec(dir + "_spec.json");
    CHECK(spec_back.moments() == spec.moments());

    const MatrixModel model(2, {"u"}, {Matrix{{0, 1, 0}, {1, 0, 1}, {0, 1, 1}}});
    save_matrix_model(model, dir + "_model.json");
    const MatrixModel model_back = load_matrix_model(dir + "_model.json");
    CHECK(model_back.generator(0) == model.generator(0));

    CHECK_THROWS_AS(read_text_file("definitely_missing_file.json"), std::invalid_argument);

    std::remove((dir + "_spec.json").c_str());
    std::remove((dir + "_model.json").c_str());
}
