#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>
#include <vector>

#include "motzkin/engines.hpp"
#include "motzkin/replica.hpp"
#include "motzkin/words.hpp"

using namespace motzkin;

namespace {

// Small exact models with 0/1/-1 entries: one 2x2 algebra and one 3x3.
MatrixModel model_a() {
    Matrix x{{0, 1}, {1, 1}};
    Matrix y{{1, 1}, {1, 0}};
    return MatrixModel(1, {"x", "y"}, {x, y});
}

MatrixModel model_b() {
    Matrix u{{0, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    Matrix v{{1, 0, 1}, {0, -1, 0}, {1, 0, 0}};
    return MatrixModel(2, {"u", "v"}, {u, v});
}

MatrixModel model_c() {
    Matrix g{{1, 1}, {0, -1}};
    Matrix h{{0, 1}, {1, 0}};
    return MatrixModel(3, {"g", "h"}, {g, h});
}

Element gen(int label, int index) { return Element::generator(label, index); }

// A fixed supply of elements per label, cycling through single
// generators and a small binomial so products stay low-degree.
Element pick(int label, int k) {
    switch (k % 3) {
        case 0: return gen(label, 0);
        case 1: return gen(label, 1);
        default: {
            Element e = gen(label, 0);
            Element u = Element::unit(label);
            u *= Rational(1, 2);
            e += u;
            return e;
        }
    }
}

Rational phi_of(const MatrixModel& m, const Element& a) { return m.element_matrix(a)[0][0]; }

std::vector<Rational> replica_apply_word(const ReplicaSpace& space,
                                         const std::vector<Color>& colors,
                                         const ArgumentTuple& args) {
    std::vector<Rational> v = vacuum_vector(space);
    for (std::size_t k = colors.size(); k-- > 0;)
        v = apply_operator(space, replica(space, args[k], colors[k]), v);
    return v;
}

TensorOperator replica_word_operator(const ReplicaSpace& space, const std::vector<Color>& colors,
                                     const ArgumentTuple& args) {
    TensorOperator op = identity_operator(space);
    for (std::size_t k = 0; k < colors.size(); ++k)
        op = operator_product(space, op, replica(space, args[k], colors[k]));
    return op;
}

// Interval partitions of {0,..,n-1} as sorted lists of block lengths in
// order; visits every composition of n.
void for_each_composition(int n, std::vector<int>& parts,
                          const std::function<void(const std::vector<int>&)>& visit) {
    if (n == 0) {
        visit(parts);
        return;
    }
    for (int first = 1; first <= n; ++first) {
        parts.push_back(first);
        for_each_composition(n - first, parts, visit);
        parts.pop_back();
    }
}

}  // namespace

TEST_CASE("matrix helpers build exact projections") {
    const Matrix p = vacuum_projection(3);
    CHECK(matrix_product(p, p) == p);
    CHECK(matrix_sum(vacuum_projection(3), vacuum_complement(3)) == identity_matrix(3));
    CHECK(matrix_is_zero(matrix_difference(p, p)));
    CHECK_FALSE(matrix_is_zero(identity_matrix(2)));
}

TEST_CASE("matrix models evaluate words, elements, and whole tables") {
    const MatrixModel m = model_a();
    CHECK(m.dim() == 2);
    CHECK(m.word_moment({}) == 1);
    CHECK(m.word_moment({0}) == 0);
    CHECK(m.word_moment({0, 0}) == 1);
    CHECK(m.word_moment({0, 1}) == 1);

    // A polynomial evaluates to the same matrix its word expansion gives.
    Element e = gen(1, 0) * gen(1, 1);
    Element scaled = gen(1, 0);
    scaled *= Rational(-3, 2);
    e += scaled;
    const Matrix me = m.element_matrix(e);
    const Matrix expect =
        matrix_sum(matrix_product(m.generator(0), m.generator(1)),
                   [&] {
                       Matrix s = m.generator(0);
                       for (auto& row : s)
                           for (auto& x : row) x *= Rational(-3, 2);
                       return s;
                   }());
    CHECK(me == expect);

    // The tabulated spec agrees with direct evaluation on every word.
    const AlgebraSpec spec = m.spec(4);
    for (const auto& [word, value] : spec.moments()) CHECK(value == m.word_moment(word));
    CHECK(moment(spec, e) == me[0][0]);

    CHECK_THROWS_AS(MatrixModel(1, {"x"}, {Matrix{{0, 1}}}), std::invalid_argument);
    CHECK_THROWS_AS(MatrixModel(1, {"x", "x"}, {identity_matrix(2), identity_matrix(2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(model_a().element_matrix(gen(2, 0)), std::invalid_argument);
}

TEST_CASE("tridiagonal realizations reproduce one-generator tables") {
    // A table coming from an honest matrix model round-trips exactly.
    Matrix t{{0, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    const MatrixModel one(1, {"x"}, {t});
    const AlgebraSpec table = one.spec(6);
    const MatrixModel back = jacobi_model(table);
    for (int n = 1; n <= 6; ++n)
        CHECK(back.word_moment(GenWord(n, 0)) == one.word_moment(GenWord(n, 0)));

    // Random rational tables are generically realizable.
    for (std::uint64_t seed : {3u, 5u, 11u}) {
        const AlgebraSpec spec = random_spec(4, 1, 6, seed);
        const MatrixModel jm = jacobi_model(spec);
        for (int n = 1; n <= 6; ++n) CHECK(jm.word_moment(GenWord(n, 0)) == spec.moment(GenWord(n, 0)));
    }

    // A point mass collapses to dimension one.
    std::map<GenWord, Rational> point;
    for (int n = 1; n <= 5; ++n) point[GenWord(n, 0)] = Rational(1 << n);
    const MatrixModel pm = jacobi_model(AlgebraSpec(7, {"x"}, 5, point));
    CHECK(pm.dim() == 1);
    CHECK(pm.word_moment(GenWord(3, 0)) == 8);

    // Degenerate but inconsistent moments have no realization.
    std::map<GenWord, Rational> bad;
    bad[{0}] = 0;
    bad[{0, 0}] = 0;
    bad[{0, 0, 0}] = 1;
    CHECK_THROWS_AS(jacobi_model(AlgebraSpec(7, {"x"}, 3, bad)), std::invalid_argument);

    CHECK_THROWS_AS(jacobi_model(model_a().spec(2)), std::invalid_argument);
}

TEST_CASE("space construction enforces its bounds") {
    const ReplicaSpace space({model_a(), model_b()}, 3);
    CHECK(space.copies() == 3);
    CHECK(space.total_dimension() == 8 * 27);
    CHECK(space.sites().size() == 6);
    CHECK(space.site_index(1, 0) == 0);
    CHECK(space.site_index(2, 2) == 5);
    CHECK(space.model(2).dim() == 3);
    CHECK_THROWS_AS(space.model(9), std::out_of_range);

    CHECK_THROWS_AS(ReplicaSpace({model_a()}, 0), std::invalid_argument);
    CHECK_THROWS_AS(ReplicaSpace({model_a(), model_a()}, 2), std::invalid_argument);
    CHECK_THROWS_AS(ReplicaSpace({model_b()}, 13), std::length_error);

    CHECK_THROWS_AS(replica(space, gen(1, 0), 0), std::invalid_argument);
    CHECK_THROWS_AS(replica(space, gen(1, 0), 4), std::out_of_range);

    CHECK(needed_truncation({1, 2, 3, 2, 1}) == 3);
    CHECK(needed_truncation({}) == 1);

    const ReplicaSpace wide({model_a(), model_c()}, 6);
    CHECK(wide.total_dimension() == 4096);
    const ReplicaSpace wider({model_a(), model_b()}, 5);
    CHECK_THROWS_AS(materialize(wider, identity_operator(wider)), std::length_error);
}

TEST_CASE("unit replicas are idempotents that decompose the identity") {
    const ReplicaSpace space({model_a(), model_b()}, 3);
    const Matrix id = materialize(space, identity_operator(space));

    for (int label : {1, 2}) {
        std::vector<Matrix> units;
        for (Color j = 1; j <= 3; ++j)
            units.push_back(materialize(space, replica(space, Element::unit(label), j)));
        for (std::size_t j = 0; j < units.size(); ++j) {
            CHECK(matrix_product(units[j], units[j]) == units[j]);
            for (std::size_t k = 0; k < units.size(); ++k)
                if (j != k) CHECK(matrix_is_zero(matrix_product(units[j], units[k])));
        }
        CHECK(units[0] != id);
    }

    // Mixed-color replicas of one label annihilate each other as operators.
    const Matrix xy = materialize(
        space, operator_product(space, replica(space, gen(1, 0), 1), replica(space, gen(1, 1), 2)));
    CHECK(matrix_is_zero(xy));

    CHECK(vacuum_expectation(space, identity_operator(space)) == 1);

    // The color sum of unit replicas fixes every vector a replica word
    // reaches from the vacuum.
    for (int label : {1, 2}) {
        TensorOperator sum = replica(space, Element::unit(label), 1);
        for (Color j = 2; j <= 3; ++j)
            sum = operator_add(sum, replica(space, Element::unit(label), j));
        int counter = 0;
        for (int n = 1; n <= 5; ++n)
            for (const Word& w : enumerate_reduced(n)) {
                ArgumentTuple args;
                for (int k = 0; k < n; ++k) args.push_back(pick(1 + (w[k] % 2), counter++));
                const auto v = replica_apply_word(space, w.colors(), args);
                CHECK(apply_operator(space, sum, v) == v);
            }
    }
}

TEST_CASE("replicas multiply like their elements within one color") {
    const ReplicaSpace space({model_a(), model_b()}, 2);
    for (Color j : {1, 2}) {
        const Element a = pick(1, 0), b = pick(1, 2);
        const Matrix lhs = materialize(
            space, operator_product(space, replica(space, a, j), replica(space, b, j)));
        const Matrix rhs = materialize(space, replica(space, a * b, j));
        CHECK(lhs == rhs);
    }
    // Phi of powers of a color-1 replica are plain moments.
    const Element a = gen(1, 0) + gen(1, 1);
    TensorOperator op = replica(space, a, 1);
    Element power = a;
    for (int n = 2; n <= 5; ++n) {
        op = operator_product(space, op, replica(space, a, 1));
        power = power * a;
        CHECK(vacuum_expectation(space, op) == phi_of(model_a(), power));
    }
}

TEST_CASE("the oracle agrees with every symbolic engine on small words") {
    const MomentContext ctx({model_a().spec(8), model_b().spec(8)});
    int counter = 0;
    for (int n = 1; n <= 5; ++n)
        for (const Word& w : enumerate_reduced(n)) {
            const ReplicaSpace space({model_a(), model_b()}, needed_truncation(w.colors()));
            // Two label patterns: alternating, and tied to the parity of
            // the color so that equal colors may share a label.
            for (int pattern = 0; pattern < 2; ++pattern) {
                ArgumentTuple args;
                for (int k = 0; k < n; ++k) {
                    const int label = pattern == 0 ? 1 + (k % 2) : 1 + (w[k] % 2);
                    args.push_back(pick(label, counter++));
                }
                const Rational expected = psi(ctx, w.colors(), args);
                CHECK(expected == psi(ctx, w.colors(), args, Engine::singleton_recursion));
                CHECK(expected == psi(ctx, w.colors(), args, Engine::first_return));
                CHECK(expected == psi_oracle(space, w.colors(), args));
            }
        }
}

TEST_CASE("color patterns outside the Motzkin set vanish") {
    const ReplicaSpace space({model_a(), model_b()}, 3);
    const MomentContext ctx({model_a().spec(8), model_b().spec(8)});

    const std::vector<std::vector<Color>> bad = {
        {2}, {2, 1}, {1, 2}, {2, 2}, {1, 3, 1}, {1, 2, 2}, {2, 2, 1}, {1, 2, 3, 2}};
    int counter = 0;
    for (const auto& colors : bad) {
        ArgumentTuple args;
        for (std::size_t k = 0; k < colors.size(); ++k) args.push_back(pick(1 + (k % 2), counter++));
        CHECK(psi_oracle(space, colors, args) == 0);
        CHECK(psi(ctx, colors, args) == 0);
    }

    // Same label, different colors: the product itself is zero.
    CHECK(psi_oracle(space, {1, 2, 1}, {gen(1, 0), gen(1, 1), gen(1, 0)}) == 0);
    CHECK(psi(ctx, {1, 2, 1}, {gen(1, 0), gen(1, 1), gen(1, 0)}) == 0);
}

TEST_CASE("truncation at the word's height is exact") {
    int counter = 0;
    for (int n = 1; n <= 5; ++n)
        for (const Word& w : enumerate_reduced(n)) {
            ArgumentTuple args;
            for (int k = 0; k < n; ++k) args.push_back(pick(1 + (k % 2), counter++));
            const int depth = needed_truncation(w.colors());
            const ReplicaSpace tight({model_a(), model_b()}, depth);
            const ReplicaSpace slack({model_a(), model_b()}, depth + 1);
            CHECK(psi_oracle(tight, w.colors(), args) == psi_oracle(slack, w.colors(), args));
        }
}

TEST_CASE("vacuum-complement products are boolean cumulants") {
    const MatrixModel m = model_b();
    const AlgebraSpec spec = m.spec(8);

    for (int n = 1; n <= 5; ++n) {
        std::vector<Element> args;
        for (int k = 0; k < n; ++k) args.push_back(pick(2, k + n));
        CHECK(boolean_cumulant_via_p_perp(m, args) == boolean_cumulant(spec, args));
    }

    // The three-argument expansion over insertions of the projection.
    const Element a = pick(2, 0), b = pick(2, 1), c = pick(2, 2);
    const Rational lhs = boolean_cumulant_via_p_perp(m, {a, b, c});
    const Rational rhs = phi_of(m, a * b * c) - phi_of(m, a) * phi_of(m, b * c) -
                         phi_of(m, a * b) * phi_of(m, c) +
                         phi_of(m, a) * phi_of(m, b) * phi_of(m, c);
    CHECK(lhs == rhs);
}

TEST_CASE("grouped complements sum cumulants over connecting interval partitions") {
    const MatrixModel m = model_a();
    const AlgebraSpec spec = m.spec(8);

    const std::vector<std::vector<std::vector<int>>> groupings = {
        {{0}, {1, 2}}, {{0, 1}, {2}}, {{0}, {1, 2}, {3}}, {{0, 1}, {2, 3}}, {{0}, {1}, {2, 3, 4}}};
    for (const auto& grouping : groupings) {
        int n = 0;
        for (const auto& g : grouping) n += static_cast<int>(g.size());
        std::vector<Element> args;
        for (int k = 0; k < n; ++k) args.push_back(pick(1, 3 * k + 1));

        std::vector<std::vector<Element>> groups;
        std::vector<int> boundaries;  // last index of each group but the final one
        int pos = 0;
        for (const auto& g : grouping) {
            std::vector<Element> block;
            for (std::size_t t = 0; t < g.size(); ++t) block.push_back(args[pos++]);
            groups.push_back(block);
            if (pos < n) boundaries.push_back(pos - 1);
        }
        const Rational direct = grouped_p_perp_moment(m, groups);

        // Sum boolean cumulants over interval partitions whose blocks
        // bridge every boundary between consecutive groups.
        Rational total = 0;
        std::vector<int> parts;
        for_each_composition(n, parts, [&](const std::vector<int>& lens) {
            int start = 0;
            for (int len : lens) {
                const int end = start + len - 1;
                for (int cut : boundaries)
                    if (cut == end) return;  // breaks exactly at a group boundary
                start += len;
            }
            Rational prod = 1;
            start = 0;
            for (int len : lens) {
                std::vector<Element> block(args.begin() + start, args.begin() + start + len);
                prod *= boolean_cumulant(spec, block);
                start += len;
            }
            total += prod;
        });
        CHECK(direct == total);
    }
}

TEST_CASE("a seven-letter word moment factors into cumulants and moments") {
    // Colors (1,2,1,1,2,2,1) with matching labels: the label-1 letters
    // contribute a grouped cumulant, the label-2 letters plain moments.
    const std::vector<Color> colors = {1, 2, 1, 1, 2, 2, 1};
    const Element a1 = pick(1, 0), a3 = pick(1, 1), a4 = pick(1, 2), a7 = pick(1, 4);
    const Element b2 = pick(2, 0), b5 = pick(2, 1), b6 = pick(2, 2);
    const ArgumentTuple args = {a1, b2, a3, a4, b5, b6, a7};

    const ReplicaSpace space({model_a(), model_b()}, 2);
    const Rational lhs = psi_oracle(space, colors, args);
    const Rational rhs = grouped_p_perp_moment(model_a(), {{a1}, {a3, a4}, {a7}}) *
                         phi_of(model_b(), b2) * phi_of(model_b(), b5 * b6);
    CHECK(lhs == rhs);

    const Rational grouped =
        boolean_cumulant(model_a().spec(8), {a1, a3, a4, a7}) +
        boolean_cumulant(model_a().spec(8), {a1, a3}) * boolean_cumulant(model_a().spec(8), {a4, a7});
    CHECK(grouped_p_perp_moment(model_a(), {{a1}, {a3, a4}, {a7}}) == grouped);
}

TEST_CASE("centered alternating replica products vanish for arbitrary colors") {
    const ReplicaSpace space({model_a(), model_b(), model_c()}, 3);
    const std::vector<MatrixModel> models = {model_a(), model_b(), model_c()};
    std::mt19937_64 rng(20240818);
    std::uniform_int_distribution<int> color_of(1, 3);
    std::uniform_int_distribution<int> label_step(1, 2);
    std::uniform_int_distribution<int> pick_of(0, 8);

    for (int round = 0; round < 30; ++round) {
        const int n = 1 + static_cast<int>(rng() % 5);
        std::vector<Color> colors;
        ArgumentTuple args;
        int label = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < n; ++k) {
            colors.push_back(color_of(rng));
            const auto& model = models[static_cast<std::size_t>(label - 1)];
            args.push_back(pick(label, pick_of(rng)).centered(model.spec(2)));
            label = 1 + (label - 1 + label_step(rng)) % 3;
        }
        CHECK(vacuum_expectation(space, replica_word_operator(space, colors, args)) == 0);
    }
}

TEST_CASE("unit replicas drop from reduced positions") {
    const ReplicaSpace space({model_a(), model_b(), model_c()}, 3);
    const std::vector<MatrixModel> models = {model_a(), model_b(), model_c()};
    std::mt19937_64 rng(424243);

    const auto random_labels = [&](int n) {
        std::vector<int> labels;
        int label = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < n; ++k) {
            labels.push_back(label);
            label = 1 + (label - 1 + 1 + static_cast<int>(rng() % 2)) % 3;
        }
        return labels;
    };
    const auto centered_pick = [&](int label) {
        const auto& model = models[static_cast<std::size_t>(label - 1)];
        return pick(label, static_cast<int>(rng() % 9)).centered(model.spec(2));
    };

    for (int round = 0; round < 12; ++round) {
        const int r = 2 + static_cast<int>(rng() % 2);      // unit position
        const int extra = static_cast<int>(rng() % 3);      // suffix length
        const int n = r + extra;
        const auto labels = random_labels(n);

        std::vector<Color> colors;
        ArgumentTuple args;
        for (int k = 0; k < r - 1; ++k) {
            colors.push_back(k + 1);
            args.push_back(centered_pick(labels[static_cast<std::size_t>(k)]));
        }
        colors.push_back(r);
        args.push_back(Element::unit(labels[static_cast<std::size_t>(r - 1)]));
        for (int k = r; k < n; ++k) {
            colors.push_back(1 + static_cast<int>(rng() % 3));
            args.push_back(pick(labels[static_cast<std::size_t>(k)], static_cast<int>(rng() % 9)));
        }

        const Rational with_unit =
            vacuum_expectation(space, replica_word_operator(space, colors, args));

        std::vector<Color> dropped_colors = colors;
        ArgumentTuple dropped_args = args;
        dropped_colors.erase(dropped_colors.begin() + (r - 1));
        dropped_args.erase(dropped_args.begin() + (r - 1));
        CHECK(with_unit ==
              vacuum_expectation(space, replica_word_operator(space, dropped_colors, dropped_args)));

        // Any other color on the unit kills the moment.
        for (Color off = 1; off <= 3; ++off) {
            if (off == r) continue;
            std::vector<Color> shifted = colors;
            shifted[static_cast<std::size_t>(r - 1)] = off;
            CHECK(vacuum_expectation(space, replica_word_operator(space, shifted, args)) == 0);
        }
    }

    // Leading color-one unit replicas drop no matter what follows them.
    for (int round = 0; round < 8; ++round) {
        const int r = 1 + static_cast<int>(rng() % 2);
        const int extra = 1 + static_cast<int>(rng() % 2);
        const auto labels = random_labels(r + extra);
        std::vector<Color> colors;
        ArgumentTuple args;
        for (int k = 0; k < r; ++k) {
            colors.push_back(1);
            args.push_back(Element::unit(labels[static_cast<std::size_t>(k)]));
        }
        for (int k = r; k < r + extra; ++k) {
            colors.push_back(1 + static_cast<int>(rng() % 3));
            args.push_back(pick(labels[static_cast<std::size_t>(k)], static_cast<int>(rng() % 9)));
        }
        const Rational full = vacuum_expectation(space, replica_word_operator(space, colors, args));
        const std::vector<Color> tail_colors(colors.begin() + r, colors.end());
        const ArgumentTuple tail_args(args.begin() + r, args.end());
        CHECK(full ==
              vacuum_expectation(space, replica_word_operator(space, tail_colors, tail_args)));

        std::vector<Color> off = colors;
        off[0] = 2;
        CHECK(vacuum_expectation(space, replica_word_operator(space, off, args)) == 0);
    }

    // Mirror image: a unit continuing the descending suffix run drops.
    for (int round = 0; round < 8; ++round) {
        const int tail = 1 + static_cast<int>(rng() % 2);   // centered suffix length
        const int lead = 1 + static_cast<int>(rng() % 2);   // arbitrary prefix length
        const int n = lead + 1 + tail;
        const auto labels = random_labels(n);
        std::vector<Color> colors;
        ArgumentTuple args;
        for (int k = 0; k < lead; ++k) {
            colors.push_back(1 + static_cast<int>(rng() % 3));
            args.push_back(pick(labels[static_cast<std::size_t>(k)], static_cast<int>(rng() % 9)));
        }
        colors.push_back(tail + 1);
        args.push_back(Element::unit(labels[static_cast<std::size_t>(lead)]));
        for (int k = 0; k < tail; ++k) {
            colors.push_back(tail - k);
            args.push_back(centered_pick(labels[static_cast<std::size_t>(lead + 1 + k)]));
        }
        const Rational full = vacuum_expectation(space, replica_word_operator(space, colors, args));
        std::vector<Color> dropped_colors = colors;
        ArgumentTuple dropped_args = args;
        dropped_colors.erase(dropped_colors.begin() + lead);
        dropped_args.erase(dropped_args.begin() + lead);
        CHECK(full ==
              vacuum_expectation(space, replica_word_operator(space, dropped_colors, dropped_args)));
    }
}

TEST_CASE("orthogonality identities hold exactly") {
    const ReplicaSpace two({model_a(), model_b()}, 3);
    for (const auto& check : check_orthogonality(two, 99)) {
        CAPTURE(check.name);
        CHECK(check.max_violation == 0);
    }
    const ReplicaSpace three({model_a(), model_b(), model_c()}, 2);
    for (const auto& check : check_orthogonality(three, 7)) {
        CAPTURE(check.name);
        CHECK(check.max_violation == 0);
    }
    CHECK_THROWS_AS(check_orthogonality(ReplicaSpace({model_a()}, 3), 1), std::invalid_argument);
    CHECK_THROWS_AS(check_orthogonality(ReplicaSpace({model_a(), model_b()}, 1), 1),
                    std::invalid_argument);
}

TEST_CASE("independence realizations preserve the right marginals") {
    const ReplicaSpace space({model_a(), model_b()}, 3);
    const Element a = gen(1, 0), b = gen(2, 1);
    const int order = 5;

    const auto power_moment = [](const MatrixModel& m, const Element& e, int k) {
        Element p = e;
        for (int t = 1; t < k; ++t) p = p * e;
        return m.element_matrix(p)[0][0];
    };

    for (IndependenceKind kind : {IndependenceKind::free_product, IndependenceKind::s_free,
                                  IndependenceKind::orthogonal, IndependenceKind::monotone}) {
        const auto mm = independence_realization(space, kind, a, b, order);
        REQUIRE(mm.first_marginal.size() == order);
        for (int m = 1; m <= order; ++m) {
            CHECK(mm.first_marginal[static_cast<std::size_t>(m - 1)] ==
                  power_moment(model_a(), a, m));
            const bool second_preserved =
                kind == IndependenceKind::free_product || kind == IndependenceKind::monotone;
            CHECK(mm.second_marginal[static_cast<std::size_t>(m - 1)] ==
                  (second_preserved ? power_moment(model_b(), b, m) : Rational(0)));
        }
    }

    // Free pair: alternating mixed moments match the centering oracle.
    const MomentContext ctx({model_a().spec(8), model_b().spec(8)});
    const auto fr = independence_realization(space, IndependenceKind::free_product, a, b, order);
    for (int m = 1; m <= order; ++m) {
        ArgumentTuple tuple;
        for (int k = 0; k < m; ++k) tuple.push_back(k % 2 == 0 ? a : b);
        CHECK(fr.alternating[static_cast<std::size_t>(m - 1)] == free_product_oracle(ctx, tuple));
    }

    // Monotone pair: middle factors peel off as plain moments.
    const auto mo = independence_realization(space, IndependenceKind::monotone, a, b, order);
    for (int m = 1; m <= order; ++m) {
        const int first_count = (m + 1) / 2, second_count = m / 2;
        Rational strip = power_moment(model_a(), a, first_count);
        for (int k = 0; k < second_count; ++k) strip *= phi_of(model_b(), b);
        CHECK(mo.alternating[static_cast<std::size_t>(m - 1)] == strip);
    }

    CHECK_THROWS_AS(independence_realization(space, IndependenceKind::free_product, a, b, 6),
                    std::out_of_range);
    CHECK_THROWS_AS(independence_realization(space, IndependenceKind::free_product, a, b, 0),
                    std::invalid_argument);
}
