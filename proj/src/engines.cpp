#include "motzkin/engines.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace motzkin {

MomentContext::MomentContext(std::vector<AlgebraSpec> specs) {
    for (auto& spec : specs) {
        const int label = spec.label();
        if (!specs_.emplace(label, std::move(spec)).second)
            throw std::invalid_argument("duplicate algebra label " + std::to_string(label));
    }
}

const AlgebraSpec& MomentContext::algebra(int label) const {
    const auto it = specs_.find(label);
    if (it == specs_.end()) throw std::out_of_range("no algebra with label " + std::to_string(label));
    return it->second;
}

std::vector<int> labels_of(const ArgumentTuple& args) {
    std::vector<int> out(args.size());
    for (std::size_t k = 0; k < args.size(); ++k) out[k] = args[k].label();
    return out;
}

NormalizedQuery normalize_word(const std::vector<Color>& colors, const ArgumentTuple& args) {
    if (colors.size() != args.size())
        throw std::invalid_argument("word length and argument count differ");
    NormalizedQuery out;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (!out.args.empty() && out.args.back().label() == args[k].label()) {
            if (out.colors.back() != colors[k]) {
                // Same algebra, different colors: the functional is zero.
                out.zero = true;
                out.colors.clear();
                out.args.clear();
                return out;
            }
            out.args.back() = out.args.back() * args[k];
        } else {
            out.colors.push_back(colors[k]);
            out.args.push_back(args[k]);
        }
    }
    return out;
}

namespace {

Rational phi_of(const MomentContext& ctx, const Element& a) {
    return moment(ctx.algebra(a.label()), a);
}

Rational eval(const MomentContext& ctx, const std::vector<Color>& colors, const ArgumentTuple& args,
              Engine engine);

// Adapted-partition sum: phi(w) = sum over monotonically adapted
// partitions whose blocks respect the labels and alternate across
// color-increasing nearest-outer links, of per-block boolean cumulants.
Rational by_partition_sum(const MomentContext& ctx, const Word& w, const ArgumentTuple& args) {
    Rational total = 0;
    const auto labels = labels_of(args);
    for (const auto& cp : enumerate_adapted(w)) {
        if (!labels_admissible(cp, labels, ChainMode::monotone_chains)) continue;
        total += beta_product(ctx, cp, args);
    }
    return total;
}

// Singleton recursion: peel off sets A of positions whose moments factor
// out, admissible when the colors at positions 1..max(A) read 1,2,...,
// max(A); the complement keeps its colors and recurses.
Rational by_singleton_recursion(const MomentContext& ctx, const Word& w,
                                const ArgumentTuple& args) {
    const int n = static_cast<int>(w.size());
    if (n == 0) return 1;
    // Longest staircase prefix 1,2,...,p.
    int p = 0;
    while (p < n && w[p] == p + 1) ++p;
    Rational total = 0;
    for (int top = 1; top <= p; ++top) {
        // A = {top} together with any subset of {1,...,top-1}.
        for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (top - 1)); ++rest) {
            Rational factor = phi_of(ctx, args[top - 1]);
            int size_a = 1;
            std::vector<char> in_a(n, 0);
            in_a[top - 1] = 1;
            for (int k = 0; k < top - 1; ++k) {
                if (rest >> k & 1) {
                    in_a[k] = 1;
                    ++size_a;
                    factor *= phi_of(ctx, args[k]);
                }
            }
            if (factor == 0) continue;
            std::vector<Color> rest_colors;
            ArgumentTuple rest_args;
            for (int k = 0; k < n; ++k) {
                if (in_a[k]) continue;
                rest_colors.push_back(w[k]);
                rest_args.push_back(args[k]);
            }
            const Rational sign = (size_a % 2 == 1) ? 1 : -1;
            total += sign * factor *
                     eval(ctx, rest_colors, rest_args, Engine::singleton_recursion);
        }
    }
    return total;
}

// First-return recursion: w = s_1 w1 w2 with w1 the height-2 piece before
// the first return. The shifted middle evaluates on its own; the head
// letter either reconnects with the tail across the valley or factors out.
// `forbidden` carries the label an enclosing head block already uses:
// depth-1 blocks of the current word must avoid it, and the depth-1 blocks
// of the shifted middle must in turn avoid the current head's label.
Rational eval_first_return(const MomentContext& ctx, const std::vector<Color>& colors,
                           const ArgumentTuple& args, std::optional<int> forbidden);

Rational by_first_return(const MomentContext& ctx, const Word& w, const ArgumentTuple& args,
                         std::optional<int> forbidden) {
    const int n = static_cast<int>(w.size());
    const int head_label = args[0].label();
    if (forbidden && *forbidden == head_label) return 0;
    if (n == 1) return phi_of(ctx, args[0]);
    if (w[1] == 1) {
        // Level start: the head block is a singleton and its moment
        // factors out; the tail keeps the enclosing constraint.
        const std::vector<Color> tail_colors(w.colors().begin() + 1, w.colors().end());
        const ArgumentTuple tail_args(args.begin() + 1, args.end());
        return phi_of(ctx, args[0]) * eval_first_return(ctx, tail_colors, tail_args, forbidden);
    }
    const auto split = first_return_split(w);
    const std::size_t k = split.w1.size();
    const Word middle = shift_down(split.w1);
    const ArgumentTuple middle_args(args.begin() + 1, args.begin() + 1 + k);
    const ArgumentTuple tail_args(args.begin() + 1 + k, args.end());
    std::vector<Color> bridged_colors{1};
    bridged_colors.insert(bridged_colors.end(), split.w2.colors().begin(), split.w2.colors().end());
    ArgumentTuple bridged_args{args[0]};
    bridged_args.insert(bridged_args.end(), tail_args.begin(), tail_args.end());
    const Rational middle_value =
        eval_first_return(ctx, middle.colors(), middle_args, head_label);
    if (middle_value == 0) return 0;
    return middle_value * (eval_first_return(ctx, bridged_colors, bridged_args, forbidden) -
                           phi_of(ctx, args[0]) *
                               eval_first_return(ctx, split.w2.colors(), tail_args, forbidden));
}

Rational eval_first_return(const MomentContext& ctx, const std::vector<Color>& colors,
                           const ArgumentTuple& args, std::optional<int> forbidden) {
    const auto q = normalize_word(colors, args);
    if (q.zero) return 0;
    if (q.colors.empty()) return 1;
    if (validate_colors(q.colors).kind != WordKind::reduced) return 0;
    return by_first_return(ctx, Word(q.colors), q.args, forbidden);
}

Rational eval(const MomentContext& ctx, const std::vector<Color>& colors, const ArgumentTuple& args,
              Engine engine) {
    const auto q = normalize_word(colors, args);
    if (q.zero) return 0;
    if (q.colors.empty()) return 1;
    const auto v = validate_colors(q.colors);
    if (v.kind != WordKind::reduced) return 0;
    const Word w(q.colors);
    switch (engine) {
        case Engine::partition_sum: return by_partition_sum(ctx, w, q.args);
        case Engine::singleton_recursion: return by_singleton_recursion(ctx, w, q.args);
        case Engine::first_return: return by_first_return(ctx, w, q.args, std::nullopt);
    }
    throw std::logic_error("unknown engine");
}

}  // namespace

Rational psi(const MomentContext& ctx, const std::vector<Color>& colors, const ArgumentTuple& args,
             Engine engine) {
    return eval(ctx, colors, args, engine);
}

Rational phi_word(const MomentContext& ctx, const Word& w, const ArgumentTuple& args,
                  Engine engine) {
    if (w.size() != args.size())
        throw std::invalid_argument("the multilinear form needs one argument per letter");
    return eval(ctx, w.colors(), args, engine);
}

Rational beta_product(const MomentContext& ctx, const ColoredPartition& p,
                      const ArgumentTuple& args) {
    if (args.size() != p.word.size())
        throw std::invalid_argument("argument count differs from the partition's ground set");
    Rational total = 1;
    for (const auto& block : p.partition.blocks()) {
        std::vector<Element> tuple;
        for (int e : block) {
            if (args[e - 1].label() != args[block.front() - 1].label())
                throw std::invalid_argument("a block joins arguments of different algebras");
            tuple.push_back(args[e - 1]);
        }
        total *= boolean_cumulant(ctx.algebra(tuple.front().label()), tuple);
        if (total == 0) return 0;
    }
    return total;
}

Rational psi_series(const MomentContext& ctx, const SeriesCoefficients& gamma,
                    const ArgumentTuple& args, Engine engine) {
    Rational total = 0;
    for (const auto& [word, coeff] : gamma) {
        if (word.size() != args.size() || coeff == 0) continue;
        total += coeff * eval(ctx, word.colors(), args, engine);
    }
    return total;
}

namespace {

// Unit identification: scalar multiples of a unit leave the product as
// plain factors; what remains merges across equal neighboring labels.
struct ReducedTuple {
    Rational scalar = 1;
    ArgumentTuple args;
};

ReducedTuple identify_units(const ArgumentTuple& args) {
    ReducedTuple out;
    for (const auto& a : args) {
        Rational c;
        if (a.is_scalar(&c)) {
            out.scalar *= c;
            if (out.scalar == 0) return out;
            continue;
        }
        if (!out.args.empty() && out.args.back().label() == a.label())
            out.args.back() = out.args.back() * a;
        else
            out.args.push_back(a);
    }
    return out;
}

}  // namespace

Rational free_product_moment(const MomentContext& ctx, const ArgumentTuple& args, Engine engine) {
    const auto reduced = identify_units(args);
    if (reduced.scalar == 0) return 0;
    const int n = static_cast<int>(reduced.args.size());
    if (n == 0) return reduced.scalar;
    Rational total = 0;
    for (const auto& w : enumerate_reduced(n))
        total += eval(ctx, w.colors(), reduced.args, engine);
    return reduced.scalar * total;
}

Rational boolean_product_moment(const MomentContext& ctx, const ArgumentTuple& args) {
    // Unlike the free product, the boolean product does not identify the
    // internal units with a global one, so factors only merge along runs
    // of equal labels and a unit of another algebra keeps its neighbors
    // apart.
    ArgumentTuple merged;
    for (const auto& a : args) {
        if (!merged.empty() && merged.back().label() == a.label())
            merged.back() = merged.back() * a;
        else
            merged.push_back(a);
    }
    Rational total = 1;
    for (const auto& a : merged) {
        total *= phi_of(ctx, a);
        if (total == 0) return 0;
    }
    return total;
}

Rational free_product_oracle(const MomentContext& ctx, const ArgumentTuple& args) {
    const auto reduced = identify_units(args);
    if (reduced.scalar == 0) return 0;
    // Centering recursion straight from the freeness axiom: alternating
    // products of centered elements have moment zero; peel the first
    // uncentered factor into its centered part plus its mean.
    std::function<Rational(const ArgumentTuple&)> rec = [&](const ArgumentTuple& tuple) -> Rational {
        if (tuple.empty()) return 1;
        if (tuple.size() == 1) return phi_of(ctx, tuple[0]);
        for (std::size_t k = 0; k < tuple.size(); ++k) {
            const Rational mean = phi_of(ctx, tuple[k]);
            if (mean == 0) continue;
            ArgumentTuple centered = tuple;
            centered[k] = tuple[k].centered(ctx.algebra(tuple[k].label()));
            ArgumentTuple dropped;
            for (std::size_t j = 0; j < tuple.size(); ++j) {
                if (j == k) continue;
                if (!dropped.empty() && dropped.back().label() == tuple[j].label())
                    dropped.back() = dropped.back() * tuple[j];
                else
                    dropped.push_back(tuple[j]);
            }
            return rec(centered) + mean * rec(dropped);
        }
        return 0;  // every factor centered, labels alternate
    };
    return reduced.scalar * rec(reduced.args);
}

Rational word_cumulant(const MomentContext& ctx, const Word& w, const ArgumentTuple& args) {
    if (w.size() != args.size())
        throw std::invalid_argument("the word cumulant needs one argument per letter");
    const auto labels = labels_of(args);
    Rational total = 0;
    for (const auto& cp : enumerate_adapted(w, true)) {
        if (!labels_admissible(cp, labels, ChainMode::monotone_chains)) continue;
        total += beta_product(ctx, cp, args);
    }
    return total;
}

Rational interval_cumulant(int n, const std::function<Rational(int, int)>& submoment) {
    if (n < 1) throw std::invalid_argument("cumulant of an empty range");
    // cum[i][j] over 1-based inclusive ranges, by first-block splitting.
    std::vector<std::vector<Rational>> cum(n + 1, std::vector<Rational>(n + 1, 0));
    for (int len = 1; len <= n; ++len) {
        for (int i = 1; i + len - 1 <= n; ++i) {
            const int j = i + len - 1;
            Rational value = submoment(i, j);
            for (int split = i; split < j; ++split)
                value -= cum[i][split] * submoment(split + 1, j);
            cum[i][j] = value;
        }
    }
    return cum[1][n];
}

Rational word_cumulant_by_inversion(const MomentContext& ctx, const Word& w,
                                    const ArgumentTuple& args, Engine engine) {
    if (w.size() != args.size())
        throw std::invalid_argument("the word cumulant needs one argument per letter");
    const int n = static_cast<int>(w.size());
    // Splittings into reduced segments exist only at returns to color 1;
    // recurse on B(prefix) phi(rest) over admissible first blocks.
    std::map<std::pair<int, int>, Rational> phi_cache, cum_cache;
    std::function<Rational(int, int)> phi_range = [&](int i, int j) {
        const auto key = std::make_pair(i, j);
        if (const auto it = phi_cache.find(key); it != phi_cache.end()) return it->second;
        const std::vector<Color> colors(w.colors().begin() + i - 1, w.colors().begin() + j);
        const ArgumentTuple tuple(args.begin() + i - 1, args.begin() + j);
        return phi_cache[key] = eval(ctx, colors, tuple, engine);
    };
    std::function<Rational(int, int)> cum_range = [&](int i, int j) -> Rational {
        const auto key = std::make_pair(i, j);
        if (const auto it = cum_cache.find(key); it != cum_cache.end()) return it->second;
        Rational value = phi_range(i, j);
        for (int split = i; split < j; ++split) {
            // Both sides must be reduced segments.
            if (w[split - 1] != 1 || w[split] != 1) continue;
            value -= cum_range(i, split) * phi_range(split + 1, j);
        }
        return cum_cache[key] = value;
    };
    return cum_range(1, n);
}

Rational nc_label_sum(const MomentContext& ctx, const ArgumentTuple& args, bool irreducible_only) {
    const auto reduced = identify_units(args);
    if (reduced.scalar == 0) return 0;
    const int n = static_cast<int>(reduced.args.size());
    if (n == 0) return reduced.scalar;
    const auto labels = labels_of(reduced.args);
    Rational total = 0;
    for (const auto& p : enumerate_nc(n, irreducible_only ? NCVariant::irreducible : NCVariant::all)) {
        if (!nc_labels_admissible(p, labels)) continue;
        Rational term = 1;
        for (const auto& block : p.blocks()) {
            std::vector<Element> tuple;
            for (int e : block) tuple.push_back(reduced.args[e - 1]);
            term *= boolean_cumulant(ctx.algebra(tuple.front().label()), tuple);
            if (term == 0) break;
        }
        total += term;
    }
    return reduced.scalar * total;
}

Rational free_boolean_cumulant(const MomentContext& ctx, const ArgumentTuple& args) {
    const auto reduced = identify_units(args);
    const int n = static_cast<int>(reduced.args.size());
    if (n == 0) return reduced.scalar;
    return reduced.scalar * interval_cumulant(n, [&](int i, int j) {
               const ArgumentTuple tuple(reduced.args.begin() + i - 1, reduced.args.begin() + j);
               return free_product_oracle(ctx, tuple);
           });
}

}  // namespace motzkin
