#include "motzkin/adapted.hpp"

#include <algorithm>
#include <stdexcept>

namespace motzkin {

namespace {

ColoredPartition color_partition(const SetPartition& p, const Word& w, bool require_monotone) {
    if (p.n() != static_cast<int>(w.size()))
        throw std::invalid_argument("partition and word sizes differ");
    if (!is_noncrossing(p)) throw std::invalid_argument("partition is crossing");
    ColoredPartition cp;
    cp.partition = p;
    cp.word = w;
    cp.block_color.resize(p.block_count());
    for (std::size_t b = 0; b < p.block_count(); ++b) {
        const auto& block = p.blocks()[b];
        const Color c = w[block.front() - 1];
        for (int e : block)
            if (w[e - 1] != c)
                throw std::invalid_argument("block mixes colors, partition is not adapted");
        cp.block_color[b] = c;
    }
    const auto info = nesting_info(p);
    cp.block_parent = info.parent;
    cp.block_depth = info.depth;
    cp.monotone = true;
    for (std::size_t b = 0; b < p.block_count(); ++b)
        if (cp.block_color[b] != cp.block_depth[b]) cp.monotone = false;
    if (require_monotone && !cp.monotone)
        throw std::invalid_argument("block colors do not match nesting depths");
    return cp;
}

// The valley decomposition of a word: a valley at level j is a maximal run
// of letters of color >= j whose first and last letters have color exactly
// j. Its color-j letters carry the level-j blocks; a gap between two
// consecutive color-j letters that encloses a deeper valley must stay
// inside one block, every other gap may be cut freely.
struct Valley {
    Color level;
    std::vector<int> anchors;  // 1-based positions with color == level
    std::vector<char> forced;  // per gap: 1 when the gap encloses a deeper valley
};

void collect_valleys(const Word& w, int lo, int hi, Color level, std::vector<Valley>& out) {
    Valley v;
    v.level = level;
    for (int k = lo; k <= hi; ++k)
        if (w[k - 1] == level) v.anchors.push_back(k);
    v.forced.resize(v.anchors.empty() ? 0 : v.anchors.size() - 1);
    for (std::size_t g = 0; g + 1 < v.anchors.size(); ++g) {
        v.forced[g] = v.anchors[g + 1] > v.anchors[g] + 1;
        if (v.forced[g]) collect_valleys(w, v.anchors[g] + 1, v.anchors[g + 1] - 1, level + 1, out);
    }
    out.push_back(std::move(v));
}

std::vector<Valley> valleys_of(const Word& w) {
    std::vector<Valley> out;
    if (!w.empty()) collect_valleys(w, 1, static_cast<int>(w.size()), 1, out);
    return out;
}

// Turns one cut choice per valley into a partition. cuts[v] is a bitmask
// over the gaps of valley v; forced gaps must not be cut.
SetPartition assemble(const std::vector<Valley>& valleys, const std::vector<std::uint64_t>& cuts,
                      int n) {
    std::vector<std::vector<int>> blocks;
    for (std::size_t v = 0; v < valleys.size(); ++v) {
        std::vector<int> block{valleys[v].anchors.front()};
        for (std::size_t g = 0; g + 1 < valleys[v].anchors.size(); ++g) {
            if (cuts[v] >> g & 1) {
                blocks.push_back(std::move(block));
                block.clear();
            }
            block.push_back(valleys[v].anchors[g + 1]);
        }
        blocks.push_back(std::move(block));
    }
    return SetPartition(n, std::move(blocks));
}

}  // namespace

ColoredPartition adapt(const SetPartition& p, const Word& w) { return color_partition(p, w, true); }

ColoredPartition adapt_weak(const SetPartition& p, const Word& w) {
    return color_partition(p, w, false);
}

std::vector<ColoredPartition> enumerate_adapted(const Word& w, bool irreducible_only) {
    const auto valleys = valleys_of(w);
    const int n = static_cast<int>(w.size());
    std::vector<ColoredPartition> out;
    if (n == 0) return out;
    // Per valley, the free gaps can be cut independently; walk the full
    // cartesian product.
    std::vector<std::uint64_t> cuts(valleys.size(), 0);
    while (true) {
        out.push_back(adapt(assemble(valleys, cuts, n), w));
        std::size_t v = 0;
        for (; v < valleys.size(); ++v) {
            const auto& valley = valleys[v];
            const std::size_t gaps = valley.forced.size();
            bool carried = true;
            // Increment the cut mask, skipping forced gaps entirely.
            for (std::size_t g = 0; g < gaps && carried; ++g) {
                if (valley.forced[g]) continue;
                if (valley.level == 1 && irreducible_only) continue;
                if (cuts[v] >> g & 1) {
                    cuts[v] &= ~(std::uint64_t{1} << g);
                } else {
                    cuts[v] |= std::uint64_t{1} << g;
                    carried = false;
                }
            }
            if (!carried) break;
            cuts[v] = 0;
        }
        if (v == valleys.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ColoredPartition> enumerate_adapted_by_filter(const Word& w, bool irreducible_only) {
    std::vector<ColoredPartition> out;
    for (const auto& p : enumerate_nc(static_cast<int>(w.size()), NCVariant::all)) {
        if (irreducible_only && !is_irreducible(p)) continue;
        try {
            out.push_back(adapt(p, w));
        } catch (const std::invalid_argument&) {
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

BigInt adapted_count(const Word& w, bool irreducible_only) {
    BigInt total = 1;
    for (const auto& valley : valleys_of(w)) {
        if (irreducible_only && valley.level == 1) continue;
        for (char f : valley.forced)
            if (!f) total *= 2;
    }
    return w.empty() ? BigInt(0) : total;
}

ColoredPartition least_adapted(const Word& w) {
    const auto valleys = valleys_of(w);
    std::vector<std::uint64_t> cuts(valleys.size(), 0);
    for (std::size_t v = 0; v < valleys.size(); ++v)
        for (std::size_t g = 0; g < valleys[v].forced.size(); ++g)
            if (!valleys[v].forced[g]) cuts[v] |= std::uint64_t{1} << g;
    return adapt(assemble(valleys, cuts, static_cast<int>(w.size())), w);
}

ColoredPartition greatest_adapted(const Word& w) {
    const auto valleys = valleys_of(w);
    return adapt(assemble(valleys, std::vector<std::uint64_t>(valleys.size(), 0),
                          static_cast<int>(w.size())),
                 w);
}

ColoredPartition join_adapted(const ColoredPartition& a, const ColoredPartition& b) {
    if (a.word != b.word) throw std::invalid_argument("join of partitions over different words");
    const Word& w = a.word;
    const int n = static_cast<int>(w.size());
    // Color by color: consecutive same-color letters stay together exactly
    // when one of the operands keeps them together (interval join of the
    // one-color subpartitions).
    const Color max_color = *std::max_element(w.colors().begin(), w.colors().end());
    std::vector<std::vector<int>> blocks;
    for (Color c = 1; c <= max_color; ++c) {
        std::vector<int> positions;
        for (int k = 1; k <= n; ++k)
            if (w[k - 1] == c) positions.push_back(k);
        std::vector<int> block;
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if (i > 0) {
                const bool merged =
                    a.partition.block_of(positions[i]) == a.partition.block_of(positions[i - 1]) ||
                    b.partition.block_of(positions[i]) == b.partition.block_of(positions[i - 1]);
                if (!merged) {
                    blocks.push_back(std::move(block));
                    block.clear();
                }
            }
            block.push_back(positions[i]);
        }
        if (!block.empty()) blocks.push_back(std::move(block));
    }
    return adapt(SetPartition(n, std::move(blocks)), w);
}

bool labels_admissible(const ColoredPartition& p, const std::vector<int>& labels, ChainMode mode) {
    if (labels.size() != p.word.size())
        throw std::invalid_argument("label count differs from word length");
    for (const auto& block : p.partition.blocks()) {
        for (int e : block)
            if (labels[e - 1] != labels[block.front() - 1]) return false;
    }
    for (std::size_t b = 0; b < p.partition.block_count(); ++b) {
        const int parent = p.block_parent[b];
        if (parent < 0) continue;
        if (mode == ChainMode::monotone_chains && p.block_color[parent] >= p.block_color[b])
            continue;
        if (labels[p.partition.blocks()[b].front() - 1] ==
            labels[p.partition.blocks()[parent].front() - 1])
            return false;
    }
    return true;
}

std::vector<ColoredPartition> filter_by_label(const std::vector<ColoredPartition>& ps,
                                              const std::vector<int>& labels, ChainMode mode) {
    std::vector<ColoredPartition> out;
    for (const auto& p : ps)
        if (labels_admissible(p, labels, mode)) out.push_back(p);
    return out;
}

bool nc_labels_admissible(const SetPartition& p, const std::vector<int>& labels) {
    if (labels.size() != static_cast<std::size_t>(p.n()))
        throw std::invalid_argument("label count differs from ground-set size");
    for (const auto& block : p.blocks())
        for (int e : block)
            if (labels[e - 1] != labels[block.front() - 1]) return false;
    const auto info = nesting_info(p);
    for (std::size_t b = 0; b < p.block_count(); ++b) {
        if (info.parent[b] < 0) continue;
        if (labels[p.blocks()[b].front() - 1] == labels[p.blocks()[info.parent[b]].front() - 1])
            return false;
    }
    return true;
}

BigInt count_labelings(const ColoredPartition& p, int num_labels) {
    if (num_labels < 1) throw std::invalid_argument("need at least one label");
    // The constraint graph is a forest: each block is tied to at most its
    // nearest outer block, and only along color-increasing links.
    BigInt total = 1;
    for (std::size_t b = 0; b < p.partition.block_count(); ++b) {
        const int parent = p.block_parent[b];
        const bool constrained = parent >= 0 && p.block_color[parent] < p.block_color[b];
        total *= constrained ? num_labels - 1 : num_labels;
    }
    return total;
}

std::vector<CatalanRow> catalan_rows(int n) {
    if (n < 1 || n > 10) throw std::invalid_argument("catalan table supports 1 <= n <= 10");
    std::vector<CatalanRow> rows;
    for (const auto& w : enumerate_reduced(n + 1))
        rows.push_back({w, adapted_count(w, true)});
    return rows;
}

BigInt catalan_number(int n) {
    BigInt c = 1;
    for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

}  // namespace motzkin
