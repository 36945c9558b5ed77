#pragma once

#include <vector>

#include "motzkin/partitions.hpp"
#include "motzkin/words.hpp"

namespace motzkin {

// A noncrossing partition together with a word it is adapted to: every
// block sits on letters of one color. When additionally each block's color
// equals its nesting depth the partition is monotonically adapted; those
// are the partitions the moment engines sum over.
struct ColoredPartition {
    SetPartition partition;
    Word word;
    std::vector<Color> block_color;
    std::vector<int> block_parent;
    std::vector<int> block_depth;
    bool monotone = false;  // color == depth for every block

    bool operator==(const ColoredPartition& other) const {
        return partition == other.partition && word == other.word;
    }
    bool operator<(const ColoredPartition& other) const { return partition < other.partition; }
};

// Strict form: requires noncrossing, constant colors per block, and
// color == depth. Throws std::invalid_argument otherwise.
ColoredPartition adapt(const SetPartition& p, const Word& w);

// Weak form: only noncrossing plus constant colors per block. Needed for
// partitions that are adapted to a word without being monotonically
// adapted (their chain structure differs, which changes label filtering).
ColoredPartition adapt_weak(const SetPartition& p, const Word& w);

// All monotonically adapted partitions of w, canonically ordered. The
// direct construction walks the valley structure of the path level by
// level; the filter variant sieves the full noncrossing enumeration and
// exists as an independent cross-check.
std::vector<ColoredPartition> enumerate_adapted(const Word& w, bool irreducible_only = false);
std::vector<ColoredPartition> enumerate_adapted_by_filter(const Word& w, bool irreducible_only = false);

// Closed-form sizes of the two families above (products of powers of two
// determined by the valley structure; no enumeration).
BigInt adapted_count(const Word& w, bool irreducible_only = false);

// Least and greatest elements of the adapted lattice in refinement order.
ColoredPartition least_adapted(const Word& w);
ColoredPartition greatest_adapted(const Word& w);

// Join in the adapted lattice: compiled color by color as the interval
// join of the one-color subpartitions. Both arguments must share a word.
ColoredPartition join_adapted(const ColoredPartition& a, const ColoredPartition& b);

// Label filtering. Labels are per-position algebra identifiers. A
// partition admits a labeling when labels are constant on blocks and
// differ across the required nearest-outer chain links: either only the
// links whose colors strictly increase (monotone chains) or all of them.
enum class ChainMode { monotone_chains, all_chains };

bool labels_admissible(const ColoredPartition& p, const std::vector<int>& labels, ChainMode mode);
std::vector<ColoredPartition> filter_by_label(const std::vector<ColoredPartition>& ps,
                                              const std::vector<int>& labels, ChainMode mode);

// Same test for a bare noncrossing partition, where every nearest-outer
// link must alternate.
bool nc_labels_admissible(const SetPartition& p, const std::vector<int>& labels);

// Number of labelings with values in {1,...,num_labels} the partition
// admits under the monotone-chain rule.
BigInt count_labelings(const ColoredPartition& p, int num_labels);

// One row per word of length n+1: the word and the number of irreducible
// adapted partitions it carries. The counts total the n-th Catalan number.
struct CatalanRow {
    Word word;
    BigInt irreducible_count;
};
std::vector<CatalanRow> catalan_rows(int n);
BigInt catalan_number(int n);

}  // namespace motzkin
