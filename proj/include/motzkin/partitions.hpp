#pragma once

#include <string>
#include <vector>

#include "motzkin/words.hpp"

namespace motzkin {

// A partition of {1,...,n} in canonical form: blocks ordered by their
// minima, elements ascending within each block.
class SetPartition {
  public:
    SetPartition() = default;
    SetPartition(int n, std::vector<std::vector<int>> blocks);  // validates and canonicalizes

    int n() const { return n_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    int block_of(int element) const { return block_of_[element - 1]; }

    bool operator==(const SetPartition&) const = default;
    bool operator<(const SetPartition& other) const { return blocks_ < other.blocks_; }

    // True when every block of this partition is contained in a block of
    // coarser; defines the refinement order used throughout.
    bool refines(const SetPartition& coarser) const;

  private:
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_;
};

bool is_noncrossing(const SetPartition& p);
bool is_interval(const SetPartition& p);  // every block is a set of consecutive integers

// Nesting structure of a noncrossing partition: for each block, the index
// of its nearest outer block (-1 for covering blocks) and its depth
// (covering blocks have depth 1). Depths restart inside each irreducible
// component, which is what the nearest-outer chain gives automatically.
struct NestingInfo {
    std::vector<int> parent;
    std::vector<int> depth;
};
NestingInfo nesting_info(const SetPartition& p);  // requires noncrossing

// Exactly one covering block (which then necessarily contains 1 and n).
bool is_irreducible(const SetPartition& p);

enum class NCVariant { all, irreducible, interval };
std::vector<SetPartition> enumerate_nc(int n, NCVariant variant = NCVariant::all);

// The color sequence of block depths. For a noncrossing partition this is
// always a reduced Motzkin word (per irreducible component the depths climb
// and fall by unit steps); word_of additionally insists on irreducibility.
Word depth_word(const SetPartition& p);
Word word_of(const SetPartition& p);  // throws std::invalid_argument if reducible

std::string format_partition(const SetPartition& p);
SetPartition parse_partition(int n, const std::string& text);  // "[[1,3],[2]]"

}  // namespace motzkin
