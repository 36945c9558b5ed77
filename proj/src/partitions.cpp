#include "motzkin/partitions.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace motzkin {

SetPartition::SetPartition(int n, std::vector<std::vector<int>> blocks)
    : n_(n), blocks_(std::move(blocks)) {
    if (n < 0) throw std::invalid_argument("partition of a negative set");
    block_of_.assign(n, -1);
    for (auto& block : blocks_) {
        if (block.empty()) throw std::invalid_argument("empty block");
        std::sort(block.begin(), block.end());
    }
    std::sort(blocks_.begin(), blocks_.end());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        for (int e : blocks_[b]) {
            if (e < 1 || e > n) throw std::invalid_argument("element out of range");
            if (block_of_[e - 1] != -1) throw std::invalid_argument("element repeated across blocks");
            block_of_[e - 1] = static_cast<int>(b);
        }
    }
    for (int e = 1; e <= n; ++e)
        if (block_of_[e - 1] == -1) throw std::invalid_argument("element missing from all blocks");
}

bool SetPartition::refines(const SetPartition& coarser) const {
    if (n_ != coarser.n_) return false;
    for (const auto& block : blocks_) {
        const int target = coarser.block_of(block.front());
        for (int e : block)
            if (coarser.block_of(e) != target) return false;
    }
    return true;
}

bool is_noncrossing(const SetPartition& p) {
    // Scan left to right with a stack of open blocks: revisiting a block is
    // only legal once every block opened above it has finished.
    std::vector<int> stack;
    std::vector<char> open(p.block_count(), 0);
    std::vector<int> last(p.block_count());
    for (std::size_t b = 0; b < p.block_count(); ++b) last[b] = p.blocks()[b].back();
    for (int e = 1; e <= p.n(); ++e) {
        while (!stack.empty() && last[stack.back()] < e) stack.pop_back();
        const int b = p.block_of(e);
        if (open[b]) {
            if (stack.empty() || stack.back() != b) return false;
        } else {
            open[b] = 1;
            stack.push_back(b);
        }
    }
    return true;
}

bool is_interval(const SetPartition& p) {
    for (const auto& block : p.blocks())
        if (block.back() - block.front() + 1 != static_cast<int>(block.size())) return false;
    return true;
}

NestingInfo nesting_info(const SetPartition& p) {
    if (!is_noncrossing(p)) throw std::invalid_argument("nesting is defined for noncrossing partitions");
    const std::size_t m = p.block_count();
    NestingInfo info{std::vector<int>(m, -1), std::vector<int>(m, 1)};
    // Blocks of a noncrossing partition have nested-or-disjoint extents, so
    // a stack over blocks ordered by minimum finds the nearest outer block.
    std::vector<int> order(m);
    for (std::size_t b = 0; b < m; ++b) order[b] = static_cast<int>(b);
    // Canonical form already sorts blocks by minimum.
    std::vector<int> stack;
    for (int b : order) {
        const int lo = p.blocks()[b].front();
        while (!stack.empty() && p.blocks()[stack.back()].back() < lo) stack.pop_back();
        if (!stack.empty()) {
            info.parent[b] = stack.back();
            info.depth[b] = info.depth[stack.back()] + 1;
        }
        stack.push_back(b);
    }
    return info;
}

bool is_irreducible(const SetPartition& p) {
    if (p.n() == 0 || !is_noncrossing(p)) return false;
    const auto info = nesting_info(p);
    return std::count(info.parent.begin(), info.parent.end(), -1) == 1;
}

namespace {

// Builds noncrossing partitions position by position. Each position either
// joins the block at some level of the open stack (discarding everything
// above it, which could only cross from then on) or opens a new block.
void grow(int pos, int n, std::vector<std::vector<int>>& open,
          std::vector<std::vector<int>>& closed, std::vector<SetPartition>& out) {
    if (pos > n) {
        std::vector<std::vector<int>> blocks = closed;
        blocks.insert(blocks.end(), open.begin(), open.end());
        out.emplace_back(n, std::move(blocks));
        return;
    }
    for (std::size_t level = 0; level < open.size(); ++level) {
        std::vector<std::vector<int>> removed(open.begin() + level + 1, open.end());
        open.resize(level + 1);
        closed.insert(closed.end(), removed.begin(), removed.end());
        open[level].push_back(pos);
        grow(pos + 1, n, open, closed, out);
        open[level].pop_back();
        closed.resize(closed.size() - removed.size());
        open.insert(open.end(), removed.begin(), removed.end());
    }
    open.push_back({pos});
    grow(pos + 1, n, open, closed, out);
    open.pop_back();
}

}  // namespace

std::vector<SetPartition> enumerate_nc(int n, NCVariant variant) {
    if (n < 0 || n > 14) throw std::invalid_argument("noncrossing enumeration supports n <= 14");
    std::vector<SetPartition> all;
    if (n == 0) {
        all.emplace_back(0, std::vector<std::vector<int>>{});
    } else {
        std::vector<std::vector<int>> open, closed;
        grow(1, n, open, closed, all);
    }
    if (variant == NCVariant::all) {
        std::sort(all.begin(), all.end());
        return all;
    }
    std::vector<SetPartition> kept;
    for (auto& p : all) {
        if (variant == NCVariant::irreducible ? is_irreducible(p) : is_interval(p))
            kept.push_back(std::move(p));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

Word depth_word(const SetPartition& p) {
    const auto info = nesting_info(p);
    std::vector<Color> colors(p.n());
    for (int e = 1; e <= p.n(); ++e) colors[e - 1] = info.depth[p.block_of(e)];
    return Word(std::move(colors));
}

Word word_of(const SetPartition& p) {
    if (!is_irreducible(p)) throw std::invalid_argument("word_of needs an irreducible partition");
    return depth_word(p);
}

std::string format_partition(const SetPartition& p) {
    std::string out = "[";
    for (std::size_t b = 0; b < p.block_count(); ++b) {
        if (b > 0) out += ',';
        out += '[';
        for (std::size_t k = 0; k < p.blocks()[b].size(); ++k) {
            if (k > 0) out += ',';
            out += std::to_string(p.blocks()[b][k]);
        }
        out += ']';
    }
    return out + "]";
}

SetPartition parse_partition(int n, const std::string& text) {
    std::vector<std::vector<int>> blocks;
    std::vector<int> current;
    int depth = 0;
    std::size_t pos = 0;
    auto fail = [&]() { throw std::invalid_argument("malformed partition: " + text); };
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == '[') {
            if (++depth > 2) fail();
            ++pos;
        } else if (c == ']') {
            if (depth == 2) blocks.push_back(current), current.clear();
            if (--depth < 0) fail();
            ++pos;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            if (depth != 2) fail();
            std::size_t end = pos;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
            current.push_back(std::stoi(text.substr(pos, end - pos)));
            pos = end;
        } else if (c == ',' || c == ' ') {
            ++pos;
        } else {
            fail();
        }
    }
    if (depth != 0) fail();
    return SetPartition(n, std::move(blocks));
}

}  // namespace motzkin
