#include "motzkin/words.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace motzkin {

WordValidation validate_colors(const std::vector<Color>& colors) {
    WordValidation v;
    if (colors.empty()) {
        v.kind = WordKind::empty;
        return v;
    }
    if (colors.size() > kMaxWordLength) {
        v.reason = "word longer than the supported maximum of 64 letters";
        return v;
    }
    const Color h = colors.front();
    if (h < 1) {
        v.reason = "colors must be positive";
        return v;
    }
    if (colors.back() != h) {
        v.reason = "first and last colors differ";
        return v;
    }
    for (std::size_t k = 0; k < colors.size(); ++k) {
        if (colors[k] < h) {
            v.reason = "color drops below the starting height";
            return v;
        }
        if (k > 0 && std::abs(colors[k] - colors[k - 1]) > 1) {
            v.reason = "consecutive colors differ by more than 1";
            return v;
        }
    }
    v.kind = (h == 1) ? WordKind::reduced : WordKind::general;
    v.height = h;
    return v;
}

Word::Word(std::vector<Color> colors) : colors_(std::move(colors)) {
    const WordValidation v = validate_colors(colors_);
    if (v.kind != WordKind::reduced && v.kind != WordKind::empty) {
        throw std::invalid_argument("not a reduced Motzkin word: " +
                                    (v.reason.empty() ? "height exceeds 1" : v.reason));
    }
}

Word Word::general(std::vector<Color> colors) {
    const WordValidation v = validate_colors(colors);
    if (v.kind == WordKind::invalid) throw std::invalid_argument("not a Motzkin word: " + v.reason);
    Word w;
    w.colors_ = std::move(colors);
    return w;
}

Color Word::height() const { return colors_.empty() ? 0 : colors_.front(); }

bool Word::is_constant() const {
    if (colors_.empty()) return false;
    return std::all_of(colors_.begin(), colors_.end(),
                       [&](Color c) { return c == colors_.front(); });
}

std::strong_ordering Word::operator<=>(const Word& other) const {
    if (colors_.size() != other.colors_.size())
        return colors_.size() <=> other.colors_.size();
    return colors_ <=> other.colors_;
}

WordOrder compare(const Word& u, const Word& v) {
    if (u.size() != v.size()) return WordOrder::incomparable;
    bool le = true, ge = true;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] > v[k]) le = false;
        if (u[k] < v[k]) ge = false;
    }
    if (le && ge) return WordOrder::equal;
    if (le) return WordOrder::less;
    if (ge) return WordOrder::greater;
    return WordOrder::incomparable;
}

Word lattice_join(const Word& u, const Word& v) {
    if (u.size() != v.size()) throw std::invalid_argument("join of words of different length");
    std::vector<Color> out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = std::max(u[k], v[k]);
    return Word(std::move(out));
}

Word lattice_meet(const Word& u, const Word& v) {
    if (u.size() != v.size()) throw std::invalid_argument("meet of words of different length");
    std::vector<Color> out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = std::min(u[k], v[k]);
    return Word(std::move(out));
}

namespace {

void extend(std::vector<Color>& prefix, int n, std::vector<Word>& out) {
    const int k = static_cast<int>(prefix.size());
    if (k == n) {
        if (prefix.back() == 1) out.push_back(Word(prefix));
        return;
    }
    const Color c = prefix.back();
    // Must be able to come back down to 1 in the remaining n-k steps.
    for (Color next = std::max(1, c - 1); next <= c + 1; ++next) {
        if (next - 1 > n - k - 1) continue;
        prefix.push_back(next);
        extend(prefix, n, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Word> enumerate_reduced(int n) {
    if (n < 0 || static_cast<std::size_t>(n) > kMaxWordLength)
        throw std::invalid_argument("word length out of range");
    std::vector<Word> out;
    if (n == 0) return out;
    std::vector<Color> prefix{1};
    extend(prefix, n, out);
    return out;
}

BigInt motzkin_number(int n) {
    if (n < 0) throw std::invalid_argument("negative length");
    static std::map<int, BigInt> cache{{0, 1}, {1, 1}};
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // First-return split: a level start contributes M_{n-1}; a rise to
    // height 2 returning after k inner letters contributes M_k M_{n-k-1}.
    BigInt total = motzkin_number(n - 1);
    for (int k = 1; k <= n - 2; ++k) total += motzkin_number(k) * motzkin_number(n - k - 1);
    cache[n] = total;
    return total;
}

FirstReturnSplit first_return_split(const Word& w) {
    if (!w.is_reduced() || w.size() < 2)
        throw std::invalid_argument("first-return split needs a reduced word of length >= 2");
    std::size_t r = 1;
    while (w[r] != 1) ++r;  // exists: reduced words end at color 1
    const auto& c = w.colors();
    FirstReturnSplit split;
    split.w1 = Word::general(std::vector<Color>(c.begin() + 1, c.begin() + r));
    split.w2 = Word(std::vector<Color>(c.begin() + r, c.end()));
    return split;
}

Word shift_down(const Word& w) {
    if (w.empty()) return w;
    if (w.height() < 2) throw std::invalid_argument("cannot shift a height-1 word down");
    std::vector<Color> out = w.colors();
    for (Color& c : out) --c;
    return Word::general(std::move(out));
}

Word constant_word(int n) {
    if (n < 1 || static_cast<std::size_t>(n) > kMaxWordLength)
        throw std::invalid_argument("word length out of range");
    return Word(std::vector<Color>(n, 1));
}

Word top_word(int n) {
    if (n < 1 || static_cast<std::size_t>(n) > kMaxWordLength)
        throw std::invalid_argument("word length out of range");
    std::vector<Color> out(n);
    for (int k = 0; k < n; ++k) out[k] = 1 + std::min(k, n - 1 - k);
    return Word(std::move(out));
}

std::string format_word(const Word& w) {
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k > 0) out += '.';
        out += 's' + std::to_string(w[k]);
    }
    return out;
}

Word parse_word(const std::string& text) {
    std::vector<Color> colors;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != 's') throw std::invalid_argument("expected 's' in word: " + text);
        ++pos;
        std::size_t end = pos;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        if (end == pos) throw std::invalid_argument("expected a color after 's' in: " + text);
        colors.push_back(std::stoi(text.substr(pos, end - pos)));
        pos = end;
        if (pos < text.size()) {
            if (text[pos] != '.') throw std::invalid_argument("expected '.' between letters in: " + text);
            ++pos;
            if (pos == text.size()) throw std::invalid_argument("trailing '.' in word: " + text);
        }
    }
    return Word(std::move(colors));
}

}  // namespace motzkin
