#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace motzkin {

using Color = int;
using BigInt = boost::multiprecision::cpp_int;

// Hard limit on word length; everything downstream assumes it.
inline constexpr std::size_t kMaxWordLength = 64;

// Classification of a color sequence. A reduced word starts and ends at
// color 1 and never goes below it; a general word starts and ends at some
// height h >= 1 and never goes below h. Consecutive colors differ by at
// most 1 (level steps are allowed). The empty sequence is its own case:
// it is the unit of concatenation and acts as the identity functional.
enum class WordKind { empty, reduced, general, invalid };

struct WordValidation {
    WordKind kind = WordKind::invalid;
    Color height = 0;       // meaningful for reduced (1) and general words
    std::string reason;     // filled in when kind == invalid
};

WordValidation validate_colors(const std::vector<Color>& colors);

// A validated Motzkin word. Reduced words have height 1; the empty word is
// allowed as a distinguished value (height 0) so that sets like M* = M u {0}
// can be represented directly.
class Word {
  public:
    Word() = default;                          // the empty word
    explicit Word(std::vector<Color> colors);  // throws std::invalid_argument unless reduced or empty

    // Accepts any valid word (reduced or general); used for path segments
    // such as the first-return middle piece.
    static Word general(std::vector<Color> colors);

    const std::vector<Color>& colors() const { return colors_; }
    std::size_t size() const { return colors_.size(); }
    bool empty() const { return colors_.empty(); }
    Color height() const;                      // first color; 0 for the empty word
    bool is_reduced() const { return !colors_.empty() && colors_.front() == 1; }
    bool is_constant() const;                  // s_h^n, n >= 1

    Color operator[](std::size_t k) const { return colors_[k]; }
    bool operator==(const Word&) const = default;
    // Total order used only for canonical storage (length, then lexicographic).
    std::strong_ordering operator<=>(const Word& other) const;

  private:
    std::vector<Color> colors_;
};

// Pointwise partial order on words of equal length.
enum class WordOrder { less, equal, greater, incomparable };
WordOrder compare(const Word& u, const Word& v);

// Pointwise max/min; both stay inside M_n, which makes M_n a lattice.
Word lattice_join(const Word& u, const Word& v);
Word lattice_meet(const Word& u, const Word& v);

// All reduced words of length n in ascending lexicographic order.
std::vector<Word> enumerate_reduced(int n);

// |M_n| via the first-return recursion M_n = M_{n-1} + sum M_k M_{n-k-1};
// no enumeration involved. motzkin_number(0) = 1 counts the empty word.
BigInt motzkin_number(int n);

// Splits w = s_1 . w1 . w2 at the first return to color 1: w1 is the
// (possibly empty) segment strictly between position 1 and the first
// return, a general word of height 2; w2 is the reduced word starting at
// the first return. Requires |w| >= 2.
struct FirstReturnSplit {
    Word w1;  // general, height 2, possibly empty
    Word w2;  // reduced, nonempty
};
FirstReturnSplit first_return_split(const Word& w);

// Maps s_j -> s_{j-1}; requires height >= 2.
Word shift_down(const Word& w);

// s_1^n.
Word constant_word(int n);

// Greatest element of M_n in the pointwise order: colors rise 1,2,...,k
// and fall back, with the peak doubled when n is even.
Word top_word(int n);

// Text form "s1.s2.s1". parse_word throws std::invalid_argument on
// malformed input or invalid words (empty string means the empty word).
std::string format_word(const Word& w);
Word parse_word(const std::string& text);

}  // namespace motzkin
