#pragma once

#include <functional>
#include <map>
#include <optional>

#include "motzkin/adapted.hpp"
#include "motzkin/algebra.hpp"

namespace motzkin {

// The collection of algebras a computation draws from, keyed by label.
class MomentContext {
  public:
    MomentContext() = default;
    explicit MomentContext(std::vector<AlgebraSpec> specs);
    const AlgebraSpec& algebra(int label) const;  // throws std::out_of_range
    const std::map<int, AlgebraSpec>& algebras() const { return specs_; }

  private:
    std::map<int, AlgebraSpec> specs_;
};

// One argument slot: an element of the algebra its label names.
using ArgumentTuple = std::vector<Element>;

enum class Engine { partition_sum, singleton_recursion, first_return };

// Joint normalization of a color sequence and an argument tuple: adjacent
// arguments of equal label merge into their product when their colors
// agree; if the colors differ the whole functional vanishes (zero flag).
struct NormalizedQuery {
    std::vector<Color> colors;
    ArgumentTuple args;
    bool zero = false;
};
NormalizedQuery normalize_word(const std::vector<Color>& colors, const ArgumentTuple& args);

// The path functional evaluated on a product of elements. The color
// sequence need not be a valid word: after normalization anything that is
// not a reduced Motzkin word compatible with the labels gives 0. The
// default engine is the adapted-partition sum; the two recursions are
// independent routes to the same value.
Rational psi(const MomentContext& ctx, const std::vector<Color>& colors, const ArgumentTuple& args,
             Engine engine = Engine::partition_sum);

// The multilinear form: |args| must equal |w|.
Rational phi_word(const MomentContext& ctx, const Word& w, const ArgumentTuple& args,
                  Engine engine = Engine::partition_sum);

// The product of per-block boolean cumulants attached to an adapted (or
// weakly adapted) labeled partition. Every block must carry one label.
Rational beta_product(const MomentContext& ctx, const ColoredPartition& p,
                      const ArgumentTuple& args);

// Formal series with finitely many word coefficients; the empty word acts
// on nothing here because arguments are nonempty, so only coefficients of
// words of the right length contribute.
using SeriesCoefficients = std::map<Word, Rational>;
Rational psi_series(const MomentContext& ctx, const SeriesCoefficients& gamma,
                    const ArgumentTuple& args, Engine engine = Engine::partition_sum);

// Mixed moments of the free and boolean products of the context's states,
// obtained by summing psi over all reduced words (resp. constant words)
// of matching length. Unit factors are removed first. The oracle variant
// evaluates the free product by the centering recursion alone and shares
// nothing with the word machinery.
Rational free_product_moment(const MomentContext& ctx, const ArgumentTuple& args,
                             Engine engine = Engine::partition_sum);
Rational boolean_product_moment(const MomentContext& ctx, const ArgumentTuple& args);
Rational free_product_oracle(const MomentContext& ctx, const ArgumentTuple& args);

// Boolean cumulant attached to a word: the sum of beta over irreducible
// adapted labeled partitions. The inversion variant recovers the same
// value from psi alone through the interval moment-cumulant relation over
// splittings of w into reduced segments, as an independent route.
Rational word_cumulant(const MomentContext& ctx, const Word& w, const ArgumentTuple& args);
Rational word_cumulant_by_inversion(const MomentContext& ctx, const Word& w,
                                    const ArgumentTuple& args,
                                    Engine engine = Engine::partition_sum);

// Sums of beta over all noncrossing (resp. irreducible noncrossing)
// label-adapted partitions: the partition expansions of the free product
// moments and of their boolean cumulants.
Rational nc_label_sum(const MomentContext& ctx, const ArgumentTuple& args, bool irreducible_only);

// Interval moment-cumulant inversion: given the moments of all contiguous
// index ranges [i,j] of 1..n, returns the top cumulant B_n. This is the
// shared engine behind the boolean cumulants of any state.
Rational interval_cumulant(int n, const std::function<Rational(int, int)>& submoment);

// Boolean cumulant of the tuple inside the free product: the inversion
// above fed with free-product moments of contiguous subtuples.
Rational free_boolean_cumulant(const MomentContext& ctx, const ArgumentTuple& args);

std::vector<int> labels_of(const ArgumentTuple& args);

}  // namespace motzkin
