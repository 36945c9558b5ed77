#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace motzkin {

using Rational = boost::multiprecision::cpp_rational;

// "p/q" (or plain "p") with exact integer arithmetic.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);
double to_double(const Rational& r);

using GenWord = std::vector<int>;  // generator indices; empty = the unit

// The moment functional of one algebra, given as an exact table: a value
// for every generator word up to max_order. Evaluation never invents
// zeros; asking beyond the table is an error.
class AlgebraSpec {
  public:
    AlgebraSpec() = default;
    AlgebraSpec(int label, std::vector<std::string> generators, int max_order,
                std::map<GenWord, Rational> moments);  // validates completeness

    int label() const { return label_; }
    int max_order() const { return max_order_; }
    const std::vector<std::string>& generators() const { return generators_; }
    int generator_index(const std::string& name) const;  // -1 when unknown
    const std::map<GenWord, Rational>& moments() const { return moments_; }

    Rational moment(const GenWord& word) const;  // moment({}) == 1

  private:
    int label_ = 0;
    std::vector<std::string> generators_;
    int max_order_ = 0;
    std::map<GenWord, Rational> moments_;
};

// An element of one algebra: a noncommutative polynomial in its
// generators, kept as coefficient/word pairs with like terms collected.
class Element {
  public:
    Element() = default;  // zero of an unspecified algebra; label set on use
    explicit Element(int label) : label_(label) {}
    static Element unit(int label);
    static Element generator(int label, int index);
    static Element monomial(int label, Rational coeff, GenWord word);

    int label() const { return label_; }
    const std::map<GenWord, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // A scalar multiple of the unit; the scalar is returned through out.
    bool is_scalar(Rational* out = nullptr) const;

    Element& operator+=(const Element& other);
    Element& operator*=(const Rational& c);
    friend Element operator*(const Element& a, const Element& b);  // same label
    friend Element operator+(Element a, const Element& b) { return a += b; }

    // The element minus its mean: a - phi(a) 1.
    Element centered(const AlgebraSpec& spec) const;

  private:
    int label_ = 0;
    std::map<GenWord, Rational> terms_;
    void trim();
};

// phi applied to one element or to a product of elements of one algebra.
Rational moment(const AlgebraSpec& spec, const Element& a);
Rational moment(const AlgebraSpec& spec, const std::vector<Element>& factors);

// Multivariate boolean cumulant B_n(a_1,...,a_n), defined by summing
// products of cumulants over interval partitions: M_n = sum_{pi in I(n)}
// prod_V B_|V|. Computed by the first-block inversion.
Rational boolean_cumulant(const AlgebraSpec& spec, const std::vector<Element>& args);

// Deterministic helper specs used across tests and the demo files. The
// generic table assigns distinct small rationals to every word so that
// coincidental cancellations cannot hide disagreements; the random table
// draws numerators and denominators from a seeded generator.
AlgebraSpec generic_spec(int label, int num_generators, int max_order, unsigned variant = 0);
AlgebraSpec random_spec(int label, int num_generators, int max_order, std::uint64_t seed);

}  // namespace motzkin
