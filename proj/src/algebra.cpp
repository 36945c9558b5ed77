#include "motzkin/algebra.hpp"

#include <random>
#include <stdexcept>

namespace motzkin {

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
        const boost::multiprecision::cpp_int num(text.substr(0, slash));
        const boost::multiprecision::cpp_int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

std::string format_rational(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return static_cast<double>(r); }

AlgebraSpec::AlgebraSpec(int label, std::vector<std::string> generators, int max_order,
                         std::map<GenWord, Rational> moments)
    : label_(label),
      generators_(std::move(generators)),
      max_order_(max_order),
      moments_(std::move(moments)) {
    if (generators_.empty()) throw std::invalid_argument("an algebra needs at least one generator");
    if (max_order_ < 1) throw std::invalid_argument("max order must be positive");
    // The table must cover every word up to max_order; walk them all.
    const int g = static_cast<int>(generators_.size());
    GenWord word;
    for (int len = 1; len <= max_order_; ++len) {
        word.assign(len, 0);
        while (true) {
            if (!moments_.count(word))
                throw std::invalid_argument("moment table is missing a word of length " +
                                            std::to_string(len));
            int k = len - 1;
            while (k >= 0 && word[k] == g - 1) word[k--] = 0;
            if (k < 0) break;
            ++word[k];
        }
    }
    for (const auto& [w, value] : moments_) {
        if (w.empty() && value != 1) throw std::invalid_argument("the unit must have moment 1");
        if (static_cast<int>(w.size()) > max_order_)
            throw std::invalid_argument("moment table entry beyond max order");
        for (int k : w)
            if (k < 0 || k >= g) throw std::invalid_argument("moment table uses an unknown generator");
    }
    moments_[GenWord{}] = 1;
}

int AlgebraSpec::generator_index(const std::string& name) const {
    for (std::size_t k = 0; k < generators_.size(); ++k)
        if (generators_[k] == name) return static_cast<int>(k);
    return -1;
}

Rational AlgebraSpec::moment(const GenWord& word) const {
    if (word.empty()) return 1;
    if (static_cast<int>(word.size()) > max_order_)
        throw std::out_of_range("moment of order " + std::to_string(word.size()) +
                                " requested, table covers " + std::to_string(max_order_));
    const auto it = moments_.find(word);
    if (it == moments_.end()) throw std::out_of_range("moment table has no entry for the word");
    return it->second;
}

Element Element::unit(int label) { return monomial(label, 1, {}); }

Element Element::generator(int label, int index) { return monomial(label, 1, {index}); }

Element Element::monomial(int label, Rational coeff, GenWord word) {
    Element e(label);
    if (coeff != 0) e.terms_[std::move(word)] = std::move(coeff);
    return e;
}

bool Element::is_scalar(Rational* out) const {
    if (terms_.empty()) {
        if (out) *out = 0;
        return true;
    }
    if (terms_.size() == 1 && terms_.begin()->first.empty()) {
        if (out) *out = terms_.begin()->second;
        return true;
    }
    return false;
}

void Element::trim() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (it->second == 0) ? terms_.erase(it) : std::next(it);
}

Element& Element::operator+=(const Element& other) {
    if (terms_.empty()) label_ = other.label_;
    if (!other.terms_.empty() && label_ != other.label_)
        throw std::invalid_argument("cannot add elements of different algebras");
    for (const auto& [word, coeff] : other.terms_) terms_[word] += coeff;
    trim();
    return *this;
}

Element& Element::operator*=(const Rational& c) {
    for (auto& [word, coeff] : terms_) coeff *= c;
    trim();
    return *this;
}

Element operator*(const Element& a, const Element& b) {
    if (!a.terms_.empty() && !b.terms_.empty() && a.label_ != b.label_)
        throw std::invalid_argument("cannot multiply elements of different algebras");
    Element out(a.terms_.empty() ? b.label_ : a.label_);
    for (const auto& [wa, ca] : a.terms_) {
        for (const auto& [wb, cb] : b.terms_) {
            GenWord word = wa;
            word.insert(word.end(), wb.begin(), wb.end());
            out.terms_[std::move(word)] += ca * cb;
        }
    }
    out.trim();
    return out;
}

Element Element::centered(const AlgebraSpec& spec) const {
    Element mean = unit(label_);
    mean *= -moment(spec, *this);
    Element out = *this;
    out += mean;
    return out;
}

Rational moment(const AlgebraSpec& spec, const Element& a) {
    Rational total = 0;
    for (const auto& [word, coeff] : a.terms()) total += coeff * spec.moment(word);
    return total;
}

Rational moment(const AlgebraSpec& spec, const std::vector<Element>& factors) {
    Element product = Element::unit(spec.label());
    for (const auto& f : factors) product = product * f;
    return moment(spec, product);
}

Rational boolean_cumulant(const AlgebraSpec& spec, const std::vector<Element>& args) {
    const std::size_t n = args.size();
    if (n == 0) throw std::invalid_argument("boolean cumulant of an empty tuple");
    // cumulant[k] = B_{k+1}(a_1,...,a_{k+1}); the moment of the first
    // k letters splits over the size of the interval block containing 1.
    std::vector<Rational> cum(n), mom(n);
    Element prefix = Element::unit(spec.label());
    for (std::size_t k = 0; k < n; ++k) {
        prefix = prefix * args[k];
        mom[k] = moment(spec, prefix);
    }
    for (std::size_t k = 0; k < n; ++k) {
        Rational rest = mom[k];
        Element suffix = Element::unit(spec.label());
        for (std::size_t j = k; j >= 1; --j) {
            suffix = args[j] * suffix;  // a_{j+1} ... a_{k+1}
            rest -= cum[j - 1] * moment(spec, suffix);
        }
        cum[k] = rest;
    }
    return cum[n - 1];
}

namespace {

// Distinct rationals with small denominators, deterministic in (variant,
// index). Consecutive primes keep different words from colliding.
Rational nth_generic_value(unsigned variant, std::size_t index) {
    static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    const std::size_t np = sizeof(primes) / sizeof(primes[0]);
    const int num = primes[(index + 2 * variant) % np];
    const int den = primes[(index + 2 * variant + 5) % np];
    return Rational(num, den);
}

template <typename ValueFn>
AlgebraSpec build_spec(int label, int num_generators, int max_order, ValueFn value) {
    std::vector<std::string> names;
    for (int k = 0; k < num_generators; ++k) names.push_back(std::string(1, char('a' + k)));
    std::map<GenWord, Rational> table;
    std::size_t index = 0;
    GenWord word;
    for (int len = 1; len <= max_order; ++len) {
        word.assign(len, 0);
        while (true) {
            table[word] = value(index++);
            int k = len - 1;
            while (k >= 0 && word[k] == num_generators - 1) word[k--] = 0;
            if (k < 0) break;
            ++word[k];
        }
    }
    return AlgebraSpec(label, std::move(names), max_order, std::move(table));
}

}  // namespace

AlgebraSpec generic_spec(int label, int num_generators, int max_order, unsigned variant) {
    return build_spec(label, num_generators, max_order,
                      [&](std::size_t k) { return nth_generic_value(variant, k); });
}

AlgebraSpec random_spec(int label, int num_generators, int max_order, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 4);
    return build_spec(label, num_generators, max_order,
                      [&](std::size_t) { return Rational(num(rng), den(rng)); });
}

}  // namespace motzkin
