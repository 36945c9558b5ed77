#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "motzkin/algebra.hpp"
#include "motzkin/engines.hpp"
#include "motzkin/words.hpp"

namespace motzkin {

// Dense square matrices over the rationals, row-major.
using Matrix = std::vector<std::vector<Rational>>;

Matrix identity_matrix(std::size_t n);
Matrix matrix_product(const Matrix& a, const Matrix& b);
Matrix matrix_sum(const Matrix& a, const Matrix& b);
Matrix matrix_difference(const Matrix& a, const Matrix& b);
bool matrix_is_zero(const Matrix& m);
// The rank-one projection onto the distinguished basis vector e_0, and
// its complement.
Matrix vacuum_projection(std::size_t n);
Matrix vacuum_complement(std::size_t n);

// One algebra realized by matrices: named generators acting on a
// finite-dimensional space, with the vector state at e_0. The moment of
// a generator word is the top-left entry of the matrix product.
class MatrixModel {
  public:
    MatrixModel(int label, std::vector<std::string> generator_names,
                std::vector<Matrix> generators);

    int label() const { return label_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& generator_names() const { return names_; }
    const Matrix& generator(std::size_t index) const;

    Rational word_moment(const GenWord& word) const;
    // Evaluate a polynomial in the generators.
    Matrix element_matrix(const Element& a) const;
    // Tabulate every word moment up to the given order.
    AlgebraSpec spec(int max_order) const;

  private:
    int label_;
    std::size_t dim_;
    std::vector<std::string> names_;
    std::vector<Matrix> generators_;
};

// Tridiagonal matrix realization of a one-generator moment table: the
// multiplication operator in the monic orthogonal polynomial basis, with
// ones on the subdiagonal. Throws when the table admits no realization
// at the required dimension (degenerate leading minors).
MatrixModel jacobi_model(const AlgebraSpec& spec);

// A truncated replica space: `copies` tensor factors of each model's
// space, with the product vacuum state.
class ReplicaSpace {
  public:
    struct Site {
        int label;
        int copy;
        std::size_t dim;
    };

    ReplicaSpace(std::vector<MatrixModel> models, int copies,
                 std::uint64_t dimension_limit = 1000000);

    int copies() const { return copies_; }
    const std::vector<MatrixModel>& models() const { return models_; }
    const MatrixModel& model(int label) const;
    const std::vector<Site>& sites() const { return sites_; }
    std::size_t site_index(int label, int copy) const;
    // Product of all site dimensions (bounded on construction).
    std::uint64_t total_dimension() const { return total_dim_; }

  private:
    std::vector<MatrixModel> models_;
    int copies_;
    std::vector<Site> sites_;
    std::uint64_t total_dim_;
};

// Operators are sums of elementary tensors, one matrix per site. Terms
// with identical factor lists are merged after every product so that
// telescoping projection sums stay small.
struct TensorTerm {
    Rational coeff;
    std::vector<Matrix> factors;
};
using TensorOperator = std::vector<TensorTerm>;

TensorOperator identity_operator(const ReplicaSpace& space);
TensorOperator operator_add(const TensorOperator& a, const TensorOperator& b);
TensorOperator operator_product(const ReplicaSpace& space, const TensorOperator& a,
                                const TensorOperator& b);

// The orthogonal replica a(s_j): the element's matrix at the label's
// j-th copy, units on its other copies, and the telescoping projection
// difference P_i(j) - P_i(j-1) across all other labels' sites.
TensorOperator replica(const ReplicaSpace& space, const Element& a, Color color);
TensorOperator replica_sum(const ReplicaSpace& space, const Element& a,
                           const std::vector<Color>& colors);

// The state vector, the state, and vector/matrix actions.
std::vector<Rational> vacuum_vector(const ReplicaSpace& space);
Rational vacuum_expectation(const ReplicaSpace& space, const TensorOperator& op);
std::vector<Rational> apply_operator(const ReplicaSpace& space, const TensorOperator& op,
                                     const std::vector<Rational>& v);
// Full Kronecker expansion; guarded against dimensions above 4096.
Matrix materialize(const ReplicaSpace& space, const TensorOperator& op);

// Smallest truncation depth that evaluates a word exactly.
int needed_truncation(const std::vector<Color>& colors);

// Phi of the replica product a_1(s_{j_1}) ... a_n(s_{j_n}).
Rational psi_oracle(const ReplicaSpace& space, const std::vector<Color>& colors,
                    const ArgumentTuple& args);

// The boolean cumulant B_n as the state applied to the product with the
// vacuum complement inserted between consecutive arguments.
Rational boolean_cumulant_via_p_perp(const MatrixModel& model, const std::vector<Element>& args);
// The same with the complement inserted only between groups, each group
// multiplied out first.
Rational grouped_p_perp_moment(const MatrixModel& model,
                               const std::vector<std::vector<Element>>& groups);

// Exact verification of the three replica orthogonality statements on
// randomized elements; returns the largest absolute violation per check.
struct IdentityCheck {
    std::string name;
    Rational max_violation;
};
std::vector<IdentityCheck> check_orthogonality(const ReplicaSpace& space, std::uint64_t seed);

// Pairs of families built from replicas of one element per algebra,
// realizing the four product constructions.
enum class IndependenceKind { free_product, s_free, orthogonal, monotone };

struct RealizationMoments {
    // Phi(X^m) and Phi(Y^m) for m = 1..order.
    std::vector<Rational> first_marginal;
    std::vector<Rational> second_marginal;
    // Phi of the alternating products X, XY, XYX, ... up to length `order`.
    std::vector<Rational> alternating;
};

RealizationMoments independence_realization(const ReplicaSpace& space, IndependenceKind kind,
                                            const Element& a, const Element& b, int order);

}  // namespace motzkin
