#include "motzkin/replica.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace motzkin {

Matrix identity_matrix(std::size_t n) {
    Matrix m(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Matrix matrix_product(const Matrix& a, const Matrix& b) {
    const std::size_t rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b[0].size();
    if (!a.empty() && a[0].size() != inner)
        throw std::invalid_argument("matrix dimensions do not match");
    Matrix out(rows, std::vector<Rational>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Matrix matrix_sum(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size() || (!a.empty() && a[0].size() != b[0].size()))
        throw std::invalid_argument("matrix dimensions do not match");
    Matrix out = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b[i].size(); ++j) out[i][j] += b[i][j];
    return out;
}

Matrix matrix_difference(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size() || (!a.empty() && a[0].size() != b[0].size()))
        throw std::invalid_argument("matrix dimensions do not match");
    Matrix out = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b[i].size(); ++j) out[i][j] -= b[i][j];
    return out;
}

bool matrix_is_zero(const Matrix& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

Matrix vacuum_projection(std::size_t n) {
    Matrix m(n, std::vector<Rational>(n, 0));
    if (n > 0) m[0][0] = 1;
    return m;
}

Matrix vacuum_complement(std::size_t n) {
    Matrix m = identity_matrix(n);
    if (n > 0) m[0][0] = 0;
    return m;
}

MatrixModel::MatrixModel(int label, std::vector<std::string> generator_names,
                         std::vector<Matrix> generators)
    : label_(label), names_(std::move(generator_names)), generators_(std::move(generators)) {
    if (names_.empty() || names_.size() != generators_.size())
        throw std::invalid_argument("a matrix model needs one named matrix per generator");
    dim_ = generators_.front().size();
    if (dim_ == 0) throw std::invalid_argument("matrix model dimension must be positive");
    for (const auto& g : generators_) {
        if (g.size() != dim_) throw std::invalid_argument("generator matrices must share one size");
        for (const auto& row : g)
            if (row.size() != dim_) throw std::invalid_argument("generator matrices must be square");
    }
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate generator name " + names_[i]);
}

const Matrix& MatrixModel::generator(std::size_t index) const {
    if (index >= generators_.size()) throw std::out_of_range("no generator with that index");
    return generators_[index];
}

Rational MatrixModel::word_moment(const GenWord& word) const {
    std::vector<Rational> v(dim_, 0);
    v[0] = 1;
    // Apply right-to-left so the state vector is hit by the whole product.
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const Matrix& g = generator(static_cast<std::size_t>(*it));
        std::vector<Rational> next(dim_, 0);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) next[r] += g[r][c] * v[c];
        v = std::move(next);
    }
    return v[0];
}

Matrix MatrixModel::element_matrix(const Element& a) const {
    if (!a.is_scalar() && a.label() != label_)
        throw std::invalid_argument("element belongs to a different algebra");
    Matrix out(dim_, std::vector<Rational>(dim_, 0));
    for (const auto& [word, coeff] : a.terms()) {
        Matrix prod = identity_matrix(dim_);
        for (int g : word) prod = matrix_product(prod, generator(static_cast<std::size_t>(g)));
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) out[i][j] += coeff * prod[i][j];
    }
    return out;
}

AlgebraSpec MatrixModel::spec(int max_order) const {
    std::map<GenWord, Rational> moments;
    GenWord word;
    std::function<void(const Matrix&)> grow = [&](const Matrix& prod) {
        if (!word.empty()) moments[word] = prod[0][0];
        if (static_cast<int>(word.size()) == max_order) return;
        for (std::size_t g = 0; g < generators_.size(); ++g) {
            word.push_back(static_cast<int>(g));
            grow(matrix_product(prod, generators_[g]));
            word.pop_back();
        }
    };
    grow(identity_matrix(dim_));
    return AlgebraSpec(label_, names_, max_order, moments);
}

MatrixModel jacobi_model(const AlgebraSpec& spec) {
    if (spec.generators().size() != 1)
        throw std::invalid_argument("the tridiagonal realization needs a one-generator table");
    const int order = spec.max_order();
    std::vector<Rational> m(static_cast<std::size_t>(order) + 1);
    m[0] = 1;
    for (int n = 1; n <= order; ++n) m[n] = spec.moment(GenWord(static_cast<std::size_t>(n), 0));

    // Moment functional on polynomial coefficient vectors; degrees beyond
    // the table only influence moments beyond the table's order.
    const auto functional = [&](const std::vector<Rational>& poly) {
        Rational s = 0;
        for (std::size_t d = 0; d < poly.size() && d < m.size(); ++d) s += poly[d] * m[d];
        return s;
    };
    const auto times_x = [](std::vector<Rational> p) {
        p.insert(p.begin(), Rational(0));
        return p;
    };
    const auto minus_scaled = [](std::vector<Rational> p, const Rational& c,
                                 const std::vector<Rational>& q) {
        if (p.size() < q.size()) p.resize(q.size(), Rational(0));
        for (std::size_t d = 0; d < q.size(); ++d) p[d] -= c * q[d];
        return p;
    };
    const auto square = [](const std::vector<Rational>& p) {
        std::vector<Rational> out(2 * p.size() - 1, Rational(0));
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j) out[i + j] += p[i] * p[j];
        return out;
    };

    // Monic three-term recurrence p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1},
    // coefficients from the moment functional, truncated when a squared
    // norm degenerates to zero.
    const int target = (order + 2) / 2;
    std::vector<Rational> alpha, beta;
    std::vector<Rational> prev{Rational(1)};
    Rational h_prev = 1;
    alpha.push_back(functional(times_x(square(prev))));
    std::vector<Rational> cur = minus_scaled(times_x(prev), alpha[0], prev);
    int dim = target;
    for (int k = 1; k < target; ++k) {
        const Rational h = functional(square(cur));
        if (h == 0) {
            dim = k;
            break;
        }
        beta.push_back(h / h_prev);
        alpha.push_back(functional(times_x(square(cur))) / h);
        auto next = minus_scaled(minus_scaled(times_x(cur), alpha[static_cast<std::size_t>(k)], cur),
                                 beta[static_cast<std::size_t>(k) - 1], prev);
        prev = std::move(cur);
        cur = std::move(next);
        h_prev = h;
    }

    Matrix t(static_cast<std::size_t>(dim), std::vector<Rational>(static_cast<std::size_t>(dim), 0));
    for (int k = 0; k < dim; ++k) {
        t[k][k] = alpha[static_cast<std::size_t>(k)];
        if (k + 1 < dim) {
            t[k + 1][k] = 1;
            t[k][k + 1] = beta[static_cast<std::size_t>(k)];
        }
    }
    MatrixModel model(spec.label(), spec.generators(), {t});
    for (int n = 1; n <= order; ++n) {
        if (model.word_moment(GenWord(static_cast<std::size_t>(n), 0)) != m[n])
            throw std::invalid_argument("moment table admits no tridiagonal realization");
    }
    return model;
}

ReplicaSpace::ReplicaSpace(std::vector<MatrixModel> models, int copies,
                           std::uint64_t dimension_limit)
    : models_(std::move(models)), copies_(copies) {
    if (models_.empty()) throw std::invalid_argument("a replica space needs at least one model");
    if (copies_ < 1) throw std::invalid_argument("a replica space needs at least one tensor copy");
    std::sort(models_.begin(), models_.end(),
              [](const MatrixModel& a, const MatrixModel& b) { return a.label() < b.label(); });
    for (std::size_t i = 1; i < models_.size(); ++i)
        if (models_[i].label() == models_[i - 1].label())
            throw std::invalid_argument("duplicate model label");
    total_dim_ = 1;
    for (const auto& model : models_) {
        for (int c = 0; c < copies_; ++c) {
            sites_.push_back({model.label(), c, model.dim()});
            total_dim_ *= model.dim();
            if (total_dim_ > dimension_limit)
                throw std::length_error("replica space dimension exceeds " +
                                        std::to_string(dimension_limit));
        }
    }
}

const MatrixModel& ReplicaSpace::model(int label) const {
    for (const auto& m : models_)
        if (m.label() == label) return m;
    throw std::out_of_range("no model with label " + std::to_string(label));
}

std::size_t ReplicaSpace::site_index(int label, int copy) const {
    if (copy < 0 || copy >= copies_) throw std::out_of_range("copy outside the truncation");
    for (std::size_t i = 0; i < models_.size(); ++i)
        if (models_[i].label() == label) return i * static_cast<std::size_t>(copies_) + copy;
    throw std::out_of_range("no model with label " + std::to_string(label));
}

namespace {

std::string term_key(const TensorTerm& t) {
    std::string key;
    for (const auto& factor : t.factors)
        for (const auto& row : factor)
            for (const auto& x : row) {
                key += format_rational(x);
                key += ',';
            }
    return key;
}

// Merge terms with identical factor lists and drop vanishing ones; the
// telescoping projection differences collapse under this.
TensorOperator canonicalize(std::vector<TensorTerm> terms) {
    std::map<std::string, TensorTerm> merged;
    for (auto& t : terms) {
        if (t.coeff == 0) continue;
        bool dead = false;
        for (const auto& factor : t.factors)
            if (matrix_is_zero(factor)) {
                dead = true;
                break;
            }
        if (dead) continue;
        auto key = term_key(t);
        auto [it, fresh] = merged.try_emplace(std::move(key), t);
        if (!fresh) it->second.coeff += t.coeff;
    }
    TensorOperator out;
    for (auto& [key, t] : merged)
        if (t.coeff != 0) out.push_back(std::move(t));
    return out;
}

}  // namespace

TensorOperator identity_operator(const ReplicaSpace& space) {
    TensorTerm t;
    t.coeff = 1;
    for (const auto& site : space.sites()) t.factors.push_back(identity_matrix(site.dim));
    return {t};
}

TensorOperator operator_add(const TensorOperator& a, const TensorOperator& b) {
    std::vector<TensorTerm> all = a;
    all.insert(all.end(), b.begin(), b.end());
    return canonicalize(std::move(all));
}

TensorOperator operator_product(const ReplicaSpace& space, const TensorOperator& a,
                                const TensorOperator& b) {
    const std::size_t n_sites = space.sites().size();
    std::vector<TensorTerm> out;
    for (const auto& ta : a)
        for (const auto& tb : b) {
            TensorTerm t;
            t.coeff = ta.coeff * tb.coeff;
            if (t.coeff == 0) continue;
            t.factors.reserve(n_sites);
            for (std::size_t s = 0; s < n_sites; ++s)
                t.factors.push_back(matrix_product(ta.factors[s], tb.factors[s]));
            out.push_back(std::move(t));
        }
    return canonicalize(std::move(out));
}

TensorOperator replica(const ReplicaSpace& space, const Element& a, Color color) {
    if (color < 1) throw std::invalid_argument("colors are positive");
    if (color > space.copies()) throw std::out_of_range("color exceeds the truncation depth");
    const auto& model = space.model(a.label());
    const Matrix mat = model.element_matrix(a);
    // threshold j encodes P_i(j): identity on the other labels' copies
    // before j-1 (0-based), the vacuum projection from there on.
    const auto term = [&](int threshold, Rational coeff) {
        TensorTerm t;
        t.coeff = std::move(coeff);
        for (const auto& site : space.sites()) {
            if (site.label == a.label())
                t.factors.push_back(site.copy == color - 1 ? mat : identity_matrix(site.dim));
            else
                t.factors.push_back(site.copy <= threshold - 2 ? identity_matrix(site.dim)
                                                               : vacuum_projection(site.dim));
        }
        return t;
    };
    std::vector<TensorTerm> terms;
    terms.push_back(term(color, 1));
    if (color > 1) terms.push_back(term(color - 1, -1));
    return canonicalize(std::move(terms));
}

TensorOperator replica_sum(const ReplicaSpace& space, const Element& a,
                           const std::vector<Color>& colors) {
    std::vector<TensorTerm> all;
    for (Color j : colors) {
        const auto op = replica(space, a, j);
        all.insert(all.end(), op.begin(), op.end());
    }
    return canonicalize(std::move(all));
}

std::vector<Rational> vacuum_vector(const ReplicaSpace& space) {
    std::vector<Rational> v(space.total_dimension(), 0);
    v[0] = 1;
    return v;
}

Rational vacuum_expectation(const ReplicaSpace& space, const TensorOperator& op) {
    (void)space;
    Rational total = 0;
    for (const auto& t : op) {
        Rational prod = t.coeff;
        for (const auto& factor : t.factors) {
            prod *= factor[0][0];
            if (prod == 0) break;
        }
        total += prod;
    }
    return total;
}

namespace {

// Multiply one tensor factor into the vector: the axis has the given
// dimension and stride within the mixed-radix layout.
std::vector<Rational> apply_axis(const std::vector<Rational>& v, const Matrix& m,
                                 std::size_t stride, std::size_t dim) {
    std::vector<Rational> out(v.size(), Rational(0));
    const std::size_t block = dim * stride;
    for (std::size_t base = 0; base < v.size(); base += block)
        for (std::size_t inner = 0; inner < stride; ++inner)
            for (std::size_t r = 0; r < dim; ++r) {
                Rational acc = 0;
                for (std::size_t c = 0; c < dim; ++c) acc += m[r][c] * v[base + c * stride + inner];
                out[base + r * stride + inner] = std::move(acc);
            }
    return out;
}

}  // namespace

std::vector<Rational> apply_operator(const ReplicaSpace& space, const TensorOperator& op,
                                     const std::vector<Rational>& v) {
    if (v.size() != space.total_dimension())
        throw std::invalid_argument("vector length differs from the space dimension");
    const auto& sites = space.sites();
    std::vector<std::size_t> stride(sites.size(), 1);
    for (std::size_t s = sites.size(); s-- > 1;) stride[s - 1] = stride[s] * sites[s].dim;
    std::vector<Rational> total(v.size(), Rational(0));
    for (const auto& t : op) {
        std::vector<Rational> w = v;
        for (std::size_t s = 0; s < sites.size(); ++s)
            w = apply_axis(w, t.factors[s], stride[s], sites[s].dim);
        for (std::size_t i = 0; i < w.size(); ++i) total[i] += t.coeff * w[i];
    }
    return total;
}

Matrix materialize(const ReplicaSpace& space, const TensorOperator& op) {
    const std::uint64_t dim = space.total_dimension();
    if (dim > 4096) throw std::length_error("materialization is limited to dimension 4096");
    Matrix total(dim, std::vector<Rational>(dim, 0));
    for (const auto& t : op) {
        Matrix acc{{t.coeff}};
        for (const auto& factor : t.factors) {
            const std::size_t ar = acc.size(), fr = factor.size();
            Matrix next(ar * fr, std::vector<Rational>(ar * fr, 0));
            for (std::size_t i = 0; i < ar; ++i)
                for (std::size_t j = 0; j < ar; ++j) {
                    if (acc[i][j] == 0) continue;
                    for (std::size_t k = 0; k < fr; ++k)
                        for (std::size_t l = 0; l < fr; ++l)
                            next[i * fr + k][j * fr + l] = acc[i][j] * factor[k][l];
                }
            acc = std::move(next);
        }
        total = matrix_sum(total, acc);
    }
    return total;
}

int needed_truncation(const std::vector<Color>& colors) {
    Color top = 1;
    for (Color j : colors) top = std::max(top, j);
    return top;
}

Rational psi_oracle(const ReplicaSpace& space, const std::vector<Color>& colors,
                    const ArgumentTuple& args) {
    if (colors.size() != args.size())
        throw std::invalid_argument("word length and argument count differ");
    if (colors.empty()) return 1;
    TensorOperator op = replica(space, args[0], colors[0]);
    for (std::size_t k = 1; k < args.size(); ++k) {
        if (op.empty()) return 0;
        op = operator_product(space, op, replica(space, args[k], colors[k]));
    }
    return vacuum_expectation(space, op);
}

Rational boolean_cumulant_via_p_perp(const MatrixModel& model, const std::vector<Element>& args) {
    if (args.empty()) throw std::invalid_argument("cumulant of an empty tuple");
    const Matrix perp = vacuum_complement(model.dim());
    Matrix acc = model.element_matrix(args[0]);
    for (std::size_t k = 1; k < args.size(); ++k)
        acc = matrix_product(matrix_product(acc, perp), model.element_matrix(args[k]));
    return acc[0][0];
}

Rational grouped_p_perp_moment(const MatrixModel& model,
                               const std::vector<std::vector<Element>>& groups) {
    if (groups.empty()) throw std::invalid_argument("moment of an empty grouping");
    const Matrix perp = vacuum_complement(model.dim());
    Matrix acc;
    bool first = true;
    for (const auto& group : groups) {
        if (group.empty()) throw std::invalid_argument("groups must be nonempty");
        Matrix g = model.element_matrix(group[0]);
        for (std::size_t k = 1; k < group.size(); ++k)
            g = matrix_product(g, model.element_matrix(group[k]));
        acc = first ? g : matrix_product(matrix_product(acc, perp), g);
        first = false;
    }
    return acc[0][0];
}

namespace {

Rational matrix_violation(const Matrix& m) {
    Rational worst = 0;
    for (const auto& row : m)
        for (const auto& x : row) {
            const Rational a = x < 0 ? Rational(-x) : x;
            if (a > worst) worst = a;
        }
    return worst;
}

Rational operator_violation(const ReplicaSpace& space, const TensorOperator& op,
                            std::mt19937_64& rng) {
    if (space.total_dimension() <= 4096) return matrix_violation(materialize(space, op));
    // Too large to expand: probe with random rational vectors instead.
    std::uniform_int_distribution<int> entry(-3, 3);
    Rational worst = 0;
    for (int round = 0; round < 4; ++round) {
        std::vector<Rational> v(space.total_dimension());
        for (auto& x : v) x = entry(rng);
        for (const auto& x : apply_operator(space, op, v)) {
            const Rational a = x < 0 ? Rational(-x) : x;
            if (a > worst) worst = a;
        }
    }
    return worst;
}

Element random_model_element(const MatrixModel& model, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> small(-3, 3);
    Element e = Element::unit(model.label());
    e *= Rational(small(rng));
    for (std::size_t g = 0; g < model.generator_names().size(); ++g) {
        Element t = Element::generator(model.label(), static_cast<int>(g));
        t *= Rational(2 * small(rng) + 1, 1 + (g % 2));
        e += t;
    }
    return e;
}

}  // namespace

std::vector<IdentityCheck> check_orthogonality(const ReplicaSpace& space, std::uint64_t seed) {
    if (space.models().size() < 2 || space.copies() < 2)
        throw std::invalid_argument("the orthogonality checks need two labels and two copies");
    std::mt19937_64 rng(seed);
    const int label_a = space.models()[0].label();
    const int label_b = space.models()[1].label();
    const int top = std::min(space.copies(), 3);

    Rational same_label = 0;
    for (Color j = 1; j <= top; ++j)
        for (Color k = 1; k <= top; ++k) {
            if (j == k) continue;
            for (const auto& model : space.models()) {
                const auto op = operator_product(
                    space, replica(space, random_model_element(model, rng), j),
                    replica(space, random_model_element(model, rng), k));
                same_label = std::max(same_label, operator_violation(space, op, rng));
            }
        }

    // Sandwiches a(s_j) z(w) b(s_j) where the inner word sits one level up.
    const auto sandwich = [&](int outer_left, int outer_right,
                              const std::vector<std::pair<int, Color>>& inner) {
        TensorOperator op =
            replica(space, random_model_element(space.model(outer_left), rng), 1);
        for (const auto& [label, color] : inner)
            op = operator_product(space, op,
                                  replica(space, random_model_element(space.model(label), rng), color));
        op = operator_product(space, op,
                              replica(space, random_model_element(space.model(outer_right), rng), 1));
        return operator_violation(space, op, rng);
    };

    Rational remote = 0;
    remote = std::max(remote, sandwich(label_a, label_b, {{label_b, 2}, {label_a, 2}}));
    if (space.copies() >= 3)
        remote = std::max(remote, sandwich(label_a, label_b,
                                           {{label_b, 2}, {label_a, 3}, {label_b, 3}, {label_a, 2}}));
    if (space.models().size() >= 3)
        remote = std::max(remote, sandwich(label_a, label_b, {{space.models()[2].label(), 2}}));

    Rational conditional = 0;
    conditional = std::max(conditional,
                           sandwich(label_a, label_a, {{label_b, 2}, {label_a, 2}, {label_b, 2}}));
    conditional = std::max(
        conditional,
        sandwich(label_b, label_b, {{label_a, 2}, {label_b, 2}, {label_a, 2}}));

    return {{"same-label orthogonality", same_label},
            {"remote orthogonality", remote},
            {"conditional orthogonality", conditional}};
}

RealizationMoments independence_realization(const ReplicaSpace& space, IndependenceKind kind,
                                            const Element& a, const Element& b, int order) {
    if (order < 1) throw std::invalid_argument("order must be positive");
    if (order > 2 * space.copies() - 1)
        throw std::out_of_range("order exceeds what the truncation reproduces");
    std::vector<Color> first_colors, second_colors;
    switch (kind) {
        case IndependenceKind::free_product:
            for (Color j = 1; j <= space.copies(); ++j) {
                first_colors.push_back(j);
                second_colors.push_back(j);
            }
            break;
        case IndependenceKind::s_free:
            for (Color j = 1; j <= space.copies(); j += 2) first_colors.push_back(j);
            for (Color j = 2; j <= space.copies(); j += 2) second_colors.push_back(j);
            break;
        case IndependenceKind::orthogonal:
            first_colors = {1};
            second_colors = {2};
            break;
        case IndependenceKind::monotone:
            first_colors = {1};
            second_colors = {1, 2};
            break;
    }
    const TensorOperator x = replica_sum(space, a, first_colors);
    const TensorOperator y = replica_sum(space, b, second_colors);

    RealizationMoments out;
    TensorOperator xp = x, yp = y, alt = x;
    for (int m = 1; m <= order; ++m) {
        out.first_marginal.push_back(vacuum_expectation(space, xp));
        out.second_marginal.push_back(vacuum_expectation(space, yp));
        out.alternating.push_back(vacuum_expectation(space, alt));
        if (m < order) {
            xp = operator_product(space, xp, x);
            yp = operator_product(space, yp, y);
            alt = operator_product(space, alt, m % 2 == 1 ? y : x);
        }
    }
    return out;
}

}  // namespace motzkin
