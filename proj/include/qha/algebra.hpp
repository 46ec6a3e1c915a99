/* Bound quiver algebras: path basis modulo an admissible ideal, computed
 * degreewise by linear reduction of relation translates, together with the
 * multiplication table, opposite algebra, idempotent-quotients and
 * presentation extraction for abstract algebras (used by the
 * endomorphism-algebra construction). */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qha/matrix.hpp"
#include "qha/quiver.hpp"

namespace qha {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/* Sparse linear combination of basis elements, sorted by index. */
using Lin = std::vector<std::pair<int, Scalar>>;

Lin lin_add(const Field& f, const Lin& a, const Lin& b);
Lin lin_scale(const Field& f, const Lin& a, const Scalar& s);

struct BasisPath {
    int source = 0;
    int target = 0;
    ArrowPath arrows;  // empty = trivial path e_source

    int length() const { return static_cast<int>(arrows.size()); }
};

class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    /* Computes the path basis of KQ modulo the ideal generated by the
     * relations. nilpotency_bound N promises (arrow ideal)^N lies in the
     * ideal; this is verified and "bound too small" is raised otherwise. */
    static AlgebraPtr build(Field field, Quiver quiver, std::vector<Relation> relations,
                            int nilpotency_bound, std::string name = "");

    const Field& field() const { return field_; }
    const Quiver& quiver() const { return quiver_; }
    const std::vector<Relation>& relations() const { return relations_; }
    int nilpotency_bound() const { return bound_; }
    const std::string& name() const { return name_; }

    int dimension() const { return static_cast<int>(basis_.size()); }
    int vertex_count() const { return quiver_.vertex_count(); }
    const std::vector<BasisPath>& basis() const { return basis_; }
    int unit_index(int vertex) const { return vertex_unit_[vertex]; }
    /* basis indices with the given source (resp. source and target) */
    const std::vector<int>& basis_with_source(int v) const { return by_source_[v]; }
    const std::vector<int>& basis_between(int s, int t) const {
        return by_pair_[s * quiver_.vertex_count() + t];
    }

    /* b_i * b_j in basis coordinates */
    const Lin& mult(int i, int j) const { return mult_[i * basis_.size() + j]; }
    Lin mult(const Lin& a, const Lin& b) const;

    /* Normal form of an arbitrary composable path (zero when it leaves the
     * enumerated range, i.e. has length >= N or is not composable). */
    Lin path_normal_form(int source, const ArrowPath& p) const;

    /* Same quiver with arrows reversed and relation paths reversed;
     * opposite(opposite(a)) is pointer-identical to a. */
    AlgebraPtr opposite() const;

    std::string describe() const;

private:
    friend struct AlgebraBuilder;
    Algebra() = default;

    Field field_;
    Quiver quiver_;
    std::vector<Relation> relations_;
    int bound_ = 0;
    std::string name_;

    std::vector<BasisPath> basis_;
    std::vector<int> vertex_unit_;
    std::vector<std::vector<int>> by_source_;
    std::vector<std::vector<int>> by_pair_;
    std::vector<Lin> mult_;

    /* reduction data: every enumerated path (length <= N) -> normal form */
    std::vector<BasisPath> all_paths_;
    std::map<std::pair<int, ArrowPath>, int> path_ids_;
    std::vector<Lin> normal_form_;

    mutable std::mutex op_mutex_;
    mutable std::weak_ptr<const Algebra> opposite_;
    mutable std::shared_ptr<const Algebra> opposite_keepalive_;
};

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a.get() == b.get(); }

/* An associative algebra given by structure constants with a chosen
 * complete set of orthogonal primitive idempotents and a spanning set of
 * the radical; the input to presentation extraction. */
struct StructuredAlgebra {
    Field field;
    int dim = 0;
    std::vector<Lin> mult;         // dim x dim table, row-major
    std::vector<Lin> idempotents;  // one per future vertex
    std::vector<Lin> radical_span;

    Lin product(const Lin& a, const Lin& b) const;
};

struct Presentation {
    AlgebraPtr algebra;
    /* row i = image of the i-th basis path of algebra in the structured
     * algebra's coordinates (an isomorphism onto it) */
    Matrix basis_image;
    std::vector<Lin> arrow_lifts;  // per quiver arrow, in structured coordinates
};

/* Computes a bound quiver presentation of b: vertices = idempotents,
 * arrows = a lifted basis of rad/rad^2, relations = kernel of the path
 * evaluation map. The result is isomorphic to b (dimension-checked). */
Presentation extract_presentation(const StructuredAlgebra& b, Field field,
                                  const std::vector<std::string>& vertex_names,
                                  std::string name);

struct VertexQuotient {
    AlgebraPtr algebra;                 // a / (sum of killed vertex idempotents)
    std::vector<int> surviving;         // old vertex id per new vertex
    std::vector<Lin> arrow_elements;    // per new arrow, element of the original algebra
};

/* Quotient by the ideal generated by the idempotents of the given vertices. */
VertexQuotient quotient_by_vertices(const AlgebraPtr& a, const std::vector<int>& killed);

/* Isomorphism test on presentations: vertex relabeling + arrow matching
 * (with scalar adjustment propagated through binomial relations) + relation
 * match. Sufficient for the presentations arising here; may report false
 * for exotic presentations. */
bool algebra_isomorphic(const AlgebraPtr& a, const AlgebraPtr& b);

}  // namespace qha
