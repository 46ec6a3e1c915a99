#include "qha/algebra.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace qha {

void Quiver::validate() const {
    std::set<std::string> seen;
    for (const auto& v : vertices) {
        if (v.empty()) throw error("empty vertex name");
        if (!seen.insert(v).second) throw error("duplicate vertex name '" + v + "'");
    }
    std::set<std::string> aseen;
    for (const auto& a : arrows) {
        if (a.name.empty()) throw error("empty arrow name");
        if (!aseen.insert(a.name).second) throw error("duplicate arrow name '" + a.name + "'");
        if (a.source < 0 || a.source >= vertex_count() || a.target < 0 || a.target >= vertex_count())
            throw error("arrow '" + a.name + "' has an undeclared endpoint");
    }
}

Lin lin_add(const Field& f, const Lin& a, const Lin& b) {
    Lin out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            Scalar s = f.add(a[i].second, b[j].second);
            if (!f.is_zero(s)) out.emplace_back(a[i].first, s);
            ++i, ++j;
        }
    }
    return out;
}

Lin lin_scale(const Field& f, const Lin& a, const Scalar& s) {
    if (f.is_zero(s)) return {};
    Lin out;
    out.reserve(a.size());
    for (const auto& [k, c] : a) out.emplace_back(k, f.mul(c, s));
    return out;
}

namespace {

bool path_composable(const Quiver& q, int source, const ArrowPath& p, int* target_out) {
    int at = source;
    for (int ai : p) {
        if (ai < 0 || ai >= q.arrow_count()) return false;
        if (q.arrows[ai].source != at) return false;
        at = q.arrows[ai].target;
    }
    if (target_out) *target_out = at;
    return true;
}

/* ordering used for path columns: length, then arrows lexicographically,
 * then source (for trivial paths) */
bool path_less(const BasisPath& a, const BasisPath& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    if (a.arrows != b.arrows) return a.arrows < b.arrows;
    return a.source < b.source;
}

struct BlockEchelon {
    std::vector<int> cols;              // global path ids, ascending
    std::map<int, int> local;           // global id -> local col
    std::vector<std::vector<Scalar>> rows;
    std::vector<int> pivots;            // local pivot col per row

    void insert(const Field& f, std::vector<Scalar> v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Scalar& c = v[pivots[r]];
            if (f.is_zero(c)) continue;
            for (std::size_t k = pivots[r]; k < v.size(); ++k)
                v[k] = f.sub(v[k], f.mul(c, rows[r][k]));
        }
        std::size_t p = 0;
        while (p < v.size() && f.is_zero(v[p])) ++p;
        if (p == v.size()) return;
        Scalar inv = f.inv(v[p]);
        for (std::size_t k = p; k < v.size(); ++k) v[k] = f.mul(v[k], inv);
        // keep rows sorted by pivot
        std::size_t pos = 0;
        while (pos < rows.size() && pivots[pos] < static_cast<int>(p)) ++pos;
        rows.insert(rows.begin() + pos, std::move(v));
        pivots.insert(pivots.begin() + pos, static_cast<int>(p));
    }

    void to_rref(const Field& f) {
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t s = r + 1; s < rows.size(); ++s) {
                const Scalar c = rows[r][pivots[s]];
                if (f.is_zero(c)) continue;
                for (std::size_t k = pivots[s]; k < rows[r].size(); ++k)
                    rows[r][k] = f.sub(rows[r][k], f.mul(c, rows[s][k]));
            }
    }
};

}  // namespace

struct AlgebraBuilder {
    static AlgebraPtr run(Field field, Quiver quiver, std::vector<Relation> relations,
                          int bound, std::string name) {
        quiver.validate();
        if (bound < 2) throw error("nilpotency bound must be at least 2");

        // validate and normalize relations
        std::vector<Relation> rels;
        for (const auto& r : relations) {
            Relation nr;
            int rs = -1, rt = -1;
            for (const auto& t : r.terms) {
                if (field.is_zero(t.coeff)) continue;
                if (t.path.size() < 2)
                    throw error("not admissible: relation term of length " +
                                std::to_string(t.path.size()));
                int src = quiver.arrows[t.path[0]].source, tgt = 0;
                if (!path_composable(quiver, src, t.path, &tgt))
                    throw error("relation term is not a composable path");
                if (rs == -1) { rs = src; rt = tgt; }
                else if (rs != src || rt != tgt)
                    throw error("relation terms are not parallel");
                nr.terms.push_back(t);
            }
            if (!nr.terms.empty()) rels.push_back(std::move(nr));
        }

        auto alg = std::shared_ptr<Algebra>(new Algebra());
        alg->field_ = field;
        alg->quiver_ = quiver;
        alg->relations_ = rels;
        alg->bound_ = bound;
        alg->name_ = std::move(name);

        // enumerate composable paths of length 0..bound
        std::vector<BasisPath>& paths = alg->all_paths_;
        for (int v = 0; v < quiver.vertex_count(); ++v)
            paths.push_back(BasisPath{v, v, {}});
        std::size_t level_begin = 0;
        for (int len = 1; len <= bound; ++len) {
            std::size_t level_end = paths.size();
            for (std::size_t i = level_begin; i < level_end; ++i)
                for (int ai = 0; ai < quiver.arrow_count(); ++ai)
                    if (quiver.arrows[ai].source == paths[i].target) {
                        BasisPath np = paths[i];
                        np.arrows.push_back(ai);
                        np.target = quiver.arrows[ai].target;
                        paths.push_back(std::move(np));
                    }
            level_begin = level_end;
            if (paths.size() > 200000)
                throw error("path enumeration exceeded cap; quiver too wild for the bound");
        }
        std::sort(paths.begin(), paths.end(), path_less);
        for (std::size_t i = 0; i < paths.size(); ++i)
            alg->path_ids_[{paths[i].source, paths[i].arrows}] = static_cast<int>(i);

        const int nv = quiver.vertex_count();
        // per (source,target) block echelon of the relation-translate span
        std::vector<BlockEchelon> blocks(nv * nv);
        for (std::size_t i = 0; i < paths.size(); ++i)
            blocks[paths[i].source * nv + paths[i].target].cols.push_back(static_cast<int>(i));
        for (auto& b : blocks)
            for (std::size_t c = 0; c < b.cols.size(); ++c) b.local[b.cols[c]] = static_cast<int>(c);

        // group paths by target / by source for translate generation
        std::vector<std::vector<int>> ending_at(nv), starting_at(nv);
        for (std::size_t i = 0; i < paths.size(); ++i) {
            ending_at[paths[i].target].push_back(static_cast<int>(i));
            starting_at[paths[i].source].push_back(static_cast<int>(i));
        }

        for (const auto& rel : rels) {
            int rs = quiver.arrows[rel.terms[0].path[0]].source;
            int rt = 0;
            path_composable(quiver, rs, rel.terms[0].path, &rt);
            int minlen = bound + 1;
            for (const auto& t : rel.terms) minlen = std::min<int>(minlen, t.path.size());
            for (int u : ending_at[rs]) {
                if (paths[u].length() + minlen > bound) continue;
                for (int v : starting_at[rt]) {
                    if (paths[u].length() + minlen + paths[v].length() > bound) continue;
                    BlockEchelon& blk = blocks[paths[u].source * nv + paths[v].target];
                    std::vector<Scalar> row(blk.cols.size(), field.zero());
                    bool any = false;
                    for (const auto& t : rel.terms) {
                        int len = paths[u].length() + static_cast<int>(t.path.size()) + paths[v].length();
                        if (len > bound) continue;
                        ArrowPath ap = paths[u].arrows;
                        ap.insert(ap.end(), t.path.begin(), t.path.end());
                        ap.insert(ap.end(), paths[v].arrows.begin(), paths[v].arrows.end());
                        auto it = alg->path_ids_.find({paths[u].source, ap});
                        if (it == alg->path_ids_.end()) throw error("internal: translate path missing");
                        int lc = blk.local.at(it->second);
                        row[lc] = field.add(row[lc], t.coeff);
                        any = true;
                    }
                    if (any) blk.insert(field, std::move(row));
                }
            }
        }

        // basis = non-pivot columns; all length-bound paths must reduce to zero
        std::vector<int> basis_index(paths.size(), -1);
        std::vector<int> pivot_row(paths.size(), -1);
        for (auto& b : blocks) {
            b.to_rref(field);
            for (std::size_t r = 0; r < b.rows.size(); ++r) pivot_row[b.cols[b.pivots[r]]] = static_cast<int>(r);
        }
        for (std::size_t i = 0; i < paths.size(); ++i) {
            if (pivot_row[i] >= 0) continue;
            if (paths[i].length() >= bound) {
                std::ostringstream os;
                os << "bound too small: path of length " << bound << " survives reduction";
                throw error(os.str());
            }
            basis_index[i] = static_cast<int>(alg->basis_.size());
            alg->basis_.push_back(paths[i]);
        }

        // normal forms for every enumerated path
        alg->normal_form_.resize(paths.size());
        for (std::size_t i = 0; i < paths.size(); ++i) {
            if (basis_index[i] >= 0) {
                alg->normal_form_[i] = Lin{{basis_index[i], field.one()}};
                continue;
            }
            const BlockEchelon& blk = blocks[paths[i].source * nv + paths[i].target];
            const auto& row = blk.rows[pivot_row[i]];
            Lin nf;
            for (std::size_t c = 0; c < row.size(); ++c) {
                int gid = blk.cols[c];
                if (gid == static_cast<int>(i) || field.is_zero(row[c])) continue;
                if (basis_index[gid] < 0) continue;  // other pivot columns carry zero in rref
                nf.emplace_back(basis_index[gid], field.neg(row[c]));
            }
            std::sort(nf.begin(), nf.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            alg->normal_form_[i] = std::move(nf);
        }

        // indexing helpers
        alg->vertex_unit_.assign(nv, -1);
        alg->by_source_.assign(nv, {});
        alg->by_pair_.assign(nv * nv, {});
        for (std::size_t k = 0; k < alg->basis_.size(); ++k) {
            const BasisPath& p = alg->basis_[k];
            if (p.length() == 0) alg->vertex_unit_[p.source] = static_cast<int>(k);
            alg->by_source_[p.source].push_back(static_cast<int>(k));
            alg->by_pair_[p.source * nv + p.target].push_back(static_cast<int>(k));
        }
        for (int v = 0; v < nv; ++v)
            if (alg->vertex_unit_[v] < 0) throw error("internal: missing unit path");

        // multiplication table
        const int dim = alg->dimension();
        alg->mult_.assign(static_cast<std::size_t>(dim) * dim, Lin{});
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                const BasisPath& p = alg->basis_[i];
                const BasisPath& q = alg->basis_[j];
                if (p.target != q.source) continue;
                if (p.length() + q.length() > bound) continue;
                ArrowPath ap = p.arrows;
                ap.insert(ap.end(), q.arrows.begin(), q.arrows.end());
                int pid = alg->path_ids_.at({p.source, ap});
                alg->mult_[static_cast<std::size_t>(i) * dim + j] = alg->normal_form_[pid];
            }

        check_associativity(*alg);
        return alg;
    }

    static void check_associativity(const Algebra& a) {
        const int dim = a.dimension();
        auto check = [&](int i, int j, int k) {
            Lin l = a.mult(a.mult(i, j), Lin{{k, a.field().one()}});
            Lin r = a.mult(Lin{{i, a.field().one()}}, a.mult(j, k));
            if (l != r) throw error("multiplication table is not associative");
        };
        if (dim <= 80) {
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    for (int k = 0; k < dim; ++k) check(i, j, k);
        } else {
            std::mt19937_64 gen(12345);
            for (int t = 0; t < 20000; ++t)
                check(gen() % dim, gen() % dim, gen() % dim);
        }
    }
};

AlgebraPtr Algebra::build(Field field, Quiver quiver, std::vector<Relation> relations,
                          int nilpotency_bound, std::string name) {
    return AlgebraBuilder::run(field, std::move(quiver), std::move(relations), nilpotency_bound,
                               std::move(name));
}

Lin Algebra::mult(const Lin& a, const Lin& b) const {
    Lin out;
    for (const auto& [i, ci] : a)
        for (const auto& [j, cj] : b)
            out = lin_add(field_, out, lin_scale(field_, mult(i, j), field_.mul(ci, cj)));
    return out;
}

Lin Algebra::path_normal_form(int source, const ArrowPath& p) const {
    int tgt = 0;
    if (!path_composable(quiver_, source, p, &tgt)) throw error("path is not composable");
    if (static_cast<int>(p.size()) > bound_) return {};
    return normal_form_[path_ids_.at({source, p})];
}

AlgebraPtr Algebra::opposite() const {
    std::lock_guard<std::mutex> lock(op_mutex_);
    if (auto sp = opposite_.lock()) return sp;
    std::vector<Relation> rrels;
    for (const auto& r : relations_) {
        Relation nr;
        for (const auto& t : r.terms) {
            RelationTerm nt;
            nt.coeff = t.coeff;
            nt.path.assign(t.path.rbegin(), t.path.rend());
            nr.terms.push_back(std::move(nt));
        }
        rrels.push_back(std::move(nr));
    }
    AlgebraPtr op = build(field_, quiver_.reversed(), std::move(rrels), bound_,
                          name_.empty() ? "" : name_ + "^op");
    // the two algebras deliberately keep each other alive so that
    // opposite(opposite(a)) stays pointer-identical to a
    opposite_ = op;
    opposite_keepalive_ = op;
    {
        auto self = shared_from_this();
        std::lock_guard<std::mutex> lock2(op->op_mutex_);
        op->opposite_ = self;
        op->opposite_keepalive_ = self;
    }
    return op;
}

std::string Algebra::describe() const {
    std::ostringstream os;
    os << "algebra " << (name_.empty() ? std::string("<unnamed>") : name_) << "\n";
    os << "field " << field_.characteristic() << "\n";
    os << "vertices " << quiver_.vertex_count() << ", arrows " << quiver_.arrow_count()
       << ", relations " << relations_.size() << "\n";
    os << "dimension " << dimension() << "\n";
    os << "basis by (source,target):\n";
    for (int s = 0; s < quiver_.vertex_count(); ++s)
        for (int t = 0; t < quiver_.vertex_count(); ++t) {
            const auto& blk = basis_between(s, t);
            if (blk.empty()) continue;
            os << "  " << quiver_.vertices[s] << " -> " << quiver_.vertices[t] << ": ";
            for (std::size_t k = 0; k < blk.size(); ++k) {
                if (k) os << ", ";
                const BasisPath& p = basis_[blk[k]];
                if (p.arrows.empty()) os << "e_" << quiver_.vertices[p.source];
                else {
                    for (std::size_t a = 0; a < p.arrows.size(); ++a) {
                        if (a) os << "*";
                        os << quiver_.arrows[p.arrows[a]].name;
                    }
                }
            }
            os << "\n";
        }
    return os.str();
}

Lin StructuredAlgebra::product(const Lin& a, const Lin& b) const {
    Lin out;
    for (const auto& [i, ci] : a)
        for (const auto& [j, cj] : b)
            out = lin_add(field, out, lin_scale(field, mult[static_cast<std::size_t>(i) * dim + j],
                                                field.mul(ci, cj)));
    return out;
}

namespace {

Matrix lin_rows_to_matrix(const Field& f, const std::vector<Lin>& rows, int dim) {
    Matrix m(f, rows.size(), dim);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [k, c] : rows[r]) m.at(r, k) = c;
    return m;
}

Lin matrix_row_to_lin(const Field& f, const Matrix& m, std::size_t r) {
    Lin out;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!f.is_zero(m.at(r, c))) out.emplace_back(static_cast<int>(c), m.at(r, c));
    return out;
}

/* rows of big not contained in span(small) extended to a basis of big's span */
std::vector<Lin> complement_basis(const Field& f, const Matrix& small, const Matrix& big) {
    Matrix acc = row_space_basis(small);
    std::vector<Lin> extra;
    for (std::size_t r = 0; r < big.rows(); ++r) {
        Matrix v = big.row(r);
        if (row_space_contains(acc, v)) continue;
        acc = row_space_basis(acc.vstack(v));
        extra.push_back(matrix_row_to_lin(f, v, 0));
    }
    return extra;
}

}  // namespace

Presentation extract_presentation(const StructuredAlgebra& b, Field field,
                                  const std::vector<std::string>& vertex_names,
                                  std::string name) {
    const Field& f = b.field;
    const int nv = static_cast<int>(b.idempotents.size());

    // radical powers
    Matrix rad = row_space_basis(lin_rows_to_matrix(f, b.radical_span, b.dim));
    std::vector<Matrix> rad_pow{rad};  // rad_pow[k] spans rad^{k+1}
    while (rad_pow.back().rows() > 0) {
        std::vector<Lin> prods;
        for (std::size_t i = 0; i < rad_pow.back().rows(); ++i)
            for (std::size_t j = 0; j < rad.rows(); ++j)
                prods.push_back(b.product(matrix_row_to_lin(f, rad_pow.back(), i),
                                          matrix_row_to_lin(f, rad, j)));
        rad_pow.push_back(row_space_basis(lin_rows_to_matrix(f, prods, b.dim)));
        if (rad_pow.size() > static_cast<std::size_t>(b.dim) + 2)
            throw error("radical span is not nilpotent");
    }
    int bound = std::max<int>(2, static_cast<int>(rad_pow.size()));  // rad^bound = 0

    // arrows: basis of e_u rad e_w modulo e_u rad^2 e_w
    Quiver q;
    q.vertices = vertex_names;
    std::vector<Lin> lifts;
    auto block_rows = [&](const Matrix& space, int u, int w) {
        std::vector<Lin> rows;
        for (std::size_t r = 0; r < space.rows(); ++r) {
            Lin x = b.product(b.idempotents[u],
                              b.product(matrix_row_to_lin(f, space, r), b.idempotents[w]));
            if (!x.empty()) rows.push_back(std::move(x));
        }
        return lin_rows_to_matrix(f, rows, b.dim);
    };
    Matrix rad2 = rad_pow.size() > 1 ? rad_pow[1] : Matrix(f, 0, b.dim);
    for (int u = 0; u < nv; ++u)
        for (int w = 0; w < nv; ++w) {
            auto extra = complement_basis(f, block_rows(rad2, u, w), block_rows(rad, u, w));
            for (std::size_t k = 0; k < extra.size(); ++k) {
                Arrow ar;
                ar.name = "x" + std::to_string(u) + "_" + std::to_string(w) +
                          (extra.size() > 1 ? "_" + std::to_string(k) : "");
                ar.source = u;
                ar.target = w;
                q.arrows.push_back(ar);
                lifts.push_back(extra[k]);
            }
        }

    // evaluate all paths of length <= bound
    struct PathEval {
        BasisPath path;
        Lin value;
    };
    std::vector<PathEval> evals;
    for (int v = 0; v < nv; ++v) evals.push_back({BasisPath{v, v, {}}, b.idempotents[v]});
    std::size_t level_begin = 0;
    for (int len = 1; len <= bound; ++len) {
        std::size_t level_end = evals.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (int ai = 0; ai < q.arrow_count(); ++ai)
                if (q.arrows[ai].source == evals[i].path.target) {
                    PathEval pe;
                    pe.path = evals[i].path;
                    pe.path.arrows.push_back(ai);
                    pe.path.target = q.arrows[ai].target;
                    pe.value = b.product(evals[i].value, lifts[ai]);
                    evals.push_back(std::move(pe));
                }
        level_begin = level_end;
        if (evals.size() > 200000) throw error("presentation extraction path explosion");
    }
    std::sort(evals.begin(), evals.end(),
              [](const PathEval& a, const PathEval& c) { return path_less(a.path, c.path); });

    // kernel of the evaluation map, per (source,target) block, echelonized so
    // pivots sit on the earliest path
    std::vector<Relation> rels;
    for (int s = 0; s < nv; ++s)
        for (int t = 0; t < nv; ++t) {
            std::vector<int> idx;
            for (std::size_t i = 0; i < evals.size(); ++i)
                if (evals[i].path.source == s && evals[i].path.target == t)
                    idx.push_back(static_cast<int>(i));
            if (idx.empty()) continue;
            Matrix im(f, idx.size(), b.dim);
            for (std::size_t r = 0; r < idx.size(); ++r)
                for (const auto& [k, c] : evals[idx[r]].value) im.at(r, k) = c;
            Matrix ker = row_space_basis(left_kernel_basis(im));
            for (std::size_t r = 0; r < ker.rows(); ++r) {
                Relation rel;
                for (std::size_t c = 0; c < ker.cols(); ++c) {
                    if (f.is_zero(ker.at(r, c))) continue;
                    const BasisPath& p = evals[idx[c]].path;
                    if (p.length() < 2)
                        throw error("internal: presentation kernel hits a short path");
                    rel.terms.push_back(RelationTerm{ker.at(r, c), p.arrows});
                }
                rels.push_back(std::move(rel));
            }
        }

    Presentation out;
    out.algebra = Algebra::build(field, q, rels, bound, std::move(name));
    out.arrow_lifts = lifts;
    if (out.algebra->dimension() != b.dim)
        throw error("presentation extraction dimension mismatch");
    out.basis_image = Matrix(f, out.algebra->dimension(), b.dim);
    std::map<std::pair<int, ArrowPath>, const Lin*> value_of;
    for (auto& pe : evals) value_of[{pe.path.source, pe.path.arrows}] = &pe.value;
    for (int i = 0; i < out.algebra->dimension(); ++i) {
        const BasisPath& p = out.algebra->basis()[i];
        const Lin* val = value_of.at({p.source, p.arrows});
        for (const auto& [k, c] : *val) out.basis_image.at(i, k) = c;
    }
    if (rank(out.basis_image) != static_cast<std::size_t>(b.dim))
        throw error("presentation extraction is not an isomorphism");
    return out;
}

VertexQuotient quotient_by_vertices(const AlgebraPtr& a, const std::vector<int>& killed) {
    const Field& f = a->field();
    const int dim = a->dimension();
    std::vector<bool> kill(a->vertex_count(), false);
    for (int v : killed) kill[v] = true;

    // span of the ideal generated by the killed idempotents
    std::vector<Lin> gens;
    for (int i = 0; i < dim; ++i) {
        if (!kill[a->basis()[i].target]) continue;
        for (int j = 0; j < dim; ++j) {
            if (a->basis()[j].source != a->basis()[i].target) continue;
            Lin prod = a->mult(i, j);
            if (!prod.empty()) gens.push_back(std::move(prod));
        }
    }
    RrefResult ideal = rref(lin_rows_to_matrix(f, gens, dim));
    std::vector<int> piv_row(dim, -1);
    for (std::size_t r = 0; r < ideal.pivots.size(); ++r) piv_row[ideal.pivots[r]] = static_cast<int>(r);

    std::vector<int> keep;  // original basis indices representing quotient classes
    std::vector<int> class_of(dim, -1);
    for (int i = 0; i < dim; ++i)
        if (piv_row[i] < 0) {
            class_of[i] = static_cast<int>(keep.size());
            keep.push_back(i);
        }
    auto reduce = [&](const Lin& x) {
        // eliminate pivot coordinates, read off the rest
        std::vector<Scalar> v(dim, f.zero());
        for (const auto& [k, c] : x) v[k] = c;
        for (std::size_t r = 0; r < ideal.pivots.size(); ++r) {
            Scalar c = v[ideal.pivots[r]];
            if (f.is_zero(c)) continue;
            for (int k = 0; k < dim; ++k)
                v[k] = f.sub(v[k], f.mul(c, ideal.reduced.at(r, k)));
        }
        Lin out;
        for (int i = 0; i < dim; ++i)
            if (!f.is_zero(v[i])) out.emplace_back(class_of[i], v[i]);
        return out;
    };

    StructuredAlgebra B;
    B.field = f;
    B.dim = static_cast<int>(keep.size());
    B.mult.assign(static_cast<std::size_t>(B.dim) * B.dim, Lin{});
    for (int i = 0; i < B.dim; ++i)
        for (int j = 0; j < B.dim; ++j)
            B.mult[static_cast<std::size_t>(i) * B.dim + j] = reduce(a->mult(keep[i], keep[j]));

    VertexQuotient out;
    std::vector<std::string> names;
    for (int v = 0; v < a->vertex_count(); ++v)
        if (!kill[v]) {
            Lin e = reduce(Lin{{a->unit_index(v), f.one()}});
            if (e.empty()) throw error("internal: surviving idempotent died in the quotient");
            B.idempotents.push_back(std::move(e));
            names.push_back(a->quiver().vertices[v]);
            out.surviving.push_back(v);
        }
    for (int i = 0; i < dim; ++i)
        if (a->basis()[i].length() >= 1) {
            Lin r = reduce(Lin{{i, f.one()}});
            if (!r.empty()) B.radical_span.push_back(std::move(r));
        }

    Presentation pres = extract_presentation(
        B, f, names, a->name().empty() ? "" : a->name() + "/(e)");
    out.algebra = pres.algebra;
    for (const auto& lift : pres.arrow_lifts) {
        Lin elem;  // lift back to the original algebra via class representatives
        for (const auto& [cls, c] : lift) elem.emplace_back(keep[cls], c);
        std::sort(elem.begin(), elem.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        out.arrow_elements.push_back(std::move(elem));
    }
    return out;
}

namespace {

struct IsoSearch {
    const Algebra& a;
    const Algebra& b;
    std::vector<int> vmap;                      // a-vertex -> b-vertex
    std::vector<int> amap;                      // a-arrow -> b-arrow
    std::vector<std::vector<int>> b_arrows_between;

    bool block_dims_ok(int va, int vb) const {
        const int na = a.vertex_count();
        for (int w = 0; w < na; ++w) {
            if (vmap[w] < 0) continue;
            if (a.basis_between(va, w).size() != b.basis_between(vb, vmap[w]).size()) return false;
            if (a.basis_between(w, va).size() != b.basis_between(vmap[w], vb).size()) return false;
        }
        return a.basis_between(va, va).size() == b.basis_between(vb, vb).size();
    }

    bool relations_match() const {
        const Field& f = b.field();
        // scalar per a-arrow, propagated through binomial relations
        std::vector<std::optional<Scalar>> lambda(a.quiver().arrow_count());
        auto reduce_in_b = [&](const ArrowPath& pa) {
            ArrowPath pb;
            for (int ai : pa) pb.push_back(amap[ai]);
            int src = b.quiver().arrows[pb[0]].source;
            return b.path_normal_form(src, pb);
        };
        struct Constraint {
            std::vector<int> up;    // arrows of the first path
            std::vector<int> down;  // arrows of the second path
            Scalar ratio;           // prod(lambda up) / prod(lambda down) must equal ratio
        };
        std::vector<Constraint> constraints;
        for (const auto& rel : a.relations()) {
            if (rel.terms.size() == 2) {
                Lin n0 = reduce_in_b(rel.terms[0].path);
                Lin n1 = reduce_in_b(rel.terms[1].path);
                if (n0.empty() && n1.empty()) continue;
                if (n0.empty() || n1.empty()) return false;
                // need c0*mu0*n0 + c1*mu1*n1 = 0 with nonzero mu, so n0 || n1
                if (n0.size() != n1.size()) return false;
                Scalar gamma = f.zero();
                for (std::size_t k = 0; k < n0.size(); ++k) {
                    if (n0[k].first != n1[k].first) return false;
                    Scalar g = f.div(n1[k].second, n0[k].second);
                    if (k == 0) gamma = g;
                    else if (!(g == gamma)) return false;
                }
                // mu0/mu1 = -c1*gamma/c0
                Constraint c;
                c.up = rel.terms[0].path;
                c.down = rel.terms[1].path;
                c.ratio = f.div(f.mul(f.neg(rel.terms[1].coeff), gamma), rel.terms[0].coeff);
                constraints.push_back(std::move(c));
            }
        }
        // propagate: solve constraints with exactly one unknown arrow of net
        // exponent +-1; seed stuck unknowns with 1
        auto net_exponents = [&](const Constraint& c) {
            std::map<int, int> e;
            for (int ai : c.up) e[ai]++;
            for (int ai : c.down) e[ai]--;
            return e;
        };
        bool progress = true;
        std::vector<bool> done(constraints.size(), false);
        while (progress) {
            progress = false;
            for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
                if (done[ci]) continue;
                auto exps = net_exponents(constraints[ci]);
                int unknown = -1, uexp = 0, nunknown = 0;
                Scalar known = f.one();
                bool solvable = true;
                for (const auto& [ai, e] : exps) {
                    if (e == 0) continue;
                    if (lambda[ai]) {
                        Scalar l = *lambda[ai];
                        for (int k = 0; k < std::abs(e); ++k)
                            known = e > 0 ? f.mul(known, l) : f.div(known, l);
                    } else {
                        ++nunknown;
                        unknown = ai;
                        uexp = e;
                    }
                }
                if (nunknown == 0) {
                    if (!(known == constraints[ci].ratio)) return false;
                    done[ci] = true;
                    progress = true;
                } else if (nunknown == 1 && std::abs(uexp) == 1 && solvable) {
                    Scalar needed = f.div(constraints[ci].ratio, known);
                    lambda[unknown] = uexp == 1 ? needed : f.inv(needed);
                    done[ci] = true;
                    progress = true;
                }
            }
            if (!progress) {
                // seed one unknown appearing in a pending constraint
                for (std::size_t ci = 0; ci < constraints.size() && !progress; ++ci) {
                    if (done[ci]) continue;
                    for (const auto& [ai, e] : net_exponents(constraints[ci]))
                        if (e != 0 && !lambda[ai]) {
                            lambda[ai] = f.one();
                            progress = true;
                            break;
                        }
                }
                if (!progress) break;
            }
        }
        for (auto& l : lambda)
            if (!l) l = f.one();
        // final check: every relation of a maps into the ideal of b
        for (const auto& rel : a.relations()) {
            Lin total;
            for (const auto& t : rel.terms) {
                Scalar mu = t.coeff;
                for (int ai : t.path) mu = f.mul(mu, *lambda[ai]);
                total = lin_add(f, total, lin_scale(f, reduce_in_b(t.path), mu));
            }
            if (!total.empty()) return false;
        }
        return true;
    }

    bool assign_arrows(std::size_t group_start) {
        // arrows grouped by (source,target) after vertex map; match within groups
        const auto& qa = a.quiver();
        const auto& qb = b.quiver();
        std::map<std::pair<int, int>, std::vector<int>> ga, gb;
        for (int i = 0; i < qa.arrow_count(); ++i)
            ga[{qa.arrows[i].source, qa.arrows[i].target}].push_back(i);
        for (int i = 0; i < qb.arrow_count(); ++i)
            gb[{qb.arrows[i].source, qb.arrows[i].target}].push_back(i);
        (void)group_start;
        std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
        for (const auto& [key, list] : ga) {
            auto it = gb.find({vmap[key.first], vmap[key.second]});
            if (it == gb.end() || it->second.size() != list.size()) return false;
            groups.emplace_back(list, it->second);
        }
        std::size_t total_b = 0;
        for (const auto& [key, list] : gb) total_b += list.size();
        if (total_b != static_cast<std::size_t>(qa.arrow_count())) return false;

        amap.assign(qa.arrow_count(), -1);
        // try all permutations within each group (multiplicities are tiny)
        std::function<bool(std::size_t)> rec = [&](std::size_t gi) -> bool {
            if (gi == groups.size()) return relations_match();
            std::vector<int> perm = groups[gi].second;
            std::sort(perm.begin(), perm.end());
            do {
                for (std::size_t k = 0; k < perm.size(); ++k) amap[groups[gi].first[k]] = perm[k];
                if (rec(gi + 1)) return true;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return false;
        };
        return rec(0);
    }

    bool assign_vertices(int va) {
        if (va == a.vertex_count()) return assign_arrows(0);
        for (int vb = 0; vb < b.vertex_count(); ++vb) {
            if (std::find(vmap.begin(), vmap.end(), vb) != vmap.end()) continue;
            vmap[va] = vb;
            if (block_dims_ok(va, vb) && assign_vertices(va + 1)) return true;
            vmap[va] = -1;
        }
        return false;
    }
};

}  // namespace

bool algebra_isomorphic(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a->field() != b->field()) return false;
    if (a->dimension() != b->dimension()) return false;
    if (a->vertex_count() != b->vertex_count()) return false;
    if (a->quiver().arrow_count() != b->quiver().arrow_count()) return false;
    if (a->vertex_count() > 8) throw error("isomorphism search limited to 8 vertices");
    IsoSearch search{*a, *b, std::vector<int>(a->vertex_count(), -1), {}, {}};
    return search.assign_vertices(0);
}

}  // namespace qha
