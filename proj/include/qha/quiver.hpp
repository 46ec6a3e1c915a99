/* Quivers, paths and admissible relations. Path composition is
 * diagrammatic throughout: p*q means "p then q" and is defined when
 * target(p) = source(q). */
#pragma once

#include <string>
#include <vector>

#include "qha/field.hpp"

namespace qha {

struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
};

struct Quiver {
    std::vector<std::string> vertices;  // position = vertex id
    std::vector<Arrow> arrows;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int arrow_count() const { return static_cast<int>(arrows.size()); }

    int vertex_index(const std::string& name) const {
        for (int i = 0; i < vertex_count(); ++i)
            if (vertices[i] == name) return i;
        return -1;
    }
    int arrow_index(const std::string& name) const {
        for (int i = 0; i < arrow_count(); ++i)
            if (arrows[i].name == name) return i;
        return -1;
    }

    void validate() const;

    /* Arrows reversed, same names and vertex set. */
    Quiver reversed() const {
        Quiver q = *this;
        for (auto& a : q.arrows) std::swap(a.source, a.target);
        return q;
    }
};

/* Sequence of arrow indices, composable left to right. */
using ArrowPath = std::vector<int>;

struct RelationTerm {
    Scalar coeff;
    ArrowPath path;
};

/* A linear combination of parallel paths of length >= 2, read as "= 0". */
struct Relation {
    std::vector<RelationTerm> terms;
};

}  // namespace qha
