#include "doctest.h"

#include <random>

#include "qha/matrix.hpp"
#include "qha/poly.hpp"

using namespace qha;

namespace {

Matrix make(const Field& f, std::size_t r, std::size_t c, std::vector<long long> vals) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = f.from_int(vals[i * c + j]);
    return m;
}

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& gen) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.at(i, j) = f.from_int(static_cast<long long>(gen() % 19) - 9);
    return m;
}

}  // namespace

TEST_CASE("field basics") {
    Field f(FieldSpec{101});
    CHECK(f.add(f.from_int(100), f.one()) == f.zero());
    CHECK(f.mul(f.inv(f.from_int(7)), f.from_int(7)) == f.one());
    CHECK_THROWS_AS(Field(FieldSpec{100}), error);

    Field q(FieldSpec{0});
    Scalar half = q.from_fraction(1, 2);
    CHECK(q.add(half, half) == q.one());
    CHECK(q.to_string(q.from_fraction(-2, 4)) == "-1/2");
    CHECK(q.parse("3/4") == q.from_fraction(3, 4));
}

TEST_CASE("rref identity and zero") {
    Field f(FieldSpec{101});
    Matrix id = Matrix::identity(f, 2);
    auto r = rref(id);
    CHECK(r.reduced == id);
    CHECK(r.rank == 2);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});

    Matrix z(f, 3, 3);
    auto rz = rref(z);
    CHECK(rz.rank == 0);
    CHECK(rz.pivots.empty());
    CHECK(rz.reduced == z);
}

TEST_CASE("rref over GF(5) with dependent rows") {
    Field f(FieldSpec{5});
    Matrix m = make(f, 2, 2, {1, 2, 2, 4});
    auto r = rref(m);
    CHECK(r.rank == 1);
    CHECK(r.reduced == make(f, 2, 2, {1, 2, 0, 0}));
}

TEST_CASE("kernel bases") {
    Field f(FieldSpec{101});
    CHECK(kernel_basis(Matrix::identity(f, 4)).rows() == 0);
    Matrix z(f, 3, 3);
    CHECK(kernel_basis(z).rows() == 3);

    Field f2(FieldSpec{2});
    Matrix m = make(f2, 1, 2, {1, 1});
    Matrix k = kernel_basis(m);
    REQUIRE(k.rows() == 1);
    CHECK(k == make(f2, 1, 2, {1, 1}));
}

TEST_CASE("solve") {
    Field f(FieldSpec{7});
    Matrix m = make(f, 2, 2, {1, 2, 0, 1});
    Matrix rhs = make(f, 2, 1, {3, 4});
    auto x = solve(m, rhs);
    REQUIRE(x.has_value());
    CHECK(*x == make(f, 2, 1, {2, 4}));
    CHECK(m * *x == rhs);

    Matrix z(f, 2, 2);
    CHECK_FALSE(solve(z, rhs).has_value());
    CHECK(solve(Matrix::identity(f, 2), rhs) == rhs);
    CHECK_THROWS_AS(solve(m, make(f, 1, 1, {1})), error);
}

TEST_CASE("rank-nullity and kernel orthogonality on random matrices") {
    for (std::uint64_t p : {2ull, 101ull, 0ull}) {
        Field f(FieldSpec{p});
        std::mt19937_64 gen(42);
        for (int t = 0; t < 30; ++t) {
            std::size_t r = 1 + gen() % 6, c = 1 + gen() % 6;
            Matrix m = random_matrix(f, r, c, gen);
            Matrix k = kernel_basis(m);
            CHECK(rank(m) + k.rows() == c);
            CHECK((m * k.transposed()).is_zero());
        }
    }
}

TEST_CASE("solve then substitute on random consistent systems") {
    Field f(FieldSpec{101});
    std::mt19937_64 gen(7);
    for (int t = 0; t < 30; ++t) {
        std::size_t r = 1 + gen() % 5, c = 1 + gen() % 5;
        Matrix m = random_matrix(f, r, c, gen);
        Matrix x0 = random_matrix(f, c, 2, gen);
        Matrix rhs = m * x0;
        auto x = solve(m, rhs);
        REQUIRE(x.has_value());
        CHECK(m * *x == rhs);
    }
}

TEST_CASE("minimal polynomial and coprime split") {
    Field f(FieldSpec{101});
    // diag(1,1,2) -> (x-1)(x-2)
    Matrix d(f, 3, 3);
    d.at(0, 0) = f.one();
    d.at(1, 1) = f.one();
    d.at(2, 2) = f.from_int(2);
    Poly mp = minimal_polynomial(d);
    CHECK(poly_deg(mp) == 2);
    CHECK(f.is_zero(poly_eval(f, mp, f.one())));
    CHECK(f.is_zero(poly_eval(f, mp, f.from_int(2))));

    auto split = poly_coprime_split(f, mp, 1);
    CHECK(split.factors.size() == 2);
    CHECK_FALSE(split.incomplete);

    // nilpotent Jordan block -> x^2, primary at 0
    Matrix n(f, 2, 2);
    n.at(0, 1) = f.one();
    Poly mpn = minimal_polynomial(n);
    auto spn = poly_coprime_split(f, mpn, 1);
    CHECK(spn.primary_linear);
    CHECK(spn.lambda == f.zero());
}
