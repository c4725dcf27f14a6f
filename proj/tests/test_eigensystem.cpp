#include <random>

#include "doctest.h"
#include "endo/eigensystem.hpp"
#include "endo/verify.hpp"

using namespace endo;

namespace {

Matrix diag(const CtxPtr& ctx, const std::vector<Scalar>& vals) {
    Matrix m(ctx, static_cast<int>(vals.size()), static_cast<int>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = vals[i];
    return m;
}

const Eigensystem* find_system(const std::vector<Eigensystem>& list,
                               const std::map<std::string, Scalar>& values) {
    Eigensystem probe{values, 1};
    for (const auto& e : list) {
        bool match = e.values.size() == values.size();
        for (const auto& [label, v] : values)
            if (!e.values.count(label) || !equal_at_precision(e.values.at(label), v)) match = false;
        if (match) return &e;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("common eigensystems") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar one = Scalar::one(ctx), two = Scalar::from_integer(ctx, 2),
           three = Scalar::from_integer(ctx, 3);
    Scalar p = Scalar::p_power(ctx, HalfInt::whole(1));

    SUBCASE("two diagonal operators") {
        std::map<std::string, Matrix> ops;
        ops.emplace("A", diag(ctx, {one, two}));
        ops.emplace("B", diag(ctx, {three, three}));
        FiniteModule m = FiniteModule::make(ctx, 2, std::move(ops), {});
        auto systems = common_eigensystems(m, {"A", "B"});
        REQUIRE(systems.size() == 2);
        auto* s1 = find_system(systems, {{"A", one}, {"B", three}});
        auto* s2 = find_system(systems, {{"A", two}, {"B", three}});
        REQUIRE(s1 != nullptr);
        REQUIRE(s2 != nullptr);
        CHECK(s1->multiplicity == 1);
        CHECK(s2->multiplicity == 1);
    }

    SUBCASE("semisimple operator with char poly (T-1)^2 (T-p)") {
        std::map<std::string, Matrix> ops;
        ops.emplace("A", diag(ctx, {one, one, p}));
        FiniteModule m = FiniteModule::make(ctx, 3, std::move(ops), {});
        auto systems = common_eigensystems(m, {"A"});
        REQUIRE(systems.size() == 2);
        auto* at1 = find_system(systems, {{"A", one}});
        auto* atp = find_system(systems, {{"A", p}});
        REQUIRE(at1 != nullptr);
        REQUIRE(atp != nullptr);
        CHECK(at1->multiplicity == 2);
        CHECK(atp->multiplicity == 1);
    }

    SUBCASE("empty label set is the vacuous system") {
        std::map<std::string, Matrix> ops;
        ops.emplace("A", diag(ctx, {one, two, three}));
        FiniteModule m = FiniteModule::make(ctx, 3, std::move(ops), {});
        auto systems = common_eigensystems(m, {});
        REQUIRE(systems.size() == 1);
        CHECK(systems[0].multiplicity == 3);
        CHECK(systems[0].values.empty());
    }

    SUBCASE("non-semisimple operator is rejected") {
        Matrix jordan(ctx, 2, 2);
        jordan.at(0, 0) = one;
        jordan.at(0, 1) = one;
        jordan.at(1, 1) = one;
        std::map<std::string, Matrix> ops;
        ops.emplace("A", std::move(jordan));
        FiniteModule m = FiniteModule::make(ctx, 2, std::move(ops), {});
        CHECK_THROWS_AS(common_eigensystems(m, {"A"}), module_error);
    }

    SUBCASE("eigenvalue outside the scalar field is reported") {
        Matrix rot(ctx, 2, 2);  // companion of T^2 - 2, 2 not a square mod 5
        rot.at(0, 1) = Scalar::from_integer(ctx, 2);
        rot.at(1, 0) = one;
        std::map<std::string, Matrix> ops;
        ops.emplace("A", std::move(rot));
        FiniteModule m = FiniteModule::make(ctx, 2, std::move(ops), {});
        CHECK_THROWS_AS(common_eigensystems(m, {"A"}), outside_scalar_field);
    }

    SUBCASE("non-commuting operators are rejected at construction") {
        Matrix a(ctx, 2, 2), b(ctx, 2, 2);
        a.at(0, 1) = one;
        b.at(1, 0) = one;
        std::map<std::string, Matrix> ops;
        ops.emplace("A", std::move(a));
        ops.emplace("B", std::move(b));
        CHECK_THROWS_AS(FiniteModule::make(ctx, 2, std::move(ops), {}), module_error);
    }
}

TEST_CASE("lift eigensystem") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar one = Scalar::one(ctx), two = Scalar::from_integer(ctx, 2);

    SUBCASE("identity sub-operator lifts to every extension") {
        std::map<std::string, Matrix> ops;
        ops.emplace("I", Matrix::identity(ctx, 2));
        ops.emplace("A", diag(ctx, {one, two}));
        FiniteModule m = FiniteModule::make(ctx, 2, std::move(ops), {"I"});
        auto lifts = lift_eigensystem(m, {{"I", one}});
        REQUIRE(lifts.size() == 2);
        CHECK(find_system(lifts, {{"I", one}, {"A", one}}) != nullptr);
        CHECK(find_system(lifts, {{"I", one}, {"A", two}}) != nullptr);
    }

    SUBCASE("one-dimensional eigenspace forces a unique extension") {
        std::map<std::string, Matrix> ops;
        ops.emplace("S", diag(ctx, {one, two}));
        ops.emplace("A", diag(ctx, {Scalar::from_integer(ctx, 7), Scalar::from_integer(ctx, 3)}));
        FiniteModule m = FiniteModule::make(ctx, 2, std::move(ops), {"S"});
        auto lifts = lift_eigensystem(m, {{"S", two}});
        REQUIRE(lifts.size() == 1);
        CHECK(equal_at_precision(lifts[0].values.at("A"), Scalar::from_integer(ctx, 3)));
        CHECK(lifts[0].multiplicity == 1);
    }

    SUBCASE("a non-eigensystem is rejected") {
        std::map<std::string, Matrix> ops;
        ops.emplace("S", diag(ctx, {one, two}));
        FiniteModule m = FiniteModule::make(ctx, 2, std::move(ops), {"S"});
        CHECK_THROWS_AS(lift_eigensystem(m, {{"S", Scalar::from_integer(ctx, 13)}}),
                        module_error);
    }
}

TEST_CASE("tensor eigensystems") {
    auto ctx = PrecisionCtx::make(5, 40);
    Scalar one = Scalar::one(ctx), two = Scalar::from_integer(ctx, 2),
           three = Scalar::from_integer(ctx, 3);

    SUBCASE("worked example {a:1, b:1} x {c:2}") {
        std::map<std::string, Matrix> ops1, ops2;
        ops1.emplace("A", diag(ctx, {two, three}));
        ops2.emplace("C", diag(ctx, {one, one}));
        FiniteModule m1 = FiniteModule::make(ctx, 2, std::move(ops1), {});
        FiniteModule m2 = FiniteModule::make(ctx, 2, std::move(ops2), {});
        auto systems = tensor_eigensystems(m1, m2);
        REQUIRE(systems.size() == 2);
        auto* sa = find_system(systems, {{"A", two}, {"C", one}});
        auto* sb = find_system(systems, {{"A", three}, {"C", one}});
        REQUIRE(sa != nullptr);
        REQUIRE(sb != nullptr);
        CHECK(sa->multiplicity == 2);
        CHECK(sb->multiplicity == 2);
    }

    SUBCASE("one-dimensional factors multiply values") {
        std::map<std::string, Matrix> ops1, ops2;
        ops1.emplace("A", diag(ctx, {two}));
        ops2.emplace("B", diag(ctx, {three}));
        FiniteModule m1 = FiniteModule::make(ctx, 1, std::move(ops1), {});
        FiniteModule m2 = FiniteModule::make(ctx, 1, std::move(ops2), {});
        auto systems = tensor_eigensystems(m1, m2);
        REQUIRE(systems.size() == 1);
        CHECK(equal_at_precision(systems[0].values.at("A"), two));
        CHECK(equal_at_precision(systems[0].values.at("B"), three));
        CHECK(systems[0].multiplicity == 1);
    }

    SUBCASE("label collision is rejected") {
        std::map<std::string, Matrix> ops1, ops2;
        ops1.emplace("A", diag(ctx, {two}));
        ops2.emplace("A", diag(ctx, {three}));
        FiniteModule m1 = FiniteModule::make(ctx, 1, std::move(ops1), {});
        FiniteModule m2 = FiniteModule::make(ctx, 1, std::move(ops2), {});
        CHECK_THROWS_AS(tensor_eigensystems(m1, m2), std::invalid_argument);
    }
}

TEST_CASE("slope submodule") {
    auto ctx = PrecisionCtx::make(5, 60);
    Scalar one = Scalar::one(ctx);
    Scalar p = Scalar::p_power(ctx, HalfInt::whole(1));

    std::map<std::string, Matrix> ops;
    ops.emplace("u0", diag(ctx, {one, p, p * p}));
    FiniteModule m = FiniteModule::make(ctx, 3, std::move(ops), {});

    SUBCASE("nu = 1 keeps the slope <= 1 block") {
        FiniteModule sub = slope_submodule(m, "u0", HalfInt::whole(1));
        CHECK(sub.dim() == 2);
        SlopePoly cp = char_poly(sub.op("u0"));
        // (T - 1)(T - p) = T^2 - (1+p) T + p
        CHECK(equal_at_precision(cp.coeff(0), p));
        CHECK(equal_at_precision(cp.coeff(1), -(one + p)));
    }

    SUBCASE("nu above every slope keeps everything") {
        CHECK(slope_submodule(m, "u0", HalfInt::whole(5)).dim() == 3);
    }

    SUBCASE("nu below every slope keeps nothing") {
        CHECK(slope_submodule(m, "u0", HalfInt::make_twice(-1)).dim() == 0);
    }
}

TEST_CASE("local piece on a conjugated planted module") {
    auto ctx = PrecisionCtx::make(3, 80);
    std::mt19937_64 rng(31);
    Scalar one = Scalar::one(ctx);
    Scalar p = Scalar::p_power(ctx, HalfInt::whole(1));

    std::map<std::string, std::vector<Scalar>> eig;
    eig.emplace("u0", std::vector<Scalar>{one, Scalar::from_integer(ctx, 2) * p, p * p});
    eig.emplace("T1", std::vector<Scalar>{Scalar::from_integer(ctx, 4), one, one});
    eig.emplace("T2", std::vector<Scalar>{one, one, Scalar::from_integer(ctx, 2)});
    FiniteModule m = verify::planted_module(ctx, eig, {}, rng);

    LocalPiece piece = local_piece(m, "u0", HalfInt::whole(1));
    CHECK(piece.total_multiplicity() == 2);
    REQUIRE(piece.systems.size() == 2);
    for (const auto& s : piece.systems)
        CHECK(valuation(s.values.at("u0")) <= HalfInt::whole(1));
    CHECK(find_system(piece.systems, {{"u0", one}, {"T1", Scalar::from_integer(ctx, 4)}, {"T2", one}}) !=
          nullptr);

    LocalPiece everything = local_piece(m, "u0", HalfInt::whole(9));
    CHECK(everything.total_multiplicity() == 3);
}
