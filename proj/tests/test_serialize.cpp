#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "zorn/serialize.hpp"

using namespace zorn;

namespace {

// A value with every structural feature: both rings, negative entries, a
// magnitude past the 2^53 number cap.
ZornMatrix wide_matrix() {
    const BigInt huge = (BigInt(1) << 80) + 17;
    return zmat(huge, {-3, 0, 7}, {2, -huge, 0}, 5);
}

ExprPtr sample_tree() {
    return mul(conj(generator(GeneratorTag::lower({0, 6, 0})),
                    leaf(GeneratorTag::upper({2, 0, 4}))),
               mul(leaf(GeneratorTag::S(2, -3)), leaf(GeneratorTag::T(1))));
}

}  // namespace

// ============================================================================
// Integers
// ============================================================================

TEST_CASE("integers below the cap serialize as JSON numbers", "[serialize]") {
    CHECK(big_to_json(BigInt(0)).is_number_integer());
    CHECK(big_to_json(BigInt(-42)).is_number_integer());
    CHECK(big_to_json((BigInt(1) << 53) - 1).is_number_integer());
    CHECK(big_to_json(BigInt(1) << 53).is_string());
    CHECK(big_to_json(-(BigInt(1) << 53)).is_string());
    CHECK(big_to_json(BigInt(1) << 200).get<std::string>() == (BigInt(1) << 200).str());
}

TEST_CASE("integer round-trips are bit-exact at any magnitude", "[serialize]") {
    std::mt19937_64 rng(0xB16B16ULL);
    std::uniform_int_distribution<std::int64_t> limb(0, (1LL << 62) - 1);
    for (int i = 0; i < 200; ++i) {
        BigInt v = limb(rng);
        for (int j = 0; j < i % 5; ++j) v = (v << 62) + limb(rng);
        if (i % 2) v = -v;
        CHECK(big_from_json(big_to_json(v)) == v);
    }
}

TEST_CASE("integer parsing accepts both encodings", "[serialize]") {
    CHECK(big_from_json(Json(123)) == 123);
    CHECK(big_from_json(Json(-9)) == -9);
    CHECK(big_from_json(Json("123")) == 123);
    CHECK(big_from_json(Json("-900719925474099312345")) == BigInt("-900719925474099312345"));
}

TEST_CASE("malformed integers are rejected", "[serialize]") {
    for (const Json bad : {Json(""), Json("-"), Json("12a3"), Json("--5"), Json(" 7"),
                           Json(3.5), Json(nullptr), Json(true), Json::array()}) {
        CHECK_THROWS_MATCHES(big_from_json(bad), zorn_error,
                             Catch::Matchers::Predicate<zorn_error>([](const zorn_error& e) {
                                 return e.code() == errc::precondition_violated;
                             }));
    }
    CHECK_THROWS_WITH(big_from_json(Json("")),
                      Catch::Matchers::ContainsSubstring("malformed JSON"));
}

// ============================================================================
// Matrices
// ============================================================================

TEST_CASE("matrix serialization uses the documented key order", "[serialize]") {
    CHECK(matrix_to_json(identity()).dump() ==
          R"({"a":1,"x":[0,0,0],"y":[0,0,0],"b":1,"mod":0})");
    CHECK(matrix_to_json(identity(Modulus::mod(7))).dump() ==
          R"({"a":1,"x":[0,0,0],"y":[0,0,0],"b":1,"mod":7})");
}

TEST_CASE("matrix round-trips over both rings", "[serialize]") {
    std::mt19937_64 rng(0x5E41A712EULL);
    std::uniform_int_distribution<std::int64_t> entry(-50, 50), pick_mod(2, 30);
    for (int i = 0; i < 300; ++i) {
        const Modulus mod =
            i % 3 ? Modulus::integers() : Modulus::mod(pick_mod(rng));
        const ZornMatrix m = zmat(entry(rng), {entry(rng), entry(rng), entry(rng)},
                                  {entry(rng), entry(rng), entry(rng)}, entry(rng), mod);
        const Json j = matrix_to_json(m);
        CHECK(matrix_from_json(j) == m);
        CHECK(matrix_to_json(matrix_from_json(j)).dump() == j.dump());
    }
    CHECK(matrix_from_json(matrix_to_json(wide_matrix())) == wide_matrix());
}

TEST_CASE("matrix parsing defaults to the integers and canonicalizes", "[serialize]") {
    const Json no_mod = Json::parse(R"({"a":2,"x":[1,0,0],"y":[0,3,0],"b":-1})");
    CHECK(matrix_from_json(no_mod).mod.is_integers());
    CHECK(matrix_from_json(no_mod).a == 2);

    const Json modular = Json::parse(R"({"a":7,"x":[-1,5,12],"y":[0,0,0],"b":9,"mod":5})");
    const ZornMatrix m = matrix_from_json(modular);
    CHECK(m == zmat(2, {4, 0, 2}, {0, 0, 0}, 4, Modulus::mod(5)));
}

TEST_CASE("matrices with missing or malformed pieces are rejected", "[serialize]") {
    const auto rejects = [](const char* text) {
        CHECK_THROWS_AS(matrix_from_json(Json::parse(text)), zorn_error);
    };
    rejects(R"({"a":1,"x":[0,0,0],"b":1})");          // missing y
    rejects(R"({"a":1,"x":[0,0],"y":[0,0,0],"b":1})");  // short vector
    rejects(R"({"a":1,"x":5,"y":[0,0,0],"b":1})");
    rejects(R"([1,2,3])");
    rejects(R"({"a":"","x":[0,0,0],"y":[0,0,0],"b":1})");
}

// ============================================================================
// Generator tags
// ============================================================================

TEST_CASE("every tag kind round-trips", "[serialize]") {
    const GeneratorTag tags[] = {
        GeneratorTag::upper({1, -2, 3}),
        GeneratorTag::lower({0, 0, (BigInt(1) << 70)}),
        GeneratorTag::S(2, -5),
        GeneratorTag::T(3),
        GeneratorTag::U(1),
        GeneratorTag::embedded_sl2(2, 1, 5, 0, 1),
    };
    for (const GeneratorTag& t : tags) {
        const Json j = tag_to_json(t);
        CHECK(tag_from_json(j) == t);
        CHECK(tag_to_json(tag_from_json(j)).dump() == j.dump());
    }
}

TEST_CASE("tag kinds carry their expected payloads", "[serialize]") {
    const Json s = tag_to_json(GeneratorTag::S(1, 4));
    CHECK(s.at("kind") == "s");
    CHECK(s.at("j") == 1);
    CHECK(s.at("e") == 4);
    const Json sl2 = tag_to_json(GeneratorTag::embedded_sl2(3, 0, 1, -1, 0));
    CHECK(sl2.at("m") == Json::array({0, 1, -1, 0}));
}

TEST_CASE("malformed tags are rejected", "[serialize]") {
    CHECK_THROWS_AS(tag_from_json(Json::parse(R"({"v":[1,0,0]})")), zorn_error);
    CHECK_THROWS_AS(tag_from_json(Json::parse(R"({"kind":"frobenius"})")), zorn_error);
    CHECK_THROWS_AS(tag_from_json(Json::parse(R"({"kind":"sl2","j":1,"m":[1,0,0]})")),
                    zorn_error);
    CHECK_THROWS_AS(tag_from_json(Json(7)), zorn_error);
}

TEST_CASE("sl2 tags parse without validation but refuse to evaluate off SL2",
          "[serialize]") {
    // Parsing is pure data transport; the determinant check lives in evaluation.
    const GeneratorTag t =
        tag_from_json(Json::parse(R"({"kind":"sl2","j":1,"m":[2,0,0,2]})"));
    CHECK(t.kind == TagKind::sl2);
    CHECK_THROWS_MATCHES(generator(t), zorn_error,
                         Catch::Matchers::Predicate<zorn_error>([](const zorn_error& e) {
                             return e.code() == errc::invalid_sl2;
                         }));
}

// ============================================================================
// Expression trees
// ============================================================================

TEST_CASE("trees round-trip with identical serialization and value", "[serialize]") {
    const ExprPtr t = sample_tree();
    const Json j = tree_to_json(t);
    const ExprPtr back = tree_from_json(j);
    CHECK(tree_to_json(back).dump() == j.dump());
    CHECK(eval(back) == eval(t));
    CHECK(tree_size(back) == tree_size(t));

    const Json single = tree_to_json(leaf(GeneratorTag::T(2)));
    CHECK(single.dump() == R"({"leaf":{"kind":"t","j":2}})");
    CHECK(eval(tree_from_json(single)) == generator(GeneratorTag::T(2)));
}

TEST_CASE("deeply nested trees survive the round-trip", "[serialize]") {
    ExprPtr t = leaf(GeneratorTag::upper({1, 0, 0}));
    for (int i = 0; i < 40; ++i)
        t = i % 4 ? mul(t, leaf(GeneratorTag::lower(axis_vec(1 + i % 3))))
                  : conj(generator(GeneratorTag::upper(axis_vec(1 + i % 3, 2))), t);
    const Json j = tree_to_json(t);
    CHECK(tree_to_json(tree_from_json(j)).dump() == j.dump());
    CHECK(eval(tree_from_json(j)) == eval(t));
}

TEST_CASE("malformed trees are rejected", "[serialize]") {
    CHECK_THROWS_AS(tree_to_json(nullptr), zorn_error);
    CHECK_THROWS_AS(tree_from_json(Json(3)), zorn_error);
    CHECK_THROWS_AS(tree_from_json(Json::parse(R"({})")), zorn_error);
    CHECK_THROWS_AS(tree_from_json(Json::parse(R"({"grow":1})")), zorn_error);
    CHECK_THROWS_AS(
        tree_from_json(Json::parse(R"({"mul":[{"leaf":{"kind":"t","j":1}}]})")),
        zorn_error);
    CHECK_THROWS_AS(tree_from_json(Json::parse(R"({"mul":7})")), zorn_error);
}
