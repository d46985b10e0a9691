#pragma once

/**
 * JSON encodings for matrices, generator tags, and expression trees.
 *
 * Integers that fit comfortably in a JSON number (|v| < 2^53) are emitted as
 * numbers; anything larger becomes a decimal string, and the parser accepts
 * either form, so round-trips are bit-exact at any magnitude.
 *
 * Matrix form:  {"a": n, "x": [n,n,n], "y": [n,n,n], "b": n, "mod": n}
 *               with "mod": 0 meaning the integers.
 * Tree form:    {"leaf": tag} | {"mul": [t, t]}
 *               | {"conj": {"outer": matrix, "inner": t}}.
 */

#include <json.hpp>

#include <string>
#include <utility>

#include "zorn/algebra.hpp"
#include "zorn/errors.hpp"
#include "zorn/expr.hpp"
#include "zorn/ring.hpp"

namespace zorn {

using Json = nlohmann::ordered_json;

namespace detail {

inline const BigInt json_number_cap = BigInt(1) << 53;

[[noreturn]] inline void malformed(const std::string& what) {
    throw zorn_error(errc::precondition_violated, "malformed JSON: " + what);
}

}  // namespace detail

// ============================================================================
// Integers
// ============================================================================

[[nodiscard]] inline Json big_to_json(const BigInt& v) {
    if (big_abs(v) < detail::json_number_cap) return Json(v.convert_to<std::int64_t>());
    return Json(v.str());
}

[[nodiscard]] inline BigInt big_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.empty()) detail::malformed("empty integer string");
        const std::size_t digits = s[0] == '-' ? 1 : 0;
        if (digits == s.size()) detail::malformed("integer string without digits");
        for (std::size_t i = digits; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') detail::malformed("non-decimal integer string");
        return BigInt(s);
    }
    detail::malformed("expected an integer or decimal string");
}

// ============================================================================
// Vectors and matrices
// ============================================================================

[[nodiscard]] inline Json vec_to_json(const Vec3& v) {
    return Json::array({big_to_json(v[0]), big_to_json(v[1]), big_to_json(v[2])});
}

[[nodiscard]] inline Vec3 vec_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) detail::malformed("vector must be a 3-element array");
    return {big_from_json(j[0]), big_from_json(j[1]), big_from_json(j[2])};
}

[[nodiscard]] inline Json matrix_to_json(const ZornMatrix& m) {
    Json j;
    j["a"] = big_to_json(m.a);
    j["x"] = vec_to_json(m.x);
    j["y"] = vec_to_json(m.y);
    j["b"] = big_to_json(m.b);
    j["mod"] = big_to_json(m.mod.m);
    return j;
}

[[nodiscard]] inline ZornMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("x") || !j.contains("y") ||
        !j.contains("b"))
        detail::malformed("matrix needs keys a, x, y, b");
    const BigInt mod_val = j.contains("mod") ? big_from_json(j.at("mod")) : BigInt(0);
    const Modulus mod = mod_val == 0 ? Modulus::integers() : Modulus::mod(mod_val);
    return zmat(big_from_json(j.at("a")), vec_from_json(j.at("x")), vec_from_json(j.at("y")),
                big_from_json(j.at("b")), mod);
}

// ============================================================================
// Generator tags
// ============================================================================

[[nodiscard]] inline Json tag_to_json(const GeneratorTag& t) {
    Json j;
    switch (t.kind) {
        case TagKind::upper:
            j["kind"] = "upper";
            j["v"] = vec_to_json(t.v);
            break;
        case TagKind::lower:
            j["kind"] = "lower";
            j["v"] = vec_to_json(t.v);
            break;
        case TagKind::s:
            j["kind"] = "s";
            j["j"] = t.j;
            j["e"] = big_to_json(t.e);
            break;
        case TagKind::t:
            j["kind"] = "t";
            j["j"] = t.j;
            break;
        case TagKind::u:
            j["kind"] = "u";
            j["j"] = t.j;
            break;
        case TagKind::sl2:
            j["kind"] = "sl2";
            j["j"] = t.j;
            j["m"] = Json::array({big_to_json(t.m[0]), big_to_json(t.m[1]), big_to_json(t.m[2]),
                                  big_to_json(t.m[3])});
            break;
    }
    return j;
}

[[nodiscard]] inline GeneratorTag tag_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) detail::malformed("tag needs a kind");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "upper") return GeneratorTag::upper(vec_from_json(j.at("v")));
    if (kind == "lower") return GeneratorTag::lower(vec_from_json(j.at("v")));
    if (kind == "s") return GeneratorTag::S(j.at("j").get<int>(), big_from_json(j.at("e")));
    if (kind == "t") return GeneratorTag::T(j.at("j").get<int>());
    if (kind == "u") return GeneratorTag::U(j.at("j").get<int>());
    if (kind == "sl2") {
        const Json& m = j.at("m");
        if (!m.is_array() || m.size() != 4) detail::malformed("sl2 tag needs a 4-entry matrix");
        return GeneratorTag::embedded_sl2(j.at("j").get<int>(), big_from_json(m[0]),
                                          big_from_json(m[1]), big_from_json(m[2]),
                                          big_from_json(m[3]));
    }
    detail::malformed("unknown tag kind '" + kind + "'");
}

// ============================================================================
// Expression trees
// ============================================================================

[[nodiscard]] inline Json tree_to_json(const ExprPtr& t) {
    if (!t) detail::malformed("cannot serialize an empty tree");
    if (const auto* tag = std::get_if<GeneratorTag>(&t->node)) return Json{{"leaf", tag_to_json(*tag)}};
    if (const auto* m = std::get_if<MulNode>(&t->node))
        return Json{{"mul", Json::array({tree_to_json(m->l), tree_to_json(m->r)})}};
    const auto& c = std::get<ConjNode>(t->node);
    return Json{{"conj", Json{{"outer", matrix_to_json(c.outer)}, {"inner", tree_to_json(c.inner)}}}};
}

[[nodiscard]] inline ExprPtr tree_from_json(const Json& j) {
    if (!j.is_object()) detail::malformed("tree node must be an object");
    if (j.contains("leaf")) return leaf(tag_from_json(j.at("leaf")));
    if (j.contains("mul")) {
        const Json& m = j.at("mul");
        if (!m.is_array() || m.size() != 2) detail::malformed("mul node needs two children");
        return mul(tree_from_json(m[0]), tree_from_json(m[1]));
    }
    if (j.contains("conj")) {
        const Json& c = j.at("conj");
        return conj(matrix_from_json(c.at("outer")), tree_from_json(c.at("inner")));
    }
    detail::malformed("tree node needs leaf, mul or conj");
}

}  // namespace zorn
