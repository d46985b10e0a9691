#pragma once

/**
 * Expression trees over the algebra: products with explicit association and
 * conjugation nodes.  Trees are the certificate format of the factorization
 * algorithms; certify_level checks the syntactic condition that makes a tree
 * witness membership in the normal closure of the level-n elementaries.
 */

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "zorn/algebra.hpp"
#include "zorn/errors.hpp"

namespace zorn {

struct ExprTree;
using ExprPtr = std::shared_ptr<const ExprTree>;

struct MulNode {
    ExprPtr l;
    ExprPtr r;
};

// Evaluates to (outer * inner) * outer^-1; outer must be invertible.
struct ConjNode {
    ZornMatrix outer;
    ExprPtr inner;
};

struct ExprTree {
    std::variant<GeneratorTag, MulNode, ConjNode> node;
};

[[nodiscard]] inline ExprPtr leaf(GeneratorTag tag) {
    return std::make_shared<const ExprTree>(ExprTree{std::move(tag)});
}

[[nodiscard]] inline ExprPtr mul(ExprPtr l, ExprPtr r) {
    if (!l || !r) throw zorn_error(errc::precondition_violated, "mul children must be non-null");
    return std::make_shared<const ExprTree>(ExprTree{MulNode{std::move(l), std::move(r)}});
}

[[nodiscard]] inline ExprPtr conj(ZornMatrix outer, ExprPtr inner) {
    if (!inner) throw zorn_error(errc::precondition_violated, "conj child must be non-null");
    return std::make_shared<const ExprTree>(ExprTree{ConjNode{std::move(outer), std::move(inner)}});
}

// Leaf count is over generator tags; node count includes mul and conj nodes.
[[nodiscard]] inline std::size_t tree_size(const ExprPtr& t) {
    if (!t) throw zorn_error(errc::precondition_violated, "null tree");
    if (const auto* m = std::get_if<MulNode>(&t->node)) return 1 + tree_size(m->l) + tree_size(m->r);
    if (const auto* c = std::get_if<ConjNode>(&t->node)) return 1 + tree_size(c->inner);
    return 1;
}

inline void collect_leaves(const ExprPtr& t, std::vector<GeneratorTag>& out) {
    if (const auto* g = std::get_if<GeneratorTag>(&t->node)) {
        out.push_back(*g);
    } else if (const auto* m = std::get_if<MulNode>(&t->node)) {
        collect_leaves(m->l, out);
        collect_leaves(m->r, out);
    } else {
        collect_leaves(std::get<ConjNode>(t->node).inner, out);
    }
}

[[nodiscard]] inline std::vector<GeneratorTag> leaves(const ExprPtr& t) {
    std::vector<GeneratorTag> out;
    collect_leaves(t, out);
    return out;
}

/**
 * Bottom-up evaluation over the given ring.  Conjugation outers must already
 * live over that ring; leaves are instantiated in it, so evaluating mod m
 * agrees with reducing every leaf mod m first.
 */
[[nodiscard]] inline ZornMatrix eval(const ExprPtr& t, const Modulus& mod = Modulus::integers()) {
    if (!t) throw zorn_error(errc::precondition_violated, "null tree");
    if (const auto* g = std::get_if<GeneratorTag>(&t->node)) return generator(*g, mod);
    if (const auto* m = std::get_if<MulNode>(&t->node)) return zmul(eval(m->l, mod), eval(m->r, mod));
    const auto& c = std::get<ConjNode>(t->node);
    if (c.outer.mod != mod)
        throw zorn_error(errc::modulus_mismatch, "conjugation outer lives over a different ring");
    return zmul(zmul(c.outer, eval(c.inner, mod)), zinv(c.outer));
}

/**
 * True iff every leaf is an upper or lower elementary whose vector lies in
 * (nZ)^3, and every conjugation outer is invertible.  A true certificate
 * places the evaluated element in the normal closure of the level-n
 * elementaries inside the unit-determinant loop.
 */
[[nodiscard]] inline bool certify_level(const ExprPtr& t, const BigInt& n) {
    if (n < 1) throw zorn_error(errc::precondition_violated, "certify_level requires n >= 1");
    if (!t) throw zorn_error(errc::precondition_violated, "null tree");
    if (const auto* g = std::get_if<GeneratorTag>(&t->node)) {
        if (g->kind != TagKind::upper && g->kind != TagKind::lower) return false;
        for (int i = 0; i < 3; ++i)
            if (g->v[i] % n != 0) return false;
        return true;
    }
    if (const auto* m = std::get_if<MulNode>(&t->node))
        return certify_level(m->l, n) && certify_level(m->r, n);
    const auto& c = std::get<ConjNode>(t->node);
    return is_gll(c.outer) && certify_level(c.inner, n);
}

}  // namespace zorn
