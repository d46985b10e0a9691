// Command-line front door: every library operation behind a subcommand with
// JSON input/output.  Matrices are passed inline as canonical JSON or as a
// path to a file holding one; large scalar results are decimal strings.
//
// Exit codes: 0 success, 1 operational error ({"error", "witness"} on
// stdout), 2 malformed input or usage.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zorn/acceptance.hpp"

namespace {

using zorn::Json;

/// Input-stage failure (unparsable JSON, missing file, bad schema) -> exit 2.
struct malformed_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[nodiscard]] Json parse_json_arg(const std::string& arg) {
    std::string text = arg;
    const std::size_t first = arg.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw malformed_input("empty argument");
    if (arg[first] != '{' && arg[first] != '[') {
        std::ifstream in(arg);
        if (!in) throw malformed_input("cannot open file: " + arg);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw malformed_input(std::string("invalid JSON: ") + e.what());
    }
}

[[nodiscard]] zorn::ZornMatrix matrix_arg(const std::string& arg) {
    const Json j = parse_json_arg(arg);
    try {
        return zorn::matrix_from_json(j);
    } catch (const std::exception& e) {
        throw malformed_input(std::string("invalid matrix: ") + e.what());
    }
}

void emit(const Json& out) { std::cout << out.dump() << '\n'; }

// ----------------------------------------------------------------------------
// loop-analyze
// ----------------------------------------------------------------------------

[[nodiscard]] std::vector<std::uint32_t> seed_indices(const zorn::FiniteLoop& L,
                                                      const std::string& path) {
    const Json j = parse_json_arg(path);
    if (!j.is_array()) throw malformed_input("seed file must hold an array of matrices");
    std::vector<std::uint32_t> out;
    out.reserve(j.size());
    for (const Json& item : j) {
        zorn::ZornMatrix A = zorn::identity();
        try {
            A = zorn::matrix_from_json(item);
        } catch (const std::exception& e) {
            throw malformed_input(std::string("invalid seed matrix: ") + e.what());
        }
        const std::uint32_t idx = L.index_of(A);
        if (idx == zorn::FiniteLoop::npos)
            throw zorn::zorn_error(zorn::errc::precondition_violated,
                                   "seed element is not in the unit loop", item.dump());
        out.push_back(idx);
    }
    return out;
}

[[nodiscard]] Json subloop_report(const zorn::FiniteLoop& L, const zorn::SubloopSet& S,
                                  Json witnesses = Json::array()) {
    (void)L;
    return Json{{"order", S.size()},
                {"status", S.status == zorn::ClosureStatus::certified_closed ? "certified"
                                                                             : "partial"},
                {"witnesses", std::move(witnesses)}};
}

void run_loop_analyze(std::int64_t m, const std::string& seed_path, const std::string& op) {
    const zorn::FiniteLoop L = zorn::enumerate_sll(m);
    const auto base = [&]() {
        if (seed_path.empty()) return zorn::full_subloop(L);
        return zorn::closure(L, seed_indices(L, seed_path));
    };
    if (op == "closure") {
        emit(subloop_report(L, base()));
        return;
    }
    if (op == "derived") {
        emit(subloop_report(L, zorn::derived_subloop(base())));
        return;
    }
    if (op.rfind("power:", 0) == 0) {
        const zorn::BigInt s(op.substr(6));
        emit(subloop_report(L, zorn::power_closure(base(), s)));
        return;
    }
    if (op == "lagrange") {
        const zorn::SubloopSet H = base();
        const zorn::LagrangeResult r = zorn::lagrange_check(L, H);
        Json witnesses = Json::array();
        if (!r.ok)
            witnesses.push_back(Json{{"h", zorn::matrix_to_json(L.element(r.h))},
                                     {"x", zorn::matrix_to_json(L.element(r.x))}});
        Json rep = subloop_report(L, H, std::move(witnesses));
        rep["ok"] = r.ok;
        emit(rep);
        return;
    }
    if (op == "normal") {
        const zorn::SubloopSet H = base();
        const zorn::NormalityResult r = zorn::normality_check(L, H);
        Json witnesses = Json::array();
        if (!r.ok) {
            Json w{{"condition", r.condition},
                   {"x", zorn::matrix_to_json(L.element(r.x))}};
            w["y"] = r.y == zorn::FiniteLoop::npos ? Json(nullptr)
                                                   : zorn::matrix_to_json(L.element(r.y));
            witnesses.push_back(std::move(w));
        }
        Json rep = subloop_report(L, H, std::move(witnesses));
        rep["ok"] = r.ok;
        emit(rep);
        return;
    }
    if (op.rfind("gamma-ns:", 0) == 0) {
        const std::string rest = op.substr(9);
        const std::size_t comma = rest.find(',');
        if (comma == std::string::npos)
            throw malformed_input("gamma-ns takes two parameters, e.g. --op gamma-ns:2,3");
        const std::int64_t n = std::stoll(rest.substr(0, comma));
        const zorn::BigInt s(rest.substr(comma + 1));
        emit(subloop_report(L, zorn::gamma_ns_image(L, n, s)));
        return;
    }
    throw malformed_input("unknown --op: " + op);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for the Zorn vector-matrix algebra, its unit "
                 "Moufang loops, congruence-subloop factorizations and finite quotients"};
    app.require_subcommand(1);
    int exit_code = 0;

    std::string arg_a, arg_b, seed_path, op;
    std::int64_t arg_mod = 0, arg_n1 = 0, arg_n2 = 0, arg_index = 0;
    std::string arg_level;
    bool count_only = false, slow = false;

    auto* mul = app.add_subcommand("mul", "Product of two matrices");
    mul->add_option("A", arg_a)->required();
    mul->add_option("B", arg_b)->required();
    mul->callback([&] {
        emit(Json{{"product",
                   zorn::matrix_to_json(zorn::zmul(matrix_arg(arg_a), matrix_arg(arg_b)))}});
    });

    auto* det = app.add_subcommand("det", "Determinant of a matrix");
    det->add_option("A", arg_a)->required();
    det->callback([&] { emit(Json{{"det", zorn::zdet(matrix_arg(arg_a)).str()}}); });

    auto* inv = app.add_subcommand("inv", "Inverse of an invertible matrix");
    inv->add_option("A", arg_a)->required();
    inv->callback(
        [&] { emit(Json{{"inverse", zorn::matrix_to_json(zorn::zinv(matrix_arg(arg_a)))}}); });

    auto* red = app.add_subcommand("reduce", "Componentwise reduction to Z/mZ");
    red->add_option("A", arg_a)->required();
    red->add_option("--mod", arg_mod, "target modulus")->required();
    red->callback([&] {
        emit(Json{{"reduced", zorn::matrix_to_json(zorn::reduce_mod(matrix_arg(arg_a), arg_mod))}});
    });

    auto* fac = app.add_subcommand("factor", "Factor a unital element into axis elementaries");
    fac->add_option("A", arg_a)->required();
    fac->add_option("--level", arg_level, "level q >= 1")->required();
    fac->callback([&] {
        emit(Json{{"tree",
                   zorn::tree_to_json(zorn::factor_unital(matrix_arg(arg_a),
                                                          zorn::BigInt(arg_level)))}});
    });

    auto* dec = app.add_subcommand("decompose",
                                   "Certificate tree for a level-n congruence element");
    dec->add_option("A", arg_a)->required();
    dec->add_option("--level", arg_level, "level n >= 1")->required();
    dec->callback([&] {
        emit(Json{{"tree", zorn::tree_to_json(zorn::decompose_congruence(
                               matrix_arg(arg_a), zorn::BigInt(arg_level)))}});
    });

    auto* spl = app.add_subcommand(
        "split", "Decomposition with at most one embedded 2x2 leaf (axis 1)");
    spl->add_option("A", arg_a)->required();
    spl->add_option("--level", arg_level, "level n >= 1")->required();
    spl->callback([&] {
        emit(Json{{"tree", zorn::tree_to_json(zorn::split_gamma1_delta(
                               matrix_arg(arg_a), zorn::BigInt(arg_level)))}});
    });

    auto* woh = app.add_subcommand("wohlfahrt",
                                   "Split a level-n1 element as B*C with C == I mod n2");
    woh->add_option("A", arg_a)->required();
    woh->add_option("--n1", arg_n1)->required();
    woh->add_option("--n2", arg_n2)->required();
    woh->callback([&] {
        const zorn::WohlfahrtSplit w =
            zorn::wohlfahrt_split(matrix_arg(arg_a), arg_n1, arg_n2);
        emit(Json{{"b_tree", zorn::tree_to_json(w.b_tree)},
                  {"c", zorn::matrix_to_json(w.c)}});
    });

    auto* enu = app.add_subcommand("enumerate", "Unit loop over Z/mZ");
    enu->add_option("--mod", arg_mod, "modulus m >= 1")->required();
    enu->add_flag("--count-only", count_only, "print the order instead of the elements");
    enu->callback([&] {
        const zorn::FiniteLoop L = zorn::enumerate_sll(arg_mod);
        if (count_only) {
            emit(Json{{"order", L.order()}});
            return;
        }
        for (std::uint32_t i = 0; i < L.order(); ++i)
            std::cout << zorn::matrix_to_json(L.element(i)).dump() << '\n';
    });

    auto* idx = app.add_subcommand("index", "Order of the unit loop over Z/nZ (closed formula)");
    idx->add_option("n", arg_index)->required();
    idx->callback([&] { emit(Json{{"index", zorn::index_gamma(arg_index).str()}}); });

    auto* ana = app.add_subcommand("loop-analyze", "Subloop analysis in a finite quotient");
    ana->add_option("--mod", arg_mod, "modulus m >= 1")->required();
    ana->add_option("--seed", seed_path, "JSON file with an array of generating matrices");
    ana->add_option("--op", op,
                    "closure | derived | power:s | lagrange | normal | gamma-ns:n,s")
        ->required();
    ana->callback([&] { run_loop_analyze(arg_mod, seed_path, op); });

    auto* st = app.add_subcommand("selftest", "Run the full verification suite");
    st->add_flag("--slow", slow, "include the exhaustive sweeps");
    st->callback([&] { exit_code = zorn::acceptance::run_suite(std::cout, slow) == 0 ? 0 : 1; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // bad usage is malformed input
    } catch (const malformed_input& e) {
        emit(Json{{"error", "MalformedInput"}, {"witness", e.what()}});
        return 2;
    } catch (const zorn::zorn_error& e) {
        Json witness(nullptr);
        if (!e.witness().empty()) {
            try {
                witness = Json::parse(e.witness());
            } catch (const Json::exception&) {
                witness = e.witness();
            }
        }
        emit(Json{{"error", e.name()}, {"witness", witness}, {"message", e.what()}});
        return 1;
    } catch (const std::exception& e) {
        emit(Json{{"error", "Internal"}, {"witness", e.what()}});
        return 1;
    }
    return exit_code;
}
