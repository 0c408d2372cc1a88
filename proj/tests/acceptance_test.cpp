#include <gravhycom.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

using namespace gravhycom;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    char time[32];
    std::snprintf(time, sizeof time, "%.1fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << "  (" << time << ")  " << o.detail
              << std::endl;
}

std::vector<std::size_t> betti_vector(const HomologySummary& h) {
    std::vector<std::size_t> v;
    for (const auto& [k, b] : h.betti) v.push_back(b);
    return v;
}

std::vector<std::size_t> poly_vector(const IntPolynomial& p, int stride) {
    std::vector<std::size_t> v;
    for (int k = 0; k <= p.degree() * stride; ++k)
        v.push_back(k % stride ? 0 : static_cast<std::size_t>(p.coefficient(k / stride)));
    return v;
}

bool torsion_free(const HomologySummary& h) {
    for (const auto& [k, t] : h.torsion)
        if (!t.empty()) return false;
    return true;
}

template <class Label>
std::vector<std::size_t> ranks(const ChainComplex<Label>& c) {
    std::vector<std::size_t> r;
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) r.push_back(c.rank(k));
    return r;
}

/// The residual must be a boundary whose witness is recomputed and checked here by multiplication.
template <class Label>
bool bounds(const Chain<Label>& residual, const ChainComplex<Label>& c) {
    if (residual.is_zero()) return false;
    auto w = is_boundary(residual, c);
    return w && c.apply_boundary(*w) == residual;
}

std::pair<int, std::string> run(const std::string& command) {
    std::string out;
    FILE* p = popen(command.c_str(), "r");
    if (!p) return {-1, out};
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    return {pclose(p), out};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    criterion(1, "d^2 = 0 over Z: based, unbased, moduli primal and dual, arities 2-5", [] {
        for (int n = 2; n <= 5; ++n)
            for (std::string space : {"based", "unbased", "moduli", "dual"}) {
                auto c = check_d2(space, n);
                if (!c.pass) return Outcome{false, c.check + ": " + c.detail};
            }
        return Outcome{true, "16 complexes"};
    });

    criterion(2, "configuration-space Betti numbers equal Arnold polynomials, torsion-free, n=2..5", [] {
        for (int n = 2; n <= 5; ++n) {
            auto hb = homology(based_complex(n)), hu = homology(unbased_complex(n));
            if (betti_vector(hb) != poly_vector(arnold_poincare(n, false), 1) || !torsion_free(hb))
                return Outcome{false, "based " + std::to_string(n)};
            if (betti_vector(hu) != poly_vector(arnold_poincare(n, true), 1) || !torsion_free(hu))
                return Outcome{false, "unbased " + std::to_string(n)};
        }
        auto b4 = betti_vector(homology(based_complex(4)));
        auto u5 = betti_vector(homology(unbased_complex(5)));
        bool pinned = b4 == std::vector<std::size_t>{1, 6, 11, 6} && u5 == std::vector<std::size_t>{1, 9, 26, 24};
        return Outcome{pinned, "based(4) 1,6,11,6; unbased(5) 1,9,26,24"};
    });

    criterion(3, "moduli Betti numbers match the point-count oracle, torsion-free, Poincare symmetric", [] {
        const std::map<int, std::vector<std::size_t>> expected = {
            {3, {1, 0, 1}}, {4, {1, 0, 5, 0, 1}}, {5, {1, 0, 16, 0, 16, 0, 1}}};
        for (const auto& [n, want] : expected) {
            auto h = homology(dual_complex(n));
            auto got = betti_vector(h);
            if (got != want || got != poly_vector(moduli_betti_oracle(n), 2) || !torsion_free(h))
                return Outcome{false, "arity " + std::to_string(n)};
            for (std::size_t k = 0; k < got.size(); ++k)
                if (got[k] != got[got.size() - 1 - k]) return Outcome{false, "asymmetric at " + std::to_string(n)};
            if (!check_poincare_duality(n).pass) return Outcome{false, "duality certificate " + std::to_string(n)};
        }
        return Outcome{true, "(1,0,1) (1,0,5,0,1) (1,0,16,0,16,0,1)"};
    });

    criterion(4, "cell counts: moduli(3) primal 2,3,3 and dual 3,3,2; unbased(3) 2,3; 4 nested trees", [] {
        bool ok = ranks(primal_complex(3)) == std::vector<std::size_t>{2, 3, 3} &&
                  ranks(dual_complex(3)) == std::vector<std::size_t>{3, 3, 2} &&
                  ranks(unbased_complex(3)) == std::vector<std::size_t>{2, 3} && enumerate_nested_trees(3).size() == 4;
        return Outcome{ok, ok ? "exact" : "mismatch"};
    });

    criterion(5, "transfer injective chain map, grav factorization and operad axioms through arity 5", [] {
        auto t = check_transfer(5);
        if (!t.pass) return Outcome{false, t.detail};
        std::string detail = t.detail;
        for (const auto& c : check_axioms(5)) {
            if (!c.pass) return Outcome{false, c.check + ": " + c.detail};
            detail += "; " + c.check + " " + c.detail;
        }
        return Outcome{true, detail};
    });

    criterion(6, "bar construction of grav = primal moduli complex shifted by 2, arities 2-4", [] {
        for (int n = 2; n <= 4; ++n) {
            auto rep = bar_identification(n);
            if (!rep.ok) return Outcome{false, std::to_string(n) + ": " + rep.diagnostic};
        }
        return Outcome{true, "bases and differentials equal"};
    });

    criterion(7, "Jacobi and associativity relations with integral boundary witnesses", [] {
        if (!jacobi_residual(3, 0).is_zero()) return Outcome{false, "jacobi(3,0) is not the zero chain"};
        if (!bounds(jacobi_residual(3, 1), unbased_complex(4))) return Outcome{false, "jacobi(3,1)"};
        if (!bounds(jacobi_residual(4, 0), unbased_complex(4))) return Outcome{false, "jacobi(4,0)"};
        if (!bounds(hycom_residual(0), dual_complex(3))) return Outcome{false, "associativity n=0"};
        auto r1 = hycom_residual(1);
        if (r1.degree != 2 || !bounds(r1, dual_complex(4))) return Outcome{false, "associativity n=1"};
        return Outcome{true, "jacobi(3,0) = 0; jacobi(3,1), jacobi(4,0), assoc n=0,1 bound"};
    });

    criterion(8, "Koszul duality: bijection, transposed differentials, structure constants, n=2..4", [] {
        std::string detail;
        for (int n = 2; n <= 4; ++n) {
            auto c = check_koszul(n);
            if (!c.pass) return Outcome{false, c.check + ": " + c.detail};
            detail += (detail.empty() ? "" : "; ") + c.check + " " + c.detail;
        }
        return Outcome{true, detail};
    });

    criterion(9, "cobar-bar resolution homology matches grav, n=2,3", [] {
        std::string detail;
        for (int n = 2; n <= 3; ++n) {
            auto c = check_cobar_bar(n);
            if (!c.pass) return Outcome{false, c.check + ": " + c.detail};
            detail += (detail.empty() ? "" : "; ") + c.detail;
        }
        return Outcome{true, detail};
    });

    criterion(10, "determinism: verify --check all --max-arity 4 twice, byte-identical", [&] {
        if (cli.empty()) return Outcome{false, "CLI path not given"};
        const std::string cmd = "\"" + cli + "\" verify --check all --max-arity 4";
        auto a = run(cmd), b = run(cmd);
        if (a.first != 0 || b.first != 0) return Outcome{false, "non-zero exit"};
        if (a.second.empty() || a.second != b.second) return Outcome{false, "streams differ"};
        std::size_t lines = 0;
        for (char c : a.second) lines += c == '\n';
        return Outcome{true, std::to_string(lines) + " certificates, " + std::to_string(a.second.size()) + " bytes"};
    });

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
