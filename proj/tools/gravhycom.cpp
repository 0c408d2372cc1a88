#include <gravhycom.hpp>

#include <CLI11.hpp>

#include <future>
#include <iostream>
#include <optional>
#include <sstream>

using namespace gravhycom;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string format = "json";
    std::string coeff = "z";
    std::uint64_t seed = 0x5eed;
    int max_arity = 5;
};

struct Listing {
    std::string cell;
    Json json;
    int grade;
};

std::vector<Listing> list_cells(const std::string& space, int n) {
    std::vector<Listing> out;
    if (space == "based") {
        for (const auto& c : enumerate_based_cells(n)) out.push_back({describe_word(c.word()), to_json(c), c.dimension()});
    } else if (space == "unbased") {
        for (const auto& c : enumerate_necklaces(n))
            out.push_back({describe_word(c.word(), '<', '>'), to_json(c), c.dimension()});
    } else if (space == "moduli" || space == "dual") {
        for (const auto& c : moduli_cells(n))
            out.push_back({describe(c), to_json(c), space == "dual" ? dual_degree(c) : primal_dimension(c)});
        std::stable_sort(out.begin(), out.end(), [](const Listing& a, const Listing& b) { return a.grade < b.grade; });
    } else {
        throw std::invalid_argument("unknown space " + space);
    }
    return out;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

int cmd_cells(const RunConfig& cfg, const std::string& space, int n, std::optional<int> dim) {
    auto cells = list_cells(space, n);
    if (dim) std::erase_if(cells, [&](const Listing& l) { return l.grade != *dim; });
    std::map<int, std::size_t> counts;
    for (const auto& l : cells) ++counts[l.grade];
    const char* grade = space == "dual" ? "degree" : "dimension";
    if (cfg.format == "json") {
        Json j;
        j["space"] = space;
        j["arity"] = n;
        Json list = Json::array();
        for (const auto& l : cells) list.push_back({{grade, l.grade}, {"cell", l.json}});
        j["cells"] = list;
        Json c = Json::object();
        for (const auto& [k, v] : counts) c[std::to_string(k)] = v;
        j["counts"] = c;
        j["total"] = cells.size();
        std::cout << j.dump() << "\n";
    } else if (cfg.format == "csv") {
        std::cout << grade << ",cell\n";
        for (const auto& l : cells) std::cout << l.grade << "," << csv_quote(l.cell) << "\n";
    } else {
        for (const auto& l : cells) std::cout << l.grade << "  " << l.cell << "\n";
        std::cout << "total " << cells.size() << " (";
        bool first = true;
        for (const auto& [k, v] : counts) {
            std::cout << (first ? "" : ", ") << grade << " " << k << ": " << v;
            first = false;
        }
        std::cout << ")\n";
    }
    return 0;
}

template <class Label>
int report_homology(const RunConfig& cfg, const std::string& space, int n, const ChainComplex<Label>& c) {
    const auto h = homology(c);
    std::optional<std::map<int, std::size_t>> f2, predicted;
    if (cfg.coeff == "f2") {
        f2 = homology_mod2(c);
        predicted = mod2_from_integral(h);
    }
    const bool consistent = !f2 || *f2 == *predicted;
    if (cfg.format == "json") {
        Json j;
        j["space"] = space;
        j["arity"] = n;
        Json betti = Json::array(), torsion = Json::object();
        for (const auto& [k, b] : h.betti) betti.push_back(b);
        for (const auto& [k, t] : h.torsion) {
            Json ts = Json::array();
            for (const auto& f : t) ts.push_back(integer_to_json(f));
            torsion[std::to_string(k)] = ts;
        }
        j["min_degree"] = c.min_degree();
        j["betti"] = betti;
        j["torsion"] = torsion;
        j["euler_characteristic"] = integer_to_json(h.euler_characteristic);
        if (f2) {
            Json m = Json::array();
            for (const auto& [k, b] : *f2) m.push_back(b);
            j["betti_f2"] = m;
            j["f2_matches_universal_coefficients"] = consistent;
        }
        std::cout << j.dump() << "\n";
    } else {
        const bool csv = cfg.format == "csv";
        std::cout << (csv ? "degree,betti,torsion" : "degree  betti  torsion") << (f2 ? (csv ? ",betti_f2" : "  betti_f2") : "")
                  << "\n";
        for (const auto& [k, b] : h.betti) {
            std::string t;
            for (const auto& f : h.torsion.at(k)) t += (t.empty() ? "" : " ") + f.str();
            if (csv)
                std::cout << k << "," << b << "," << t;
            else
                std::cout << k << "  " << b << "  " << (t.empty() ? "-" : t);
            if (f2) std::cout << (csv ? "," : "  ") << f2->at(k);
            std::cout << "\n";
        }
        if (!csv) std::cout << "euler " << h.euler_characteristic.str() << "\n";
    }
    return consistent ? 0 : kExitFail;
}

int cmd_homology(const RunConfig& cfg, const std::string& space, int n) {
    if (space == "based") return report_homology(cfg, space, n, based_complex(n));
    if (space == "unbased") return report_homology(cfg, space, n, unbased_complex(n));
    if (space == "moduli") return report_homology(cfg, space, n, primal_complex(n));
    if (space == "dual") return report_homology(cfg, space, n, dual_complex(n));
    throw std::invalid_argument("unknown space " + space);
}

struct VerifyOptions {
    std::string check = "all";
    std::optional<int> arity, k, l, instance;
};

using Task = std::function<std::vector<Certificate>()>;

std::vector<int> arities(const VerifyOptions& v, int lo, int hi) {
    if (v.arity) return {*v.arity};
    std::vector<int> out;
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

std::vector<Task> plan(const RunConfig& cfg, const VerifyOptions& v) {
    const int cap = cfg.max_arity;
    const bool all = v.check == "all";
    std::vector<Task> tasks;
    auto one = [&](auto f) { tasks.push_back([f] { return std::vector<Certificate>{f()}; }); };
    if (all || v.check == "d2")
        for (int n : arities(v, 2, cap))
            for (std::string space : {"based", "unbased", "moduli", "dual"}) one([=] { return check_d2(space, n); });
    if (all || v.check == "transfer") {
        const int n = v.arity.value_or(cap);
        one([=] { return check_transfer(n); });
    }
    if (all || v.check == "axioms") {
        const int n = v.arity.value_or(cap);
        const std::uint64_t seed = cfg.seed;
        tasks.push_back([=] { return check_axioms(n, seed); });
    }
    if (all || v.check == "jacobi") {
        std::vector<std::pair<int, int>> cases;
        if (v.k || v.l)
            cases.emplace_back(v.k.value_or(3), v.l.value_or(0));
        else
            for (auto c : {std::pair{3, 0}, std::pair{3, 1}, std::pair{4, 0}})
                if (c.first + c.second <= cap) cases.push_back(c);
        for (auto [k, l] : cases) one([=] { return check_jacobi(k, l); });
    }
    if (all || v.check == "hycom") {
        std::vector<int> cases;
        if (v.instance)
            cases.push_back(*v.instance);
        else
            for (int c : {0, 1})
                if (c + 3 <= cap) cases.push_back(c);
        for (int c : cases) one([=] { return check_hycom(c); });
    }
    if (all || v.check == "koszul")
        for (int n : arities(v, 2, std::min(cap, 4))) one([=] { return check_koszul(n); });
    if (all || v.check == "duality")
        for (int n : arities(v, 2, cap)) one([=] { return check_poincare_duality(n); });
    if (all || v.check == "oracle") {
        const bool mod2 = cfg.coeff == "f2";
        for (int n : arities(v, 2, cap)) one([=] { return check_oracle(n, mod2); });
    }
    if (all || v.check == "bar")
        for (int n : arities(v, 2, std::min(cap, 4))) one([=] { return check_bar(n); });
    if (all || v.check == "cobar-bar")
        for (int n : arities(v, 2, std::min(cap, 3))) one([=] { return check_cobar_bar(n); });
    return tasks;
}

int cmd_verify(const RunConfig& cfg, const VerifyOptions& v) {
    auto tasks = plan(cfg, v);
    std::vector<Certificate> certs;
    if (tasks.size() == 1) {
        certs = tasks.front()();
    } else {
        std::vector<std::future<std::vector<Certificate>>> running;
        for (auto& t : tasks) running.push_back(std::async(std::launch::async, t));
        for (auto& f : running)
            for (auto& c : f.get()) certs.push_back(std::move(c));
    }
    std::stable_sort(certs.begin(), certs.end(), [](const Certificate& a, const Certificate& b) { return a.check < b.check; });
    bool ok = true;
    if (cfg.format == "csv") std::cout << "check,status,detail\n";
    for (const auto& c : certs) {
        ok = ok && c.pass;
        if (cfg.format == "json")
            std::cout << to_json(c).dump() << "\n";
        else if (cfg.format == "csv")
            std::cout << csv_quote(c.check) << "," << (c.pass ? "pass" : "fail") << "," << csv_quote(c.detail) << "\n";
        else
            std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.check << "  " << c.detail << "\n";
    }
    return ok ? 0 : kExitFail;
}

template <class Cell>
void print_chain(const RunConfig& cfg, const Chain<Cell>& x, const std::function<std::string(const Cell&)>& show) {
    if (cfg.format == "json") {
        std::cout << to_json(x).dump() << "\n";
        return;
    }
    if (cfg.format == "csv") std::cout << "coeff,cell\n";
    for (const auto& [c, k] : x.terms) {
        if (cfg.format == "csv")
            std::cout << k.str() << "," << csv_quote(show(c)) << "\n";
        else
            std::cout << (k > 0 ? "+" : "") << k.str() << "  " << show(c) << "\n";
    }
}

int cmd_compose(const RunConfig& cfg, const std::string& kind, const std::string& left, const std::string& right,
                int slot) {
    if (kind == "based") {
        auto a = parse_based(left), b = parse_based(right);
        if (slot < 1 || slot > a.arity()) throw std::invalid_argument("slot out of range");
        print_chain<BasedCactusCell>(cfg, compose_based(a, slot, b), [](const auto& c) { return describe_word(c.word()); });
    } else if (kind == "grav") {
        auto a = parse_necklace(left), b = parse_necklace(right);
        if (slot < 1 || slot > a.arity()) throw std::invalid_argument("slot out of range");
        print_chain<NecklaceCell>(cfg, compose_grav(a, slot, b),
                                  [](const auto& c) { return describe_word(c.word(), '<', '>'); });
    } else if (kind == "dual") {
        auto a = parse_decorated(left), b = parse_decorated(right);
        auto r = compose_dual(a, slot, b);
        print_chain<DecoratedTreeCell>(cfg, Chain<DecoratedTreeCell>(dual_degree(r.cell), r.cell, r.sign),
                                       [](const auto& c) { return describe(c); });
    } else {
        throw std::invalid_argument("unknown composition kind " + kind);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact chain models of cacti, gravity and hypercommutative operads"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read options from a key=value file");

    RunConfig cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--coeff", cfg.coeff, "Coefficients: integers, or an extra mod-2 cross-check")
        ->check(CLI::IsMember({"z", "f2"}));
    app.add_option("--seed", cfg.seed, "Seed for sampled checks");
    app.add_option("--max-arity", cfg.max_arity, "Arity budget for verification")->check(CLI::Range(2, 6));

    const std::vector<std::string> spaces = {"based", "unbased", "moduli", "dual"};
    std::string space = "based";
    int arity = 3;
    std::optional<int> dim;

    auto* cells = app.add_subcommand("cells", "List the cells of a complex");
    cells->add_option("--space", space)->check(CLI::IsMember(spaces))->required();
    cells->add_option("--arity", arity)->check(CLI::Range(1, 7))->required();
    cells->add_option("--dim", dim, "Only cells of this dimension (degree for dual)");

    auto* hom = app.add_subcommand("homology", "Integral homology of a complex");
    hom->add_option("--space", space)->check(CLI::IsMember(spaces))->required();
    hom->add_option("--arity", arity)->check(CLI::Range(1, 6))->required();

    VerifyOptions vo;
    std::optional<int> varity;
    auto* ver = app.add_subcommand("verify", "Run checks and emit certificates");
    ver->add_option("--check", vo.check)
        ->check(CLI::IsMember({"d2", "transfer", "axioms", "jacobi", "hycom", "koszul", "duality", "oracle", "bar",
                               "cobar-bar", "all"}));
    ver->add_option("--arity", varity)->check(CLI::Range(2, 6));
    ver->add_option("--k", vo.k)->check(CLI::Range(2, 5));
    ver->add_option("--l", vo.l)->check(CLI::Range(0, 3));
    ver->add_option("--case", vo.instance, "Associativity instance (0 or 1)")->check(CLI::Range(0, 1));

    std::string kind, left, right;
    int slot = 1;
    auto* comp = app.add_subcommand("compose", "Compose two cells");
    comp->add_option("kind", kind)->check(CLI::IsMember({"based", "grav", "dual"}))->required();
    comp->add_option("left", left, "Outer cell: word, JSON, or ptN for a dual point")->required();
    comp->add_option("right", right, "Inner cell")->required();
    comp->add_option("--slot", slot)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cells) return cmd_cells(cfg, space, arity, dim);
        if (*hom) {
            if ((space == "unbased" || space == "moduli" || space == "dual") && arity < 2)
                throw std::invalid_argument("arity must be at least 2 for " + space);
            return cmd_homology(cfg, space, arity);
        }
        if (*ver) {
            vo.arity = varity;
            if (vo.arity && *vo.arity > cfg.max_arity) cfg.max_arity = *vo.arity;
            return cmd_verify(cfg, vo);
        }
        if (*comp) return cmd_compose(cfg, kind, left, right, slot);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
