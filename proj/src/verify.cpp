#include "hypercount/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "hypercount/count.hpp"
#include "hypercount/kernel.hpp"
#include "hypercount/momentkit.hpp"
#include "hypercount/theta.hpp"

namespace hypercount {

namespace {

struct Recorder {
    std::string suite;
    std::vector<VerifyCheck>& out;

    void operator()(const std::string& name, bool ok, const std::string& detail = "") {
        out.push_back({suite, name, ok, detail});
    }
    // Runs body, turning an escaped exception into a failed check.
    void guard(const std::string& name, const std::function<std::string()>& body) {
        try {
            const std::string failure = body();
            (*this)(name, failure.empty(), failure);
        } catch (const std::exception& e) {
            (*this)(name, false, std::string("exception: ") + e.what());
        }
    }
};

std::vector<i64> discriminants(i64 d_min) {
    std::vector<i64> out;
    for (i64 d = -3; d >= d_min; d -= 4)
        if (is_odd_squarefree_discriminant(d)) out.push_back(d);
    return out;
}

void forms_suite(const VerifyOptions& opts, Recorder rec) {
    std::mt19937_64 rng(opts.seed);
    rec.guard("reduction idempotent with valid transform", [&] {
        std::uniform_int_distribution<i64> coef(-10000, 10000);
        for (int i = 0; i < 2000; ++i) {
            QuadForm f{coef(rng), coef(rng), coef(rng)};
            if (!f.positive_definite()) continue;
            const auto r = reduce(f);
            if (!is_reduced(r.form) || act(f, r.transform) != r.form || r.transform.det() != 1 ||
                reduce(r.form).form != r.form)
                return "reduction failed on " + f.str();
        }
        return std::string();
    });
    rec.guard("class group axioms and character orthogonality", [&] {
        for (i64 d : discriminants(opts.d_min)) {
            auto G = std::make_shared<const ClassGroup>(d);
            const std::size_t h = G->order();
            for (std::size_t i = 0; i < h; ++i) {
                if (G->mul(G->identity(), i) != i) return "identity fails for d=" + std::to_string(d);
                std::set<std::size_t> row;
                for (std::size_t j = 0; j < h; ++j) {
                    row.insert(G->mul(i, j));
                    if (G->mul(i, j) != G->mul(j, i)) return "not abelian for d=" + std::to_string(d);
                    for (std::size_t k = 0; k < h; ++k)
                        if (G->mul(G->mul(i, j), k) != G->mul(i, G->mul(j, k)))
                            return "not associative for d=" + std::to_string(d);
                }
                if (row.size() != h) return "row not a permutation for d=" + std::to_string(d);
            }
            std::size_t prod = 1;
            for (const auto& g : G->generators()) prod *= g.order;
            if (prod != h) return "generator orders do not multiply to h for d=" + std::to_string(d);
            const auto chars = all_characters(G);
            std::size_t real = 0;
            for (const auto& c : chars) {
                std::complex<double> s = 0;
                for (std::size_t i = 0; i < h; ++i) s += c.value(i);
                if (std::abs(s - (c.is_trivial() ? double(h) : 0.0)) > 1e-9)
                    return "orthogonality fails for d=" + std::to_string(d) + " " + c.id();
                real += c.is_real();
            }
            const auto genus = genus_characters(G);
            if (real != genus.size()) return "real characters != genus characters for d=" + std::to_string(d);
        }
        return std::string();
    });
    rec.guard("codiscriminant matches point-pair invariant", [&] {
        std::uniform_int_distribution<i64> coef(-30, 30);
        for (int i = 0; i < 2000; ++i) {
            QuadForm p{coef(rng), coef(rng), coef(rng)}, q{coef(rng), coef(rng), coef(rng)};
            if (!p.positive_definite() || !q.positive_definite() || -p.disc() > 200 || -q.disc() > 200) continue;
            const double lhs = 4 * u(PlanePoint::from_form(p), PlanePoint::from_form(q)) + 2;
            const double rhs = 2.0 * codiscriminant(p, q) / std::sqrt(double(p.disc()) * double(q.disc()));
            if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, rhs)) return "mismatch for " + p.str() + " " + q.str();
        }
        return std::string();
    });
    rec.guard("exact and float counts agree", [&] {
        const auto ds = discriminants(-100);
        std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
        std::uniform_real_distribution<double> X(2, 300);
        for (int i = 0; i < 20; ++i) {
            const auto P = ClassGroup(ds[pick(rng)]).forms();
            const auto P0 = ClassGroup(ds[pick(rng)]).forms();
            const QuadForm p = P[rng() % P.size()], p0 = P0[rng() % P0.size()];
            const Threshold t(static_cast<i64>(X(rng) * 64), 64);
            const auto exact = count_heegner_exact(p, p0, t);
            const auto fl = count_general(PlanePoint::from_form(p0), PlanePoint::from_form(p), boost::rational_cast<double>(t));
            if (exact.count != fl.count) return "mismatch for " + p.str() + " " + p0.str();
        }
        return std::string();
    });
    rec.guard("pair class sums equal Heegner pair counts", [&] {
        const auto s = pair_class_sum(-7, -15, 200);
        if (s.lhs != s.rhs) return "lhs " + std::to_string(s.lhs) + " rhs " + std::to_string(s.rhs);
        return std::string();
    });
    rec.guard("Hardy-Williams divisor sums", [&] {
        for (i64 m = 1; m <= 100; m += 2) {
            if (m * m < 105 || std::gcd<i64>(105, m) != 1) continue;
            const i64 h = static_cast<i64>(pair_class_number(-7, -15, -m).count());
            const i64 hw = hardy_williams(-7, -15, -m);
            if (hw < 0 || (h != 0 && h != hw)) return "delta=-" + std::to_string(m);
        }
        return std::string();
    });
}

void theta_suite(const VerifyOptions& opts, Recorder rec) {
    bool injected = false;
    rec.guard("Kronecker factorization of genus coefficients", [&] {
        for (i64 d : discriminants(opts.d_min)) {
            auto G = std::make_shared<const ClassGroup>(d);
            for (const auto& g : genus_characters(G)) {
                const auto [d1, d2] = g.genus_factorization();
                const auto r = check_kronecker_factorization(d, d1, d2, opts.theta_N);
                if (!r.ok) return r.detail;
            }
        }
        return std::string();
    });
    rec.guard("coefficient bounds and Hecke relations", [&] {
        for (i64 d : discriminants(opts.d_min)) {
            auto G = std::make_shared<const ClassGroup>(d);
            const IdealCountTable table(G, opts.theta_N);
            for (const auto& c : all_characters(G)) {
                auto t = theta_coefficients(c, table);
                if (opts.inject_fault && !injected) {
                    t.coeffs[1] = -t.coeffs[1];
                    injected = true;
                }
                if (const auto r = check_basics(t); !r.ok) return r.detail;
                if (const auto r = check_hecke_relations(t); !r.ok) return c.id() + " d=" + std::to_string(d) + " " + r.detail;
            }
        }
        return std::string();
    });
    rec.guard("ideal enumeration routes agree", [&] {
        for (i64 d : {-15, -23, -47, -71, -199}) {
            if (d < opts.d_min) continue;
            auto G = std::make_shared<const ClassGroup>(d);
            const IdealCountTable table(G, 300);
            for (i64 n = 1; n <= 300; ++n) {
                const auto direct = ideal_class_counts(*G, n);
                for (std::size_t c = 0; c < G->order(); ++c)
                    if (direct[c] != table.count(n, c)) return "d=" + std::to_string(d) + " n=" + std::to_string(n);
            }
        }
        return std::string();
    });
}

void kernel_suite(const VerifyOptions& opts, Recorder rec) {
    rec.guard("ball volume oracle", [&] {
        for (double R : {0.1, 1.0, 5.0, 10.0}) {
            const auto e = h_R(R, {0, 0.5});
            const double want = 4 * std::numbers::pi * std::pow(std::sinh(R / 2), 2);
            if (std::abs(e.value.real() - want) > 1e-8) return "R=" + std::to_string(R);
        }
        return std::string();
    });
    rec.guard("main term of h+-(i/2)", [&] {
        for (double X : {10.0, 100.0, 1000.0, 10000.0}) {
            const double delta = std::pow(X, -1.0 / 3);
            for (Sign s : {Sign::Plus, Sign::Minus})
                if (std::abs(h_pm(X, delta, {0, 0.5}, s) - std::numbers::pi * X) > 5 * (1 + delta * X))
                    return "X=" + std::to_string(X);
        }
        return std::string();
    });
    rec.guard("squeeze K- <= N <= K+", [&] {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> U(0, 1);
        for (int i = 0; i < 10; ++i) {
            const PlanePoint z(U(rng) - 0.5, 0.5 + U(rng)), w(U(rng) - 0.5, 0.5 + U(rng));
            const double X = 5 + 100 * U(rng), delta = 0.05 + 0.5 * U(rng);
            const double N = static_cast<double>(count_general(z, w, X).count);
            if (!(K_pm_count(z, w, X, delta, Sign::Minus) <= N && N <= K_pm_count(z, w, X, delta, Sign::Plus)))
                return "instance " + std::to_string(i);
        }
        return std::string();
    });
}

void moments_suite(const VerifyOptions& opts, Recorder rec) {
    rec.guard("h_a(c) table", [&]() -> std::string {
        for (int a = 0; a <= 20; ++a) {
            i64 edge = 0;
            for (int c = 0; c <= a; ++c) {
                const auto h = h_coeff(a, c);
                if (h.exact < 0 || h.exact > (i64(1) << (a + 1))) return "bound fails at a=" + std::to_string(a);
                edge += h.exact * (c + 1);
            }
            if (edge != (i64(1) << a)) return "edge identity fails at a=" + std::to_string(a);
            if (a % 2 == 1 && h_coeff_exact(a, 0) != 0) return "odd a with h_a(0) != 0";
        }
        return h_coeff_exact(2, 0) == 1 ? std::string() : std::string("h_2(0) != 1");
    });
    rec.guard("power expansion identity", [&] {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> U(-1, 1);
        for (int i = 0; i < 50; ++i) {
            std::map<i64, double> b;
            SymbolicEigenvalues lam;
            for (u64 p : primes_up_to(50)) {
                b[static_cast<i64>(p)] = 4 * U(rng);
                lam.lambda[static_cast<i64>(p)] = 2 * U(rng);
            }
            const auto r = p_expand_identity(2, 20 + i % 30, b, lam, 1 + i % 4);
            if (!r.ok) return "case " + std::to_string(i);
        }
        return std::string();
    });
    rec.guard("exponent lower bound", [&] {
        const auto r = theta_lower_bound(-15, -35);
        return r.ok ? std::string() : "min theta " + r.min_theta.str();
    });
    rec.guard("elementary inequalities", [&] {
        const auto r = elementary_inequalities(10000, opts.seed);
        return r.violations == 0 ? std::string() : r.first_violation;
    });
    rec.guard("schedule invariants", [&] {
        const auto s = schedule(20, 10);
        return s.R() >= 1 ? std::string() : std::string("empty schedule");
    });
}

} // namespace

bool VerifyReport::ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

std::string VerifyReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["seed"] = seed;
    doc["ok"] = ok();
    doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks)
        doc["checks"].push_back({{"suite", c.suite}, {"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return doc.dump(2);
}

VerifyReport run_verify(const VerifyOptions& opts) {
    static const std::vector<std::pair<std::string, void (*)(const VerifyOptions&, Recorder)>> suites{
        {"forms", forms_suite}, {"theta", theta_suite}, {"kernel", kernel_suite}, {"moments", moments_suite}};
    VerifyReport report;
    report.seed = opts.seed;
    bool found = false;
    for (const auto& [name, fn] : suites) {
        if (opts.suite != "all" && opts.suite != name) continue;
        found = true;
        fn(opts, Recorder{name, report.checks});
    }
    if (!found) throw std::invalid_argument("verify: unknown suite '" + opts.suite + "'");
    return report;
}

} // namespace hypercount
