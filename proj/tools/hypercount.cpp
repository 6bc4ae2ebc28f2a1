// hypercount: command-line front end.
//
// Exit codes: 0 success, 1 invariant failure, 2 usage or precondition error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypercount/cache.hpp"
#include "hypercount/count.hpp"
#include "hypercount/kernel.hpp"
#include "hypercount/momentkit.hpp"
#include "hypercount/verify.hpp"

using namespace hypercount;

namespace {

struct invariant_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

i64 to_int(const std::string& s) {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not an integer: " + s);
    return v;
}

PlanePoint parse_point(const std::string& s) {
    if (s == "i") return PlanePoint::i();
    if (s == "rho") return PlanePoint::rho();
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw std::invalid_argument("point must be i, rho or x,y: " + s);
    return PlanePoint(std::stod(parts[0]), std::stod(parts[1]));
}

QuadForm parse_form(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 3) throw std::invalid_argument("form must be a,b,c: " + s);
    return {to_int(parts[0]), to_int(parts[1]), to_int(parts[2])};
}

// "p/q", an integer or a finite decimal.
Threshold parse_rational(const std::string& s) {
    if (const auto slash = s.find('/'); slash != std::string::npos)
        return Threshold(to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Threshold(to_int(s));
    const std::string frac = s.substr(dot + 1);
    if (frac.size() > 15) throw std::invalid_argument("too many decimals: " + s);
    i64 den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    const std::string whole = s.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    const i64 w = whole.empty() || whole == "-" ? 0 : to_int(whole);
    const i64 f = frac.empty() ? 0 : to_int(frac);
    return Threshold(w * den + (neg ? -f : f), den);
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output " + path);
        }
    }
    std::ostream& operator*() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct Common {
    std::string output;
    std::string format = "csv";
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--output,-o", c.output, "Output file (default stdout)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void emit_count(std::ostream& out, const Common& c, const CountReport& r, bool halve, bool& header) {
    const double k = halve ? 0.5 : 1.0;
    const i64 count = halve ? r.count / 2 : r.count;
    if (c.format == "json") {
        nlohmann::ordered_json j{{"X", r.X}, {"count", count}, {"main_term", k * r.main_term}, {"error", k * r.error},
                                 {"mode", r.mode == CountMode::Float ? "float" : "exact"}};
        out << j.dump() << '\n';
        return;
    }
    if (!header) {
        out << "X,count,main_term,error\n";
        header = true;
    }
    out << real(r.X) << ',' << count << ',' << real(k * r.main_term) << ',' << real(k * r.error) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic lattice point counts and the arithmetic of Heegner points"};
    app.set_config("--config", "", "INI file with one section per subcommand");
    app.require_subcommand(1);
    app.fallthrough();
    std::string cache_dir;
    app.add_option("--cache-dir", cache_dir, "Cache directory (HYPERCOUNT_CACHE takes precedence)");
    auto cache = [&] {
        return Cache(cache_directory(cache_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(cache_dir)));
    };
    std::function<void()> run;

    // count
    Common count_io;
    std::string z_s, w_s, form_s, form0_s, x_exact;
    std::vector<std::string> X_s;
    bool exact = false, mod_pm1 = false, shells = false;
    unsigned threads = 1;
    auto* count = app.add_subcommand("count", "N(X; z, w) for general or Heegner points");
    count->add_option("--z", z_s, "Point z: i, rho or x,y");
    count->add_option("--w", w_s, "Point w: i, rho or x,y");
    count->add_option("--form0", form0_s, "Form a,b,c whose Heegner point is z");
    count->add_option("--form", form_s, "Form a,b,c whose Heegner point is w");
    count->add_option("--X", X_s, "Threshold(s) on 4u + 2");
    count->add_option("--X-exact", x_exact, "Exact threshold: rational p/q or m<=k on the codiscriminant");
    count->add_flag("--exact", exact, "Exact integer adjudication (needs --form and --form0)");
    count->add_flag("--mod-pm1", mod_pm1, "Count gamma and -gamma once");
    count->add_flag("--shells", shells, "Also list the distance shells (json only)");
    count->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));
    add_common(count, count_io);
    count->callback([&] {
        run = [&] {
            Output out(count_io.output);
            bool header = false;
            const bool have_forms = !form_s.empty() && !form0_s.empty();
            if (!x_exact.empty() || exact) {
                if (!have_forms) throw std::invalid_argument("exact counting needs --form and --form0");
                const QuadForm p = parse_form(form_s), p0 = parse_form(form0_s);
                std::vector<std::string> thresholds = X_s;
                if (!x_exact.empty()) thresholds = {x_exact};
                for (const auto& t : thresholds) {
                    CountReport r;
                    if (t.rfind("m<=", 0) == 0) r = count_heegner_codisc(p, p0, to_int(t.substr(3)));
                    else r = count_heegner_exact(p, p0, parse_rational(t));
                    emit_count(*out, count_io, r, mod_pm1, header);
                }
                return;
            }
            if (X_s.empty()) throw std::invalid_argument("--X is required");
            const PlanePoint z = have_forms ? PlanePoint::from_form(parse_form(form0_s)) : parse_point(z_s.empty() ? "i" : z_s);
            const PlanePoint w = have_forms ? PlanePoint::from_form(parse_form(form_s)) : parse_point(w_s.empty() ? "i" : w_s);
            for (const auto& xs : X_s) {
                const auto r = count_general(z, w, std::stod(xs), {threads, shells});
                if (shells && count_io.format == "json") {
                    nlohmann::ordered_json j{{"X", r.X}, {"count", mod_pm1 ? r.count / 2 : r.count}, {"shells", nlohmann::json::array()}};
                    for (const auto& s : r.shells) j["shells"].push_back({s.value, mod_pm1 ? s.multiplicity / 2 : s.multiplicity});
                    *out << j.dump() << '\n';
                } else {
                    emit_count(*out, count_io, r, mod_pm1, header);
                }
            }
        };
    });

    // theta
    Common theta_io;
    i64 theta_d = -15, theta_N = 100;
    std::string theta_char = "trivial";
    auto* theta = app.add_subcommand("theta", "Theta series coefficients lambda(n), n = 0..N");
    theta->add_option("--d", theta_d, "Discriminant");
    theta->add_option("--char", theta_char, "trivial, genus:d1,d2 or exp:e1,...");
    theta->add_option("--N", theta_N, "Truncation")->check(CLI::Range(i64(0), i64(10000000)));
    add_common(theta, theta_io);
    theta->callback([&] {
        run = [&] {
            const auto G = cache().class_group(theta_d);
            const auto chi = parse_character(G, theta_char);
            const auto t = cache().theta(chi, theta_N);
            Output out(theta_io.output);
            if (theta_io.format == "json") {
                *out << nlohmann::ordered_json{{"d", t.d}, {"character", t.character}, {"N", t.N}, {"coeffs", t.coeffs}}.dump() << '\n';
                return;
            }
            *out << "n,lambda\n";
            for (std::size_t n = 0; n < t.coeffs.size(); ++n) *out << n << ',' << real(t.coeffs[n]) << '\n';
        };
    });

    // classgroup
    Common cg_io;
    i64 cg_d = -23;
    auto* cg = app.add_subcommand("classgroup", "Class group as JSON (d, forms, table, generators)");
    cg->add_option("--d", cg_d, "Discriminant");
    add_common(cg, cg_io);
    cg->callback([&] {
        run = [&] {
            Output out(cg_io.output);
            *out << class_group_to_json(*cache().class_group(cg_d)) << '\n';
        };
    });

    // pairclass
    Common pc_io;
    i64 pc_d = -7, pc_d0 = -15, pc_delta = 0, pc_max = 0;
    auto* pc = app.add_subcommand("pairclass", "Pair class numbers h(d, d0, delta) and Hardy-Williams sums");
    pc->add_option("--d", pc_d, "Discriminant of p");
    pc->add_option("--d0", pc_d0, "Discriminant of p0");
    pc->add_option("--delta", pc_delta, "Codiscriminant delta < 0");
    pc->add_option("--delta-max", pc_max, "Sweep 0 < -delta <= this bound");
    add_common(pc, pc_io);
    pc->callback([&] {
        run = [&] {
            std::vector<i64> deltas;
            if (pc_max > 0) {
                for (i64 m = 1; m <= pc_max; ++m)
                    if (i128(m) * m >= i128(pc_d) * pc_d0) deltas.push_back(-m);
            } else {
                if (pc_delta >= 0) throw std::invalid_argument("--delta must be negative (or use --delta-max)");
                deltas.push_back(pc_delta);
            }
            Output out(pc_io.output);
            if (pc_io.format == "csv") *out << "delta,h,hardy_williams\n";
            for (i64 delta : deltas) {
                const auto inst = pair_class_number(pc_d, pc_d0, delta);
                std::optional<i64> hw;
                try {
                    hw = hardy_williams(pc_d, pc_d0, delta);
                } catch (const std::invalid_argument&) {
                }
                if (pc_io.format == "json") {
                    nlohmann::ordered_json j{{"delta", delta}, {"h", inst.count()}, {"representatives", nlohmann::json::array()}};
                    j["hardy_williams"] = hw ? nlohmann::json(*hw) : nlohmann::json(nullptr);
                    for (const auto& [p, p0] : inst.representatives)
                        j["representatives"].push_back({{p.a, p.b, p.c}, {p0.a, p0.b, p0.c}});
                    *out << j.dump() << '\n';
                } else {
                    *out << delta << ',' << inst.count() << ',' << (hw ? std::to_string(*hw) : "") << '\n';
                }
            }
        };
    });

    // kernel
    Common k_io;
    double k_R = 0, k_delta = 0, k_X = 0;
    std::vector<double> k_t;
    std::string k_sign = "+";
    auto* kernel = app.add_subcommand("kernel", "Transforms h_R, h_delta, h+- on a t grid");
    kernel->add_option("--R", k_R, "Radius for h_R");
    kernel->add_option("--t", k_t, "Spectral parameters (real)")->required();
    kernel->add_option("--delta", k_delta, "Smoothing radius");
    kernel->add_option("--X", k_X, "Threshold for h+-");
    kernel->add_option("--sign", k_sign, "+ or -")->check(CLI::IsMember({"+", "-"}));
    add_common(kernel, k_io);
    kernel->callback([&] {
        run = [&] {
            Output out(k_io.output);
            const Sign sign = k_sign == "+" ? Sign::Plus : Sign::Minus;
            if (k_io.format == "csv") *out << "t,value,bound_ratio\n";
            for (double t : k_t) {
                double value, bound;
                const double at = std::abs(t);
                if (k_R > 0) {
                    value = h_R(k_R, t).value.real();
                    bound = std::exp(k_R / 2) / std::pow(1 + at, 1.5);
                } else if (k_X > 0) {
                    if (!(k_delta > 0)) throw std::invalid_argument("--X needs --delta");
                    value = h_pm(k_X, k_delta, t, sign).real();
                    bound = std::sqrt(k_X) * std::min({std::pow(at, -1.5), std::pow(k_delta, -1.5) * std::pow(at, -3.0), std::log(k_X)});
                } else if (k_delta > 0) {
                    value = h_delta(k_delta, t).value.real();
                    bound = std::min(1.0, std::pow(k_delta * at, -1.5));
                } else {
                    throw std::invalid_argument("kernel needs --R, --X with --delta, or --delta");
                }
                const double ratio = std::abs(value) / bound;
                if (k_io.format == "json")
                    *out << nlohmann::ordered_json{{"t", t}, {"value", value}, {"bound_ratio", ratio}}.dump() << '\n';
                else
                    *out << real(t) << ',' << real(value) << ',' << real(ratio) << '\n';
            }
        };
    });

    // moments
    Common m_io;
    i64 m_d = -15, m_dp = -15;
    std::string m_char = "trivial", m_charp = "trivial";
    std::vector<double> m_grid{1e3, 1e4, 1e5, 1e6};
    bool m_exponents = false;
    auto* moments = app.add_subcommand("moments", "Prime sums of lambda_chi(p) lambda_chi'(p) / p");
    moments->add_option("--d", m_d, "Discriminant of chi");
    moments->add_option("--dprime", m_dp, "Discriminant of chi'");
    moments->add_option("--char", m_char, "Character id of chi");
    moments->add_option("--charprime", m_charp, "Character id of chi'");
    moments->add_option("--x-grid", m_grid, "Values of x")->delimiter(',');
    moments->add_flag("--exponents", m_exponents, "Print eta and theta instead (needs d != d')");
    add_common(moments, m_io);
    moments->callback([&] {
        run = [&] {
            const auto chi = parse_character(cache().class_group(m_d), m_char);
            const auto chip = parse_character(cache().class_group(m_dp), m_charp);
            Output out(m_io.output);
            if (m_exponents) {
                const auto e = exponent_tables(chi, chip);
                if (m_io.format == "json")
                    *out << nlohmann::ordered_json{{"eta", e.eta.str()}, {"theta", e.theta.str()}}.dump() << '\n';
                else
                    *out << "eta,theta\n" << e.eta.str() << ',' << e.theta.str() << '\n';
                return;
            }
            if (m_io.format == "csv") *out << "x,sum,predicted,drift\n";
            for (const auto& r : orthogonality_series(chi, chip, m_grid)) {
                const double predicted = r.sum - r.drift;
                if (m_io.format == "json")
                    *out << nlohmann::ordered_json{{"x", r.x}, {"sum", r.sum}, {"predicted", predicted}, {"drift", r.drift}}.dump() << '\n';
                else
                    *out << real(r.x) << ',' << real(r.sum) << ',' << real(predicted) << ',' << real(r.drift) << '\n';
            }
        };
    });

    // error-moment
    Common em_io;
    i64 em_d = -7, em_dp = -15;
    std::vector<double> em_X{1000};
    std::size_t em_samples = 200;
    auto* em = app.add_subcommand("error-moment", "E(x) = N(x) - 6x on [X, 2X] for principal Heegner points");
    em->add_option("--d", em_d, "Discriminant of z");
    em->add_option("--dprime", em_dp, "Discriminant of w");
    em->add_option("--X", em_X, "Left end(s) X <= 10^6")->delimiter(',');
    em->add_option("--samples", em_samples, "Grid points per X")->check(CLI::Range(std::size_t(1), std::size_t(1000000)));
    add_common(em, em_io);
    em->callback([&] {
        run = [&] {
            for (double X : em_X)
                if (!(X <= 1e6)) throw std::invalid_argument("error-moment: X must be <= 10^6");
            const PlanePoint z = PlanePoint::from_form(ClassGroup(em_d).forms().front());
            const PlanePoint w = PlanePoint::from_form(ClassGroup(em_dp).forms().front());
            std::vector<ErrorMoment> ms;
            for (double X : em_X) ms.push_back(error_moment(z, w, X, em_samples));
            nlohmann::ordered_json summary = nlohmann::ordered_json::array();
            for (const auto& m : ms) summary.push_back({{"X", m.X}, {"mean_E", m.mean_E}, {"mean_E2", m.mean_E2}});
            std::optional<double> slope;
            if (ms.size() >= 2) slope = fitted_exponent(ms);
            Output out(em_io.output);
            if (em_io.format == "json") {
                nlohmann::ordered_json doc{{"summary", summary}};
                doc["fitted_exponent"] = slope ? nlohmann::json(*slope) : nlohmann::json(nullptr);
                doc["rows"] = nlohmann::ordered_json::array();
                for (const auto& m : ms)
                    for (const auto& s : m.samples) doc["rows"].push_back({{"X", m.X}, {"x", s.x}, {"E", s.E}});
                *out << doc.dump() << '\n';
                return;
            }
            *out << "X,x,E\n";
            for (const auto& m : ms)
                for (const auto& s : m.samples) *out << real(m.X) << ',' << real(s.x) << ',' << real(s.E) << '\n';
            for (const auto& m : ms)
                std::cerr << "summary X=" << real(m.X) << " mean_E=" << real(m.mean_E) << " mean_E2=" << real(m.mean_E2) << '\n';
            if (slope) std::cerr << "summary fitted_exponent=" << real(*slope) << '\n';
        };
    });

    // verify
    VerifyOptions vopt;
    std::string v_out;
    auto* verify = app.add_subcommand("verify", "Run the invariant suites; JSON report");
    verify->add_option("--suite", vopt.suite, "all, forms, theta, kernel or moments")
        ->check(CLI::IsMember({"all", "forms", "theta", "kernel", "moments"}));
    verify->add_option("--seed", vopt.seed, "Seed for randomized sweeps");
    verify->add_option("--theta-N", vopt.theta_N, "Theta truncation")->check(CLI::Range(i64(1), i64(10000)));
    verify->add_option("--d-min", vopt.d_min, "Smallest discriminant swept")->check(CLI::Range(i64(-100000), i64(-3)));
    verify->add_flag("--inject-fault", vopt.inject_fault, "Test only: corrupt one theta coefficient")->group("");
    verify->add_option("--output,-o", v_out, "Output file (default stdout)");
    verify->callback([&] {
        run = [&] {
            const auto report = run_verify(vopt);
            Output out(v_out);
            *out << report.to_json() << '\n';
            if (!report.ok()) throw invariant_failure("verify: invariant violated");
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (run) run();
    } catch (const invariant_failure& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
