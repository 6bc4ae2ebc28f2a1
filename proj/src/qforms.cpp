#include "hypercount/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hypercount {

namespace {

i64 narrow(i128 v, const char* what) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) throw std::overflow_error(std::string(what) + ": coefficient overflow");
    return static_cast<i64>(v);
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

std::string QuadForm::str() const {
    std::ostringstream os;
    os << '(' << a << ',' << b << ',' << c << ')';
    return os.str();
}

QuadForm act(const QuadForm& f, const Mat2& m) {
    const i128 a = f(m.a, m.c);
    const i128 c = f(m.b, m.d);
    const i128 b = 2 * i128(f.a) * m.a * m.b + i128(f.b) * (i128(m.a) * m.d + i128(m.b) * m.c) +
                   2 * i128(f.c) * m.c * m.d;
    return {narrow(a, "act"), narrow(b, "act"), narrow(c, "act")};
}

bool is_reduced(const QuadForm& f) {
    if (!(std::abs(f.b) <= f.a && f.a <= f.c)) return false;
    if ((std::abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

Reduction reduce(const QuadForm& f) {
    if (f.a <= 0 || f.disc() >= 0)
        throw std::invalid_argument("reduce: form " + f.str() + " is not positive definite");
    i128 a = f.a, b = f.b, c = f.c;
    Mat2 m;
    auto normalize = [&] {
        const i128 n = floor_div(a - b, 2 * a);
        if (n == 0) return;
        c = a * n * n + b * n + c;
        b = b + 2 * a * n;
        m = m * Mat2{1, narrow(n, "reduce"), 0, 1};
    };
    auto swap_ac = [&] {
        std::swap(a, c);
        b = -b;
        m = m * Mat2{0, -1, 1, 0};
    };
    normalize();
    while (a > c) {
        swap_ac();
        normalize();
    }
    if (a == c && b < 0) swap_ac();
    return {{narrow(a, "reduce"), narrow(b, "reduce"), narrow(c, "reduce")}, m};
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    if (f.disc() != g.disc())
        throw std::invalid_argument("compose: discriminant mismatch " + f.str() + " vs " + g.str());
    if (!f.positive_definite() || !g.positive_definite())
        throw std::invalid_argument("compose: forms must be positive definite");
    QuadForm f1 = f, f2 = g;
    if (f1.a > f2.a) std::swap(f1, f2);
    const i64 s = (f1.b + f2.b) / 2;
    const i64 n = f2.b - s;
    i64 y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        const auto e = ext_gcd(f2.a, f1.a);
        y1 = e.x;
        d = e.g;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        const auto e = ext_gcd(s, d);
        x2 = e.x;
        y2 = -e.y;
        d1 = e.g;
    }
    const i64 v1 = f1.a / d1;
    const i64 v2 = f2.a / d1;
    const i128 r128 = (i128(y1) * y2 * n - i128(x2) * f2.c) % v1;
    const i64 r = static_cast<i64>(r128 < 0 ? r128 + v1 : r128);
    const i128 a3 = i128(v1) * v2;
    const i128 b3 = i128(f2.b) + 2 * i128(v2) * r;
    const i128 num = b3 * b3 - f.disc();
    if (num % (4 * a3) != 0) throw std::logic_error("compose: non-integral composite");
    const QuadForm h{narrow(a3, "compose"), narrow(b3, "compose"), narrow(num / (4 * a3), "compose")};
    return reduce(h).form;
}

int automorph_count(i64 d) {
    if (d == -3) return 6;
    if (d == -4) return 4;
    return 2;
}

std::vector<Mat2> automorphs(const QuadForm& reduced) {
    std::vector<Mat2> out;
    for (i64 a = -2; a <= 2; ++a)
        for (i64 b = -2; b <= 2; ++b)
            for (i64 c = -2; c <= 2; ++c)
                for (i64 d = -2; d <= 2; ++d) {
                    const Mat2 m{a, b, c, d};
                    if (m.det() == 1 && act(reduced, m) == reduced) out.push_back(m);
                }
    return out;
}

bool canonical_less(const QuadForm& x, const QuadForm& y) {
    if (x.a != y.a) return x.a < y.a;
    if (std::abs(x.b) != std::abs(y.b)) return std::abs(x.b) < std::abs(y.b);
    if (x.b != y.b) return x.b > y.b;
    return x.c < y.c;
}

ClassGroup::ClassGroup(i64 d) : d_(d) {
    if (!is_odd_squarefree_discriminant(d))
        throw std::invalid_argument("ClassGroup: d must be negative, squarefree and 1 mod 4, got " + std::to_string(d));
    const i64 amax = static_cast<i64>(isqrt(static_cast<u64>(-d) / 3));
    for (i64 a = 1; a <= amax; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            const i64 num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const QuadForm f{a, b, num / (4 * a)};
            if (is_reduced(f)) forms_.push_back(f);
        }
    std::sort(forms_.begin(), forms_.end(), canonical_less);
    build_table();
    find_generators();
    build_coordinates();
}

ClassGroup::ClassGroup(i64 d, std::vector<QuadForm> forms, std::vector<std::vector<std::size_t>> table,
                       std::vector<Generator> generators)
    : d_(d), forms_(std::move(forms)), table_(std::move(table)), generators_(std::move(generators)) {
    const ClassGroup fresh(d);
    if (fresh.forms_ != forms_ || fresh.table_ != table_)
        throw std::invalid_argument("ClassGroup: serialized data does not match d = " + std::to_string(d));
    std::size_t prod = 1;
    for (const auto& g : generators_) {
        if (g.index >= forms_.size() || element_order(g.index) != g.order)
            throw std::invalid_argument("ClassGroup: bad generator");
        prod *= g.order;
    }
    if (prod != forms_.size()) throw std::invalid_argument("ClassGroup: generator orders do not multiply to h");
    build_coordinates();
}

std::size_t ClassGroup::find_reduced(const QuadForm& f) const {
    const auto it = std::lower_bound(forms_.begin(), forms_.end(), f, canonical_less);
    if (it != forms_.end() && *it == f) return static_cast<std::size_t>(it - forms_.begin());
    return forms_.size();
}

std::size_t ClassGroup::index_of(const QuadForm& f) const {
    if (f.disc() != d_)
        throw std::invalid_argument("ClassGroup: form " + f.str() + " has discriminant " + std::to_string(f.disc()) +
                                    ", expected " + std::to_string(d_));
    const std::size_t i = find_reduced(reduce(f).form);
    if (i == forms_.size()) throw std::logic_error("ClassGroup: reduced form missing from table");
    return i;
}

void ClassGroup::build_table() {
    const std::size_t h = forms_.size();
    table_.assign(h, std::vector<std::size_t>(h));
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i; j < h; ++j) {
            const std::size_t k = find_reduced(compose(forms_[i], forms_[j]));
            if (k == h) throw std::logic_error("ClassGroup: composition left the form list");
            table_[i][j] = table_[j][i] = k;
        }
}

std::size_t ClassGroup::inverse(std::size_t i) const {
    for (std::size_t j = 0; j < order(); ++j)
        if (table_[i][j] == identity()) return j;
    throw std::logic_error("ClassGroup: no inverse");
}

std::size_t ClassGroup::element_order(std::size_t i) const {
    std::size_t k = 1, x = i;
    while (x != identity()) {
        x = table_[x][i];
        ++k;
    }
    return k;
}

void ClassGroup::find_generators() {
    const std::size_t h = order();
    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i < h; ++i) candidates.push_back(i);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t x, std::size_t y) { return element_order(x) > element_order(y); });

    // Depth-first search for cyclic subgroups forming an internal direct product.
    std::vector<Generator> chosen;
    std::function<bool(const std::vector<bool>&, std::size_t)> search = [&](const std::vector<bool>& members,
                                                                          std::size_t size) {
        if (size == h) return true;
        for (std::size_t g : candidates) {
            const std::size_t ord = element_order(g);
            bool disjoint = true;
            for (std::size_t k = 1, x = g; k < ord; ++k, x = table_[x][g])
                if (members[x]) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            std::vector<bool> next(h, false);
            for (std::size_t m = 0; m < h; ++m) {
                if (!members[m]) continue;
                for (std::size_t k = 0, x = m; k < ord; ++k, x = table_[x][g]) next[x] = true;
            }
            chosen.push_back({g, ord});
            if (search(next, size * ord)) return true;
            chosen.pop_back();
        }
        return false;
    };
    std::vector<bool> trivial(h, false);
    trivial[identity()] = true;
    if (!search(trivial, 1)) throw std::logic_error("ClassGroup: no cyclic decomposition found");
    generators_ = chosen;
}

void ClassGroup::build_coordinates() {
    const std::size_t h = order();
    coords_.assign(h, {});
    std::vector<std::size_t> exps(generators_.size(), 0);
    for (std::size_t count = 0; count < h; ++count) {
        std::size_t x = identity();
        for (std::size_t g = 0; g < generators_.size(); ++g)
            for (std::size_t k = 0; k < exps[g]; ++k) x = table_[x][generators_[g].index];
        coords_[x] = exps;
        for (std::size_t g = 0; g < generators_.size(); ++g) {
            if (++exps[g] < generators_[g].order) break;
            exps[g] = 0;
        }
    }
    for (const auto& c : coords_)
        if (c.size() != generators_.size()) throw std::logic_error("ClassGroup: generators do not span");
}

int genus_value(i64 d1, i64 d2, const QuadForm& f) {
    const i64 d = f.disc();
    if (d1 * d2 != d) throw std::invalid_argument("genus_value: d1 * d2 != disc(f)");
    for (i64 r = 1;; ++r)
        for (i64 x = -r; x <= r; ++x)
            for (i64 y = 0; y <= r; ++y) {
                if (std::max(std::abs(x), y) != r || std::gcd(x, y) != 1) continue;
                const i128 n = f(x, y);
                if (std::gcd(static_cast<i64>(n), d) != 1) continue;
                return kronecker(d1, static_cast<i64>(n));
            }
}

ClassCharacter::ClassCharacter(std::shared_ptr<const ClassGroup> group, Kind kind)
    : group_(std::move(group)), kind_(std::move(kind)) {
    const ClassGroup& G = *group_;
    values_.resize(G.order());
    if (const auto* gen = std::get_if<GeneralCharacter>(&kind_)) {
        if (gen->exponents.size() != G.generators().size())
            throw std::invalid_argument("ClassCharacter: need one exponent per generator");
        for (std::size_t i = 0; i < G.order(); ++i) {
            // Accumulate the phase as an exact fraction of a full turn.
            Rational turn = 0;
            for (std::size_t g = 0; g < gen->exponents.size(); ++g)
                turn += Rational(gen->exponents[g] * G.coordinates(i)[g], G.generators()[g].order);
            turn -= Rational(boost::multiprecision::cpp_int(numerator(turn) / denominator(turn)));
            const Rational twice = 2 * turn;
            if (twice == 0) values_[i] = 1.0;
            else if (twice == 1) values_[i] = -1.0;
            else values_[i] = std::polar(1.0, 2 * std::numbers::pi * turn.convert_to<double>());
        }
    } else {
        const auto& gc = std::get<GenusCharacter>(kind_);
        if (gc.d1 * gc.d2 != G.disc() || mod_floor(gc.d1, 4) != 1 || mod_floor(gc.d2, 4) != 1)
            throw std::invalid_argument("ClassCharacter: genus pair must be discriminants with d1 * d2 = d");
        for (std::size_t i = 0; i < G.order(); ++i) values_[i] = genus_value(gc.d1, gc.d2, G.forms()[i]);
    }
}

bool ClassCharacter::is_real() const {
    return std::all_of(values_.begin(), values_.end(), [](std::complex<double> v) {
        return std::abs(v.imag()) < 1e-12 && std::abs(std::abs(v.real()) - 1) < 1e-12;
    });
}

bool ClassCharacter::is_trivial() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](std::complex<double> v) { return std::abs(v - 1.0) < 1e-12; });
}

std::pair<i64, i64> ClassCharacter::genus_factorization() const {
    if (const auto* gc = std::get_if<GenusCharacter>(&kind_)) return {gc->d1, gc->d2};
    if (!is_real()) throw std::invalid_argument("genus_factorization: character is not real");
    for (const auto& g : genus_characters(group_)) {
        bool same = true;
        for (std::size_t i = 0; i < values_.size() && same; ++i) same = std::abs(values_[i] - g.value(i)) < 1e-9;
        if (same) return g.genus_factorization();
    }
    throw std::logic_error("genus_factorization: real character without genus realization");
}

std::string ClassCharacter::id() const {
    std::ostringstream os;
    if (const auto* gc = std::get_if<GenusCharacter>(&kind_)) {
        os << "genus:" << gc->d1 << ',' << gc->d2;
    } else {
        os << "exp:";
        const auto& e = std::get<GeneralCharacter>(kind_).exponents;
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    }
    return os.str();
}

std::vector<ClassCharacter> genus_characters(const std::shared_ptr<const ClassGroup>& group) {
    const i64 d = group->disc();
    std::vector<u64> primes;
    for (const auto& pe : factorize(static_cast<u64>(-d)).factors) primes.push_back(pe.prime);
    const std::size_t k = primes.size();
    auto D = [](u64 q) { return ((q - 1) / 2) % 2 == 0 ? static_cast<i64>(q) : -static_cast<i64>(q); };
    std::vector<ClassCharacter> out;
    // Unordered pairs {q1, q2}: subsets of all primes but the largest.
    for (u64 mask = 0; mask < (u64{1} << (k - 1)); ++mask) {
        u64 q1 = 1;
        for (std::size_t i = 0; i + 1 < k; ++i)
            if (mask >> i & 1) q1 *= primes[i];
        const u64 q2 = static_cast<u64>(-d) / q1;
        i64 d1 = D(q1), d2 = D(q2);
        if (d1 < 0) std::swap(d1, d2);
        out.emplace_back(group, GenusCharacter{d1, d2});
    }
    return out;
}

std::vector<ClassCharacter> all_characters(const std::shared_ptr<const ClassGroup>& group) {
    const auto& gens = group->generators();
    std::vector<ClassCharacter> out;
    std::vector<std::size_t> e(gens.size(), 0);
    for (std::size_t count = 0; count < group->order(); ++count) {
        out.emplace_back(group, GeneralCharacter{e});
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (++e[g] < gens[g].order) break;
            e[g] = 0;
        }
    }
    return out;
}

ClassCharacter parse_character(const std::shared_ptr<const ClassGroup>& group, const std::string& id) {
    auto numbers = [](const std::string& s) {
        std::vector<i64> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
        return out;
    };
    if (id == "trivial") return {group, GeneralCharacter{std::vector<std::size_t>(group->generators().size(), 0)}};
    if (id.rfind("genus:", 0) == 0) {
        const auto v = numbers(id.substr(6));
        if (v.size() != 2) throw std::invalid_argument("parse_character: genus needs d1,d2");
        return {group, GenusCharacter{v[0], v[1]}};
    }
    if (id.rfind("exp:", 0) == 0) {
        std::vector<std::size_t> e;
        for (i64 x : numbers(id.substr(4))) {
            if (x < 0) throw std::invalid_argument("parse_character: negative exponent");
            e.push_back(static_cast<std::size_t>(x));
        }
        if (e.empty()) e.assign(group->generators().size(), 0);
        return {group, GeneralCharacter{e}};
    }
    throw std::invalid_argument("parse_character: unknown character id '" + id + "'");
}

std::complex<double> char_value(const ClassCharacter& chi, const QuadForm& f) {
    return chi.value(chi.group().index_of(f));
}

} // namespace hypercount
