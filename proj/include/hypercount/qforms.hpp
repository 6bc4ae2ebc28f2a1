#pragma once

// Positive definite binary quadratic forms a x^2 + b x y + c y^2: reduction,
// composition, class groups and their characters.

#include <complex>
#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hypercount/arith.hpp"

namespace hypercount {

struct QuadForm {
    i64 a = 0, b = 0, c = 0;

    i64 disc() const { return b * b - 4 * a * c; }
    bool positive_definite() const { return a > 0 && disc() < 0; }
    /// Value at (x, y).
    i128 operator()(i64 x, i64 y) const {
        return i128(a) * x * x + i128(b) * x * y + i128(c) * y * y;
    }
    std::string str() const;

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

/// Integer 2x2 matrix (alpha beta; gamma delta).
struct Mat2 {
    i64 a = 1, b = 0, c = 0, d = 1;

    i64 det() const { return a * d - b * c; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 inverse() const { return {d, -b, -c, a}; } // det 1 only
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// f^M(x, y) = f(alpha x + beta y, gamma x + delta y).
QuadForm act(const QuadForm& f, const Mat2& m);

struct Reduction {
    QuadForm form;
    Mat2 transform; // act(input, transform) == form
};

/// |b| <= a <= c, and b >= 0 when |b| == a or a == c.
bool is_reduced(const QuadForm& f);

/// Throws std::invalid_argument for indefinite or degenerate input.
Reduction reduce(const QuadForm& f);

/// Reduced representative of the product class. Throws on mismatched discriminants.
QuadForm compose(const QuadForm& f, const QuadForm& g);

/// Number of SL2(Z) automorphs of a positive definite form (2, 4 or 6).
int automorph_count(i64 d);

/// SL2(Z) matrices fixing the reduced form f (including -I).
std::vector<Mat2> automorphs(const QuadForm& reduced);

class ClassGroup {
public:
    struct Generator {
        std::size_t index;
        std::size_t order;
    };

    /// Throws std::invalid_argument unless d < 0 is squarefree and d = 1 mod 4.
    explicit ClassGroup(i64 d);

    /// Rebuilds from serialized parts, validating the table.
    ClassGroup(i64 d, std::vector<QuadForm> forms, std::vector<std::vector<std::size_t>> table,
               std::vector<Generator> generators);

    i64 disc() const { return d_; }
    std::size_t order() const { return forms_.size(); }
    const std::vector<QuadForm>& forms() const { return forms_; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }
    const std::vector<Generator>& generators() const { return generators_; }

    std::size_t identity() const { return 0; }
    std::size_t mul(std::size_t i, std::size_t j) const { return table_[i][j]; }
    std::size_t inverse(std::size_t i) const;
    std::size_t element_order(std::size_t i) const;

    /// Index of the class of f (reduces f). Throws on discriminant mismatch.
    std::size_t index_of(const QuadForm& f) const;
    /// Index of an already reduced form, or order() if absent.
    std::size_t find_reduced(const QuadForm& f) const;

    /// Exponents of class i against the generators.
    const std::vector<std::size_t>& coordinates(std::size_t i) const { return coords_[i]; }

private:
    void build_table();
    void find_generators();
    void build_coordinates();

    i64 d_;
    std::vector<QuadForm> forms_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<Generator> generators_;
    std::vector<std::vector<std::size_t>> coords_;
};

/// Canonical order of reduced forms: a, then |b|, positive b first.
bool canonical_less(const QuadForm& x, const QuadForm& y);

struct GeneralCharacter {
    std::vector<std::size_t> exponents; // one per generator
};
struct GenusCharacter {
    i64 d1, d2; // d1 * d2 == d, d1 > 0
};

class ClassCharacter {
public:
    using Kind = std::variant<GeneralCharacter, GenusCharacter>;

    ClassCharacter(std::shared_ptr<const ClassGroup> group, Kind kind);

    const ClassGroup& group() const { return *group_; }
    std::shared_ptr<const ClassGroup> group_ptr() const { return group_; }
    const Kind& kind() const { return kind_; }
    bool is_genus_kind() const { return std::holds_alternative<GenusCharacter>(kind_); }

    std::complex<double> value(std::size_t class_index) const { return values_[class_index]; }
    const std::vector<std::complex<double>>& values() const { return values_; }

    /// All values in {+1, -1}.
    bool is_real() const;
    bool is_trivial() const;
    /// For a real character, the factorization d = d1 * d2 realizing it.
    std::pair<i64, i64> genus_factorization() const;
    /// Stable textual id: "trivial", "genus:d1,d2" or "exp:e1,e2,...".
    std::string id() const;

private:
    std::shared_ptr<const ClassGroup> group_;
    Kind kind_;
    std::vector<std::complex<double>> values_;
};

/// Genus character value on a single form: kronecker(d_i, n) for n represented by f, gcd(n, d) = 1.
int genus_value(i64 d1, i64 d2, const QuadForm& f);

/// 2^{k-1} genus characters, trivial first.
std::vector<ClassCharacter> genus_characters(const std::shared_ptr<const ClassGroup>& group);

/// All h(d) characters from generator exponent tuples, trivial first.
std::vector<ClassCharacter> all_characters(const std::shared_ptr<const ClassGroup>& group);

/// Parses the id() format back into a character.
ClassCharacter parse_character(const std::shared_ptr<const ClassGroup>& group, const std::string& id);

std::complex<double> char_value(const ClassCharacter& chi, const QuadForm& f);

} // namespace hypercount
