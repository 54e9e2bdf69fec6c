#ifndef SQCAT_K0_HPP
#define SQCAT_K0_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "sqcat/double.hpp"

namespace sqcat::k0 {

/// Dense integer matrix with exact arbitrary-precision entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpz_class& at(int r, int c) { return data_[r * cols_ + c]; }
    const mpz_class& at(int r, int c) const { return data_[r * cols_ + c]; }
    static IntMatrix identity(int n);
    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const = default;
    mpz_class determinant() const;  // square matrices, exact fraction-free elimination

private:
    int rows_ = 0, cols_ = 0;
    std::vector<mpz_class> data_;
};

/// D = U * A * V with U, V unimodular and D diagonal with d1 | d2 | ...
struct SNFResult {
    IntMatrix D, U, V;
    std::vector<mpz_class> diagonal() const;
};

SNFResult smith_normal_form(const IntMatrix& a);

/// K0 of a squares category presented by generators (objects) and the
/// relations [O] = 0 and [A] + [D] = [B] + [C] per square.
struct K0Result {
    int free_rank = 0;
    std::vector<mpz_class> torsion;  // invariant factors > 1
    /// object -> coordinates: first torsion.size() entries are torsion
    /// coordinates (reduced mod the factor), the rest free coordinates.
    std::vector<std::vector<mpz_class>> images;
    std::vector<std::string> generators;  // object ids, matching images

    // full change of basis, kept for exact membership tests
    IntMatrix V;
    std::vector<mpz_class> diag;  // all invariant factors (including 1s)
    std::string to_string() const;
};

K0Result k0_group(const dbl::SquaresCat& d);

/// Formal integer combination of objects by id.
using Combination = std::map<std::string, long>;

/// True iff z1 - z2 vanishes in the presented quotient. Throws on unknown ids.
bool k0_class_equal(const dbl::SquaresCat& d, const K0Result& k, const Combination& z1,
                    const Combination& z2);

struct SumExistenceReport {
    struct Entry {
        std::string a, b;
        std::string x;  // empty when no witness object exists
        bool found = false;
    };
    std::vector<Entry> entries;  // ordered pairs in object order
    bool pass = true;
    std::string first_failure;  // "(A,B)" for the first failing pair
    std::string to_string() const;
};

/// Exhaustive check of the sum-existence hypothesis: for every ordered pair
/// (A,B) some X admits squares (A >-> X, A ->> O, X ->> B, O >-> B) and the
/// same with A, B swapped.
SumExistenceReport check_sum_existence(const dbl::SquaresCat& d);

struct AdditivityReport {
    bool pass = true;
    int generators = 0;
    std::string first_failure;
    K0Result k0_base, k0_ext;
    std::string to_string() const;
};

/// K0 shadow of squares additivity: the two maps K0(Esq(d)) -> K0(d) given on
/// generators by [ur]+[bl] and [ul]+[br] are well defined and agree.
AdditivityReport check_k0_additivity(const dbl::SquaresCat& d);

}  // namespace sqcat::k0

#endif
