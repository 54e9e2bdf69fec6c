#include "sqcat/k0.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sqcat::k0 {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const mpz_class& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

mpz_class IntMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant: not square");
    // Bareiss fraction-free elimination
    IntMatrix a = *this;
    int n = rows_;
    mpz_class sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = num / prev;  // exact by Bareiss
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

std::vector<mpz_class> SNFResult::diagonal() const {
    std::vector<mpz_class> r;
    int n = std::min(D.rows(), D.cols());
    for (int i = 0; i < n; ++i) r.push_back(D.at(i, i));
    return r;
}

namespace {

void swap_rows(IntMatrix& a, IntMatrix& u, int i, int j) {
    for (int c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
    for (int c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
}

void swap_cols(IntMatrix& a, IntMatrix& v, int i, int j) {
    for (int r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
    for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
}

// row i -= q * row j
void row_op(IntMatrix& a, IntMatrix& u, int i, int j, const mpz_class& q) {
    for (int c = 0; c < a.cols(); ++c) a.at(i, c) -= q * a.at(j, c);
    for (int c = 0; c < u.cols(); ++c) u.at(i, c) -= q * u.at(j, c);
}

void col_op(IntMatrix& a, IntMatrix& v, int i, int j, const mpz_class& q) {
    for (int r = 0; r < a.rows(); ++r) a.at(r, i) -= q * a.at(r, j);
    for (int r = 0; r < v.rows(); ++r) v.at(r, i) -= q * v.at(r, j);
}

void negate_row(IntMatrix& a, IntMatrix& u, int i) {
    for (int c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
    for (int c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& input) {
    SNFResult res;
    res.D = input;
    res.U = IntMatrix::identity(input.rows());
    res.V = IntMatrix::identity(input.cols());
    IntMatrix& a = res.D;
    const int m = a.rows(), n = a.cols();
    const int rank_bound = std::min(m, n);
    for (int k = 0; k < rank_bound; ++k) {
        // locate a pivot: smallest nonzero |entry| in the trailing block
        int pr = -1, pc = -1;
        mpz_class best;
        for (int i = k; i < m; ++i)
            for (int j = k; j < n; ++j) {
                if (a.at(i, j) == 0) continue;
                mpz_class v = abs(a.at(i, j));
                if (pr < 0 || v < best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;  // trailing block zero
        if (pr != k) swap_rows(a, res.U, k, pr);
        if (pc != k) swap_cols(a, res.V, k, pc);
        // clear row and column k
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = k + 1; i < m; ++i) {
                if (a.at(i, k) == 0) continue;
                mpz_class q = a.at(i, k) / a.at(k, k);  // truncated division
                row_op(a, res.U, i, k, q);
                if (a.at(i, k) != 0) {  // remainder smaller than pivot: swap up
                    swap_rows(a, res.U, k, i);
                    dirty = true;
                }
            }
            for (int j = k + 1; j < n; ++j) {
                if (a.at(k, j) == 0) continue;
                mpz_class q = a.at(k, j) / a.at(k, k);
                col_op(a, res.V, j, k, q);
                if (a.at(k, j) != 0) {
                    swap_cols(a, res.V, k, j);
                    dirty = true;
                }
            }
        }
        if (a.at(k, k) < 0) negate_row(a, res.U, k);
    }
    // enforce the divisibility chain d_k | d_{k+1}
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 0; k + 1 < rank_bound; ++k) {
            if (a.at(k, k) == 0 || a.at(k + 1, k + 1) == 0) continue;
            if (a.at(k + 1, k + 1) % a.at(k, k) == 0) continue;
            changed = true;
            // fold entry (k+1,k+1) into column k, then re-eliminate the 2x2 block
            col_op(a, res.V, k, k + 1, -1);  // col k += col k+1
            while (a.at(k + 1, k) != 0 || a.at(k, k + 1) != 0) {
                if (a.at(k, k) == 0 || (a.at(k + 1, k) != 0 &&
                                        abs(a.at(k + 1, k)) < abs(a.at(k, k))))
                    swap_rows(a, res.U, k, k + 1);
                if (a.at(k, k) != 0 && a.at(k + 1, k) != 0) {
                    mpz_class q = a.at(k + 1, k) / a.at(k, k);
                    row_op(a, res.U, k + 1, k, q);
                    if (a.at(k + 1, k) != 0) {
                        swap_rows(a, res.U, k, k + 1);
                        continue;
                    }
                }
                if (a.at(k, k + 1) != 0) {
                    if (a.at(k, k) == 0) {
                        swap_cols(a, res.V, k, k + 1);
                        continue;
                    }
                    mpz_class q = a.at(k, k + 1) / a.at(k, k);
                    col_op(a, res.V, k + 1, k, q);
                    if (a.at(k, k + 1) != 0) swap_cols(a, res.V, k, k + 1);
                }
            }
            if (a.at(k, k) < 0) negate_row(a, res.U, k);
            if (a.at(k + 1, k + 1) < 0) negate_row(a, res.U, k + 1);
        }
    }
    return res;
}

std::string K0Result::to_string() const {
    std::ostringstream os;
    os << "free rank " << free_rank << ", torsion ";
    if (torsion.empty())
        os << "none";
    else {
        for (size_t i = 0; i < torsion.size(); ++i)
            os << (i ? "," : "") << torsion[i].get_str();
    }
    return os.str();
}

K0Result k0_group(const dbl::SquaresCat& d) {
    const auto& H = d.hcat();
    const int n = H.object_count();
    const auto& sqs = d.base.squares;
    // distinct relation rows only; duplicates do not change the lattice
    std::set<std::vector<int>> rows;
    {
        std::vector<int> r0(n, 0);
        r0[d.basepoint] = 1;  // [O] = 0
        rows.insert(r0);
    }
    for (const auto& q : sqs) {
        int A = H.src(q.top), B = H.dst(q.top);
        int C = d.vcat().dst(q.left), D = d.vcat().dst(q.right);
        std::vector<int> r(n, 0);
        // [A] + [D] - [B] - [C]
        r[A] += 1;
        r[D] += 1;
        r[B] -= 1;
        r[C] -= 1;
        rows.insert(r);
    }
    IntMatrix rel(static_cast<int>(rows.size()), n);
    int ri = 0;
    for (const auto& row : rows) {
        for (int c = 0; c < n; ++c) rel.at(ri, c) = row[c];
        ++ri;
    }
    auto snf = smith_normal_form(rel);
    K0Result k;
    k.V = snf.V;
    auto diag = snf.diagonal();
    int rank = 0;
    for (const auto& v : diag)
        if (v != 0) ++rank;
    k.diag.assign(diag.begin(), diag.begin() + rank);
    k.free_rank = n - rank;
    std::vector<int> torsion_cols;
    for (int i = 0; i < rank; ++i)
        if (k.diag[i] > 1) {
            k.torsion.push_back(k.diag[i]);
            torsion_cols.push_back(i);
        }
    for (int o = 0; o < n; ++o) {
        k.generators.push_back(H.object_id(o));
        std::vector<mpz_class> coords;
        for (int i : torsion_cols) {
            mpz_class c = snf.V.at(o, i) % k.diag[i];
            if (c < 0) c += k.diag[i];
            coords.push_back(c);
        }
        for (int i = rank; i < n; ++i) coords.push_back(snf.V.at(o, i));
        k.images.push_back(std::move(coords));
    }
    return k;
}

bool k0_class_equal(const dbl::SquaresCat& d, const K0Result& k, const Combination& z1,
                    const Combination& z2) {
    const auto& H = d.hcat();
    const int n = H.object_count();
    std::vector<mpz_class> z(n, 0);
    for (const auto& [id, c] : z1) {
        int o = H.object_index(id);
        if (o < 0) throw std::invalid_argument("k0_class_equal: unknown object id " + id);
        z[o] += c;
    }
    for (const auto& [id, c] : z2) {
        int o = H.object_index(id);
        if (o < 0) throw std::invalid_argument("k0_class_equal: unknown object id " + id);
        z[o] -= c;
    }
    // difference lies in the relation lattice iff, after the change of basis V,
    // each coordinate is divisible by the matching invariant factor
    const int rank = static_cast<int>(k.diag.size());
    for (int j = 0; j < n; ++j) {
        mpz_class c = 0;
        for (int o = 0; o < n; ++o) c += z[o] * k.V.at(o, j);
        if (j < rank) {
            if (c % k.diag[j] != 0) return false;
        } else if (c != 0) {
            return false;
        }
    }
    return true;
}

std::string SumExistenceReport::to_string() const {
    std::ostringstream os;
    os << (pass ? "PASS" : ("FAIL at " + first_failure)) << " (" << entries.size()
       << " ordered pairs)\n";
    return os.str();
}

SumExistenceReport check_sum_existence(const dbl::SquaresCat& d) {
    SumExistenceReport rep;
    const auto& H = d.hcat();
    const auto& V = d.vcat();
    auto has_leg = [&](int a, int b, int x) {
        // a square (A >-> X, A ->> O, X ->> B, O >-> B)
        for (int h : H.hom(a, x))
            for (int v : V.hom(x, b))
                if (d.base.has_square(h, d.point_v(a), v, d.point_h(b))) return true;
        return false;
    };
    for (int a = 0; a < H.object_count(); ++a) {
        for (int b = 0; b < H.object_count(); ++b) {
            SumExistenceReport::Entry e{H.object_id(a), H.object_id(b), "", false};
            for (int x = 0; x < H.object_count() && !e.found; ++x) {
                if (has_leg(a, b, x) && has_leg(b, a, x)) {
                    e.found = true;
                    e.x = H.object_id(x);
                }
            }
            if (!e.found && rep.pass) {
                rep.pass = false;
                rep.first_failure = "(" + e.a + "," + e.b + ")";
            }
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

std::string AdditivityReport::to_string() const {
    std::ostringstream os;
    os << (pass ? "PASS" : ("FAIL: " + first_failure)) << " on " << generators << " generators\n";
    os << "K0(base): " << k0_base.to_string() << "\n";
    os << "K0(extension): " << k0_ext.to_string() << "\n";
    return os.str();
}

AdditivityReport check_k0_additivity(const dbl::SquaresCat& d) {
    AdditivityReport rep;
    auto e = dbl::extension_category(d);
    rep.k0_base = k0_group(d);
    rep.k0_ext = k0_group(e);
    const auto& H = d.hcat();
    const auto& V = d.vcat();
    const auto& sqs = d.base.squares;
    rep.generators = static_cast<int>(sqs.size());
    auto corner = [&](const dbl::Square& s) {
        return std::array<std::string, 4>{
            H.object_id(H.src(s.top)), H.object_id(H.dst(s.top)),
            V.object_id(V.dst(s.left)), V.object_id(V.dst(s.right))};
    };
    // generator-wise agreement: [ur]+[bl] = [ul]+[br] in K0(d)
    for (const auto& s : sqs) {
        auto [ul, ur, bl, br] = corner(s);
        Combination z1, z2;
        z1[ur] += 1;
        z1[bl] += 1;
        z2[ul] += 1;
        z2[br] += 1;
        if (!k0_class_equal(d, rep.k0_base, z1, z2)) {
            rep.pass = false;
            rep.first_failure = "maps disagree on generator " + d.base.square_str(s);
            return rep;
        }
    }
    // well-definedness: both maps kill the relations of K0(extension)
    auto eval = [&](const dbl::Square& s, bool first) {
        auto [ul, ur, bl, br] = corner(s);
        Combination z;
        if (first) {
            z[ur] += 1;
            z[bl] += 1;
        } else {
            z[ul] += 1;
            z[br] += 1;
        }
        return z;
    };
    auto add = [](Combination a, const Combination& b, int sign) {
        for (const auto& [k, v] : b) a[k] += sign * v;
        return a;
    };
    // distinct corner quadruples suffice for the well-definedness check
    std::set<std::array<int, 4>> corner_quads;
    for (const auto& es : e.base.squares)
        corner_quads.insert({e.hcat().src(es.top), e.hcat().dst(es.top),
                             e.vcat().dst(es.left), e.vcat().dst(es.right)});
    for (const auto& quad : corner_quads) {
        const auto& A = sqs[quad[0]];
        const auto& B = sqs[quad[1]];
        const auto& C = sqs[quad[2]];
        const auto& D = sqs[quad[3]];
        for (bool first : {true, false}) {
            Combination lhs = add(eval(A, first), eval(D, first), 1);
            Combination rhs = add(eval(B, first), eval(C, first), 1);
            if (!k0_class_equal(d, rep.k0_base, lhs, rhs)) {
                rep.pass = false;
                rep.first_failure = std::string("map ") + (first ? "[ur]+[bl]" : "[ul]+[br]") +
                                    " not well defined on an extension square";
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace sqcat::k0
