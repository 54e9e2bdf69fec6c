#include "sqcat/dot.hpp"

#include <set>
#include <sstream>

namespace sqcat::dotex {

namespace {

std::string quote(const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
    }
    return r + "\"";
}

void edge(std::ostringstream& os, const std::string& a, const std::string& b,
          const std::string& label, bool dashed) {
    if (a == b) return;  // self-loops suppressed
    os << "  " << quote(a) << " -> " << quote(b) << " [label=" << quote(label)
       << (dashed ? ", style=dashed" : ", style=solid") << "];\n";
}

}  // namespace

std::string dot_of_square(const dbl::SquaresCat& d, const dbl::Square& s) {
    const auto& H = d.hcat();
    const auto& V = d.vcat();
    std::ostringstream os;
    os << "digraph square {\n";
    std::string A = H.object_id(H.src(s.top)), B = H.object_id(H.dst(s.top));
    std::string C = V.object_id(V.dst(s.left)), D = V.object_id(V.dst(s.right));
    std::set<std::string> nodes{A, B, C, D};
    os << "  subgraph cluster_sq_0 {\n";
    for (const auto& n : nodes) os << "    " << quote(n) << ";\n";
    os << "  }\n";
    edge(os, A, B, H.morphism_id(s.top), false);
    edge(os, C, D, H.morphism_id(s.bottom), false);
    edge(os, A, C, V.morphism_id(s.left), true);
    edge(os, B, D, V.morphism_id(s.right), true);
    os << "}\n";
    return os.str();
}

std::string dot_of_staircase(const dbl::SquaresCat& d, const cons::Staircase& s) {
    const auto& H = d.hcat();
    const auto& V = d.vcat();
    std::ostringstream os;
    os << "digraph staircase {\n";
    auto node = [&](int i, int j) {
        return "n_" + std::to_string(i) + "_" + std::to_string(j);
    };
    for (int i = 0; i <= s.n; ++i)
        for (int j = i; j <= s.n; ++j)
            os << "  " << quote(node(i, j)) << " [label=" << quote(H.object_id(s.at(i, j)))
               << "];\n";
    int k = 0;
    for (int i = 0; i <= s.n; ++i) {
        for (int j = i + 1; j < s.n; ++j) {
            os << "  subgraph cluster_sq_" << k++ << " {\n";
            os << "    " << quote(node(i, j)) << "; " << quote(node(i, j + 1)) << "; "
               << quote(node(i + 1, j)) << "; " << quote(node(i + 1, j + 1)) << ";\n";
            os << "  }\n";
        }
    }
    for (int i = 0; i <= s.n; ++i)
        for (int j = i; j < s.n; ++j)
            edge(os, node(i, j), node(i, j + 1), H.morphism_id(s.h(i, j)), false);
    for (int i = 0; i <= s.n; ++i)
        for (int j = i + 1; j <= s.n; ++j)
            edge(os, node(i, j), node(i + 1, j), V.morphism_id(s.v(i, j)), true);
    os << "}\n";
    return os.str();
}

std::string dot_of_ladder(const dbl::SquaresCat& d, const cons::Chain& src,
                          const cons::Chain& dst, const cons::Ladder& lad) {
    const auto& H = d.hcat();
    const auto& V = d.vcat();
    std::ostringstream os;
    os << "digraph ladder {\n";
    auto node = [&](int row, int k) {
        return "n_" + std::to_string(row) + "_" + std::to_string(k);
    };
    const int n = src.length();
    for (int k = 0; k <= n; ++k) {
        os << "  " << quote(node(0, k)) << " [label=" << quote(H.object_id(src.vertices[k]))
           << "];\n";
        os << "  " << quote(node(1, k)) << " [label=" << quote(H.object_id(dst.vertices[k]))
           << "];\n";
    }
    for (int k = 1; k <= n; ++k) {
        os << "  subgraph cluster_sq_" << (k - 1) << " {\n";
        os << "    " << quote(node(0, k - 1)) << "; " << quote(node(0, k)) << "; "
           << quote(node(1, k - 1)) << "; " << quote(node(1, k)) << ";\n";
        os << "  }\n";
    }
    for (int k = 1; k <= n; ++k) {
        edge(os, node(0, k - 1), node(0, k), H.morphism_id(src.edges[k - 1]), false);
        edge(os, node(1, k - 1), node(1, k), H.morphism_id(dst.edges[k - 1]), false);
    }
    for (int k = 0; k <= n; ++k)
        edge(os, node(0, k), node(1, k), V.morphism_id(lad.comps[k]), true);
    os << "}\n";
    return os.str();
}

}  // namespace sqcat::dotex
