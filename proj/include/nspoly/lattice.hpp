#ifndef NSPOLY_LATTICE_HPP
#define NSPOLY_LATTICE_HPP

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "polytope.hpp"

namespace nspoly {

/** A vertex of P: the unique point of P with its (minimal) support. */
struct Vertex {
    SupportVector support;
    Vec point;
};

namespace detail {

/** Incremental Gaussian elimination over a growing set of columns. */
class ColumnBasis {
  public:
    explicit ColumnBasis(int rows) : rows_(rows) {}

    /** Reduces `col` against the basis; returns the residual if independent. */
    std::optional<std::pair<int, Vec>> reduce(Vec col) const {
        for (const auto& [piv, v] : elems_) {
            if (col(piv) == 0) continue;
            Rational f = col(piv);
            for (int i = 0; i < rows_; ++i) col(i) -= f * v(i);
        }
        for (int i = 0; i < rows_; ++i)
            if (col(i) != 0) {
                Rational inv = 1 / col(i);
                for (int j = 0; j < rows_; ++j) col(j) *= inv;
                return std::make_pair(i, std::move(col));
            }
        return std::nullopt;
    }

    void push(std::pair<int, Vec> e) { elems_.push_back(std::move(e)); }
    void pop() { elems_.pop_back(); }
    std::size_t size() const { return elems_.size(); }

  private:
    int rows_;
    std::vector<std::pair<int, Vec>> elems_;
};

/**
 * Tests whether the independent column set `cols` carries a vertex: the
 * square-solvable restricted system must have a solution that is strictly
 * positive everywhere.
 */
inline std::optional<Vec> vertex_point(const ConstraintSystem& sys, const std::vector<int>& cols) {
    const int m = sys.rows();
    const int k = static_cast<int>(cols.size());
    Mat ar(m, k);
    for (int i = 0; i < m; ++i)
        for (int jj = 0; jj < k; ++jj) ar(i, jj) = sys.a(i, cols[jj]);
    AffineSolution sol = solve_affine(ar, sys.b);
    if (!sol.consistent) return std::nullopt;
    // columns are independent, so the solution is unique
    for (int jj = 0; jj < k; ++jj)
        if (sol.particular(jj) <= 0) return std::nullopt;
    Vec full = Vec::Zero(sys.columns());
    for (int jj = 0; jj < k; ++jj) full(cols[jj]) = sol.particular(jj);
    return full;
}

inline bool prefix_feasible(const ConstraintSystem& sys, const SupportVector& allowed) {
    MaxMinResult r = max_min_coordinate(sys.a, sys.b, allowed);
    (void)r.t;  // feasibility of the restriction is all we need here
    return r.feasible;
}

}  // namespace detail

/**
 * All vertices of a bounded standard-form system, via bounded-support subset
 * search: a support sigma carries a vertex iff the sigma columns are linearly
 * independent and the restricted system has a strictly positive solution.
 * |sigma| <= rank(A) caps the search depth. The pruned path additionally
 * abandons subtrees whose remaining column range cannot host any feasible
 * point (closure pre-check); the unpruned path is the independent oracle.
 */
inline std::vector<Vertex> enumerate_vertices(const ConstraintSystem& sys, bool prune = true,
                                              int prune_depth = 3) {
    if (!is_bounded(sys)) throw std::invalid_argument("unbounded system rejected");
    const int n = sys.columns();
    const int max_size = matrix_rank(sys.a);
    std::map<SupportVector, Vec> found;

    if (!prune) {
        // exhaustive basic-solution enumeration, no pruning: the oracle path
        std::vector<int> cols;
        auto rec = [&](auto&& self, int start) -> void {
            if (!cols.empty()) {
                Mat ar(sys.rows(), static_cast<int>(cols.size()));
                for (int i = 0; i < sys.rows(); ++i)
                    for (std::size_t jj = 0; jj < cols.size(); ++jj)
                        ar(i, static_cast<int>(jj)) = sys.a(i, cols[jj]);
                if (matrix_rank(ar) == static_cast<int>(cols.size())) {
                    if (auto pt = detail::vertex_point(sys, cols)) {
                        SupportVector s(n);
                        for (int c : cols) s.set(c);
                        found.emplace(std::move(s), std::move(*pt));
                    }
                }
            }
            if (static_cast<int>(cols.size()) == max_size) return;
            for (int j = start; j < n; ++j) {
                cols.push_back(j);
                self(self, j + 1);
                cols.pop_back();
            }
        };
        rec(rec, 0);
    } else {
        std::vector<int> cols;
        detail::ColumnBasis basis(sys.rows());
        auto rec = [&](auto&& self, int start) -> void {
            if (!cols.empty()) {
                if (auto pt = detail::vertex_point(sys, cols)) {
                    SupportVector s(n);
                    for (int c : cols) s.set(c);
                    found.emplace(std::move(s), std::move(*pt));
                }
            }
            if (static_cast<int>(cols.size()) == max_size) return;
            if (static_cast<int>(cols.size()) <= prune_depth) {
                SupportVector allowed(n);
                for (int c : cols) allowed.set(c);
                for (int j = start; j < n; ++j) allowed.set(j);
                if (!detail::prefix_feasible(sys, allowed)) return;
            }
            for (int j = start; j < n; ++j) {
                auto residual = basis.reduce(sys.a.col(j));
                if (!residual) continue;  // dependent column: no vertex extends this way
                basis.push(std::move(*residual));
                cols.push_back(j);
                self(self, j + 1);
                cols.pop_back();
                basis.pop();
            }
        };
        rec(rec, 0);
    }

    std::vector<Vertex> out;
    out.reserve(found.size());
    for (auto& [s, p] : found) out.push_back({s, std::move(p)});
    std::sort(out.begin(), out.end(), [](const Vertex& a, const Vertex& b) {
        return support_to_string(a.support) < support_to_string(b.support);
    });
    return out;
}

struct LatticeNode {
    SupportVector support;
    long dimension = -1;
    Vec witness;
    bool is_atom = false;
    bool is_bottom = false;
};

/**
 * The support lattice S(P) with adjoined bottom: node set = join-closure of
 * the vertex supports, which by the support-join law is exactly the set of
 * achievable supports. Nodes carry dimension and a relint witness (an equal
 * mixture of the vertices below, strictly positive on the whole support).
 */
struct SupportLattice {
    std::vector<LatticeNode> nodes;              // index 0 is bottom
    std::vector<std::pair<int, int>> hasse;      // (lower, upper) covers
    std::vector<Vertex> vertices;
    int bottom = 0;
    int top = -1;

    int node_index(const SupportVector& s) const {
        for (std::size_t i = 1; i < nodes.size(); ++i)
            if (nodes[i].support == s) return static_cast<int>(i);
        return -1;
    }
};

/** Covering pairs of an arbitrary family of supports plus a bottom at index 0. */
inline std::vector<std::pair<int, int>> hasse_edges(const std::vector<LatticeNode>& nodes) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t v = 1; v < nodes.size(); ++v) {
        // covers of v = maximal nodes strictly below v (bottom included)
        std::vector<int> below;
        for (std::size_t u = 1; u < nodes.size(); ++u)
            if (u != v && support_leq(nodes[u].support, nodes[v].support)) below.push_back(static_cast<int>(u));
        std::sort(below.begin(), below.end(), [&](int a, int b) {
            return nodes[a].support.count() > nodes[b].support.count();
        });
        std::vector<int> covers;
        for (int u : below) {
            bool dominated = false;
            for (int w : covers)
                if (support_leq(nodes[u].support, nodes[w].support)) { dominated = true; break; }
            if (!dominated) covers.push_back(u);
        }
        if (covers.empty()) covers.push_back(0);  // atoms cover bottom
        for (int u : covers) edges.emplace_back(u, static_cast<int>(v));
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

/**
 * Builds the support lattice from the enumerated vertices. Every node's
 * witness is checked to lie in P with support exactly the node, which
 * certifies achievability; `verify_closure` additionally reruns the
 * LP-based achievability test per node (quadratic in LP calls, test use).
 */
inline SupportLattice support_lattice(const ConstraintSystem& sys, bool verify_closure = false) {
    SupportLattice lat;
    lat.vertices = enumerate_vertices(sys);
    const int n = sys.columns();
    if (lat.vertices.empty()) {
        // empty polytope, or the degenerate {0}: lattice is the bottom alone
        LatticeNode bottom;
        bottom.support = SupportVector(n);
        bottom.is_bottom = true;
        lat.nodes.push_back(std::move(bottom));
        return lat;
    }

    std::set<SupportVector> closed;
    for (const auto& v : lat.vertices) closed.insert(v.support);
    std::vector<SupportVector> frontier(closed.begin(), closed.end());
    while (!frontier.empty()) {
        std::vector<SupportVector> next;
        for (const auto& s : frontier)
            for (const auto& v : lat.vertices) {
                SupportVector j = support_join(s, v.support);
                if (closed.insert(j).second) next.push_back(j);
            }
        frontier = std::move(next);
    }

    LatticeNode bottom;
    bottom.support = SupportVector(n);
    bottom.is_bottom = true;
    bottom.dimension = -1;
    lat.nodes.push_back(std::move(bottom));

    std::vector<SupportVector> ordered(closed.begin(), closed.end());
    std::sort(ordered.begin(), ordered.end(), [](const SupportVector& a, const SupportVector& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return support_to_string(a) < support_to_string(b);
    });
    std::set<SupportVector> atom_supports;
    for (const auto& v : lat.vertices) atom_supports.insert(v.support);
    for (const auto& s : ordered) {
        LatticeNode node;
        node.support = s;
        node.dimension = face_dimension_unchecked(sys, s);
        Vec acc = Vec::Zero(n);
        int cnt = 0;
        for (const auto& v : lat.vertices)
            if (support_leq(v.support, s)) { acc += v.point; ++cnt; }
        node.witness = acc / Rational(cnt);
        if (!membership(sys, node.witness) || vector_support(node.witness) != s)
            throw std::logic_error("lattice witness certificate failed");
        if (verify_closure && !is_achievable(sys, s))
            throw std::logic_error("lattice node failed the achievability recheck");
        node.is_atom = atom_supports.count(s) > 0;
        lat.nodes.push_back(std::move(node));
    }
    if (lat.nodes.size() > 1) {
        lat.top = static_cast<int>(lat.nodes.size()) - 1;  // unique maximum: join of all
        for (std::size_t i = 1; i + 1 < lat.nodes.size(); ++i)
            if (!support_leq(lat.nodes[i].support, lat.nodes[lat.top].support))
                throw std::logic_error("top node is not the maximum support");
    }
    lat.hasse = hasse_edges(lat.nodes);
    return lat;
}

/** Join = componentwise disjunction; always a node by closure of S(P). */
inline int lattice_join(const SupportLattice& lat, int i, int j) {
    SupportVector s = support_join(lat.nodes.at(i).support, lat.nodes.at(j).support);
    int idx = (i == 0) ? j : (j == 0) ? i : lat.node_index(s);
    if (idx < 0) throw std::logic_error("join left the node set");
    return idx;
}

/**
 * Meet via the closure of the componentwise conjunction; returns the bottom
 * index when the conjunction supports no nonempty face.
 */
inline int lattice_meet(const ConstraintSystem& sys, const SupportLattice& lat, int i, int j) {
    if (i == 0 || j == 0) return 0;
    ClosureResult c = support_closure(sys, lat.nodes.at(i).support & lat.nodes.at(j).support);
    if (!c.nonempty) return 0;
    int idx = lat.node_index(c.closure);
    if (idx < 0) throw std::logic_error("meet left the node set");
    return idx;
}

/** Order-theoretic meet: join of all common lower bounds (no LPs). */
inline int lattice_meet_by_order(const SupportLattice& lat, int i, int j) {
    SupportVector acc(lat.nodes.front().support.size());
    bool any = false;
    for (std::size_t u = 1; u < lat.nodes.size(); ++u)
        if (support_leq(lat.nodes[u].support, lat.nodes[i].support) &&
            support_leq(lat.nodes[u].support, lat.nodes[j].support)) {
            acc |= lat.nodes[u].support;
            any = true;
        }
    if (!any) return 0;
    int idx = lat.node_index(acc);
    if (idx < 0) throw std::logic_error("meet-by-order left the node set");
    return idx;
}

/** Vertices of the face F_sigma: exactly the vertices of P below sigma. */
inline std::vector<Vec> face_vertex_points(const std::vector<Vertex>& vertices,
                                           const SupportVector& sigma) {
    std::vector<Vec> out;
    for (const auto& v : vertices)
        if (support_leq(v.support, sigma)) out.push_back(v.point);
    return out;
}

inline bool relint_membership(const ConstraintSystem& sys, const Vec& x, const SupportVector& sigma,
                              const std::vector<Vertex>& vertices) {
    return relint_membership(sys, x, sigma, face_vertex_points(vertices, sigma));
}

/**
 * Independent face-enumeration path. Candidate faces F_Z = {x in P : x_i = 0
 * for i in Z} range over all zero-sets Z; each face is identified by the set
 * of vertices it contains and its nonemptiness confirmed by LP feasibility.
 * Supports of interior points are never consulted.
 */
struct OracleLattice {
    std::vector<Vertex> vertices;
    std::vector<SupportVector> faces;  // bit v set iff vertex v lies on the face;
                                       // sorted; the all-zero set is the empty face
};

inline OracleLattice face_lattice_oracle(const ConstraintSystem& sys, int max_columns = 20,
                                         bool force = false) {
    const int n = sys.columns();
    if (n > 62 || (n > max_columns && !force))
        throw std::invalid_argument("face oracle refused: 2^" + std::to_string(n) +
                                    " zero-sets exceeds the size guard");
    OracleLattice out;
    out.vertices = enumerate_vertices(sys, /*prune=*/false);
    const int nv = static_cast<int>(out.vertices.size());
    std::vector<std::uint64_t> vertex_masks(nv);
    for (int v = 0; v < nv; ++v) {
        std::uint64_t m = 0;
        for (int j = 0; j < n; ++j)
            if (out.vertices[v].support.test(j)) m |= (std::uint64_t{1} << j);
        vertex_masks[v] = m;
    }
    std::map<SupportVector, std::uint64_t> faces;  // signature -> representative Z
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
        SupportVector sig(nv);
        for (int v = 0; v < nv; ++v)
            if ((vertex_masks[v] & z) == 0) sig.set(v);
        faces.emplace(std::move(sig), z);
    }
    for (const auto& [sig, z] : faces) {
        // nonemptiness check of the representative zero-set, by phase-1 LP
        SupportVector allowed(n);
        for (int j = 0; j < n; ++j)
            if ((z & (std::uint64_t{1} << j)) == 0) allowed.set(j);
        bool feasible = detail::prefix_feasible(sys, allowed);
        if (feasible != sig.any())
            throw std::logic_error("oracle feasibility disagrees with vertex containment");
        out.faces.push_back(sig);
    }
    std::sort(out.faces.begin(), out.faces.end(), [](const SupportVector& a, const SupportVector& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return support_to_string(a) < support_to_string(b);
    });
    return out;
}

struct LatticeReport {
    bool join_closed = false;
    bool atomistic = false;
    bool coatomistic = false;
    bool graded = false;
    bool unique_top = false;
    bool unique_bottom = false;

    bool all_pass() const {
        return join_closed && atomistic && coatomistic && graded && unique_top && unique_bottom;
    }
};

/**
 * Verifies the lattice-theoretic structure from the node supports alone;
 * covers are recomputed here so the checker stays independent of the
 * builder's edge list.
 */
inline LatticeReport check_lattice_properties(const SupportLattice& lat) {
    LatticeReport rep;
    const auto& nodes = lat.nodes;
    const std::size_t n = nodes.size();
    if (n < 2) return rep;

    auto leq = [&](std::size_t a, std::size_t b) {
        if (a == 0) return true;
        if (b == 0) return false;
        return support_leq(nodes[a].support, nodes[b].support);
    };

    rep.unique_bottom = nodes[0].is_bottom;
    std::size_t top = 0;
    int maximal = 0;
    for (std::size_t i = 1; i < n; ++i) {
        bool is_max = true;
        for (std::size_t j = 1; j < n; ++j)
            if (j != i && leq(i, j)) { is_max = false; break; }
        if (is_max) { ++maximal; top = i; }
    }
    rep.unique_top = (maximal == 1);
    if (!rep.unique_top || !rep.unique_bottom) return rep;

    rep.join_closed = true;
    std::map<SupportVector, std::size_t> index;
    for (std::size_t i = 1; i < n; ++i) index[nodes[i].support] = i;
    for (std::size_t i = 1; i < n && rep.join_closed; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (!index.count(support_join(nodes[i].support, nodes[j].support))) {
                rep.join_closed = false;
                break;
            }

    // atoms: minimal non-bottom nodes
    std::vector<std::size_t> atoms;
    for (std::size_t i = 1; i < n; ++i) {
        bool minimal = true;
        for (std::size_t j = 1; j < n; ++j)
            if (j != i && leq(j, i)) { minimal = false; break; }
        if (minimal) atoms.push_back(i);
    }
    rep.atomistic = true;
    for (std::size_t i = 1; i < n; ++i) {
        SupportVector join(nodes[i].support.size());
        for (std::size_t a : atoms)
            if (leq(a, i)) join |= nodes[a].support;
        if (join != nodes[i].support) { rep.atomistic = false; break; }
    }

    // meet of a set = join of all common lower bounds (bottom included)
    auto meet_of = [&](const std::vector<std::size_t>& upper) -> std::size_t {
        SupportVector acc(nodes[1].support.size());
        bool any = false;
        for (std::size_t u = 1; u < n; ++u) {
            bool below_all = true;
            for (std::size_t s : upper)
                if (!leq(u, s)) { below_all = false; break; }
            if (below_all) { acc |= nodes[u].support; any = true; }
        }
        if (!any) return 0;
        auto it = index.find(acc);
        return it == index.end() ? std::size_t(n) : it->second;  // n = not a node
    };
    std::vector<std::size_t> coatoms;
    for (std::size_t i = 1; i < n; ++i) {
        if (i == top) continue;
        bool covered_by_top_only = true;
        for (std::size_t j = 1; j < n; ++j)
            if (j != i && j != top && leq(i, j)) { covered_by_top_only = false; break; }
        if (covered_by_top_only) coatoms.push_back(i);
    }
    rep.coatomistic = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == top) continue;  // meet of the empty coatom set is the top
        std::vector<std::size_t> above;
        for (std::size_t c : coatoms)
            if (leq(i, c)) above.push_back(c);
        std::size_t m = above.empty() ? top : meet_of(above);
        if (m != i) { rep.coatomistic = false; break; }
    }

    // graded: every recomputed cover steps the stored dimension by exactly 1
    std::vector<LatticeNode> plain(nodes.begin(), nodes.end());
    auto edges = hasse_edges(plain);
    rep.graded = true;
    for (auto [u, v] : edges)
        if (nodes[v].dimension != nodes[u].dimension + 1) { rep.graded = false; break; }
    return rep;
}

}  // namespace nspoly

#endif  // NSPOLY_LATTICE_HPP
