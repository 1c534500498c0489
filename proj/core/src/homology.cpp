#include "braidhom/homology.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace braidhom {

int rowCount(const IMatrix& m) { return static_cast<int>(m.size()); }
int colCount(const IMatrix& m) { return m.empty() ? 0 : static_cast<int>(m[0].size()); }

IMatrix identityMatrix(int n) {
    IMatrix m(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IMatrix multiply(const IMatrix& a, const IMatrix& b) {
    const int n = rowCount(a), k = colCount(a), m = colCount(b);
    if (k != rowCount(b)) throw Error("matrix dimension mismatch");
    IMatrix c(n, std::vector<BigInt>(m, 0));
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (int j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    }
    return c;
}

BigInt determinant(IMatrix m) {
    const int n = rowCount(m);
    if (n != colCount(m)) throw Error("determinant needs a square matrix");
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i) {
                if (m[i][k] != 0) {
                    swap = i;
                    break;
                }
            }
            if (swap < 0) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

// Bezout coefficients with |x| <= |b/g|, |y| <= |a/g| (for nonzero a, b).
BigInt extendedGcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return abs(a);
    }
    BigInt x1, y1;
    BigInt g = extendedGcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace

SnfResult smithNormalForm(IMatrix a) {
    const int n = rowCount(a);
    const int m = colCount(a);
    IMatrix u = identityMatrix(n);
    IMatrix v = identityMatrix(m);

    auto swapRows = [&](int i, int j) {
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
    };
    auto swapCols = [&](int i, int j) {
        for (int r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
        for (int r = 0; r < m; ++r) std::swap(v[r][i], v[r][j]);
    };
    auto addRow = [&](int dst, int src, const BigInt& q) {  // row dst += q * row src
        for (int c = 0; c < m; ++c) a[dst][c] += q * a[src][c];
        for (int c = 0; c < n; ++c) u[dst][c] += q * u[src][c];
    };
    auto addCol = [&](int dst, int src, const BigInt& q) {
        for (int r = 0; r < n; ++r) a[r][dst] += q * a[r][src];
        for (int r = 0; r < m; ++r) v[r][dst] += q * v[r][src];
    };
    // Unimodular 2x2 transform turning (a[t][t], a[i][t]) into (gcd, 0); this
    // keeps intermediate entries far smaller than Euclid-by-swapping.
    auto mergeRows = [&](int t, int i) {
        BigInt x, y;
        BigInt p = a[t][t], q = a[i][t];
        BigInt g = extendedGcd(p, q, x, y);
        BigInt ps = p / g, qs = q / g;
        for (int c = 0; c < m; ++c) {
            BigInt rt = x * a[t][c] + y * a[i][c];
            BigInt ri = -qs * a[t][c] + ps * a[i][c];
            a[t][c] = rt;
            a[i][c] = ri;
        }
        for (int c = 0; c < n; ++c) {
            BigInt rt = x * u[t][c] + y * u[i][c];
            BigInt ri = -qs * u[t][c] + ps * u[i][c];
            u[t][c] = rt;
            u[i][c] = ri;
        }
    };
    auto mergeCols = [&](int t, int j) {
        BigInt x, y;
        BigInt p = a[t][t], q = a[t][j];
        BigInt g = extendedGcd(p, q, x, y);
        BigInt ps = p / g, qs = q / g;
        for (int r = 0; r < n; ++r) {
            BigInt ct = x * a[r][t] + y * a[r][j];
            BigInt cj = -qs * a[r][t] + ps * a[r][j];
            a[r][t] = ct;
            a[r][j] = cj;
        }
        for (int r = 0; r < m; ++r) {
            BigInt ct = x * v[r][t] + y * v[r][j];
            BigInt cj = -qs * v[r][t] + ps * v[r][j];
            v[r][t] = ct;
            v[r][j] = cj;
        }
    };

    int t = 0;
    while (t < n && t < m) {
        // Smallest-magnitude nonzero pivot.
        int pi = -1, pj = -1;
        for (int i = t; i < n; ++i) {
            for (int j = t; j < m; ++j) {
                if (a[i][j] == 0) continue;
                if (pi < 0 || abs(a[i][j]) < abs(a[pi][pj])) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0) break;
        if (pi != t) swapRows(t, pi);
        if (pj != t) swapCols(t, pj);

        for (;;) {
            bool dirty = false;
            for (int i = t + 1; i < n; ++i) {
                if (a[i][t] == 0) continue;
                if (a[i][t] % a[t][t] == 0) {
                    addRow(i, t, -(a[i][t] / a[t][t]));
                } else {
                    mergeRows(t, i);
                    dirty = true;  // the pivot row changed; the cleared row may reappear
                }
            }
            for (int j = t + 1; j < m; ++j) {
                if (a[t][j] == 0) continue;
                if (a[t][j] % a[t][t] == 0) {
                    addCol(j, t, -(a[t][j] / a[t][t]));
                } else {
                    mergeCols(t, j);
                    dirty = true;
                }
            }
            // Column entries can be re-dirtied by the column pass.
            bool colClear = true;
            for (int i = t + 1; i < n; ++i) {
                if (a[i][t] != 0) colClear = false;
            }
            if (dirty || !colClear) continue;

            // Pivot must divide the rest of the submatrix.
            bool divides = true;
            for (int i = t + 1; i < n && divides; ++i) {
                for (int j = t + 1; j < m && divides; ++j) {
                    if (a[i][j] % a[t][t] != 0) {
                        addRow(t, i, 1);
                        divides = false;
                    }
                }
            }
            if (divides) break;
        }

        if (a[t][t] < 0) {
            for (int c = 0; c < m; ++c) a[t][c] = -a[t][c];
            for (int c = 0; c < n; ++c) u[t][c] = -u[t][c];
        }
        ++t;
    }

    return SnfResult{std::move(u), std::move(a), std::move(v)};
}

Complex2 complexOf(const SimplicialSurface& s) {
    Complex2 c;
    c.vertices.resize(s.vertexCount());
    for (int i = 0; i < s.vertexCount(); ++i) c.vertices[i] = i;
    c.edges = s.edges();
    c.triangles = s.triangles();
    return c;
}

Complex2 complexOf(const SdSurface& sd) {
    Complex2 c;
    c.vertices.resize(sd.vertexCount());
    for (int i = 0; i < sd.vertexCount(); ++i) c.vertices[i] = i;
    c.edges = sd.sdEdges();
    c.triangles = sd.sdTriangles();
    return c;
}

int inducedSign(const Triangle& t, const Edge& e) {
    for (int i = 0; i < 3; ++i) {
        VertexId u = t.v[i], w = t.v[(i + 1) % 3];
        if (u == e.a && w == e.b) return +1;
        if (u == e.b && w == e.a) return -1;
    }
    return 0;
}

ChainComplex boundaryMatrices(const Complex2& c) {
    std::map<int, int> vpos;
    for (int i = 0; i < static_cast<int>(c.vertices.size()); ++i) vpos[c.vertices[i]] = i;
    std::map<Edge, int> epos;
    for (int i = 0; i < static_cast<int>(c.edges.size()); ++i) epos[c.edges[i]] = i;

    ChainComplex out;
    out.vertexIds = c.vertices;
    out.edges = c.edges;
    out.triangles = c.triangles;
    out.d1.assign(c.vertices.size(), std::vector<BigInt>(c.edges.size(), 0));
    for (int j = 0; j < static_cast<int>(c.edges.size()); ++j) {
        out.d1[vpos.at(c.edges[j].a)][j] -= 1;
        out.d1[vpos.at(c.edges[j].b)][j] += 1;
    }
    out.d2.assign(c.edges.size(), std::vector<BigInt>(c.triangles.size(), 0));
    for (int j = 0; j < static_cast<int>(c.triangles.size()); ++j) {
        const Triangle& t = c.triangles[j];
        for (int i = 0; i < 3; ++i) {
            Edge e(t.v[i], t.v[(i + 1) % 3]);
            out.d2[epos.at(e)][j] += inducedSign(t, e);
        }
    }
    return out;
}

Chain1 chainFromWalk(const SdSurface& sd, const std::vector<int>& walk) {
    Chain1 z(sd.edgeCount(), 0);
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
        int u = walk[i], v = walk[i + 1];
        int idx = sd.sdEdgeIndex(u, v);
        if (idx < 0) throw Error("walk step is not an sd edge: " + sd.vertexName(u) + " -> " + sd.vertexName(v));
        z[idx] += (u < v) ? 1 : -1;
    }
    return z;
}

bool isCycle(const SdSurface& sd, const Chain1& z) {
    if (static_cast<int>(z.size()) != sd.edgeCount()) return false;
    std::vector<Coord> boundary(sd.vertexCount(), 0);
    for (int j = 0; j < sd.edgeCount(); ++j) {
        if (z[j] == 0) continue;
        boundary[sd.sdEdges()[j].a] -= z[j];
        boundary[sd.sdEdges()[j].b] += z[j];
    }
    return std::all_of(boundary.begin(), boundary.end(), [](Coord c) { return c == 0; });
}

// Integer inverse of a unimodular matrix, via adjugate over big integers.
std::vector<std::vector<Coord>> unimodularInverse(const std::vector<std::vector<Coord>>& m) {
    const int n = static_cast<int>(m.size());
    IMatrix big(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) big[i][j] = m[i][j];
    }
    BigInt det = determinant(big);
    if (det != 1 && det != -1) throw Error("matrix is not unimodular (det " + det.str() + ")");

    std::vector<std::vector<Coord>> inv(n, std::vector<Coord>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            IMatrix minor(n - 1, std::vector<BigInt>(n - 1));
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor[rr][cc++] = big[r][c];
                }
                ++rr;
            }
            BigInt cof = determinant(minor);
            if ((i + j) % 2) cof = -cof;
            BigInt value = cof * det;  // det^{-1} == det for +-1
            inv[i][j] = static_cast<Coord>(value.convert_to<long long>());
        }
    }
    return inv;
}

namespace {

bool snfDiagonalAllOnes(const std::vector<std::vector<Coord>>& rows, int expectRank) {
    if (rows.empty()) return true;
    IMatrix m(rows.size(), std::vector<BigInt>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < rows[i].size(); ++j) m[i][j] = rows[i][j];
    }
    SnfResult snf = smithNormalForm(std::move(m));
    int ones = 0;
    int k = std::min(rowCount(snf.d), colCount(snf.d));
    for (int i = 0; i < k; ++i) {
        if (snf.d[i][i] == 1) ++ones;
        else if (snf.d[i][i] != 0) return false;
    }
    return ones == expectRank;
}

}  // namespace

HomologyBasis::HomologyBasis(const SdSurface& sd) : sd_(&sd) {
    const int nv = sd.vertexCount();
    const int ne = sd.edgeCount();
    const int nf = sd.triangleCount();

    // Primal spanning tree on the sd 1-skeleton.
    edgeRole_.assign(ne, 2);
    {
        std::vector<bool> visited(nv, false);
        visited[0] = true;
        std::vector<int> frontier{0};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int w : frontier) {
                for (int x : sd.sdNeighbors(w)) {
                    if (!visited[x]) {
                        visited[x] = true;
                        edgeRole_[sd.sdEdgeIndex(w, x)] = 0;
                        next.push_back(x);
                    }
                }
            }
            std::sort(next.begin(), next.end());
            frontier = std::move(next);
        }
        if (std::count(visited.begin(), visited.end(), true) != nv) {
            throw Error("sd surface is disconnected");
        }
    }

    // Dual spanning tree over triangles through non-tree edges.
    dualParent_.assign(nf, -1);
    dualParentEdge_.assign(nf, -1);
    {
        std::vector<bool> visited(nf, false);
        visited[0] = true;
        dualOrder_.push_back(0);
        std::deque<int> queue{0};
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop_front();
            const Triangle& tri = sd.sdTriangles()[t];
            for (int i = 0; i < 3; ++i) {
                Edge e(tri.v[i], tri.v[(i + 1) % 3]);
                int ei = sd.sdEdgeIndex(e.a, e.b);
                if (edgeRole_[ei] == 0) continue;
                const auto& inc = sd.sdEdgeTriangles(ei);
                if (inc.size() != 2) throw Error("sd edge without exactly two triangles");
                int other = inc[0] == t ? inc[1] : inc[0];
                if (!visited[other]) {
                    visited[other] = true;
                    edgeRole_[ei] = 1;
                    dualParent_[other] = t;
                    dualParentEdge_[other] = ei;
                    dualOrder_.push_back(other);
                    queue.push_back(other);
                }
            }
        }
        if (static_cast<int>(dualOrder_.size()) != nf) throw Error("dual graph is disconnected");
    }

    xEdgePos_.assign(ne, -1);
    for (int e = 0; e < ne; ++e) {
        if (edgeRole_[e] == 2) {
            xEdgePos_[e] = static_cast<int>(xEdges_.size());
            xEdges_.push_back(e);
        }
    }
    const int expected = 2 * sd.base().genus();
    if (static_cast<int>(xEdges_.size()) != expected) {
        throw Error("tree-cotree leftover count " + std::to_string(xEdges_.size()) +
                    " does not match 2g = " + std::to_string(expected));
    }

    const int rank = static_cast<int>(xEdges_.size());

    // Candidate simple loops: fundamental cycles of a base spanning tree.
    const SimplicialSurface& base = sd.base();
    std::vector<Edge> tree = spanningTree(base);
    std::set<Edge> treeSet(tree.begin(), tree.end());
    std::vector<int> parent(base.vertexCount(), -1);
    {
        std::vector<bool> visited(base.vertexCount(), false);
        visited[0] = true;
        std::vector<int> frontier{0};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int w : frontier) {
                for (int x : base.neighbors(w)) {
                    if (!visited[x] && treeSet.count(Edge(w, x))) {
                        visited[x] = true;
                        parent[x] = w;
                        next.push_back(x);
                    }
                }
            }
            std::sort(next.begin(), next.end());
            frontier = std::move(next);
        }
    }
    auto rootPath = [&](VertexId v) {
        std::vector<VertexId> path{v};
        while (parent[path.back()] != -1) path.push_back(parent[path.back()]);
        return path;  // v .. root
    };

    struct Candidate {
        EdgeLoop loop;
        std::vector<Coord> raw;
    };
    std::vector<Candidate> candidates;
    if (rank > 0) {
        for (int ei = 0; ei < base.edgeCount(); ++ei) {
            const Edge& e = base.edges()[ei];
            if (treeSet.count(e)) continue;
            // Tree path a .. b followed by the edge b -> a closes the loop.
            std::vector<VertexId> pa = rootPath(e.a);
            std::vector<VertexId> pb = rootPath(e.b);
            std::set<VertexId> inPa(pa.begin(), pa.end());
            size_t cut = 0;
            while (cut < pb.size() && !inPa.count(pb[cut])) ++cut;
            VertexId meet = pb[cut];
            std::vector<VertexId> half;  // a .. meet
            for (VertexId v : pa) {
                half.push_back(v);
                if (v == meet) break;
            }
            std::vector<VertexId> vs = half;          // a .. meet
            for (size_t i = cut; i-- > 0;) vs.push_back(pb[i]);  // .. b
            vs.push_back(e.a);                        // close with the non-tree edge
            EdgeLoop loop = EdgePath::fromVertices(vs);
            if (!loop.isSimple()) continue;  // tree paths can merge badly only at the meet; skip if so
            Chain1 chain = chainOfBasePath(loop);
            std::vector<Coord> raw = rawCoordinates(chain);
            if (std::all_of(raw.begin(), raw.end(), [](Coord c) { return c == 0; })) continue;
            candidates.push_back({std::move(loop), std::move(raw)});
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Candidate& a, const Candidate& b) { return a.loop.length() < b.loop.length(); });
    }

    // Depth-first selection of a unimodular subset, primitive at every step.
    std::vector<int> chosen;
    if (rank > 0) {
        std::vector<std::vector<Coord>> rows;
        long long nodes = 0;
        const long long nodeBudget = 200000;
        std::function<bool(size_t)> select = [&](size_t from) -> bool {
            if (static_cast<int>(rows.size()) == rank) return true;
            for (size_t i = from; i < candidates.size(); ++i) {
                if (++nodes > nodeBudget) return false;
                rows.push_back(candidates[i].raw);
                if (snfDiagonalAllOnes(rows, static_cast<int>(rows.size()))) {
                    chosen.push_back(static_cast<int>(i));
                    if (select(i + 1)) return true;
                    chosen.pop_back();
                }
                rows.pop_back();
            }
            return false;
        };
        if (!select(0)) chosen.clear();
    }

    basisLoops_.assign(rank, std::nullopt);
    basisChains_.assign(rank, Chain1());
    normalizer_.assign(rank, std::vector<Coord>(rank, 0));

    if (rank == 0) return;

    if (static_cast<int>(chosen.size()) == rank) {
        std::vector<std::vector<Coord>> m(rank, std::vector<Coord>(rank));
        for (int j = 0; j < rank; ++j) {
            const Candidate& c = candidates[chosen[j]];
            basisLoops_[j] = c.loop;
            basisChains_[j] = chainOfBasePath(c.loop);
            for (int i = 0; i < rank; ++i) m[i][j] = c.raw[i];
        }
        normalizer_ = unimodularInverse(m);
    } else {
        // Fallback: integer combinations of the fundamental cycles.
        const int k = static_cast<int>(candidates.size());
        IMatrix m(rank, std::vector<BigInt>(k));
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < rank; ++i) m[i][j] = candidates[j].raw[i];
        }
        SnfResult snf = smithNormalForm(m);
        for (int i = 0; i < rank; ++i) {
            if (snf.d[i][i] != 1) throw Error("fundamental cycles do not generate H1");
        }
        for (int j = 0; j < rank; ++j) {
            Chain1 chain(sd.edgeCount(), 0);
            for (int i = 0; i < k; ++i) {
                Coord w = static_cast<Coord>(snf.v[i][j].convert_to<long long>());
                if (w == 0) continue;
                Chain1 ci = chainOfBasePath(candidates[i].loop);
                for (int e = 0; e < sd.edgeCount(); ++e) chain[e] += w * ci[e];
            }
            basisChains_[j] = std::move(chain);
        }
        for (int i = 0; i < rank; ++i) {
            for (int j = 0; j < rank; ++j) {
                normalizer_[i][j] = static_cast<Coord>(snf.u[i][j].convert_to<long long>());
            }
        }
    }

    // The published coordinates of basis cycle i must be e_i.
    for (int i = 0; i < rank; ++i) {
        std::vector<Coord> c = coordinates(basisChains_[i]);
        for (int j = 0; j < rank; ++j) {
            if (c[j] != (i == j ? 1 : 0)) throw Error("basis normalization failed");
        }
    }
}

Chain1 HomologyBasis::chainOfBasePath(const EdgePath& path) const {
    Chain1 z(sd_->edgeCount(), 0);
    for (const DirectedEdge& d : path.edges) {
        auto sdPath = sd_->sdPathOfBaseEdge(d);
        for (int i = 0; i < 2; ++i) {
            int u = sdPath[i], v = sdPath[i + 1];
            z[sd_->sdEdgeIndex(u, v)] += (u < v) ? 1 : -1;
        }
    }
    return z;
}

std::vector<Coord> HomologyBasis::rawCoordinates(const Chain1& z) const {
    const auto& tris = sd_->sdTriangles();
    std::vector<Coord> m(tris.size(), 0);
    for (size_t idx = 1; idx < dualOrder_.size(); ++idx) {
        int t = dualOrder_[idx];
        int p = dualParent_[t];
        int ei = dualParentEdge_[t];
        const Edge& e = sd_->sdEdges()[ei];
        int st = inducedSign(tris[t], e);
        int sp = inducedSign(tris[p], e);
        // z_e = m_p * sp + m_t * st determines the child potential.
        m[t] = st * (z[ei] - m[p] * sp);
    }
    std::vector<Coord> raw(xEdges_.size(), 0);
    for (size_t i = 0; i < xEdges_.size(); ++i) {
        int ei = xEdges_[i];
        const Edge& e = sd_->sdEdges()[ei];
        Coord r = z[ei];
        for (int t : sd_->sdEdgeTriangles(ei)) r -= m[t] * inducedSign(tris[t], e);
        raw[i] = r;
    }
    return raw;
}

std::vector<Coord> HomologyBasis::coordinates(const Chain1& z) const {
    if (static_cast<int>(z.size()) != sd_->edgeCount()) {
        throw NotACycleError("chain has wrong length for this surface");
    }
    if (!isCycle(*sd_, z)) throw NotACycleError("chain has nonzero boundary");
    std::vector<Coord> raw = rawCoordinates(z);
    const int rank = this->rank();
    std::vector<Coord> out(rank, 0);
    for (int i = 0; i < rank; ++i) {
        for (int j = 0; j < rank; ++j) out[i] += normalizer_[i][j] * raw[j];
    }
    return out;
}

std::vector<Coord> HomologyBasis::coordinatesOfWalk(const std::vector<int>& closedWalk) const {
    return coordinates(chainFromWalk(*sd_, closedWalk));
}

std::vector<Coord> HomologyBasis::coordinatesOfBaseLoop(const EdgeLoop& loop) const {
    return coordinates(chainOfBasePath(loop));
}

SimpleLoopResult findSimpleLoopInClass(const HomologyBasis& basis, const SimpleLoopQuery& query) {
    const SimplicialSurface& base = basis.surface().base();
    const int rank = basis.rank();
    if (static_cast<int>(query.targetClass.size()) != rank) throw Error("target class has wrong rank");

    std::vector<Coord> negated(query.targetClass);
    for (Coord& c : negated) c = -c;

    long long budget = query.budget;
    SimpleLoopResult result;

    std::vector<VertexId> starts;
    if (query.through) {
        starts.push_back(*query.through);
    } else {
        for (VertexId v = 0; v < base.vertexCount(); ++v) starts.push_back(v);
    }

    std::vector<bool> onPath(base.vertexCount(), false);
    std::vector<VertexId> path;

    std::function<bool(VertexId, VertexId)> dfs = [&](VertexId start, VertexId v) -> bool {
        if (--budget < 0) {
            result.exhausted = true;
            return true;
        }
        for (VertexId w : base.neighbors(v)) {
            if (w == start && path.size() >= 3) {
                if (!query.through && path[1] > path.back()) continue;  // canonical direction
                EdgeLoop loop = EdgePath::fromVertices([&] {
                    std::vector<VertexId> vs = path;
                    vs.push_back(start);
                    return vs;
                }());
                std::vector<Coord> c = basis.coordinatesOfBaseLoop(loop);
                if (c == query.targetClass) {
                    result.loop = loop;
                    return true;
                }
                if (c == negated) {
                    result.loop = loop.reversed();
                    return true;
                }
                continue;
            }
            if (onPath[w]) continue;
            if (!query.through && w < start) continue;  // min vertex canonicalization
            onPath[w] = true;
            path.push_back(w);
            if (dfs(start, w)) return true;
            path.pop_back();
            onPath[w] = false;
        }
        return false;
    };

    for (VertexId s : starts) {
        path.assign(1, s);
        std::fill(onPath.begin(), onPath.end(), false);
        onPath[s] = true;
        if (dfs(s, s)) break;
    }
    return result;
}

}  // namespace braidhom
