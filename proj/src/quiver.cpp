#include "mutad/quiver.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace mutad {

long long DecoratedQP::N_of(int idx) const {
    if (idx == 0) return 0;
    if (idx < 0 || idx > n + 1) throw internal_error("N index out of range");
    return N.at(idx);
}

long long DecoratedQP::r_of(int node) const {
    const Interval& iv = interval.at(node);
    return N_of(iv.hi) - N_of(iv.lo);
}

std::vector<int> DecoratedQP::node_ids() const {
    std::vector<int> ids;
    for (auto& [node, iv] : interval) ids.push_back(node);
    return ids;
}

std::vector<int> DecoratedQP::gauge_ids() const {
    std::vector<int> ids;
    for (auto& [node, iv] : interval)
        if (node != frozen) ids.push_back(node);
    return ids;
}

int DecoratedQP::arrow_mult(int u, int v) const {
    auto it = arrows.find({u, v});
    return it == arrows.end() ? 0 : it->second;
}

std::vector<int> DecoratedQP::out_neighbors(int v) const {
    std::vector<int> r;
    for (auto& [uv, m] : arrows)
        if (uv.first == v)
            for (int i = 0; i < m; ++i) r.push_back(uv.second);
    return r;
}

std::vector<int> DecoratedQP::in_neighbors(int v) const {
    std::vector<int> r;
    for (auto& [uv, m] : arrows)
        if (uv.second == v)
            for (int i = 0; i < m; ++i) r.push_back(uv.first);
    return r;
}

int DecoratedQP::valence(int v) const {
    int c = 0;
    for (auto& [uv, m] : arrows)
        if (uv.first == v || uv.second == v) c += m;
    return c;
}

std::array<int, 3> DecoratedQP::canon_cycle(std::array<int, 3> c) {
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (c[i] < c[best]) best = i;
    return {c[best], c[(best + 1) % 3], c[(best + 2) % 3]};
}

// The only valid stability condition has sign(sigma_v) = sign(N_f(v) - N_a(v)).
static int balance_sign(const DecoratedQP& q, int v) {
    auto [nf, na] = in_out_degree(q, v);
    if (nf == na) throw internal_error("balanced gauge node has no sign");
    return nf > na ? +1 : -1;
}

static void recompute_signs(DecoratedQP& q) {
    for (int v : q.gauge_ids()) q.sign[v] = balance_sign(q, v);
}

DecoratedQP DecoratedQP::initial_linear(int n, const std::vector<long long>& Nseq) {
    if (static_cast<int>(Nseq.size()) != n + 1) throw input_error("need n+1 decorations");
    for (int i = 0; i + 1 < static_cast<int>(Nseq.size()); ++i)
        if (Nseq[i] >= Nseq[i + 1]) throw input_error("decorations must be strictly increasing");
    if (Nseq[0] <= 0) throw input_error("decorations must be positive");
    DecoratedQP q;
    q.n = n;
    q.N.assign(n + 2, 0);
    for (int i = 1; i <= n + 1; ++i) q.N[i] = Nseq[i - 1];
    q.frozen = n + 1;
    for (int i = 1; i <= n; ++i) {
        q.arrows[{i, i + 1}] = 1;
        q.interval[i] = Interval{0, i};
        q.sign[i] = +1;
    }
    q.interval[n + 1] = Interval{0, n + 1};
    q.validate();
    return q;
}

void DecoratedQP::validate() const {
    if (!interval.count(frozen)) throw internal_error("frozen node has no interval");
    if (!(interval.at(frozen) == Interval{0, n + 1}))
        throw internal_error("frozen node must carry the full interval");
    for (auto& [node, iv] : interval) {
        if (iv.lo < 0 || iv.hi > n + 1 || iv.lo >= iv.hi)
            throw internal_error("bad interval on node " + std::to_string(node));
        if (r_of(node) <= 0) throw internal_error("non-positive decoration");
        if (node != frozen) {
            if (!sign.count(node) || std::abs(sign.at(node)) != 1)
                throw internal_error("missing sign on gauge node " + std::to_string(node));
            if (sign.at(node) != balance_sign(*this, node))
                throw internal_error("sign inconsistent with decorations at node " +
                                     std::to_string(node));
        }
    }
    for (auto& [uv, m] : arrows) {
        if (m <= 0) throw internal_error("non-positive arrow multiplicity");
        if (uv.first == uv.second) throw internal_error("loop arrow");
        if (arrows.count({uv.second, uv.first})) throw internal_error("2-cycle present");
        if (!interval.count(uv.first) || !interval.count(uv.second))
            throw internal_error("arrow endpoint has no interval");
    }
    for (auto& c : cycles) {
        if (!arrow_mult(c[0], c[1]) || !arrow_mult(c[1], c[2]) || !arrow_mult(c[2], c[0]))
            throw internal_error("potential cycle not realized by arrows");
    }
}

std::pair<long long, long long> in_out_degree(const DecoratedQP& q, int v) {
    if (!q.is_gauge(v)) throw input_error("frozen node");
    long long nf = 0, na = 0;
    for (auto& [uv, m] : q.arrows) {
        if (uv.first == v) nf += m * q.r_of(uv.second);
        if (uv.second == v) na += m * q.r_of(uv.first);
    }
    return {nf, na};
}

namespace {

struct RoleAssign {
    std::optional<int> v1, v2, v3, v4;
};

// Try every injective assignment of the listed nodes to the two role slots.
void assignments2(const std::vector<int>& nodes, std::vector<std::array<std::optional<int>, 2>>& out) {
    using O = std::optional<int>;
    if (nodes.size() > 2) return;
    if (nodes.empty()) {
        out.push_back({O{}, O{}});
    } else if (nodes.size() == 1) {
        out.push_back({nodes[0], O{}});
        out.push_back({O{}, nodes[0]});
    } else {
        out.push_back({nodes[0], nodes[1]});
        out.push_back({nodes[1], nodes[0]});
    }
}

} // namespace

LocalProfile local_profile(const DecoratedQP& q, int v) {
    if (!q.is_gauge(v)) throw input_error("frozen node");
    auto [nf, na] = in_out_degree(q, v);
    if (nf == na) throw input_error("not an Omega_n decoration: N_f(v) == N_a(v)");
    bool fig_a = nf > na;
    Interval iv = q.interval.at(v);
    std::vector<int> outs = q.out_neighbors(v), ins = q.in_neighbors(v);
    if (outs.size() > 2 || ins.size() > 2) throw input_error("not an Omega_n decoration: valence");

    // fig_a: out = {v1, v4}, in = {v2, v3}; fig_b: in = {v1, v4}, out = {v2, v3}.
    const std::vector<int>& slot14 = fig_a ? outs : ins;
    const std::vector<int>& slot23 = fig_a ? ins : outs;

    std::vector<std::array<std::optional<int>, 2>> a14, a23;
    assignments2(slot14, a14);
    assignments2(slot23, a23);

    std::vector<LocalProfile> found;
    for (auto& x14 : a14)
        for (auto& x23 : a23) {
            LocalProfile pr;
            pr.fig_a = fig_a;
            pr.v1 = x14[0];
            pr.v4 = x14[1];
            pr.v2 = x23[0];
            pr.v3 = x23[1];
            int m, k, p, l;
            if (fig_a) {
                l = iv.lo;
                k = iv.hi;
                if (!pr.v1) continue;  // v1 is always present
                Interval i1 = q.interval.at(*pr.v1);
                if (i1.lo != l) continue;
                m = i1.hi;
                if (pr.v4) {
                    Interval i4 = q.interval.at(*pr.v4);
                    if (i4.hi != k) continue;
                    p = i4.lo - 1;
                } else if (pr.v3) {
                    p = q.interval.at(*pr.v3).hi;
                } else {
                    p = l;
                }
            } else {
                p = iv.lo - 1;
                m = iv.hi;
                if (!pr.v1) continue;
                Interval i1 = q.interval.at(*pr.v1);
                if (i1.hi != m) continue;
                l = i1.lo;
                if (pr.v4) {
                    Interval i4 = q.interval.at(*pr.v4);
                    if (i4.lo != p + 1) continue;
                    k = i4.hi;
                } else if (pr.v2) {
                    k = q.interval.at(*pr.v2).lo - 1;
                } else {
                    k = p + 1;
                }
            }
            pr.m = m; pr.k = k; pr.p = p; pr.l = l;
            if (!(m > k && k > p && p >= l && l >= 0 && m <= q.n + 1)) continue;
            // Every role must reproduce the neighbor's interval exactly, and
            // absence must match the degenerate value.
            auto match = [&](const std::optional<int>& node, Interval want, bool absent_ok) {
                if (node) return q.interval.at(*node) == want;
                return absent_ok;
            };
            if (!match(pr.v1, Interval{l, m}, false)) continue;
            if (!match(pr.v2, Interval{k + 1, m}, m == k + 1)) continue;
            if (!match(pr.v3, Interval{l, p}, p == l)) continue;
            if (!match(pr.v4, Interval{p + 1, k}, p + 1 == k)) continue;
            if (pr.v2 && m == k + 1) continue;
            if (pr.v3 && p == l) continue;
            if (pr.v4 && p + 1 == k) continue;
            found.push_back(pr);
        }

    if (found.empty()) throw input_error("not an Omega_n decoration");
    for (size_t i = 1; i < found.size(); ++i) {
        auto& a = found[0];
        auto& b = found[i];
        if (std::tie(a.m, a.k, a.p, a.l) != std::tie(b.m, b.k, b.p, b.l))
            throw input_error("not an Omega_n decoration: ambiguous profile");
    }
    return found[0];
}

DecoratedQP mutate_quiver(const DecoratedQP& q, int v) {
    if (!q.is_gauge(v)) throw input_error("frozen node");
    LocalProfile pr = local_profile(q, v);
    auto [nf, na] = in_out_degree(q, v);

    DecoratedQP r = q;
    r.arrows.clear();
    r.cycles.clear();

    // Compose through v, then reverse at v, then cancel 2-cycles pairwise.
    std::map<std::pair<int, int>, int> b = q.arrows;
    for (auto& [uv, m1] : q.arrows) {
        if (uv.second != v) continue;
        for (auto& [vw, m2] : q.arrows) {
            if (vw.first != v) continue;
            b[{uv.first, vw.second}] += m1 * m2;
        }
    }
    std::map<std::pair<int, int>, int> flipped;
    for (auto& [uv, m] : b) {
        if (m == 0) continue;
        if (uv.first == v || uv.second == v)
            flipped[{uv.second, uv.first}] += m;
        else
            flipped[uv] += m;
    }
    for (auto& [uv, m] : flipped) {
        if (m <= 0) continue;
        auto op = flipped.find({uv.second, uv.first});
        if (op != flipped.end() && op->second > 0 && uv.first < uv.second) {
            int c = std::min(m, op->second);
            flipped[uv] -= c;
            op->second -= c;
        }
    }
    for (auto& [uv, m] : flipped)
        if (m > 0) r.arrows[uv] = m;

    // Potential: the class keeps W equal to the sum of all 3-cycles.
    for (auto& [uv, m] : r.arrows)
        for (auto& [vw, m2] : r.arrows) {
            if (vw.first != uv.second) continue;
            if (r.arrow_mult(vw.second, uv.first) > 0)
                r.cycles.insert(DecoratedQP::canon_cycle({uv.first, uv.second, vw.second}));
        }

    long long rv = std::max(nf, na) - q.r_of(v);
    if (rv <= 0) throw input_error("degenerate decoration");
    Interval niv = pr.fig_a ? Interval{pr.p + 1, pr.m} : Interval{pr.l, pr.k};
    if (r.N_of(niv.hi) - r.N_of(niv.lo) != rv)
        throw internal_error("interval update disagrees with max rule");
    r.interval[v] = niv;
    recompute_signs(r);
    if (r.sign.at(v) != -q.sign.at(v))
        throw internal_error("mutated node kept its stability sign");
    r.validate();
    return r;
}

namespace {

// All simple directed cycles, as canonical rotations.
std::set<std::vector<int>> directed_cycles(const DecoratedQP& q) {
    std::set<std::vector<int>> found;
    std::vector<int> ids = q.node_ids();
    std::function<void(int, std::vector<int>&)> dfs = [&](int start, std::vector<int>& path) {
        int cur = path.back();
        for (auto& [uv, m] : q.arrows) {
            if (uv.first != cur) continue;
            int nxt = uv.second;
            if (nxt == start) {
                auto it = std::min_element(path.begin(), path.end());
                std::vector<int> rot(it, path.end());
                rot.insert(rot.end(), path.begin(), it);
                found.insert(rot);
                continue;
            }
            if (std::find(path.begin(), path.end(), nxt) != path.end()) continue;
            if (nxt < start) continue;  // enumerate each cycle from its minimal node
            path.push_back(nxt);
            dfs(start, path);
            path.pop_back();
        }
    };
    for (int s : ids) {
        std::vector<int> path{s};
        dfs(s, path);
    }
    return found;
}

} // namespace

OmegaReport check_omega_membership(const DecoratedQP& q) {
    OmegaReport rep;
    auto fail = [&](const std::string& s) {
        rep.ok = false;
        rep.violations.push_back(s);
    };

    for (auto& [uv, m] : q.arrows) {
        if (m != 1) fail("arrow multiplicity exceeds 1");
        if (uv.first == uv.second) fail("loop arrow");
        if (q.arrow_mult(uv.second, uv.first) > 0) fail("2-cycle");
    }

    auto cyc = directed_cycles(q);
    std::set<std::array<int, 3>> triangles;
    for (auto& c : cyc) {
        if (c.size() != 3) {
            fail("cycle of length " + std::to_string(c.size()));
            continue;
        }
        triangles.insert(DecoratedQP::canon_cycle({c[0], c[1], c[2]}));
    }

    std::map<std::pair<int, int>, int> arrow_in_tri;
    for (auto& t : triangles) {
        ++arrow_in_tri[{t[0], t[1]}];
        ++arrow_in_tri[{t[1], t[2]}];
        ++arrow_in_tri[{t[2], t[0]}];
    }
    for (auto& [uv, c] : arrow_in_tri)
        if (c > 1) fail("arrow in more than one 3-cycle");

    if (triangles != q.cycles) fail("potential differs from the set of 3-cycles");

    int fr = q.frozen;
    int fval = q.valence(fr);
    if (fval > 2) fail("frozen node valence exceeds 2");
    if (fval == 2) {
        bool in_tri = false;
        for (auto& t : triangles)
            if (t[0] == fr || t[1] == fr || t[2] == fr) in_tri = true;
        if (!in_tri) fail("two arrows at the frozen node do not close a 3-cycle");
    }

    for (int v : q.gauge_ids()) {
        int val = q.valence(v);
        int tri_count = 0;
        for (auto& t : triangles)
            if (t[0] == v || t[1] == v || t[2] == v) ++tri_count;
        if (val > 4) fail("gauge node valence exceeds 4");
        if (val == 3 && tri_count != 1) fail("3-valent node not split as 3-cycle plus free arrow");
        if (val == 4 && tri_count != 2) fail("4-valent node not covered by two 3-cycles");
    }
    return rep;
}

PartialOrder partial_order(const DecoratedQP& q) {
    PartialOrder po;
    std::map<int, std::set<int>> adj;
    for (auto& [uv, m] : q.arrows) {
        adj[uv.first].insert(uv.second);
        adj[uv.second].insert(uv.first);
    }
    std::deque<int> bfs{q.frozen};
    po.distance[q.frozen] = 0;
    while (!bfs.empty()) {
        int cur = bfs.front();
        bfs.pop_front();
        for (int nb : adj[cur]) {
            if (po.distance.count(nb)) continue;
            po.distance[nb] = po.distance[cur] + 1;
            bfs.push_back(nb);
        }
    }
    for (auto& [node, iv] : q.interval) {
        if (!po.distance.count(node)) throw internal_error("disconnected quiver");
        if (node == q.frozen) continue;
        int d = po.distance.at(node);
        std::vector<int> ups;
        for (int nb : adj[node])
            if (po.distance.at(nb) == d - 1) ups.push_back(nb);
        if (ups.size() != 1) throw internal_error("shortest path to root is not unique");
        po.parent[node] = ups[0];
        po.children[ups[0]].push_back(node);
    }
    for (auto& [node, ch] : po.children) {
        std::sort(ch.begin(), ch.end());
        if (ch.size() > 2) throw internal_error("node has more than two maximal predecessors");
    }
    return po;
}

bool PartialOrder::precedes(int v, int w) const {
    int cur = v;
    while (parent.count(cur)) {
        cur = parent.at(cur);
        if (cur == w) return true;
    }
    return false;
}

std::string canonical_key(const DecoratedQP& q) {
    std::vector<int> gauge = q.gauge_ids();
    std::sort(gauge.begin(), gauge.end());
    std::vector<int> perm(gauge.size());
    std::iota(perm.begin(), perm.end(), 0);

    std::vector<int> best;
    do {
        std::map<int, int> relabel;
        for (size_t i = 0; i < gauge.size(); ++i) relabel[gauge[perm[i]]] = static_cast<int>(i) + 1;
        relabel[q.frozen] = q.n + 1;
        std::vector<int> enc;
        for (int i = 1; i <= q.n + 1; ++i) {
            int orig = -1;
            for (auto& [o, nn] : relabel)
                if (nn == i) orig = o;
            enc.push_back(q.interval.at(orig).lo);
            enc.push_back(q.interval.at(orig).hi);
            enc.push_back(orig == q.frozen ? 0 : q.sign.at(orig));
        }
        std::vector<std::array<int, 3>> arr;
        for (auto& [uv, m] : q.arrows) arr.push_back({relabel.at(uv.first), relabel.at(uv.second), m});
        std::sort(arr.begin(), arr.end());
        for (auto& a : arr) {
            enc.push_back(a[0]);
            enc.push_back(a[1]);
            enc.push_back(a[2]);
        }
        std::vector<std::array<int, 3>> cyc;
        for (auto& c : q.cycles)
            cyc.push_back(DecoratedQP::canon_cycle({relabel.at(c[0]), relabel.at(c[1]), relabel.at(c[2])}));
        std::sort(cyc.begin(), cyc.end());
        for (auto& c : cyc) {
            enc.push_back(c[0]);
            enc.push_back(c[1]);
            enc.push_back(c[2]);
        }
        if (best.empty() || enc < best) best = enc;
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::ostringstream os;
    for (int x : best) os << x << ",";
    return os.str();
}

namespace {

struct ShapeNode {
    Interval iv;
    int sign = 0;  // 0 for the subtree root before attachment
    std::vector<ShapeNode> kids;
    bool kid_cycle = false;  // both children present -> 3-cycle
};

// All decorated subtree shapes whose root carries the interval (a, b).
std::vector<ShapeNode> enum_shapes(int a, int b) {
    std::vector<ShapeNode> out;
    int below = b - a - 1;
    if (below == 0) {
        out.push_back(ShapeNode{Interval{a, b}, 0, {}, false});
        return out;
    }
    for (int s = a; s <= b - 1; ++s) {
        bool has1 = s > a;        // incoming child, interval (a, s)
        bool has2 = s + 1 < b;    // outgoing child, interval (s+1, b)
        if (!has1 && !has2) continue;
        std::vector<ShapeNode> left = has1 ? enum_shapes(a, s) : std::vector<ShapeNode>{};
        std::vector<ShapeNode> right = has2 ? enum_shapes(s + 1, b) : std::vector<ShapeNode>{};
        auto attach = [&](const ShapeNode* l, const ShapeNode* r) {
            ShapeNode node{Interval{a, b}, 0, {}, l && r};
            if (l) {
                ShapeNode c = *l;
                c.sign = +1;
                node.kids.push_back(std::move(c));
            }
            if (r) {
                ShapeNode c = *r;
                c.sign = -1;
                node.kids.push_back(std::move(c));
            }
            out.push_back(std::move(node));
        };
        if (has1 && has2) {
            for (auto& l : left)
                for (auto& r : right) attach(&l, &r);
        } else if (has1) {
            for (auto& l : left) attach(&l, nullptr);
        } else {
            for (auto& r : right) attach(nullptr, &r);
        }
    }
    return out;
}

void realize(const ShapeNode& node, int my_id, int& next_id, DecoratedQP& q) {
    q.interval[my_id] = node.iv;
    if (node.sign != 0) q.sign[my_id] = node.sign;
    std::vector<int> kid_ids;
    for (auto& kid : node.kids) {
        int kid_id = next_id++;
        kid_ids.push_back(kid_id);
        if (kid.sign > 0)
            q.arrows[{kid_id, my_id}] = 1;  // incoming child
        else
            q.arrows[{my_id, kid_id}] = 1;  // outgoing child
        realize(kid, kid_id, next_id, q);
    }
    if (node.kid_cycle) {
        // incoming child c1, outgoing child c2, closing arrow c2 -> c1
        q.arrows[{kid_ids[1], kid_ids[0]}] = 1;
        q.cycles.insert(DecoratedQP::canon_cycle({kid_ids[0], my_id, kid_ids[1]}));
    }
}

} // namespace

std::vector<DecoratedQP> enumerate_omega(int n, const std::vector<long long>& Nseq) {
    if (static_cast<int>(Nseq.size()) != n + 1) throw input_error("need n+1 decorations");
    std::vector<DecoratedQP> out;
    for (auto& shape : enum_shapes(0, n + 1)) {
        DecoratedQP q;
        q.n = n;
        q.N.assign(n + 2, 0);
        for (int i = 1; i <= n + 1; ++i) q.N[i] = Nseq[i - 1];
        q.frozen = n + 1;
        int next_id = 1;
        realize(shape, n + 1, next_id, q);
        for (int v : q.gauge_ids())
            if (q.sign.at(v) != balance_sign(q, v))
                throw internal_error("pattern sign disagrees with the balance rule");
        q.validate();
        auto rep = check_omega_membership(q);
        if (!rep.ok) throw internal_error("recursive construction left the mutation class: " + rep.violations.front());
        out.push_back(std::move(q));
    }
    // Deduplicate by canonical key (the recursion should already be injective).
    std::map<std::string, DecoratedQP> dedup;
    for (auto& q : out) dedup.emplace(canonical_key(q), q);
    std::vector<DecoratedQP> uniq;
    for (auto& [k, q] : dedup) uniq.push_back(q);
    return uniq;
}

std::vector<DecoratedQP> enumerate_omega_bfs(int n, const std::vector<long long>& Nseq, size_t cap) {
    DecoratedQP start = DecoratedQP::initial_linear(n, Nseq);
    std::map<std::string, DecoratedQP> seen;
    std::deque<DecoratedQP> frontier{start};
    seen.emplace(canonical_key(start), start);
    while (!frontier.empty()) {
        DecoratedQP q = frontier.front();
        frontier.pop_front();
        for (int v : q.gauge_ids()) {
            DecoratedQP m = mutate_quiver(q, v);
            std::string key = canonical_key(m);
            if (seen.count(key)) continue;
            if (seen.size() >= cap) throw input_error("not finite type within cap");
            seen.emplace(key, m);
            frontier.push_back(m);
        }
    }
    std::vector<DecoratedQP> out;
    for (auto& [k, q] : seen) out.push_back(q);
    return out;
}

std::vector<PhaseInequality> phase_inequalities(const DecoratedQP& q) {
    PartialOrder po = partial_order(q);
    std::vector<PhaseInequality> out;
    for (auto& [node, kids] : po.children) {
        for (int c : kids) {
            bool incoming = q.arrow_mult(c, node) > 0;  // child -> parent
            int sgn = incoming ? +1 : -1;
            out.push_back(PhaseInequality{{c}, sgn});
            // Longest oriented chain continuing downward from c.
            std::vector<int> chain{c};
            int cur = c;
            while (true) {
                int next = -1;
                auto it = po.children.find(cur);
                if (it == po.children.end()) break;
                for (int k : it->second) {
                    bool arrow_down = incoming ? q.arrow_mult(cur, k) > 0 : q.arrow_mult(k, cur) > 0;
                    if (arrow_down) next = k;
                }
                if (next < 0) break;
                chain.push_back(next);
                cur = next;
            }
            if (chain.size() > 1) out.push_back(PhaseInequality{chain, sgn});
        }
    }
    return out;
}

} // namespace mutad
