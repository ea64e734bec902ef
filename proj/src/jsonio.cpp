#include "mutad/jsonio.hpp"

#include <sstream>

namespace mutad {

Json quiver_to_json(const DecoratedQP& q) {
    Json j;
    j["n"] = q.n;
    Json nseq = Json::array();
    for (int i = 1; i <= q.n + 1; ++i) nseq.push_back(q.N_of(i));
    j["N"] = nseq;
    j["frozen"] = Json::array({q.frozen});
    Json arrows = Json::array();
    for (auto& [uv, m] : q.arrows) arrows.push_back(Json::array({uv.first, uv.second, m}));
    j["arrows"] = arrows;
    Json cycles = Json::array();
    for (auto& c : q.cycles) cycles.push_back(Json::array({c[0], c[1], c[2]}));
    j["cycles"] = cycles;
    Json intervals = Json::object();
    for (auto& [node, iv] : q.interval)
        intervals[std::to_string(node)] = Json::array({iv.lo, iv.hi});
    j["intervals"] = intervals;
    Json signs = Json::object();
    for (auto& [node, s] : q.sign) signs[std::to_string(node)] = s;
    j["signs"] = signs;
    return j;
}

DecoratedQP quiver_from_json(const Json& j) {
    DecoratedQP q;
    try {
        q.n = j.at("n").get<int>();
        auto nseq = j.at("N").get<std::vector<long long>>();
        if (static_cast<int>(nseq.size()) != q.n + 1) throw input_error("N length must be n+1");
        q.N.assign(q.n + 2, 0);
        for (int i = 1; i <= q.n + 1; ++i) q.N[i] = nseq[i - 1];
        auto frozen = j.at("frozen").get<std::vector<int>>();
        if (frozen.size() != 1) throw input_error("exactly one frozen node expected");
        q.frozen = frozen[0];
        for (auto& a : j.at("arrows")) {
            if (!a.is_array() || a.size() != 3) throw input_error("arrow entries are [u,v,mult]");
            q.arrows[{a[0].get<int>(), a[1].get<int>()}] = a[2].get<int>();
        }
        for (auto& c : j.at("cycles")) {
            if (!c.is_array() || c.size() != 3) throw input_error("cycle entries are [a,b,c]");
            q.cycles.insert(DecoratedQP::canon_cycle({c[0].get<int>(), c[1].get<int>(), c[2].get<int>()}));
        }
        for (auto& [key, val] : j.at("intervals").items())
            q.interval[std::stoi(key)] = Interval{val.at(0).get<int>(), val.at(1).get<int>()};
        for (auto& [key, val] : j.at("signs").items()) q.sign[std::stoi(key)] = val.get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("malformed quiver JSON: ") + e.what());
    }
    q.validate();
    return q;
}

Json report_to_json(const VerificationReport& r) {
    Json j;
    j["identity"] = r.identity;
    j["shape"] = r.shape;
    j["indices"] = r.indices;
    j["status"] = r.status;
    j["equal"] = r.equal();
    j["diagnostics"] = r.diagnostics;
    j["wall_ms"] = r.wall_ms;
    return j;
}

Json laurent_to_json(const LaurentRat& v) {
    Json j;
    j["numerator"] = v.num.to_string();
    j["denominator_exponents"] = v.denominator_vector();
    return j;
}

Json cluster_enum_to_json(const ClusterEnumeration& e) {
    Json j;
    j["seed_count"] = e.seeds.size();
    j["variable_count"] = e.variables.size();
    Json vars = Json::array();
    for (auto& v : e.variables) vars.push_back(laurent_to_json(v));
    j["variables"] = vars;
    Json graph = Json::object();
    int idx = 0;
    std::map<std::string, int> key_index;
    for (auto& [k, adj] : e.seed_graph) key_index[k] = idx++;
    for (auto& [k, adj] : e.seed_graph) {
        Json nbrs = Json::array();
        for (auto& o : adj) nbrs.push_back(key_index.at(o));
        graph[std::to_string(key_index.at(k))] = nbrs;
    }
    j["seed_graph"] = graph;
    return j;
}

Json fixed_points_to_json(const DecoratedQP& q, const std::vector<FixedPoint>& pts) {
    Json arr = Json::array();
    for (auto& p : pts) {
        Json jp = Json::object();
        for (auto& [node, s] : p.I) jp[std::to_string(node)] = std::vector<int>(s.begin(), s.end());
        arr.push_back(jp);
    }
    Json j;
    j["count"] = pts.size();
    j["points"] = arr;
    (void)q;
    return j;
}

Json psi_table_to_json(const std::map<std::string, PsiImage>& table) {
    Json j = Json::object();
    for (auto& [var, img] : table) {
        Json ji;
        ji["sign"] = img.sign;
        Json xi = Json::object();
        for (auto& [i, e] : img.xi)
            if (e != 0) xi["xi" + std::to_string(i)] = e;
        ji["xi"] = xi;
        ji["chern"] = img.spec.to_string();
        j[var] = ji;
    }
    return j;
}

Json phase_inequalities_to_json(const std::vector<PhaseInequality>& ineqs) {
    Json arr = Json::array();
    for (auto& iq : ineqs) {
        Json j;
        j["nodes"] = iq.nodes;
        j["sign"] = iq.sign > 0 ? ">0" : "<0";
        arr.push_back(j);
    }
    return arr;
}

std::string gkm_to_dot(const GkmGraph& g) {
    std::ostringstream os;
    os << "graph gkm {\n";
    for (size_t i = 0; i < g.vertices.size(); ++i)
        os << "  v" << i << " [label=\"" << g.vertices[i].key() << "\"];\n";
    for (auto& e : g.edges)
        os << "  v" << e.a << " -- v" << e.b << " [label=\"lam" << e.wi << "-lam" << e.wj
           << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string dump_canonical(const Json& j) {
    Json sorted = Json::parse(nlohmann::json(j).dump());  // plain json sorts object keys
    return sorted.dump(2) + "\n";
}

bool matches_golden(const Json& produced, const Json& golden) {
    nlohmann::json a = nlohmann::json::parse(nlohmann::json(produced).dump());
    nlohmann::json b = nlohmann::json::parse(nlohmann::json(golden).dump());
    std::function<void(nlohmann::json&)> strip = [&](nlohmann::json& x) {
        if (x.is_object()) {
            x.erase("wall_ms");
            for (auto& [k, v] : x.items()) strip(v);
        } else if (x.is_array()) {
            for (auto& v : x) strip(v);
        }
    };
    strip(a);
    strip(b);
    return a == b;
}

} // namespace mutad
