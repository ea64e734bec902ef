// mutad: decorated quiver mutations, A-type cluster algebras, and exact
// verification of the quantum cohomological exchange relations of partial
// flag varieties.

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include "mutad/flagqh.hpp"
#include "mutad/jsonio.hpp"
#include "mutad/psi.hpp"

using namespace mutad;

namespace {

std::vector<long long> parse_shape(const std::string& csv) {
    std::vector<long long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoll(item));
    }
    if (out.size() < 2) throw input_error("expected a comma list like 1,2,3");
    return out;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return j;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw input_error("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw input_error("cannot move report into " + path);
}

// Compare a produced report against DIR/<name>.json, ignoring wall time.
bool check_golden(const std::string& dir, const std::string& name, const Json& produced) {
    std::string path = dir + "/" + name + ".json";
    Json golden = read_json_file(path);
    return matches_golden(produced, golden);
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (!isalnum(static_cast<unsigned char>(c))) c = '_';
    return s;
}

// Tiny expression parser for `qh reduce`: rationals, registry variables,
// +, -, *, ^, parentheses.
class PolyParser {
public:
    PolyParser(RegistryPtr reg, std::string text) : reg_(std::move(reg)), s_(std::move(text)) {}

    MPoly parse() {
        MPoly r = expression();
        skip();
        if (pos_ != s_.size()) throw input_error("trailing characters in polynomial");
        return r;
    }

private:
    void skip() {
        while (pos_ < s_.size() && isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    MPoly expression() {
        MPoly acc = MPoly::zero(reg_);
        bool neg = eat('-');
        acc += neg ? -term() : term();
        while (true) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else break;
        }
        return acc;
    }
    MPoly term() {
        MPoly acc = factor();
        while (true) {
            skip();
            if (eat('*')) acc *= factor();
            else if (pos_ < s_.size() &&
                     (isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
                acc *= factor();  // implicit product
            else break;
        }
        return acc;
    }
    MPoly factor() {
        skip();
        if (eat('(')) {
            MPoly inner = expression();
            if (!eat(')')) throw input_error("missing ) in polynomial");
            return power_tail(inner);
        }
        if (pos_ < s_.size() && (isdigit(static_cast<unsigned char>(s_[pos_])))) {
            size_t start = pos_;
            while (pos_ < s_.size() && (isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
                ++pos_;
            Rat c(s_.substr(start, pos_ - start));
            return power_tail(MPoly::constant(reg_, c));
        }
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (start == pos_) throw input_error("cannot parse polynomial near position " +
                                             std::to_string(pos_));
        std::string name = s_.substr(start, pos_ - start);
        int idx = reg_->index_of(name);
        if (idx < 0) throw input_error("unknown variable " + name);
        return power_tail(MPoly::variable(reg_, idx));
    }
    MPoly power_tail(MPoly base) {
        skip();
        if (eat('^')) {
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) throw input_error("missing exponent");
            return base.pow(std::stol(s_.substr(start, pos_ - start)));
        }
        return base;
    }

    RegistryPtr reg_;
    std::string s_;
    size_t pos_ = 0;
};

void run_parallel(size_t jobs, size_t count, const std::function<void(size_t)>& body) {
    if (jobs <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t j = 0; j < std::min(jobs, count); ++j)
        pool.emplace_back([&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= count) break;
                body(i);
            }
        });
    for (auto& t : pool) t.join();
}

struct Common {
    std::string report_path;
    std::string golden_dir;
    size_t jobs = 1;
};

int finish(const Common& c, const std::string& name, const Json& out, bool ok) {
    std::cout << dump_canonical(out);
    if (!c.report_path.empty()) write_file_atomic(c.report_path, dump_canonical(out));
    if (!c.golden_dir.empty() && !check_golden(c.golden_dir, sanitize(name), out)) {
        std::cerr << "golden mismatch for " << name << "\n";
        return 1;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decorated quiver mutations and quantum cohomological exchange relations"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may trail the subcommand
    Common common;
    app.add_option("--report", common.report_path, "write the JSON report here");
    app.add_option("--golden", common.golden_dir, "compare the report against fixtures in DIR");
    app.add_option("--jobs", common.jobs, "parallel workers for batch verification");

    // quiver
    auto* quiver = app.add_subcommand("quiver", "decorated quivers with potential");
    auto* qmut = quiver->add_subcommand("mutate", "mutate a quiver at a gauge node");
    std::string qin, qout;
    int at_node = 0;
    qmut->add_option("--in", qin, "input quiver JSON")->required();
    qmut->add_option("--at", at_node, "gauge node")->required();
    qmut->add_option("--out", qout, "output JSON path");

    auto* qenum = quiver->add_subcommand("enumerate", "enumerate the mutation class");
    int en_n = 0;
    std::string en_N;
    qenum->add_option("--n", en_n, "number of gauge nodes")->required();
    qenum->add_option("--N", en_N, "decorations N_1,...,N_{n+1}");

    auto* qphase = quiver->add_subcommand("phases", "emit the stability inequalities");
    std::string ph_in;
    qphase->add_option("--in", ph_in, "input quiver JSON")->required();

    // cluster
    auto* cluster = app.add_subcommand("cluster", "A-type cluster algebra");
    auto* cenum = cluster->add_subcommand("enumerate", "enumerate all cluster variables");
    int cl_n = 0;
    std::string cl_N;
    bool cl_json = false;
    cenum->add_option("--n", cl_n, "rank")->required();
    cenum->add_option("--N", cl_N, "decorations (defaults to 1..n+1)");
    cenum->add_flag("--json", cl_json, "JSON output (always on; kept for compatibility)");

    auto* cpath = cluster->add_subcommand("mutate-path", "apply a mutation path to the initial seed");
    int cp_n = 0;
    std::string cp_N, cp_path;
    cpath->add_option("--n", cp_n, "rank")->required();
    cpath->add_option("--N", cp_N, "decorations (defaults to 1..n+1)");
    cpath->add_option("--path", cp_path, "comma list of gauge nodes")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "quantum cohomological identities");
    auto* vex = verify->add_subcommand("exchange", "verify one identity or a whole family");
    std::string vx_N, vx_id, vx_kl, vx_mkpl, vx_idx;
    bool vx_all = false;
    vex->add_option("--N", vx_N, "flag shape")->required();
    vex->add_option("--id", vx_id, "identity id")->required();
    vex->add_option("--kl", vx_kl, "indices k,l");
    vex->add_option("--mkpl", vx_mkpl, "indices m,k,p,l");
    vex->add_option("--idx", vx_idx, "generic index list");
    vex->add_flag("--all", vx_all, "verify every valid index tuple");

    auto* vcr = verify->add_subcommand("cross", "classical limit against fixed-point restriction");
    std::string vc_N, vc_id, vc_idx;
    bool vc_all = false;
    vcr->add_option("--N", vc_N, "flag shape")->required();
    vcr->add_option("--id", vc_id, "identity id")->required();
    vcr->add_option("--idx", vc_idx, "index list");
    vcr->add_flag("--all", vc_all, "check every valid index tuple");

    // psi
    auto* psi = app.add_subcommand("psi", "cluster-to-quantum-cohomology homomorphism");
    auto* pver = psi->add_subcommand("verify", "verify exchange relations through the map");
    int ps_n = 0;
    std::string ps_N, ps_path;
    bool ps_all = false;
    pver->add_option("--n", ps_n, "rank")->required();
    pver->add_option("--N", ps_N, "decorations")->required();
    pver->add_option("--path", ps_path, "mutation path");
    pver->add_flag("--all", ps_all, "all exchanges over the seed graph");

    auto* ptab = psi->add_subcommand("table", "variable-to-image table");
    int pt_n = 0;
    std::string pt_N;
    ptab->add_option("--n", pt_n, "rank")->required();
    ptab->add_option("--N", pt_N, "decorations")->required();

    // gkm
    auto* gkm = app.add_subcommand("gkm", "fixed points and one-skeleton");
    auto* gexp = gkm->add_subcommand("export", "DOT export of the GKM graph");
    std::string gk_in, gk_N;
    int gk_n = 0;
    bool gk_dot = false;
    gexp->add_option("--in", gk_in, "quiver JSON (or use --n/--N for the linear quiver)");
    gexp->add_option("--n", gk_n, "rank of the linear quiver");
    gexp->add_option("--N", gk_N, "decorations");
    gexp->add_flag("--dot", gk_dot, "DOT output");
    auto* gpts = gkm->add_subcommand("points", "fixed point list");
    std::string gp_in, gp_N;
    int gp_n = 0;
    gpts->add_option("--in", gp_in, "quiver JSON");
    gpts->add_option("--n", gp_n, "rank of the linear quiver");
    gpts->add_option("--N", gp_N, "decorations");

    // seiberg
    auto* seiberg = app.add_subcommand("seiberg", "graph-level duality");
    auto* sver = seiberg->add_subcommand("verify", "verify one mutation");
    int sb_n = 0, sb_at = 0;
    std::string sb_N, sb_in;
    long long sb_d = 3;
    sver->add_option("--n", sb_n, "rank of the linear quiver");
    sver->add_option("--N", sb_N, "decorations");
    sver->add_option("--in", sb_in, "quiver JSON");
    sver->add_option("--at", sb_at, "gauge node")->required();
    sver->add_option("--max-degree", sb_d, "largest edge degree for h factors");

    // qh
    auto* qh = app.add_subcommand("qh", "abelianized quantum ring");
    auto* qred = qh->add_subcommand("reduce", "normal form of a polynomial");
    std::string qh_N, qh_poly, qh_mode = "quantum";
    bool qh_spec = false;
    qred->add_option("--N", qh_N, "flag shape")->required();
    qred->add_option("--poly", qh_poly, "polynomial in t, x{k}_{i}, lam{j}, qa{k}_{i}, q{k}")
        ->required();
    qred->add_option("--mode", qh_mode, "classical or quantum");
    qred->add_flag("--specialize", qh_spec, "apply the Novikov specialization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*qmut) {
            DecoratedQP q = quiver_from_json(read_json_file(qin));
            DecoratedQP m = mutate_quiver(q, at_node);
            Json out = quiver_to_json(m);
            if (!qout.empty()) write_file_atomic(qout, dump_canonical(out));
            else std::cout << dump_canonical(out);
            return 0;
        }
        if (*qenum) {
            std::vector<long long> N;
            if (!en_N.empty()) N = parse_shape(en_N);
            else
                for (int i = 1; i <= en_n + 1; ++i) N.push_back(i);
            auto all = enumerate_omega(en_n, N);
            auto bfs = enumerate_omega_bfs(en_n, N);
            Json out;
            out["count"] = all.size();
            out["bfs_count"] = bfs.size();
            Json arr = Json::array();
            for (auto& q : all) arr.push_back(quiver_to_json(q));
            out["quivers"] = arr;
            return finish(common, "quiver_enumerate_n" + std::to_string(en_n), out,
                          all.size() == bfs.size());
        }
        if (*qphase) {
            DecoratedQP q = quiver_from_json(read_json_file(ph_in));
            Json out;
            out["inequalities"] = phase_inequalities_to_json(phase_inequalities(q));
            std::cout << dump_canonical(out);
            return 0;
        }
        if (*cenum) {
            std::vector<long long> N;
            if (!cl_N.empty()) N = parse_shape(cl_N);
            else
                for (int i = 1; i <= cl_n + 1; ++i) N.push_back(i);
            Seed s = Seed::initial(cl_n, N, cluster_registry(cl_n));
            ClusterEnumeration e = enumerate_cluster_variables(s);
            Json out = cluster_enum_to_json(e);
            return finish(common, "cluster_enumerate_n" + std::to_string(cl_n), out, true);
        }
        if (*cpath) {
            std::vector<long long> N;
            if (!cp_N.empty()) N = parse_shape(cp_N);
            else
                for (int i = 1; i <= cp_n + 1; ++i) N.push_back(i);
            Seed s = Seed::initial(cp_n, N, cluster_registry(cp_n));
            Json steps = Json::array();
            for (int v : parse_ints(cp_path)) {
                s = seed_mutate(s, v);
                Json js;
                js["mutated_at"] = v;
                js["variable"] = laurent_to_json(s.vars.at(v));
                steps.push_back(js);
            }
            Json out;
            out["steps"] = steps;
            Json final_vars = Json::object();
            for (auto& [node, var] : s.vars) final_vars[std::to_string(node)] = laurent_to_json(var);
            out["final"] = final_vars;
            std::cout << dump_canonical(out);
            return 0;
        }
        if (*vex || *vcr) {
            bool cross = vcr->parsed();
            std::vector<long long> N = parse_shape(cross ? vc_N : vx_N);
            std::string id = cross ? vc_id : vx_id;
            FlagQH engine(N);
            std::vector<RelationInstance> instances;
            bool all = cross ? vc_all : vx_all;
            if (all) {
                instances = engine.instances_of(id);
            } else {
                std::string idx = cross ? vc_idx : !vx_idx.empty() ? vx_idx
                                          : !vx_mkpl.empty()      ? vx_mkpl
                                                                  : vx_kl;
                if (idx.empty()) throw input_error("give --idx/--kl/--mkpl or --all");
                instances.push_back({id, parse_ints(idx)});
            }
            std::vector<Json> reports(instances.size());
            std::vector<char> ok(instances.size(), 0);
            // one engine per worker: the caches are not shared across threads
            run_parallel(common.jobs, instances.size(), [&](size_t i) {
                thread_local std::unique_ptr<FlagQH> local;
                if (!local) local = std::make_unique<FlagQH>(N);
                VerificationReport rep = cross ? local->localization_cross_check(instances[i])
                                               : local->verify_relation(instances[i]);
                reports[i] = report_to_json(rep);
                ok[i] = rep.equal();
            });
            Json out;
            out["identity"] = id;
            Json arr = Json::array();
            bool every = true;
            for (size_t i = 0; i < reports.size(); ++i) {
                arr.push_back(reports[i]);
                every = every && ok[i];
            }
            out["reports"] = arr;
            out["all_equal"] = every;
            return finish(common, std::string(cross ? "cross_" : "exchange_") + id, out, every);
        }
        if (*pver) {
            std::vector<long long> N = parse_shape(ps_N);
            PsiMap pm(ps_n, N);
            FlagQH engine(N);
            VerificationReport rep = ps_all ? pm.verify_homomorphism_all(engine)
                                            : pm.verify_homomorphism_path(parse_ints(ps_path), engine);
            Json out = report_to_json(rep);
            return finish(common, "psi_verify", out, rep.equal());
        }
        if (*ptab) {
            PsiMap pm(pt_n, parse_shape(pt_N));
            Json out = psi_table_to_json(pm.image_table());
            std::cout << dump_canonical(out);
            return 0;
        }
        if (*gexp || *gpts) {
            std::string in = *gexp ? gk_in : gp_in;
            DecoratedQP q;
            if (!in.empty()) {
                q = quiver_from_json(read_json_file(in));
            } else {
                int n = *gexp ? gk_n : gp_n;
                std::string Ns = *gexp ? gk_N : gp_N;
                if (n <= 0) throw input_error("give --in or --n/--N");
                std::vector<long long> N;
                if (!Ns.empty()) N = parse_shape(Ns);
                else
                    for (int i = 1; i <= n + 1; ++i) N.push_back(i);
                q = DecoratedQP::initial_linear(n, N);
            }
            if (*gexp) {
                std::cout << gkm_to_dot(build_gkm_graph(q));
                return 0;
            }
            std::cout << dump_canonical(fixed_points_to_json(q, enumerate_fixed_points(q)));
            return 0;
        }
        if (*sver) {
            DecoratedQP q;
            if (!sb_in.empty()) {
                q = quiver_from_json(read_json_file(sb_in));
            } else {
                if (sb_n <= 0) throw input_error("give --in or --n/--N");
                std::vector<long long> N;
                if (!sb_N.empty()) N = parse_shape(sb_N);
                else
                    for (int i = 1; i <= sb_n + 1; ++i) N.push_back(i);
                q = DecoratedQP::initial_linear(sb_n, N);
            }
            VerificationReport rep = verify_seiberg_graph_level(q, sb_at, sb_d);
            Json out = report_to_json(rep);
            return finish(common, "seiberg_verify", out, rep.equal());
        }
        if (*qred) {
            FlagRing ring(parse_shape(qh_N));
            MPoly p = PolyParser(ring.reg(), qh_poly).parse();
            MPoly nf;
            if (qh_mode == "classical") nf = ring.classical_reduce(p);
            else if (qh_mode == "quantum") nf = ring.quantum_reduce(p);
            else throw input_error("mode must be classical or quantum");
            if (qh_spec) nf = ring.specialize_novikov(nf);
            Json out;
            out["input"] = qh_poly;
            out["mode"] = qh_mode;
            out["normal_form"] = nf.to_string();
            std::cout << dump_canonical(out);
            return 0;
        }
        throw input_error("no subcommand given");
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
