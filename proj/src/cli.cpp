#include "posetlab/cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "posetlab/bigint.hpp"
#include "posetlab/covering.hpp"
#include "posetlab/criteria.hpp"
#include "posetlab/errors.hpp"
#include "posetlab/ground.hpp"
#include "posetlab/poset.hpp"
#include "posetlab/profile.hpp"
#include "posetlab/search.hpp"

namespace posetlab {
namespace {

using ojson = nlohmann::ordered_json;

struct flags {
    std::string ground_kind = "boolean";
    int n = 0;
    int q = 2;
    int k = 0;
    int l = 1;
    int r = 0;
    int directions = 50;
    int threads = 0;
    int n_max = 5;
    std::uint64_t seed = 1;
    std::string forbid;
    std::string pattern;
    std::string weights;
    std::string family_spec = "all";
    std::string restrict_spec;
    std::string method;
    std::string which;
    std::string inner_max;
    std::string node_cap;
    std::string format = "json";
    std::string out_path;
    bool alt_window = false;
    bool intersecting = false;
};

// Per-command context the handlers fill in.
struct command_ctx {
    ojson params = ojson::object();
    ojson result = ojson::object();
    bool unproven = false;  // exit 4: node cap hit before a proof
    int exit_override = -1;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

int small_int(const std::string& tok, const std::string& what) {
    Int v = parse_int(tok);
    if (v < 0 || v > 1000000) fail(errc::out_of_range, what + " out of range: " + tok);
    return static_cast<int>(v);
}

ground make_ground(const flags& f) {
    if (f.ground_kind == "boolean") return build_boolean(f.n);
    if (f.ground_kind == "subspace") return build_subspace(f.n, f.q);
    fail(errc::parse_error, "ground must be boolean or subspace");
}

bool is_subspace(const flags& f) { return f.ground_kind == "subspace"; }

std::vector<poset_spec> parse_forbid(const std::string& s) {
    std::vector<poset_spec> out;
    if (s.empty()) return out;
    for (const auto& tok : split_list(s)) out.push_back(parse_poset(tok));
    return out;
}

weight_vec parse_weights(const ground& g, const std::string& s) {
    weight_vec w;
    for (const auto& tok : split_list(s)) w.w.push_back(parse_rat(tok));
    if (static_cast<int>(w.w.size()) != g.n + 1)
        fail(errc::parse_error, "weights need exactly " + std::to_string(g.n + 1) + " entries");
    return w;
}

// Family grammar: all | empty | levels:i,j,... | members:a,b,...
bitset parse_family_spec(const ground& g, const std::string& s) {
    bitset b(g.count);
    if (s == "all") {
        for (std::size_t e = 0; e < g.count; ++e) b.set(e);
        return b;
    }
    if (s == "empty") return b;
    if (s.rfind("levels:", 0) == 0) {
        for (const auto& tok : split_list(s.substr(7))) {
            int lv = small_int(tok, "level");
            if (lv > g.n) fail(errc::out_of_range, "level " + tok + " above " + std::to_string(g.n));
            for (std::size_t e = g.level_begin[lv]; e < g.level_begin[lv + 1]; ++e) b.set(e);
        }
        return b;
    }
    if (s.rfind("members:", 0) == 0) {
        for (const auto& tok : split_list(s.substr(8))) {
            int id = small_int(tok, "member id");
            if (static_cast<std::size_t>(id) >= g.count)
                fail(errc::out_of_range, "member id " + tok + " above " + std::to_string(g.count - 1));
            b.set(static_cast<std::size_t>(id));
        }
        return b;
    }
    fail(errc::parse_error, "family spec must be all|empty|levels:i,j|members:a,b");
}

covering_method parse_method(const std::string& s) {
    if (s == "chains") return covering_method::chains;
    if (s == "cycle") return covering_method::cycle;
    if (s == "boolean-sublattices" || s == "boolean_sublattices")
        return covering_method::boolean_sublattices;
    fail(errc::parse_error, "method must be chains|cycle|boolean-sublattices");
}

const char* method_name(covering_method m) {
    switch (m) {
        case covering_method::chains: return "chains";
        case covering_method::cycle: return "cycle";
        case covering_method::boolean_sublattices: return "boolean-sublattices";
        default: return "custom";
    }
}

search_options options_of(const flags& f) {
    search_options o;
    o.threads = f.threads;
    if (!f.node_cap.empty()) {
        Int cap = parse_int(f.node_cap);
        if (cap < 1) fail(errc::out_of_range, "node cap must be positive");
        o.node_cap = cap;
    }
    return o;
}

ojson int_array(const std::vector<Int>& v) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(int_str(x));
    return a;
}

ojson rat_array(const std::vector<Rat>& v) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(rat_str(x));
    return a;
}

ojson tuple_array(const std::vector<int>& t) {
    ojson a = ojson::array();
    for (int x : t) a.push_back(x);
    return a;
}

ojson witness_json(const ground& g, const bitset& members) {
    ojson w;
    w["size"] = int_str(Int(members.count()));
    ojson ids = ojson::array();
    ojson desc = ojson::array();
    members.for_each_set([&](std::size_t e) {
        ids.push_back(static_cast<std::uint64_t>(e));
        desc.push_back(g.describe(e));
    });
    w["ids"] = std::move(ids);
    w["members"] = std::move(desc);
    return w;
}

void echo_ground(const flags& f, command_ctx& c) {
    c.params["ground"] = f.ground_kind;
    c.params["n"] = f.n;
    if (is_subspace(f)) c.params["q"] = f.q;
}

void echo_search_extras(const flags& f, command_ctx& c) {
    if (f.intersecting) c.params["intersecting"] = true;
    if (!f.restrict_spec.empty()) c.params["restrict"] = f.restrict_spec;
    if (!f.node_cap.empty()) c.params["node_cap"] = f.node_cap;
}

// ---- handlers ----

void do_gauss(const flags& f, command_ctx& c) {
    c.params["n"] = f.n;
    c.params["k"] = f.k;
    c.params["q"] = f.q;
    if (f.n < 0 || f.k < 0) fail(errc::out_of_range, "n and k must be nonnegative");
    if (f.q < 2) fail(errc::out_of_range, "q must be at least 2");
    c.result["value"] = int_str(gaussian(f.n, f.k, f.q));
}

void do_ground(const flags& f, command_ctx& c) {
    echo_ground(f, c);
    ground g = make_ground(f);
    c.result["kind"] = f.ground_kind;
    c.result["n"] = g.n;
    c.result["q"] = g.q;
    c.result["count"] = int_str(Int(g.count));
    c.result["level_sizes"] = int_array(g.level_sizes);
}

void do_la(const flags& f, command_ctx& c) {
    echo_ground(f, c);
    c.params["forbid"] = f.forbid;
    if (!f.weights.empty()) c.params["weights"] = f.weights;
    echo_search_extras(f, c);

    ground g = make_ground(f);
    property_spec t;
    t.forbidden = parse_forbid(f.forbid);
    if (f.intersecting) t.pair_filter = pair_filter_kind::intersecting;
    search_options opt = options_of(f);
    if (!f.restrict_spec.empty()) opt.restrict_to = parse_family_spec(g, f.restrict_spec);

    weight_vec w;
    if (f.weights.empty())
        w.w.assign(g.n + 1, Rat(1));
    else
        w = parse_weights(g, f.weights);

    search_result r = max_weight_family(g, t, w, opt);
    c.result["value"] = rat_str(r.value);
    c.result["proven_optimal"] = r.proven_optimal;
    c.result["nodes_explored"] = int_str(r.nodes_explored);
    c.result["witness"] = witness_json(g, r.witness.members);
    c.unproven = !r.proven_optimal;
}

void do_sigma(const flags& f, command_ctx& c, bool q_given) {
    int q = q_given ? f.q : 0;
    c.params["n"] = f.n;
    c.params["k"] = f.k;
    c.params["q"] = q;
    if (f.alt_window) c.params["alt_window"] = true;
    c.result["value"] = int_str(sigma_value(f.n, f.k, q, f.alt_window));
}

void do_count_max(const flags& f, command_ctx& c) {
    echo_ground(f, c);
    c.params["forbid"] = f.forbid;
    c.params["pattern"] = f.pattern;
    if (!f.node_cap.empty()) c.params["node_cap"] = f.node_cap;

    ground g = make_ground(f);
    copies_result r = max_copies(g, parse_forbid(f.forbid), parse_poset(f.pattern), options_of(f));
    c.result["value"] = int_str(r.value);
    c.result["proven_optimal"] = r.proven_optimal;
    c.result["nodes_explored"] = int_str(r.nodes_explored);
    c.result["witness"] = witness_json(g, r.witness.members);
    c.unproven = !r.proven_optimal;
}

void do_prop_predict(const flags& f, command_ctx& c) {
    c.params["which"] = f.which;
    c.params["n"] = f.n;
    c.params["q"] = f.q;
    c.params["r"] = f.r;
    prop_case pc;
    if (f.which == "i")
        pc = prop_case::i;
    else if (f.which == "ii")
        pc = prop_case::ii;
    else if (f.which == "iii")
        pc = prop_case::iii;
    else
        fail(errc::parse_error, "which must be i|ii|iii");
    c.result["value"] = int_str(prop_predict(pc, f.n, f.q, f.r));
}

covering_spec covering_of(const flags& f, command_ctx& c, const ground& g) {
    c.params["method"] = f.method;
    return build_covering(g, parse_method(f.method));
}

void do_covering_build(const flags& f, command_ctx& c) {
    echo_ground(f, c);
    ground g = make_ground(f);
    covering_spec cv = covering_of(f, c, g);
    c.result["method"] = method_name(cv.method);
    c.result["gamma_size"] = int_str(cv.gamma_size());
    c.result["distinct_members"] = static_cast<std::uint64_t>(cv.gamma.size());
    c.result["t"] = int_array(cv.t);
}

void do_covering_verify(const flags& f, command_ctx& c) {
    echo_ground(f, c);
    ground g = make_ground(f);
    covering_spec cv = covering_of(f, c, g);
    verify_result v = verify_covering(cv);
    c.result["ok"] = v.ok;
    if (!v.ok) {
        c.result["element"] = static_cast<std::uint64_t>(v.element);
        c.result["observed"] = int_str(v.observed);
        c.result["expected"] = int_str(v.expected);
    }
}

void do_covering_tuple_cover(const flags& f, command_ctx& c) {
    echo_ground(f, c);
    ground g = make_ground(f);
    covering_spec cv = covering_of(f, c, g);
    c.params["l"] = f.l;
    tuple_cover_result tc = chain_tuple_cover(cv, f.l);
    c.result["l"] = f.l;
    c.result["uniform"] = tc.uniform;
    ojson table = ojson::array();
    for (const auto& [tuple, count] : tc.table) {
        ojson row;
        row["tuple"] = tuple_array(tuple);
        row["count"] = int_str(count);
        table.push_back(std::move(row));
    }
    c.result["table"] = std::move(table);
}

void do_covering_bound(const flags& f, command_ctx& c) {
    echo_ground(f, c);
    ground g = make_ground(f);
    covering_spec cv = covering_of(f, c, g);
    c.params["weights"] = f.weights;
    c.params["inner_max"] = f.inner_max;
    weight_vec w = parse_weights(g, f.weights);
    lemma_bound_result b = lemma_bound(cv, w, parse_rat(f.inner_max));
    c.result["bound"] = rat_str(b.bound);
    c.result["inner_weights"] = rat_array(b.inner_weights);
}

void do_lym(const flags& f, command_ctx& c) {
    echo_ground(f, c);
    c.params["family"] = f.family_spec;
    ground g = make_ground(f);
    family fam(g);
    fam.members = parse_family_spec(g, f.family_spec);
    c.result["value"] = rat_str(lym_sum(g, fam));
}

void do_profile(const flags& f, command_ctx& c, bool l_given) {
    echo_ground(f, c);
    c.params["family"] = f.family_spec;
    ground g = make_ground(f);
    family fam(g);
    fam.members = parse_family_spec(g, f.family_spec);
    if (!l_given) {
        c.result["counts"] = int_array(profile_vec(g, fam).counts);
        return;
    }
    c.params["l"] = f.l;
    lchain_profile_t p = lchain_profile(g, fam, f.l);
    c.result["l"] = p.l;
    ojson table = ojson::array();
    for (const auto& [tuple, count] : p.counts) {
        ojson row;
        row["tuple"] = tuple_array(tuple);
        row["count"] = int_str(count);
        table.push_back(std::move(row));
    }
    c.result["table"] = std::move(table);
}

void do_extreme_scan(const flags& f, command_ctx& c) {
    echo_ground(f, c);
    c.params["forbid"] = f.forbid;
    if (f.intersecting) c.params["intersecting"] = true;
    c.params["l"] = f.l;
    c.params["directions"] = f.directions;
    c.params["seed"] = f.seed;
    if (!f.node_cap.empty()) c.params["node_cap"] = f.node_cap;

    ground g = make_ground(f);
    property_spec t;
    t.forbidden = parse_forbid(f.forbid);
    if (f.intersecting) t.pair_filter = pair_filter_kind::intersecting;
    scan_report rep = extreme_point_scan(g, t, f.l, f.directions, f.seed, options_of(f));

    c.result["l"] = rep.l;
    if (rep.k.has_value())
        c.result["k"] = *rep.k;
    else
        c.result["k"] = nullptr;
    ojson tuples = ojson::array();
    for (const auto& t2 : rep.tuples) tuples.push_back(tuple_array(t2));
    c.result["tuples"] = std::move(tuples);
    ojson entries = ojson::array();
    for (const auto& e : rep.entries) {
        ojson row;
        row["index"] = static_cast<std::uint64_t>(e.index);
        row["direction"] = rat_array(e.direction);
        row["value"] = rat_str(e.value);
        row["profile"] = int_array(e.profile.counts);
        row["is_union_of_levels"] = e.is_union_of_levels;
        row["witness_levels"] = tuple_array(e.witness_levels);
        row["proven_optimal"] = e.proven_optimal;
        ojson ids = ojson::array();
        e.witness.members.for_each_set(
            [&](std::size_t id) { ids.push_back(static_cast<std::uint64_t>(id)); });
        row["witness_ids"] = std::move(ids);
        entries.push_back(std::move(row));
        if (!e.proven_optimal) c.unproven = true;
    }
    c.result["entries"] = std::move(entries);
}

void do_canon_partition(const flags& f, command_ctx& c) {
    echo_ground(f, c);
    c.params["family"] = f.family_spec;
    c.params["k"] = f.k;
    ground g = make_ground(f);
    family fam(g);
    fam.members = parse_family_spec(g, f.family_spec);
    std::vector<bitset> parts = canonical_partition(g, fam, f.k);
    c.result["k"] = f.k;
    ojson out = ojson::array();
    for (const auto& p : parts) {
        ojson ids = ojson::array();
        p.for_each_set([&](std::size_t e) { ids.push_back(static_cast<std::uint64_t>(e)); });
        out.push_back(std::move(ids));
    }
    c.result["parts"] = std::move(out);
}

void do_e_of_poset(const flags& f, command_ctx& c) {
    c.params["pattern"] = f.pattern;
    c.params["n_max"] = f.n_max;
    e_result r = e_of_poset(parse_poset(f.pattern), f.n_max);
    c.result["m"] = r.m;
    c.result["certified_up_to"] = r.certified_up_to;
}

void do_repro(const flags& f, command_ctx& c) {
    auto results = run_acceptance(f.threads);
    bool all = true;
    ojson rows = ojson::array();
    for (const auto& r : results) {
        ojson row;
        row["index"] = r.index;
        row["name"] = r.name;
        row["pass"] = r.pass;
        row["detail"] = r.detail;
        rows.push_back(std::move(row));
        all = all && r.pass;
    }
    c.result["criteria"] = std::move(rows);
    c.result["all_pass"] = all;
    if (!all) c.exit_override = 1;
}

// ---- output formatting ----

void flatten(const ojson& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        if (j.empty() && !prefix.empty()) rows.emplace_back(prefix, "{}");
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        if (j.empty()) rows.emplace_back(prefix, "[]");
        std::size_t i = 0;
        for (const auto& v : j) flatten(v, prefix + "." + std::to_string(i++), rows);
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string render(const ojson& env, const std::string& format) {
    if (format == "json") return env.dump(2) + "\n";
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(env, "", rows);
    std::string out;
    if (format == "csv") {
        out = "key,value\n";
        for (const auto& [k, v] : rows) out += csv_escape(k) + "," + csv_escape(v) + "\n";
        return out;
    }
    // table: repro gets a pass/fail listing, everything else aligned key/value
    if (env.contains("command") && env["command"] == "repro" && env.contains("result")) {
        for (const auto& row : env["result"]["criteria"]) {
            out += row["pass"].get<bool>() ? "PASS " : "FAIL ";
            std::string idx = std::to_string(row["index"].get<int>());
            if (idx.size() < 2) idx = " " + idx;
            out += idx + " " + row["name"].get<std::string>();
            std::string detail = row["detail"].get<std::string>();
            if (!detail.empty()) out += ": " + detail;
            out += "\n";
        }
        out += env["result"]["all_pass"].get<bool>() ? "all criteria passed\n"
                                                     : "some criteria FAILED\n";
        return out;
    }
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
    return out;
}

int emit(const ojson& env, const flags& f, std::ostream& out, std::ostream& err, int code) {
    std::string text = render(env, f.format);
    if (!f.out_path.empty()) {
        std::ofstream file(f.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << f.out_path << "\n";
            return 2;
        }
        file << text;
    } else {
        out << text;
    }
    return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    flags f;
    CLI::App app{"posetlab: exact extremal-family workbench over boolean and subspace lattices"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* s) {
        s->add_option("--threads", f.threads, "worker threads (0 = hardware)");
        s->add_option("--format", f.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "table"}));
        s->add_option("--out", f.out_path, "write the output to this file");
    };
    auto add_ground = [&](CLI::App* s) {
        s->add_option("--ground", f.ground_kind, "boolean or subspace")
            ->check(CLI::IsMember({"boolean", "subspace"}));
        s->add_option("--n", f.n, "dimension")->required();
        s->add_option("--q", f.q, "field order for subspace grounds");
    };

    CLI::App* gauss = app.add_subcommand("gauss", "gaussian binomial coefficient");
    gauss->add_option("--n", f.n)->required();
    gauss->add_option("--k", f.k)->required();
    gauss->add_option("--q", f.q);
    add_common(gauss);

    CLI::App* ground_cmd = app.add_subcommand("ground", "ground lattice summary");
    add_ground(ground_cmd);
    add_common(ground_cmd);

    CLI::App* la = app.add_subcommand("la", "largest family avoiding the forbidden patterns");
    add_ground(la);
    la->add_option("--forbid", f.forbid, "comma-separated forbidden patterns");
    la->add_option("--weights", f.weights, "per-level rational weights (optional)");
    la->add_flag("--intersecting", f.intersecting, "require pairwise intersecting members");
    la->add_option("--restrict", f.restrict_spec, "search inside this family only");
    la->add_option("--node-cap", f.node_cap, "search node budget");
    add_common(la);

    CLI::App* sigma = app.add_subcommand("sigma", "sum of the k middle level sizes");
    sigma->add_option("--n", f.n)->required();
    sigma->add_option("--k", f.k)->required();
    CLI::Option* sigma_q = sigma->add_option("--q", f.q, "gaussian levels instead of binomial");
    sigma->add_flag("--alt-window", f.alt_window, "use the companion middle window");
    add_common(sigma);

    CLI::App* count_max = app.add_subcommand("count-max", "maximum copy count of a pattern");
    add_ground(count_max);
    count_max->add_option("--forbid", f.forbid, "comma-separated forbidden patterns");
    count_max->add_option("--pattern", f.pattern, "pattern whose copies are counted")->required();
    count_max->add_option("--node-cap", f.node_cap, "search node budget");
    add_common(count_max);

    CLI::App* prop = app.add_subcommand("prop-predict", "closed-form maximum copy counts");
    prop->add_option("--which", f.which, "case i, ii, or iii")->required();
    prop->add_option("--n", f.n)->required();
    prop->add_option("--q", f.q)->required();
    prop->add_option("--r", f.r)->required();
    add_common(prop);

    CLI::App* covering = app.add_subcommand("covering", "uniform covering machinery");
    covering->require_subcommand(1);
    CLI::App* cov_build = covering->add_subcommand("build", "construct a covering");
    CLI::App* cov_verify = covering->add_subcommand("verify", "recount a covering");
    CLI::App* cov_tuples = covering->add_subcommand("tuple-cover", "chain counts per level tuple");
    CLI::App* cov_bound = covering->add_subcommand("bound", "weight bound from an inner maximum");
    for (CLI::App* s : {cov_build, cov_verify, cov_tuples, cov_bound}) {
        add_ground(s);
        s->add_option("--method", f.method, "chains|cycle|boolean-sublattices")->required();
        add_common(s);
    }
    cov_tuples->add_option("--l", f.l, "chain length")->required();
    cov_bound->add_option("--weights", f.weights, "per-level rational weights")->required();
    cov_bound->add_option("--inner-max", f.inner_max, "inner maximum x")->required();

    CLI::App* lym = app.add_subcommand("lym", "normalized level-count sum of a family");
    add_ground(lym);
    lym->add_option("--family", f.family_spec, "all|empty|levels:i,j|members:a,b");
    add_common(lym);

    CLI::App* profile = app.add_subcommand("profile", "profile vector of a family");
    add_ground(profile);
    profile->add_option("--family", f.family_spec, "all|empty|levels:i,j|members:a,b");
    CLI::Option* profile_l = profile->add_option("--l", f.l, "chain-profile length instead");
    add_common(profile);

    CLI::App* scan = app.add_subcommand("extreme-scan", "maximize linear functionals of profiles");
    add_ground(scan);
    scan->add_option("--forbid", f.forbid, "comma-separated forbidden patterns");
    scan->add_flag("--intersecting", f.intersecting, "require pairwise intersecting members");
    scan->add_option("--l", f.l, "profile tuple length");
    scan->add_option("--directions", f.directions, "number of directions");
    scan->add_option("--seed", f.seed, "seed for the random directions");
    scan->add_option("--node-cap", f.node_cap, "search node budget");
    add_common(scan);

    CLI::App* canon = app.add_subcommand("canon-partition", "split a family into k antichains");
    add_ground(canon);
    canon->add_option("--family", f.family_spec, "all|empty|levels:i,j|members:a,b");
    canon->add_option("--k", f.k, "number of antichains")->required();
    add_common(canon);

    CLI::App* eop = app.add_subcommand("e-of-poset", "widest pattern-free window of levels");
    eop->add_option("--pattern", f.pattern, "pattern poset")->required();
    eop->add_option("--n-max", f.n_max, "certify windows in dimensions up to this");
    add_common(eop);

    CLI::App* repro = app.add_subcommand("repro", "run the full acceptance suite");
    add_common(repro);

    std::vector<const char*> argv;
    argv.push_back("posetlab");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        ojson env;
        env["command"] = args.empty() ? "" : args[0];
        ojson er;
        er["kind"] = "UsageError";
        er["message"] = e.what();
        env["error"] = std::move(er);
        err << "error: " << e.what() << "\n";
        return emit(env, f, out, err, 2);
    }

    struct dispatch_row {
        CLI::App* sub;
        const char* name;
        std::function<void(command_ctx&)> fn;
    };
    const dispatch_row table[] = {
        {gauss, "gauss", [&](command_ctx& c) { do_gauss(f, c); }},
        {ground_cmd, "ground", [&](command_ctx& c) { do_ground(f, c); }},
        {la, "la", [&](command_ctx& c) { do_la(f, c); }},
        {sigma, "sigma", [&](command_ctx& c) { do_sigma(f, c, sigma_q->count() > 0); }},
        {count_max, "count-max", [&](command_ctx& c) { do_count_max(f, c); }},
        {prop, "prop-predict", [&](command_ctx& c) { do_prop_predict(f, c); }},
        {cov_build, "covering build", [&](command_ctx& c) { do_covering_build(f, c); }},
        {cov_verify, "covering verify", [&](command_ctx& c) { do_covering_verify(f, c); }},
        {cov_tuples, "covering tuple-cover", [&](command_ctx& c) { do_covering_tuple_cover(f, c); }},
        {cov_bound, "covering bound", [&](command_ctx& c) { do_covering_bound(f, c); }},
        {lym, "lym", [&](command_ctx& c) { do_lym(f, c); }},
        {profile, "profile", [&](command_ctx& c) { do_profile(f, c, profile_l->count() > 0); }},
        {scan, "extreme-scan", [&](command_ctx& c) { do_extreme_scan(f, c); }},
        {canon, "canon-partition", [&](command_ctx& c) { do_canon_partition(f, c); }},
        {eop, "e-of-poset", [&](command_ctx& c) { do_e_of_poset(f, c); }},
        {repro, "repro", [&](command_ctx& c) { do_repro(f, c); }},
    };

    const dispatch_row* active = nullptr;
    for (const auto& row : table)
        if (row.sub->parsed()) active = &row;
    if (!active) {
        err << "error: no subcommand\n";
        return 2;
    }

    command_ctx ctx;
    try {
        auto t0 = std::chrono::steady_clock::now();
        active->fn(ctx);
        auto t1 = std::chrono::steady_clock::now();
        ojson env;
        env["command"] = active->name;
        env["parameters"] = std::move(ctx.params);
        env["result"] = std::move(ctx.result);
        env["timing_ms"] = static_cast<std::int64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
        int code = ctx.exit_override >= 0 ? ctx.exit_override : (ctx.unproven ? 4 : 0);
        return emit(env, f, out, err, code);
    } catch (const wb_error& e) {
        ojson env;
        env["command"] = active->name;
        ojson er;
        er["kind"] = errc_name(e.code());
        std::string msg = e.what();
        std::string prefix = std::string(errc_name(e.code())) + ": ";
        if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
        er["message"] = msg;
        if (!e.witness().empty()) {
            ojson w = ojson::array();
            for (int id : e.witness()) w.push_back(id);
            er["witness"] = std::move(w);
        }
        env["error"] = std::move(er);
        err << "error: " << e.what() << "\n";
        return emit(env, f, out, err, e.code() == errc::too_large ? 3 : 2);
    }
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace posetlab
