#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "posetlab/cli.hpp"

using namespace posetlab;
using ojson = nlohmann::ordered_json;

namespace {

struct cli_run {
    int code = 0;
    std::string out;
    std::string err;
};

cli_run run(std::initializer_list<const char*> args) {
    std::ostringstream out, err;
    std::vector<std::string> v;
    for (const char* a : args) v.emplace_back(a);
    cli_run r;
    r.code = run_cli(v, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

ojson payload(const cli_run& r) { return ojson::parse(r.out); }

std::string sans_timing(ojson env) {
    env.erase("timing_ms");
    return env.dump();
}

void flatten(const ojson& j, const std::string& prefix,
             std::map<std::string, std::string>& rows) {
    if (j.is_object()) {
        if (j.empty() && !prefix.empty()) rows[prefix] = "{}";
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        if (j.empty()) rows[prefix] = "[]";
        std::size_t i = 0;
        for (const auto& v : j) flatten(v, prefix + "." + std::to_string(i++), rows);
    } else if (j.is_string()) {
        rows[prefix] = j.get<std::string>();
    } else {
        rows[prefix] = j.dump();
    }
}

std::map<std::string, std::string> parse_csv(const std::string& text) {
    std::map<std::string, std::string> rows;
    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    REQUIRE(line == "key,value");
    while (std::getline(in, line)) {
        auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        std::string key = line.substr(0, comma);
        std::string raw = line.substr(comma + 1);
        std::string value;
        if (!raw.empty() && raw.front() == '"') {
            for (std::size_t i = 1; i < raw.size(); ++i) {
                if (raw[i] == '"') {
                    if (i + 1 < raw.size() && raw[i + 1] == '"') {
                        value += '"';
                        ++i;
                    }
                } else {
                    value += raw[i];
                }
            }
        } else {
            value = raw;
        }
        rows[key] = value;
    }
    return rows;
}

// Minimal checker for the committed schema: supports the keywords the schema
// actually uses ($ref into definitions, oneOf, enum, type, required,
// properties, additionalProperties, items, pattern, minimum).
struct schema_checker {
    const ojson& root;

    bool type_matches(const std::string& t, const ojson& v) const {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "boolean") return v.is_boolean();
        if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
        if (t == "number") return v.is_number();
        if (t == "null") return v.is_null();
        return false;
    }

    bool check(const ojson& schema, const ojson& v) const {
        if (schema.contains("$ref")) {
            std::string ref = schema["$ref"].get<std::string>();
            REQUIRE(ref.rfind("#/definitions/", 0) == 0);
            return check(root["definitions"][ref.substr(14)], v);
        }
        if (schema.contains("oneOf")) {
            int hits = 0;
            for (const auto& sub : schema["oneOf"])
                if (check(sub, v)) ++hits;
            return hits == 1;
        }
        if (schema.contains("enum")) {
            for (const auto& e : schema["enum"])
                if (e == v) return true;
            return false;
        }
        if (schema.contains("type")) {
            const auto& t = schema["type"];
            if (t.is_string()) {
                if (!type_matches(t.get<std::string>(), v)) return false;
            } else {
                bool any = false;
                for (const auto& alt : t) any = any || type_matches(alt.get<std::string>(), v);
                if (!any) return false;
            }
        }
        if (v.is_object()) {
            if (schema.contains("required"))
                for (const auto& k : schema["required"])
                    if (!v.contains(k.get<std::string>())) return false;
            const ojson* props = schema.contains("properties") ? &schema["properties"] : nullptr;
            for (const auto& [k, sub] : v.items()) {
                if (props && props->contains(k)) {
                    if (!check((*props)[k], sub)) return false;
                } else if (schema.contains("additionalProperties")) {
                    const auto& ap = schema["additionalProperties"];
                    if (ap.is_boolean()) {
                        if (!ap.get<bool>()) return false;
                    } else if (!check(ap, sub)) {
                        return false;
                    }
                }
            }
        }
        if (v.is_array() && schema.contains("items"))
            for (const auto& item : v)
                if (!check(schema["items"], item)) return false;
        if (v.is_string() && schema.contains("pattern")) {
            std::regex re(schema["pattern"].get<std::string>());
            if (!std::regex_match(v.get<std::string>(), re)) return false;
        }
        if ((v.is_number_integer() || v.is_number_unsigned()) && schema.contains("minimum"))
            if (v.get<long long>() < schema["minimum"].get<long long>()) return false;
        return true;
    }
};

ojson load_schema() {
    std::ifstream in(POSETLAB_SCHEMA_PATH);
    REQUIRE(in.good());
    return ojson::parse(in);
}

}  // namespace

TEST_CASE("documented examples") {
    cli_run g = run({"gauss", "--n", "4", "--k", "2", "--q", "2"});
    CHECK(g.code == 0);
    ojson gj = payload(g);
    CHECK(gj["command"] == "gauss");
    CHECK(gj["result"]["value"] == "35");

    cli_run la = run({"la", "--ground", "boolean", "--n", "4", "--forbid", "butterfly"});
    CHECK(la.code == 0);
    ojson lj = payload(la);
    CHECK(lj["result"]["value"] == "10");
    CHECK(lj["result"]["proven_optimal"] == true);
    CHECK(lj["result"]["witness"]["size"] == "10");

    cli_run bad = run({"la", "--n", "3", "--forbid", "broom:nope"});
    CHECK(bad.code == 2);
    ojson bj = payload(bad);
    CHECK(bj["error"]["kind"] == "ParseError");
    CHECK(bad.err.find("broom:nope") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"gauss", "--n", "4"}).code == 2);          // missing required --k
    CHECK(run({"gauss", "--n", "4", "--k", "2", "--zap", "1"}).code == 2);
    CHECK(run({"la", "--n", "3", "--format", "yaml"}).code == 2);
    ojson e = payload(run({"gauss", "--n", "4", "--zap", "1"}));
    CHECK(e["error"]["kind"] == "UsageError");
}

TEST_CASE("size caps exit 3") {
    cli_run big = run({"ground", "--ground", "boolean", "--n", "17"});
    CHECK(big.code == 3);
    CHECK(payload(big)["error"]["kind"] == "TooLarge");
    CHECK(run({"ground", "--ground", "subspace", "--n", "9", "--q", "3"}).code == 3);
}

TEST_CASE("node cap exits 4 with the result still printed") {
    cli_run r = run({"la", "--ground", "boolean", "--n", "4", "--forbid", "butterfly",
                     "--node-cap", "10"});
    CHECK(r.code == 4);
    ojson j = payload(r);
    CHECK(j["result"]["proven_optimal"] == false);
    CHECK(j["result"]["value"] == "10");  // seeded floor already optimal here
}

TEST_CASE("byte-identical json across thread counts") {
    const char* base[] = {"la", "--ground", "subspace", "--n", "3", "--q", "2",
                          "--forbid", "butterfly"};
    cli_run one = run({base[0], base[1], base[2], base[3], base[4], base[5], base[6], base[7],
                       base[8], "--threads", "1"});
    cli_run four = run({base[0], base[1], base[2], base[3], base[4], base[5], base[6], base[7],
                        base[8], "--threads", "4"});
    CHECK(one.code == 0);
    CHECK(four.code == 0);
    CHECK(sans_timing(payload(one)) == sans_timing(payload(four)));

    cli_run s1 = run({"extreme-scan", "--ground", "boolean", "--n", "3", "--forbid", "chain:2",
                      "--l", "1", "--directions", "12", "--seed", "9", "--threads", "1"});
    cli_run s4 = run({"extreme-scan", "--ground", "boolean", "--n", "3", "--forbid", "chain:2",
                      "--l", "1", "--directions", "12", "--seed", "9", "--threads", "4"});
    CHECK(sans_timing(payload(s1)) == sans_timing(payload(s4)));
}

TEST_CASE("csv rows match the flattened json") {
    auto args_json = {"la", "--n", "3", "--forbid", "vee"};
    auto args_csv = {"la", "--n", "3", "--forbid", "vee", "--format", "csv"};
    std::map<std::string, std::string> want;
    flatten(payload(run(args_json)), "", want);
    auto got = parse_csv(run(args_csv).out);
    want.erase("timing_ms");
    got.erase("timing_ms");
    CHECK(want == got);

    auto tup_json = {"covering", "tuple-cover", "--ground", "subspace", "--n", "3", "--q", "2",
                     "--method", "boolean-sublattices", "--l", "2"};
    auto tup_csv = {"covering", "tuple-cover", "--ground", "subspace", "--n", "3", "--q", "2",
                    "--method", "boolean-sublattices", "--l", "2", "--format", "csv"};
    want.clear();
    flatten(payload(run(tup_json)), "", want);
    got = parse_csv(run(tup_csv).out);
    want.erase("timing_ms");
    got.erase("timing_ms");
    CHECK(want == got);
}

TEST_CASE("every command output validates against the schema") {
    ojson schema = load_schema();
    schema_checker checker{schema};
    auto validate = [&](cli_run r) {
        ojson j = payload(r);
        bool ok = checker.check(schema, j);
        if (!ok) MESSAGE(j.dump(2));
        CHECK(ok);
    };
    validate(run({"gauss", "--n", "5", "--k", "2", "--q", "3"}));
    validate(run({"ground", "--ground", "boolean", "--n", "4"}));
    validate(run({"ground", "--ground", "subspace", "--n", "3", "--q", "2"}));
    validate(run({"la", "--n", "3", "--forbid", "butterfly,chain:4"}));
    validate(run({"la", "--ground", "subspace", "--n", "4", "--q", "2", "--intersecting",
                  "--restrict", "levels:2"}));
    validate(run({"la", "--n", "3", "--forbid", "chain:2", "--weights", "0,1/2,2,0"}));
    validate(run({"sigma", "--n", "4", "--k", "2", "--alt-window"}));
    validate(run({"count-max", "--ground", "subspace", "--n", "2", "--q", "2", "--forbid",
                  "vee", "--pattern", "broom:2"}));
    validate(run({"prop-predict", "--which", "iii", "--n", "2", "--q", "2", "--r", "3"}));
    validate(run({"covering", "build", "--ground", "boolean", "--n", "3", "--method", "chains"}));
    validate(run({"covering", "build", "--ground", "boolean", "--n", "4", "--method", "cycle"}));
    validate(run({"covering", "verify", "--ground", "subspace", "--n", "2", "--q", "3",
                  "--method", "boolean-sublattices"}));
    validate(run({"covering", "tuple-cover", "--ground", "boolean", "--n", "3", "--method",
                  "chains", "--l", "2"}));
    validate(run({"covering", "bound", "--ground", "boolean", "--n", "3", "--method", "chains",
                  "--weights", "6,2,2,6", "--inner-max", "1"}));
    validate(run({"lym", "--n", "4", "--family", "levels:2"}));
    validate(run({"profile", "--n", "3", "--family", "members:1,2,7"}));
    validate(run({"profile", "--n", "3", "--family", "all", "--l", "3"}));
    validate(run({"extreme-scan", "--ground", "subspace", "--n", "2", "--q", "2", "--forbid",
                  "chain:3", "--l", "2", "--directions", "8", "--seed", "3"}));
    validate(run({"canon-partition", "--n", "2", "--family", "all", "--k", "3"}));
    validate(run({"e-of-poset", "--pattern", "diamond:2", "--n-max", "4"}));
    // error payloads
    validate(run({"la", "--n", "3", "--forbid", "broom:nope"}));
    validate(run({"ground", "--ground", "boolean", "--n", "17"}));
    validate(run({"canon-partition", "--n", "2", "--family", "members:0,1,3", "--k", "1"}));
    validate(run({"gauss", "--n", "4", "--zap", "1"}));
}

TEST_CASE("repro runs the acceptance suite") {
    cli_run r = run({"repro"});
    CHECK(r.code == 0);
    ojson j = payload(r);
    CHECK(j["result"]["criteria"].size() == 12);
    CHECK(j["result"]["all_pass"] == true);
    for (const auto& row : j["result"]["criteria"]) CHECK(row["pass"] == true);

    ojson schema = load_schema();
    CHECK(schema_checker{schema}.check(schema, j));

    cli_run t = run({"repro", "--format", "table"});
    CHECK(t.code == 0);
    CHECK(t.out.find("PASS  1") != std::string::npos);
    CHECK(t.out.find("all criteria passed") != std::string::npos);
    CHECK(t.out.find("FAIL") == std::string::npos);
}

TEST_CASE("out flag writes the payload to a file") {
    auto path = std::filesystem::temp_directory_path() / "posetlab_cli_out_test.json";
    std::filesystem::remove(path);
    cli_run r = run({"gauss", "--n", "6", "--k", "3", "--q", "2", "--out", path.string().c_str()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    ojson j = ojson::parse(in);
    CHECK(j["result"]["value"] == "1395");
    std::filesystem::remove(path);
}

TEST_CASE("family spec errors") {
    cli_run high = run({"lym", "--n", "3", "--family", "levels:9"});
    CHECK(high.code == 2);
    CHECK(payload(high)["error"]["kind"] == "OutOfRange");
    cli_run junk = run({"lym", "--n", "3", "--family", "oops"});
    CHECK(junk.code == 2);
    CHECK(payload(junk)["error"]["kind"] == "ParseError");
    cli_run member = run({"profile", "--n", "2", "--family", "members:77"});
    CHECK(member.code == 2);
    CHECK(payload(member)["error"]["kind"] == "OutOfRange");
}

TEST_CASE("seed changes scan directions deterministically") {
    auto scan = [&](const char* seed) {
        return sans_timing(payload(run({"extreme-scan", "--ground", "boolean", "--n", "3",
                                        "--forbid", "chain:2", "--l", "1", "--directions", "9",
                                        "--seed", seed})));
    };
    std::string a1 = scan("11"), a2 = scan("11"), b = scan("12");
    CHECK(a1 == a2);
    CHECK(a1 != b);
}
