#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "banach/banach_nat.hpp"
#include "banach/corpus.hpp"
#include "banach/metric.hpp"
#include "banach/omniscience.hpp"
#include "banach/ranges.hpp"
#include "banach/streams.hpp"

namespace banach::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr nat kDefaultFuel = 256;

struct Opts {
    std::string format = "text";
    nat fuel = kDefaultFuel;
    std::optional<nat> depth, level, cache_limit;
    std::uint64_t seed = 1;

    std::string kind, action, name, suite;
    std::string seq, f, aux, b, chi, g, w, pair, space, x, code;
    std::string aux_kind = "rho";
    nat n = 16, pad = 4, width = 10, cases = 100;
    bool promise = false;
};

struct Report {
    std::string op;
    json input = json::object();
    json output = json::object();
    std::optional<nat> fuel, depth, level;
    json violations = json::array();
    std::ostringstream text;
    int code = kOk;
};

json opt_num(const std::optional<nat>& v) { return v ? json(*v) : json(nullptr); }

std::string seq_grammar() { return "sequence name (id, sq, even, mul:K, add:K, const:K, ind:a,b,...) or literal v0,...,vk;t"; }

nat parse_nat(const std::string& text, std::size_t offset, const std::string& whole) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(offset, "unsigned decimal", whole);
    return std::stoull(text);
}

LazySeq named_seq(const std::string& s) {
    if (s == "id") return identity_seq();
    if (s == "sq") return LazySeq([](nat n) { return n * n; });
    if (s == "even") return LazySeq([](nat n) -> nat { return n % 2 == 0 ? 1 : 0; });
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        std::string head = s.substr(0, colon), arg = s.substr(colon + 1);
        if (head == "mul") {
            nat k = parse_nat(arg, colon + 1, s);
            return LazySeq([k](nat n) { return n * k; });
        }
        if (head == "add") {
            nat k = parse_nat(arg, colon + 1, s);
            return LazySeq([k](nat n) { return n + k; });
        }
        if (head == "const") return constant_seq(parse_nat(arg, colon + 1, s));
        if (head == "ind") {
            std::vector<nat> members;
            std::size_t start = 0;
            while (true) {
                auto comma = arg.find(',', start);
                members.push_back(parse_nat(arg.substr(start, comma - start), colon + 1 + start, s));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
            return LazySeq([members](nat n) -> nat {
                return std::find(members.begin(), members.end(), n) != members.end() ? 1 : 0;
            });
        }
        throw ParseError(0, seq_grammar(), s);
    }
    if (s.find(';') != std::string::npos) return parse_seq(s).seq();
    throw ParseError(0, seq_grammar(), s);
}

// Cantor literals: the sequence grammar, repeat:BITS, or sigma:N.
Point cantor_literal(const std::string& s) {
    if (s.rfind("sigma:", 0) == 0) return sigma_seq(parse_nat(s.substr(6), 6, s));
    if (s.rfind("repeat:", 0) == 0) {
        std::string pat = s.substr(7);
        if (pat.empty() || pat.find_first_not_of("01") != std::string::npos)
            throw ParseError(7, "nonempty bit pattern", s);
        return cantor_point(LazySeq([pat](nat n) -> nat { return pat[n % pat.size()] - '0'; }), s);
    }
    UltimatelyConstantSeq u = parse_seq(s);
    if (u.tail > 1) throw ParseError(s.size() - 1, "tail bit 0 or 1", s);
    for (nat v : u.prefix)
        if (v > 1) throw ParseError(0, "bits 0 or 1", s);
    if (u.tail == 0) {
        Bits b(u.prefix.begin(), u.prefix.end());
        return cantor_point(b);
    }
    return cantor_point(u.seq(), s);
}

Point point_literal(const CompactSpace& x, const std::string& s) {
    if (x.name() == "interval") return interval_point(Dyadic::parse(s.empty() ? "0" : s));
    return cantor_literal(s.empty() ? "0;0" : s);
}

json oracle_json(const OracleResult& r) {
    json j;
    j["result"] = r.str();
    j["found"] = r.is_found();
    j[r.is_found() ? "value" : "bound"] = r.raw();
    return j;
}

int oracle_code(const OracleResult& r) { return r.is_found() ? kOk : kExhausted; }

// ---- subcommands ----------------------------------------------------------

void cmd_oracle(const Opts& o, Report& rep) {
    rep.op = "oracle " + o.kind;
    rep.input["seq"] = o.seq;
    rep.input["promise"] = o.promise;
    rep.fuel = o.fuel;
    LazySeq s = named_seq(o.seq);
    Fuel fuel(o.fuel);
    OracleResult r = o.kind == "lpo"  ? lpo(s, fuel, o.promise)
                     : o.kind == "mu0" ? mu0(s, fuel)
                     : o.kind == "mu"  ? mu(s, fuel)
                                       : llpomin(s, fuel);
    rep.output = oracle_json(r);
    rep.text << r.str() << '\n';
    rep.code = oracle_code(r);
}

void cmd_range(const Opts& o, Report& rep) {
    rep.op = "range " + o.action;
    rep.fuel = o.fuel;
    Fuel fuel(o.fuel);
    rep.input["f"] = o.f;
    LazySeq f = named_seq(o.f);
    if (o.action == "verify" || o.action == "beta-to-rho" || o.action == "rho-to-beta" || o.action == "bound")
        rep.input["n"] = o.n;
    if (o.action == "verify") {
        rep.input["aux"] = o.aux;
        rep.input["kind"] = o.aux_kind;
        AuxKind k = o.aux_kind == "rho" ? AuxKind::rho : AuxKind::beta;
        RangeAuxReport r = verify_range_aux(f, named_seq(o.aux), k, o.n, fuel);
        for (const auto& v : r.violations) {
            rep.violations.push_back({{"index", v.index}, {"kind", to_string(v.kind)}});
            rep.text << "violation " << to_string(v.kind) << " at " << v.index << '\n';
        }
        rep.output["checked_up_to"] = r.checked_up_to;
        rep.output["ok"] = r.ok();
        rep.text << (r.ok() ? "ok" : "violations found") << " (checked 0.." << r.checked_up_to << ")\n";
        rep.code = r.ok() ? kOk : kVerifyFailed;
    } else if (o.action == "beta-to-rho") {
        rep.input["b"] = o.b;
        LazySeq chi = t_beta_to_rho(f, named_seq(o.b));
        json vals = json::array();
        for (nat n = 0; n <= o.n; ++n) vals.push_back(chi(n));
        rep.output["chi"] = vals;
        rep.text << "chi:";
        for (auto& v : vals) rep.text << ' ' << v.get<nat>();
        rep.text << '\n';
    } else if (o.action == "rho-to-beta" || o.action == "bound") {
        OracleSeq res = o.action == "bound" ? bounding_b(f, fuel) : t_rho_to_beta(f, named_seq(o.chi), fuel);
        if (o.action == "rho-to-beta") rep.input["chi"] = o.chi;
        json vals = json::array();
        bool exhausted = false;
        rep.text << (o.action == "bound" ? "b:" : "beta:");
        for (nat n = 0; n <= o.n; ++n) {
            OracleResult r = res(n);
            exhausted = exhausted || r.is_exhausted();
            vals.push_back(r.str());
            rep.text << ' ' << r.str();
        }
        rep.text << '\n';
        rep.output["values"] = vals;
        rep.code = exhausted ? kExhausted : kOk;
    } else {  // refute
        rep.input["pad"] = o.pad;
        nat fb = o.fuel;
        Translator exact = [fb](const LazySeq& ff, const LazySeq& chi) {
            OracleSeq r = t_rho_to_beta(ff, chi, Fuel(fb));
            return LazySeq([r](nat n) { return r(n).is_found() ? r(n).value() : 0; });
        };
        TranslatorCounterexample cx = refute_total_translator(exact, o.pad);
        rep.output["b"] = cx.b;
        rep.output["failure_index"] = cx.failure_index;
        rep.output["first_zero"] = cx.first_zero;
        rep.output["f2_prefix"] = prefix(cx.f2, cx.first_zero + 2);
        rep.text << "translator answered " << cx.b << " at index " << cx.failure_index << "; f2 has its first zero at "
                 << cx.first_zero << ", beyond the answer\n";
    }
}

Realizer pick_reduction(const std::string& name, bool promise) {
    if (name == "llpo-from-llpomin") return llpo_from_llpomin(llpomin_exact(0));
    if (name == "llpomin-from-llpo") return llpomin_from_llpo(llpo_exact(0));
    if (name == "llpomin-from-lpo") return llpo_from_lpo(lpo_exact(promise));
    if (name == "llpo-via-lpo") return llpo_from_llpomin(llpo_from_lpo(lpo_exact(promise)));
    return llpomin_exact();
}

void cmd_reduce(const Opts& o, Report& rep) {
    rep.op = "reduce " + o.name;
    rep.input["seq"] = o.seq;
    rep.input["promise"] = o.promise;
    LazySeq s = named_seq(o.seq);
    if (o.name == "via-wkl") {
        nat depth = o.depth.value_or(o.fuel);
        rep.depth = depth;
        nat bit = llpomin_via_wkl(s, depth);
        rep.output["bit"] = bit;
        rep.text << bit << '\n';
        return;
    }
    rep.fuel = o.fuel;
    Fuel fuel(o.fuel);
    OracleResult r = o.name == "grilliot" ? grilliot_lpo(llpomin_exact(0), s, fuel, o.promise)
                                          : pick_reduction(o.name, o.promise)(s, fuel);
    rep.output = oracle_json(r);
    rep.text << r.str() << '\n';
    rep.code = oracle_code(r);
}

BoundedInjPair pick_pair(const Opts& o, json& input) {
    input["pair"] = o.pair;
    if (o.pair == "identity") return identity_pair();
    if (o.pair == "succ") return succ_pair();
    input["g"] = o.g;
    return gadget_llpo(named_seq(o.g));
}

void bijection_report(const BoundedInjPair& p, const PartialBijection& h, nat n, Report& rep) {
    json triples = json::array();
    for (const auto& [m, e] : h.forward) triples.push_back({m, e.value, to_string(e.tag)});
    rep.output["bijection"] = triples;
    BanachReport vr = verify_banach(p, h, n);
    for (const auto& v : vr.violations) {
        rep.violations.push_back({{"kind", v.kind}, {"m", v.m}, {"n", v.n}});
        rep.text << "violation " << v.kind << " at (" << v.m << "," << v.n << ")\n";
    }
    rep.output["verified"] = vr.ok();
    if (!vr.ok()) rep.code = kVerifyFailed;
}

void cmd_banach_nat(const Opts& o, Report& rep) {
    rep.op = "banach-nat";
    BoundedInjPair p = pick_pair(o, rep.input);
    rep.input["n"] = o.n;
    nat depth = o.depth.value_or(4 * o.n);
    rep.depth = depth;
    PartialBijection h = banach_bijection_nat(p, o.n, depth);
    for (const auto& [m, e] : h.forward) rep.text << m << " -> " << e.value << "  " << to_string(e.tag) << '\n';
    bijection_report(p, h, o.n, rep);
}

void cmd_gadget(const Opts& o, Report& rep) {
    rep.op = "gadget";
    rep.input["g"] = o.g;
    rep.input["n"] = o.n;
    BoundedInjPair p = gadget_llpo(named_seq(o.g));
    nat depth = o.depth.value_or(4 * o.n);
    rep.depth = depth;
    PartialBijection h = banach_bijection_nat(p, o.n, depth);
    const BijEntry& e = h.forward.at(1);
    rep.output["h1"] = e.value;
    rep.output["tag"] = to_string(e.tag);
    rep.output["f0"] = prefix(p.f0, 12);
    rep.output["f1"] = prefix(p.f1, 12);
    rep.text << "h(1) = " << e.value << " (" << to_string(e.tag) << ")\n";
    bijection_report(p, h, o.n, rep);
}

void cmd_diagram(const Opts& o, Report& rep) {
    rep.op = "diagram";
    BoundedInjPair p = pick_pair(o, rep.input);
    rep.input["width"] = o.width;
    std::string d = render_chain_diagram(p, o.width);
    rep.output["diagram"] = d;
    rep.text << d;
}

UCFun pick_fun(const Opts& o, json& input) {
    input["pair"] = o.pair;
    if (o.pair == "halving") return halving();
    if (o.pair == "padding") return padding();
    input["w"] = o.w;
    return preimage_gadget(named_seq(o.w));
}

void cmd_metric(const Opts& o, Report& rep) {
    rep.op = "metric " + o.action;
    rep.input["space"] = o.space;
    nat level = o.level.value_or(8);
    rep.level = level;
    UCFun f = pick_fun(o, rep.input);
    if ((o.pair == "halving") != (o.space == "interval"))
        throw Error("space-mismatch", "pair " + o.pair + " does not act on " + o.space);
    auto x = o.space == "interval" ? unit_interval(4 * level + 16) : cantor_space(4 * level + 16);
    if (o.action == "modulus") {
        LazySeq m = modulus_of(*x, f, level);
        json vals = json::array();
        rep.text << "M:";
        for (nat k = 0; k <= level; ++k) {
            try {
                vals.push_back(m(k));
                rep.text << ' ' << m(k);
            } catch (const Error& e) {
                if (e.kind() != "no-valid-n") throw;
                break;
            }
        }
        rep.text << '\n';
        rep.output["modulus"] = vals;
        return;
    }
    rep.input["x"] = o.x;
    Point pt = point_literal(*x, o.x);
    if (o.action == "range") {
        RangeAnswer a = range_char(*x, f, pt, level);
        rep.output["answer"] = a.definitely_out ? "DefinitelyOut" : "InRangeUpTo";
        rep.output["m"] = a.level;
        rep.text << (a.definitely_out ? "DefinitelyOut(" : "InRangeUpTo(") << a.level << ")\n";
    } else if (o.action == "preimage") {
        Point p = preimage_select(*x, f, pt, level);
        json approx = json::array();
        for (nat m = 0; m <= level; ++m) approx.push_back(x->format(p.approx(m)));
        rep.output["approx"] = approx;
        rep.text << "p_" << level << " = " << x->format(p.approx(level)) << '\n';
    } else {  // banach-h
        rep.fuel = o.fuel;
        BanachHResult h = banach_H(*x, f, f, pt, level, Fuel(o.fuel));
        rep.output["value"] = x->format(h.resolved);
        rep.output["tag"] = to_string(h.tag);
        rep.output["stage"] = h.stage;
        rep.output["exact"] = h.value.exact().has_value();
        rep.text << "H(x) = " << x->format(h.resolved) << "  " << to_string(h.tag) << "  stage " << h.stage << '\n';
    }
}

std::vector<Quintuple> builtin_code(const CompactSpace& x, const std::string& name, nat levels) {
    std::vector<Quintuple> phi;
    for (nat n = 0; n <= levels; ++n) {
        nat lv = name == "identity" ? n + 2 : n;
        BigInt cnt = x.count(lv);
        for (BigInt i = 0; i < cnt; ++i) {
            NetPoint a{lv, i};
            if (name == "identity")
                phi.push_back({n, a, Dyadic::pow2neg(n + 2), a, Dyadic::pow2neg(n + 1)});
            else
                phi.push_back({n, a, Dyadic(1), NetPoint{0, 1}, Dyadic::pow2neg(n)});
        }
    }
    return phi;
}

void cmd_decode(const Opts& o, Report& rep) {
    rep.op = "decode";
    rep.input["code"] = o.code;
    rep.input["space"] = o.space;
    rep.input["x"] = o.x;
    nat level = o.level.value_or(4);
    rep.level = level;
    auto x = o.space == "interval" ? unit_interval(64) : cantor_space(64);
    Point pt = point_literal(*x, o.x.empty() ? (o.space == "interval" ? "1/2^1" : "1;0") : o.x);
    if (!pt.exact()) throw Error("not-a-net-point", "decode expects a net point");
    nat depth = o.depth.value_or(6);
    rep.depth = depth;
    std::vector<Quintuple> phi = builtin_code(*x, o.code, depth);
    for (const auto& v : check_code(*x, phi)) rep.violations.push_back({{"first", v.first}, {"second", v.second}});
    NetPoint b = decoded_value(*x, phi, *pt.exact(), level);
    rep.output["value"] = x->format(b);
    rep.output["consistent"] = rep.violations.empty();
    rep.text << "f(x)(" << level << ") = " << x->format(b) << '\n';
    if (!rep.violations.empty()) rep.code = kVerifyFailed;
}

void cmd_corpus(const Opts& o, Report& rep) {
    rep.op = "corpus " + o.suite;
    rep.input["seed"] = o.seed;
    rep.input["cases"] = o.cases;
    SuiteResult r = run_suite(o.suite, o.seed, o.cases);
    rep.output["cases"] = r.cases;
    rep.output["failures"] = r.failures;
    for (const auto& n : r.notes) rep.violations.push_back(n);
    rep.text << r.name << ": " << r.cases - std::min(r.cases, r.failures) << "/" << r.cases << " cases clean, "
             << r.failures << " failures\n";
    for (const auto& n : r.notes) rep.text << "  " << n << '\n';
    rep.code = r.ok() ? kOk : kVerifyFailed;
}

void emit(const Opts& o, Report& rep, std::ostream& out, long long elapsed) {
    if (o.format == "json") {
        json j;
        j["op"] = rep.op;
        j["input"] = rep.input;
        j["output"] = rep.output;
        j["fuel"] = opt_num(rep.fuel);
        j["depth"] = opt_num(rep.depth);
        j["level"] = opt_num(rep.level);
        j["violations"] = rep.violations;
        j["elapsed_ms"] = elapsed;
        out << j.dump(2) << '\n';
    } else {
        out << rep.text.str();
    }
}

int error_code(const Error& e) {
    if (e.kind() == "parse-error") return kParseError;
    if (e.kind() == "exhausted" || e.kind() == "construction-stalled") return kExhausted;
    return kVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Opts o;
    if (const char* env = std::getenv("BANACH_FUEL")) {
        std::string v(env);
        if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 18) {
            err << "BANACH_FUEL must be a positive integer\n";
            return kParseError;
        }
        o.fuel = std::stoull(v);
    }

    CLI::App app{"Computable Banach-theorem constructions on N, [0,1] and Cantor space", "banach-cli"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--fuel", o.fuel, "Search bound (default: $BANACH_FUEL or 256)")->check(CLI::PositiveNumber);
    app.add_option("--depth", o.depth, "Tree search depth");
    app.add_option("--level", o.level, "Net level / output precision");
    app.add_option("--seed", o.seed, "Corpus seed");
    app.add_option("--cache-limit", o.cache_limit, "Memo entries per stream (0 = unbounded)");

    auto* oracle = app.add_subcommand("oracle", "Bounded LPO / mu / LLPOmin oracles");
    oracle->add_option("kind", o.kind)->required()->check(CLI::IsMember({"lpo", "mu0", "mu", "llpomin"}));
    oracle->add_option("--seq", o.seq, "Sequence")->required();
    oracle->add_flag("--promise", o.promise, "Promise that no zero exists (lpo)");

    auto* range = app.add_subcommand("range", "Range characteristic and bounding functions");
    range->add_option("action", o.action)
        ->required()
        ->check(CLI::IsMember({"verify", "beta-to-rho", "rho-to-beta", "bound", "refute"}));
    range->add_option("--f", o.f, "The function whose range is studied")->default_val("id");
    range->add_option("--aux", o.aux, "Auxiliary function for verify")->default_val("const:1");
    range->add_option("--kind", o.aux_kind)->check(CLI::IsMember({"rho", "beta"}));
    range->add_option("--b", o.b, "Bounding function")->default_val("id");
    range->add_option("--chi", o.chi, "Characteristic function")->default_val("const:1");
    range->add_option("--n", o.n, "Last index checked");
    range->add_option("--pad", o.pad, "Padding for the refutation probe");

    auto* reduce = app.add_subcommand("reduce", "Named reduction pipelines");
    reduce->add_option("name", o.name)
        ->required()
        ->check(CLI::IsMember(
            {"llpo-from-llpomin", "llpomin-from-llpo", "llpomin-from-lpo", "llpo-via-lpo", "grilliot", "via-wkl"}));
    reduce->add_option("--seq", o.seq)->required();
    reduce->add_flag("--promise", o.promise);

    std::vector<std::string> pairs{"identity", "succ", "gadget"};
    auto* bnat = app.add_subcommand("banach-nat", "Bounded Banach bijection on N");
    bnat->add_option("--pair", o.pair)->default_val("identity")->check(CLI::IsMember(pairs));
    bnat->add_option("--g", o.g)->default_val(";1");
    bnat->add_option("--n", o.n);

    auto* gadget = app.add_subcommand("gadget", "LLPOmin gadget: build, solve, report h(1)");
    gadget->add_option("--g", o.g)->required();
    gadget->add_option("--n", o.n);

    auto* diagram = app.add_subcommand("diagram", "Render the back-and-forth chains of the gadget pair");
    diagram->add_option("--pair", o.pair)->default_val("gadget")->check(CLI::IsMember(pairs));
    diagram->add_option("--g", o.g)->default_val(";1");
    diagram->add_option("--width", o.width)->check(CLI::Range(nat{4}, nat{200}));

    auto* metric = app.add_subcommand("metric", "Range, preimage, modulus and Banach functional on compact spaces");
    metric->add_option("action", o.action)
        ->required()
        ->check(CLI::IsMember({"range", "preimage", "modulus", "banach-h"}));
    metric->add_option("--space", o.space)->default_val("interval")->check(CLI::IsMember({"interval", "cantor"}));
    metric->add_option("--pair", o.pair)->default_val("halving")->check(CLI::IsMember({"halving", "padding", "preimage"}));
    metric->add_option("--x,--y", o.x, "Point literal (k/2^j, bit sequence, repeat:BITS, sigma:N); defaults to 0");
    metric->add_option("--w", o.w, "LLPOmin input for the preimage gadget")->default_val(";1");

    auto* decode = app.add_subcommand("decode", "Decode a built-in continuous-function code");
    decode->add_option("--code", o.code)->default_val("identity")->check(CLI::IsMember({"identity", "constant"}));
    decode->add_option("--space", o.space)->default_val("interval")->check(CLI::IsMember({"interval", "cantor"}));
    decode->add_option("--x", o.x, "Net point; defaults to 1/2^1 or 1;0");

    auto* corpus = app.add_subcommand("corpus", "Run a seeded verification suite");
    corpus->add_option("suite", o.suite)->required()->check(CLI::IsMember(suite_names()));
    corpus->add_option("--cases", o.cases);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParseError;
    }
    if (o.cache_limit) set_cache_limit(*o.cache_limit);

    Report rep;
    auto start = std::chrono::steady_clock::now();
    try {
        if (oracle->parsed()) cmd_oracle(o, rep);
        else if (range->parsed()) cmd_range(o, rep);
        else if (reduce->parsed()) cmd_reduce(o, rep);
        else if (bnat->parsed()) cmd_banach_nat(o, rep);
        else if (gadget->parsed()) cmd_gadget(o, rep);
        else if (diagram->parsed()) cmd_diagram(o, rep);
        else if (metric->parsed()) cmd_metric(o, rep);
        else if (decode->parsed()) cmd_decode(o, rep);
        else cmd_corpus(o, rep);
    } catch (const Error& e) {
        rep.code = error_code(e);
        rep.output = json{{"error", e.kind()}, {"message", e.what()}};
        if (o.format != "json") {
            err << "error: " << e.what() << '\n';
            return rep.code;
        }
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    emit(o, rep, out, elapsed.count());
    return rep.code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"banach-cli"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace banach::cli
