#include "cli.hpp"

#include "manifest.hpp"

#include "parazone/configs.hpp"
#include "parazone/error.hpp"
#include "parazone/geom.hpp"
#include "parazone/hs.hpp"
#include "parazone/invariants.hpp"
#include "parazone/patterns.hpp"
#include "parazone/realizer.hpp"
#include "parazone/seq_io.hpp"
#include "parazone/zone.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

namespace parazone::cli {

namespace {

using nlohmann::json;

// Bad combination of otherwise well-formed options.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Run {
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> outputs;
    std::ostringstream text;
    std::ostream* err = nullptr;

    std::string read(const std::string& path) {
        std::string data = read_file(path);
        inputs.emplace_back(path, sha256_hex(data));
        return data;
    }

    void write(const std::string& path, const std::string& data) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw InvalidInput("cannot write '" + path + "'");
        f << data;
        f.close();
        if (!f) throw InvalidInput("cannot write '" + path + "'");
        outputs.emplace_back(path, sha256_hex(data));
    }

    /// Primary artifact: the --out file if given, else standard output.
    void emit(const std::string& data) {
        if (out_path) write(*out_path, data);
        else text << data;
    }
};

struct Common {
    std::optional<std::string> out;
    std::optional<std::string> manifest;
};

struct Leaf {
    CLI::App* app = nullptr;
    std::string command;
    std::shared_ptr<Common> common;
    std::function<int(Run&)> run;
};

Leaf& add_leaf(std::vector<Leaf>& leaves, CLI::App* parent, const std::string& name, const std::string& help,
               bool with_out) {
    Leaf leaf;
    leaf.app = parent->add_subcommand(name, help);
    leaf.command = parent->get_name() + " " + name;
    leaf.common = std::make_shared<Common>();
    if (with_out) leaf.app->add_option("--out", leaf.common->out, "Write the primary output to FILE");
    leaf.app->add_option("--manifest", leaf.common->manifest, "Write the run manifest to FILE");
    leaves.push_back(std::move(leaf));
    return leaves.back();
}

std::string rat(const Rat& r) { return to_string(r); }

std::string yes(bool b) { return b ? "true" : "false"; }

// ---- hs ----

void add_hs(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* hs = app.add_subcommand("hs", "Hart-Sharir sequences");
    hs->require_subcommand(1);

    struct Gen {
        std::uint64_t k = 1, m = 1, budget = kDefaultBudget;
        bool json = false, text = false, verify = false;
    };
    auto g = std::make_shared<Gen>();
    Leaf& gen = add_leaf(leaves, hs, "gen", "Generate S_k(m)", true);
    gen.app->add_option("--k", g->k, "Level k >= 1")->required();
    gen.app->add_option("--m", g->m, "Block length m >= 1")->required();
    gen.app->add_option("--budget", g->budget, "Maximum number of tokens");
    auto* jf = gen.app->add_flag("--json", g->json, "JSON output");
    auto* tf = gen.app->add_flag("--text", g->text, "Text output (default)");
    jf->excludes(tf);
    gen.app->add_flag("--verify", g->verify, "Run the invariant suite on the result");
    gen.run = [g](Run& r) {
        const Seq s = hart_sharir({g->k, g->m}, g->budget);
        r.emit(g->json ? seq_to_json(s).dump() + "\n" : format_seq(s) + "\n");
        if (!g->verify) return 0;
        bool failed = false;
        for (const auto& c : hs_invariants(s)) {
            *r.err << (c.skipped ? "SKIP " : c.ok ? "PASS " : "FAIL ") << c.name;
            if (!c.detail.empty()) *r.err << ": " << c.detail;
            *r.err << "\n";
            failed |= !c.ok && !c.skipped;
        }
        return failed ? int(kDomainError) : int(kOk);
    };

    struct Size {
        std::uint64_t k = 1, m = 1;
    };
    auto z = std::make_shared<Size>();
    Leaf& size = add_leaf(leaves, hs, "size", "Exact size of S_k(m) without building it", false);
    size.app->add_option("--k", z->k)->required();
    size.app->add_option("--m", z->m)->required();
    size.run = [z](Run& r) {
        const auto e = hs_size({z->k, z->m});
        r.emit(e.describe() + (e.feasible ? "\n" : " (infeasible)\n"));
        return 0;
    };
}

// ---- seq / ex ----

void print_witness(Run& r, const PatternWitness& w, const Labels& pattern, const Labels& host) {
    r.text << "mapping:";
    for (const auto& [p, h] : w.mapping) r.text << " " << pattern.at(p) << "->" << host.at(h);
    r.text << "\npositions:";
    for (auto p : w.positions) r.text << " " << p;
    r.text << "\n";
}

Labels fixed_labels(std::string_view letters) {
    Labels out;
    for (char c : letters) out.emplace_back(1, c);
    return out;
}

void add_seq(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* seq = app.add_subcommand("seq", "Sequence queries");
    seq->require_subcommand(1);

    struct Check {
        std::string input, pattern;
        bool structural = false;
        std::uint64_t max_steps = kDefaultSearchSteps;
    };
    auto c = std::make_shared<Check>();
    Leaf& check = add_leaf(leaves, seq, "check", "Pattern containment", false);
    check.app->add_option("--input", c->input, "Host sequence (text or JSON)")->required();
    check.app->add_option("--pattern", c->pattern, "ababa, abcaccbc or file:PATH")->required();
    check.app->add_flag("--structural", c->structural, "Preserve special-block co-membership");
    check.app->add_option("--max-steps", c->max_steps, "Search node budget");
    check.run = [c](Run& r) {
        const ParsedSeq host = parse_seq(r.read(c->input));
        const auto& t = host.seq.tokens;
        std::optional<PatternWitness> w;
        Labels plabels;
        if (c->pattern == "ababa" || c->pattern == "abcaccbc") {
            if (c->structural) throw UsageError("--structural needs a file: pattern");
            plabels = fixed_labels(c->pattern == "ababa" ? "ab" : "abc");
            if (c->pattern == "ababa") {
                if (auto a = find_ababa(t)) {
                    w = PatternWitness{{{0, a->a}, {1, a->b}}, {a->positions.begin(), a->positions.end()}};
                }
            } else {
                w = find_abcaccbc(t);
            }
        } else if (c->pattern.rfind("file:", 0) == 0) {
            const ParsedSeq pat = parse_seq(r.read(c->pattern.substr(5)));
            plabels = pat.labels;
            w = c->structural ? structurally_contains(host.seq, pat.seq, {}, c->max_steps)
                              : contains_isomorphic(t, pat.seq.tokens, c->max_steps);
        } else {
            throw UsageError("unknown pattern '" + c->pattern + "'");
        }
        r.text << (w ? "contains" : "avoids") << "\n";
        if (w) print_witness(r, *w, plabels, host.labels);
        return 0;
    };

    struct Endpoints {
        std::string input;
        bool json = false;
    };
    auto e = std::make_shared<Endpoints>();
    Leaf& ep = add_leaf(leaves, seq, "endpoints", "Endpoint sequence E(u)", true);
    ep.app->add_option("--input", e->input)->required();
    ep.app->add_flag("--json", e->json);
    ep.run = [e](Run& r) {
        const ParsedSeq u = parse_seq(r.read(e->input));
        const ESeq es = endpoint_seq(u.seq);
        r.emit(e->json ? eseq_to_json(es, &u.labels).dump() + "\n" : format_eseq(es, &u.labels) + "\n");
        return 0;
    };

    auto* ex = app.add_subcommand("ex", "Extremal functions");
    ex->require_subcommand(1);
    struct Brute {
        std::size_t n = 1;
        std::vector<std::string> forbidden;
        bool json = false;
    };
    auto b = std::make_shared<Brute>();
    Leaf& brute = add_leaf(leaves, ex, "brute", "Exhaustive Ex(U, n) for n <= 5", true);
    brute.app->add_option("--n", b->n)->required();
    brute.app->add_option("--forbidden", b->forbidden, "Pattern files, comma separated")
        ->required()
        ->delimiter(',');
    brute.app->add_flag("--json", b->json);
    brute.run = [b](Run& r) {
        std::vector<Seq> pats;
        for (const auto& path : b->forbidden) pats.push_back(parse_seq(r.read(path)).seq);
        const ExResult res = max_ds_length(pats, b->n);
        if (b->json)
            r.emit(json{{"n", res.n}, {"max_length", res.max_length}, {"witness", seq_to_json(res.witness)}}.dump() +
                   "\n");
        else
            r.emit("max_length " + std::to_string(res.max_length) + "\nwitness " + format_seq(res.witness) + "\n");
        return 0;
    };
}

// ---- config / realize ----

void add_config(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* config = app.add_subcommand("config", "Segment configurations");
    config->require_subcommand(1);
    struct Build {
        std::string kind;
        ConfigParams params;
    };
    auto o = std::make_shared<Build>();
    Leaf& build = add_leaf(leaves, config, "build", "Build a configuration as JSON", true);
    build.app->add_option("--kind", o->kind, "X, T, Tj, Z, Zj, Y, YF5, F or thm31")->required();
    build.app->add_option("--n", o->params.n);
    build.app->add_option("--j", o->params.j);
    build.app->add_option("--m", o->params.m);
    build.app->add_flag("--wide", o->params.wide, "F only: also require a wide set");
    build.run = [o](Run& r) {
        const Config cfg = build_config(parse_config_kind(o->kind), o->params);
        r.emit(config_to_json(cfg).dump(2) + "\n");
        return 0;
    };
}

void add_realize(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* realize = app.add_subcommand("realize", "Search for segment realizations");
    realize->require_subcommand(1);
    struct Search {
        std::optional<std::string> config, kind;
        ConfigParams params;
        std::uint64_t budget = 10'000, seed = 0;
        std::vector<std::string> strategies;
        unsigned jobs = 1;
        std::optional<std::string> report;
        bool certify = false;
    };
    auto o = std::make_shared<Search>();
    Leaf& s = add_leaf(leaves, realize, "search", "Randomized search with exact checking", false);
    auto* cf = s.app->add_option("--config", o->config, "Configuration JSON");
    auto* kf = s.app->add_option("--kind", o->kind, "Build the configuration in place");
    cf->excludes(kf);
    s.app->add_option("--n", o->params.n);
    s.app->add_option("--j", o->params.j);
    s.app->add_option("--m", o->params.m);
    s.app->add_flag("--wide", o->params.wide);
    s.app->add_option("--budget", o->budget, "Total trials");
    s.app->add_option("--seed", o->seed);
    s.app->add_option("--strategy", o->strategies, "uniform, geometric or anneal (repeatable)")->delimiter(',');
    s.app->add_option("--jobs", o->jobs, "Worker threads");
    s.app->add_option("--report", o->report, "Write a JSON report to FILE");
    s.app->add_flag("--certify", o->certify, "Check the impossibility certificate on every trial meeting its preconditions");
    s.run = [o](Run& r) {
        if (!o->config && !o->kind) throw UsageError("one of --config or --kind is required");
        const Config cfg = o->config ? config_from_json(json::parse(r.read(*o->config)))
                                     : build_config(parse_config_kind(*o->kind), o->params);
        r.seed = o->seed;
        SearchOptions so;
        so.budget = o->budget;
        so.seed = o->seed;
        so.jobs = o->jobs;
        if (!o->strategies.empty()) {
            so.strategies.clear();
            for (const auto& name : o->strategies) so.strategies.push_back(parse_strategy(name));
        }

        std::uint64_t met = 0, passed = 0;
        if (o->certify) {
            const auto pre = certificate_preconditions(cfg);
            so.observer = [&, pre](const TrialEvent& e) {
                for (auto i : pre)
                    if (!e.group_ok[i]) return;
                ++met;
                const bool ok = cfg.kind == ConfigKind::Thm31 ? thm31_certificate(cfg, *e.assignment).holds()
                                                              : yf5_certificate(cfg, *e.assignment).holds();
                if (ok) ++passed;
            };
        }
        const SearchReport rep = search(cfg, so);

        r.text << "configuration " << to_string(cfg.kind) << ": " << cfg.segment_count() << " segments, "
               << rep.total_groups << " groups, " << rep.total_atoms << " atoms\n";
        for (const auto& st : rep.stats)
            r.text << to_string(st.strategy) << ": " << st.trials << " trials, best " << st.best_atoms << "/"
                   << rep.total_atoms << " atoms, " << st.best_groups << "/" << rep.total_groups << " groups\n";
        if (rep.witness) {
            r.text << "realization found by " << to_string(*rep.found_by) << " at trial " << rep.found_at << "\n";
            for (std::size_t i = 0; i < rep.witness->size(); ++i)
                r.text << cfg.labels[i] << " " << rat((*rep.witness)[i].p) << " " << rat((*rep.witness)[i].q) << "\n";
        } else {
            r.text << "no realization found in " << rep.trials() << " trials\n";
        }
        if (o->certify) r.text << "certificate: " << met << " trials met the preconditions, " << passed << " passed\n";

        if (o->report) {
            json j = rep.to_json(cfg);
            j["kind"] = to_string(cfg.kind);
            j["seed"] = o->seed;
            if (o->certify) j["certificate"] = {{"preconditions_met", met}, {"passed", passed}};
            r.write(*o->report, j.dump(2) + "\n");
        }
        return passed == met ? int(kOk) : int(kDomainError);
    };
}

// ---- geom / map ----

std::vector<std::vector<Rat>> parse_rat_rows(const std::string& text) {
    std::vector<std::vector<Rat>> rows;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        const json j = json::parse(text);
        const auto cell = [](const json& v) { return v.is_string() ? parse_rat(v.get<std::string>()) : parse_rat(v.dump()); };
        const bool nested = !j.empty() && j.front().is_array();
        for (const auto& row : nested ? j : json::array({j})) {
            std::vector<Rat> out;
            for (const auto& v : row) out.push_back(cell(v));
            rows.push_back(std::move(out));
        }
        return rows;
    }
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream ls(line);
        std::string tok;
        std::vector<Rat> row;
        while (ls >> tok) {
            if (tok[0] == '#') break;
            row.push_back(parse_rat(tok));
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

void add_geom(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* geom = app.add_subcommand("geom", "Exact parabola geometry");
    geom->require_subcommand(1);
    struct Check {
        std::string lemma, coords;
    };
    auto o = std::make_shared<Check>();
    Leaf& check = add_leaf(leaves, geom, "check", "Evaluate a lemma on given coordinates", false);
    check.app->add_option("--lemma", o->lemma, "parabola-ratio, ratios, wide-fan or order")
        ->required()
        ->check(CLI::IsMember({"parabola-ratio", "ratios", "wide-fan", "order"}));
    check.app->add_option("--coords", o->coords, "Coordinates file")->required();
    check.run = [o](Run& r) {
        const std::string text = r.read(o->coords);
        bool ok = true;
        if (o->lemma == "parabola-ratio") {
            const auto rows = parse_rat_rows(text);
            if (rows.empty()) throw InvalidInput("no quadruples given");
            for (const auto& row : rows) {
                if (row.size() != 4) throw InvalidInput("each quadruple needs four values a < b < c < d");
                const RatioQuad q = parabola_ratio(row[0], row[1], row[2], row[3]);
                const bool eq = q.p * q.s == q.q * q.r;
                ok &= eq;
                r.text << "p=" << rat(q.p) << " q=" << rat(q.q) << " r=" << rat(q.r) << " s=" << rat(q.s)
                       << " ps=qr: " << yes(eq) << "\n";
            }
        } else {
            const auto chords = parse_chords(text);
            if (o->lemma == "ratios") {
                if (chords.size() != 3) throw InvalidInput("ratios needs exactly three chords");
                const RatioProfile p = ratio_profile(chords);
                r.text << "alpha1=" << rat(p.alpha1) << " alpha2=" << rat(p.alpha2) << " gamma=" << rat(p.gamma)
                       << " beta1=" << rat(p.beta1) << " beta2=" << rat(p.beta2) << "\n"
                       << "claim1: " << yes(p.claim1) << "\nclaim2: " << yes(p.claim2) << "\nclaim3: " << yes(p.claim3)
                       << "\n";
                ok = p.claim1 && p.claim2 && p.claim3;
            } else if (o->lemma == "wide-fan") {
                const WideFanGaps w = wide_fan_gaps(chords);
                for (std::size_t k = 0; k < w.alpha.size(); ++k) {
                    r.text << "alpha" << k + 1 << "=" << rat(w.alpha[k]);
                    if (k < w.dominant.size()) r.text << " dominant: " << yes(w.dominant[k]);
                    r.text << "\n";
                }
                ok = w.all_dominant();
            } else {
                r.text << "order: " << to_string(intersection_order_class(chords)) << "\n";
                if (has_fan_order(chords)) r.text << "wide: " << yes(is_wide(chords)) << "\n";
            }
        }
        return ok ? int(kOk) : int(kDomainError);
    };

    auto* map = app.add_subcommand("map", "Projective maps");
    map->require_subcommand(1);
    struct Circle {
        std::vector<std::string> t, point;
    };
    auto c = std::make_shared<Circle>();
    Leaf& cp = add_leaf(leaves, map, "circle-to-parabola", "Map unit-circle points onto y = x^2", true);
    cp.app->add_option("--t", c->t, "Circle parameter t (repeatable)");
    cp.app->add_option("--point", c->point, "Circle point x,y (repeatable)");
    cp.run = [c](Run& r) {
        std::vector<Point> pts;
        for (const auto& t : c->t) pts.push_back(circle_point(parse_rat(t)));
        for (const auto& p : c->point) {
            const auto comma = p.find(',');
            if (comma == std::string::npos) throw UsageError("--point expects x,y");
            pts.push_back({parse_rat(p.substr(0, comma)), parse_rat(p.substr(comma + 1))});
        }
        if (pts.empty()) throw UsageError("give at least one --t or --point");
        std::string body;
        for (const auto& p : pts) {
            const Point q = map_circle_to_parabola(p);
            body += "(" + rat(p.x) + ", " + rat(p.y) + ") -> (" + rat(q.x) + ", " + rat(q.y) + ")\n";
        }
        r.emit(body);
        return 0;
    };
}

// ---- zone ----

void add_zone(CLI::App& app, std::vector<Leaf>& leaves) {
    auto* zone = app.add_subcommand("zone", "Zone of the parabola in a chord arrangement");
    zone->require_subcommand(1);
    struct ZoneRun {
        std::string chords;
        std::vector<std::string> emit{"s"};
        std::optional<std::string> svg;
        bool json = false;
    };
    auto o = std::make_shared<ZoneRun>();
    Leaf& run = add_leaf(leaves, zone, "run", "Boundary tour transcripts", true);
    run.app->add_option("--chords", o->chords, "Chord endpoints, JSON or CSV")->required();
    run.app->add_option("--emit", o->emit, "sprime, s, envelope, complexity, svg")
        ->delimiter(',')
        ->check(CLI::IsMember({"sprime", "s", "envelope", "complexity", "svg"}));
    run.app->add_option("--svg", o->svg, "SVG file (otherwise printed)");
    run.app->add_flag("--json", o->json, "One JSON object instead of text lines");
    run.run = [o](Run& r) {
        const auto chords = parse_chords(r.read(o->chords));
        const auto wants = [&](std::string_view k) { return std::find(o->emit.begin(), o->emit.end(), k) != o->emit.end(); };
        const bool needs_tour = wants("sprime") || wants("s") || wants("complexity") || wants("svg") || o->json;

        std::optional<Arrangement> arr;
        std::optional<Transcript> tr;
        if (needs_tour) {
            arr = build_arrangement(chords);
            tr = zone_tour(*arr);
        }
        if (o->json) {
            json j = transcript_to_json(*arr, *tr);
            if (wants("envelope")) j["envelope"] = format_envelope(lower_envelope(chords));
            r.emit(j.dump(2) + "\n");
        } else {
            std::vector<std::pair<std::string, std::string>> lines;
            for (const auto& k : o->emit) {
                if (k == "sprime") lines.emplace_back(k, format_sprime(*tr));
                else if (k == "s") lines.emplace_back(k, format_s(*tr));
                else if (k == "envelope") lines.emplace_back(k, format_envelope(lower_envelope(chords)));
                else if (k == "complexity") lines.emplace_back(k, std::to_string(zone_complexity(*arr).total));
            }
            std::string body;
            for (const auto& [k, v] : lines) body += (lines.size() > 1 ? k + ": " : std::string()) + v + "\n";
            if (wants("svg") && !o->svg) body += render_svg(*arr, *tr);
            if (!body.empty()) r.emit(body);
        }
        if (wants("svg") && o->svg) r.write(*o->svg, render_svg(*arr, *tr));
        return 0;
    };
}

json parameters_of(const CLI::App* leaf) {
    json p = json::object();
    for (const CLI::Option* opt : leaf->get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name == "manifest" || opt->count() == 0) continue;
        const auto& res = opt->results();
        p[name] = res.size() == 1 ? json(res.front()) : json(res);
    }
    return p;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Davenport-Schinzel sequences, parabola zones and segment configurations", "parazone"};
    app.require_subcommand(1);
    std::vector<Leaf> leaves;
    leaves.reserve(16);
    add_hs(app, leaves);
    add_seq(app, leaves);
    add_config(app, leaves);
    add_realize(app, leaves);
    add_geom(app, leaves);
    add_zone(app, leaves);

    try {
        std::vector<std::string> reversed_args(args.rbegin(), args.rend());
        app.parse(reversed_args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int(kOk) : int(kUsageError);
    }

    const Leaf* leaf = nullptr;
    for (const auto& l : leaves)
        if (l.app->parsed()) leaf = &l;
    if (!leaf) {
        err << "no command given\n";
        return kUsageError;
    }

    Run run;
    run.err = &err;
    run.out_path = leaf->common->out;
    const auto start = std::chrono::steady_clock::now();
    int status = kOk;
    try {
        status = leaf->run(run);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        status = kUsageError;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        status = kBudgetExceeded;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        status = kDomainError;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string printed = run.text.str();
    out << printed;
    out.flush();

    if (auto path = manifest_path(leaf->common->manifest, leaf->common->out)) {
        RunManifest m;
        m.command = leaf->command;
        m.parameters = parameters_of(leaf->app);
        m.seed = run.seed;
        m.inputs = run.inputs;
        m.outputs = run.outputs;
        if (!printed.empty()) m.outputs.emplace_back("<stdout>", sha256_hex(printed));
        m.wall_seconds = wall;
        m.exit_status = status;
        std::ofstream f(*path, std::ios::binary);
        if (!f) {
            err << "error: cannot write manifest '" << *path << "'\n";
            return status == kOk ? int(kDomainError) : status;
        }
        f << m.to_json().dump(2) << "\n";
    }
    return status;
}

}  // namespace parazone::cli
