#include "plasti/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "plasti/classify.hpp"
#include "plasti/cli/gallery.hpp"
#include "plasti/cli/plot.hpp"
#include "plasti/extend.hpp"
#include "plasti/oracle.hpp"
#include "plasti/space_parse.hpp"

namespace plasti::cli {

namespace {

using Json = nlohmann::ordered_json;

Json strings(const std::vector<Scalar>& xs)
{
    Json out = Json::array();
    for (const auto& x : xs) {
        out.push_back(x.str());
    }
    return out;
}

Json to_json(const CheckReport& r)
{
    Json w = Json::array();
    for (const auto& x : r.witnesses) {
        w.push_back({{"kind", to_string(x.kind)}, {"points", strings(x.points)}, {"images", strings(x.images)},
                     {"note", x.note}});
    }
    return {{"check", r.check},  {"verdict", to_string(r.verdict)}, {"window", r.window.str()},
            {"pairs_checked", r.pairs_checked}, {"witnesses", w}, {"notes", r.notes}};
}

Json to_json(const Classification& c)
{
    Json j{{"verdict", to_string(c.kind)}, {"rule", c.rule}, {"citation", c.citation}};
    if (c.kind == VerdictKind::Plastic) {
        j["structure"] = to_string(c.structure);
    }
    j["window"] = c.window.str();
    if (c.witness) {
        j["witness"] = c.witness->str();
    }
    if (c.bundle) {
        j["bundle"] = {{"pass", c.bundle->pass()},
                       {"endomorphism", to_json(c.bundle->endomorphism)},
                       {"nonexpansive", to_json(c.bundle->nonexpansive)},
                       {"bijection", to_json(c.bundle->bijection)},
                       {"isometry", to_json(c.bundle->isometry)}};
    }
    Json trace = Json::array();
    for (const auto& s : c.trace.steps) {
        trace.push_back({{"rule", s.rule}, {"matched", s.matched}, {"evidence", s.evidence}});
    }
    j["trace"] = trace;
    j["notes"] = c.notes;
    if (c.falsification) {
        const auto& f = *c.falsification;
        j["falsification"] = {{"window", f.window.str()},
                              {"candidates", f.candidates},
                              {"endomorphic", f.endomorphic},
                              {"nonexpansive", f.nonexpansive},
                              {"bijective", f.bijective},
                              {"errors", f.errors},
                              {"counterexample", f.counterexample ? Json(f.counterexample->str()) : Json()}};
    }
    return j;
}

Json to_json(const OracleVerdict& v)
{
    Json j{{"verdict", to_string(v.kind)},
           {"examined", v.examined},
           {"nodes", v.nodes},
           {"nonexpansive", v.nonexpansive},
           {"isometries", v.isometries}};
    j["witness"] = v.witness ? Json(*v.witness) : Json();
    return j;
}

Json to_json(const DistanceMatrix& m)
{
    Json labels = Json::array();
    for (const auto& l : m.labels) {
        labels.push_back({{"name", l.name}, {"outer", l.outer}});
    }
    Json rows = Json::array();
    for (const auto& r : m.d) {
        rows.push_back(strings(r));
    }
    return {{"labels", labels}, {"rows", rows}};
}

Json to_json(const AxiomReport& r)
{
    Json v = Json::array();
    for (const auto& x : r.violations) {
        v.push_back(x.str());
    }
    return {{"pass", r.pass()}, {"triples_checked", r.triples_checked}, {"violations", v}};
}

Json to_json(const RestrictionReport& r)
{
    Json v = Json::array();
    for (const auto& c : r.changes) {
        v.push_back({{"a", c.a}, {"b", c.b}, {"euclidean", c.euclidean.str()}, {"value", c.value.str()}});
    }
    return {{"pass", r.pass()}, {"changes", v}};
}

Json to_json(const GalleryReport& r)
{
    Json items = Json::array();
    for (const auto& i : r.items) {
        items.push_back({{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
    }
    return {{"id", r.id}, {"pass", r.pass()}, {"items", items}};
}

void emit(std::ostream& out, bool json, const Json& j, const std::string& text)
{
    if (json) {
        out << j.dump(2) << '\n';
    } else {
        out << text;
    }
}

/// `0..9` (integers, inclusive) or `0,1,3/2`.
std::vector<Scalar> parse_points(const std::string& text)
{
    std::vector<Scalar> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const Scalar a = Scalar::parse(text.substr(0, dots));
        const Scalar b = Scalar::parse(text.substr(dots + 2));
        if (!a.is_integer() || !b.is_integer() || b < a) {
            throw Error(ErrorKind::PreconditionFailed, "point range needs integers lo..hi, got " + text);
        }
        for (Scalar x = a; x <= b; x += Scalar(1)) {
            out.push_back(x);
        }
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        Scalar x;
        if (!Scalar::try_parse(item, x)) {
            throw Error(ErrorKind::PreconditionFailed, "not a number: '" + item + "'");
        }
        out.push_back(x);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

struct Common {
    std::string window = "-10..10";
    bool json = false;
    std::size_t cap = 10'000;

    [[nodiscard]] Window win() const { return Window::parse(window); }
    [[nodiscard]] Limits limits() const
    {
        Limits l;
        l.accumulation_cap = cap;
        return l;
    }
};

void add_common(CLI::App* sub, Common& c, bool window = true)
{
    if (window) {
        sub->add_option("--window", c.window, "value range lo..hi")->capture_default_str();
    }
    sub->add_option("--cap", c.cap, "points enumerated per accumulating tail")->capture_default_str();
    sub->add_flag("--json", c.json, "structured output");
}

SubspaceDescription space_from(const std::string& file, const std::string& gallery_id)
{
    if (!gallery_id.empty()) {
        return gallery_entry(gallery_id).space;
    }
    if (file.empty()) {
        throw Error(ErrorKind::PreconditionFailed, "give a space file or --gallery");
    }
    return load_space(file);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Plasticity checks for subsets of the real line", "plasti"};
    app.require_subcommand(1);

    // check
    Common check_c;
    std::string check_space;
    std::string check_map;
    std::string which = "nonexpansive";
    auto* check = app.add_subcommand("check", "run one windowed check of a map");
    check->add_option("--space", check_space, "space file")->required();
    check->add_option("--map", check_map, "map file")->required();
    check->add_option("--which", which, "check to run")
        ->check(CLI::IsMember({"nonexpansive", "bijection", "isometry", "between", "endo", "lipschitz"}))
        ->capture_default_str();
    check_c.cap = 200;
    add_common(check, check_c);

    // classify
    Common cls_c;
    std::string cls_space;
    std::string cls_gallery;
    bool no_falsify = false;
    auto* cls = app.add_subcommand("classify", "apply the classification rules to a space");
    cls->add_option("space", cls_space, "space file");
    cls->add_option("--gallery", cls_gallery, "use a gallery space");
    cls->add_flag("--no-falsify", no_falsify, "skip the falsification search");
    cls_c.cap = 64;
    add_common(cls, cls_c);

    // oracle
    Common orc_c;
    std::string orc_points;
    std::string orc_space;
    bool strong = false;
    std::size_t bij_cap = OracleConfig{}.bijection_cap;
    std::size_t strong_cap = OracleConfig{}.strong_cap;
    auto* orc = app.add_subcommand("oracle", "brute-force plasticity of a finite space");
    auto* pts_opt = orc->add_option("--points", orc_points, "0,1,3 or 0..9");
    orc->add_option("--space", orc_space, "space file, materialized on the window")->excludes(pts_opt);
    orc->add_flag("--strong", strong, "enumerate all self-maps");
    orc->add_option("--bijection-cap", bij_cap, "largest space for the bijection search")->capture_default_str();
    orc->add_option("--strong-cap", strong_cap, "largest space for the self-map search")->capture_default_str();
    add_common(orc, orc_c);

    // plot
    Common plot_c;
    std::string plot_space;
    std::string plot_gallery;
    std::vector<std::string> plot_maps;
    std::string plot_out;
    bool witness = false;
    bool no_product = false;
    bool no_diagonal = false;
    bool no_graph = false;
    bool jumps = false;
    int size = 800;
    auto* plot = app.add_subcommand("plot", "SVG of A x A with map graphs");
    plot->add_option("--space", plot_space, "space file");
    plot->add_option("--gallery", plot_gallery, "gallery entry: its space and maps");
    plot->add_option("--map", plot_maps, "map file, repeatable");
    plot->add_flag("--witness", witness, "add the classifier's witness map");
    plot->add_flag("--no-product", no_product, "omit the grey A x A");
    plot->add_flag("--no-diagonal", no_diagonal, "omit the diagonal");
    plot->add_flag("--no-graph", no_graph, "omit map graphs");
    plot->add_flag("--jumps", jumps, "list graph jumps instead of drawing");
    plot->add_option("--size", size, "viewport size")->capture_default_str();
    plot->add_option("--out", plot_out, "output file (default: standard output)");
    plot_c.cap = 64;
    add_common(plot, plot_c);

    // gallery
    Common gal_c;
    std::string gal_id;
    bool verify = false;
    auto* gal = app.add_subcommand("gallery", "show or verify a gallery entry");
    gal->add_option("id", gal_id, "entry id; lists ids when absent");
    gal->add_flag("--verify", verify, "run every expected outcome");
    add_common(gal, gal_c, false);

    // extend
    Common ext_c;
    std::string ext_file;
    std::string mode = "paths";
    auto* ext = app.add_subcommand("extend", "extend the line metric to outer points");
    ext->add_option("matrix", ext_file, "matrix file")->required();
    ext->add_option("--mode", mode, "paths or railway")->check(CLI::IsMember({"paths", "railway"}))->capture_default_str();
    add_common(ext, ext_c, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kError;
    }

    try {
        if (check->parsed()) {
            const auto space = load_space(check_space);
            const auto map = load_map(check_map, gallery_resolver());
            const Window w = check_c.win();
            const CheckOptions opt{check_c.limits()};
            if (which == "lipschitz") {
                const LipschitzBound b = lipschitz_upper(map, space, w, opt);
                const bool ok = !b.unbounded && b.value <= Scalar(1);
                Json j{{"check", "lipschitz"},
                       {"window", w.str()},
                       {"unbounded", b.unbounded},
                       {"value", b.unbounded ? Json() : Json(b.value.str())},
                       {"attained", b.attained},
                       {"pair", b.pair ? strings({b.pair->first, b.pair->second}) : Json()}};
                std::string text = "check: lipschitz\nwindow: " + w.str() + "\nbound: " +
                                   (b.unbounded ? std::string("unbounded") : b.value.str()) +
                                   (b.attained ? "" : " (supremum, not attained)") + '\n';
                if (b.pair) {
                    text += "pair: " + b.pair->first.str() + " " + b.pair->second.str() + '\n';
                }
                emit(out, check_c.json, j, text);
                return ok ? kPass : kFail;
            }
            CheckReport r;
            if (which == "nonexpansive") {
                r = check_nonexpansive(map, space, w, opt);
            } else if (which == "bijection") {
                r = check_bijection(map, space, w, opt);
            } else if (which == "isometry") {
                r = check_isometry(map, space, w, opt);
            } else if (which == "between") {
                r = check_between_preservation(map, space, w, opt);
            } else {
                r = check_endomorphism(map, space, w, opt);
            }
            emit(out, check_c.json, to_json(r), r.str());
            return r.verdict == Verdict::Fail ? kFail : kPass;
        }

        if (cls->parsed()) {
            ClassifyOptions o;
            o.window = cls_c.win();
            o.check.limits = cls_c.limits();
            o.falsify = !no_falsify;
            const auto c = classify(space_from(cls_space, cls_gallery), o);
            emit(out, cls_c.json, to_json(c), c.str());
            return kPass;
        }

        if (orc->parsed()) {
            std::vector<Scalar> points;
            if (!orc_points.empty()) {
                points = parse_points(orc_points);
            } else if (!orc_space.empty()) {
                points = materialize(load_space(orc_space), orc_c.win(), orc_c.limits()).points;
            } else {
                throw Error(ErrorKind::PreconditionFailed, "give --points or --space");
            }
            const auto fs = FiniteSpace::make(points);
            OracleConfig cfg;
            cfg.bijection_cap = bij_cap;
            cfg.strong_cap = strong_cap;
            const OracleVerdict v = strong ? strongly_plastic_bruteforce(fs, cfg) : plastic_bruteforce(fs, cfg);
            std::string text = "points:";
            for (const auto& p : fs.points) {
                text += " " + p.str();
            }
            Json j = to_json(v);
            j["points"] = strings(fs.points);
            emit(out, orc_c.json, j, text + '\n' + v.str());
            return v.kind == OracleKind::Plastic || v.kind == OracleKind::StronglyPlastic ? kPass : kFail;
        }

        if (plot->parsed()) {
            PlotSpec spec;
            spec.window = plot_c.win();
            spec.limits = plot_c.limits();
            spec.size = size;
            spec.product = !no_product;
            spec.diagonal = !no_diagonal;
            spec.graph = !no_graph;
            spec.space = space_from(plot_space, plot_gallery);
            if (!plot_gallery.empty()) {
                spec.maps = gallery_entry(plot_gallery).maps;
            }
            for (const auto& f : plot_maps) {
                spec.maps.push_back(load_map(f, gallery_resolver()));
                if (spec.maps.back().name.empty()) {
                    spec.maps.back().name = f.substr(f.find_last_of('/') + 1);
                }
            }
            if (witness) {
                ClassifyOptions o;
                o.window = spec.window;
                o.falsify = false;
                const auto c = classify(spec.space, o);
                if (!c.witness) {
                    throw Error(ErrorKind::PreconditionFailed, "classifier gave no witness (" + to_string(c.kind) +
                                                                   " by " + c.rule + ")");
                }
                if (c.window != spec.window) {
                    spec.window = c.window;
                }
                spec.maps.push_back(*c.witness);
                spec.maps.back().name = "witness-" + c.rule;
                spec.space = c.witness_space;
            }
            if (jumps) {
                Json j = Json::array();
                std::string text;
                for (const auto& m : spec.maps) {
                    for (const auto& jm : find_jumps(map_graph(spec, m))) {
                        j.push_back({{"map", m.name},
                                     {"x", strings({jm.x_from, jm.x_to})},
                                     {"y", strings({jm.y_from, jm.y_to})}});
                        text += m.name + ": jump over (" + jm.x_from.str() + ", " + jm.x_to.str() + ") from " +
                                jm.y_from.str() + " to " + jm.y_to.str() + '\n';
                    }
                }
                emit(out, plot_c.json, j, text.empty() ? "no jumps\n" : text);
                return kPass;
            }
            const std::string svg = render_svg(spec);
            if (plot_out.empty()) {
                out << svg;
            } else {
                std::ofstream f(plot_out, std::ios::binary);
                if (!f) {
                    throw Error(ErrorKind::PreconditionFailed, "cannot write " + plot_out);
                }
                f << svg;
            }
            return kPass;
        }

        if (gal->parsed()) {
            if (gal_id.empty()) {
                Json j = gallery_ids();
                std::string text;
                for (const auto& id : gallery_ids()) {
                    text += id + "  " + gallery_entry(id).title + '\n';
                }
                emit(out, gal_c.json, j, text);
                return kPass;
            }
            const GalleryEntry e = gallery_entry(gal_id);
            if (verify) {
                const GalleryReport r = verify_gallery(gal_id);
                emit(out, gal_c.json, to_json(r), "gallery " + e.id + ": " + e.title + '\n' + r.str());
                return r.pass() ? kPass : kFail;
            }
            Json maps = Json::object();
            std::string text = "gallery " + e.id + ": " + e.title + "\nwindow: " + e.window.str() + "\nspace:\n" +
                               gallery_space_text(e.id);
            for (const auto& m : e.maps) {
                maps[m.name] = gallery_map_text(e.id, m.name);
                text += "map " + m.name + ":\n" + gallery_map_text(e.id, m.name);
            }
            emit(out, gal_c.json,
                 Json{{"id", e.id}, {"title", e.title}, {"window", e.window.str()},
                      {"space", gallery_space_text(e.id)}, {"maps", maps}},
                 text);
            return kPass;
        }

        if (ext->parsed()) {
            const MatrixFile f = load_matrix(ext_file);
            DistanceMatrix m;
            Json j{{"mode", mode}};
            std::string text;
            if (mode == "paths") {
                const PathInfimum p = path_infimum_metric(f.aug);
                m = p.metric;
                Json s = Json::array();
                for (const auto& x : p.shrinkage) {
                    s.push_back({{"a", x.a},
                                 {"b", x.b},
                                 {"euclidean", x.euclidean.str()},
                                 {"closed", x.closed.str()},
                                 {"chain", x.chain}});
                }
                j["metric"] = to_json(m);
                j["shrinkage"] = s;
                text = p.str();
            } else {
                m = railway_extension(f.aug, f.outer_metric);
                j["metric"] = to_json(m);
                text = m.str();
            }
            const AxiomReport axioms = check_metric_axioms(m);
            const RestrictionReport restriction = check_restriction(m, f.aug.inner);
            j["axioms"] = to_json(axioms);
            j["restriction"] = to_json(restriction);
            text += axioms.str() + restriction.str();
            emit(out, ext_c.json, j, text);
            return axioms.pass() ? kPass : kFail;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}

}  // namespace plasti::cli
