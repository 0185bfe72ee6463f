#include "distlat/io.hpp"

#include <json.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace distlat {

namespace {

using njson = nlohmann::ordered_json;

// Parse with origin:line:column context; nlohmann reports a byte offset.
njson parse_json(const std::string& text, const std::string& origin) {
    try {
        return njson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t stop = e.byte > 0 ? e.byte - 1 : 0;
        for (std::size_t i = 0; i < stop && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw parse_error(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": " + e.what());
    }
}

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw parse_error(origin + ": " + what);
}

const njson& field(const njson& j, const char* key, const std::string& origin) {
    const auto it = j.find(key);
    if (it == j.end()) fail(origin, std::string("missing field \"") + key + "\"");
    return *it;
}

Int int_from_json(const njson& v, const std::string& origin, const char* what) {
    if (!v.is_number_integer()) fail(origin, std::string(what) + " must be an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > 0x7fffffffffffffffull) {
        fail(origin, std::string(what) + " exceeds 64-bit signed range");
    }
    return v.get<std::int64_t>();
}

Rat rat_from_json(const njson& v, const std::string& origin, const char* what) {
    if (v.is_number_integer()) return Rat(int_from_json(v, origin, what));
    if (v.is_string()) {
        try {
            return parse_rat(v.get<std::string>());
        } catch (const precondition_error& e) {
            fail(origin, std::string(what) + ": " + e.what());
        }
    }
    fail(origin, std::string(what) + " must be an integer or a \"p/q\" string");
}

Vec2Q vec2q_from_json(const njson& v, const std::string& origin, const char* what) {
    if (!v.is_array() || v.size() != 2) {
        fail(origin, std::string(what) + " must be a two-element array");
    }
    return {rat_from_json(v[0], origin, what), rat_from_json(v[1], origin, what)};
}

Vec2I vec2i_from_json(const njson& v, const std::string& origin, const char* what) {
    if (!v.is_array() || v.size() != 2) {
        fail(origin, std::string(what) + " must be a two-element array");
    }
    return {int_from_json(v[0], origin, what), int_from_json(v[1], origin, what)};
}

// "lattice" values are either a built-in label or an inline Gram object.
LatticePtr lattice_from_value(const njson& v, const std::string& origin) {
    if (v.is_string()) {
        const auto label = v.get<std::string>();
        if (!LatticeModel::is_builtin_label(label)) {
            fail(origin, "unknown built-in lattice \"" + label +
                             "\"; expected Z2, hex, or hex-unimodular");
        }
        return std::make_shared<LatticeModel>(LatticeModel::builtin(label));
    }
    if (!v.is_object()) fail(origin, "lattice must be a label string or a gram object");

    const njson& gram = field(v, "gram", origin);
    if (!gram.is_array() || gram.size() != 2 || !gram[0].is_array() || gram[0].size() != 2 ||
        !gram[1].is_array() || gram[1].size() != 2) {
        fail(origin, "gram must be a 2x2 array");
    }
    const Rat g11 = rat_from_json(gram[0][0], origin, "gram[0][0]");
    const Rat g12 = rat_from_json(gram[0][1], origin, "gram[0][1]");
    const Rat g21 = rat_from_json(gram[1][0], origin, "gram[1][0]");
    const Rat g22 = rat_from_json(gram[1][1], origin, "gram[1][1]");
    if (g12 != g21) fail(origin, "gram must be symmetric");
    std::string label;
    if (const auto it = v.find("label"); it != v.end() && it->is_string()) {
        label = it->get<std::string>();
    }
    return std::make_shared<LatticeModel>(LatticeModel::from_gram({g11, g12, g22}, label));
}

njson lattice_to_value(const LatticeModel& model) {
    njson j;
    j["label"] = model.label();
    j["gram"] = njson::array({njson::array({rat_str(model.gram().g11), rat_str(model.gram().g12)}),
                              njson::array({rat_str(model.gram().g12), rat_str(model.gram().g22)})});
    return j;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string big_str(const BigInt& v) { return v.str(); }

njson surd_to_value(const SurdVal& s) {
    njson j;
    j["a"] = rat_str(s.a);
    j["b"] = rat_str(s.b);
    j["d"] = rat_str(s.d);
    j["approx"] = s.approx();
    return j;
}

njson rect_to_value(const LambdaRectangle& r) {
    njson j;
    j["a0"] = njson::array({r.a0.x, r.a0.y});
    j["L"] = njson::array({r.L1, r.L2});
    return j;
}

njson window_summary_value(const DiskWindow& w) {
    njson j;
    j["lattice"] = lattice_to_value(*w.model);
    j["tau"] = njson::array({rat_str(w.tau.x), rat_str(w.tau.y)});
    j["center"] = njson::array({rat_str(w.center.x), rat_str(w.center.y)});
    j["radius_sq"] = surd_to_value(w.radius_sq);
    j["key_bound"] = i128_str(w.key_bound);
    j["size"] = w.size();
    return j;
}

// Shared head/tail so every artifact carries its schema and, when the caller
// provides one, the digest of the manifest describing the producing run.
njson artifact(const char* schema, const std::string& manifest_digest) {
    njson j;
    j["schema"] = schema;
    if (!manifest_digest.empty()) j["manifest"] = manifest_digest;
    return j;
}

std::string dump(const njson& j) { return j.dump(2) + "\n"; }

} // namespace

// ---------------------------------------------------------------------------
// Inputs.

LatticePtr lattice_from_json(const std::string& text, const std::string& origin) {
    const njson j = parse_json(text, origin);
    if (!j.is_object()) fail(origin, "top level must be an object");
    if (j.contains("gram")) return lattice_from_value(j, origin);
    return lattice_from_value(field(j, "label", origin), origin);
}

std::string lattice_to_json(const LatticeModel& model) {
    njson j = artifact("distlat.lattice/1", "");
    const njson inner = lattice_to_value(model);
    j["label"] = inner["label"];
    j["gram"] = inner["gram"];
    return dump(j);
}

LatticePointSet pointset_from_json(const std::string& text, const std::string& origin) {
    const njson j = parse_json(text, origin);
    if (!j.is_object()) fail(origin, "top level must be an object");
    LatticePtr model = lattice_from_value(field(j, "lattice", origin), origin);

    Vec2Q offset;
    if (const auto it = j.find("offset"); it != j.end()) {
        offset = vec2q_from_json(*it, origin, "offset");
    }

    const njson& pts = field(j, "points", origin);
    if (!pts.is_array()) fail(origin, "points must be an array");
    std::vector<Vec2I> points;
    points.reserve(pts.size());
    for (const auto& p : pts) points.push_back(vec2i_from_json(p, origin, "point"));
    return LatticePointSet::make(std::move(model), offset, std::move(points));
}

std::string pointset_to_json(const LatticePointSet& pts) {
    njson j = artifact("distlat.pointset/1", "");
    j["lattice"] = lattice_to_value(pts.model());
    j["offset"] = njson::array({rat_str(pts.offset().x), rat_str(pts.offset().y)});
    njson arr = njson::array();
    for (const Vec2I p : pts.points()) arr.push_back(njson::array({p.x, p.y}));
    j["points"] = std::move(arr);
    return dump(j);
}

WindowSpecFile window_spec_from_json(const std::string& text, const std::string& origin) {
    const njson j = parse_json(text, origin);
    if (!j.is_object()) fail(origin, "top level must be an object");

    WindowSpecFile spec;
    spec.model = lattice_from_value(field(j, "lattice", origin), origin);
    spec.shape = field(j, "shape", origin).is_string()
                     ? field(j, "shape", origin).get<std::string>()
                     : "";
    if (const auto it = j.find("tau"); it != j.end()) {
        spec.tau = vec2q_from_json(*it, origin, "tau");
    }
    if (spec.shape == "disk") {
        spec.z = vec2q_from_json(field(j, "z", origin), origin, "z");
        spec.r_sq = rat_from_json(field(j, "R_sq", origin), origin, "R_sq");
    } else if (spec.shape == "rect") {
        spec.a0 = vec2i_from_json(field(j, "a0", origin), origin, "a0");
        const njson& l = field(j, "L", origin);
        if (!l.is_array() || l.size() != 2) fail(origin, "L must be a two-element array");
        spec.l1 = int_from_json(l[0], origin, "L[0]");
        spec.l2 = int_from_json(l[1], origin, "L[1]");
    } else {
        fail(origin, "shape must be \"disk\" or \"rect\"");
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Outputs.

std::string spectrum_to_csv(const DistanceSpectrum& spec, const Rat& scale,
                            const std::string& manifest_digest) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    std::ostringstream os;
    if (!manifest_digest.empty()) os << "# manifest: " << manifest_digest << "\n";
    os << "key,m,distance_sq_numer,distance_sq_denom\n";
    for (const auto& e : spec.entries) {
        const Rat d = scale * Rat(e.key);
        os << e.key << "," << e.m << "," << big_str(numerator(d)) << ","
           << big_str(denominator(d)) << "\n";
    }
    return os.str();
}

std::string spectrum_to_json(const DistanceSpectrum& spec, const LatticeModel& model,
                             const std::string& manifest_digest) {
    njson j = artifact("distlat.spectrum/1", manifest_digest);
    j["lattice"] = lattice_to_value(model);
    j["scale"] = rat_str(model.scale());
    j["n"] = spec.n;
    j["k"] = spec.k();
    j["total_mass"] = u128_str(spec.total_mass());
    njson entries = njson::array();
    for (const auto& e : spec.entries) {
        njson row;
        row["key"] = e.key;
        row["m"] = e.m;
        row["distance_sq"] = rat_str(model.scale() * Rat(e.key));
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return dump(j);
}

std::string classification_to_json(const ClassificationReport& rep,
                                   const std::string& manifest_digest) {
    njson j = artifact("distlat.classify/1", manifest_digest);
    j["outcome"] = outcome_str(rep.outcome);
    j["n"] = rep.n;
    j["k"] = rep.k;
    {
        njson c;
        c["sigma"] = rep.config.sigma;
        c["c_line"] = rep.config.c_line;
        c["c_shift"] = rep.config.c_shift;
        c["alpha_energy"] = rep.config.alpha_energy;
        c["eta_override"] = rep.config.eta_override;
        j["config"] = std::move(c);
    }
    j["theta"] = rep.theta;
    j["eta"] = rep.eta;
    j["energy"] = u128_str(rep.energy);
    j["max_line"] = rep.max_line;

    if (rep.line) {
        njson c;
        c["dir"] = njson::array({rep.line->line.dir.x, rep.line->line.dir.y});
        c["anchor"] = rep.line->line.anchor;
        c["s_line"] = rep.line->s_line;
        c["fraction"] = rep.line->fraction;
        j["line"] = std::move(c);
    }
    if (rep.two_shift) {
        const TwoShiftCertificate& t = *rep.two_shift;
        njson c;
        c["method"] = "constructive-surrogate";
        c["v1"] = njson::array({t.v1.x, t.v1.y});
        c["v2"] = njson::array({t.v2.x, t.v2.y});
        c["r1"] = t.r1;
        c["r2"] = t.r2;
        c["anchor"] = njson::array({t.anchor.x, t.anchor.y});
        c["excluded"] = t.excluded;
        c["bounding"] = rect_to_value(t.bounding);
        c["window"] = rect_to_value(t.window);
        c["n_window"] = t.n_window;
        c["density"] = rat_str(t.density);
        c["shift1"] = njson::array({t.shift1.x, t.shift1.y});
        c["shift2"] = njson::array({t.shift2.x, t.shift2.y});
        c["overlap1"] = t.overlap1;
        c["overlap2"] = t.overlap2;
        c["residue_sizes"] = njson::array(
            {t.residue_sizes[0], t.residue_sizes[1], t.residue_sizes[2], t.residue_sizes[3]});
        c["max_residue"] = t.max_residue;
        c["energy_window"] = u128_str(t.energy_window);
        c["residue_rhs"] = u128_str(t.residue_rhs);
        c["energy_residue_holds"] = t.energy_residue_holds;
        c["window_energy_gate"] = t.window_energy_gate;
        c["residue_concentration"] = t.residue_concentration;
        j["two_shift"] = std::move(c);
    }
    if (rep.localization) {
        const LocalizationCertificate& l = *rep.localization;
        njson c;
        c["z"] = njson::array({l.z.x, l.z.y});
        c["z_index"] = l.z_index;
        c["t_star_key"] = l.t_star_key;
        c["ball_count"] = l.ball_count;
        c["required"] = l.required;
        j["localization"] = std::move(c);
    }
    j["diagnostics"] = rep.diagnostics;
    return dump(j);
}

std::string covering_to_json(const CoveringReport& rep, const std::string& manifest_digest) {
    njson j = artifact("distlat.covering/1", manifest_digest);
    j["guaranteed_key_bound"] = i128_str(rep.guaranteed_key_bound);
    j["diameter_key_bound"] = i128_str(rep.diameter_key_bound);
    j["largest_covered_key"] = i128_str(rep.largest_covered_key);
    j["vectors_checked"] = rep.vectors_checked;
    j["guarantee_holds"] = rep.guarantee_holds;
    return dump(j);
}

std::string window_report_to_json(const DiskWindow& w, const DistanceSpectrum& spec,
                                  const std::string& manifest_digest) {
    njson j = artifact("distlat.window/1", manifest_digest);
    j["window"] = window_summary_value(w);
    njson s;
    s["n"] = spec.n;
    s["k"] = spec.k();
    s["total_mass"] = u128_str(spec.total_mass());
    if (!spec.entries.empty()) {
        s["min_key"] = spec.entries.front().key;
        s["max_key"] = spec.entries.back().key;
    }
    j["spectrum"] = std::move(s);
    return dump(j);
}

std::string witness_to_json(const ExtremalWitness& wit, const std::string& lattice_label,
                            const std::string& manifest_digest) {
    njson j = artifact("distlat.witness/1", manifest_digest);
    j["lattice"] = lattice_label;
    j["k_target"] = wit.k_target;
    j["n"] = wit.n;
    j["k_actual"] = wit.k_actual;
    j["key_ceiling"] = wit.key_ceiling;
    j["R_sq"] = rat_str(wit.r_sq);
    j["next_k"] = wit.next_k;
    j["maximal"] = wit.maximal;
    j["ratio_n"] = wit.ratio_n;
    j["ratio_pred_a"] = wit.pred_a;
    j["ratio_pred_b"] = wit.pred_b;
    j["window"] = window_summary_value(wit.window);
    return dump(j);
}

std::string lower_bound_table_to_csv(const LowerBoundTable& table,
                                     const std::string& manifest_digest) {
    std::ostringstream os;
    if (!manifest_digest.empty()) os << "# manifest: " << manifest_digest << "\n";
    os << "k,n,k_actual,R_sq,ratio_n,ratio_pred_a,ratio_pred_b\n";
    for (const auto& r : table.rows) {
        os << r.k << "," << r.n << "," << r.k_actual << "," << fmt_double(r.r_sq_realized) << ","
           << fmt_double(r.ratio_n) << "," << fmt_double(r.ratio_pred_a) << ","
           << fmt_double(r.ratio_pred_b) << "\n";
    }
    return os.str();
}

std::string bernays_to_json(const BernaysEstimate& est, const QuadForm& form,
                            const std::string& manifest_digest) {
    njson j = artifact("distlat.bernays/1", manifest_digest);
    j["form"] = form.str();
    j["grid"] = est.grid;
    j["counts"] = est.counts;
    j["estimates"] = est.estimates;
    j["c_fit"] = est.c_fit;
    j["b_fit"] = est.b_fit;
    j["rss"] = est.rss;
    j["extrapolated"] = est.extrapolated;
    j["low_confidence"] = est.low_confidence;
    return dump(j);
}

std::string verify_results_to_json(std::span<const SuiteResult> results,
                                   const std::string& manifest_digest) {
    njson j = artifact("distlat.verify/1", manifest_digest);
    bool all_passed = true;
    std::uint64_t theorem_failures = 0;
    njson arr = njson::array();
    for (const auto& res : results) {
        // Wall-clock seconds stay out of the artifact: a rerun with the same
        // manifest must reproduce these bytes exactly.
        njson row;
        row["tag"] = res.tag;
        row["title"] = res.title;
        row["kind"] = suite_kind_str(res.kind);
        row["checks"] = res.checks;
        row["failures"] = res.failures;
        row["passed"] = res.passed;
        row["statistic"] = res.statistic;
        row["detail"] = res.detail;
        arr.push_back(std::move(row));
        all_passed = all_passed && res.passed;
        if (res.kind == SuiteKind::Theorem) theorem_failures += res.failures;
    }
    j["results"] = std::move(arr);
    j["all_passed"] = all_passed;
    j["theorem_failures"] = theorem_failures;
    return dump(j);
}

// ---------------------------------------------------------------------------
// Manifest and file plumbing.

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (const char ch : data) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string hex_digest(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

std::string RunManifest::digest() const {
    std::string canon = version + "\n";
    for (const auto& [k, v] : config) canon += k + "=" + v + "\n";
    for (const auto& [path, dig] : inputs) canon += path + "=" + dig + "\n";
    return hex_digest(fnv1a64(canon));
}

std::string RunManifest::to_json() const {
    njson j = artifact("distlat.manifest/1", "");
    j["command"] = command;
    njson cfg;
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = std::move(cfg);
    njson ins = njson::array();
    for (const auto& [path, dig] : inputs) {
        njson row;
        row["path"] = path;
        row["digest"] = dig;
        ins.push_back(std::move(row));
    }
    j["inputs"] = std::move(ins);
    j["version"] = version;
    j["wall_seconds"] = wall_seconds;
    j["outputs"] = outputs;
    j["digest"] = digest();
    return dump(j);
}

std::string file_digest(const std::string& path) {
    return hex_digest(fnv1a64(read_text_file(path)));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw io_error("read failed: " + path);
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << text;
    out.flush();
    if (!out) throw io_error("write failed: " + path);
}

const char* library_version() { return "distlat 0.1.0"; }

} // namespace distlat
