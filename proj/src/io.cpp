#include "om/io.hpp"

#include "om/errors.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <utility>

namespace om {
namespace {

constexpr const char* kToolName = "orbit-metrics";
constexpr const char* kToolVersion = "0.1.0";

// ---------------------------------------------------------------- helpers --

[[noreturn]] void bad(const std::string& message, const std::string& where) {
    fail(errc::schema_violation, message, where);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        bad(std::string("missing required key \"") + key + '"', where);
    return j.at(key);
}

void expect_object(const Json& j, const std::string& where) {
    if (!j.is_object()) bad("expected an object", where);
}

void expect_array(const Json& j, const std::string& where) {
    if (!j.is_array()) bad("expected an array", where);
}

double as_double(const Json& j, const std::string& where) {
    if (!j.is_number()) bad("expected a number", where);
    return j.get<double>();
}

Int as_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) bad("expected an integer", where);
    return j.get<Int>();
}

std::size_t as_index(const Json& j, const std::string& where) {
    const Int v = as_int(j, where);
    if (v < 0) bad("expected a nonnegative integer", where);
    return static_cast<std::size_t>(v);
}

bool as_bool(const Json& j, const std::string& where) {
    if (!j.is_boolean()) bad("expected a boolean", where);
    return j.get<bool>();
}

std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) bad("expected a string", where);
    return j.get<std::string>();
}

Rat as_rat(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<Int>());
    if (j.is_string()) {
        try {
            return rat_from_string(j.get<std::string>());
        } catch (const error& e) {
            bad(e.what(), where);
        }
    }
    bad("expected an integer or a \"p/q\" string", where);
}

std::vector<Int> as_int_vector(const Json& j, const std::string& where) {
    expect_array(j, where);
    std::vector<Int> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) {
                ok = true;
                break;
            }
        if (!ok) bad("unknown key \"" + item.key() + '"', where);
    }
}

// ------------------------------------------------------------------ parse --

PlanarPoint parse_point(const Json& j, const std::string& where) {
    expect_array(j, where);
    if (j.size() != 2) bad("a point is a [re, im] pair", where);
    return PlanarPoint{as_double(j[0], where + "[0]"), as_double(j[1], where + "[1]")};
}

GroupElement parse_element(const Json& j, const std::string& where) {
    expect_object(j, where);
    reject_unknown_keys(j, {"free", "torsion", "stage"}, where);
    GroupElement g;
    g.free = as_int_vector(require(j, "free", where), where + ".free");
    if (j.contains("torsion")) g.torsion = as_int_vector(j.at("torsion"), where + ".torsion");
    if (j.contains("stage")) {
        const std::size_t s = as_index(j.at("stage"), where + ".stage");
        if (s == 0) bad("stages are numbered from 1", where + ".stage");
        g.stage = s;
    }
    return g;
}

GroupSpec parse_group(const Json& j, const std::string& where) {
    expect_object(j, where);
    const std::string kind = as_string(require(j, "kind", where), where + ".kind");
    GroupSpec spec;
    if (kind == "simplicial") {
        reject_unknown_keys(j, {"kind", "k"}, where);
        SimplicialSpec s;
        s.k = as_index(require(j, "k", where), where + ".k");
        spec.presentation = s;
    } else if (kind == "torsion") {
        reject_unknown_keys(j, {"kind", "k", "orders"}, where);
        TorsionSpec s;
        s.k = as_index(require(j, "k", where), where + ".k");
        s.orders = as_int_vector(require(j, "orders", where), where + ".orders");
        spec.presentation = s;
    } else if (kind == "bratteli") {
        reject_unknown_keys(j, {"kind", "maps", "stage_cap"}, where);
        BratteliSpec s;
        const Json& maps = require(j, "maps", where);
        expect_array(maps, where + ".maps");
        for (std::size_t t = 0; t < maps.size(); ++t) {
            const std::string mw = where + ".maps[" + std::to_string(t) + "]";
            expect_array(maps[t], mw);
            std::vector<std::vector<Int>> m;
            for (std::size_t r = 0; r < maps[t].size(); ++r)
                m.push_back(as_int_vector(maps[t][r], mw + "[" + std::to_string(r) + "]"));
            s.maps.push_back(std::move(m));
        }
        s.stage_cap = as_index(require(j, "stage_cap", where), where + ".stage_cap");
        spec.presentation = s;
    } else {
        bad("group kind must be \"simplicial\", \"torsion\" or \"bratteli\"", where + ".kind");
    }
    spec.validate();
    return spec;
}

ModelSpec parse_model(const Json& j, const std::string& where) {
    expect_object(j, where);
    reject_unknown_keys(j, {"traces", "group", "unit", "pairing", "simple"}, where);
    ModelSpec model;
    model.group = parse_group(require(j, "group", where), where + ".group");
    if (j.contains("traces")) model.trace_count = as_index(j.at("traces"), where + ".traces");
    model.unit = parse_element(require(j, "unit", where), where + ".unit");
    const Json& pairing = require(j, "pairing", where);
    expect_array(pairing, where + ".pairing");
    for (std::size_t r = 0; r < pairing.size(); ++r) {
        const std::string rw = where + ".pairing[" + std::to_string(r) + "]";
        expect_array(pairing[r], rw);
        std::vector<Rat> row;
        for (std::size_t c = 0; c < pairing[r].size(); ++c)
            row.push_back(as_rat(pairing[r][c], rw + "[" + std::to_string(c) + "]"));
        model.pairing.push_back(std::move(row));
    }
    if (j.contains("simple")) model.simple = as_bool(j.at("simple"), where + ".simple");
    model.validate();
    return model;
}

std::vector<Atom> parse_atoms(const Json& j, const std::string& where) {
    expect_array(j, where);
    if (j.empty()) fail(errc::empty_input, "atom list is empty", where);
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string aw = where + "[" + std::to_string(i) + "]";
        expect_object(j[i], aw);
        reject_unknown_keys(j[i], {"point", "class"}, aw);
        Atom a;
        a.point = parse_point(require(j[i], "point", aw), aw + ".point");
        a.cls = parse_element(require(j[i], "class", aw), aw + ".class");
        atoms.push_back(std::move(a));
    }
    return atoms;
}

CMatrix parse_matrix(const Json& j, const std::string& where) {
    expect_array(j, where);
    const std::size_t n = j.size();
    if (n == 0) fail(errc::empty_input, "matrix is empty", where);
    CMatrix M(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const std::string rw = where + "[" + std::to_string(r) + "]";
        expect_array(j[r], rw);
        if (j[r].size() != n) bad("matrix rows must form a square", rw);
        for (std::size_t c = 0; c < n; ++c) {
            const PlanarPoint e = parse_point(j[r][c], rw + "[" + std::to_string(c) + "]");
            M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                std::complex<double>(e.re, e.im);
        }
    }
    return M;
}

void parse_side(const Json& j, const std::string& where, std::vector<Atom>& atoms,
                std::optional<CMatrix>& matrix) {
    expect_object(j, where);
    reject_unknown_keys(j, {"atoms", "matrix"}, where);
    const bool has_atoms = j.contains("atoms");
    const bool has_matrix = j.contains("matrix");
    if (has_atoms == has_matrix)
        bad("exactly one of \"atoms\" and \"matrix\" is required", where);
    if (has_atoms)
        atoms = parse_atoms(j.at("atoms"), where + ".atoms");
    else
        matrix = parse_matrix(j.at("matrix"), where + ".matrix");
}

Options parse_options(const Json& j, const std::string& where) {
    expect_object(j, where);
    reject_unknown_keys(j,
                        {"grid_pitch", "tol", "seed", "budget", "exact_discs", "C",
                         "cluster_tol", "normal_tol"},
                        where);
    Options o;
    if (j.contains("grid_pitch")) o.grid_pitch = as_double(j.at("grid_pitch"), where + ".grid_pitch");
    if (j.contains("tol")) o.tol = as_double(j.at("tol"), where + ".tol");
    if (j.contains("seed")) {
        const Int s = as_int(j.at("seed"), where + ".seed");
        if (s < 0) bad("seed must be nonnegative", where + ".seed");
        o.seed = static_cast<std::uint64_t>(s);
    }
    if (j.contains("budget")) {
        const Int b = as_int(j.at("budget"), where + ".budget");
        if (b < 1) fail(errc::invalid_option, "budget must be at least 1", where + ".budget");
        if (b > 100000) fail(errc::invalid_option, "budget is out of range", where + ".budget");
        o.budget = static_cast<int>(b);
    }
    if (j.contains("exact_discs")) o.exact_discs = as_bool(j.at("exact_discs"), where + ".exact_discs");
    if (j.contains("C")) o.C = as_double(j.at("C"), where + ".C");
    if (j.contains("cluster_tol")) o.cluster_tol = as_double(j.at("cluster_tol"), where + ".cluster_tol");
    if (j.contains("normal_tol")) o.normal_tol = as_double(j.at("normal_tol"), where + ".normal_tol");
    if (!(o.grid_pitch > 0.0) || !std::isfinite(o.grid_pitch))
        fail(errc::invalid_pitch, "grid pitch must be positive and finite", where);
    if (!(o.tol >= 0.0) || !std::isfinite(o.tol))
        fail(errc::invalid_option, "tolerance must be nonnegative and finite", where);
    if (!(o.C > 0.0) || o.C > 1.0)
        fail(errc::invalid_option, "C must lie in (0, 1]", where);
    return o;
}

K1Labels parse_labels(const Json& j, const std::string& where) {
    expect_object(j, where);
    K1Labels labels;
    for (const auto& item : j.items()) {
        const std::string lw = where + "." + item.key();
        expect_object(item.value(), lw);
        reject_unknown_keys(item.value(), {"x", "y"}, lw);
        std::vector<Int> lx = as_int_vector(require(item.value(), "x", lw), lw + ".x");
        std::vector<Int> ly = as_int_vector(require(item.value(), "y", lw), lw + ".y");
        if (lx.size() != ly.size())
            bad("the two label vectors must have equal length", lw);
        labels.emplace(item.key(), std::make_pair(std::move(lx), std::move(ly)));
    }
    return labels;
}

} // namespace

Options merge_options(Options base, const OptionOverrides& over) {
    if (over.grid_pitch) {
        if (!(*over.grid_pitch > 0.0) || !std::isfinite(*over.grid_pitch))
            fail(errc::invalid_pitch, "grid pitch must be positive and finite", "--grid-pitch");
        base.grid_pitch = *over.grid_pitch;
        base.pitch_from_cli = true;
    }
    if (over.tol) {
        if (!(*over.tol >= 0.0) || !std::isfinite(*over.tol))
            fail(errc::invalid_option, "tolerance must be nonnegative and finite", "--tol");
        base.tol = *over.tol;
    }
    if (over.seed) base.seed = *over.seed;
    if (over.budget) {
        if (*over.budget < 1) fail(errc::invalid_option, "budget must be at least 1", "--budget");
        base.budget = *over.budget;
    }
    if (over.exact_discs) base.exact_discs = *over.exact_discs;
    return base;
}

Instance parse_instance(const Json& j) {
    expect_object(j, "instance");
    reject_unknown_keys(
        j, {"description", "model", "x", "y", "relation", "order", "k1", "options", "expected"},
        "instance");
    Instance inst;
    if (j.contains("description"))
        inst.description = as_string(j.at("description"), "description");
    if (j.contains("model")) inst.model = parse_model(j.at("model"), "model");
    parse_side(require(j, "x", "instance"), "x", inst.x_atoms, inst.x_matrix);
    parse_side(require(j, "y", "instance"), "y", inst.y_atoms, inst.y_matrix);
    if (j.contains("relation")) {
        const Json& rel = j.at("relation");
        expect_array(rel, "relation");
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < rel.size(); ++i) {
            const std::string rw = "relation[" + std::to_string(i) + "]";
            expect_array(rel[i], rw);
            if (rel[i].size() != 2) bad("a relation entry is an [i, j] pair", rw);
            pairs.emplace_back(as_index(rel[i][0], rw + "[0]"), as_index(rel[i][1], rw + "[1]"));
        }
        inst.relation = std::move(pairs);
    }
    if (j.contains("order")) {
        const std::string o = as_string(j.at("order"), "order");
        if (o == "group")
            inst.order = WeightOrder::Group;
        else if (o == "trace")
            inst.order = WeightOrder::Trace;
        else
            bad("order must be \"group\" or \"trace\"", "order");
    }
    if (j.contains("k1")) {
        const Json& k1 = j.at("k1");
        expect_object(k1, "k1");
        reject_unknown_keys(k1, {"h", "labels"}, "k1");
        if (k1.contains("h")) {
            const double h = as_double(k1.at("h"), "k1.h");
            if (!(h > 0.0) || !std::isfinite(h))
                fail(errc::invalid_pitch, "wall radius must be positive and finite", "k1.h");
            inst.k1_h = h;
        }
        if (k1.contains("labels")) inst.k1_labels = parse_labels(k1.at("labels"), "k1.labels");
    }
    if (j.contains("options")) inst.options = parse_options(j.at("options"), "options");
    if (j.contains("expected")) inst.expected = j.at("expected");
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::invalid_option, "cannot open input file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::schema_violation, std::string("input is not valid JSON: ") + e.what(), path);
    }
    return parse_instance(j);
}

// -------------------------------------------------------------- serialize --

Json double_to_json(double v) {
    if (std::isnan(v)) fail(errc::invariant_violation, "attempted to report a NaN value");
    if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
    return Json(v);
}

Json element_to_json(const GroupElement& g) {
    Json j;
    j["free"] = g.free;
    if (!g.torsion.empty()) j["torsion"] = g.torsion;
    if (g.stage != 1) j["stage"] = g.stage;
    return j;
}

Json plan_to_json(const TransportPlan& plan) {
    Json j;
    j["order"] = plan.order == WeightOrder::Group ? "group" : "trace";
    j["rows"] = plan.rows;
    j["cols"] = plan.cols;
    if (plan.stage != 1) j["stage"] = plan.stage;
    Json entries = Json::array();
    for (const PlanEntry& e : plan.entries) {
        Json ej;
        ej["row"] = e.i;
        ej["col"] = e.j;
        if (plan.order == WeightOrder::Group) {
            ej["class"] = element_to_json(e.cls);
            if (!e.lifted.empty()) {
                Json lifted = Json::array();
                for (const BigInt& v : e.lifted) lifted.push_back(v.str());
                ej["lifted"] = std::move(lifted);
            }
        } else {
            Json mass = Json::array();
            for (const Rat& r : e.mass.coords) mass.push_back(rat_to_string(r));
            ej["mass"] = std::move(mass);
        }
        entries.push_back(std::move(ej));
    }
    j["entries"] = std::move(entries);
    return j;
}

Json certificate_to_json(const HallCertificate& cert) {
    Json j;
    j["feasible"] = cert.feasible;
    if (!cert.feasible) {
        j["violating"] = cert.violating;
        Json def = Json::array();
        for (const Rat& r : cert.deficiency) def.push_back(rat_to_string(r));
        j["deficiency"] = std::move(def);
        j["coordinates"] = cert.coordinates;
    }
    j["stage"] = cert.decided_stage;
    return j;
}

Json metrics_to_json(const MetricReport& m) {
    Json j;
    j["D_T"] = double_to_json(m.D_T);
    j["D_c"] = double_to_json(m.D_c);
    j["D_upper"] = double_to_json(m.D_upper);
    j["d_T"] = double_to_json(m.d_T);
    j["d_c"] = double_to_json(m.d_c);
    j["hausdorff"] = double_to_json(m.hausdorff);
    Json dce;
    dce["lower"] = double_to_json(m.dce.lower);
    dce["upper"] = double_to_json(m.dce.upper);
    dce["exact"] = m.dce.exact;
    dce["reason"] = m.dce.reason;
    j["dce"] = std::move(dce);
    j["grid_pitch"] = m.grid_pitch;
    j["disc_error"] = m.disc_error;
    j["exact_discs"] = m.exact_discs;
    return j;
}

namespace {

Json matrix_to_json(const CMatrix& M) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < M.cols(); ++c)
            row.push_back(Json::array({M(r, c).real(), M(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json rho_to_json(const RhoValues& r) {
    Json j;
    j["rho_x"] = r.rho_x;
    j["rho_y"] = r.rho_y;
    j["rho_1"] = r.rho_1;
    j["rho"] = r.rho;
    j["grid_error"] = r.grid_error;
    return j;
}

Json interval_to_json(const Interval& iv) {
    Json j;
    j["lower"] = double_to_json(iv.lower);
    j["upper"] = double_to_json(iv.upper);
    return j;
}

Json provenance_json(const Options& opts) {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["seed"] = opts.seed;
    j["grid_pitch"] = opts.grid_pitch;
    j["tol"] = opts.tol;
    j["budget"] = opts.budget;
    j["exact_discs"] = opts.exact_discs;
    return j;
}

// ----------------------------------------------------------------- run -----

struct ResolvedPair {
    AtomicHom x, y;
    ModelSpec model;
};

SpectralOptions spectral_options(const Options& opts) {
    return SpectralOptions{opts.normal_tol, opts.cluster_tol};
}

ResolvedPair resolve_pair(const Instance& inst, const Options& opts) {
    const bool mx = inst.x_matrix.has_value();
    const bool my = inst.y_matrix.has_value();
    if (mx != my)
        fail(errc::schema_violation, "x and y must both be atomic or both be matrices");
    if (mx) {
        if (inst.model)
            fail(errc::schema_violation, "matrix instances derive their model; omit \"model\"");
        if (inst.x_matrix->rows() != inst.y_matrix->rows())
            fail(errc::dimension_mismatch, "matrix pair must share one dimension");
        SpectralData sx = eigen_normal(*inst.x_matrix, spectral_options(opts));
        SpectralData sy = eigen_normal(*inst.y_matrix, spectral_options(opts));
        return ResolvedPair{std::move(sx.atoms), std::move(sy.atoms), std::move(sx.model)};
    }
    if (!inst.model)
        fail(errc::schema_violation, "atomic instances need a \"model\"");
    return ResolvedPair{AtomicHom::make(inst.x_atoms, *inst.model),
                        AtomicHom::make(inst.y_atoms, *inst.model), *inst.model};
}

const CMatrix& matrix_input(const std::optional<CMatrix>& m, const char* side) {
    if (!m)
        fail(errc::schema_violation,
             std::string("this command needs matrix inputs; \"") + side + "\" is atomic");
    return *m;
}

double wall_radius(const Instance& inst, const Options& opts) {
    if (opts.pitch_from_cli) return opts.grid_pitch;
    return inst.k1_h.value_or(opts.grid_pitch);
}

Json certificates_json(const BottleneckResult& trace, const BottleneckResult& group) {
    auto one = [](const BottleneckResult& b) {
        Json j;
        j["radius"] = double_to_json(b.radius);
        j["plan"] = plan_to_json(b.plan);
        j["tight"] = b.tight ? certificate_to_json(*b.tight) : Json(nullptr);
        return j;
    };
    Json j;
    j["trace"] = one(trace);
    j["group"] = one(group);
    return j;
}

Json run_metrics(const Instance& inst, const Options& opts) {
    ResolvedPair rp = resolve_pair(inst, opts);
    const MetricReport m = compute_metrics(rp.x, rp.y, rp.model,
                                           DiscSettings{opts.grid_pitch, opts.exact_discs},
                                           opts.tol);
    const BottleneckResult bt = bottleneck(rp.x, rp.y, rp.model, WeightOrder::Trace);
    const BottleneckResult bg = bottleneck(rp.x, rp.y, rp.model, WeightOrder::Group);
    Json j;
    j["command"] = "metrics";
    if (!inst.description.empty()) j["description"] = inst.description;
    j["metrics"] = metrics_to_json(m);
    j["certificates"] = certificates_json(bt, bg);
    j["provenance"] = provenance_json(opts);
    return j;
}

Json run_refine(const Instance& inst, const Options& opts) {
    if (!inst.relation)
        fail(errc::invalid_option, "refine needs a \"relation\" in the instance");
    ResolvedPair rp = resolve_pair(inst, opts);
    const PairRelation R =
        PairRelation::from_pairs(rp.x.size(), rp.y.size(), *inst.relation);

    RefineResult res = inst.order == WeightOrder::Group
                           ? refine(rp.x.classes(), rp.y.classes(), R, rp.model.group)
                           : [&] {
                                 std::vector<TraceWeight> a, b;
                                 for (std::size_t i = 0; i < rp.x.size(); ++i)
                                     a.push_back(rp.x.mass_of(i));
                                 for (std::size_t jj = 0; jj < rp.y.size(); ++jj)
                                     b.push_back(rp.y.mass_of(jj));
                                 return refine_trace(a, b, R);
                             }();

    Json j;
    j["command"] = "refine";
    if (!inst.description.empty()) j["description"] = inst.description;
    j["order"] = inst.order == WeightOrder::Group ? "group" : "trace";
    j["feasible"] = res.certificate.feasible;
    if (res.plan) {
        j["plan"] = plan_to_json(*res.plan);
        j["verified"] = true;
    } else {
        j["certificate"] = certificate_to_json(res.certificate);
    }
    j["provenance"] = provenance_json(opts);
    return j;
}

Json run_unitary(const Instance& inst, const Options& opts) {
    const CMatrix& x = matrix_input(inst.x_matrix, "x");
    const CMatrix& y = matrix_input(inst.y_matrix, "y");
    UnitaryCertificate cu = construct_unitary(x, y, spectral_options(opts));
    Json j;
    j["command"] = "unitary";
    if (!inst.description.empty()) j["description"] = inst.description;
    j["radius"] = double_to_json(cu.radius);
    j["plan_bottleneck"] = cu.plan_bottleneck;
    j["achieved"] = cu.achieved;
    j["plan"] = plan_to_json(cu.plan);
    j["unitary"] = matrix_to_json(cu.U);
    j["provenance"] = provenance_json(opts);
    return j;
}

Json components_json(const ComponentGrid& grid) {
    Json arr = Json::array();
    for (const auto& comp : grid.components) {
        Json c;
        c["id"] = comp.id;
        c["bounded"] = comp.bounded;
        c["cells"] = comp.cells.size();
        const PlanarPoint rep = grid.cell_centre(comp.representative);
        c["representative"] = Json::array({rep.re, rep.im});
        arr.push_back(std::move(c));
    }
    return arr;
}

Json run_k1(const Instance& inst, const Options& opts) {
    ResolvedPair rp = resolve_pair(inst, opts);
    const double h = wall_radius(inst, opts);
    const ComponentGrid grid = complement_components(rp.x.support(), rp.y.support(), h);
    Json j;
    j["command"] = "k1";
    if (!inst.description.empty()) j["description"] = inst.description;
    j["h"] = h;
    Json g;
    g["pitch"] = grid.pitch;
    g["origin"] = Json::array({grid.x0, grid.y0});
    g["cells"] = Json::array({grid.nx, grid.ny});
    j["grid"] = std::move(g);
    j["components"] = components_json(grid);
    if (!inst.k1_labels.empty())
        j["rho"] = rho_to_json(rho_bounds(grid, inst.k1_labels, rp.x.support(), rp.y.support()));
    else
        j["rho"] = nullptr;
    j["provenance"] = provenance_json(opts);
    return j;
}

Json run_bounds(const Instance& inst, const Options& opts) {
    ResolvedPair rp = resolve_pair(inst, opts);
    const MetricReport m = compute_metrics(rp.x, rp.y, rp.model,
                                           DiscSettings{opts.grid_pitch, opts.exact_discs},
                                           opts.tol);
    const BottleneckResult bt = bottleneck(rp.x, rp.y, rp.model, WeightOrder::Trace);
    const BottleneckResult bg = bottleneck(rp.x, rp.y, rp.model, WeightOrder::Group);

    Json j;
    j["command"] = "bounds";
    if (!inst.description.empty()) j["description"] = inst.description;
    j["metrics"] = metrics_to_json(m);
    j["certificates"] = certificates_json(bt, bg);
    if (!inst.k1_labels.empty()) {
        const double h = wall_radius(inst, opts);
        const ComponentGrid grid = complement_components(rp.x.support(), rp.y.support(), h);
        const RhoValues rho = rho_bounds(grid, inst.k1_labels, rp.x.support(), rp.y.support());
        const PairBounds pb = mt2_bounds(m, rho.rho_x, rho.rho_y);
        const Interval iv = mt3_interval(m, rho, opts.C, opts.tol);
        j["rho"] = rho_to_json(rho);
        Json pbj;
        pbj["D1"] = double_to_json(pb.D1);
        pbj["D2"] = Json{{"lower", double_to_json(pb.D2_lower)},
                         {"upper", double_to_json(pb.D2_upper)}};
        j["pair_bounds"] = std::move(pbj);
        j["interval"] = interval_to_json(iv);
    } else {
        j["rho"] = nullptr;
        j["pair_bounds"] = nullptr;
        j["interval"] = nullptr;
    }
    j["provenance"] = provenance_json(opts);
    return j;
}

Json run_audit(const Instance& inst, const Options& opts) {
    const CMatrix& x = matrix_input(inst.x_matrix, "x");
    const CMatrix& y = matrix_input(inst.y_matrix, "y");

    std::optional<RhoValues> rho;
    if (!inst.k1_labels.empty()) {
        ResolvedPair rp = resolve_pair(inst, opts);
        const double h = wall_radius(inst, opts);
        const ComponentGrid grid = complement_components(rp.x.support(), rp.y.support(), h);
        rho = rho_bounds(grid, inst.k1_labels, rp.x.support(), rp.y.support());
    }

    AuditOptions ao;
    ao.discs = DiscSettings{opts.grid_pitch, opts.exact_discs};
    ao.tol = opts.tol;
    ao.C = opts.C;
    ao.estimate = EstimateOptions{opts.seed, opts.budget, spectral_options(opts)};
    const AuditReport rep = audit_bounds(x, y, ao, rho);

    Json j;
    j["command"] = "audit";
    if (!inst.description.empty()) j["description"] = inst.description;
    j["metrics"] = metrics_to_json(rep.metrics);
    j["radius"] = double_to_json(rep.radius);
    j["plan_bottleneck"] = rep.plan_bottleneck;
    j["achieved"] = rep.achieved;
    j["estimate"] = rep.estimate;
    j["rho"] = rep.rho ? rho_to_json(*rep.rho) : Json(nullptr);
    j["interval"] = rep.interval ? interval_to_json(*rep.interval) : Json(nullptr);
    Json checks = Json::array();
    for (const AuditCheck& c : rep.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["lhs"] = double_to_json(c.lhs);
        cj["rhs"] = double_to_json(c.rhs);
        cj["pass"] = c.pass;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["pass"] = rep.pass;
    j["provenance"] = provenance_json(opts);
    return j;
}

} // namespace

Json run_command(const std::string& command, const Instance& inst, const Options& opts) {
    if (command == "metrics") return run_metrics(inst, opts);
    if (command == "refine") return run_refine(inst, opts);
    if (command == "unitary") return run_unitary(inst, opts);
    if (command == "k1") return run_k1(inst, opts);
    if (command == "bounds") return run_bounds(inst, opts);
    if (command == "audit") return run_audit(inst, opts);
    fail(errc::invalid_option, "unknown command \"" + command + '"');
}

// ---------------------------------------------------------------- selftest --

namespace {

const Json* resolve_path(const Json& root, const std::string& path) {
    const Json* cur = &root;
    std::size_t pos = 0;
    while (pos <= path.size()) {
        const std::size_t dot = path.find('.', pos);
        const std::string seg =
            path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (seg.empty()) return nullptr;
        if (cur->is_object()) {
            if (!cur->contains(seg)) return nullptr;
            cur = &cur->at(seg);
        } else if (cur->is_array()) {
            if (seg.find_first_not_of("0123456789") != std::string::npos) return nullptr;
            const std::size_t idx = std::stoul(seg);
            if (idx >= cur->size()) return nullptr;
            cur = &(*cur)[idx];
        } else {
            return nullptr;
        }
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return cur;
}

bool expected_match(const Json& want, const Json& got) {
    // [target, tol] asks for numeric closeness; everything else is exact.
    if (want.is_array() && want.size() == 2 && want[0].is_number() && want[1].is_number()) {
        if (!got.is_number()) return false;
        return std::abs(got.get<double>() - want[0].get<double>()) <= want[1].get<double>();
    }
    return want == got;
}

} // namespace

Json run_selftest(const std::string& corpus_dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(corpus_dir))
        fail(errc::invalid_option, "corpus directory not found: " + corpus_dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(corpus_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    if (files.empty()) fail(errc::empty_input, "corpus has no instances: " + corpus_dir);

    Json cases = Json::array();
    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const fs::path& file : files) {
        Json c;
        c["file"] = file.filename().string();
        Instance inst;
        try {
            inst = load_instance(file.string());
        } catch (const error& e) {
            c["status"] = "failed";
            c["error"] = std::string(errc_name(e.code())) + ": " + e.what();
            ++failed;
            cases.push_back(std::move(c));
            continue;
        }
        if (inst.expected.is_null()) {
            c["status"] = "skipped";
            ++skipped;
            cases.push_back(std::move(c));
            continue;
        }

        std::string cmd;
        try {
            cmd = as_string(require(inst.expected, "command", "expected"), "expected.command");
            c["command"] = cmd;
            if (inst.expected.contains("error")) {
                const std::string want_code =
                    as_string(inst.expected.at("error"), "expected.error");
                bool ok = false;
                std::string detail;
                try {
                    run_command(cmd, inst, inst.options);
                    detail = "expected error \"" + want_code + "\" but the command succeeded";
                } catch (const error& e) {
                    ok = errc_name(e.code()) == want_code;
                    if (!ok)
                        detail = "expected error \"" + want_code + "\" but got \"" +
                                 errc_name(e.code()) + "\"";
                }
                c["status"] = ok ? "passed" : "failed";
                if (!ok) c["detail"] = detail;
                ok ? ++passed : ++failed;
                cases.push_back(std::move(c));
                continue;
            }

            const Json report = run_command(cmd, inst, inst.options);
            const Json& values = require(inst.expected, "values", "expected");
            expect_object(values, "expected.values");
            Json checks = Json::array();
            bool all = true;
            for (const auto& item : values.items()) {
                const Json* got = resolve_path(report, item.key());
                const bool ok = got != nullptr && expected_match(item.value(), *got);
                Json chk;
                chk["path"] = item.key();
                chk["want"] = item.value();
                chk["got"] = got ? *got : Json("missing");
                chk["pass"] = ok;
                checks.push_back(std::move(chk));
                all = all && ok;
            }
            c["checks"] = std::move(checks);
            c["status"] = all ? "passed" : "failed";
            all ? ++passed : ++failed;
        } catch (const error& e) {
            c["status"] = "failed";
            c["error"] = std::string(errc_name(e.code())) + ": " + e.what();
            ++failed;
        }
        cases.push_back(std::move(c));
    }

    Json out;
    out["command"] = "selftest";
    out["corpus"] = corpus_dir;
    out["cases"] = std::move(cases);
    out["passed"] = passed;
    out["failed"] = failed;
    out["skipped"] = skipped;
    out["pass"] = failed == 0 && passed > 0;
    return out;
}

bool report_pass(const Json& report) {
    return !(report.is_object() && report.contains("pass") && report.at("pass").is_boolean() &&
             !report.at("pass").get<bool>());
}

} // namespace om
