#include "symcartan/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace symcartan {

namespace {

Rational rational_field(const Json& j, const char* key)
{
    if (!j.contains(key)) return 0;
    const auto& v = j.at(key);
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw FormatError(std::string("field '") + key + "' must be a rational string");
}

template <class T>
T required(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw FormatError(std::string("field '") + key + "' has the wrong type");
    }
}

}  // namespace

Json algebra_to_json(const AlgebraDescriptor& alg)
{
    Json j;
    j["name"] = std::string(to_string(alg.name));
    j["dim"] = alg.dim();
    j["dim_h"] = alg.dim_h();
    j["matrix_dim"] = alg.matrix_dim;
    j["spacetime_dim"] = alg.spacetime_dim;
    j["lambda_sign"] = alg.lambda_sign;
    j["metric"] = alg.metric;
    j["labels"] = alg.labels;
    Json basis = Json::array();
    for (const auto& m : alg.basis) {
        Json rows = Json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
            rows.push_back(row);
        }
        basis.push_back(rows);
    }
    j["basis"] = basis;
    Json terms = Json::array();
    for (const auto& t : alg.structure_terms()) terms.push_back(Json::array({t.a, t.b, t.c, to_string(t.value)}));
    j["structure_constants"] = terms;
    if (alg.has_star()) j["star_square"] = alg.star_square();
    return j;
}

// ---------------------------------------------------------------------------

const LieForm* FieldFile::find(std::string_view name) const
{
    for (const auto& f : forms)
        if (f.name == name) return &f.form;
    return nullptr;
}

const LieForm& FieldFile::get(std::string_view name) const
{
    if (const auto* f = find(name)) return *f;
    throw FormatError("field file has no form named '" + std::string(name) + "'");
}

Json form_to_json(const NamedForm& f)
{
    const auto& form = f.form;
    const int n = form.torus_dim();
    Json comps = Json::array();
    const auto& masks = multi_indices(n, form.degree());
    for (int a = 0; a < form.algebra()->dim(); ++a)
        for (std::size_t i = 0; i < masks.size(); ++i) {
            const auto& poly = form.part(a)[i];
            if (poly.is_zero()) continue;
            Json coeffs = Json::array();
            for (const auto& t : poly.terms()) {
                const auto k = poly.frequency(t);
                // keep one representative of each +-k pair: the lexicographically positive one
                Frequency neg{};
                for (int d = 0; d < n; ++d) neg[d] = -k[d];
                if (std::lexicographical_compare(k.begin(), k.begin() + n, neg.begin(), neg.begin() + n)) continue;
                const std::vector<int> kv(k.begin(), k.begin() + n);
                const bool zero = std::all_of(kv.begin(), kv.end(), [](int v) { return v == 0; });
                Json c;
                c["k"] = kv;
                c["re"] = to_string(poly.coeff_re(k));
                c["im"] = zero ? std::string("0") : to_string(poly.coeff_im(k));
                coeffs.push_back(c);
            }
            Json comp;
            comp["lie_index"] = a;
            comp["multi_index"] = indices_of(masks[i]);
            comp["coeffs"] = coeffs;
            comps.push_back(comp);
        }
    Json j;
    j["name"] = f.name;
    j["degree"] = form.degree();
    j["support"] = std::string(to_string(f.support));
    j["components"] = comps;
    return j;
}

Json field_file_to_json(const FieldFile& f)
{
    Json j;
    j["torus_dim"] = f.torus_dim;
    j["algebra"] = std::string(to_string(f.algebra->name));
    Json forms = Json::array();
    for (const auto& nf : f.forms) forms.push_back(form_to_json(nf));
    j["forms"] = forms;
    return j;
}

FieldFile field_file_from_json(const Json& j, const AlgebraSource& src)
{
    FieldFile f;
    f.torus_dim = required<int>(j, "torus_dim");
    if (f.torus_dim < 1 || f.torus_dim > kMaxTorusDim) throw FormatError("torus_dim must be between 1 and 4");
    try {
        f.algebra = src(parse_algebra_name(required<std::string>(j, "algebra")));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    const int n = f.torus_dim;
    const auto forms = required<Json>(j, "forms");
    if (!forms.is_array()) throw FormatError("'forms' must be an array");
    for (const auto& jf : forms) {
        NamedForm nf;
        nf.name = required<std::string>(jf, "name");
        if (f.find(nf.name)) throw FormatError("duplicate form name '" + nf.name + "'");
        const int degree = required<int>(jf, "degree");
        if (degree < 0 || degree > n) throw FormatError("form '" + nf.name + "' has an invalid degree");
        try {
            nf.support = parse_support(jf.contains("support") ? jf.at("support").get<std::string>() : "full");
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
        nf.form = LieForm(f.algebra, n, degree);
        for (const auto& jc : required<Json>(jf, "components")) {
            const int a = required<int>(jc, "lie_index");
            if (a < 0 || a >= f.algebra->dim()) throw FormatError("lie_index out of range in '" + nf.name + "'");
            if ((nf.support == Support::h && !f.algebra->in_h(a)) || (nf.support == Support::p && f.algebra->in_h(a)))
                throw FormatError("component " + std::to_string(a) + " of '" + nf.name + "' lies outside its support");
            const auto idx = required<std::vector<int>>(jc, "multi_index");
            if (static_cast<int>(idx.size()) != degree) throw FormatError("multi_index length differs from degree");
            TrigPoly poly(n);
            for (const auto& jk : required<Json>(jc, "coeffs")) {
                const auto kv = required<std::vector<int>>(jk, "k");
                if (static_cast<int>(kv.size()) != n) throw FormatError("frequency length differs from torus_dim");
                Frequency k{};
                std::copy(kv.begin(), kv.end(), k.begin());
                const Rational re = rational_field(jk, "re"), im = rational_field(jk, "im");
                const bool zero = std::all_of(kv.begin(), kv.end(), [](int v) { return v == 0; });
                if (zero && im != 0) throw FormatError("constant term must be real");
                poly += zero ? TrigPoly::constant(n, re) : TrigPoly::mode(n, k, re, im);
            }
            try {
                nf.form.part(a).add_scaled(monomial_form(n, idx, poly), 1);
            } catch (const std::invalid_argument& e) {
                throw FormatError(std::string("bad multi_index in '") + nf.name + "': " + e.what());
            }
        }
        f.forms.push_back(std::move(nf));
    }
    return f;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError("'" + path + "' is not valid JSON: " + e.what());
    }
}

FieldFile read_field_file(const std::string& path, const AlgebraSource& src)
{
    return field_file_from_json(read_json_file(path), src);
}

// ---------------------------------------------------------------------------

Path path_from_json(const Json& j)
{
    Path p;
    p.dim = required<int>(j, "dim");
    if (p.dim < 1) throw FormatError("path dimension must be positive");
    auto point = [&](const Json& s, const char* key) {
        const auto v = required<std::vector<double>>(s, key);
        if (static_cast<int>(v.size()) != p.dim) throw FormatError(std::string("'") + key + "' has the wrong dimension");
        return v;
    };
    for (const auto& s : required<Json>(j, "segments")) {
        PathSegment seg;
        const auto type = required<std::string>(s, "type");
        if (type == "line") {
            seg.kind = PathSegment::Kind::line;
            seg.from = point(s, "from");
            seg.to = point(s, "to");
        } else if (type == "arc") {
            seg.kind = PathSegment::Kind::arc;
            seg.center = point(s, "center");
            seg.radius = required<double>(s, "radius");
            const auto plane = required<std::vector<int>>(s, "plane");
            if (plane.size() != 2) throw FormatError("arc plane needs two axes");
            seg.plane_i = plane[0];
            seg.plane_j = plane[1];
            seg.start = required<double>(s, "start");
            seg.end = required<double>(s, "end");
        } else {
            throw FormatError("unknown segment type '" + type + "'");
        }
        p.segments.push_back(std::move(seg));
    }
    return p;
}

Json path_to_json(const Path& p)
{
    Json segs = Json::array();
    for (const auto& s : p.segments) {
        Json j;
        if (s.kind == PathSegment::Kind::line) {
            j["type"] = "line";
            j["from"] = s.from;
            j["to"] = s.to;
        } else {
            j["type"] = "arc";
            j["center"] = s.center;
            j["radius"] = s.radius;
            j["plane"] = {s.plane_i, s.plane_j};
            j["start"] = s.start;
            j["end"] = s.end;
        }
        segs.push_back(j);
    }
    return Json{{"dim", p.dim}, {"segments", segs}};
}

// ---------------------------------------------------------------------------

Json couplings_to_json(const CouplingConstants& c)
{
    return Json{{"c0", to_string(c.c0)}, {"c1", to_string(c.c1)}, {"mu", to_string(c.mu)}, {"gamma", to_string(c.gamma)}};
}

Json identity_report_to_json(const IdentityReport& r, std::optional<double> wall_time_ms)
{
    Json j;
    j["identity_id"] = std::string(to_string(r.id));
    j["algebra"] = std::string(to_string(r.algebra));
    j["seed"] = r.seed;
    j["couplings"] = couplings_to_json(r.couplings);
    if (r.exact)
        j["residual"] = to_string(r.residual);
    else
        j["residual"] = r.numeric_residual;
    if (!r.exact) j["tolerance"] = r.tolerance;
    j["exact"] = r.exact;
    j["passed"] = r.passed;
    j["degenerate_form"] = r.degenerate_form;
    j["inputs_digest"] = r.inputs_digest;
    if (wall_time_ms) j["wall_time_ms"] = *wall_time_ms;
    return j;
}

Json suite_to_json(const SuiteResult& s, bool timings)
{
    Json checks = Json::array();
    for (const auto& c : s.checks) {
        Json jc{{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"worst", c.worst},
                {"passed", c.passed()}};
        if (!c.first_failure.empty()) jc["first_failure"] = c.first_failure;
        checks.push_back(jc);
    }
    Json j{{"name", s.name}, {"passed", s.passed()}, {"checks", checks}};
    if (timings) j["wall_time_ms"] = s.seconds * 1000;
    return j;
}

Json action_value_to_json(const ActionValue& v)
{
    Json j;
    j["torus_dim"] = v.torus_dim;
    j["unit"] = "(2pi)^" + std::to_string(v.torus_dim);
    j["degenerate_form"] = v.degenerate_form;
    j["display"] = v.display();
    if (v.mode == ActionValue::Mode::exact) {
        j["mode"] = "exact";
        j["value"] = to_string(v.exact_value);
    } else {
        j["mode"] = "numeric";
        j["value"] = v.numeric_value;
        j["grid"] = v.grid;
        j["refined_grid"] = 2 * v.grid;
        j["refined_value"] = v.refined_value;
        j["refinement_error"] = v.refinement_error;
    }
    return j;
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace symcartan
