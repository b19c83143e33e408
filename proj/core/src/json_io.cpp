#include "meanclt/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "meanclt/errors.hpp"

namespace meanclt {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw InputError("invalid JSON");
    return j;
}

std::vector<double> number_array(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw InputError(std::string("missing array field: ") + key);
    std::vector<double> out;
    out.reserve(j[key].size());
    for (const auto& v : j[key]) {
        if (!v.is_number()) throw InputError(std::string("non-numeric entry in ") + key);
        out.push_back(v.get<double>());
    }
    return out;
}

std::string dump(const json& j, int indent) {
    return indent >= 0 ? j.dump(indent) : j.dump();
}

json moments_json(const MomentSummary& ms) {
    json j{{"mean", ms.mean},
           {"variance", ms.variance},
           {"third", ms.third},
           {"abs_third", ms.abs_third}};
    if (ms.omega_defined) {
        j["omega"] = ms.omega;
    } else {
        j["omega"] = nullptr;
    }
    return j;
}

json lattice_json(const LatticeInfo& lat) {
    return json{{"is_lattice", lat.is_lattice}, {"span", lat.span}, {"offset", lat.offset}};
}

json finite_dist_json(const FiniteDist& d) {
    return json{{"support", d.support()}, {"probs", d.probs()}};
}

json bound_report_json(const BoundReport& r) {
    json j{{"n", r.n},
           {"w1", r.w1},
           {"be_bound", r.be_bound},
           {"bg_bound", r.bg_bound},
           {"ratio_be", r.ratio_be},
           {"ratio_bg", r.ratio_bg},
           {"sqrtn_w1", r.sqrtn_w1}};
    if (r.a_value) {
        j["a_value"] = *r.a_value;
    } else {
        j["a_value"] = nullptr;
    }
    return j;
}

}  // namespace

FiniteDist finite_dist_from_json(const std::string& text) {
    const json j = parse(text);
    return FiniteDist::from_points(number_array(j, "support"), number_array(j, "probs"));
}

FiniteDist load_finite_dist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return finite_dist_from_json(buf.str());
}

ZeroBiasDist zero_bias_from_json(const std::string& text) {
    const json j = parse(text);
    return ZeroBiasDist::from_pieces(number_array(j, "breakpoints"),
                                     number_array(j, "densities"));
}

std::string to_json(const FiniteDist& d, int indent) {
    return dump(finite_dist_json(d), indent);
}

std::string to_json(const ZeroBiasDist& z, int indent) {
    return dump(json{{"breakpoints", z.breakpoints()}, {"densities", z.densities()}}, indent);
}

std::string to_json(const MixtureDecomposition& m, int indent) {
    json comps = json::array();
    for (const auto& c : m.components) comps.push_back(finite_dist_json(c));
    return dump(json{{"weights", m.weights}, {"components", comps}}, indent);
}

std::string to_json(const FunctionalReport& r, int indent) {
    json j{{"b_value", r.b_value},
           {"a_value", r.a_value},
           {"zolotarev_ratio", r.zolotarev_ratio},
           {"moments", moments_json(r.moments)},
           {"lattice", lattice_json(r.lattice)}};
    if (r.psi) {
        j["psi"] = *r.psi;
    } else {
        j["psi"] = nullptr;
    }
    return dump(j, indent);
}

std::string to_json(const BoundReport& r, int indent) {
    return dump(bound_report_json(r), indent);
}

std::string to_json(const std::vector<BoundReport>& rows, int indent) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(bound_report_json(r));
    return dump(arr, indent);
}

std::string to_json(const SearchResult& r, int indent) {
    return dump(json{{"best_b", r.best_b},
                     {"argmax", finite_dist_json(r.argmax)},
                     {"grid_size", r.grid_size},
                     {"violations", r.violations}},
                indent);
}

namespace {

void append_double(std::ostringstream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

}  // namespace

std::string bound_reports_csv(const std::vector<BoundReport>& rows) {
    std::ostringstream os;
    os << "n,w1,be_bound,bg_bound,ratio_be,ratio_bg,sqrtn_w1,a_value\n";
    for (const auto& r : rows) {
        os << r.n << ',';
        append_double(os, r.w1);
        os << ',';
        append_double(os, r.be_bound);
        os << ',';
        append_double(os, r.bg_bound);
        os << ',';
        append_double(os, r.ratio_be);
        os << ',';
        append_double(os, r.ratio_bg);
        os << ',';
        append_double(os, r.sqrtn_w1);
        os << ',';
        if (r.a_value) append_double(os, *r.a_value);
        os << '\n';
    }
    return os.str();
}

std::string lower_bound_csv(const LowerBoundSweep& sweep) {
    std::ostringstream os;
    os << "p,psi\n";
    for (const auto& [p, psi] : sweep.rows) {
        append_double(os, p);
        os << ',';
        append_double(os, psi);
        os << '\n';
    }
    return os.str();
}

}  // namespace meanclt
