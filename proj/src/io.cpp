#include "baxter/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace baxter {

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shorter form when it round-trips
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.15g", v);
    double back = 0.0;
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
    std::snprintf(shorter, sizeof(shorter), "%.16g", v);
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
    return buf;
}

json to_json(cxd v) { return json::array({v.real(), v.imag()}); }

cxd complex_from_json(const json& j, const std::string& context) {
    if (j.is_number()) return cxd(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cxd(j[0].get<double>(), j[1].get<double>());
    throw ConfigError(context + ": expected a number or [re, im] pair");
}

namespace {

json component_to_json(const MeasureComponent& part) {
    json j;
    if (std::holds_alternative<Lebesgue>(part)) {
        j["type"] = "lebesgue";
    } else if (const auto* td = std::get_if<TrigDensity>(&part)) {
        j["type"] = "trig_density";
        json coeff = json::object();
        for (const auto& [k, c] : td->coeff) coeff[std::to_string(k)] = to_json(c);
        j["coeff"] = coeff;
    } else if (const auto* pm = std::get_if<PointMasses>(&part)) {
        j["type"] = "point_masses";
        json atoms = json::array();
        for (const auto& a : pm->atoms)
            atoms.push_back(json{{"angle", a.angle}, {"weight", to_json(a.weight)}});
        j["atoms"] = atoms;
    } else if (const auto* rm = std::get_if<RawMoments>(&part)) {
        j["type"] = "raw_moments";
        j["halfwidth"] = rm->halfwidth;
        json vals = json::array();
        for (const auto& v : rm->values) vals.push_back(to_json(v));
        j["values"] = vals;
    } else if (const auto* od = std::get_if<OpucDensity>(&part)) {
        j["type"] = "opuc_density";
        j["cos"] = od->cos_coeff;
        j["sin"] = od->sin_coeff;
        j["nodes"] = od->nodes;
    }
    return j;
}

MeasureComponent component_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw ConfigError("measure component must be an object with a \"type\" field");
    const std::string type = j.at("type").get<std::string>();
    if (type == "lebesgue") return Lebesgue{};
    if (type == "trig_density") {
        TrigDensity td;
        if (!j.contains("coeff") || !j.at("coeff").is_object())
            throw ConfigError("trig_density: missing \"coeff\" object");
        for (const auto& [key, val] : j.at("coeff").items()) {
            int k = 0;
            try {
                k = std::stoi(key);
            } catch (...) {
                throw ConfigError("trig_density: coefficient key \"" + key +
                                  "\" is not an integer");
            }
            td.coeff[k] = complex_from_json(val, "trig_density.coeff[" + key + "]");
        }
        return td;
    }
    if (type == "point_masses") {
        PointMasses pm;
        for (const auto& a : j.value("atoms", json::array())) {
            PointMass m;
            m.angle = a.at("angle").get<double>();
            m.weight = complex_from_json(a.at("weight"), "point_masses.weight");
            pm.atoms.push_back(m);
        }
        return pm;
    }
    if (type == "raw_moments") {
        RawMoments rm;
        rm.halfwidth = j.at("halfwidth").get<int>();
        for (const auto& v : j.at("values")) rm.values.push_back(complex_from_json(v, "raw_moments.values"));
        if (static_cast<int>(rm.values.size()) != 2 * rm.halfwidth + 1)
            throw ConfigError("raw_moments: values length must be 2*halfwidth + 1");
        return rm;
    }
    if (type == "opuc_density") {
        OpucDensity od;
        od.cos_coeff = j.value("cos", std::vector<double>{1.0});
        od.sin_coeff = j.value("sin", std::vector<double>{});
        od.nodes = j.value("nodes", 2048);
        return od;
    }
    throw ConfigError("unknown measure component type \"" + type + "\"");
}

}  // namespace

json to_json(const MeasureSpec& spec) {
    if (spec.parts.size() == 1) return component_to_json(spec.parts[0]);
    json j;
    j["type"] = "sum";
    json parts = json::array();
    for (const auto& p : spec.parts) parts.push_back(component_to_json(p));
    j["parts"] = parts;
    return j;
}

MeasureSpec measure_from_json(const json& j) {
    MeasureSpec spec;
    if (j.is_object() && j.value("type", "") == "sum") {
        for (const auto& p : j.at("parts")) spec.parts.push_back(component_from_json(p));
    } else {
        spec.parts.push_back(component_from_json(j));
    }
    if (spec.parts.empty()) throw ConfigError("measure: no components");
    return spec;
}

ParameterSequence parameters_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw ConfigError("parameters must be an object with a \"type\" field");
    const std::string type = j.at("type").get<std::string>();
    if (type == "explicit") {
        std::vector<cxd> a, b;
        for (const auto& v : j.value("alpha", json::array()))
            a.push_back(complex_from_json(v, "parameters.alpha"));
        for (const auto& v : j.value("beta", json::array()))
            b.push_back(complex_from_json(v, "parameters.beta"));
        return ParameterSequence::explicit_list(std::move(a), std::move(b));
    }
    if (type == "power") {
        return ParameterSequence::power_family(j.value("amp", 0.5), j.value("expo", 0.8));
    }
    if (type == "example1") {
        return example_parameter_sequence(
            ExampleParams::example1(j.value("epsilon", 0.1), j.value("c", 1.0)));
    }
    if (type == "example2") {
        std::vector<cxd> b;
        for (const auto& v : j.value("b", json::array({json::array({1.0, 0.0}),
                                                       json::array({0.5, 0.0})})))
            b.push_back(complex_from_json(v, "parameters.b"));
        std::vector<double> lambda = j.value("lambda", std::vector<double>{1.0, 2.0});
        return example_parameter_sequence(
            ExampleParams::example2(j.value("gamma", 0.75), std::move(b), std::move(lambda)));
    }
    if (type == "zero") return ParameterSequence::zero();
    throw ConfigError("unknown parameters type \"" + type + "\"");
}

json to_json(const ConvergenceReport& r) {
    return json{{"z", to_json(r.z)},
                {"N", r.N},
                {"K", r.K},
                {"u", to_json(r.u)},
                {"c1", r.c1},
                {"tail_bound", r.tail_bound},
                {"last_cauchy", r.last_cauchy},
                {"abs_y1", r.abs_y1},
                {"converged", r.converged},
                {"steps", r.steps},
                {"per_step_ref", r.per_step_ref}};
}

json to_json(const SeriesDiag& d) {
    return json{{"checkpoints", d.cp_n},
                {"values", d.cp_value},
                {"increments", d.cp_increment},
                {"slope_sum", d.slope_sum},
                {"slope_inc", d.slope_inc},
                {"verdict", to_string(d.verdict)}};
}

json to_json(const TauberianReport& r) {
    return json{{"theta", r.theta},
                {"N", r.N},
                {"K", r.K},
                {"m_beta", to_json(r.m_beta)},
                {"m_alpha", to_json(r.m_alpha)},
                {"e_series", to_json(r.e_series)},
                {"e_tilde", to_json(r.e_tilde)},
                {"N_theta", r.n_sup},
                {"N_tilde_theta", r.n_tilde_sup},
                {"E_theta", r.e_sup},
                {"E_tilde_theta", r.e_tilde_sup},
                {"sup_q12_circle", r.sup_q12_circle},
                {"r_grid", r.r_grid}};
}

json to_json(const BoundaryReport& r) {
    json cps = json::array();
    for (size_t i = 0; i < r.cp_n.size(); ++i)
        cps.push_back(json{{"n", r.cp_n[i]}, {"u", to_json(r.cp_value[i])}});
    return json{{"theta", r.theta},
                {"N", r.N},
                {"K", r.K},
                {"flavor", r.which == LimitVariant::U ? "u" : "v"},
                {"value", to_json(r.limit_value)},
                {"checkpoints", cps},
                {"cauchy", r.cauchy},
                {"product_route", to_json(r.product_route)},
                {"product_residual", r.product_residual},
                {"naive_residual", r.naive_residual},
                {"correction_magnitude", r.correction_magnitude},
                {"abs_q21_final", r.abs_q21_final},
                {"reliable", r.reliable},
                {"cauchy_decreasing", r.cauchy_decreasing}};
}

json to_json(const RadialReport& r) {
    json pts = json::array();
    for (const auto& p : r.points)
        pts.push_back(json{{"r", p.r},
                           {"u", to_json(p.u)},
                           {"n_used", p.n_used},
                           {"converged", p.converged}});
    return json{{"theta", r.theta},
                {"flavor", r.which == LimitVariant::U ? "u" : "v"},
                {"points", pts},
                {"extrapolated", to_json(r.extrapolated)},
                {"tail_variation", r.tail_variation},
                {"usable", r.usable}};
}

json to_json(const InterchangeReport& r) {
    return json{{"theta", r.theta},
                {"limit_then_radial", to_json(r.limit_then_radial)},
                {"radial_then_limit", to_json(r.radial_then_limit)},
                {"residual", r.residual},
                {"both_converged", r.both_converged}};
}

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)) {}

void CsvWriter::header(const std::vector<std::string>& cols) { row(cols); }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += cells[i];
    }
    buf_ += '\n';
}

void CsvWriter::flush_to_disk() {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path_ + " for writing");
    out << buf_;
    written_ = true;
}

CsvWriter::~CsvWriter() {
    if (!written_) {
        try {
            flush_to_disk();
        } catch (...) {
        }
    }
}

void write_moment_table_csv(const std::string& path, const MomentTable& table) {
    CsvWriter w(path);
    w.header({"k", "re_mu", "im_mu"});
    for (int k = -table.halfwidth; k <= table.halfwidth; ++k) {
        const cxd v = table.at(k);
        w.row({std::to_string(k), fmt_full(v.real()), fmt_full(v.imag())});
    }
    w.flush_to_disk();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace baxter
