#include "polymap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "polymap/errors.hpp"

namespace polymap {

using nlohmann::json;

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sweep_to_csv(const SweepDataset& data) {
    std::ostringstream os;
    os << "lambda,seed_index,x\n";
    for (const SweepPoint& pt : data.points) {
        if (pt.poisoned) continue;
        for (std::size_t s = 0; s < pt.plotted.size(); ++s) {
            for (double x : pt.plotted[s]) {
                if (!std::isfinite(x)) continue;
                os << format_g17(pt.lambda) << ',' << s << ',' << format_g17(x) << '\n';
            }
        }
    }
    return os.str();
}

namespace {

const char* status_name(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::Converged: return "converged";
        case OrbitStatus::Aperiodic: return "aperiodic";
        case OrbitStatus::Divergent: return "divergent";
    }
    return "?";
}

}  // namespace

std::string sweep_sidecar_json(const SweepDataset& data) {
    json points = json::array();
    for (const SweepPoint& pt : data.points) {
        json j;
        j["lambda"] = pt.lambda;
        j["poisoned"] = pt.poisoned;
        if (pt.poisoned) {
            j["reason"] = pt.poison_reason;
        } else {
            j["seeds"] = pt.seeds;
            json status = json::array();
            for (OrbitStatus s : pt.seed_status) status.push_back(status_name(s));
            j["status"] = status;
            j["periods"] = pt.seed_periods;
            j["attracting_period"] = pt.attracting_period;
            j["branch_count"] = pt.branch_count;
            j["distinct_cycles"] = pt.distinct_cycles;
            j["divergent"] = pt.any_divergent;
            j["chaotic_heuristic"] = pt.chaotic_heuristic;
        }
        points.push_back(std::move(j));
    }
    json root;
    root["points"] = std::move(points);
    return root.dump(2) + "\n";
}

std::string estimate_to_json(int degree, const BifurcationEstimate& est) {
    json j;
    j["degree"] = degree;
    j["k"] = est.k;
    j["value"] = est.value;
    j["half_width"] = est.half_width;
    j["method"] = est.method == BifurcationEstimate::Method::ClosedForm ? "closed-form" : "bisection";
    if (est.noise_floor) j["noise_floor"] = true;
    return j.dump(2) + "\n";
}

std::string cascade_to_json(const CascadeTable& table) {
    json levels = json::array();
    for (const BifurcationEstimate& est : table.levels) {
        json j;
        j["k"] = est.k;
        j["value"] = est.value;
        j["half_width"] = est.half_width;
        j["method"] = est.method == BifurcationEstimate::Method::ClosedForm ? "closed-form" : "bisection";
        if (est.noise_floor) j["noise_floor"] = true;
        levels.push_back(std::move(j));
    }
    json root;
    root["degree"] = table.degree;
    root["levels"] = std::move(levels);
    root["b_infinity"] = {{"value", table.b_infinity.value}, {"half_width", table.b_infinity.half_width}};
    return root.dump(2) + "\n";
}

namespace {

std::string format_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string sweep_to_svg(const SweepDataset& data, bool deterministic) {
    const int width = 1200, height = 800;
    const int margin = 60;

    double lam_lo = 0.0, lam_hi = 1.0, x_lo = 0.0, x_hi = 1.0;
    bool any = false;
    for (const SweepPoint& pt : data.points) {
        if (pt.poisoned) continue;
        for (const auto& bag : pt.plotted) {
            for (double x : bag) {
                if (!std::isfinite(x)) continue;
                if (!any) {
                    lam_lo = lam_hi = pt.lambda;
                    x_lo = x_hi = x;
                    any = true;
                } else {
                    lam_lo = std::min(lam_lo, pt.lambda);
                    lam_hi = std::max(lam_hi, pt.lambda);
                    x_lo = std::min(x_lo, x);
                    x_hi = std::max(x_hi, x);
                }
            }
        }
    }
    if (!any || lam_hi == lam_lo) lam_hi = lam_lo + 1.0;
    if (!any || x_hi == x_lo) x_hi = x_lo + 1.0;

    auto px = [&](double lam) {
        return margin + (lam - lam_lo) / (lam_hi - lam_lo) * (width - 2 * margin);
    };
    auto py = [&](double x) {
        return height - margin - (x - x_lo) / (x_hi - x_lo) * (height - 2 * margin);
    };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (!deterministic) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        os << "<!-- generated " << buf << " -->\n";
    }
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
       << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
       << height - margin << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"" << height - margin / 3 << "\" font-size=\"12\">"
       << format_label(lam_lo) << "</text>\n";
    os << "<text x=\"" << width - margin << "\" y=\"" << height - margin / 3
       << "\" font-size=\"12\" text-anchor=\"end\">" << format_label(lam_hi) << "</text>\n";
    os << "<text x=\"" << margin / 4 << "\" y=\"" << height - margin << "\" font-size=\"12\">"
       << format_label(x_lo) << "</text>\n";
    os << "<text x=\"" << margin / 4 << "\" y=\"" << margin << "\" font-size=\"12\">" << format_label(x_hi)
       << "</text>\n";

    for (const SweepPoint& pt : data.points) {
        if (pt.poisoned) continue;
        for (const auto& bag : pt.plotted) {
            for (double x : bag) {
                if (!std::isfinite(x)) continue;
                os << "<rect x=\"" << format_g17(px(pt.lambda)) << "\" y=\"" << format_g17(py(x))
                   << "\" width=\"1\" height=\"1\"/>\n";
            }
        }
    }
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write to '" + path + "' failed");
}

CanonicalFamily parse_family_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("family spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error("family spec must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "degree" && key != "s" && key != "fixed_points" && key != "domain" && key != "name")
            throw Error("family spec has unknown key '" + key + "'");
    }
    if (!j.contains("degree") || !j.contains("s") || !j.contains("fixed_points") || !j.contains("domain"))
        throw Error("family spec needs degree, s, fixed_points and domain");

    CanonicalFamily fam;
    fam.degree = j.at("degree").get<int>();
    if (fam.degree < 2) throw Error("family degree must be >= 2");
    fam.sign_s = j.at("s").get<int>();
    if (fam.sign_s != 1 && fam.sign_s != -1) throw Error("family s must be +1 or -1");
    const auto& fps = j.at("fixed_points");
    if (!fps.is_array() || static_cast<int>(fps.size()) != fam.degree - 1)
        throw Error("fixed_points must list degree-1 expressions");
    for (const auto& e : fps) fam.x_exprs.push_back(ParamExpr::parse(e.get<std::string>()));
    const auto& dom = j.at("domain");
    if (!dom.is_array() || dom.size() != 2) throw Error("domain must be [lo, hi]");
    fam.domain_lo = dom[0].get<double>();
    fam.domain_hi = dom[1].get<double>();
    if (!(fam.domain_hi > fam.domain_lo)) throw Error("domain must satisfy lo < hi");
    if (j.contains("name")) fam.name = j.at("name").get<std::string>();
    return fam;
}

CanonicalFamily load_family_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open family spec '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_family_spec(buf.str());
}

std::string band_tables_to_json(const std::vector<BandTable>& tables) {
    json arr = json::array();
    for (const BandTable& t : tables) {
        json j;
        j["degree"] = t.degree;
        j["thresholds"] = t.thresholds;
        j["uncertainties"] = t.uncertainties;
        j["b_inf"] = t.b_inf;
        j["b_inf_uncertainty"] = t.b_inf_uncertainty;
        j["provenance"] = t.provenance;
        arr.push_back(std::move(j));
    }
    json root;
    root["version"] = 1;
    root["tables"] = std::move(arr);
    return root.dump(2) + "\n";
}

BandTable load_band_table(const std::string& path, int degree) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open band table file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error(std::string("band table file is not valid JSON: ") + e.what());
    }
    if (j.value("version", 0) != 1) throw Error("unsupported band table file version");
    for (const auto& t : j.at("tables")) {
        if (t.at("degree").get<int>() != degree) continue;
        BandTable out;
        out.degree = degree;
        out.thresholds = t.at("thresholds").get<std::vector<double>>();
        out.uncertainties = t.at("uncertainties").get<std::vector<double>>();
        out.b_inf = t.at("b_inf").get<double>();
        out.b_inf_uncertainty = t.at("b_inf_uncertainty").get<double>();
        out.provenance = t.value("provenance", "");
        if (out.thresholds.size() != out.uncertainties.size())
            throw Error("band table thresholds/uncertainties length mismatch");
        return out;
    }
    throw UnsupportedDegree("no band table for degree " + std::to_string(degree) + " in " + path);
}

}  // namespace polymap
