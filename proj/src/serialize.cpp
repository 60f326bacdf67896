#include "barg/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace barg {

namespace {

json coeffs_to_json(const CoeffMap& coeffs) {
    json rows = json::array();
    for (const auto& [alpha, a] : coeffs) {
        json row;
        row["alpha"] = alpha.entries;
        row["re"] = a.real();
        row["im"] = a.imag();
        rows.push_back(std::move(row));
    }
    return rows;
}

CoeffMap coeffs_from_json(const json& rows, int dim) {
    if (!rows.is_array()) {
        throw std::invalid_argument("coefficient list must be an array");
    }
    CoeffMap coeffs;
    for (const json& row : rows) {
        MultiIndex alpha{row.at("alpha").get<std::vector<int>>()};
        if (alpha.dim() != dim) {
            throw std::invalid_argument("coefficient index has wrong dimension");
        }
        for (int v : alpha.entries) {
            if (v < 0) {
                throw std::invalid_argument("coefficient index must be nonnegative");
            }
        }
        coeffs[alpha] = cplx(row.at("re").get<double>(), row.at("im").get<double>());
    }
    return coeffs;
}

/// Rebuilds a symmetric uniform axis from sorted node coordinates.
AxisGrid axis_from_nodes(const std::vector<double>& nodes) {
    const std::size_t n = nodes.size();
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument(
            "axis must have an odd node count of at least 3");
    }
    const double hw = nodes.back();
    if (std::fabs(nodes.front() + hw) > 1e-9 * std::max(1.0, hw)) {
        throw std::invalid_argument("axis nodes must be symmetric about zero");
    }
    AxisGrid axis = make_axis_grid(hw, static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(nodes[i] - axis.nodes[i]) > 1e-9 * std::max(1.0, hw)) {
            throw std::invalid_argument("axis nodes must be uniformly spaced");
        }
    }
    return axis;
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path,
                                               std::size_t columns) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open input file: " + path);
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (first && !numeric) {            // header line
            first = false;
            continue;
        }
        first = false;
        if (!numeric || row.size() != columns) {
            throw std::invalid_argument("malformed CSV row in " + path +
                                        ": " + line);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::invalid_argument("no data rows in " + path);
    }
    return rows;
}

}  // namespace

json expansion_to_json(const HermiteExpansion& e) {
    json j;
    j["dim"] = e.dim;
    j["max_degree"] = e.max_degree;
    j["coeffs"] = coeffs_to_json(e.coeffs);
    return j;
}

json taylor_to_json(const TaylorCoeffs& t) {
    json j;
    j["space"] = "fock";
    j["dim"] = t.dim;
    j["max_degree"] = t.max_degree;
    j["coeffs"] = coeffs_to_json(t.coeffs);
    return j;
}

HermiteExpansion expansion_from_json(const json& j) {
    HermiteExpansion e;
    e.dim = j.at("dim").get<int>();
    e.max_degree = j.at("max_degree").get<int>();
    if (e.dim < 1 || e.max_degree < 0) {
        throw std::invalid_argument("invalid expansion header");
    }
    e.coeffs = coeffs_from_json(j.at("coeffs"), e.dim);
    return e;
}

TaylorCoeffs taylor_from_json(const json& j) {
    if (j.value("space", "") != "fock") {
        throw std::invalid_argument(
            "entire-side coefficients must carry \"space\": \"fock\"");
    }
    TaylorCoeffs t;
    t.dim = j.at("dim").get<int>();
    t.max_degree = j.at("max_degree").get<int>();
    if (t.dim < 1 || t.max_degree < 0) {
        throw std::invalid_argument("invalid coefficient header");
    }
    t.coeffs = coeffs_from_json(j.at("coeffs"), t.dim);
    return t;
}

json grid_to_json(const PhaseGrid& grid) {
    auto axes_json = [](const std::vector<AxisGrid>& axes) {
        json arr = json::array();
        for (const AxisGrid& a : axes) {
            json entry;
            entry["half_width"] = a.half_width;
            entry["n"] = static_cast<int>(a.nodes.size());
            arr.push_back(std::move(entry));
        }
        return arr;
    };
    json j;
    j["x_axes"] = axes_json(grid.x_axes);
    j["xi_axes"] = axes_json(grid.xi_axes);
    return j;
}

PhaseGrid grid_from_json(const json& j) {
    auto axes_from = [](const json& arr) {
        std::vector<AxisGrid> axes;
        for (const json& entry : arr) {
            axes.push_back(make_axis_grid(entry.at("half_width").get<double>(),
                                          entry.at("n").get<int>()));
        }
        return axes;
    };
    PhaseGrid grid{axes_from(j.at("x_axes")), axes_from(j.at("xi_axes"))};
    if (grid.x_axes.empty() || grid.x_axes.size() != grid.xi_axes.size()) {
        throw std::invalid_argument("grid descriptor has mismatched axes");
    }
    return grid;
}

json cover_to_json(const BallCover& cover) {
    json j;
    j["R_max"] = cover.r_max;
    j["max_overlap"] = cover.max_overlap;
    json balls = json::array();
    for (const Ball& b : cover.balls) {
        json entry;
        entry["center"] = {b.center[0], b.center[1]};
        entry["radius"] = b.radius;
        balls.push_back(std::move(entry));
    }
    j["balls"] = std::move(balls);
    return j;
}

json report_to_json(const SuiteReport& report) {
    json j;
    j["schema"] = 1;
    j["suite"] = report.suite;
    json checks = json::array();
    for (const CheckResult& c : report.checks) {
        json entry;
        entry["name"] = c.name;
        entry["passed"] = c.passed;
        entry["measured"] = c.measured;
        entry["tolerance"] = c.tolerance;
        checks.push_back(std::move(entry));
    }
    j["checks"] = std::move(checks);
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot open output file: " + path);
    }
    out << text;
}

void write_signal_csv(const std::string& path, const Signal& f) {
    if (f.dim() != 1) {
        throw std::invalid_argument("signal CSV supports one dimension");
    }
    std::string text = "x,re,im\n";
    char buf[128];
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n",
                      f.axes[0].nodes[i], f.values[i].real(),
                      f.values[i].imag());
        text += buf;
    }
    write_text_file(path, text);
}

Signal read_signal_csv(const std::string& path) {
    const auto rows = read_csv_rows(path, 3);
    std::vector<double> nodes;
    nodes.reserve(rows.size());
    for (const auto& row : rows) nodes.push_back(row[0]);
    Signal f = make_signal({axis_from_nodes(nodes)});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        f.values[i] = cplx(rows[i][1], rows[i][2]);
    }
    return f;
}

void write_phase_field_csv(const std::string& path, const PhaseField& F) {
    if (F.grid.dim() != 1) {
        throw std::invalid_argument("phase-field CSV supports one dimension");
    }
    const std::size_t nx = F.grid.x_count();
    const std::size_t nq = F.grid.xi_count();
    std::string text = "x,xi,re,im\n";
    char buf[160];
    std::vector<double> x(1), xi(1);
    for (std::size_t iq = 0; iq < nq; ++iq) {
        F.grid.xi_coords(iq, xi);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            F.grid.x_coords(ix, x);
            const cplx v = F.values[iq * nx + ix];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x[0],
                          xi[0], v.real(), v.imag());
            text += buf;
        }
    }
    write_text_file(path, text);
}

PhaseField read_phase_field_csv(const std::string& path) {
    const auto rows = read_csv_rows(path, 4);
    // x cycles fastest: the first block of rows shares the first xi value.
    std::size_t nx = rows.size();
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][0] == rows[0][0]) {
            nx = i;
            break;
        }
    }
    if (rows.size() % nx != 0) {
        throw std::invalid_argument("phase-field CSV rows do not form a grid");
    }
    const std::size_t nq = rows.size() / nx;
    std::vector<double> xs, xis;
    for (std::size_t i = 0; i < nx; ++i) xs.push_back(rows[i][0]);
    for (std::size_t q = 0; q < nq; ++q) xis.push_back(rows[q * nx][1]);
    PhaseGrid grid{{axis_from_nodes(xs)}, {axis_from_nodes(xis)}};
    PhaseField F = make_phase_field(grid);
    for (std::size_t q = 0; q < nq; ++q) {
        for (std::size_t i = 0; i < nx; ++i) {
            const auto& row = rows[q * nx + i];
            if (std::fabs(row[0] - xs[i]) > 1e-9 ||
                std::fabs(row[1] - xis[q]) > 1e-9) {
                throw std::invalid_argument(
                    "phase-field CSV rows are not in grid order");
            }
            F.values[q * nx + i] = cplx(row[2], row[3]);
        }
    }
    return F;
}

std::string format_norm_value(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void append_norm_row(const std::string& path, const std::string& name,
                     double p, double q, const std::string& weight,
                     double value) {
    const std::filesystem::path fp(path);
    if (fp.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(fp.parent_path(), ec);
    }
    const bool fresh = !std::filesystem::exists(fp);
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw std::invalid_argument("cannot open output file: " + path);
    }
    auto fmt_exp = [](double v) {
        return std::isinf(v) ? std::string("inf") : format_norm_value(v);
    };
    if (fresh) out << "name,p,q,weight,value\n";
    out << name << ',' << fmt_exp(p) << ',' << fmt_exp(q) << ',' << weight
        << ',' << format_norm_value(value) << '\n';
}

}  // namespace barg
