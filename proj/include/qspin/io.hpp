#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "histories.hpp"
#include "state.hpp"

namespace qspin {

using nlohmann::json;

// floats carry 15 significant digits in every report
inline std::string fmt15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

inline json jreal(double x) { return json(std::strtod(fmt15(x).c_str(), nullptr)); }

inline json jcomplex(const cx& v) { return json::array({jreal(v.real()), jreal(v.imag())}); }

// row-major nested arrays of [re, im] pairs
inline json mat_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(jcomplex(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline cx complex_from_json(const json& j) {
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
            "json: complex entries must be [re, im]");
    return cx{j[0].get<double>(), j[1].get<double>()};
}

inline Mat mat_from_json(const json& j) {
    require(j.is_array() && !j.empty(), "json: matrix must be a non-empty array of rows");
    const std::size_t rows = j.size();
    require(j[0].is_array() && !j[0].empty(), "json: matrix rows must be arrays");
    const std::size_t cols = j[0].size();
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        require(j[i].is_array() && j[i].size() == cols, "json: ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
    }
    return m;
}

inline json state_json(const StateVector& s) {
    json amps = json::array();
    for (const cx& a : s.amps) amps.push_back(jcomplex(a));
    json dims = json::array();
    for (std::size_t d : s.factor_dims) dims.push_back(d);
    return json{{"amps", std::move(amps)}, {"factor_dims", std::move(dims)}};
}

// history family document: rho0, times, optional unitaries, projector_sets
inline HistoryFamily family_from_json(const json& j, double tol = 1e-10) {
    require(j.is_object(), "family: document must be a JSON object");
    require(j.contains("rho0"), "family: missing rho0");
    require(j.contains("times"), "family: missing times");
    require(j.contains("projector_sets"), "family: missing projector_sets");

    Mat rho_mat = mat_from_json(j.at("rho0"));
    const std::size_t dim = rho_mat.rows;
    DensityOp rho0 = make_density(std::move(rho_mat), {dim}, tol);

    TimeGrid grid;
    const json& times = j.at("times");
    require(times.is_array() && !times.empty(), "family: times must be a non-empty array");
    for (const json& t : times) {
        require(t.is_number(), "family: times must be numbers");
        grid.times.push_back(t.get<double>());
    }
    if (j.contains("unitaries")) {
        const json& us = j.at("unitaries");
        require(us.is_array() && us.size() == grid.times.size(),
                "family: need one unitary per time point");
        for (const json& u : us) grid.step_unitaries.push_back(mat_from_json(u));
    } else {
        for (std::size_t i = 0; i < grid.times.size(); ++i)
            grid.step_unitaries.push_back(Mat::identity(dim));
    }

    std::vector<std::vector<Mat>> sets;
    const json& ps = j.at("projector_sets");
    require(ps.is_array() && ps.size() == grid.times.size(),
            "family: need one projector set per time point");
    for (const json& set : ps) {
        require(set.is_array() && !set.empty(), "family: projector sets must be non-empty arrays");
        std::vector<Mat> projs;
        for (const json& p : set) projs.push_back(mat_from_json(p));
        sets.push_back(std::move(projs));
    }
    return make_family(std::move(rho0), std::move(grid), std::move(sets), std::max(tol, 1e-12));
}

// header row plus numeric rows, LF endings, written to a temp file and
// renamed into place
inline void write_csv_atomic(const std::string& path, const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& rows) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        require(static_cast<bool>(f), "csv: cannot open " + tmp);
        for (std::size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
        f << "\n";
        for (const auto& row : rows) {
            require(row.size() == header.size(), "csv: row width mismatch");
            for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << fmt15(row[i]);
            f << "\n";
        }
        require(static_cast<bool>(f), "csv: write failed for " + tmp);
    }
    require(std::rename(tmp.c_str(), path.c_str()) == 0, "csv: rename failed for " + path);
}

}  // namespace qspin
