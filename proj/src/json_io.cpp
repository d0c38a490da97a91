/*
 * Copyright 2026 The fgs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fgs/json_io.hpp"

#include <fstream>
#include <sstream>

namespace fgs {

namespace {

json matrix_to_json(const RMat &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

RMat matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty())
        throw invalid_input("BadJson: matrix must be a non-empty array of rows");
    std::size_t rows = j.size(), cols = j[0].size();
    RMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw invalid_input("BadJson: ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

cplx cplx_from_json(const json &j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2)
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw invalid_input("BadJson: complex values are numbers or [re, im]");
}

json cplx_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

}  // namespace

json cm_to_json(const CovarianceMatrix &g) {
    return json{{"modes", g.modes()}, {"gamma", matrix_to_json(g.gamma())}};
}

CovarianceMatrix cm_from_json(const json &j) {
    if (!j.contains("modes") || !j.contains("gamma"))
        throw invalid_input("BadJson: CM needs \"modes\" and \"gamma\"");
    std::size_t n = j["modes"].get<std::size_t>();
    RMat g = matrix_from_json(j["gamma"]);
    return CovarianceMatrix(n, std::move(g));
}

json state_to_json(const FockVector &psi) {
    json amps = json::array();
    for (std::size_t b = 0; b < psi.dim(); ++b) amps.push_back(cplx_to_json(psi[b]));
    return json{{"modes", psi.modes()}, {"amplitudes", std::move(amps)}};
}

FockVector state_from_json(const json &j) {
    if (!j.contains("modes") || !j.contains("amplitudes"))
        throw invalid_input("BadJson: state needs \"modes\" and \"amplitudes\"");
    std::size_t n = j["modes"].get<std::size_t>();
    std::vector<cplx> amps;
    for (const auto &a : j["amplitudes"]) amps.push_back(cplx_from_json(a));
    return FockVector(n, std::move(amps));
}

json channel_to_json(const GaussianChannel &ch) {
    return json{{"in_modes", ch.in_modes},
                {"out_modes", ch.out_modes},
                {"A", matrix_to_json(ch.a)},
                {"B", matrix_to_json(ch.b)},
                {"D", matrix_to_json(ch.d)}};
}

GaussianChannel channel_from_json(const json &j) {
    for (const char *k : {"in_modes", "out_modes", "A", "B", "D"})
        if (!j.contains(k))
            throw invalid_input(std::string("BadJson: channel needs \"") + k + "\"");
    GaussianChannel ch;
    ch.in_modes = j["in_modes"].get<std::size_t>();
    ch.out_modes = j["out_modes"].get<std::size_t>();
    ch.a = matrix_from_json(j["A"]);
    ch.b = matrix_from_json(j["B"]);
    ch.d = matrix_from_json(j["D"]);
    validate_channel(ch);
    return ch;
}

namespace {
json kraus_to_json(const LocalKraus &k) {
    return json{{"site", k.site},
                {"flip", k.flip},
                {"diag", json::array({cplx_to_json(k.d0), cplx_to_json(k.d1)})}};
}

LocalKraus kraus_from_json(const json &j, std::size_t default_site) {
    LocalKraus k;
    k.site = j.contains("site") ? j["site"].get<std::size_t>() : default_site;
    k.flip = j.contains("flip") ? j["flip"].get<int>() : 0;
    if (!j.contains("diag") || !j["diag"].is_array() || j["diag"].size() != 2)
        throw invalid_input("BadJson: Kraus needs \"diag\": [d0, d1]");
    k.d0 = cplx_from_json(j["diag"][0]);
    k.d1 = cplx_from_json(j["diag"][1]);
    return k;
}
}  // namespace

json protocol_to_json(const Protocol &p) {
    json rounds = json::array();
    for (const auto &r : p.rounds) {
        json branches = json::array();
        for (const auto &k : r.instrument.branches) branches.push_back(kraus_to_json(k));
        json corr = json::object();
        for (const auto &[key, ops] : r.corrections) {
            json lst = json::array();
            for (const auto &o : ops) lst.push_back(kraus_to_json(o));
            corr[key] = std::move(lst);
        }
        rounds.push_back(json{{"site", r.instrument.site},
                              {"branches", std::move(branches)},
                              {"corrections", std::move(corr)}});
    }
    return json{{"modes", p.modes}, {"rounds", std::move(rounds)}};
}

Protocol protocol_from_json(const json &j) {
    if (!j.contains("modes") || !j.contains("rounds"))
        throw invalid_input("BadJson: protocol needs \"modes\" and \"rounds\"");
    Protocol p;
    p.modes = j["modes"].get<std::size_t>();
    for (const auto &rj : j["rounds"]) {
        Round r;
        r.instrument.site = rj.at("site").get<std::size_t>();
        for (const auto &bj : rj.at("branches"))
            r.instrument.branches.push_back(kraus_from_json(bj, r.instrument.site));
        if (rj.contains("corrections")) {
            for (auto it = rj["corrections"].begin(); it != rj["corrections"].end();
                 ++it) {
                std::vector<LocalKraus> ops;
                for (const auto &oj : it.value())
                    ops.push_back(kraus_from_json(oj, r.instrument.site));
                r.corrections[it.key()] = std::move(ops);
            }
        }
        p.rounds.push_back(std::move(r));
    }
    return p;
}

json ops_to_json(const LocalOrthogonalSet &ops) {
    json arr = json::array();
    for (const auto &o : ops)
        arr.push_back(json{{"angle", o.angle}, {"flip", (int)o.flip}});
    return arr;
}

LocalOrthogonalSet ops_from_json(const json &j) {
    LocalOrthogonalSet ops;
    for (const auto &oj : j) {
        LocalOrthogonal o;
        o.angle = oj.at("angle").get<double>();
        o.flip = (std::uint8_t)oj.at("flip").get<int>();
        ops.push_back(o);
    }
    return ops;
}

json label_to_json(const SloccLabel &label) {
    json params = json::array();
    for (auto p : label.params) params.push_back(cplx_to_json(p));
    json out{{"label", label.name()}, {"gaussian", label.gaussian}};
    if (!label.params.empty()) out["params"] = std::move(params);
    if (!label.partition.empty()) out["partition"] = label.partition;
    return out;
}

Bipartition partition_from_string(const std::string &s, std::size_t modes) {
    std::vector<std::size_t> party(modes, modes);
    std::size_t label = 0;
    std::stringstream groups(s);
    std::string group;
    while (std::getline(groups, group, '|')) {
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            if (item.empty()) continue;
            std::size_t m = std::stoul(item);
            if (m < 1 || m > modes)
                throw invalid_input("BadPartition: mode index out of range");
            party[m - 1] = label;
        }
        ++label;
    }
    for (auto p : party)
        if (p == modes)
            throw invalid_input("BadPartition: every mode must be assigned");
    return Bipartition(party);
}

Bipartition partition_from_json(const json &j, std::size_t modes) {
    if (j.is_string()) return partition_from_string(j.get<std::string>(), modes);
    if (!j.is_array()) throw invalid_input("BadPartition: expected string or array");
    std::vector<std::size_t> party(modes, modes);
    for (std::size_t g = 0; g < j.size(); ++g)
        for (const auto &mj : j[g]) {
            std::size_t m = mj.get<std::size_t>();
            if (m < 1 || m > modes)
                throw invalid_input("BadPartition: mode index out of range");
            party[m - 1] = g;
        }
    for (auto p : party)
        if (p == modes)
            throw invalid_input("BadPartition: every mode must be assigned");
    return Bipartition(party);
}

json load_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("BadFile: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception &e) {
        throw invalid_input(std::string("BadJson: ") + e.what());
    }
    return j;
}

}  // namespace fgs
