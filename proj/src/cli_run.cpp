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

#include "fgs/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fgs/json_io.hpp"

namespace fgs {

namespace {

struct CliState {
    double tol = 1e-7;
    bool no_z_flips = false;
    std::uint64_t seed = 12345;
    std::string partition;
    std::string target_path;
    std::string equality_mode = "both";
    std::string family;
    std::vector<double> family_params;
    std::size_t max_iter = 200;
    std::string out_path;
    std::vector<std::string> inputs;
};

void emit(const json &j, const CliState &st, std::ostream &out) {
    json withv = j;
    withv["schema_version"] = kSchemaVersion;
    if (!st.out_path.empty()) {
        std::ofstream f(st.out_path);
        if (!f) throw invalid_input("BadFile: cannot write " + st.out_path);
        f << withv.dump(2) << "\n";
    }
    out << withv.dump(2) << "\n";
}

StandardFormOptions form_options(const CliState &st) {
    StandardFormOptions opt;
    opt.allow_z_flips = !st.no_z_flips;
    return opt;
}

int cmd_validate(const CliState &st, std::ostream &out) {
    CovarianceMatrix g = cm_from_json(load_json_file(st.inputs.at(0)));
    CmValidationReport r = validate_cm(g);
    emit(json{{"antisymmetric", r.antisymmetric},
              {"physical", r.physical},
              {"pure", r.pure},
              {"williamson_spectrum", r.williamson_spectrum}},
         st, out);
    return r.physical ? 0 : 1;
}

int cmd_standard_form(const CliState &st, std::ostream &out) {
    CovarianceMatrix g = cm_from_json(load_json_file(st.inputs.at(0)));
    StandardFormResult res = standard_form(g, form_options(st));
    json log = json::array();
    for (const auto &rec : res.decision_log)
        log.push_back(json{{"rule", rec.rule},
                           {"i", rec.i + 1},
                           {"j", rec.j + 1},
                           {"detail", rec.detail}});
    emit(json{{"modes", res.s_gamma.modes()},
              {"s_gamma", cm_to_json(res.s_gamma)["gamma"]},
              {"ops", ops_to_json(res.ops)},
              {"decision_log", std::move(log)}},
         st, out);
    return 0;
}

int cmd_equivalent(const CliState &st, std::ostream &out) {
    CovarianceMatrix a = cm_from_json(load_json_file(st.inputs.at(0)));
    CovarianceMatrix b = cm_from_json(load_json_file(st.inputs.at(1)));
    StandardFormResult sa = standard_form(a, form_options(st));
    StandardFormResult sb = standard_form(b, form_options(st));
    double dist = frobenius_norm(sa.s_gamma.gamma() - sb.s_gamma.gamma());
    bool eq = dist < st.tol;
    emit(json{{"equivalent", eq}, {"distance", dist}, {"tol", st.tol}}, st, out);
    return eq ? 0 : 1;
}

int cmd_classify(const CliState &st, std::ostream &out) {
    if (!st.family.empty()) {
        SeedFamily fam;
        if (st.family == "G_abcd")
            fam = SeedFamily::Gabcd;
        else if (st.family == "L_abc2")
            fam = SeedFamily::Labc2;
        else if (st.family == "L_a2b2")
            fam = SeedFamily::La2b2;
        else if (st.family == "NullCone4")
            fam = SeedFamily::NullCone4;
        else
            throw invalid_input("UnknownFamily: " + st.family);
        std::vector<cplx> params;
        for (std::size_t i = 0; i + 1 < st.family_params.size(); i += 2)
            params.emplace_back(st.family_params[i], st.family_params[i + 1]);
        emit(label_to_json(classify_4mode_seed(fam, params)), st, out);
        return 0;
    }
    FockVector psi = state_from_json(load_json_file(st.inputs.at(0)));
    if (psi.modes() == 3) {
        emit(label_to_json(classify_3mode(psi)), st, out);
        return 0;
    }
    if (psi.modes() == 4) {
        SloccLabel label;
        bool gaussian = is_gaussian_four_mode_pure(psi);
        label.gaussian = gaussian;
        if (!gaussian) {
            label.kind = SloccLabel::Kind::NonGaussian;
        } else {
            NormalFormTrace tr = normal_form_iterate(psi, st.max_iter);
            label.kind = tr.verdict == NormalFormTrace::Verdict::NullCone
                             ? SloccLabel::Kind::NullCone4
                             : SloccLabel::Kind::Unclassified;
        }
        emit(label_to_json(label), st, out);
        return 0;
    }
    throw invalid_input("WrongModeCount: classify supports 3- and 4-mode states");
}

int cmd_gaussianity(const CliState &st, std::ostream &out) {
    FockVector psi = state_from_json(load_json_file(st.inputs.at(0)));
    json tests = json::object();
    double residual = gaussian_pure_residual(psi);
    bool gaussian = residual < 1e-9;
    tests["lambda_residual"] = residual;
    if (psi.modes() == 2)
        tests["two_mode_determinant"] =
            is_gaussian_two_mode(FockDensity::from_vector(psi));
    if (psi.modes() == 4) {
        tests["xyxy"] = std::abs(xyxy_invariant(psi));
        tests["four_mode"] = is_gaussian_four_mode_pure(psi);
    }
    emit(json{{"fermionic", psi.is_fermionic()},
              {"gaussian", gaussian},
              {"tests", std::move(tests)}},
         st, out);
    return gaussian ? 0 : 1;
}

int cmd_apply_channel(const CliState &st, std::ostream &out) {
    GaussianChannel ch = channel_from_json(load_json_file(st.inputs.at(0)));
    CovarianceMatrix g = cm_from_json(load_json_file(st.inputs.at(1)));
    CovarianceMatrix res = apply_channel_cm(ch, g);
    emit(cm_to_json(res), st, out);
    return 0;
}

int cmd_simulate_protocol(const CliState &st, std::ostream &out) {
    Protocol p = protocol_from_json(load_json_file(st.inputs.at(0)));
    FockVector psi = state_from_json(load_json_file(st.inputs.at(1)));
    auto branches = run_protocol(psi, p);
    json jb = json::array();
    double psum = 0;
    for (const auto &br : branches) {
        psum += br.probability;
        jb.push_back(json{{"transcript", br.transcript},
                          {"probability", br.probability},
                          {"state", state_to_json(br.state)}});
    }
    json res{{"branches", std::move(jb)}, {"probability_sum", psum}};
    int code = 0;
    if (!st.target_path.empty()) {
        FockVector target = state_from_json(load_json_file(st.target_path));
        EqualityMode mode = EqualityMode::Both;
        if (st.equality_mode == "overlap") mode = EqualityMode::Overlap;
        if (st.equality_mode == "glu") mode = EqualityMode::StandardForm;
        bool det = verify_deterministic(psi, target, p, st.tol, mode);
        res["deterministic"] = det;
        code = det ? 0 : 1;
    }
    emit(res, st, out);
    return code;
}

int cmd_normal_form(const CliState &st, std::ostream &out) {
    FockVector psi = state_from_json(load_json_file(st.inputs.at(0)));
    NormalFormTrace tr = normal_form_iterate(psi, st.max_iter);
    const char *verdict =
        tr.verdict == NormalFormTrace::Verdict::CriticalReached ? "critical_reached"
        : tr.verdict == NormalFormTrace::Verdict::NullCone      ? "null_cone"
                                                                : "max_iter_plateau";
    json res{{"verdict", verdict},
             {"iterations", tr.iterations},
             {"final_squared_norm",
              tr.norm_history.empty() ? 1.0 : tr.norm_history.back()}};
    json tail = json::array();
    std::size_t start = tr.norm_history.size() > 16 ? tr.norm_history.size() - 16 : 0;
    for (std::size_t i = start; i < tr.norm_history.size(); ++i)
        tail.push_back(tr.norm_history[i]);
    res["norm_history_tail"] = std::move(tail);
    if (tr.final_state) res["final_state"] = state_to_json(*tr.final_state);
    emit(res, st, out);
    return 0;
}

int cmd_separability(const CliState &st, std::ostream &out) {
    CovarianceMatrix g = cm_from_json(load_json_file(st.inputs.at(0)));
    if (st.partition.empty())
        throw invalid_input("BadPartition: --partition required");
    Bipartition part = partition_from_string(st.partition, g.modes());
    bool sep = is_s2pi_separable_cm(g, part);
    json res{{"s2pi_separable", sep}};
    if (part.parties() == 2)
        res["correlation_rank"] = correlation_rank(g, part);
    emit(res, st, out);
    return sep ? 0 : 1;
}

int run_one(const std::vector<std::string> &argv_vec, std::ostream &out,
            std::ostream &err);

int cmd_batch(const CliState &st, std::ostream &out) {
    std::ifstream in(st.inputs.at(0));
    if (!in) throw invalid_input("BadFile: cannot open " + st.inputs.at(0));
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);

    std::vector<json> results(lines.size());
#pragma omp parallel for schedule(dynamic) if (lines.size() > 1)
    for (long i = 0; i < (long)lines.size(); ++i) {
        json row;
        try {
            json entry = json::parse(lines[i]);
            std::vector<std::string> argvv;
            argvv.push_back("fgs");
            argvv.push_back(entry.at("command").get<std::string>());
            if (entry.contains("args"))
                for (const auto &a : entry["args"]) argvv.push_back(a.get<std::string>());
            std::ostringstream so, se;
            int code = run_one(argvv, so, se);
            row["row"] = i;
            row["exit"] = code;
            row["result"] = json::parse(so.str());
            if (!se.str().empty()) row["stderr"] = se.str();
        } catch (const std::exception &e) {
            row["row"] = i;
            row["exit"] = 2;
            row["error"] = e.what();
        }
        results[i] = std::move(row);
    }

    std::ostringstream report;
    for (const auto &r : results) report << r.dump() << "\n";
    if (!st.out_path.empty()) {
        std::ofstream f(st.out_path);
        if (!f) throw invalid_input("BadFile: cannot write " + st.out_path);
        f << report.str();
    }
    out << report.str();
    return 0;
}

int run_one(const std::vector<std::string> &argv_vec, std::ostream &out,
            std::ostream &err) {
    std::vector<const char *> argv;
    for (const auto &s : argv_vec) argv.push_back(s.c_str());
    return cli_run((int)argv.size(), argv.data(), out, err);
}

}  // namespace

int cli_run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CliState st;
    if (const char *env = std::getenv("FERMI_GAUSS_TOL")) st.tol = std::atof(env);

    CLI::App app{"Gaussian fermionic state toolbox"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App *sub, std::size_t n_inputs, bool exact = true) {
        sub->add_option("--tol", st.tol, "tolerance override");
        sub->add_flag("--no-z-flips", st.no_z_flips,
                      "forbid parity-flip operations (selection rule mode)");
        sub->add_option("--seed", st.seed, "RNG seed for sampling commands");
        sub->add_option("-o,--output", st.out_path, "also write the result here");
        auto *opt = sub->add_option("inputs", st.inputs, "input JSON file(s)");
        if (exact)
            opt->expected((int)n_inputs);
        return sub;
    };

    auto *validate = add_common(app.add_subcommand("validate", "check a CM"), 1);
    auto *sform =
        add_common(app.add_subcommand("standard-form", "canonical GLU form"), 1);
    auto *equiv =
        add_common(app.add_subcommand("equivalent", "GLU equivalence of two CMs"), 2);
    auto *classify =
        add_common(app.add_subcommand("classify", "SLOCC class label"), 1, false);
    classify->add_option("--family", st.family, "seed family for 4-mode labels");
    classify->add_option("--params", st.family_params,
                         "family parameters re, im pairs");
    classify->add_option("--max-iter", st.max_iter, "normal form iteration cap");
    auto *gauss =
        add_common(app.add_subcommand("gaussianity", "Gaussianity tests"), 1);
    auto *applych =
        add_common(app.add_subcommand("apply-channel", "channel action on a CM"), 2);
    auto *simulate = add_common(
        app.add_subcommand("simulate-protocol", "expand an FLOCC protocol"), 2);
    simulate->add_option("--target", st.target_path, "target state for determinism");
    simulate->add_option("--mode", st.equality_mode, "overlap | glu | both");
    auto *nform =
        add_common(app.add_subcommand("normal-form", "iterative SLOCC normal form"), 1);
    nform->add_option("--max-iter", st.max_iter, "sweep cap");
    auto *sep =
        add_common(app.add_subcommand("separability", "direct-sum criterion"), 1);
    sep->add_option("--partition", st.partition, "mode groups, e.g. 1,2|3");
    auto *batch =
        add_common(app.add_subcommand("batch", "run a JSONL manifest"), 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(st, out);
        if (app.got_subcommand(sform)) return cmd_standard_form(st, out);
        if (app.got_subcommand(equiv)) return cmd_equivalent(st, out);
        if (app.got_subcommand(classify)) return cmd_classify(st, out);
        if (app.got_subcommand(gauss)) return cmd_gaussianity(st, out);
        if (app.got_subcommand(applych)) return cmd_apply_channel(st, out);
        if (app.got_subcommand(simulate)) return cmd_simulate_protocol(st, out);
        if (app.got_subcommand(nform)) return cmd_normal_form(st, out);
        if (app.got_subcommand(sep)) return cmd_separability(st, out);
        if (app.got_subcommand(batch)) return cmd_batch(st, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace fgs
