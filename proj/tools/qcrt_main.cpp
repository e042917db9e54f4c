/*
   Copyright 2026 qcrt contributors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Command-line front end: gen | encode | decode | simulate | prob | selftest.
// Exit codes: 0 ok, 1 usage/error, 2 decode failure, 3 family search exhausted.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qcrt/qcrt.hpp"

namespace {

using namespace qcrt;

struct GenArgs {
    std::uint64_t q = 2;
    std::uint32_t m = 24;
    std::uint32_t l = 1;
    std::size_t n = 40, k = 8, alpha = 4, blocks = 4;
    std::string profile = "balanced";
    std::uint64_t seed = 1;
    std::size_t retries = 200;
    std::string out = "spec.json";
};

int cmd_gen(const GenArgs& a) {
    ExperimentConfig cfg;
    cfg.params = CodeParams{a.n, a.k, a.alpha, a.q, a.m, a.l};
    cfg.blocks = a.blocks;
    cfg.profile = a.profile;
    cfg.seed = a.seed;
    cfg.family_retries = a.retries;
    const auto setup = build_setup(cfg);
    save_json_file(a.out, spec_to_json(*setup.spec));
    std::printf("wrote %s (n=%zu k=%zu alpha=%zu, %zu moduli)\n", a.out.c_str(),
                setup.spec->n(), setup.spec->k(), setup.spec->alpha(), setup.fam->size());
    return 0;
}

int cmd_encode(const std::string& spec_path, const std::string& msg_path, bool random_msg,
               std::uint64_t seed, const std::string& out) {
    const SpecPtr spec = spec_from_json(load_json_file(spec_path));
    LinPoly P;
    if (random_msg) {
        Rng rng(seed);
        P = random_message(*spec, rng);
    } else {
        if (msg_path.empty()) throw std::runtime_error("need --message or --random");
        P = poly_from_json(spec->ctx(), load_json_file(msg_path));
    }
    const Codeword cw = encode(*spec, P);
    save_json_file(out, word_to_json(spec->ctx(), cw));
    std::printf("wrote %s (message qdeg %d)\n", out.c_str(), P.qdeg());
    return 0;
}

int cmd_decode(const std::string& spec_path, const std::string& word_path, long r_max_arg) {
    const SpecPtr spec = spec_from_json(load_json_file(spec_path));
    const Codeword y = word_from_json(*spec->family(), load_json_file(word_path));
    const std::uint32_t l = spec->family()->coeff_subfield_degree;
    const auto bounds = decode_bounds(*spec, l);
    const std::size_t rcall = r_max_arg >= 0
                                  ? static_cast<std::size_t>(r_max_arg)
                                  : std::min(bounds.system_bound, bounds.support_bound);
    const DecodeResult res =
        (l == 1) ? decode(*spec, y, rcall) : decode_extended(*spec, y, rcall);
    njson j;
    j["success"] = res.success;
    j["r_max"] = rcall;
    j["coeff_subfield_degree"] = l;
    j["high_support_dim"] = res.diag.high_support_dim;
    j["support_budget"] = res.diag.support_budget;
    j["system_unknowns"] = res.diag.system_unknowns;
    j["system_equations"] = res.diag.system_equations;
    if (res.success) {
        j["message"] = poly_to_json(res.message);
        j["error_weight"] = res.error_weight;
        j["residual_rank_distance"] = res.diag.residual_rank_distance;
        j["residual_sum_rank_distance"] = res.diag.residual_sum_rank_distance;
    } else {
        j["failure"] = to_string(*res.reason);
    }
    std::cout << j.dump(2) << "\n";
    return res.success ? 0 : 2;
}

int cmd_prob(const CodeParams& params, std::size_t r_min, std::size_t r_max,
             const std::string& out) {
    std::string csv = "r,probability\n";
    char buf[64];
    for (std::size_t r = r_min; r <= r_max; ++r) {
        double v;
        if (params.l == 1)
            v = success_probability(params, r);
        else
            v = (r <= params.m / params.l) ? success_probability_bound(params, r) : 0.0;
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", r, v);
        csv += buf;
    }
    if (out.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << csv;
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

int cmd_simulate(ExperimentConfig cfg) {
    const auto setup = build_setup(cfg);
    const auto rows = run_experiment(cfg, setup);
    const auto radius = decoding_radius(cfg.params);
    std::printf("r,trials,successes,empirical,theoretical\n");
    for (const auto& row : rows)
        std::printf("%zu,%zu,%zu,%.6f,%.6f\n", row.r, row.trials, row.successes, row.empirical,
                    row.theoretical);
    if (!cfg.csv_path.empty()) {
        emit_csv(rows, cfg.csv_path, cfg.within_radius_column);
        std::printf("wrote %s\n", cfg.csv_path.c_str());
    }
    if (!cfg.svg_path.empty()) {
        emit_svg(rows, cfg.svg_path, radius);
        std::printf("wrote %s\n", cfg.svg_path.c_str());
    }
    return 0;
}

int cmd_selftest();

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linearized-polynomial Chinese remainder codes"};
    app.require_subcommand(1);

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "generate a code spec (family + A) to JSON");
    gen->add_option("--q", ga.q, "base field size (prime power)");
    gen->add_option("--m", ga.m, "extension degree");
    gen->add_option("--l", ga.l, "modulus coefficient subfield degree");
    gen->add_option("--n", ga.n, "code length (sum of modulus degrees)");
    gen->add_option("--k", ga.k, "code dimension");
    gen->add_option("--alpha", ga.alpha, "q-degree of the message map A");
    gen->add_option("--blocks", ga.blocks, "modulus count for balanced profile");
    gen->add_option("--profile", ga.profile, "balanced | points | two-block");
    gen->add_option("--seed", ga.seed, "rng seed");
    gen->add_option("--retries", ga.retries, "family search attempts");
    gen->add_option("--out", ga.out, "output path");

    std::string spec_path, msg_path, word_path, out_path = "word.json";
    bool random_msg = false;
    std::uint64_t enc_seed = 1;
    auto* enc = app.add_subcommand("encode", "encode a message with a spec");
    enc->add_option("--spec", spec_path)->required();
    enc->add_option("--message", msg_path, "JSON array of coefficient hex strings");
    enc->add_flag("--random", random_msg, "encode a random message instead");
    enc->add_option("--seed", enc_seed);
    enc->add_option("--out", out_path);

    std::string dspec, dword;
    long r_max_arg = -1;
    auto* dec = app.add_subcommand("decode", "decode a received word (exit 2 on failure)");
    dec->add_option("--spec", dspec)->required();
    dec->add_option("--word", dword)->required();
    dec->add_option("--r-max", r_max_arg, "distance gate (default: decoding bound)");

    CodeParams pp{200, 50, 50, 5, 80, 1};
    std::size_t pr_min = 0, pr_max = 100;
    std::string pout;
    auto* prob = app.add_subcommand("prob", "print the success-probability table as CSV");
    prob->add_option("--n", pp.n);
    prob->add_option("--k", pp.k);
    prob->add_option("--alpha", pp.alpha);
    prob->add_option("--q", pp.q);
    prob->add_option("--m", pp.m);
    prob->add_option("--l", pp.l);
    prob->add_option("--r-min", pr_min);
    prob->add_option("--r-max", pr_max);
    prob->add_option("--out", pout);

    std::string cfg_path, sim_csv, sim_svg, sim_mode = "decode", sim_profile = "balanced";
    ExperimentConfig scfg;
    scfg.params = CodeParams{40, 8, 4, 2, 24, 1};
    scfg.r_max = 8;
    auto* sim = app.add_subcommand("simulate", "run a Monte Carlo experiment");
    sim->add_option("--config", cfg_path, "experiment config JSON (overrides other flags)");
    sim->add_option("--n", scfg.params.n);
    sim->add_option("--k", scfg.params.k);
    sim->add_option("--alpha", scfg.params.alpha);
    sim->add_option("--q", scfg.params.q);
    sim->add_option("--m", scfg.params.m);
    sim->add_option("--l", scfg.params.l);
    sim->add_option("--blocks", scfg.blocks);
    sim->add_option("--profile", sim_profile);
    sim->add_option("--family", scfg.family_file, "load family JSON instead of generating");
    sim->add_option("--seed", scfg.seed);
    sim->add_option("--trials", scfg.trials);
    sim->add_option("--r-min", scfg.r_min);
    sim->add_option("--r-max", scfg.r_max);
    sim->add_option("--mode", sim_mode, "decode | support");
    sim->add_option("--threads", scfg.threads);
    sim->add_flag("--within-radius-column", scfg.within_radius_column);
    sim->add_option("--out", sim_csv, "CSV output path");
    sim->add_option("--svg", sim_svg, "SVG output path");

    auto* st = app.add_subcommand("selftest", "run the property suites");
    (void)st;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return cmd_gen(ga);
        if (enc->parsed()) return cmd_encode(spec_path, msg_path, random_msg, enc_seed, out_path);
        if (dec->parsed()) return cmd_decode(dspec, dword, r_max_arg);
        if (prob->parsed()) return cmd_prob(pp, pr_min, pr_max, pout);
        if (sim->parsed()) {
            if (!cfg_path.empty()) {
                scfg = config_from_json(load_json_file(cfg_path));
            } else {
                scfg.mode = sim_mode == "support" ? ExperimentMode::SupportCapture
                                                  : ExperimentMode::Decode;
                scfg.profile = sim_profile;
                scfg.csv_path = sim_csv;
                scfg.svg_path = sim_svg;
            }
            return cmd_simulate(scfg);
        }
        if (st->parsed()) return cmd_selftest();
    } catch (const qcrt::FamilySearchExhausted& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}

namespace {

struct Check {
    const char* name;
    bool ok;
};

int cmd_selftest() {
    std::vector<Check> checks;
    auto run = [&](const char* name, auto&& fn) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "  %s threw: %s\n", name, e.what());
        }
        checks.push_back({name, ok});
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
    };

    run("ring identities", [] {
        auto ctx = FieldContext::make(2, 1, 12);
        Rng rng(11);
        auto rp = [&](int d) {
            std::vector<FieldElement> c(static_cast<std::size_t>(d) + 1);
            for (auto& x : c) x = ctx->random_element(rng);
            c.back() = ctx->random_nonzero(rng);
            return LinPoly(ctx, std::move(c));
        };
        for (int t = 0; t < 200; ++t) {
            auto A = rp(8 + static_cast<int>(rng.below(8)));
            auto B = rp(1 + static_cast<int>(rng.below(8)));
            auto C = rp(static_cast<int>(rng.below(4)));
            auto [Q, R] = rquorem(A, B);
            if (!(compose(Q, B) + R == A) || R.qdeg() >= B.qdeg()) return false;
            auto eg = rgcd_extended(A, B);
            if (!(compose(eg.u, A) + compose(eg.v, B) == eg.g)) return false;
            auto L = llcm(A, B);
            if (!right_divides(A, L) || !right_divides(B, L)) return false;
            if (!(compose(compose(A, B), C) == compose(A, compose(B, C)))) return false;
        }
        return true;
    });

    run("remainder/evaluation link", [] {
        auto ctx = FieldContext::make(2, 1, 12);
        Rng rng(12);
        for (int t = 0; t < 200; ++t) {
            std::vector<FieldElement> c(10);
            for (auto& x : c) x = ctx->random_element(rng);
            LinPoly P(ctx, std::move(c));
            auto z = ctx->random_nonzero(rng);
            auto r = rrem(P, point_modulus(ctx, z));
            auto expect = scale(ctx->mul(ctx->inv(z), eval(P, z)), LinPoly::identity(ctx));
            if (!(r == expect)) return false;
        }
        return true;
    });

    run("chinese remainder round trip", [] {
        auto ctx = FieldContext::make(2, 1, 12);
        Rng rng(13);
        auto fam = generate_family(ctx, {4, 4, 4}, rng);
        for (int t = 0; t < 100; ++t) {
            std::vector<FieldElement> c(12);
            for (auto& x : c) x = ctx->random_element(rng);
            LinPoly g(ctx, std::move(c));
            auto rs = residues(g, *fam);
            if (!(crt_lift_incremental(rs, *fam) == g)) return false;
            if (!(crt_lift_direct(rs, *fam) == g)) return false;
        }
        return true;
    });

    run("lift preserves supports", [] {
        auto ctx = FieldContext::make(2, 1, 12);
        Rng rng(14);
        auto fam = generate_family(ctx, {6, 6}, rng);
        for (int t = 0; t < 50; ++t) {
            auto e = random_error(ctx, fam->n, 1 + rng.below(4), rng);
            auto E = crt_lift_incremental(residues_of_word(*fam, word_from_flat(*fam, e)), *fam);
            if (!support(ctx, e).includes(support(E, fam->n))) return false;
        }
        return true;
    });

    run("code structure", [] {
        auto ctx = FieldContext::make(2, 1, 12);
        Rng rng(15);
        ExperimentConfig cfg;
        cfg.params = CodeParams{12, 3, 2, 2, 12, 1};
        cfg.blocks = 3;
        cfg.seed = 15;
        auto setup = build_setup(cfg);
        const auto& G = setup.spec->generator_matrix();
        const auto& H = setup.spec->parity_check_matrix();
        if (G.rank() != 3 || H.rank() != 9) return false;
        for (int t = 0; t < 50; ++t) {
            auto P = random_message(*setup.spec, rng);
            auto s = H.apply(flat(encode(*setup.spec, P)));
            for (const auto& x : s)
                if (!ctx->is_zero(x)) return false;
        }
        return true;
    });

    run("decode round trip", [] {
        ExperimentConfig cfg;
        cfg.params = CodeParams{40, 8, 4, 2, 24, 1};
        cfg.seed = 16;
        cfg.trials = 50;
        cfg.r_min = 4;
        cfg.r_max = 4;
        auto rows = run_experiment(cfg);
        return rows[0].successes == rows[0].trials;
    });

    run("radius bounds and probability table", [] {
        CodeParams p{200, 50, 50, 5, 80, 1};
        auto d = decoding_radius(p);
        if (d.system_bound != 40 || d.support_bound != 100 || d.unique_radius != 75) return false;
        double prev = 2.0;
        for (std::size_t r = 0; r <= 100; ++r) {
            const double v = success_probability(p, r);
            if (v > prev + 1e-15) return false;
            prev = v;
        }
        return true;
    });

    bool all = true;
    for (const auto& c : checks) all &= c.ok;
    std::printf("%s\n", all ? "all selftests passed" : "selftest FAILURES");
    return all ? 0 : 1;
}

}  // namespace
