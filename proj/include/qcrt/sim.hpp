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

/**
 * @file sim.hpp
 * @brief Monte Carlo experiment harness: family generation, end-to-end
 * encode/corrupt/decode trials, theory-vs-empirical rows, CSV and SVG output.
 *
 * Reproducibility contract: the same seed and config produce byte-identical
 * CSV. Trials run on a worker pool, but every trial draws from its own RNG
 * stream derived from (seed, r, trial) and the tallies are plain sums, so the
 * result does not depend on scheduling.
 */

#ifndef QCRT_SIM_HPP
#define QCRT_SIM_HPP

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qcrt/analysis.hpp"
#include "qcrt/decoder.hpp"
#include "qcrt/serialize.hpp"

namespace qcrt {

class FamilySearchExhausted : public std::runtime_error {
   public:
    explicit FamilySearchExhausted(std::size_t tries)
        : std::runtime_error("no chain-coprime family found in " + std::to_string(tries) +
                             " attempts") {}
};

/// Samples one monic linearized polynomial of the given q-degree with
/// coefficients in GF(q^l).
inline LinPoly random_modulus(const CtxPtr& ctx, std::size_t deg, std::uint32_t l, Rng& rng) {
    std::vector<FieldElement> c(deg + 1);
    for (std::size_t i = 0; i < deg; ++i) c[i] = ctx->random_subfield_element(rng, l);
    c[deg] = ctx->one();
    return LinPoly(ctx, std::move(c));
}

/// Samples a chain-coprime family with the given degree profile and
/// coefficients in GF(q^l) (l from the context). Moduli are drawn one at a
/// time and redrawn until coprime with the running llcm chain; redrawing the
/// whole family at once has acceptance probability that collapses with the
/// block count (about (1 - 1/q) per pair). A profile of all-ones with l = m
/// instead draws GF(q)-independent points z_i and uses the degree-one moduli
/// X^q - z_i^{q-1} X.
inline FamilyPtr generate_family(const CtxPtr& ctx, const std::vector<std::size_t>& degrees,
                                 Rng& rng, std::size_t max_tries = 200) {
    const std::uint32_t l = ctx->l();
    const bool point_style =
        l == ctx->m() && std::all_of(degrees.begin(), degrees.end(),
                                     [](std::size_t d) { return d == 1; });
    for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
        std::vector<LinPoly> mods;
        if (point_style) {
            std::vector<FieldElement> pts;
            std::size_t tries = 0;
            while (pts.size() < degrees.size() && tries++ < 64 * degrees.size()) {
                pts.push_back(ctx->random_nonzero(rng));
                if (support(ctx, pts).dim() != pts.size()) pts.pop_back();
            }
            if (pts.size() < degrees.size()) continue;
            for (const auto& z : pts) mods.push_back(point_modulus(ctx, z));
        } else {
            LinPoly chain = LinPoly::identity(ctx);
            bool stuck = false;
            for (auto d : degrees) {
                bool found = false;
                for (std::size_t t = 0; t < 200 && !found; ++t) {
                    LinPoly f = random_modulus(ctx, d, l, rng);
                    if (mods.empty() || rgcd(chain, f).qdeg() == 0) {
                        chain = mods.empty() ? f : llcm(chain, f);
                        mods.push_back(std::move(f));
                        found = true;
                    }
                }
                if (!found) {
                    stuck = true;
                    break;
                }
            }
            if (stuck) continue;
        }
        try {
            return build_family(std::move(mods));
        } catch (const ChainNotCoprime&) {
            continue;
        }
    }
    throw FamilySearchExhausted(max_tries);
}

/// Balanced degree profile: s blocks of near-equal size summing to n, except
/// that l = m requests the all-ones (point) profile.
inline std::vector<std::size_t> default_profile(std::size_t n, std::size_t s, std::uint32_t l,
                                                std::uint32_t m) {
    if (l == m) return std::vector<std::size_t>(n, 1);
    if (s == 0 || s > n) throw std::invalid_argument("block count out of range");
    std::vector<std::size_t> deg(s, n / s);
    for (std::size_t i = 0; i < n % s; ++i) ++deg[i];
    return deg;
}

enum class ExperimentMode { Decode, SupportCapture };

struct ExperimentConfig {
    CodeParams params;
    std::size_t blocks = 4;            // modulus count for generated families
    std::string profile = "balanced";  // balanced | points | two-block
    std::string family_file;           // non-empty: load family instead
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    std::size_t r_min = 0;
    std::size_t r_max = 0;
    ExperimentMode mode = ExperimentMode::Decode;
    bool within_radius_column = false;
    std::size_t threads = 0;  // 0 = hardware concurrency
    std::size_t family_retries = 200;
    std::string csv_path;
    std::string svg_path;
};

struct ExperimentRow {
    std::size_t r = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double empirical = 0.0;
    double theoretical = 0.0;
    double stddev = 0.0;
    std::size_t within_radius = 0;  // decodes within radius (not necessarily exact)
    // bound markers
    bool crossed_system = false;
    bool crossed_support = false;
    bool crossed_unique = false;
    // support-capture extras
    std::size_t max_lifted_dim = 0;
    std::size_t product_violations = 0;  // trials with supp(E) not in supp(e)*GF(q^l)
};

struct ExperimentSetup {
    CtxPtr ctx;
    FamilyPtr fam;
    SpecPtr spec;
};

inline ExperimentSetup build_setup(const ExperimentConfig& cfg) {
    cfg.params.validate();
    ExperimentSetup s;
    s.ctx = FieldContext::make_q(cfg.params.q, cfg.params.m, cfg.params.l);
    Rng frng = Rng::derive(cfg.seed, 0xFA111175ull, 0);
    if (!cfg.family_file.empty()) {
        s.fam = family_from_json(load_json_file(cfg.family_file));
        if (s.fam->n != cfg.params.n) throw std::invalid_argument("family length mismatch");
    } else if (cfg.profile == "two-block") {
        if (cfg.params.n <= cfg.params.m)
            throw std::invalid_argument("two-block profile needs n > m");
        s.fam = make_two_block_family(s.ctx, cfg.params.n - cfg.params.m);
    } else if (cfg.profile == "points") {
        s.fam = generate_family(s.ctx, std::vector<std::size_t>(cfg.params.n, 1), frng,
                                cfg.family_retries);
    } else {
        s.fam = generate_family(
            s.ctx, default_profile(cfg.params.n, cfg.blocks, cfg.params.l, cfg.params.m), frng,
            cfg.family_retries);
    }
    // message map: random A of q-degree exactly alpha
    std::vector<FieldElement> ac(cfg.params.alpha + 1);
    for (std::size_t i = 0; i < cfg.params.alpha; ++i) ac[i] = s.ctx->random_element(frng);
    ac[cfg.params.alpha] = s.ctx->random_nonzero(frng);
    s.spec = CodeSpec::make(s.fam, cfg.params.k, LinPoly(s.ctx, std::move(ac)));
    return s;
}

inline LinPoly random_message(const CodeSpec& spec, Rng& rng) {
    std::vector<FieldElement> c(spec.k());
    for (auto& x : c) x = spec.ctx()->random_element(rng);
    return LinPoly(spec.ctx(), std::move(c));
}

inline std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg,
                                                 const ExperimentSetup& setup) {
    const auto& spec = *setup.spec;
    const auto ctx = setup.ctx;
    const auto& fam = *setup.fam;
    const std::uint32_t l = fam.coeff_subfield_degree;
    const auto bounds = decode_bounds(spec, l);
    const std::size_t rcall = std::min(bounds.system_bound, bounds.support_bound);
    const std::size_t low_len = spec.k() + spec.alpha();
    const Subspace lfield = subfield_subspace(ctx, l);
    // warm the lazily cached parity machinery before the workers share it
    (void)spec.subcode_parity();

    const std::size_t nthreads =
        cfg.threads ? cfg.threads : std::max<std::size_t>(1, std::thread::hardware_concurrency());

    std::vector<ExperimentRow> rows;
    for (std::size_t r = cfg.r_min; r <= cfg.r_max; ++r) {
        std::atomic<std::size_t> next{0}, succ{0}, within{0}, viol{0}, maxdim{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t t = next.fetch_add(1);
                if (t >= cfg.trials) return;
                Rng rng = Rng::derive(cfg.seed, r, t);
                if (cfg.mode == ExperimentMode::Decode) {
                    const LinPoly P = random_message(spec, rng);
                    auto cw = flat(encode(spec, P));
                    const auto e = random_error(ctx, spec.n(), r, rng);
                    for (std::size_t i = 0; i < cw.size(); ++i) cw[i] = ctx->add(cw[i], e[i]);
                    const Codeword y = word_from_flat(fam, cw);
                    const DecodeResult res = (l == 1) ? decode(spec, y, rcall)
                                                      : decode_extended(spec, y, rcall);
                    if (res.success) {
                        within.fetch_add(1);
                        if (res.message == P) succ.fetch_add(1);
                    }
                } else {
                    const auto e = random_error(ctx, spec.n(), r, rng);
                    const LinPoly E =
                        crt_lift_incremental(residues_of_word(fam, word_from_flat(fam, e)), fam);
                    std::vector<FieldElement> high(spec.n() - low_len, ctx->zero());
                    for (std::size_t t2 = low_len; t2 < spec.n(); ++t2)
                        high[t2 - low_len] = E.coeff(t2);
                    const Subspace sE = support(E, spec.n());
                    const Subspace sHigh = support(ctx, high);
                    if (sHigh == sE) succ.fetch_add(1);
                    const Subspace se = support(ctx, e);
                    const Subspace budget = (l == 1) ? se : subspace_product(se, lfield);
                    if (!budget.includes(sE) || sE.dim() > static_cast<std::size_t>(l) * r)
                        viol.fetch_add(1);
                    std::size_t cur = maxdim.load();
                    while (sE.dim() > cur && !maxdim.compare_exchange_weak(cur, sE.dim())) {
                    }
                }
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i + 1 < nthreads; ++i) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();

        ExperimentRow row;
        row.r = r;
        row.trials = cfg.trials;
        row.successes = succ.load();
        row.within_radius = within.load();
        row.empirical = static_cast<double>(row.successes) / static_cast<double>(cfg.trials);
        if (l == 1)
            row.theoretical = success_probability(cfg.params, r);
        else
            row.theoretical =
                (r <= cfg.params.m / l) ? success_probability_bound(cfg.params, r) : 0.0;
        row.stddev = binomial_stddev(row.theoretical, cfg.trials);
        row.crossed_system = r > bounds.system_bound;
        row.crossed_support = r > bounds.support_bound;
        row.crossed_unique = r > bounds.unique_radius;
        row.max_lifted_dim = maxdim.load();
        row.product_violations = viol.load();
        rows.push_back(row);
    }
    return rows;
}

inline std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
    return run_experiment(cfg, build_setup(cfg));
}

// ---- CSV ----

inline std::string to_csv(const std::vector<ExperimentRow>& rows, bool within_column = false) {
    std::string out = "r,trials,successes,empirical,theoretical,stddev";
    if (within_column) out += ",within_radius";
    out += "\n";
    char buf[256];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%.17g,%.17g,%.17g", row.r, row.trials,
                      row.successes, row.empirical, row.theoretical, row.stddev);
        out += buf;
        if (within_column) {
            std::snprintf(buf, sizeof buf, ",%zu", row.within_radius);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

inline void emit_csv(const std::vector<ExperimentRow>& rows, const std::string& path,
                     bool within_column = false) {
    if (rows.empty()) throw std::invalid_argument("no rows to emit");
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << to_csv(rows, within_column);
}

/// Parses the columns emitted by to_csv; other row fields are left default.
inline std::vector<ExperimentRow> parse_csv(const std::string& text) {
    std::vector<ExperimentRow> rows;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
    const bool within_column = line.find(",within_radius") != std::string::npos;
    if (line.rfind("r,trials,successes,empirical,theoretical,stddev", 0) != 0)
        throw std::invalid_argument("unexpected CSV header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ExperimentRow row;
        const char* fmt = within_column ? "%zu,%zu,%zu,%lg,%lg,%lg,%zu" : "%zu,%zu,%zu,%lg,%lg,%lg";
        const int want = within_column ? 7 : 6;
        const int got =
            std::sscanf(line.c_str(), fmt, &row.r, &row.trials, &row.successes, &row.empirical,
                        &row.theoretical, &row.stddev, &row.within_radius);
        if (got != want) throw std::invalid_argument("bad CSV row: " + line);
        rows.push_back(row);
    }
    return rows;
}

// ---- SVG ----

/// Writes the empirical and theoretical curves with vertical rules at the
/// linear-system bound (red) and the unique decoding radius (black).
inline void emit_svg(const std::vector<ExperimentRow>& rows, const std::string& path,
                     const DecodingRadius& bounds) {
    if (rows.empty()) throw std::invalid_argument("no rows to plot");
    const double W = 720, H = 480, ml = 60, mr = 20, mt = 20, mb = 45;
    double rmin = static_cast<double>(rows.front().r);
    double rmax = static_cast<double>(rows.back().r);
    if (rmax <= rmin) rmax = rmin + 1;
    auto xpos = [&](double r) { return ml + (r - rmin) / (rmax - rmin) * (W - ml - mr); };
    auto ypos = [&](double v) { return H - mb - v * (H - mt - mb); };
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    s << "  <rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    // axes
    s << "  <line x1=\"" << ml << "\" y1=\"" << ypos(0) << "\" x2=\"" << W - mr << "\" y2=\""
      << ypos(0) << "\" stroke=\"#444\"/>\n";
    s << "  <line x1=\"" << ml << "\" y1=\"" << ypos(0) << "\" x2=\"" << ml << "\" y2=\""
      << ypos(1) << "\" stroke=\"#444\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = tick / 4.0;
        s << "  <text x=\"" << ml - 8 << "\" y=\"" << ypos(v) + 4
          << "\" text-anchor=\"end\" font-size=\"12\">" << v << "</text>\n";
    }
    s << "  <text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 10
      << "\" text-anchor=\"middle\" font-size=\"13\">rank weight</text>\n";
    auto polyline = [&](const char* color, bool theo) {
        s << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
        for (const auto& row : rows)
            s << xpos(static_cast<double>(row.r)) << ","
              << ypos(theo ? row.theoretical : row.empirical) << " ";
        s << "\"/>\n";
    };
    polyline("#1f77b4", false);  // empirical, blue
    polyline("#555555", true);   // theoretical
    auto rule = [&](double r, const char* color) {
        if (r < rmin || r > rmax) return;
        s << "  <line x1=\"" << xpos(r) << "\" y1=\"" << ypos(0) << "\" x2=\"" << xpos(r)
          << "\" y2=\"" << ypos(1) << "\" stroke=\"" << color
          << "\" stroke-dasharray=\"4 3\"/>\n";
    };
    rule(static_cast<double>(bounds.system_bound), "#d62728");   // red: linear system
    rule(static_cast<double>(bounds.unique_radius), "#000000");  // black: unique radius
    s << "  <text x=\"" << ml + 6 << "\" y=\"" << mt + 4
      << "\" font-size=\"12\" fill=\"#1f77b4\">empirical</text>\n";
    s << "  <text x=\"" << ml + 6 << "\" y=\"" << mt + 20
      << "\" font-size=\"12\" fill=\"#555555\">theoretical</text>\n";
    s << "</svg>\n";
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << s.str();
}

// ---- config JSON ----

inline njson config_to_json(const ExperimentConfig& cfg) {
    njson j;
    j["n"] = cfg.params.n;
    j["k"] = cfg.params.k;
    j["alpha"] = cfg.params.alpha;
    j["q"] = cfg.params.q;
    j["m"] = cfg.params.m;
    j["l"] = cfg.params.l;
    j["blocks"] = cfg.blocks;
    j["profile"] = cfg.profile;
    j["family_file"] = cfg.family_file;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    j["r_min"] = cfg.r_min;
    j["r_max"] = cfg.r_max;
    j["mode"] = cfg.mode == ExperimentMode::Decode ? "decode" : "support";
    j["within_radius_column"] = cfg.within_radius_column;
    j["threads"] = cfg.threads;
    j["family_retries"] = cfg.family_retries;
    j["csv"] = cfg.csv_path;
    j["svg"] = cfg.svg_path;
    return j;
}

inline ExperimentConfig config_from_json(const njson& j) {
    ExperimentConfig cfg;
    cfg.params.n = j.at("n").get<std::size_t>();
    cfg.params.k = j.at("k").get<std::size_t>();
    cfg.params.alpha = j.at("alpha").get<std::size_t>();
    cfg.params.q = j.at("q").get<std::uint64_t>();
    cfg.params.m = j.at("m").get<std::uint32_t>();
    cfg.params.l = j.value("l", std::uint32_t{1});
    cfg.blocks = j.value("blocks", std::size_t{4});
    cfg.profile = j.value("profile", std::string("balanced"));
    cfg.family_file = j.value("family_file", std::string());
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.trials = j.value("trials", std::size_t{100});
    cfg.r_min = j.value("r_min", std::size_t{0});
    cfg.r_max = j.value("r_max", std::size_t{0});
    cfg.mode = j.value("mode", std::string("decode")) == "support" ? ExperimentMode::SupportCapture
                                                                   : ExperimentMode::Decode;
    cfg.within_radius_column = j.value("within_radius_column", false);
    cfg.threads = j.value("threads", std::size_t{0});
    cfg.family_retries = j.value("family_retries", std::size_t{200});
    cfg.csv_path = j.value("csv", std::string());
    cfg.svg_path = j.value("svg", std::string());
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (cfg.r_max > cfg.params.n) throw std::invalid_argument("r range exceeds n");
    return cfg;
}

}  // namespace qcrt

#endif
