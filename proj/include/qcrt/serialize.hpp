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

// JSON file formats for contexts, modulus families, code specs, and words.
// Files carry one context object; element strings inside are the bare hex
// coordinate form (the "p,e,m:" header form is used for single elements on
// the CLI). Family cofactors are never stored: build_family recomputes and
// verifies them on load.

#ifndef QCRT_SERIALIZE_HPP
#define QCRT_SERIALIZE_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcrt/code.hpp"
#include "qcrt/crt.hpp"
#include "qcrt/rankmetric.hpp"

namespace qcrt {

using njson = nlohmann::json;

inline njson context_to_json(const FieldContext& ctx) {
    njson j;
    j["p"] = ctx.p();
    j["e"] = ctx.e();
    j["m"] = ctx.m();
    j["l"] = ctx.l();
    j["modulus"] = ctx.modulus();
    return j;
}

inline CtxPtr context_from_json(const njson& j) {
    std::vector<std::uint8_t> mod;
    if (j.contains("modulus")) mod = j.at("modulus").get<std::vector<std::uint8_t>>();
    return FieldContext::make(j.at("p").get<std::uint32_t>(), j.at("e").get<std::uint32_t>(),
                              j.at("m").get<std::uint32_t>(),
                              j.value("l", std::uint32_t{1}), std::move(mod));
}

inline njson poly_to_json(const LinPoly& P) {
    njson arr = njson::array();
    for (int i = 0; i <= P.qdeg(); ++i)
        arr.push_back(P.ctx()->to_hex(P.coeff(static_cast<std::size_t>(i))));
    return arr;
}

inline LinPoly poly_from_json(const CtxPtr& ctx, const njson& j) {
    std::vector<FieldElement> c;
    for (const auto& s : j) c.push_back(ctx->from_hex(s.get<std::string>()));
    return LinPoly(ctx, std::move(c));
}

inline njson family_to_json(const ModulusFamily& fam) {
    njson j;
    j["context"] = context_to_json(*fam.ctx);
    njson mods = njson::array();
    for (const auto& f : fam.moduli) mods.push_back(poly_to_json(f));
    j["moduli"] = mods;
    return j;
}

inline FamilyPtr family_from_json(const njson& j) {
    const CtxPtr ctx = context_from_json(j.at("context"));
    std::vector<LinPoly> mods;
    for (const auto& mj : j.at("moduli")) mods.push_back(poly_from_json(ctx, mj));
    return build_family(std::move(mods));
}

inline njson spec_to_json(const CodeSpec& spec) {
    njson j = family_to_json(*spec.family());
    j["k"] = spec.k();
    j["A"] = poly_to_json(spec.A());
    return j;
}

inline SpecPtr spec_from_json(const njson& j) {
    FamilyPtr fam = family_from_json(j);
    const LinPoly A = poly_from_json(fam->ctx, j.at("A"));
    return CodeSpec::make(std::move(fam), j.at("k").get<std::size_t>(), A);
}

inline njson word_to_json(const CtxPtr& ctx, const Codeword& cw) {
    njson arr = njson::array();
    for (const auto& b : cw.blocks)
        for (const auto& x : b) arr.push_back(ctx->to_hex(x));
    njson j;
    j["word"] = arr;
    return j;
}

inline Codeword word_from_json(const ModulusFamily& fam, const njson& j) {
    std::vector<FieldElement> v;
    for (const auto& s : j.at("word")) v.push_back(fam.ctx->from_hex(s.get<std::string>()));
    return word_from_flat(fam, v);
}

/// Row-major basis dump with a (q, m, dim) header.
inline njson subspace_to_json(const Subspace& s) {
    njson j;
    j["q"] = s.ctx()->q();
    j["m"] = s.ctx()->m();
    j["dim"] = s.dim();
    njson rows = njson::array();
    for (std::size_t r = 0; r < s.dim(); ++r) {
        njson row = njson::array();
        for (std::size_t c = 0; c < s.ctx()->m(); ++c) row.push_back(s.basis_matrix().get(r, c));
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

inline Subspace subspace_from_json(const CtxPtr& ctx, const njson& j) {
    if (j.at("q").get<std::uint64_t>() != ctx->q() || j.at("m").get<std::uint32_t>() != ctx->m())
        throw std::invalid_argument("subspace header does not match the context");
    const auto& rows = j.at("rows");
    FqMat M(ctx->fq(), rows.size(), ctx->m());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < ctx->m(); ++c)
            M.set(r, c, rows[r][c].get<std::uint8_t>());
    auto s = Subspace::from_rows(ctx, std::move(M));
    if (s.dim() != j.at("dim").get<std::size_t>())
        throw std::invalid_argument("subspace rows are not a basis of the declared dimension");
    return s;
}

inline njson load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    njson j;
    in >> j;
    return j;
}

inline void save_json_file(const std::string& path, const njson& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace qcrt

#endif
