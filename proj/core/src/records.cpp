#include "lensembed/records.hpp"

namespace lensembed {

void to_json(Json& j, const KOrbit& o) { j = Json{{"modulus", o.modulus}, {"representative", o.representative}}; }

void to_json(Json& j, const HJString& s) { j = s.to_ints(); }

void to_json(Json& j, const Changemaker& s) { j = s.entries(); }

Json basis_json(const std::vector<SparseVec>& basis, std::size_t frame_size) {
  Json out = Json::array();
  for (const auto& v : basis) out.push_back(v.to_dense(frame_size));
  return out;
}

void to_json(Json& j, const Embedding& e) {
  j = Json{{"p", e.p},
           {"q", e.q},
           {"sigma", e.sigma},
           {"k", e.k.k},
           {"k_raw", e.k.raw},
           {"k_orbit", e.k.orbit.representative},
           {"genus", e.genus},
           {"basis", basis_json(e.basis, e.frame_size)}};
}

void to_json(Json& j, const LinearVerdict& v) {
  j = Json{{"verdict", to_string(v.kind)}};
  if (v.kind == LinearVerdict::Kind::linear) {
    j["p"] = v.p;
    j["q"] = v.q;
    j["q_orbit"] = v.q_orbit;
    j["k"] = v.k.k;
    j["k_raw"] = v.k.raw;
    j["k_orbit"] = v.k.orbit.representative;
    j["genus"] = v.genus;
    std::size_t frame = 0;
    for (const auto& x : v.basis)
      for (const auto& [i, c] : x.entries()) frame = std::max(frame, i + 1);
    j["basis"] = basis_json(v.basis, frame);
  } else if (v.kind == LinearVerdict::Kind::sum_of_two) {
    Json parts = Json::array();
    for (const auto& [p, q] : v.summands) parts.push_back({p, q});
    j["summands"] = parts;
  }
}

void to_json(Json& j, const StandardBasis& sb) {
  Json vectors = Json::array();
  for (const auto& v : sb.vectors) {
    vectors.push_back(Json{{"vector", v.vec.to_dense(sb.sigma.size())},
                           {"class", to_string(v.cls)},
                           {"norm", v.vec.norm()}});
  }
  j = Json{{"sigma", sb.sigma}, {"p", sb.sigma.norm()}, {"vectors", vectors}, {"gram", sb.gram}};
}

void to_json(Json& j, const BergeEntry& e) {
  Json sources = Json::array();
  for (const auto& s : e.sources) {
    Json src{{"type", to_string(s.type)}, {"k", s.k}};
    if (s.i != 0) src["i"] = s.i;
    if (s.d != 0) src["d"] = s.d;
    sources.push_back(src);
  }
  j = Json{{"type", e.type_tags()}, {"p", e.p}, {"k", e.k}, {"q", e.q}, {"k_orbit", e.k_orbit.representative},
           {"sources", sources}};
}

void to_json(Json& j, const RealizedClass& c) {
  j = Json{{"sigma", c.sigma}, {"k_orbit", c.k_orbit}, {"genus", c.genus}};
}

void from_json(const Json& j, RealizedClass& c) {
  j.at("sigma").get_to(c.sigma);
  j.at("k_orbit").get_to(c.k_orbit);
  j.at("genus").get_to(c.genus);
}

void to_json(Json& j, const RealizationRecord& r) {
  j = Json{{"p", r.p},
           {"q_orbit", r.q_orbit},
           {"embeddings", r.embeddings},
           {"embedding_orbits", r.embedding_orbits},
           {"berge_orbits", r.berge_orbits},
           {"berge_types", r.berge_types},
           {"status", to_string(r.status)},
           {"nodes", r.nodes}};
}

void from_json(const Json& j, RealizationRecord& r) {
  j.at("p").get_to(r.p);
  j.at("q_orbit").get_to(r.q_orbit);
  j.at("embeddings").get_to(r.embeddings);
  j.at("embedding_orbits").get_to(r.embedding_orbits);
  j.at("berge_orbits").get_to(r.berge_orbits);
  j.at("berge_types").get_to(r.berge_types);
  j.at("nodes").get_to(r.nodes);
  auto status = parse_realization_status(j.at("status").get<std::string>());
  if (!status) throw DomainError("unknown status in record");
  r.status = *status;
}

void to_json(Json& j, const GenusRecord& r) {
  j = Json{{"p", r.p},
           {"sigma", r.sigma},
           {"genus", r.genus},
           {"bound", r.bound},
           {"holds", r.holds},
           {"equality", r.equality},
           {"exception", r.exception}};
  if (r.type_i_minus) {
    j["i_minus_holds"] = r.i_minus_holds;
    j["i_minus_equality"] = r.i_minus_equality;
  }
}

void to_json(Json& j, const FixtureInstance& f) {
  Json types = Json::array();
  for (auto t : f.types) types.push_back(to_string(t));
  j = Json{{"family", f.family},
           {"params", f.params},
           {"norms", f.norms},
           {"p", f.p},
           {"q", f.q},
           {"p_formula", f.p_formula},
           {"k_formula", f.k_formula},
           {"k_computed", f.k_computed},
           {"k_sign", f.k_sign},
           {"inverted", f.inverted},
           {"source", to_string(f.source)},
           {"sigma", f.sigma},
           {"stars_match", f.stars_match},
           {"types", types},
           {"types_ok", f.types_ok},
           {"ok", f.ok()}};
  if (!f.note.empty()) j["note"] = f.note;
}

void to_json(Json& j, const IdentityCheck& c) {
  j = Json{{"identity", c.name}, {"checked", c.checked}, {"failed", c.failed}};
}

}  // namespace lensembed
