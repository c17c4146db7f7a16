#pragma once

#include <nlohmann/json.hpp>

#include "lensembed/berge.hpp"
#include "lensembed/changemaker.hpp"
#include "lensembed/contfrac.hpp"
#include "lensembed/embed.hpp"
#include "lensembed/fixtures.hpp"
#include "lensembed/verify.hpp"

namespace lensembed {

using Json = nlohmann::json;

void to_json(Json& j, const KOrbit& o);
void to_json(Json& j, const HJString& s);
void to_json(Json& j, const Changemaker& s);
void to_json(Json& j, const Embedding& e);
void to_json(Json& j, const LinearVerdict& v);
void to_json(Json& j, const StandardBasis& sb);
void to_json(Json& j, const BergeEntry& e);
void to_json(Json& j, const RealizedClass& c);
void from_json(const Json& j, RealizedClass& c);
void to_json(Json& j, const RealizationRecord& r);
void from_json(const Json& j, RealizationRecord& r);
void to_json(Json& j, const GenusRecord& r);
void to_json(Json& j, const FixtureInstance& f);
void to_json(Json& j, const IdentityCheck& c);

// Dense coordinates of each basis vector in a frame of the given size.
Json basis_json(const std::vector<SparseVec>& basis, std::size_t frame_size);

}  // namespace lensembed
