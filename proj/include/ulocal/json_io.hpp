#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "ulocal/herm_matrix.hpp"

namespace ulocal {

using json = nlohmann::json;

json ok_to_json(const OkElement& x);
OkElement ok_from_json(const PrimeContext& ctx, const json& j);

json herm_to_json(const HermMatrix& m);

// The decoded matrix owns its context through the shared_ptr.
struct LoadedMatrix {
    std::shared_ptr<PrimeContext> ctx;
    HermMatrix mat;
};
LoadedMatrix herm_from_json(const json& j, long epsilon_override = 0);

} // namespace ulocal
