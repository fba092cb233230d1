// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "idka/backend/params.hpp"
#include "idka/backend/rng.hpp"

namespace fixtures
{

/// One tiny parameter set shared by the whole test binary.
inline const idka::PairingParams& tiny()
{
    static const auto pp = idka::param_gen(idka::Tier::tiny, idka::to_bytes("test parameters"));
    return pp;
}

inline const idka::PairingParams& demo()
{
    static const auto pp = idka::param_gen(idka::Tier::demo, idka::to_bytes("demo parameters"));
    return pp;
}

inline idka::Rng seeded(std::string_view label)
{
    return idka::Rng(idka::to_bytes(label));
}

}  // namespace fixtures
