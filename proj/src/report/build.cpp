// Copyright 2026 The Castellan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "castles/castle.hpp"
#include "castles/multiscale.hpp"
#include "common/error.hpp"
#include "dynamics/folner.hpp"
#include "group_core/elem_json.hpp"
#include "joseph/joseph.hpp"
#include "report/inputs.hpp"
#include "report/pipelines.hpp"
#include "zstab/witness.hpp"

namespace castellan {

Json BuildClaim(const std::string& pipeline, const Json& inputs) {
  if (pipeline == "folner") {
    const auto in = FolnerInputs::FromJson(inputs);
    const FolnerResult r = FolnerSupplier(in.kind, in.d, in.k, in.eps, in.cap);
    return {{"size", r.size}, {"lamp_bound", r.lamp_bound}};
  }
  if (pipeline == "castle-l33") {
    const auto in = L33Inputs::FromJson(inputs);
    const FinAction act = in.Action();
    const StateSubset y = StateSubset::FromStates(act.size(), in.y);
    const StateSubset z = in.z_nonfree ? NonfreePart(in.s, act)
                                       : StateSubset::FromStates(act.size(), in.z);
    return {{"castle", CastleToJson(BuildCastleL33(act, in.s, in.eps, y, z))}};
  }
  if (pipeline == "castle-t34") {
    const auto in = T34Inputs::FromJson(inputs);
    const MultiscaleResult r = BuildCastleT34(in.Action(), in.params);
    Json folner = Json::array();
    for (const auto& f : r.claim.folner) folner.push_back(ElemSetToJson(f));
    Json stages = Json::array();
    for (const auto& c : r.claim.stage_castles) stages.push_back(CastleToJson(c));
    const MultiscaleConstants& c = r.claim.constants;
    return {{"constants",
             {{"eps_in", RationalToJson(c.eps_in)},
              {"n", c.n},
              {"beta", RationalToJson(c.beta)},
              {"alpha", RationalToJson(c.alpha)}}},
            {"folner", folner},
            {"stage_castles", stages}};
  }
  if (pipeline == "joseph-build") {
    const auto in = JosephInputs::FromJson(inputs);
    return {{"table", ParamTableToJson(ChooseParams(in.gammas, in.d,
                                                    in.prime_floor,
                                                    in.product_floor))}};
  }
  if (pipeline == "fixed-fractions") {
    const auto in = FixedFractionInputs::FromJson(inputs);
    return {{"table", ParamTableToJson(ChooseParams(in.gammas, in.d,
                                                    in.prime_floor,
                                                    in.product_floor))}};
  }
  if (pipeline == "zstab-witness") {
    const auto in = ZstabInputs::FromJson(inputs);
    const WitnessChoice c = ChoiceOf(BuildWitness(in.spec));
    return {{"e_table", ParamTableToJson(c.e_table)},
            {"phi", IntsToJson(c.phi)},
            {"y0", IntsToJson(c.y0)},
            {"cake_levels", IntsToJson(c.cake_levels)}};
  }
  Fail(ErrorCode::kSchema, "unknown pipeline '" + pipeline + "'");
}

}  // namespace castellan
