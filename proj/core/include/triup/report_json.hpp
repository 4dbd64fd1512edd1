#pragma once

#include "triup/classical.hpp"
#include "triup/json_writer.hpp"
#include "triup/linear_operator.hpp"
#include "triup/sharpness.hpp"
#include "triup/tri_product_space.hpp"
#include "triup/uncertainty.hpp"

namespace triup {

// Each writer emits one JSON object value; the caller places it (after
// key() or inside an array). Field order is fixed so reports from
// identical inputs are byte-identical.

void write_axiom_report(JsonWriter& w, const AxiomReport& report);
void write_selfadjoint_witness(JsonWriter& w, const SelfAdjointnessWitness& witness);
void write_selfadjoint_check(JsonWriter& w, const SelfAdjointCheck& check);
void write_chain_report(JsonWriter& w, const ChainReport& report);
void write_order_invariance(JsonWriter& w, const OrderInvarianceReport& report);
void write_classical_report(JsonWriter& w, const ClassicalReport& report);
void write_sharpness_result(JsonWriter& w, const SharpnessResult& result);

}  // namespace triup
