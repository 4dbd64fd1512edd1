#include "triup/report_json.hpp"

namespace triup {

void write_axiom_report(JsonWriter& w, const AxiomReport& report) {
  w.begin_object();
  w.field("symmetry_ok", report.symmetry_ok);
  w.field("homogeneity_ok", report.homogeneity_ok);
  w.field("additivity_ok", report.additivity_ok);
  w.field("holder_ok", report.holder_ok);
  w.field("symmetry_max_deviation", report.symmetry_max_deviation);
  w.field("homogeneity_max_deviation", report.homogeneity_max_deviation);
  w.field("additivity_max_deviation", report.additivity_max_deviation);
  w.field("holder_worst_scaled_margin", report.holder_worst_scaled_margin);
  w.field("samples", report.samples);
  w.field("vacuous", report.vacuous);
  w.key("holder_witness");
  if (report.holder_witness) {
    const HolderWitness& witness = *report.holder_witness;
    w.begin_object();
    w.number_array_field("x", witness.x);
    w.number_array_field("y", witness.y);
    w.number_array_field("z", witness.z);
    w.field("form_value", witness.form_value);
    w.field("norm_product", witness.norm_product);
    w.field("margin", witness.margin);
    w.end_object();
  } else {
    w.null();
  }
  w.field("all_ok", report.all_ok());
  w.end_object();
}

void write_selfadjoint_witness(JsonWriter& w,
                               const SelfAdjointnessWitness& witness) {
  w.begin_object();
  w.field("i", witness.i);
  w.field("j", witness.j);
  w.field("k", witness.k);
  w.field("op_first", witness.op_first);
  w.field("op_second", witness.op_second);
  w.field("op_third", witness.op_third);
  w.field("discrepancy", witness.discrepancy);
  w.end_object();
}

void write_selfadjoint_check(JsonWriter& w, const SelfAdjointCheck& check) {
  w.begin_object();
  w.field("ok", check.ok);
  w.field("tolerance", check.tolerance);
  w.field("max_discrepancy", check.max_discrepancy);
  w.key("witness");
  if (check.witness)
    write_selfadjoint_witness(w, *check.witness);
  else
    w.null();
  w.end_object();
}

void write_chain_report(JsonWriter& w, const ChainReport& report) {
  w.begin_object();
  w.field("a", report.a);
  w.field("b", report.b);
  w.field("c", report.c);
  w.field("delta_a", report.delta_a);
  w.field("delta_b", report.delta_b);
  w.field("delta_c", report.delta_c);
  w.field("lhs_product", report.lhs_product);
  w.field("amgm_bound", report.amgm_bound);
  w.field("rhs_expanded", report.rhs_expanded);
  w.field("rhs_centered", report.rhs_centered);
  w.field("identity_deviation", report.identity_deviation);
  w.field("identity_scale", report.identity_scale);
  w.field("chain_ok", report.chain_ok);
  w.field("margin", report.margin);
  w.field("degenerate_tight", report.degenerate_tight);
  w.end_object();
}

void write_order_invariance(JsonWriter& w, const OrderInvarianceReport& report) {
  w.begin_object();
  w.number_array_field("values", report.values);
  w.field("max_deviation", report.max_deviation);
  w.field("scale", report.scale);
  w.end_object();
}

void write_classical_report(JsonWriter& w, const ClassicalReport& report) {
  w.begin_object();
  w.field("mean_a", report.mean_a);
  w.field("mean_b", report.mean_b);
  w.field("delta_a", report.delta_a);
  w.field("delta_b", report.delta_b);
  w.field("delta_a_moment", report.delta_a_moment);
  w.field("delta_b_moment", report.delta_b_moment);
  w.field("half_sum_of_squares", report.half_sum_of_squares);
  w.field("quarter_square_of_sum", report.quarter_square_of_sum);
  w.field("uncertainty_product", report.uncertainty_product);
  w.field("robertson_rhs", report.robertson_rhs);
  w.field("schrodinger_rhs", report.schrodinger_rhs);
  w.field("commutator_expectation", report.commutator_expectation);
  w.field("anticommutator_expectation", report.anticommutator_expectation);
  w.field("schrodinger_identity_deviation",
          report.schrodinger_identity_deviation);
  w.field("hr_link1_ok", report.hr_link1_ok);
  w.field("hr_link2_ok", report.hr_link2_ok);
  w.field("hr_link3_ok", report.hr_link3_ok);
  w.field("hrs_ok", report.hrs_ok);
  w.field("hrs_ge_hr", report.hrs_ge_hr);
  w.field("commutator_vanishes", report.commutator_vanishes);
  w.field("identity_ok", report.identity_ok);
  w.field("all_ok", report.all_ok);
  w.end_object();
}

void write_sharpness_result(JsonWriter& w, const SharpnessResult& result) {
  w.begin_object();
  w.field("best_ratio", result.best_ratio);
  w.number_array_field("best_state", result.best_state.coords());
  w.key("best_operators").begin_array();
  for (const auto& diag : result.best_operators) {
    w.begin_array();
    for (double v : diag) w.value(v);
    w.end_array();
  }
  w.end_array();
  w.field("restarts_used", result.restarts_used);
  w.field("iterations_total", static_cast<std::int64_t>(result.iterations_total));
  w.key("ratio_trace");
  if (result.ratio_trace.empty()) {
    w.null();
  } else {
    w.begin_array();
    for (double v : result.ratio_trace) w.value(v);
    w.end_array();
  }
  w.field("falsification_flag", result.falsification_flag);
  w.end_object();
}

}  // namespace triup
