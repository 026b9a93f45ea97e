//! Machine-checked scenarios: each encodes one worked example as a list of
//! exact checks with a mutated twin that must fail.

mod chart;
mod scenarios;

pub use chart::{blowup_chart_substitute, ChartMap};
pub use scenarios::{
    list_scenarios, run_scenario, run_scenario_variant, Check, Report, ScenarioId, ScenarioInfo, Variant,
};
