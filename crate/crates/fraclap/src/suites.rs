//! Named batteries of checks. Reports come back in a fixed order; the checks
//! run one after another.

use std::fmt;

use fraclap_core::QuadratureConfig;

use crate::report::CheckReport;
use crate::verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Constants,
    Kernels,
    Subordinator,
    Forms,
    Gsr,
    Angular,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 6] = [
        Suite::Constants,
        Suite::Kernels,
        Suite::Subordinator,
        Suite::Forms,
        Suite::Gsr,
        Suite::Angular,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Constants => "constants",
            Suite::Kernels => "kernels",
            Suite::Subordinator => "subordinator",
            Suite::Forms => "forms",
            Suite::Gsr => "gsr",
            Suite::Angular => "angular",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn run_suite(suite: Suite, cfg: &QuadratureConfig) -> Vec<CheckReport> {
    match suite {
        Suite::Constants => verify::constants::suite(),
        Suite::Kernels => verify::kernels::suite(cfg),
        Suite::Subordinator => verify::subordinator::suite(cfg),
        Suite::Forms => verify::forms::suite(cfg),
        Suite::Gsr => verify::gsr::suite(cfg),
        Suite::Angular => verify::angular::suite(cfg),
        Suite::All => Suite::PARTS.iter().flat_map(|&s| run_suite(s, cfg)).collect(),
    }
}
