//! Cost- and latency-aware placement of offloaded applications across a
//! three-tier cloud / carrier-edge / user-edge network.
//!
//! Applications arrive one by one, each with a measured offload profile
//! (processing time and resource footprint per device kind, bandwidth,
//! data size) and a user requirement: a monthly cost cap or a response
//! time cap, possibly as a ladder of fallback options. For each request
//! the solver enumerates every device on the origin's branch of the tree,
//! prices the placement, computes its response time, and commits the best
//! feasible choice to a shared capacity ledger:
//!
//! ```text
//!             cloud sites          cheap per unit, two links away
//!                 |
//!         carrier-edge sites       pricier, one link away
//!                 |
//!           user-edge sites        priciest, zero links
//!            |  |  |  |  |
//!           input nodes            where requests originate
//! ```
//!
//! Module map:
//! - [`topology`]: sites, devices, links, paths, and the capacity ledger.
//! - [`appmodel`]: app profiles, requirements, request generation.
//! - [`scenario`]: the JSON scenario file tying everything together.
//! - [`placement`]: price/response evaluators and the exact per-request
//!   solver.
//! - [`lp`]: CPLEX-LP text export of single-request models.
//! - [`simulator`]: sequential replay, running averages, CSV/meta output.
//!
//! The `placesim` binary wraps a whole run behind flags; the `examples/`
//! directory walks through each capability in code.

pub mod appmodel;
pub mod error;
pub mod lp;
pub mod placement;
pub mod scenario;
pub mod simulator;
pub mod topology;

pub use appmodel::{
    default_profiles, generate_requests, AppProfile, OffloadVariant, PlacementRequest,
    RequestPattern, Requirement,
};
pub use error::{Error, Result};
pub use lp::{export_lp, lp_file_name, write_lp_file};
pub use placement::{
    enumerate_candidates, price, response_time, solve, Candidate, PlacementDecision,
};
pub use scenario::Scenario;
pub use simulator::{
    run, run_with_lp_export, sig4, write_csv, write_meta, Outcome, RunMeta, SimulationResult,
    StepRecord,
};
pub use topology::{
    build_default_scenario, Device, DeviceId, DeviceKind, InputNodeId, Link, LinkId, Site, SiteId,
    Tier, Topology, TopologyBuilder,
};
