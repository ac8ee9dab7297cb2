//! Application offload profiles, user requirements, and request generation.
//!
//! An [`AppProfile`] captures what was measured for one application after
//! offload conversion: processing time and resource footprint per device
//! kind, plus the bandwidth it needs and the data it ships per run. A
//! [`PlacementRequest`] pairs a profile with an origin input node and a
//! requirement ladder, and [`generate_requests`] mints whole request
//! sequences for the three canned mixes [`RequestPattern::P1`] to
//! [`RequestPattern::P3`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::Scenario;
use crate::topology::{DeviceKind, InputNodeId};

/// RNG algorithm identifier recorded in run metadata, so results can be
/// reproduced with the same generator.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Stream number for app and origin draws. Shared by every pattern so runs
/// with the same seed see the same arrival sequence.
const APP_ORIGIN_STREAM: u64 = 0;
/// Stream number for requirement draws (only pattern P1 uses it).
const REQUIREMENT_STREAM: u64 = 1;

/// Measured behaviour of an app on one device kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OffloadVariant {
    /// Processing time of one run, in seconds.
    pub processing_time_s: f64,
    /// Device resource units the app occupies while placed.
    pub resource_demand: f64,
}

/// Measured offload characteristics of one application.
///
/// A device kind absent from `variants` cannot run this app at all.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AppProfile {
    pub name: String,
    pub variants: BTreeMap<DeviceKind, OffloadVariant>,
    /// Bandwidth the app keeps reserved on every link it crosses, in Mbps.
    pub bandwidth_demand_mbps: f64,
    /// Data shipped per run, in MB (decimal, 1 MB = 8 Mbit).
    pub data_size_mb: f64,
}

impl AppProfile {
    pub fn new(
        name: impl Into<String>,
        variants: BTreeMap<DeviceKind, OffloadVariant>,
        bandwidth_demand_mbps: f64,
        data_size_mb: f64,
    ) -> Result<Self> {
        let profile = Self {
            name: name.into(),
            variants,
            bandwidth_demand_mbps,
            data_size_mb,
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Check the profile invariants; loading a scenario runs this on every
    /// profile it contains.
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || self.name.contains([',', '\n']) {
            return Err(Error::InvalidProfile(format!(
                "app name {:?} must be nonempty and free of commas and newlines",
                self.name
            )));
        }
        if self.variants.is_empty() {
            return Err(Error::InvalidProfile(format!(
                "app '{}' needs at least one device variant",
                self.name
            )));
        }
        for (kind, v) in &self.variants {
            if v.processing_time_s < 0.0 || !v.processing_time_s.is_finite() {
                return Err(Error::InvalidProfile(format!(
                    "app '{}' {kind} processing time must be nonnegative and finite",
                    self.name
                )));
            }
            if v.resource_demand < 0.0 || !v.resource_demand.is_finite() {
                return Err(Error::InvalidProfile(format!(
                    "app '{}' {kind} resource demand must be nonnegative and finite",
                    self.name
                )));
            }
        }
        if self.bandwidth_demand_mbps < 0.0 || !self.bandwidth_demand_mbps.is_finite() {
            return Err(Error::InvalidProfile(format!(
                "app '{}' bandwidth demand must be nonnegative and finite",
                self.name
            )));
        }
        if self.data_size_mb < 0.0 || !self.data_size_mb.is_finite() {
            return Err(Error::InvalidProfile(format!(
                "app '{}' data size must be nonnegative and finite",
                self.name
            )));
        }
        if self.bandwidth_demand_mbps == 0.0 && self.data_size_mb > 0.0 {
            return Err(Error::InvalidProfile(format!(
                "app '{}' ships {} MB per run but reserves no bandwidth",
                self.name, self.data_size_mb
            )));
        }
        Ok(())
    }

    /// The measured variant for a device kind, if the app can run there.
    pub fn variant(&self, kind: DeviceKind) -> Option<&OffloadVariant> {
        self.variants.get(&kind)
    }
}

/// What the requesting user caps: monthly price or response time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Requirement {
    /// Highest acceptable monthly price, in USD.
    CostCap(f64),
    /// Highest acceptable response time, in seconds.
    ResponseCap(f64),
}

impl Requirement {
    pub fn limit(&self) -> f64 {
        match self {
            Requirement::CostCap(limit) | Requirement::ResponseCap(limit) => *limit,
        }
    }

    /// Stable label used in CSV output and LP constraint names.
    pub fn kind_label(&self) -> &'static str {
        match self {
            Requirement::CostCap(_) => "cost_cap",
            Requirement::ResponseCap(_) => "response_cap",
        }
    }

    fn same_kind(&self, other: &Requirement) -> bool {
        matches!(
            (self, other),
            (Requirement::CostCap(_), Requirement::CostCap(_))
                | (Requirement::ResponseCap(_), Requirement::ResponseCap(_))
        )
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Requirement::CostCap(limit) => write!(f, "cost cap {limit} USD/month"),
            Requirement::ResponseCap(limit) => write!(f, "response cap {limit} s"),
        }
    }
}

/// One arrival: an app, where its data originates, and the requirement
/// ladder to try tightest-first.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacementRequest {
    pub id: u64,
    pub profile: Arc<AppProfile>,
    pub origin: InputNodeId,
    /// Tried in order; the first rung with a feasible placement wins.
    pub ladder: Vec<Requirement>,
}

impl PlacementRequest {
    pub fn new(
        id: u64,
        profile: Arc<AppProfile>,
        origin: InputNodeId,
        ladder: Vec<Requirement>,
    ) -> Result<Self> {
        validate_ladder(&ladder)?;
        Ok(Self {
            id,
            profile,
            origin,
            ladder,
        })
    }
}

/// All ladder rungs must cap the same quantity, with positive limits that
/// strictly loosen from rung to rung.
fn validate_ladder(ladder: &[Requirement]) -> Result<()> {
    let Some(first) = ladder.first() else {
        return Err(Error::InvalidLadder("ladder is empty".into()));
    };
    for rung in ladder {
        if rung.limit() <= 0.0 || !rung.limit().is_finite() {
            return Err(Error::InvalidLadder(format!(
                "limit must be positive and finite, got {}",
                rung.limit()
            )));
        }
        if !first.same_kind(rung) {
            return Err(Error::InvalidLadder(
                "mixed cost and response rungs in one ladder".into(),
            ));
        }
    }
    for pair in ladder.windows(2) {
        if pair[1].limit() <= pair[0].limit() {
            return Err(Error::InvalidLadder(format!(
                "limits must strictly loosen, got {} then {}",
                pair[0].limit(),
                pair[1].limit()
            )));
        }
    }
    Ok(())
}

/// The three canned request mixes of the evaluation scenario.
///
/// P1 draws one fixed requirement per request from the app's cap menu.
/// P2 gives every request its full cost-cap ladder, cheapest first.
/// P3 gives every request its full response-cap ladder, fastest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RequestPattern {
    P1,
    P2,
    P3,
}

impl RequestPattern {
    pub const ALL: [RequestPattern; 3] =
        [RequestPattern::P1, RequestPattern::P2, RequestPattern::P3];
}

impl fmt::Display for RequestPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RequestPattern::P1 => "p1",
            RequestPattern::P2 => "p2",
            RequestPattern::P3 => "p3",
        })
    }
}

impl FromStr for RequestPattern {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(RequestPattern::P1),
            "p2" => Ok(RequestPattern::P2),
            "p3" => Ok(RequestPattern::P3),
            other => Err(format!("unknown pattern '{other}', expected p1, p2 or p3")),
        }
    }
}

/// The two measured evaluation apps.
///
/// NAS.FT runs on GPUs: 5.8 s, 1 GB of device RAM, 2 Mbps, 0.2 MB per run.
/// MRI-Q runs on FPGAs: 2.0 s, 10 percent of the server, 1 Mbps, 0.15 MB.
/// Neither keeps a plain-CPU variant, so CPU devices are ineligible for
/// both; profiles that do carry a CPU variant fall back to it naturally.
pub fn default_profiles() -> Vec<AppProfile> {
    let nas_ft = AppProfile::new(
        "NAS.FT",
        BTreeMap::from([(
            DeviceKind::Gpu,
            OffloadVariant {
                processing_time_s: 5.8,
                resource_demand: 1.0,
            },
        )]),
        2.0,
        0.2,
    )
    .expect("NAS.FT profile is valid");

    let mri_q = AppProfile::new(
        "MRI-Q",
        BTreeMap::from([(
            DeviceKind::Fpga,
            OffloadVariant {
                processing_time_s: 2.0,
                resource_demand: 10.0,
            },
        )]),
        1.0,
        0.15,
    )
    .expect("MRI-Q profile is valid");

    vec![nas_ft, mri_q]
}

/// Generate `n` requests for one pattern, deterministically from `seed`.
///
/// Each request's app is drawn by the scenario's arrival weights and its
/// origin uniformly over the input nodes. Those draws come from one RNG
/// stream and the P1 requirement draws from another, so every pattern with
/// the same seed sees the same app/origin sequence and differs only in the
/// ladders. P1 picks a single rung uniformly from the app's combined cost
/// and response cap menu; P2 and P3 hand out the full cost or response
/// ladder.
pub fn generate_requests(
    pattern: RequestPattern,
    n: usize,
    seed: u64,
    scenario: &Scenario,
) -> Vec<PlacementRequest> {
    let mut arrival_rng = ChaCha8Rng::seed_from_u64(seed);
    arrival_rng.set_stream(APP_ORIGIN_STREAM);
    let mut requirement_rng = ChaCha8Rng::seed_from_u64(seed);
    requirement_rng.set_stream(REQUIREMENT_STREAM);

    let profiles: Vec<Arc<AppProfile>> = scenario
        .apps
        .iter()
        .map(|app| Arc::new(app.profile.clone()))
        .collect();
    let total_weight: u32 = scenario.apps.iter().map(|app| app.menu.weight).sum();
    let input_nodes = scenario.input_node_count();

    let mut requests = Vec::with_capacity(n);
    for id in 0..n as u64 {
        let mut roll = arrival_rng.gen_range(0..total_weight);
        let mut app_index = 0;
        for (i, app) in scenario.apps.iter().enumerate() {
            if roll < app.menu.weight {
                app_index = i;
                break;
            }
            roll -= app.menu.weight;
        }
        let origin = InputNodeId(arrival_rng.gen_range(0..input_nodes));

        let menu = &scenario.apps[app_index].menu;
        let ladder = match pattern {
            RequestPattern::P1 => {
                let options = menu.cost_caps_usd.len() + menu.response_caps_s.len();
                let pick = requirement_rng.gen_range(0..options);
                let rung = if pick < menu.cost_caps_usd.len() {
                    Requirement::CostCap(menu.cost_caps_usd[pick])
                } else {
                    Requirement::ResponseCap(menu.response_caps_s[pick - menu.cost_caps_usd.len()])
                };
                vec![rung]
            }
            RequestPattern::P2 => menu
                .cost_caps_usd
                .iter()
                .map(|cap| Requirement::CostCap(*cap))
                .collect(),
            RequestPattern::P3 => menu
                .response_caps_s
                .iter()
                .map(|cap| Requirement::ResponseCap(*cap))
                .collect(),
        };

        requests.push(
            PlacementRequest::new(id, Arc::clone(&profiles[app_index]), origin, ladder)
                .expect("scenario validation guarantees well-formed ladders"),
        );
    }
    requests
}
