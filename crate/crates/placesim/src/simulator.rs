//! Sequential replay of a request list and the CSV/metadata outputs.
//!
//! Requests are solved strictly in order against one shared ledger, so
//! every placement shapes what later requests can get. The result keeps
//! one record per request plus the two running-average series over placed
//! placements (average monthly price and average response time), which are
//! what the output curves plot.

use std::fmt;
use std::path::Path;

use chrono::{SecondsFormat, Utc};

use crate::appmodel::{PlacementRequest, RequestPattern, Requirement, RNG_ALGORITHM};
use crate::error::{Error, Result};
use crate::lp::write_lp_file;
use crate::placement::{solve, PlacementDecision};
use crate::topology::{DeviceId, LinkId, Tier, Topology};

/// Whether a request got a placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Placed,
    Rejected,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Placed => "placed",
            Outcome::Rejected => "rejected",
        })
    }
}

/// What happened to one request. Rejected records carry no placement
/// details, only the outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub request_id: u64,
    pub app: String,
    pub outcome: Outcome,
    pub tier: Option<Tier>,
    pub device_id: Option<DeviceId>,
    pub link_ids: Vec<LinkId>,
    pub requirement_used: Option<Requirement>,
    pub price_usd_month: Option<f64>,
    pub response_s: Option<f64>,
}

/// Provenance of a run, echoed into `meta.txt`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunMeta {
    pub seed: u64,
    pub pattern: RequestPattern,
    pub scenario_name: String,
    pub scenario_hash: String,
}

/// Everything one run produced.
///
/// `running_avg_price[m]` and `running_avg_response[m]` are the arithmetic
/// means over the first `m + 1` placed records, so the series length is
/// the number of placements.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub records: Vec<StepRecord>,
    pub running_avg_price: Vec<f64>,
    pub running_avg_response: Vec<f64>,
    pub rejection_count: usize,
    pub meta: RunMeta,
}

impl SimulationResult {
    pub fn placed_count(&self) -> usize {
        self.running_avg_price.len()
    }
}

/// Replay the request sequence against the topology's ledger.
pub fn run(
    topology: &mut Topology,
    requests: &[PlacementRequest],
    meta: RunMeta,
) -> SimulationResult {
    run_inner(topology, requests, meta, None).expect("no I/O happens without an LP directory")
}

/// Like [`run`], but first writes each solvable request's model to
/// `lp_dir/request_<id>.lp` as it would be at that request's turn.
/// Requests whose model is empty (saturated branch) get no file.
pub fn run_with_lp_export(
    topology: &mut Topology,
    requests: &[PlacementRequest],
    meta: RunMeta,
    lp_dir: impl AsRef<Path>,
) -> Result<SimulationResult> {
    run_inner(topology, requests, meta, Some(lp_dir.as_ref()))
}

fn run_inner(
    topology: &mut Topology,
    requests: &[PlacementRequest],
    meta: RunMeta,
    lp_dir: Option<&Path>,
) -> Result<SimulationResult> {
    let mut records = Vec::with_capacity(requests.len());
    let mut running_avg_price = Vec::new();
    let mut running_avg_response = Vec::new();
    let mut price_sum = 0.0;
    let mut response_sum = 0.0;
    let mut rejection_count = 0;

    for request in requests {
        if let Some(dir) = lp_dir {
            match write_lp_file(request, topology, dir) {
                Ok(_) | Err(Error::EmptyModel { .. }) => {}
                Err(other) => return Err(other),
            }
        }

        let record = match solve(request, topology) {
            PlacementDecision::Placed {
                candidate,
                requirement_used,
            } => {
                price_sum += candidate.price_usd_month;
                response_sum += candidate.response_s;
                let placed = (records.len() + 1 - rejection_count) as f64;
                running_avg_price.push(price_sum / placed);
                running_avg_response.push(response_sum / placed);
                StepRecord {
                    request_id: request.id,
                    app: request.profile.name.clone(),
                    outcome: Outcome::Placed,
                    tier: Some(topology.device_tier(candidate.device_id)),
                    device_id: Some(candidate.device_id),
                    link_ids: candidate.link_ids.clone(),
                    requirement_used: Some(requirement_used),
                    price_usd_month: Some(candidate.price_usd_month),
                    response_s: Some(candidate.response_s),
                }
            }
            PlacementDecision::Rejected { .. } => {
                rejection_count += 1;
                StepRecord {
                    request_id: request.id,
                    app: request.profile.name.clone(),
                    outcome: Outcome::Rejected,
                    tier: None,
                    device_id: None,
                    link_ids: Vec::new(),
                    requirement_used: None,
                    price_usd_month: None,
                    response_s: None,
                }
            }
        };
        records.push(record);
        assert!(
            topology.ledger_consistent(),
            "capacity ledger violated after request {}",
            request.id
        );
    }

    Ok(SimulationResult {
        records,
        running_avg_price,
        running_avg_response,
        rejection_count,
        meta,
    })
}

/// Format with four significant digits, trailing zeros trimmed. Used for
/// the curve series so the files stay readable and byte-stable.
pub fn sig4(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (3 - magnitude).max(0) as usize;
    let rendered = format!("{x:.decimals$}");
    if rendered.contains('.') {
        rendered
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    } else {
        rendered
    }
}

/// Write `steps.csv` (one row per request, full float precision) and
/// `curves.csv` (running averages over placed count, four significant
/// digits) into `dir`, creating it if needed.
pub fn write_csv(result: &SimulationResult, dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;

    let mut steps = String::from(
        "request_id,app,outcome,tier,requirement_kind,requirement_limit,price_usd_month,response_s\n",
    );
    for r in &result.records {
        let tier = r.tier.map(|t| t.to_string()).unwrap_or_default();
        let (kind, limit) = match &r.requirement_used {
            Some(req) => (req.kind_label().to_string(), req.limit().to_string()),
            None => (String::new(), String::new()),
        };
        let price = r.price_usd_month.map(|p| p.to_string()).unwrap_or_default();
        let response = r.response_s.map(|s| s.to_string()).unwrap_or_default();
        steps.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.request_id, r.app, r.outcome, tier, kind, limit, price, response
        ));
    }
    let steps_path = dir.join("steps.csv");
    std::fs::write(&steps_path, steps).map_err(|source| Error::Io {
        path: steps_path.clone(),
        source,
    })?;

    let mut curves = String::from("placed_count,avg_price_usd_month,avg_response_s\n");
    for (i, (price, response)) in result
        .running_avg_price
        .iter()
        .zip(&result.running_avg_response)
        .enumerate()
    {
        curves.push_str(&format!("{},{},{}\n", i + 1, sig4(*price), sig4(*response)));
    }
    let curves_path = dir.join("curves.csv");
    std::fs::write(&curves_path, curves).map_err(|source| Error::Io {
        path: curves_path.clone(),
        source,
    })
}

/// Write `meta.txt` with everything needed to reproduce the run. The
/// `generated_at` line is the only part that varies between identical
/// runs.
pub fn write_meta(result: &SimulationResult, dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let meta = &result.meta;
    let text = format!(
        "seed: {}\npattern: {}\nrequests: {}\nplaced: {}\nrejected: {}\nscenario: {}\nscenario_hash: {}\nrng: {}\nversion: {}\ngenerated_at: {}\n",
        meta.seed,
        meta.pattern,
        result.records.len(),
        result.placed_count(),
        result.rejection_count,
        meta.scenario_name,
        meta.scenario_hash,
        RNG_ALGORITHM,
        env!("CARGO_PKG_VERSION"),
        Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
    );
    let path = dir.join("meta.txt");
    std::fs::write(&path, text).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })
}
