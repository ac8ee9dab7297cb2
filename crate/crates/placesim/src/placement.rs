//! Candidate evaluation and the per-request solver.
//!
//! A placement of app k on device i reached over links j costs
//!
//! ```text
//! price    = unit_cost(i) * resource_demand(k)
//!            + sum_j month_cost(j) * bandwidth_demand(k) / bandwidth(j)
//! response = processing_time(i, k)
//!            + sum_j 8 * data_size(k) / bandwidth_demand(k)
//! ```
//!
//! per month and per run respectively. Because the network is a tree, the
//! device choice fully determines the link path, so enumerating the
//! devices on the origin's branch solves the request's binary program
//! exactly: under a cost cap the solver minimizes response time subject to
//! the price bound, under a response cap it minimizes price subject to the
//! time bound.

use crate::appmodel::{AppProfile, PlacementRequest, Requirement};
use crate::error::{Error, Result};
use crate::topology::{Device, DeviceId, Link, LinkId, Topology};

/// One feasible way to serve a request: a device, the uplinks to reach it,
/// and the two evaluated objectives.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub device_id: DeviceId,
    /// Uplink path from the origin's home site, empty for a home placement.
    pub link_ids: Vec<LinkId>,
    pub price_usd_month: f64,
    pub response_s: f64,
}

/// Outcome of solving one request.
#[derive(Debug, Clone, PartialEq)]
pub enum PlacementDecision {
    Placed {
        candidate: Candidate,
        /// The ladder rung that admitted the placement.
        requirement_used: Requirement,
    },
    Rejected {
        reason: String,
    },
}

/// Response time in seconds for one run of the app on this device via
/// these links: processing time plus one transfer of the app's data over
/// its reserved bandwidth per link. Zero data means zero transfer time.
pub fn response_time(profile: &AppProfile, device: &Device, links: &[&Link]) -> Result<f64> {
    let variant = profile
        .variant(device.kind)
        .ok_or_else(|| Error::IneligibleDeviceKind {
            app: profile.name.clone(),
            kind: device.kind,
        })?;
    let mut total = variant.processing_time_s;
    if profile.data_size_mb > 0.0 {
        let data_mbit = 8.0 * profile.data_size_mb;
        for _ in links {
            total += data_mbit / profile.bandwidth_demand_mbps;
        }
    }
    Ok(total)
}

/// Monthly price in USD for keeping the app on this device via these
/// links: a pro-rata share of the device plus, per link, a pro-rata share
/// of the link for the reserved bandwidth.
pub fn price(profile: &AppProfile, device: &Device, links: &[&Link]) -> Result<f64> {
    let variant = profile
        .variant(device.kind)
        .ok_or_else(|| Error::IneligibleDeviceKind {
            app: profile.name.clone(),
            kind: device.kind,
        })?;
    let mut total = device.per_unit_cost() * variant.resource_demand;
    for link in links {
        total += link.month_cost_usd * (profile.bandwidth_demand_mbps / link.bandwidth_mbps);
    }
    Ok(total)
}

/// Every placement the request could take right now: one candidate per
/// device on the origin's branch that has a variant for the app and enough
/// residual capacity on the device and on every link of its path.
///
/// An empty result means the branch is saturated (or the app fits no
/// device kind present there); it is not an error.
pub fn enumerate_candidates(request: &PlacementRequest, topology: &Topology) -> Vec<Candidate> {
    let profile = &request.profile;
    let mut candidates = Vec::new();
    for site_id in topology.branch_sites(request.origin) {
        let link_ids = topology
            .path(request.origin, site_id)
            .expect("branch sites are reachable by construction");
        let links: Vec<&Link> = link_ids.iter().map(|id| topology.link(*id)).collect();
        if !links.iter().all(|l| l.fits(profile.bandwidth_demand_mbps)) {
            continue;
        }
        for device_id in &topology.site(site_id).device_ids {
            let device = topology.device(*device_id);
            let Some(variant) = profile.variant(device.kind) else {
                continue;
            };
            if !device.fits(variant.resource_demand) {
                continue;
            }
            candidates.push(Candidate {
                device_id: *device_id,
                link_ids: link_ids.clone(),
                price_usd_month: price(profile, device, &links)
                    .expect("variant presence was checked"),
                response_s: response_time(profile, device, &links)
                    .expect("variant presence was checked"),
            });
        }
    }
    candidates
}

/// Pick the best candidate under one requirement, if any satisfies it.
///
/// Cost cap: minimum response time among candidates within the price cap,
/// ties broken by lower price. Response cap: minimum price among
/// candidates within the time cap, ties broken by lower response time.
/// Remaining ties go to the lowest device id, so replay is deterministic.
fn best_under(candidates: &[Candidate], requirement: &Requirement) -> Option<Candidate> {
    let key = |c: &Candidate| match requirement {
        Requirement::CostCap(_) => (c.response_s, c.price_usd_month, c.device_id.0),
        Requirement::ResponseCap(_) => (c.price_usd_month, c.response_s, c.device_id.0),
    };
    candidates
        .iter()
        .filter(|c| match requirement {
            Requirement::CostCap(cap) => c.price_usd_month <= *cap,
            Requirement::ResponseCap(cap) => c.response_s <= *cap,
        })
        .min_by(|a, b| {
            let (a1, a2, a3) = key(a);
            let (b1, b2, b3) = key(b);
            a1.total_cmp(&b1).then(a2.total_cmp(&b2)).then(a3.cmp(&b3))
        })
        .cloned()
}

/// Solve one request against the current ledger and commit the winner.
///
/// Ladder rungs are tried tightest-first; the first rung any candidate
/// satisfies decides the placement, which is committed before returning.
/// A request nothing can serve is `Rejected`, never an error.
pub fn solve(request: &PlacementRequest, topology: &mut Topology) -> PlacementDecision {
    let candidates = enumerate_candidates(request, topology);
    if candidates.is_empty() {
        return PlacementDecision::Rejected {
            reason: format!(
                "no device on input node {}'s branch can host app '{}' right now",
                request.origin, request.profile.name
            ),
        };
    }
    for rung in &request.ladder {
        if let Some(candidate) = best_under(&candidates, rung) {
            let variant = request
                .profile
                .variant(topology.device(candidate.device_id).kind)
                .expect("winning candidate has a variant");
            topology
                .commit(
                    candidate.device_id,
                    variant.resource_demand,
                    &candidate.link_ids,
                    request.profile.bandwidth_demand_mbps,
                )
                .expect("enumerated candidates fit the residual capacities");
            return PlacementDecision::Placed {
                candidate,
                requirement_used: *rung,
            };
        }
    }
    PlacementDecision::Rejected {
        reason: format!(
            "none of {} feasible candidates satisfies any of the {} ladder rungs",
            candidates.len(),
            request.ladder.len()
        ),
    }
}
