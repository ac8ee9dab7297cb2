//! Place one request by hand and watch the ledger move.
//!
//! Builds the default topology, enumerates every feasible candidate for a
//! single request, solves it, and prints the decision together with the
//! device and link usage it booked. Then it repeats the same request a few
//! times to show how the ledger fills up and shifts later placements.
//!
//! ```bash
//! cargo run --example single_request
//! ```

use placesim::{
    build_default_scenario, default_profiles, enumerate_candidates, solve, InputNodeId,
    PlacementDecision, PlacementRequest, Requirement,
};
use std::sync::Arc;

fn main() {
    let mut topo = build_default_scenario();
    let profiles = default_profiles();
    let nas_ft = Arc::new(profiles[0].clone());

    let request = PlacementRequest::new(
        0,
        nas_ft.clone(),
        InputNodeId(0),
        vec![Requirement::CostCap(70.0)],
    )
    .expect("request is valid");

    println!(
        "request: app '{}' from input node {}, {}",
        request.profile.name, request.origin, request.ladder[0]
    );
    println!();

    // Every feasible (device, path) pair on the origin's branch.
    let candidates = enumerate_candidates(&request, &topo);
    println!("{} feasible candidates:", candidates.len());
    for c in &candidates {
        let tier = topo.device_tier(c.device_id);
        println!(
            "  device {:>2} ({tier:>12}): {:>7.2} USD/month, {:.1} s, {} links",
            c.device_id,
            c.price_usd_month,
            c.response_s,
            c.link_ids.len()
        );
    }
    println!();

    match solve(&request, &mut topo) {
        PlacementDecision::Placed {
            candidate,
            requirement_used,
        } => {
            let device = topo.device(candidate.device_id);
            println!(
                "placed on device {} at site {} under {}",
                device.id, device.site_id, requirement_used
            );
            println!(
                "  price {:.4} USD/month, response {:.1} s",
                candidate.price_usd_month, candidate.response_s
            );
            println!("  device usage now {}/{}", device.used(), device.capacity);
            for link_id in &candidate.link_ids {
                let link = topo.link(*link_id);
                println!(
                    "  link {} usage now {}/{} Mbps",
                    link.id,
                    link.used_mbps(),
                    link.bandwidth_mbps
                );
            }
        }
        PlacementDecision::Rejected { reason } => println!("rejected: {reason}"),
    }
    println!();

    // A tight response cap keeps placements at the user edge, where the
    // single GPU has only four slots. Repeating the request shows the slots
    // filling and the fifth request spilling to the carrier edge.
    println!("five requests with a 6 s response cap:");
    for id in 1..=5 {
        let request = PlacementRequest::new(
            id,
            nas_ft.clone(),
            InputNodeId(0),
            vec![Requirement::ResponseCap(6.0), Requirement::ResponseCap(7.0)],
        )
        .expect("request is valid");
        match solve(&request, &mut topo) {
            PlacementDecision::Placed {
                candidate,
                requirement_used,
            } => {
                let device = topo.device(candidate.device_id);
                let tier = topo.device_tier(device.id);
                println!(
                    "  request {id}: device {} ({tier}), usage {}/{}, under {}",
                    device.id,
                    device.used(),
                    device.capacity,
                    requirement_used
                );
            }
            PlacementDecision::Rejected { reason } => {
                println!("  request {id}: rejected, {reason}");
            }
        }
    }
}
